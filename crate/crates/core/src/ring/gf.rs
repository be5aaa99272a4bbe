//! Table-driven arithmetic for the small finite fields F_2, F_3, F_4, F_5, F_7.
//!
//! Elements are indices `0..q`. For the prime fields the index is the residue.
//! F_4 uses the basis {1, α} with α² = α + 1, so the index is the bit pattern
//! `c0 + 2·c1` of `c0 + c1·α`:
//!
//! | index | element |
//! |-------|---------|
//! | 0     | 0       |
//! | 1     | 1       |
//! | 2     | α       |
//! | 3     | β = α+1 |
//!
//! With this encoding addition in F_4 is XOR.

const MAX_Q: usize = 7;

#[derive(Debug)]
pub(crate) struct Gf {
    characteristic: u8,
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
}

impl Gf {
    const fn prime(p: u8) -> Gf {
        let mut add = [[0u8; MAX_Q]; MAX_Q];
        let mut mul = [[0u8; MAX_Q]; MAX_Q];
        let mut neg = [0u8; MAX_Q];
        let mut inv = [0u8; MAX_Q];
        let mut a = 0;
        while a < p {
            let mut b = 0;
            while b < p {
                add[a as usize][b as usize] = (a + b) % p;
                mul[a as usize][b as usize] = (a * b) % p;
                if (a * b) % p == 1 {
                    inv[a as usize] = b;
                }
                b += 1;
            }
            neg[a as usize] = (p - a) % p;
            a += 1;
        }
        Gf {
            characteristic: p,
            add,
            mul,
            neg,
            inv,
        }
    }

    const fn four() -> Gf {
        const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
        let mut add = [[0u8; MAX_Q]; MAX_Q];
        let mut mul = [[0u8; MAX_Q]; MAX_Q];
        let mut inv = [0u8; MAX_Q];
        let mut a = 0;
        while a < 4 {
            let mut b = 0;
            while b < 4 {
                add[a][b] = (a ^ b) as u8;
                mul[a][b] = MUL[a][b];
                if MUL[a][b] == 1 {
                    inv[a] = b as u8;
                }
                b += 1;
            }
            a += 1;
        }
        Gf {
            characteristic: 2,
            add,
            mul,
            neg: [0, 1, 2, 3, 0, 0, 0],
            inv,
        }
    }

    pub(crate) fn characteristic(&self) -> u8 {
        self.characteristic
    }

    #[inline]
    pub(crate) fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub(crate) fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub(crate) fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub(crate) fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Image of the integer `n` under ℤ → F_q.
    pub(crate) fn reduce(&self, n: i64) -> u8 {
        n.rem_euclid(self.characteristic as i64) as u8
    }
}

static GF2: Gf = Gf::prime(2);
static GF3: Gf = Gf::prime(3);
static GF4: Gf = Gf::four();
static GF5: Gf = Gf::prime(5);
static GF7: Gf = Gf::prime(7);

/// Tables for F_q. Callers only pass orders accepted by `Domain`.
pub(crate) fn table(q: u8) -> &'static Gf {
    match q {
        2 => &GF2,
        3 => &GF3,
        4 => &GF4,
        5 => &GF5,
        7 => &GF7,
        _ => unreachable!("unsupported field order {q}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_relation() {
        let f = table(4);
        // α² = α + 1 = β
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
        // αβ = 1
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u8, 3, 4, 5, 7] {
            let f = table(q);
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
