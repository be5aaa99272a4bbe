//! Coefficient-vector kernels over F_q, lowest degree first.

use super::gf::Gf;

pub(crate) fn trim(mut c: Vec<u8>) -> Vec<u8> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

pub(crate) fn add(f: &Gf, a: &[u8], b: &[u8]) -> Vec<u8> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    out
}

pub(crate) fn neg(f: &Gf, a: &[u8]) -> Vec<u8> {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub(crate) fn sub(f: &Gf, a: &[u8], b: &[u8]) -> Vec<u8> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect()
}

/// Full product; `limit` truncates to the first `limit` coefficients.
pub(crate) fn mul(f: &Gf, a: &[u8], b: &[u8], limit: Option<usize>) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return limit.map(|t| vec![0; t]).unwrap_or_default();
    }
    let full = a.len() + b.len() - 1;
    let len = limit.map_or(full, |t| t);
    let mut out = vec![0u8; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 || i >= len {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Long division of trimmed `a` by trimmed nonzero `b`.
pub(crate) fn div_rem(f: &Gf, a: &[u8], b: &[u8]) -> (Vec<u8>, Vec<u8>) {
    debug_assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = f.inv(*b.last().unwrap());
    let mut rem = a.to_vec();
    let mut quot = vec![0u8; a.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let top = rem[shift + b.len() - 1];
        if top == 0 {
            continue;
        }
        let c = f.mul(top, lead_inv);
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = f.sub(rem[shift + i], f.mul(c, bc));
        }
    }
    (trim(quot), trim(rem))
}

/// Index of the first nonzero coefficient.
pub(crate) fn order(a: &[u8]) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

/// Inverse of a unit power series modulo x^t.
pub(crate) fn series_inverse(f: &Gf, a: &[u8], t: usize) -> Vec<u8> {
    debug_assert!(a.first().is_some_and(|&c| c != 0));
    let c0_inv = f.inv(a[0]);
    let mut inv = vec![0u8; t];
    inv[0] = c0_inv;
    for n in 1..t {
        // sum_{k=1..n} a_k inv_{n-k} + a_0 inv_n = 0
        let mut acc = 0u8;
        for k in 1..=n.min(a.len().saturating_sub(1)) {
            acc = f.add(acc, f.mul(a[k], inv[n - k]));
        }
        inv[n] = f.mul(f.neg(acc), c0_inv);
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::super::gf::table;
    use super::*;

    #[test]
    fn long_division_over_f2() {
        let f = table(2);
        // x^2 + 1 = x * x + 1
        let (q, r) = div_rem(f, &[1, 0, 1], &[0, 1]);
        assert_eq!(q, vec![0, 1]);
        assert_eq!(r, vec![1]);
        // x^2 + 1 = (x + 1)^2
        let (q, r) = div_rem(f, &[1, 0, 1], &[1, 1]);
        assert_eq!(q, vec![1, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn geometric_series_inverse() {
        let f = table(3);
        // 1/(1 - x) = 1 + x + x^2 + ...
        let inv = series_inverse(f, &[1, 2, 0, 0, 0], 5);
        assert_eq!(inv, vec![1, 1, 1, 1, 1]);
    }
}
