//! Exact arithmetic in small Euclidean domains and exhaustive or windowed
//! checking of Euclidean-function properties.

pub mod cli;
pub mod division;
pub mod error;
pub mod func;
pub mod lab;
pub mod refine;
pub mod report;
pub mod ring;
pub mod search;
pub mod verdict;

pub use error::{Error, Result};
pub use ring::{Domain, Element, Kind, Window};
