use thiserror::Error;

use crate::peterweyl::Weight;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("3-form is degenerate: it does not define a metric")]
    DegenerateForm,
    #[error("metric scale is not representable on the exact backend")]
    IrrationalScale,
    #[error("expected a symmetric trace-free endomorphism")]
    NotSymmetricTraceFree,
    #[error("expected a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(Weight, Weight),
    #[error("indeterminate rank: singular value {value:.3e} inside guard band [{lo:.1e}, {hi:.1e}]")]
    IndeterminateRank { value: f64, lo: f64, hi: f64 },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
