use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exterior power {p} is outside [0, {n}] on P^{n}")]
    ExteriorPowerOutOfRange { n: u32, p: i64 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("arity mismatch: expected {expected} factors, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("factor {factor}: dimension mismatch (space has P^{expected}, sheaf lives on P^{found})")]
    FactorMismatch { factor: usize, expected: u32, found: u32 },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("tensor product on factor {factor} leaves the Bott family ({left} with {right})")]
    OutsideBottFamily { factor: usize, left: String, right: String },

    #[error("operation requires a sum of line bundles, found {0}")]
    NotLineBundleSum(String),

    #[error("regularity search exceeded {0} steps")]
    SearchCap(u32),

    #[error("linear system is not unitriangular at index {0}")]
    NotUnitriangular(usize),

    #[error("m = {m} is not on the aligned lattice k(d+1)-d for d = {d}")]
    NotAligned { m: i64, d: u32 },

    #[error("sheaf is not {m}-regular, resolution terms are undefined")]
    NotRegular { m: i64 },

    #[error("{0}")]
    Unsupported(String),
}
