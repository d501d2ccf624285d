use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("dilation parameter |w| = {modulus} lies outside the closed unit disk")]
    DilationOutsideDisk { modulus: f64 },
    #[error("point |w| = {modulus} is not inside the open unit disk")]
    PointOutsideDisk { modulus: f64 },
    #[error("gamma function pole at argument {arg}")]
    GammaPole { arg: f64 },
    #[error("sample count {m} cannot resolve degree {degree} (need m >= degree + 1)")]
    Aliasing { m: usize, degree: usize },
    #[error("sample count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid Lorentz exponents p = {p}, q = {q}")]
    InvalidLorentz { p: f64, q: f64 },
    #[error("shift {t} is below the grid resolution {resolution}")]
    BelowResolution { t: f64, resolution: f64 },
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
