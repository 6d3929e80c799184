use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("both gcd arguments are zero")]
    ZeroGcd,
    #[error("{0} is divisible by 1 - ζ3 and has no primary associate")]
    NotCoprimeToThree(String),
    #[error("{0} is not primary")]
    NotPrimary(String),
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("{0} is not a prime of Z[ζ3]")]
    NotPrime(String),
    #[error("rational prime {p} does not satisfy the congruence p ≡ {residue} (mod {modulus})")]
    WrongResidue { p: u64, residue: u64, modulus: u64 },
    #[error("arguments {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("zero is not allowed here")]
    Zero,
    #[error("{0} is a unit times a perfect cube")]
    PerfectCube(String),
    #[error("value {0} is too large for this operation")]
    TooLarge(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
