use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be positive")]
    ZeroInput,
    #[error("argument list must be nonempty")]
    EmptyInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("lcm {lcm} does not divide modulus {modulus}")]
    LcmNotDividing { lcm: u64, modulus: u64 },
    #[error("{value} is not a divisor of the modulus {modulus}")]
    NotADivisor { value: u64, modulus: u64 },
    #[error("no table entry for n = {0}")]
    MissingTableEntry(u64),
    #[error("unknown {kind}: {name}")]
    UnknownName { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
