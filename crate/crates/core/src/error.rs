use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime in [3, 2^31 - 1]")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("right-hand side is constant; the cover is not irreducible")]
    ConstantRhs,

    #[error("degree {degree} is divisible by p = {p}; ramification break undefined")]
    DegreeDivisibleByP { degree: u64, p: u64 },

    #[error("substitution y -> y + g changes the break: deg(g^p) = {gp_degree} >= d = {d}")]
    BreakChanged { gp_degree: u64, d: u64 },

    #[error("Cartier image term y^{i} x^{j} dx lies outside the basis for (p, d) = ({p}, {d})")]
    InternalRange { i: u64, j: u64, p: u64, d: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid family parameters: {0}")]
    Family(String),

    #[error("invalid search configuration: {0}")]
    Search(String),

    #[error("report invariant violated: {0}")]
    InvariantViolation(String),
}
