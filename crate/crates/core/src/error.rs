use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("generated group exceeds the closure cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("convolution power must be at least 1")]
    KZero,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("S^d never covers the group (stabilised at size {size} after {steps} steps)")]
    NoFiniteDiameter { steps: usize, size: usize },
    #[error("no representation catalog for group {0}")]
    NotCataloged(String),
    #[error("Fourier coefficients cover {got} of {expected} representations")]
    IncompleteCatalog { got: usize, expected: usize },
    #[error("hypothesis not satisfied: {0}")]
    HypothesisFail(String),
    #[error("function has zero total mass")]
    ZeroMass,
    #[error("function takes negative values")]
    NegativeValues,
    #[error("exhaustive search found no admissible interval: {0}")]
    SearchExhausted(String),
    #[error("representation list is empty")]
    EmptyRepList,
    #[error("representation is trivial")]
    TrivialRep,
    #[error("group of order {order} exceeds the limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("operation requires an abelian group")]
    NotAbelian,
    #[error("radius {delta} outside the admissible range {range}")]
    DeltaOutOfRange { delta: f64, range: String },
    #[error("no regular radius found: {0}")]
    NoneFound(String),
    #[error("Bohr set is not regular")]
    NotRegular,
    #[error("graph is not regular: {0}")]
    NotRegularGraph(String),
    #[error("parameter out of range: {0}")]
    RangeViolation(String),
    #[error("set is not a B_{k} set")]
    NotBk { k: usize },
    #[error("set is not an additive basis: {0}")]
    NotABasis(String),
    #[error("could not sample a covering set after {attempts} attempts")]
    LambdaResampleFail { attempts: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_carry_their_fields() {
        let e = Error::ElementOutOfRange { index: 9, order: 4 };
        assert_eq!(e.to_string(), "element index 9 out of range for a group of order 4");
        let io: Error = std::io::Error::new(std::io::ErrorKind::NotFound, "gone").into();
        assert!(matches!(io, Error::IoFailure(ref m) if m == "gone"));
    }
}
