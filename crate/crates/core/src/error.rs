use alloc::string::String;
use alloc::vec::Vec;

use crate::linear::TensorSpace;
use crate::scalar::Scalar;
use crate::structures::CheckReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left} and {right}")]
    Dimension {
        op: &'static str,
        left: TensorSpace,
        right: TensorSpace,
    },
    #[error("{0:?} is not a permutation of its positions")]
    NotAPermutation(Vec<usize>),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("construction refused: identity `{}` does not hold", .0.identity_name)]
    Refused(CheckReport),
    #[error("unsupported Rota-Baxter weight {0}; supported weights are 0 and -1")]
    UnsupportedWeight(Scalar),
    #[error("missing operator `{0}`")]
    MissingOperator(&'static str),
    #[error("unknown flavor tag `{0}`")]
    UnknownFlavor(String),
    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("search space of {candidates} candidates exceeds the limit of {limit}")]
    SearchGuard { candidates: u128, limit: u128 },
    #[error("generation failed: {0}")]
    Generation(String),
}
