use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial has no squarefree part")]
    ZeroPolynomial,
    #[error("elements belong to different Lie algebras")]
    ParentMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed partition: {0}")]
    Partition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("element is not homogeneous for the grading")]
    NotHomogeneous,
    #[error("element lies outside g_1/2")]
    OutsideHalfPiece,
    #[error("no classification row for {0} / {1}")]
    UnknownRow(String, String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no differential polynomial solution at Lenard-Magri step {step}: {reason}")]
    NotSolvable { step: usize, reason: String },
    #[error("invalid integrable triple: {0}")]
    InvalidTriple(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("element is not in the centralizer algebra: {0}")]
    NotCentral(String),
    #[error("element is not valued in the kernel subalgebra: {0}")]
    NotInKernel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
