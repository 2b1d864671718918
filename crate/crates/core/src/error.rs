use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial cannot define a place")]
    ConstantPlace,
    #[error("quotient ring moduli differ")]
    ModulusMismatch,
    #[error("modulus must be monic of positive degree")]
    BadModulus,
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("degenerate lattice (determinant 0)")]
    Degenerate,
    #[error("lattice is indefinite")]
    Indefinite,
    #[error("lattice is not even")]
    OddLattice,
    #[error("discriminant group order {0} exceeds the search bound")]
    OrderBound(String),
    #[error("glue vector rejected: {0}")]
    BadGlue(String),
    #[error("vector is not primitive")]
    Imprimitive,
    #[error("vector must have negative square")]
    NonNegativeSquare,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("non-minimal valuation triple {0:?}")]
    NonMinimal([u32; 3]),
    #[error("inconsistent valuation triple {0:?}")]
    InconsistentTriple([u32; 3]),
    #[error("model shape mismatch: {0}")]
    Shape(String),
    #[error("Euler number {found} differs from 12*chi = {expected}")]
    EulerMismatch { found: u32, expected: u32 },
    #[error("degree bounds fit neither chi = 1 nor chi = 2")]
    ChiOutOfRange,
    #[error("d is not squarefree")]
    NotSquarefree,
    #[error("base change by a constant")]
    ConstantBaseChange,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("missing component data for {0}")]
    MissingComponent(String),
    #[error("inconsistent intersection table: {0}")]
    InconsistentTable(String),
    #[error("matrix does not preserve the Gram matrix")]
    NotIsometry,
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("image class is not integral: {0}")]
    NonIntegral(String),
    #[error("unexpected invariant lattice: {0}")]
    UnexpectedInvariant(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
