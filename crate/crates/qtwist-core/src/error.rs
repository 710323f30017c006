use thiserror::Error;

/// Errors raised by the kernel. Matrix and generator indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = 1 is not allowed here")]
    QEqualsOne,
    #[error("degenerate q: ({0})_q = 0")]
    DegenerateQ(u32),
    #[error("no square root of {0} in the radical table")]
    MissingRadical(String),
    #[error("radical entry {r}^2 != {q}")]
    BadRadical { q: String, r: String },

    #[error("matrix is not square")]
    NotSquare,
    #[error("a[{i}][{i}] must equal 2")]
    BadDiagonal { i: usize },
    #[error("a[{i}][{j}] is positive")]
    PositiveOffDiagonal { i: usize, j: usize },
    #[error("a[{i}][{j}] = 0 but a[{j}][{i}] != 0")]
    ZeroAsymmetry { i: usize, j: usize },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("q[{i}][{i}] = 1")]
    QiiOne { i: usize },
    #[error("q[{i}][{j}] q[{j}][{i}] != q[{i}][{i}]^a[{i}][{j}]")]
    CartanCompatibility { i: usize, j: usize },
    #[error("q[{i}][{i}] = -1 forces a[{i}][{j}] >= -1")]
    OrderViolation { i: usize, j: usize },
    #[error("q[{i}][{j}] = 0")]
    ZeroEntry { i: usize, j: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("braiding matrices are not twist-equivalent")]
    NotTwistEquivalent,
    #[error("q[{i}][{i}] != q_I^(2 d_{i})")]
    RootMismatch { i: usize },
    #[error("q[{i}][{i}] is not positive")]
    NotPositive { i: usize },
    #[error("K_{i} L_{i} is the identity")]
    TrivialKL { i: usize },

    #[error("{requested} basis words exceed the budget of {budget}")]
    SizeBudgetExceeded { requested: u128, budget: u128 },
    #[error("elements belong to different models")]
    ModelMismatch,
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBudgetExceeded { degree: usize, bound: usize },
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("relation {0} is not homogeneous in word length")]
    InhomogeneousRelations(usize),
    #[error("bilinear form is not invariant: {0}")]
    NotInvariant(String),
    #[error("index error: {0}")]
    IndexError(String),

    #[error("row {i} of the rack table is not a bijection")]
    NotBijective { i: usize },
    #[error("self-distributivity fails at ({i}, {j}, {k})")]
    NotSelfDistributive { i: usize, j: usize, k: usize },
    #[error("rack cocycle condition fails at ({i}, {j}, {k})")]
    CocycleViolation { i: usize, j: usize, k: usize },
    #[error("group cocycle condition fails at ({g}, {h}, {t})")]
    GroupCocycleViolation { g: String, h: String, t: String },
    #[error("twist table does not send chi to -1 at ({x}, {y})")]
    BadTwistTable { x: String, y: String },
    #[error("n = {0} is not supported")]
    UnsupportedN(usize),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
