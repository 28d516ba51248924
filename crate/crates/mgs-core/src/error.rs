use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("2-cycle between {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("row {0} is not sign-coherent")]
    SignIncoherent(usize),
    #[error("not a maximal green sequence: {0}")]
    NotMaximalGreen(String),
    #[error("quiver has a directed cycle through {0}")]
    Cyclic(usize),
    #[error("enumeration needs an explicit length bound for quivers not of type A")]
    MissingDepthGuard,
    #[error("depth guard {max_len} exceeded; {found} sequences found before the cutoff")]
    DepthExceeded { max_len: usize, found: usize },
    #[error("exchange graph exceeds {0} nodes")]
    NodeBound(usize),
    #[error("invalid gluing: {0}")]
    Gluing(String),
    #[error("not of type A: {0}")]
    NotTypeA(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("no 3-cycles present")]
    NoThreeCycle,
    #[error("root {0:?} is not a leaf 3-cycle")]
    BadRoot([usize; 3]),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
