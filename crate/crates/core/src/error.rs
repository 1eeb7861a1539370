use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("bad word token `{0}`")]
    BadToken(String),
    #[error("letter uses handle {handle} but the surface has genus {genus}")]
    HandleOutOfRange { handle: u16, genus: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Dehn reduction needs genus >= 2, got {genus}")]
    UnsupportedBackend { genus: usize },
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("invalid JSON: {0}")]
    Json(serde_json::Error),
    #[error("field `{field}`: {cause}")]
    Word { field: String, cause: WordError },
    #[error("{0}")]
    Schema(String),
    #[error("diagram is not valid: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("move does not match the diagram: {0}")]
    PatternMismatch(String),
    #[error("move region carries nonempty words: {0}")]
    NonlocalWords(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("inconsistent class triple at a bifurcation: {0}")]
    CorruptedResolution(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left_cols} columns against {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },
}

impl From<serde_json::Error> for DiagramError {
    fn from(e: serde_json::Error) -> Self {
        DiagramError::Json(e)
    }
}

#[derive(Debug, Error)]
pub enum CubeError {
    #[error("circle count changed by {delta} across crossing {crossing}")]
    Inconsistent { crossing: usize, delta: i64 },
}

#[derive(Debug, Error)]
pub enum KhError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("partial map at crossing {crossing} from state {state:#b} leaves its grading slice")]
    GradingLeak { crossing: usize, state: u64 },
    #[error("{0}")]
    TooLarge(String),
}
