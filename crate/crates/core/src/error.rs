use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({x}, {y}, {z}) lies outside the unit cube")]
    Domain { x: f64, y: f64, z: f64 },

    #[error("{0} is evaluated off its face")]
    OffFace(String),

    #[error("unknown builtin function `{0}`")]
    UnknownBuiltin(String),

    #[error("bad parameter for builtin `{name}`: {reason}")]
    BadParameter { name: String, reason: String },

    #[error("invalid grid data: {0}")]
    InvalidGrid(String),

    #[error("invalid function spec `{0}`")]
    BadSpec(String),

    #[error("not a projection cycle: nonzero plane sums {0}")]
    NotACycle(String),

    #[error("invalid cycle data: {0}")]
    InvalidCycle(String),

    #[error("size guard exceeded: {what} = {actual} > {limit}")]
    SizeGuard {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("linear program: {0}")]
    Solver(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
