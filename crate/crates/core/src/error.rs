use crate::geom::Point;
use std::fmt;

/// Errors shared across the crate.
#[derive(Debug)]
pub enum Error {
    /// Point outside the world's bounding region.
    OutOfBounds(Point),
    /// A queried segment touches an obstacle.
    Collision { from: Point, to: Point },
    /// A numeric or structural argument is invalid.
    InvalidParameter(String),
    /// Two path elements are not connected by a refined edge.
    NotAnEdge { from: usize, to: usize },
    /// Domination compared across different vertices.
    InvalidComparison { a: usize, b: usize },
    /// Start or goal is unusable for the requested search.
    InvalidQuery(String),
    /// The algorithm cannot answer this query shape (for example a risk-zone
    /// endpoint handed to the precomputation planner).
    UnsupportedQuery(String),
    /// No path between the endpoints.
    Unreachable,
    /// Roadmap construction produced no usable vertices.
    EmptyRoadmap,
    /// Brute-force oracle called on an instance above its cap.
    InstanceTooLarge { vertices: usize, cap: usize },
    /// Precomputation would exceed the configured memory budget.
    MemoryBudget { estimated_bytes: u64, budget_bytes: u64 },
    /// Scenario or world text could not be parsed.
    Parse { line: usize, message: String },
    Io(std::io::Error),
    Json(serde_json::Error),
    /// Internal invariant broken (zone inconsistency and the like).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfBounds(p) => write!(f, "point ({}, {}) is outside the world", p.x, p.y),
            Error::Collision { from, to } => write!(
                f,
                "segment ({}, {}) -> ({}, {}) touches an obstacle",
                from.x, from.y, to.x, to.y
            ),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotAnEdge { from, to } => {
                write!(f, "vertices {from} and {to} are not connected by a refined edge")
            }
            Error::InvalidComparison { a, b } => {
                write!(f, "cannot compare labels at different vertices {a} and {b}")
            }
            Error::InvalidQuery(msg) => write!(f, "invalid query: {msg}"),
            Error::UnsupportedQuery(msg) => write!(f, "unsupported query: {msg}"),
            Error::Unreachable => write!(f, "goal is unreachable"),
            Error::EmptyRoadmap => write!(f, "roadmap has no collision-free vertices"),
            Error::InstanceTooLarge { vertices, cap } => {
                write!(f, "instance has {vertices} vertices, oracle cap is {cap}")
            }
            Error::MemoryBudget { estimated_bytes, budget_bytes } => write!(
                f,
                "precomputation needs an estimated {estimated_bytes} bytes, budget is {budget_bytes}"
            ),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

impl From<fmt::Error> for Error {
    fn from(e: fmt::Error) -> Self {
        Error::Internal(format!("formatting failed: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
