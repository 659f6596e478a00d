use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("`{name}` at offset {offset} is reserved")]
    ReservedName { name: String, offset: usize },
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("malformed model on line {line}: {msg}")]
    Model { line: usize, msg: String },
    #[error("enumeration bound of {0} exceeded")]
    FuelExceeded(u64),
    #[error("not a D4 {0}")]
    NotD4(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("{0} exceeds the cap of {1}")]
    CapExceeded(&'static str, usize),
    #[error("variable `{0}` collides with a level marker")]
    VariableCollision(String),
    #[error("malformed instance: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
