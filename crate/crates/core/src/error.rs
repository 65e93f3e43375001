use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A presented atlas cannot answer a query in the requested range.
    #[error("atlas-incomplete: {0}")]
    AtlasIncomplete(String),

    #[error("unsupported-range: {0}")]
    UnsupportedRange(String),

    #[error("torus parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("class {0} is not realized in atlas `{1}`")]
    NotRealized(String, String),

    #[error("front: {0}")]
    Front(#[from] crate::front::FrontError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AtlasIncomplete(_) => 2,
            Error::Front(_) => 4,
            _ => 3,
        }
    }
}
