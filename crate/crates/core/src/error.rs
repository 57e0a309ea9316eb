use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed family document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("family document: {0}")]
    Schema(String),

    #[error("ground set of {0} elements exceeds the 64-element limit")]
    GroundTooLarge(u32),

    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: u64, n: u32 },

    #[error("element {element} is listed twice in one set")]
    RepeatedElement { element: u64 },

    #[error("item {item}: parts overlap in element {element}")]
    OverlappingParts { item: usize, element: u32 },

    #[error("items {first} and {second} are identical")]
    DuplicateItem { first: usize, second: usize },

    #[error("item {item} has {found} parts, expected {expected}")]
    PartCount { item: usize, expected: usize, found: usize },

    #[error("composition needs at least one part")]
    NoParts,

    #[error("coordinate {k} out of range for {p} parts")]
    CoordinateOutOfRange { k: usize, p: usize },

    #[error("item {item} is not a composition of the whole ground set")]
    NotFull { item: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("malformed Harper-Klain-Rota instance: {0}")]
    MalformedInstance(String),

    #[error("constraint is not hereditary: dropping item {dropped} from the witness invalidates it")]
    NonHereditary { dropped: usize },

    #[error("search witness rejected by the hypothesis check")]
    WitnessRejected,
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
