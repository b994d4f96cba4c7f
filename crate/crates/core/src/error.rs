use thiserror::Error;

use crate::diagnostic::Diagnostic;
use crate::ident::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LudError {
    #[error("representation has {} validation error(s)", .0.iter().filter(|d| d.is_error()).count())]
    InvalidInput(Vec<Diagnostic>),
    #[error("unknown identifier `{0}`")]
    UnknownIdent(String),
    #[error("{holes} holes exceed the brute-force limit of {limit}")]
    TooLarge { holes: usize, limit: usize },
    #[error("relation type `{0}` is not in the lexicon")]
    UnknownRelation(String),
    #[error("no surface position for discourse relation {0}")]
    MissingSurfacePosition(Label),
    #[error("representation already contains a mode condition")]
    AlreadyModed,
    #[error("plugging is not admissible: {0}")]
    InadmissiblePlugging(String),
}

pub type Result<T, E = LudError> = std::result::Result<T, E>;
