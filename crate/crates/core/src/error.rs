use thiserror::Error;

use crate::triangulation::FaceRef;

/// Structural problems with a gluing table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("face {0} is glued to itself (a face cannot be glued to itself)")]
    SelfGlued(FaceRef),
    #[error("face {0} is not paired with any face")]
    Unpaired(FaceRef),
    #[error("face {0} points at {1}, which does not point back")]
    NotInvolutive(FaceRef, FaceRef),
    #[error("face {0} refers to tetrahedron {1}, out of range")]
    TetOutOfRange(FaceRef, usize),
    #[error("gluing of face {0} does not map the face opposite vertex {1} to the partner face")]
    FaceMismatch(FaceRef, usize),
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
}

/// Errors while reading the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Gluing { line: usize, source: GluingError },
}
