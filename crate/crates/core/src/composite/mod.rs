//! Composite moves built from 2-3 and 3-2 moves: the V-move, mandible
//! rotation, triangular pillow insertion and removal, and detour rewriting
//! of move paths around degree-one edges.

mod beak;
mod detour;
mod insert;
mod l41;
pub mod pillow;
mod track;
mod vmove;

use thiserror::Error;

use crate::moves::MoveError;
use crate::triangulation::FaceRef;

pub use beak::{rotate_mandible, rotations, BirdBeak, Rotation};
pub use detour::{detour_rewrite, detour_rewrite_with, DetourCertificate, DetourOptions, StateGuarantee};
pub use insert::{find_v_site, insert_pillow, remove_pillow, Insertion, PillowHandle, PillowSite, Removal, VSite};
pub use l41::{build_l41_stack, detect_l41_exceptional, L41Exception};
pub use pillow::{build_pillow, graft_pillow};
pub use track::Tracker;
pub use vmove::{v_move, v_move_via, wrap_target, VMove, EDGE_PAIRS};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompositeError {
    #[error("face {0} is not glued")]
    FreeFace(FaceRef),
    #[error("face {0} joins a tetrahedron to itself")]
    SameTetrahedron(FaceRef),
    #[error("edge {edge} has degree {degree}, needs at least three")]
    LowDegree { edge: usize, degree: usize },
    #[error("edge {edge} has degree {degree}, expected two")]
    NotDegreeTwo { edge: usize, degree: usize },
    #[error("edge {0} is surrounded by one tetrahedron twice")]
    RepeatedTetrahedron(usize),
    #[error("degree-one edges present: {0:?}")]
    DegreeOne(Vec<usize>),
    #[error("face {face} is not incident to edge {edge}")]
    NotIncident { face: FaceRef, edge: usize },
    #[error("tetrahedron {0} out of range")]
    NoSuchTetrahedron(usize),
    #[error("edge pair index {0} out of range")]
    NoSuchPair(usize),
    #[error("no face of tetrahedron {0} satisfies the V-move hypotheses")]
    NoVMoveFace(usize),
    #[error("tetrahedron {0} belongs to the bird beak")]
    BeakTetrahedron(usize),
    #[error("edge {0} is not the hinge of a bird beak")]
    NotABeak(usize),
    #[error("collapsing the bird beak around edge {0} would create a degree-one edge")]
    UnsafeCollapse(usize),
    #[error("rotation would fold the bird beak onto itself")]
    FoldsBeak,
    #[error(transparent)]
    L41(#[from] L41Exception),
    #[error("edge {edge} has degree two, so vertex {vertex} has a spherical link: the input violates its validation mode")]
    SphericalVertex { edge: usize, vertex: usize },
    #[error("the stack of degree-two tetrahedra closes up without a quarter turn: the input violates its validation mode")]
    StackClosure,
    #[error("unsupported degenerate site: {0}")]
    UnsupportedDegeneracy(&'static str),
    #[error("could not realise {0} by 2-3 and 3-2 moves without a degree-one edge")]
    NotRealised(&'static str),
    #[error("the pillow is no longer intact")]
    PillowNotIntact,
    #[error("step {step}: replayed move is inapplicable: {source}")]
    Replay { step: usize, source: MoveError },
    #[error("step {0} is not a 2-3 or 3-2 move")]
    NotPachner(usize),
    #[error("state {0} of the rewritten path has a degree-one edge")]
    DegreeOneState(usize),
    #[error("cancelled after {0} steps")]
    Cancelled(usize),
    #[error(transparent)]
    Move(#[from] MoveError),
}
