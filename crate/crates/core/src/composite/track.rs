//! Carrying moves from a reference triangulation onto an isomorphic copy
//! with different labels.

use crate::isosig::{extend_isomorphism, find_isomorphism, Isomorphism};
use crate::moves::{apply, Move, MoveError, MoveOutcome};
use crate::skeleton::Skeleton;
use crate::triangulation::{EdgeRef, FaceRef, Triangulation};

/// An actual triangulation together with an isomorphism onto it from a
/// reference triangulation.
#[derive(Clone, Debug)]
pub struct Tracker {
    pub actual: Triangulation,
    pub iso: Isomorphism,
}

impl Tracker {
    pub fn identity(tri: &Triangulation) -> Self {
        Tracker { actual: tri.clone(), iso: Isomorphism::identity(tri.len()) }
    }

    /// Finds an isomorphism from `reference` onto `actual`.
    pub fn new(reference: &Triangulation, actual: Triangulation) -> Option<Self> {
        let iso = find_isomorphism(reference, &actual)?;
        Some(Tracker { actual, iso })
    }

    /// Replaces the reference by an isomorphic one.
    pub fn rebase(&mut self, reference: &Triangulation) -> bool {
        match find_isomorphism(reference, &self.actual) {
            Some(iso) => {
                self.iso = iso;
                true
            }
            None => false,
        }
    }

    /// The image of a move on the reference.
    pub fn translate(&self, reference: &Triangulation, m: &Move) -> Option<Move> {
        let map_edge = |c: usize| -> Option<usize> {
            let rskel = Skeleton::new(reference);
            let (r, _) = *rskel.edges.get(c)?.reps.first()?;
            let (a, b) = r.vertices();
            let p = self.iso.perms[r.tet];
            let image = EdgeRef::between(self.iso.tets[r.tet], p.apply(a), p.apply(b));
            Some(Skeleton::new(&self.actual).edge_class(image))
        };
        match *m {
            Move::TwoThree(f) => {
                let t = *self.iso.tets.get(f.tet)?;
                Some(Move::TwoThree(FaceRef::new(t, self.iso.perms[f.tet].apply(f.face))))
            }
            Move::ThreeTwo(c) => map_edge(c).map(Move::ThreeTwo),
            Move::TwoZero(c) => map_edge(c).map(Move::TwoZero),
            Move::ZeroTwo { .. } => None,
        }
    }

    /// Applies the image of `m` to the actual triangulation. `done` is the
    /// outcome of `m` on `reference`; the isomorphism is carried over to
    /// its result.
    pub fn step(&mut self, reference: &Triangulation, m: &Move, done: &MoveOutcome) -> Result<Move, MoveError> {
        let image = self.translate(reference, m).ok_or(MoveError::UnknownEdge(usize::MAX))?;
        let out = apply(&self.actual, &image)?;
        let anchor = (0..reference.len()).find_map(|t| {
            let r = done.tet_map[t]?;
            let a = out.tet_map[self.iso.tets[t]]?;
            Some((r, a, self.iso.perms[t]))
        });
        let iso = anchor
            .and_then(|(r, a, p)| extend_isomorphism(&done.result, &out.result, r, a, p))
            .or_else(|| find_isomorphism(&done.result, &out.result))
            .expect("images of one move are isomorphic");
        self.actual = out.result;
        self.iso = iso;
        Ok(image)
    }
}
