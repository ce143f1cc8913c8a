//! The V-move: wraps a bird beak around two faces of a tetrahedron, as a
//! 2-3, 2-3, 2-3, 3-2 sequence.

use crate::isosig::{find_isomorphism, Isomorphism};
use crate::moves::{move_0_2, pachner_2_3, pachner_3_2, Move, MoveOutcome, MovePath};
use crate::skeleton::Skeleton;
use crate::triangulation::{EdgeRef, FaceRef, Triangulation, EDGE_VERTICES};

use super::beak::BirdBeak;
use super::CompositeError;

/// Pairs of opposite edges of a tetrahedron, as edge indices.
pub const EDGE_PAIRS: [(usize, usize); 3] = [(0, 5), (1, 4), (2, 3)];

/// Moves two to four of the V-move, keyed by the face carrying the first
/// 2-3 and the beak's edge inside that face. Tetrahedra are counted back
/// from the end of the list: `(k, x)` is face (or edge) `x` of tetrahedron
/// `len - 1 - k`. The last entry names an edge for the closing 3-2.
///
/// Found by exhaustive search over all 2-3, 2-3, 3-2 continuations and
/// checked on several hundred sites.
const PATTERNS: [((usize, usize, usize), [(usize, usize); 3]); 12] = [
    ((0, 1, 2), [(1, 3), (0, 3), (1, 2)]),
    ((0, 1, 3), [(0, 2), (0, 2), (1, 1)]),
    ((0, 2, 3), [(0, 3), (0, 3), (1, 2)]),
    ((1, 0, 2), [(1, 2), (0, 2), (1, 1)]),
    ((1, 0, 3), [(0, 3), (0, 3), (1, 2)]),
    ((1, 2, 3), [(0, 2), (0, 2), (1, 1)]),
    ((2, 0, 1), [(1, 3), (0, 3), (1, 2)]),
    ((2, 0, 3), [(0, 2), (0, 2), (1, 1)]),
    ((2, 1, 3), [(0, 3), (0, 3), (1, 2)]),
    ((3, 0, 1), [(1, 2), (0, 2), (1, 1)]),
    ((3, 0, 2), [(0, 3), (0, 3), (1, 2)]),
    ((3, 1, 2), [(0, 2), (0, 2), (1, 1)]),
];

#[derive(Clone, Debug)]
pub struct VMove {
    pub result: Triangulation,
    pub path: MovePath,
    /// Every state of `path`, from the input to `result`.
    pub states: Vec<Triangulation>,
    pub beak: BirdBeak,
    /// From the equivalent 0-2 move's result onto `result`. Tetrahedra of
    /// the input keep their indices in the 0-2 result.
    pub iso: Isomorphism,
}

/// Runs the V-move in `tet` across the edge pair `pair`, starting with a
/// 2-3 on the first face of `tet` that meets the hypotheses.
pub fn v_move(tri: &Triangulation, tet: usize, pair: usize) -> Result<VMove, CompositeError> {
    let mut last = CompositeError::NoVMoveFace(tet);
    for face in 0..4 {
        match v_move_via(tri, tet, face, pair) {
            Ok(v) => return Ok(v),
            Err(e @ (CompositeError::NoSuchTetrahedron(_) | CompositeError::NoSuchPair(_))) => return Err(e),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Runs the V-move in `tet` across `pair`, starting with the 2-3 on `face`.
///
/// The neighbour across `face` must be a different tetrahedron and the
/// edges of `face` must have degree at least three.
pub fn v_move_via(tri: &Triangulation, tet: usize, face: usize, pair: usize) -> Result<VMove, CompositeError> {
    if tet >= tri.len() {
        return Err(CompositeError::NoSuchTetrahedron(tet));
    }
    let &(e0, e1) = EDGE_PAIRS.get(pair).ok_or(CompositeError::NoSuchPair(pair))?;
    let start = FaceRef::new(tet, face);
    let g = tri.gluing(tet, face).ok_or(CompositeError::FreeFace(start))?;
    if g.tet == tet {
        return Err(CompositeError::SameTetrahedron(start));
    }
    let skel = Skeleton::new(tri);
    let ones = skel.degree_one_edges();
    if !ones.is_empty() {
        return Err(CompositeError::DegreeOne(ones));
    }
    for c in skel.face_edges(tet, face) {
        if skel.degree(c) < 3 {
            return Err(CompositeError::LowDegree { edge: c, degree: skel.degree(c) });
        }
    }
    let touches = |e: usize| EDGE_VERTICES[e].0 == face || EDGE_VERTICES[e].1 == face;
    let inside = if touches(e0) { e1 } else { e0 };
    let (a, b) = EDGE_VERTICES[inside];
    let target = wrap_target(tri, &skel, tet, a, b)?;
    let hinge = target.hinge.expect("0-2 reports its hinge");

    let pattern = PATTERNS.iter().find(|(k, _)| *k == (face, a, b)).map(|(_, p)| *p).unwrap();
    let found = run_pattern(tri, start, &pattern)
        .and_then(|run| verify(run, &target.result))
        .or_else(|| search(tri, start, &target.result));
    let (moves, states, iso) = found.ok_or(CompositeError::NotRealised("V-move"))?;

    let result = states.last().unwrap().clone();
    let rskel = Skeleton::new(&result);
    let h = EdgeRef::between(
        iso.tets[hinge.tet],
        iso.perms[hinge.tet].apply(hinge.vertices().0),
        iso.perms[hinge.tet].apply(hinge.vertices().1),
    );
    let beak = BirdBeak::new(&result, &rskel, rskel.edge_class(h))?;
    Ok(VMove { result, path: MovePath { initial: tri.clone(), moves }, states, beak, iso })
}

/// The 0-2 move that a V-move in `tet` around its edge `ab` is equivalent
/// to: the half-book on one side is `tet` alone.
pub fn wrap_target(tri: &Triangulation, skel: &Skeleton, tet: usize, a: usize, b: usize) -> Result<MoveOutcome, CompositeError> {
    let c = skel.edge_between(tet, a, b);
    let book = &skel.edges[c].book;
    let d = book.len();
    let i = book
        .iter()
        .position(|x| {
            let (u, w) = (x.verts.apply(0), x.verts.apply(1));
            x.tet == tet && ((u, w) == (a, b) || (u, w) == (b, a))
        })
        .expect("model edge lies in its own book");
    Ok(move_0_2(tri, c, (i + d - 1) % d, i)?)
}

type Run = (Vec<Move>, Vec<Triangulation>);

fn from_end(t: &Triangulation, k: usize) -> Option<usize> {
    t.len().checked_sub(k + 1)
}

fn step_23(t: &Triangulation, k: usize, f: usize) -> Option<(Move, Triangulation)> {
    let face = FaceRef::new(from_end(t, k)?, f);
    let out = pachner_2_3(t, face).ok()?;
    Some((Move::TwoThree(face), out.result))
}

fn step_32(t: &Triangulation, k: usize, e: usize) -> Option<(Move, Triangulation)> {
    let skel = Skeleton::new(t);
    let c = skel.edge_class(EdgeRef::new(from_end(t, k)?, e));
    let out = pachner_3_2(t, c).ok()?;
    Some((Move::ThreeTwo(c), out.result))
}

fn run_pattern(tri: &Triangulation, start: FaceRef, p: &[(usize, usize); 3]) -> Option<Run> {
    let s1 = pachner_2_3(tri, start).ok()?.result;
    let (m2, s2) = step_23(&s1, p[0].0, p[0].1)?;
    let (m3, s3) = step_23(&s2, p[1].0, p[1].1)?;
    let (m4, s4) = step_32(&s3, p[2].0, p[2].1)?;
    Some((vec![Move::TwoThree(start), m2, m3, m4], vec![tri.clone(), s1, s2, s3, s4]))
}

fn verify(run: Run, target: &Triangulation) -> Option<(Vec<Move>, Vec<Triangulation>, Isomorphism)> {
    let (moves, states) = run;
    if states[1..].iter().any(|s| Skeleton::new(s).min_degree() < 2) {
        return None;
    }
    let iso = find_isomorphism(target, states.last().unwrap())?;
    Some((moves, states, iso))
}

/// Fallback when the frozen pattern does not apply (for instance when the
/// input is not consistently oriented): tries every continuation.
fn search(tri: &Triangulation, start: FaceRef, target: &Triangulation) -> Option<(Vec<Move>, Vec<Triangulation>, Isomorphism)> {
    let s1 = pachner_2_3(tri, start).ok()?.result;
    if Skeleton::new(&s1).min_degree() < 2 {
        return None;
    }
    for k2 in 0..3 {
        for f2 in 0..4 {
            let Some((m2, s2)) = step_23(&s1, k2, f2) else { continue };
            for k3 in 0..5 {
                for f3 in 0..4 {
                    let Some((m3, s3)) = step_23(&s2, k3, f3) else { continue };
                    for k4 in 0..6 {
                        for e4 in 0..6 {
                            let Some((m4, s4)) = step_32(&s3, k4, e4) else { continue };
                            let run = (vec![Move::TwoThree(start), m2, m3, m4], vec![tri.clone(), s1.clone(), s2.clone(), s3.clone(), s4]);
                            if let Some(found) = verify(run, target) {
                                return Some(found);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
