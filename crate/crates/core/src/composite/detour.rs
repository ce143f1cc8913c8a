//! Rewriting a move path so that no intermediate triangulation has an edge
//! of degree one.
//!
//! The original path is replayed on an actual triangulation that carries
//! triangular pillows. Whenever the next move would leave an edge of degree
//! one, a pillow is first inserted on the triangle incident to that edge
//! that the move does not touch. After each step, every pillow whose
//! removal no longer exposes a degree-one edge is taken out again.

use std::fmt::Write as _;

use crate::isosig::{find_isomorphism, iso_signature, IsoSignature};
use crate::moves::{apply, classify_degree_one_creation, Creation, Move, MovePath, MoveOutcome};
use crate::perm::Perm;
use crate::skeleton::Skeleton;
use crate::triangulation::{EdgeRef, FaceRef, Triangulation};

use super::insert::{excise_pillow, insert_pillow, remove_pillow, PillowHandle, PillowSite};
use super::l41::{detect_l41_exceptional, L41Exception};
use super::CompositeError;

/// Minimum edge degree of one state of a rewritten path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateGuarantee {
    pub step: usize,
    pub tets: usize,
    pub min_degree: usize,
}

#[derive(Clone, Debug)]
pub struct DetourCertificate {
    pub rewritten: MovePath,
    /// One entry per state of `rewritten`, initial state included.
    pub guarantees: Vec<StateGuarantee>,
    /// Signatures of the initial and final triangulations.
    pub endpoint_sigs: (IsoSignature, IsoSignature),
}

impl DetourCertificate {
    /// Text sidecar listing the minimum edge degree of every state.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# step tets min_degree");
        let _ = writeln!(out, "initial {}", self.endpoint_sigs.0);
        let _ = writeln!(out, "final {}", self.endpoint_sigs.1);
        for g in &self.guarantees {
            let _ = writeln!(out, "{} {} {}", g.step, g.tets, g.min_degree);
        }
        out
    }

    pub fn degree_one_free(&self) -> bool {
        self.guarantees.iter().all(|g| g.min_degree >= 2)
    }
}

/// Hooks for long rewrites: `cancel` is polled before each original move
/// and `progress` receives `(done, total)` after each.
#[derive(Default, Clone, Copy)]
pub struct DetourOptions<'a> {
    pub cancel: Option<&'a dyn Fn() -> bool>,
    pub progress: Option<&'a dyn Fn(usize, usize)>,
}

pub fn detour_rewrite(path: &MovePath) -> Result<DetourCertificate, CompositeError> {
    detour_rewrite_with(path, DetourOptions::default())
}

/// Replaces `path` by one with the same endpoints and no degree-one edge in
/// any state. Paths with no such state come back unchanged.
pub fn detour_rewrite_with(path: &MovePath, options: DetourOptions<'_>) -> Result<DetourCertificate, CompositeError> {
    for (step, m) in path.moves.iter().enumerate() {
        if !matches!(m, Move::TwoThree(_) | Move::ThreeTwo(_)) {
            return Err(CompositeError::NotPachner(step));
        }
    }
    let states = path.states().map_err(|e| CompositeError::Replay { step: e.index, source: e.source })?;
    let (first, last) = (&states[0], states.last().unwrap());
    for end in [first, last] {
        let ones = Skeleton::new(end).degree_one_edges();
        if !ones.is_empty() {
            return Err(CompositeError::DegreeOne(ones));
        }
    }
    if let Some(t) = states.iter().find(|t| detect_l41_exceptional(t)) {
        return Err(L41Exception { size: t.len(), stack: Vec::new() }.into());
    }
    let endpoint_sigs = (iso_signature(first), iso_signature(last));
    if states.iter().all(|t| Skeleton::new(t).min_degree() >= 2) {
        return Ok(certify(path.clone(), endpoint_sigs));
    }

    let mut run = Detour::new(first);
    let total = path.moves.len();
    for (k, m) in path.moves.iter().enumerate() {
        if options.cancel.is_some_and(|c| c()) {
            return Err(CompositeError::Cancelled(k));
        }
        run.step(&states[k], &states[k + 1], m, k)?;
        run.release()?;
        if let Some(p) = options.progress {
            p(k + 1, total);
        }
    }
    if !run.pillows.is_empty() {
        return Err(CompositeError::NotRealised("removing every pillow by the end of the path"));
    }
    if find_isomorphism(last, &run.actual).is_none() {
        return Err(CompositeError::NotRealised("matching the final triangulation"));
    }
    let cert = certify(MovePath { initial: first.clone(), moves: run.moves }, endpoint_sigs);
    if !cert.degree_one_free() {
        let bad = cert.guarantees.iter().find(|g| g.min_degree < 2).map_or(0, |g| g.step);
        return Err(CompositeError::DegreeOneState(bad));
    }
    Ok(cert)
}

fn certify(rewritten: MovePath, endpoint_sigs: (IsoSignature, IsoSignature)) -> DetourCertificate {
    let mut guarantees = Vec::with_capacity(rewritten.moves.len() + 1);
    let mut cur = rewritten.initial.clone();
    let mut record = |step: usize, t: &Triangulation| {
        guarantees.push(StateGuarantee { step, tets: t.len(), min_degree: Skeleton::new(t).min_degree() });
    };
    record(0, &cur);
    for (i, m) in rewritten.moves.iter().enumerate() {
        cur = apply(&cur, m).expect("rewritten moves replay").result;
        record(i + 1, &cur);
    }
    DetourCertificate { rewritten, guarantees, endpoint_sigs }
}

/// The actual triangulation, where each tetrahedron of the current original
/// state sits in it, and the live pillows.
struct Detour {
    actual: Triangulation,
    place: Vec<(usize, Perm)>,
    pillows: Vec<PillowHandle>,
    moves: Vec<Move>,
}

impl Detour {
    fn new(tri: &Triangulation) -> Self {
        Detour {
            actual: tri.clone(),
            place: (0..tri.len()).map(|t| (t, Perm::IDENTITY)).collect(),
            pillows: Vec::new(),
            moves: Vec::new(),
        }
    }

    fn in_pillow(&self, t: usize) -> bool {
        self.pillows.iter().any(|h| h.tets.contains(&t))
    }

    fn translate(&self, reference: &Triangulation, m: &Move) -> Option<Move> {
        match *m {
            Move::TwoThree(f) => {
                let (t, p) = self.place[f.tet];
                Some(Move::TwoThree(FaceRef::new(t, p.apply(f.face))))
            }
            Move::ThreeTwo(c) => {
                let rskel = Skeleton::new(reference);
                let (r, _) = *rskel.edges.get(c)?.reps.first()?;
                let (a, b) = r.vertices();
                let (t, p) = self.place[r.tet];
                let image = EdgeRef::between(t, p.apply(a), p.apply(b));
                Some(Move::ThreeTwo(Skeleton::new(&self.actual).edge_class(image)))
            }
            _ => None,
        }
    }

    /// Applies a move to the actual triangulation, following the pillows.
    fn push(&mut self, m: Move, step: usize) -> Result<MoveOutcome, CompositeError> {
        let out = apply(&self.actual, &m).map_err(|source| CompositeError::Replay { step, source })?;
        for h in &mut self.pillows {
            for t in &mut h.tets {
                *t = out.tet_map[*t].ok_or(CompositeError::PillowNotIntact)?;
            }
        }
        self.actual = out.result.clone();
        self.moves.push(m);
        Ok(out)
    }

    /// Carries the placement and the pillows along a relabelling of the
    /// actual triangulation (old index to new index and labels).
    fn relabel(&mut self, map: impl Fn(usize) -> Option<(usize, Perm)>) -> Result<(), CompositeError> {
        for slot in &mut self.place {
            let (t, p) = map(slot.0).ok_or(CompositeError::PillowNotIntact)?;
            *slot = (t, p.compose(slot.1));
        }
        for h in &mut self.pillows {
            for t in &mut h.tets {
                *t = map(*t).ok_or(CompositeError::PillowNotIntact)?.0;
            }
        }
        Ok(())
    }

    /// Replays original move `m` (from `before` to `after`), inserting
    /// pillows first if it would create degree-one edges.
    fn step(&mut self, before: &Triangulation, after: &Triangulation, m: &Move, k: usize) -> Result<(), CompositeError> {
        let unsupported = |source| CompositeError::Replay { step: k, source };
        let mut image = self.translate(before, m).ok_or(CompositeError::NotRealised("translating a move"))?;
        for _ in 0..=6 {
            let witnesses = match classify_degree_one_creation(&self.actual, &image) {
                Ok(Creation::None) => break,
                Ok(Creation::Via23(w) | Creation::Via32(w)) => w,
                Err(crate::moves::ClassifyError::Inapplicable(e)) => return Err(unsupported(e)),
                Err(crate::moves::ClassifyError::Unsupported) => return Err(CompositeError::NotRealised("classifying a move")),
            };
            self.protect(witnesses[0], &image)?;
            image = self.translate(before, m).ok_or(CompositeError::NotRealised("translating a move"))?;
        }
        let done = apply(before, m).map_err(unsupported)?;
        let out = self.push(image, k)?;
        let mut place = vec![None; after.len()];
        for (t, &(a, p)) in self.place.iter().enumerate() {
            if let (Some(t2), Some(a2)) = (done.tet_map[t], out.tet_map[a]) {
                place[t2] = Some((a2, p));
            }
        }
        self.place = if place.iter().any(Option::is_some) {
            self.spread(after, place)?
        } else {
            self.reseat(after, done.first_new, out.first_new)?
        };
        if Skeleton::new(&self.actual).min_degree() < 2 {
            return Err(CompositeError::NotRealised("protecting every degree-one edge"));
        }
        Ok(())
    }

    /// Extends a partial placement across the gluings of `reference`, never
    /// stepping into a pillow.
    fn spread(&self, reference: &Triangulation, mut place: Vec<Option<(usize, Perm)>>) -> Result<Vec<(usize, Perm)>, CompositeError> {
        let mut stack: Vec<usize> = (0..place.len()).filter(|&t| place[t].is_some()).collect();
        while let Some(t) = stack.pop() {
            let (a, p) = place[t].unwrap();
            for f in 0..4 {
                let Some(g) = reference.gluing(t, f) else { continue };
                if place[g.tet].is_some() {
                    continue;
                }
                let Some(h) = self.actual.gluing(a, p.apply(f)) else { continue };
                if self.in_pillow(h.tet) {
                    continue;
                }
                place[g.tet] = Some((h.tet, h.perm.compose(p).compose(g.perm.inverse())));
                stack.push(g.tet);
            }
        }
        place.into_iter().collect::<Option<Vec<_>>>().ok_or(CompositeError::NotRealised("tracking the original path"))
    }

    /// Placement when no tetrahedron survived the move: tries every image of
    /// one new tetrahedron among the new tetrahedra of the actual move.
    fn reseat(&self, reference: &Triangulation, new_ref: usize, new_actual: usize) -> Result<Vec<(usize, Perm)>, CompositeError> {
        for a in new_actual..self.actual.len() {
            for p in Perm::all() {
                let mut place = vec![None; reference.len()];
                place[new_ref] = Some((a, p));
                let Ok(place) = self.spread(reference, place) else { continue };
                if self.consistent(reference, &place) {
                    return Ok(place);
                }
            }
        }
        Err(CompositeError::NotRealised("tracking the original path"))
    }

    fn consistent(&self, reference: &Triangulation, place: &[(usize, Perm)]) -> bool {
        let mut used = vec![false; self.actual.len()];
        for &(a, _) in place {
            if std::mem::replace(&mut used[a], true) {
                return false;
            }
        }
        (0..reference.len()).all(|t| {
            let (a, p) = place[t];
            (0..4).all(|f| match (reference.gluing(t, f), self.actual.gluing(a, p.apply(f))) {
                (Some(g), Some(h)) if self.in_pillow(h.tet) => reference.gluing(g.tet, g.perm.apply(f)).is_some(),
                (Some(g), Some(h)) => place[g.tet] == (h.tet, h.perm.compose(p).compose(g.perm.inverse())),
                (None, None) => true,
                _ => false,
            })
        })
    }

    /// Inserts a pillow on the triangle of degree-two edge `e` that `image`
    /// leaves alone.
    fn protect(&mut self, e: usize, image: &Move) -> Result<(), CompositeError> {
        let skel = Skeleton::new(&self.actual);
        let internal = |tri: FaceRef| match *image {
            Move::TwoThree(f) => tri == f || self.actual.partner(f) == Some(tri),
            Move::ThreeTwo(c) => skel.face_edges(tri.tet, tri.face).contains(&c),
            _ => false,
        };
        let pos = (0..2)
            .find(|&pos| skel.edges[e].book.get(pos).is_some_and(|b| !internal(b.next_face())))
            .ok_or(CompositeError::UnsupportedDegeneracy("both triangles of the edge are used by the move"))?;
        let site = PillowSite::at(&self.actual, &skel, e, pos)?;
        let ins = insert_pillow(&self.actual, &site)?;
        let n = self.actual.len();
        self.moves.extend(ins.path.moves.iter().copied());
        self.actual = ins.result;
        let iso = ins.iso;
        self.relabel(|t| (t < n).then(|| (iso.tets[t], iso.perms[t])))?;
        self.pillows.push(ins.handle);
        Ok(())
    }

    /// Removes every pillow that can go without exposing a degree-one edge,
    /// newest first.
    fn release(&mut self) -> Result<(), CompositeError> {
        let mut i = self.pillows.len();
        while i > 0 {
            i -= 1;
            let handle = self.pillows[i];
            let (base, ..) = excise_pillow(&self.actual, &handle.tets)?;
            if Skeleton::new(&base).min_degree() < 2 {
                continue;
            }
            let Ok(removal) = remove_pillow(&self.actual, &handle) else { continue };
            let iso = find_isomorphism(&base, &removal.result).ok_or(CompositeError::PillowNotIntact)?;
            self.moves.extend(removal.path.moves.iter().copied());
            self.actual = removal.result;
            self.pillows.remove(i);
            let mut members = handle.tets;
            members.sort_unstable();
            let compact = |t: usize| {
                (!members.contains(&t)).then(|| {
                    let b = t - members.iter().filter(|&&m| m < t).count();
                    (iso.tets[b], iso.perms[b])
                })
            };
            self.relabel(compact)?;
            i = self.pillows.len();
        }
        Ok(())
    }
}
