//! Inserting a triangular pillow at a triangle next to a degree-two edge,
//! and removing it again, by 2-3 and 3-2 moves only.

use std::collections::{HashSet, VecDeque};

use crate::isosig::{find_isomorphism, iso_signature, sub_triangulation, Isomorphism};
use crate::moves::{apply, apply_path, Move, MovePath};
use crate::perm::Perm;
use crate::skeleton::Skeleton;
use crate::triangulation::{edge_index, FaceRef, Triangulation};

use super::beak::rotations;
use super::l41::{detect_l41_exceptional, L41Exception};
use super::pillow::{boundary_match, build_pillow, graft_pillow, HEAVY_EDGE, PILLOW_FACES};
use super::track::Tracker;
use super::vmove::{v_move_via, wrap_target, EDGE_PAIRS};
use super::CompositeError;

/// Bound on the states visited while searching for mandible rotations.
const ROTATION_BUDGET: usize = 4000;
const POSITIONING_DEPTH: usize = 12;
const CLOSING_DEPTHS: [usize; 3] = [2, 3, 4];

/// A triangle △ next to a degree-two edge `e`, with the edges around the
/// two tetrahedra `tets` that meet along `e`.
///
/// With `p, q, r, s` the vertices of `tets[0]` listed in `verts`: `e = pq`,
/// △ = `pqr`, `e1 = qr`, `e2 = pr`, `ebar1 = qs`, `ebar2 = ps`, `f = rs`.
/// `back` lists the matching vertices of `tets[1]`, whose edge `rs` is
/// `f_back`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PillowSite {
    pub triangle: FaceRef,
    pub e: usize,
    pub e1: usize,
    pub e2: usize,
    pub ebar1: usize,
    pub ebar2: usize,
    pub f: usize,
    pub f_back: usize,
    pub tets: [usize; 2],
    pub verts: Perm,
    pub back: Perm,
}

impl PillowSite {
    /// The site at triangle `triangle` (either of its two faces) of `e`.
    pub fn new(tri: &Triangulation, skel: &Skeleton, e: usize, triangle: FaceRef) -> Result<Self, CompositeError> {
        let class = skel.edges.get(e).ok_or(CompositeError::NotABeak(e))?;
        if class.boundary || class.degree() != 2 {
            return Err(CompositeError::NotDegreeTwo { edge: e, degree: class.degree() });
        }
        if class.book[0].tet == class.book[1].tet {
            return Err(CompositeError::RepeatedTetrahedron(e));
        }
        let entry = class
            .book
            .iter()
            .find_map(|b| {
                if b.next_face() == triangle {
                    Some(*b)
                } else if b.prev_face() == triangle {
                    Some(b.reversed())
                } else {
                    None
                }
            })
            .ok_or(CompositeError::NotIncident { face: triangle, edge: e })?;
        let w = entry.step(tri).expect("degree-two edge is interior");
        let verts = entry.verts;
        let [p, q, r, s] = [0, 1, 2, 3].map(|i| verts.apply(i));
        let wv = w.verts;
        let back = Perm::new([wv.apply(0), wv.apply(1), wv.apply(3), wv.apply(2)].map(|x| x as u8)).unwrap();
        let u = entry.tet;
        Ok(PillowSite {
            triangle: FaceRef::new(u, s),
            e,
            e1: skel.edge_between(u, q, r),
            e2: skel.edge_between(u, p, r),
            ebar1: skel.edge_between(u, q, s),
            ebar2: skel.edge_between(u, p, s),
            f: skel.edge_between(u, r, s),
            f_back: skel.edge_between(w.tet, back.apply(2), back.apply(3)),
            tets: [u, w.tet],
            verts,
            back,
        })
    }

    /// The site at book position `pos` (0 or 1) of `e`.
    pub fn at(tri: &Triangulation, skel: &Skeleton, e: usize, pos: usize) -> Result<Self, CompositeError> {
        let class = skel.edges.get(e).ok_or(CompositeError::NotABeak(e))?;
        let entry = class.book.get(pos % 2).ok_or(CompositeError::NotDegreeTwo { edge: e, degree: class.degree() })?;
        Self::new(tri, skel, e, entry.next_face())
    }

    /// The same site with `p` and `q` exchanged, so that `e1` and `e2`
    /// swap roles.
    pub fn mirrored(&self) -> Self {
        let swap = Perm::swap(0, 1);
        PillowSite {
            e1: self.e2,
            e2: self.e1,
            ebar1: self.ebar2,
            ebar2: self.ebar1,
            verts: self.verts.compose(swap),
            back: self.back.compose(swap),
            ..*self
        }
    }

    /// Vertex labels `p, q, r, s` in one of the two tetrahedra.
    fn labels(&self, side: usize) -> [usize; 4] {
        let v = if side == 0 { self.verts } else { self.back };
        [0, 1, 2, 3].map(|i| v.apply(i))
    }

    /// The pillow-inserted triangulation this site leads to.
    pub fn target(&self, tri: &Triangulation) -> Triangulation {
        let [p, q, ..] = self.labels(0);
        graft_pillow(tri, self.triangle, (p, q))
    }
}

/// Where the first V-move happens: face `face` of `tet`, across the edge
/// pair `pair`. `stack` lists the degree-two-linked tetrahedra walked to
/// get there; `side` is the tetrahedron of the site the beak must end up
/// wrapped around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSite {
    pub tet: usize,
    pub face: usize,
    pub pair: usize,
    pub stack: Vec<usize>,
    pub side: usize,
}

fn pair_of(a: usize, b: usize) -> usize {
    let e = edge_index(a, b);
    EDGE_PAIRS.iter().position(|&(x, y)| x == e || y == e).unwrap()
}

fn face_qualifies(tri: &Triangulation, skel: &Skeleton, tet: usize, face: usize) -> bool {
    tri.gluing(tet, face).is_some_and(|g| g.tet != tet) && skel.face_edges(tet, face).iter().all(|&c| skel.degree(c) >= 3)
}

/// Finds a triangle incident to `e1` whose edges all have degree at least
/// three, walking up the stack of degree-two-linked tetrahedra if needed.
pub fn find_v_site(tri: &Triangulation, skel: &Skeleton, site: &PillowSite) -> Result<VSite, CompositeError> {
    let [p, q, r, _] = site.labels(0);
    let u = site.tets[0];
    for (edge, v) in [(site.e1, q), (site.e2, p), (site.ebar1, q), (site.ebar2, p)] {
        match skel.degree(edge) {
            0 | 1 => return Err(CompositeError::DegreeOne(vec![edge])),
            2 => return Err(CompositeError::SphericalVertex { edge, vertex: skel.vertex_class(u, v) }),
            _ => {}
        }
    }
    let w = site.tets[1];
    let [pw, qw, rw, _] = site.labels(1);
    let front = face_qualifies(tri, skel, u, p);
    let back = face_qualifies(tri, skel, w, pw);
    if front || back {
        let side = if front && back { usize::from(site.f_back < site.f) } else { usize::from(back) };
        let (tet, face, a, b) = if side == 0 { (u, p, q, r) } else { (w, pw, qw, rw) };
        return Ok(VSite { tet, face, pair: pair_of(a, b), stack: Vec::new(), side });
    }

    match climb(tri, skel, site, 0) {
        Err(CompositeError::UnsupportedDegeneracy(_)) => climb(tri, skel, site, 1),
        other => other,
    }
}

/// Walks up the stack of tetrahedra above face `p` of `site.tets[side]`.
fn climb(tri: &Triangulation, skel: &Skeleton, site: &PillowSite, side: usize) -> Result<VSite, CompositeError> {
    let [p, q, r, _] = site.labels(side);
    let mut visited: HashSet<usize> = site.tets.into_iter().collect();
    let mut stack = Vec::new();
    let (mut x, mut face, mut a, mut b) = (site.tets[side], p, q, r);
    for _ in 0..tri.len() {
        let g = tri.gluing(x, face).ok_or(CompositeError::FreeFace(FaceRef::new(x, face)))?;
        if g.tet == x {
            return Err(CompositeError::UnsupportedDegeneracy("stack face glued to its own tetrahedron"));
        }
        let y = g.tet;
        if !visited.insert(y) {
            if detect_l41_exceptional(tri) {
                return Err(L41Exception { size: tri.len(), stack }.into());
            }
            return Err(CompositeError::StackClosure);
        }
        stack.push(y);
        let (ya, yb, yc) = (g.perm.apply(a), g.perm.apply(b), g.perm.apply(face));
        let next = (0..4).find(|&v| v != ya && v != yb && v != yc).unwrap();
        // The face of y holding e1 that is not glued back to x.
        let (nx, nface) = (y, next);
        let edges = [skel.edge_between(nx, ya, yb), skel.edge_between(nx, ya, yc), skel.edge_between(nx, yb, yc)];
        if edges.iter().any(|&c| skel.degree(c) < 2) {
            return Err(CompositeError::DegreeOne(edges.iter().copied().filter(|&c| skel.degree(c) < 2).collect()));
        }
        if face_qualifies(tri, skel, nx, nface) {
            return Ok(VSite { tet: nx, face: nface, pair: pair_of(ya, yb), stack, side });
        }
        if skel.degree(edges[1]) == 2 && skel.degree(edges[2]) == 2 {
            return Err(CompositeError::UnsupportedDegeneracy("two degree-two edges on one stack triangle"));
        }
        x = nx;
        face = nface;
        a = ya;
        b = yb;
    }
    Err(CompositeError::StackClosure)
}

/// Records where an inserted pillow sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PillowHandle {
    pub tets: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct Insertion {
    pub result: Triangulation,
    pub path: MovePath,
    pub handle: PillowHandle,
    /// From [`PillowSite::target`] onto `result`.
    pub iso: Isomorphism,
    pub vsite: VSite,
    /// Lengths of the phases: first V-move, its rotations, second V-move,
    /// closing rotations.
    pub phases: [usize; 4],
}

/// Number of tetrahedra below `from` that survive `moves`.
fn survivors(tri: &Triangulation, moves: &[Move], mut from: usize) -> usize {
    let mut t = tri.clone();
    for m in moves {
        let out = apply(&t, m).expect("replaying verified moves");
        from = (0..from).filter(|&i| out.tet_map[i].is_some()).count();
        t = out.result;
    }
    from
}

/// Breadth-first search over mandible rotations of fresh bird beaks (those
/// made of tetrahedra with index at least `from`) until `target` is
/// reached up to isomorphism.
fn navigate(start: &Triangulation, from: usize, target: &Triangulation, depth: usize) -> Option<(Vec<Move>, Triangulation)> {
    let goal = iso_signature(target);
    let mut seen = HashSet::new();
    seen.insert(iso_signature(start));
    let mut queue = VecDeque::new();
    queue.push_back((start.clone(), Vec::new(), from));
    while let Some((tri, moves, from)) = queue.pop_front() {
        if iso_signature(&tri) == goal {
            return Some((moves, tri));
        }
        if seen.len() > ROTATION_BUDGET || moves.len() >= 2 * depth {
            continue;
        }
        for r in rotations(&tri, from) {
            if seen.insert(iso_signature(&r.result)) {
                let mut next = moves.clone();
                next.extend(r.path.moves.iter().copied());
                queue.push_back((r.result, next, r.survivors_below));
            }
        }
    }
    None
}

/// Inserts a triangular pillow at `site.triangle` with its heavy edge along
/// `site.e`, using two V-moves and mandible rotations.
///
/// When the stack above `e1` is degenerate the insertion is retried from
/// `e2`.
pub fn insert_pillow(tri: &Triangulation, site: &PillowSite) -> Result<Insertion, CompositeError> {
    let skel = Skeleton::new(tri);
    let ones = skel.degree_one_edges();
    if !ones.is_empty() {
        return Err(CompositeError::DegreeOne(ones));
    }
    match insert_from(tri, &skel, site) {
        Err(CompositeError::UnsupportedDegeneracy(_) | CompositeError::StackClosure | CompositeError::NotRealised(_)) => {
            insert_from(tri, &skel, &site.mirrored())
        }
        other => other,
    }
}

fn insert_from(tri: &Triangulation, skel: &Skeleton, site: &PillowSite) -> Result<Insertion, CompositeError> {
    let vsite = find_v_site(tri, skel, site)?;
    let n = tri.len();
    let [p, q, r, _] = site.labels(vsite.side);
    let x0 = site.tets[vsite.side];

    // Phase one: a bird beak across e1 wrapped around x0.
    let first = v_move_via(tri, vsite.tet, vsite.face, vsite.pair)?;
    let mut moves = first.path.moves.clone();
    let wrapped = wrap_target(tri, skel, x0, q, r)?.result;
    let from = survivors(tri, &moves, n);
    let (positioning, state_a) = if vsite.stack.is_empty() {
        (Vec::new(), first.result.clone())
    } else {
        navigate(&first.result, from, &wrapped, POSITIONING_DEPTH).ok_or(CompositeError::NotRealised("positioning the first bird beak"))?
    };
    moves.extend(positioning.iter().copied());
    let psi = find_isomorphism(&wrapped, &state_a).ok_or(CompositeError::NotRealised("the first bird beak"))?;

    // Phases two and three: a bird beak across e2, then close the beaks
    // around each other. The V-move result is symmetric in its three
    // tetrahedra, so the image of x0 may sit on any of them.
    let (x0a, pi) = (psi.tets[x0], psi.perms[x0]);
    let from_a = survivors(tri, &moves, n);
    let mut candidates = vec![(x0a, pi.apply(q), pair_of(pi.apply(p), pi.apply(r)))];
    for t in std::iter::once(x0a).chain(from_a..state_a.len()) {
        for face in 0..4 {
            for pair in 0..3 {
                if !candidates.contains(&(t, face, pair)) {
                    candidates.push((t, face, pair));
                }
            }
        }
    }
    let target = site.target(tri);
    let mut found = None;
    'search: for depth in CLOSING_DEPTHS {
        for &(t, face, pair) in &candidates {
            let Ok(second) = v_move_via(&state_a, t, face, pair) else { continue };
            let from = survivors(&state_a, &second.path.moves, from_a);
            if let Some(closed) = navigate(&second.result, from, &target, depth) {
                found = Some((second, closed));
                break 'search;
            }
        }
    }
    let (second, (closing, result)) = found.ok_or(CompositeError::NotRealised("closing the bird beaks"))?;
    moves.extend(second.path.moves.iter().copied());
    moves.extend(closing.iter().copied());
    let iso = find_isomorphism(&target, &result).expect("navigation ends at the target");
    let handle = PillowHandle { tets: [n, n + 1, n + 2, n + 3].map(|t| iso.tets[t]) };
    Ok(Insertion {
        result,
        path: MovePath { initial: tri.clone(), moves },
        handle,
        iso,
        vsite,
        phases: [4, positioning.len(), 4, closing.len()],
    })
}

/// Cuts the pillow on `tets` out and glues the two faces it was attached
/// to. Returns the result, the reglued triangle, and the model edge of that
/// triangle that carried the pillow's heavy edge.
pub fn excise_pillow(tri: &Triangulation, tets: &[usize; 4]) -> Result<(Triangulation, FaceRef, (usize, usize)), CompositeError> {
    let mut members = tets.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() != 4 || members.iter().any(|&t| t >= tri.len()) {
        return Err(CompositeError::PillowNotIntact);
    }
    let frag = sub_triangulation(tri, &members);
    let iso = find_isomorphism(&build_pillow(), &frag).ok_or(CompositeError::PillowNotIntact)?;
    let [f1, f2] = PILLOW_FACES;
    let side = |pf: FaceRef| {
        let t = members[iso.tets[pf.tet]];
        let face = iso.perms[pf.tet].apply(pf.face);
        tri.gluing(t, face).map(|g| (t, face, g))
    };
    let (t1, face1, g1) = side(f1).ok_or(CompositeError::PillowNotIntact)?;
    let (t2, face2, g2) = side(f2).ok_or(CompositeError::PillowNotIntact)?;
    if members.contains(&g1.tet) || members.contains(&g2.tet) {
        return Err(CompositeError::PillowNotIntact);
    }
    let (a, b) = (iso.perms[f1.tet], iso.perms[f2.tet]);
    let glue = g2.perm.compose(b).compose(boundary_match()).compose(a.inverse()).compose(g1.perm.inverse());
    let heavy = (g1.perm.apply(a.apply(HEAVY_EDGE.0)), g1.perm.apply(a.apply(HEAVY_EDGE.1)));
    let (n1, n1face) = (g1.tet, g1.perm.apply(face1));
    let (n2, _) = (g2.tet, g2.perm.apply(face2));
    let mut out = tri.clone();
    out.unjoin(t1, face1);
    out.unjoin(t2, face2);
    for &t in &members {
        for f in 0..4 {
            out.unjoin(t, f);
        }
    }
    let map = out.remove_tets(&members);
    let (m1, m2) = (map[n1].unwrap(), map[n2].unwrap());
    out.join(m1, n1face, m2, glue);
    Ok((out, FaceRef::new(m1, n1face), heavy))
}

#[derive(Clone, Debug)]
pub struct Removal {
    pub result: Triangulation,
    pub path: MovePath,
}

/// Removes an intact pillow by running an insertion backwards.
pub fn remove_pillow(tri: &Triangulation, handle: &PillowHandle) -> Result<Removal, CompositeError> {
    let (base, triangle, heavy) = excise_pillow(tri, &handle.tets)?;
    let bskel = Skeleton::new(&base);
    let e = bskel.edge_between(triangle.tet, heavy.0, heavy.1);
    let site = PillowSite::new(&base, &bskel, e, triangle)?;
    let ins = insert_pillow(&base, &site)?;
    let states = apply_path(&base, &ins.path.moves).expect("insertion replays");
    let mut tracker = Tracker::new(&ins.result, tri.clone()).ok_or(CompositeError::PillowNotIntact)?;
    let mut moves = Vec::with_capacity(ins.path.moves.len());
    for (k, m) in ins.path.moves.iter().enumerate().rev() {
        let undo = apply(&states[k], m)?.inverse.expect("2-3 and 3-2 moves have inverses");
        let done = apply(&states[k + 1], &undo)?;
        let image = tracker.step(&states[k + 1], &undo, &done)?;
        if !tracker.rebase(&states[k]) {
            return Err(CompositeError::NotRealised("tracking the removal"));
        }
        moves.push(image);
    }
    Ok(Removal { result: tracker.actual, path: MovePath { initial: tri.clone(), moves } })
}
