//! Elementary moves: 2-3, 3-2, 0-2 and 2-0.
//!
//! Surviving tetrahedra keep their relative order; removed ones are deleted
//! and the survivors shifted down. New tetrahedra are appended at the end.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Perm;
use crate::skeleton::{BookEntry, Skeleton};
use crate::triangulation::{edge_index, EdgeRef, FaceRef, Triangulation, EDGE_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// 2-3 across the triangle containing this model face.
    TwoThree(FaceRef),
    /// 3-2 on an edge class (numbered in the current skeleton).
    ThreeTwo(usize),
    /// 0-2 on an edge class, at two positions of its book. Position `i` is
    /// the triangle between book entries `i` and `i + 1`.
    ZeroTwo { edge: usize, p: usize, q: usize },
    /// 2-0 collapsing the bird beak around a degree-two edge class.
    TwoZero(usize),
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::TwoThree(_) => "23",
            Move::ThreeTwo(_) => "32",
            Move::ZeroTwo { .. } => "02",
            Move::TwoZero(_) => "20",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("face {0} is not glued")]
    FreeFace(FaceRef),
    #[error("face {0} joins a tetrahedron to itself; 2-3 needs two distinct tetrahedra")]
    SameTetrahedron(FaceRef),
    #[error("no edge class {0}")]
    UnknownEdge(usize),
    #[error("edge {edge} has degree {degree}, expected {expected}")]
    WrongDegree { edge: usize, degree: usize, expected: usize },
    #[error("edge {0} is not surrounded by distinct tetrahedra")]
    RepeatedTetrahedron(usize),
    #[error("edge {0} lies on the boundary")]
    BoundaryEdge(usize),
    #[error("book positions {p}, {q} of edge {edge} do not name two distinct triangles")]
    SameTriangle { edge: usize, p: usize, q: usize },
    #[error("book position {pos} out of range for edge {edge} of degree {degree}")]
    BadPosition { edge: usize, pos: usize, degree: usize },
    #[error("the two edges opposite edge {0} are identified")]
    OppositeEdgesIdentified(usize),
    #[error("the bird beak around edge {0} is glued to itself")]
    DegenerateBeak(usize),
}

/// Result of applying an elementary move.
#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub result: Triangulation,
    /// Old tetrahedron index to new index, `None` for removed ones.
    pub tet_map: Vec<Option<usize>>,
    /// First index of the appended tetrahedra.
    pub first_new: usize,
    /// Old edge class to new edge class, where the class survives as one.
    pub class_map: Vec<Option<usize>>,
    /// `new degree - old degree` for each surviving class.
    pub degree_deltas: HashMap<usize, i64>,
    /// Classes of `result` that are not images of old classes, with degrees.
    pub created_edges: Vec<(usize, usize)>,
    /// Degree-one classes of `result` that were not degree one before.
    pub created_degree_one: Vec<usize>,
    /// For a 2-3 move: the new degree-three edge.
    pub new_edge: Option<EdgeRef>,
    /// For a 3-2 move: a face of the new internal triangle.
    pub new_face: Option<FaceRef>,
    /// For a 0-2 move: the model edge of the new degree-two hinge.
    pub hinge: Option<EdgeRef>,
    /// The move that undoes this one, numbered in `result`.
    pub inverse: Option<Move>,
}

/// Raw output of a local rebuild, before skeleton bookkeeping.
struct Rebuilt {
    tri: Triangulation,
    tet_map: Vec<Option<usize>>,
    first_new: usize,
    /// Model edges of removed tetrahedra and where they ended up.
    edge_carry: Vec<((usize, usize), Option<(usize, usize)>)>,
    /// Vertex relabelling applied to each new tetrahedron for orientation.
    new_relabel: Vec<Perm>,
}

fn face_key(labels: &[u8; 4], face: usize) -> [u8; 3] {
    let mut k = [0u8; 3];
    let mut i = 0;
    for (v, &l) in labels.iter().enumerate() {
        if v != face {
            k[i] = l;
            i += 1;
        }
    }
    k.sort_unstable();
    k
}

/// Perm sending vertex `i` of a tet labelled `from` to the vertex of a tet
/// labelled `to` carrying the same label; `fa` and `fb` are the vertices off
/// the shared face.
fn label_perm(from: &[u8; 4], fa: usize, to: &[u8; 4], fb: usize) -> Perm {
    let mut img = [0u8; 4];
    for i in 0..4 {
        img[i] = if i == fa {
            fb as u8
        } else {
            to.iter().position(|&l| l == from[i]).unwrap() as u8
        };
    }
    Perm::new(img).expect("label map is not a bijection")
}

/// Choose vertex relabellings of the new tetrahedra `first..` so that every
/// gluing is odd, assuming the old part already is.
fn orient_new(tri: &mut Triangulation, first: usize) -> Vec<Perm> {
    let n = tri.len();
    let mut relabel = vec![Perm::IDENTITY; n - first];
    let mut settled: Vec<bool> = (0..n).map(|t| t < first).collect();
    loop {
        let mut progress = false;
        for k in first..n {
            if settled[k] {
                continue;
            }
            let anchor = (0..4).filter_map(|f| tri.gluing(k, f)).find(|g| settled[g.tet]);
            if let Some(g) = anchor {
                if !g.perm.is_odd() {
                    tri.relabel_tet(k, Perm::swap(2, 3));
                    relabel[k - first] = Perm::swap(2, 3);
                }
                settled[k] = true;
                progress = true;
            }
        }
        if !progress {
            match (first..n).find(|&k| !settled[k]) {
                Some(k) => settled[k] = true,
                None => break,
            }
        }
    }
    relabel
}

/// Replaces the `removed` tetrahedra (vertex labels `old_labels`) by new
/// tetrahedra with vertex labels `new_labels`. Faces match by label sets:
/// pairs of new faces with equal sets are glued together, every other new
/// face takes over the outside gluing of the old face with the same set.
fn retriangulate(
    tri: &Triangulation,
    removed: &[usize],
    old_labels: &[[u8; 4]],
    new_labels: &[[u8; 4]],
) -> Rebuilt {
    let oriented = tri.is_oriented();
    let mut out = tri.clone();
    let first = tri.len();
    for _ in new_labels {
        out.add_tet();
    }
    let removed_pos = |t: usize| removed.iter().position(|&r| r == t);

    let mut old_keys: HashMap<[u8; 3], Vec<(usize, usize)>> = HashMap::new();
    for (r, labels) in old_labels.iter().enumerate() {
        for h in 0..4 {
            old_keys.entry(face_key(labels, h)).or_default().push((r, h));
        }
    }
    let mut new_keys: HashMap<[u8; 3], Vec<(usize, usize)>> = HashMap::new();
    for (k, labels) in new_labels.iter().enumerate() {
        for g in 0..4 {
            new_keys.entry(face_key(labels, g)).or_default().push((k, g));
        }
    }

    // Old external face -> (new tet, new face, perm new->old vertices).
    let mut carry: HashMap<(usize, usize), (usize, usize, Perm)> = HashMap::new();
    for (key, faces) in &new_keys {
        match faces.as_slice() {
            [(k1, g1), (k2, g2)] => {
                let p = label_perm(&new_labels[*k1], *g1, &new_labels[*k2], *g2);
                out.join(first + k1, *g1, first + k2, p);
            }
            [(k, g)] => {
                let olds = &old_keys[key];
                assert_eq!(olds.len(), 1, "ambiguous outside face");
                let (r, h) = olds[0];
                let m = label_perm(&new_labels[*k], *g, &old_labels[r], h);
                carry.insert((r, h), (*k, *g, m));
            }
            _ => unreachable!("label set shared by more than two new faces"),
        }
    }
    for (&(r, h), &(k, g, m)) in &carry {
        if out.gluing(first + k, g).is_some() {
            continue;
        }
        let old = tri.gluing(removed[r], h).expect("retriangulating around a free face");
        match removed_pos(old.tet) {
            Some(s) => {
                let (k2, _, m2) = carry[&(s, old.perm.apply(h))];
                let perm = m2.inverse().compose(old.perm).compose(m);
                out.join(first + k, g, first + k2, perm);
            }
            None => {
                out.unjoin(removed[r], h);
                out.join(first + k, g, old.tet, old.perm.compose(m));
            }
        }
    }
    for &r in removed {
        for f in 0..4 {
            out.unjoin(r, f);
        }
    }
    let new_relabel = if oriented {
        orient_new(&mut out, first)
    } else {
        vec![Perm::IDENTITY; new_labels.len()]
    };
    let tet_map = out.remove_tets(removed);
    let first_new = first - removed.len();

    let mut edge_carry = Vec::new();
    for (r, labels) in old_labels.iter().enumerate() {
        for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
            let (la, lb) = (labels[a], labels[b]);
            let target = new_labels.iter().enumerate().find_map(|(k, nl)| {
                let pa = nl.iter().position(|&l| l == la)?;
                let pb = nl.iter().position(|&l| l == lb)?;
                let rl = new_relabel[k];
                Some((first_new + k, edge_index(rl.apply(pa), rl.apply(pb))))
            });
            edge_carry.push(((removed[r], e), target));
        }
    }
    Rebuilt { tri: out, tet_map, first_new, edge_carry, new_relabel }
}

fn face_vertices(face: usize) -> [usize; 3] {
    let v: Vec<usize> = (0..4).filter(|&v| v != face).collect();
    [v[0], v[1], v[2]]
}

fn rebuild_2_3(tri: &Triangulation, f: FaceRef) -> Result<Rebuilt, MoveError> {
    let g = tri.gluing(f.tet, f.face).ok_or(MoveError::FreeFace(f))?;
    if g.tet == f.tet {
        return Err(MoveError::SameTetrahedron(f));
    }
    let apex_b = g.perm.apply(f.face);
    let la = [0u8, 1, 2, 3];
    let mut lb = [0u8; 4];
    for i in 0..4 {
        lb[g.perm.apply(i)] = if i == f.face { 4 } else { i as u8 };
    }
    let a = f.face as u8;
    let xs = face_vertices(f.face);
    let new: Vec<[u8; 4]> = (0..3)
        .map(|i| {
            let others: Vec<u8> = (0..3).filter(|&j| j != i).map(|j| xs[j] as u8).collect();
            [a, 4, others[0], others[1]]
        })
        .collect();
    debug_assert_eq!(lb[apex_b], 4);
    Ok(retriangulate(tri, &[f.tet, g.tet], &[la, lb], &new))
}

/// The book of `edge` after checking it is an interior edge.
fn interior_book(skel: &Skeleton, edge: usize) -> Result<&[BookEntry], MoveError> {
    let class = skel.edges.get(edge).ok_or(MoveError::UnknownEdge(edge))?;
    if class.boundary {
        return Err(MoveError::BoundaryEdge(edge));
    }
    Ok(&class.book)
}

fn rebuild_3_2(tri: &Triangulation, skel: &Skeleton, edge: usize) -> Result<Rebuilt, MoveError> {
    let book = interior_book(skel, edge)?;
    let degree = skel.degree(edge);
    if degree != 3 {
        return Err(MoveError::WrongDegree { edge, degree, expected: 3 });
    }
    let tets: Vec<usize> = book.iter().map(|b| b.tet).collect();
    if tets[0] == tets[1] || tets[1] == tets[2] || tets[0] == tets[2] || book.len() != 3 {
        return Err(MoveError::RepeatedTetrahedron(edge));
    }
    let mut old = Vec::new();
    for (i, b) in book.iter().enumerate() {
        let mut l = [0u8; 4];
        l[b.verts.apply(0)] = 0;
        l[b.verts.apply(1)] = 1;
        l[b.verts.apply(3)] = 2 + i as u8;
        l[b.verts.apply(2)] = 2 + ((i + 1) % 3) as u8;
        old.push(l);
    }
    Ok(retriangulate(tri, &tets, &old, &[[0, 2, 3, 4], [1, 2, 3, 4]]))
}

/// Triangle at book position `i`: the face leaving entry `i` and the face
/// entering entry `i + 1`.
fn book_triangle(book: &[BookEntry], i: usize) -> (FaceRef, FaceRef) {
    let next = book[(i + 1) % book.len()];
    (book[i].next_face(), next.prev_face())
}

fn rebuild_0_2(tri: &Triangulation, skel: &Skeleton, edge: usize, p: usize, q: usize) -> Result<Rebuilt, MoveError> {
    let book = interior_book(skel, edge)?;
    let d = book.len();
    for pos in [p, q] {
        if pos >= d {
            return Err(MoveError::BadPosition { edge, pos, degree: d });
        }
    }
    let (fi, gi) = book_triangle(book, p);
    let (fj, gj) = book_triangle(book, q);
    let tri_i = [fi.min(gi), fi.max(gi)];
    let tri_j = [fj.min(gj), fj.max(gj)];
    if p == q || tri_i == tri_j {
        return Err(MoveError::SameTriangle { edge, p, q });
    }
    let oriented = tri.is_oriented();
    let (ei, ei1) = (book[p], book[(p + 1) % d]);
    let (ej, ej1) = (book[q], book[(q + 1) % d]);
    let v = |b: BookEntry, order: [usize; 4]| {
        Perm::new(order.map(|k| b.verts.apply(k) as u8)).unwrap()
    };
    let mut out = tri.clone();
    out.unjoin(fi.tet, fi.face);
    out.unjoin(fj.tet, fj.face);
    let first = out.len();
    let x = out.add_tet();
    let y = out.add_tet();
    // Beak: X and Y share faces 0 and 1; hinge is edge 23.
    out.join(x, 0, y, Perm::IDENTITY);
    out.join(x, 1, y, Perm::IDENTITY);
    out.join(x, 3, ei.tet, v(ei, [0, 1, 2, 3]));
    out.join(y, 3, ei1.tet, v(ei1, [0, 1, 3, 2]));
    out.join(x, 2, ej1.tet, v(ej1, [0, 1, 2, 3]));
    out.join(y, 2, ej.tet, v(ej, [0, 1, 3, 2]));
    let new_relabel = if oriented { orient_new(&mut out, first) } else { vec![Perm::IDENTITY; 2] };
    let n = tri.len();
    Ok(Rebuilt {
        tri: out,
        tet_map: (0..n).map(Some).collect(),
        first_new: first,
        edge_carry: Vec::new(),
        new_relabel,
    })
}

fn rebuild_2_0(tri: &Triangulation, skel: &Skeleton, edge: usize) -> Result<Rebuilt, MoveError> {
    let book = interior_book(skel, edge)?;
    let degree = skel.degree(edge);
    if degree != 2 {
        return Err(MoveError::WrongDegree { edge, degree, expected: 2 });
    }
    let (sx, sy) = (book[0], book[1]);
    if book.len() != 2 || sx.tet == sy.tet {
        return Err(MoveError::RepeatedTetrahedron(edge));
    }
    let (x, y) = (sx.tet, sy.tet);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| sx.verts.apply(i));
    let p1 = tri.gluing(x, d).unwrap().perm;
    let p2 = tri.gluing(x, c).unwrap().perm;
    if p1.apply(a) != p2.apply(a) || p1.apply(b) != p2.apply(b) {
        return Err(MoveError::DegenerateBeak(edge));
    }
    let mut img = [0u8; 4];
    img[a] = p1.apply(a) as u8;
    img[b] = p1.apply(b) as u8;
    img[c] = p1.apply(c) as u8;
    img[d] = p2.apply(d) as u8;
    let m = Perm::new(img).ok_or(MoveError::DegenerateBeak(edge))?;
    if skel.edge_between(x, c, d) == skel.edge_between(y, m.apply(c), m.apply(d)) {
        return Err(MoveError::OppositeEdgesIdentified(edge));
    }
    let mut pairs = Vec::new();
    let mut edge_carry = Vec::new();
    for outer in [a, b] {
        let q = tri.gluing(x, outer).unwrap();
        let r = tri.gluing(y, m.apply(outer)).unwrap();
        if [x, y].contains(&q.tet) || [x, y].contains(&r.tet) {
            return Err(MoveError::DegenerateBeak(edge));
        }
        pairs.push((q.tet, q.perm.apply(outer), r.tet, r.perm.compose(m).compose(q.perm.inverse())));
        for &(u, w) in &EDGE_VERTICES {
            if u != outer && w != outer {
                edge_carry.push(((x, edge_index(u, w)), (q.tet, edge_index(q.perm.apply(u), q.perm.apply(w)))));
                let (mu, mw) = (m.apply(u), m.apply(w));
                edge_carry.push(((y, edge_index(mu, mw)), (r.tet, edge_index(r.perm.apply(mu), r.perm.apply(mw)))));
            }
        }
    }
    let mut out = tri.clone();
    for t in [x, y] {
        for f in 0..4 {
            out.unjoin(t, f);
        }
    }
    for (n1, f1, n2, perm) in pairs {
        out.join(n1, f1, n2, perm);
    }
    let tet_map = out.remove_tets(&[x, y]);
    let edge_carry = edge_carry
        .into_iter()
        .map(|(old, (t, e))| (old, tet_map[t].map(|t| (t, e))))
        .collect();
    Ok(Rebuilt { tri: out, first_new: tri.len() - 2, tet_map, edge_carry, new_relabel: Vec::new() })
}

fn finish(old: &Triangulation, old_skel: &Skeleton, rebuilt: Rebuilt) -> MoveOutcome {
    let Rebuilt { tri: result, tet_map, first_new, edge_carry, .. } = rebuilt;
    let new_skel = Skeleton::new(&result);
    let carry: HashMap<(usize, usize), Option<(usize, usize)>> = edge_carry.into_iter().collect();
    let mut class_map = vec![None; old_skel.edges.len()];
    for (id, class) in old_skel.edges.iter().enumerate() {
        let mut target: Option<Option<usize>> = None;
        for (r, _) in &class.reps {
            let image = match tet_map[r.tet] {
                Some(t) => Some((t, r.edge)),
                None => carry.get(&(r.tet, r.edge)).copied().flatten(),
            };
            let Some((t, e)) = image else { continue };
            let c = new_skel.edge_class(EdgeRef::new(t, e));
            target = match target {
                None => Some(Some(c)),
                Some(Some(prev)) if prev == c => Some(Some(c)),
                _ => Some(None),
            };
        }
        class_map[id] = target.flatten();
    }
    let mut degree_deltas = HashMap::new();
    let mut hit = vec![false; new_skel.edges.len()];
    for (id, c) in class_map.iter().enumerate() {
        if let Some(c) = *c {
            hit[c] = true;
            degree_deltas.insert(id, new_skel.degree(c) as i64 - old_skel.degree(id) as i64);
        }
    }
    let created_edges: Vec<(usize, usize)> = (0..new_skel.edges.len())
        .filter(|&c| !hit[c])
        .map(|c| (c, new_skel.degree(c)))
        .collect();
    let was_degree_one: Vec<usize> = old_skel
        .degree_one_edges()
        .into_iter()
        .filter_map(|e| class_map[e])
        .collect();
    let created_degree_one = new_skel
        .degree_one_edges()
        .into_iter()
        .filter(|c| !was_degree_one.contains(c))
        .collect();
    let _ = old;
    MoveOutcome {
        result,
        tet_map,
        first_new,
        class_map,
        degree_deltas,
        created_edges,
        created_degree_one,
        new_edge: None,
        new_face: None,
        hinge: None,
        inverse: None,
    }
}

pub fn pachner_2_3(tri: &Triangulation, f: FaceRef) -> Result<MoveOutcome, MoveError> {
    let skel = Skeleton::new(tri);
    let rebuilt = rebuild_2_3(tri, f)?;
    let rl = rebuilt.new_relabel[0];
    let t = rebuilt.first_new;
    let mut out = finish(tri, &skel, rebuilt);
    let e = EdgeRef::between(t, rl.apply(0), rl.apply(1));
    out.new_edge = Some(e);
    out.inverse = Some(Move::ThreeTwo(Skeleton::new(&out.result).edge_class(e)));
    Ok(out)
}

pub fn pachner_3_2(tri: &Triangulation, edge: usize) -> Result<MoveOutcome, MoveError> {
    let skel = Skeleton::new(tri);
    let rebuilt = rebuild_3_2(tri, &skel, edge)?;
    let rl = rebuilt.new_relabel[0];
    let t = rebuilt.first_new;
    let mut out = finish(tri, &skel, rebuilt);
    let f = FaceRef::new(t, rl.apply(0));
    out.new_face = Some(f);
    out.inverse = Some(Move::TwoThree(f));
    Ok(out)
}

pub fn move_0_2(tri: &Triangulation, edge: usize, p: usize, q: usize) -> Result<MoveOutcome, MoveError> {
    let skel = Skeleton::new(tri);
    let rebuilt = rebuild_0_2(tri, &skel, edge, p, q)?;
    let rl = rebuilt.new_relabel[0];
    let x = rebuilt.first_new;
    let mut out = finish(tri, &skel, rebuilt);
    let h = EdgeRef::between(x, rl.apply(2), rl.apply(3));
    out.hinge = Some(h);
    out.inverse = Some(Move::TwoZero(Skeleton::new(&out.result).edge_class(h)));
    Ok(out)
}

pub fn move_2_0(tri: &Triangulation, edge: usize) -> Result<MoveOutcome, MoveError> {
    let skel = Skeleton::new(tri);
    let rebuilt = rebuild_2_0(tri, &skel, edge)?;
    Ok(finish(tri, &skel, rebuilt))
}

pub fn apply(tri: &Triangulation, m: &Move) -> Result<MoveOutcome, MoveError> {
    match *m {
        Move::TwoThree(f) => pachner_2_3(tri, f),
        Move::ThreeTwo(e) => pachner_3_2(tri, e),
        Move::ZeroTwo { edge, p, q } => move_0_2(tri, edge, p, q),
        Move::TwoZero(e) => move_2_0(tri, e),
    }
}

/// Applies a move without the skeleton bookkeeping of [`MoveOutcome`].
/// `skel` must be the skeleton of `tri`.
pub fn apply_fast(tri: &Triangulation, skel: &Skeleton, m: &Move) -> Result<Triangulation, MoveError> {
    let r = match *m {
        Move::TwoThree(f) => rebuild_2_3(tri, f)?,
        Move::ThreeTwo(e) => rebuild_3_2(tri, skel, e)?,
        Move::ZeroTwo { edge, p, q } => rebuild_0_2(tri, skel, edge, p, q)?,
        Move::TwoZero(e) => rebuild_2_0(tri, skel, e)?,
    };
    Ok(r.tri)
}

/// Every applicable 2-3 move (one per triangle) and 3-2 move.
pub fn pachner_moves(tri: &Triangulation, skel: &Skeleton) -> Vec<Move> {
    let mut out = Vec::new();
    for t in 0..tri.len() {
        for f in 0..4 {
            if let Some(g) = tri.gluing(t, f) {
                let other = FaceRef::new(g.tet, g.perm.apply(f));
                if g.tet != t && FaceRef::new(t, f) < other {
                    out.push(Move::TwoThree(FaceRef::new(t, f)));
                }
            }
        }
    }
    for (e, class) in skel.edges.iter().enumerate() {
        if class.degree() == 3 && !class.boundary && class.book.len() == 3 {
            let ts: Vec<usize> = class.book.iter().map(|b| b.tet).collect();
            if ts[0] != ts[1] && ts[1] != ts[2] && ts[0] != ts[2] {
                out.push(Move::ThreeTwo(e));
            }
        }
    }
    out
}

/// How a move creates degree-one edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Creation {
    None,
    /// Created by a 2-3 move; witnesses are the degree-two classes (in the
    /// input) that drop to degree one.
    Via23(Vec<usize>),
    /// Created by a 3-2 move.
    Via32(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Inapplicable(#[from] MoveError),
    #[error("classification covers 2-3, 3-2 and 0-2 moves only")]
    Unsupported,
}

/// Predicts degree-one creation from the local pattern around the move,
/// without applying it.
///
/// For a 2-3 move each of the three edges of the shared triangle loses one
/// model edge and each of the six edges to the apexes gains one. For a 3-2
/// move each of the six edges from the ends of the removed edge to the
/// equator loses one and each of the three equatorial edges gains one.
pub fn classify_degree_one_creation(tri: &Triangulation, m: &Move) -> Result<Creation, ClassifyError> {
    let skel = Skeleton::new(tri);
    let mut delta: HashMap<usize, i64> = HashMap::new();
    let via23;
    match *m {
        Move::TwoThree(f) => {
            let g = tri.gluing(f.tet, f.face).ok_or(MoveError::FreeFace(f))?;
            if g.tet == f.tet {
                return Err(MoveError::SameTetrahedron(f).into());
            }
            let xs = face_vertices(f.face);
            for (i, &x) in xs.iter().enumerate() {
                for &y in &xs[i + 1..] {
                    *delta.entry(skel.edge_between(f.tet, x, y)).or_default() -= 1;
                }
                *delta.entry(skel.edge_between(f.tet, f.face, x)).or_default() += 1;
                let apex = g.perm.apply(f.face);
                *delta.entry(skel.edge_between(g.tet, apex, g.perm.apply(x))).or_default() += 1;
            }
            via23 = true;
        }
        Move::ThreeTwo(e) => {
            rebuild_3_2(tri, &skel, e)?;
            for b in &skel.edges[e].book {
                let v = |i| b.verts.apply(i);
                *delta.entry(skel.edge_between(b.tet, v(0), v(3))).or_default() -= 1;
                *delta.entry(skel.edge_between(b.tet, v(1), v(3))).or_default() -= 1;
                *delta.entry(skel.edge_between(b.tet, v(2), v(3))).or_default() += 1;
            }
            delta.remove(&e);
            via23 = false;
        }
        Move::ZeroTwo { edge, p, q } => {
            // Degrees only grow: both copies of the split edge keep at least
            // their half-book plus one new tetrahedron.
            rebuild_0_2(tri, &skel, edge, p, q)?;
            return Ok(Creation::None);
        }
        Move::TwoZero(_) => return Err(ClassifyError::Unsupported),
    }
    let mut witnesses: Vec<usize> = delta
        .iter()
        .filter(|&(&c, &d)| skel.degree(c) as i64 + d == 1)
        .map(|(&c, _)| c)
        .collect();
    witnesses.sort_unstable();
    Ok(match (witnesses.is_empty(), via23) {
        (true, _) => Creation::None,
        (false, true) => Creation::Via23(witnesses),
        (false, false) => Creation::Via32(witnesses),
    })
}

/// An initial triangulation and a sequence of moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovePath {
    pub initial: Triangulation,
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("move {index} ({text}) cannot be applied: {source}")]
pub struct PathError {
    pub index: usize,
    pub text: String,
    pub source: MoveError,
}

impl MovePath {
    pub fn new(initial: Triangulation) -> Self {
        MovePath { initial, moves: Vec::new() }
    }

    /// Every state along the path, starting with the initial triangulation.
    pub fn states(&self) -> Result<Vec<Triangulation>, PathError> {
        apply_path(&self.initial, &self.moves)
    }

    pub fn final_state(&self) -> Result<Triangulation, PathError> {
        let mut cur = self.initial.clone();
        for (index, m) in self.moves.iter().enumerate() {
            let skel = Skeleton::new(&cur);
            cur = apply_fast(&cur, &skel, m).map_err(|source| PathError {
                index,
                text: crate::io::write_move(m),
                source,
            })?;
        }
        Ok(cur)
    }
}

pub fn apply_path(initial: &Triangulation, moves: &[Move]) -> Result<Vec<Triangulation>, PathError> {
    let mut states = vec![initial.clone()];
    for (index, m) in moves.iter().enumerate() {
        let cur = states.last().unwrap();
        let skel = Skeleton::new(cur);
        let next = apply_fast(cur, &skel, m).map_err(|source| PathError {
            index,
            text: crate::io::write_move(m),
            source,
        })?;
        states.push(next);
    }
    Ok(states)
}
