//! Triangulations as face-pairing quotients of oriented model tetrahedra.
//!
//! Face `f` of a tetrahedron is the face opposite its vertex `f`. A gluing
//! `(t, f) -> (u, p)` identifies vertex `i` of `t` with vertex `p(i)` of `u`
//! on the shared face, and `p(f)` is the face of `u` being glued.

use std::fmt;

use crate::error::GluingError;
use crate::perm::Perm;

/// The six model edges, as vertex pairs in lexicographic order.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the model edge joining vertices `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
}

impl FaceRef {
    pub fn new(tet: usize, face: usize) -> Self {
        FaceRef { tet, face }
    }
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tet, self.face)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub tet: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(tet: usize, edge: usize) -> Self {
        EdgeRef { tet, edge }
    }

    pub fn between(tet: usize, a: usize, b: usize) -> Self {
        EdgeRef { tet, edge: edge_index(a, b) }
    }

    pub fn vertices(self) -> (usize, usize) {
        EDGE_VERTICES[self.edge]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm,
}

/// A collection of model tetrahedra with face pairings.
///
/// Faces may be left unglued while a triangulation is being assembled (and in
/// fragments such as the triangular pillow); [`Triangulation::check`] enforces
/// the closed, involutive invariants.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Triangulation {
    tets: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    /// `n` tetrahedra with nothing glued.
    pub fn with_tets(n: usize) -> Self {
        Triangulation { tets: vec![[None; 4]; n] }
    }

    /// Builds and checks a closed triangulation from a full gluing table.
    pub fn from_gluings(table: Vec<[(usize, Perm); 4]>) -> Result<Self, GluingError> {
        let tri = Triangulation {
            tets: table
                .into_iter()
                .map(|row| row.map(|(tet, perm)| Some(Gluing { tet, perm })))
                .collect(),
        };
        tri.check()?;
        Ok(tri)
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn add_tet(&mut self) -> usize {
        self.tets.push([None; 4]);
        self.tets.len() - 1
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.tets[tet][face]
    }

    pub fn partner(&self, f: FaceRef) -> Option<FaceRef> {
        self.gluing(f.tet, f.face)
            .map(|g| FaceRef::new(g.tet, g.perm.apply(f.face)))
    }

    /// Glues face `face` of `tet` to tetrahedron `other` via `perm`, and the
    /// partner face back via the inverse. Both faces must be free.
    pub fn join(&mut self, tet: usize, face: usize, other: usize, perm: Perm) {
        let back = perm.apply(face);
        debug_assert!(self.tets[tet][face].is_none(), "face {tet}:{face} already glued");
        debug_assert!(self.tets[other][back].is_none(), "face {other}:{back} already glued");
        debug_assert!(!(tet == other && back == face), "face glued to itself");
        self.tets[tet][face] = Some(Gluing { tet: other, perm });
        self.tets[other][back] = Some(Gluing { tet, perm: perm.inverse() });
    }

    /// Unglues a face and its partner; returns the old gluing.
    pub fn unjoin(&mut self, tet: usize, face: usize) -> Option<Gluing> {
        let g = self.tets[tet][face].take()?;
        self.tets[g.tet][g.perm.apply(face)] = None;
        Some(g)
    }

    pub fn is_closed(&self) -> bool {
        self.tets.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn free_faces(&self) -> Vec<FaceRef> {
        let mut out = Vec::new();
        for (t, row) in self.tets.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if g.is_none() {
                    out.push(FaceRef::new(t, f));
                }
            }
        }
        out
    }

    /// Checks involution, face matching and the absence of self-glued faces.
    /// Free faces are reported as [`GluingError::Unpaired`].
    pub fn check(&self) -> Result<(), GluingError> {
        self.check_inner(false)
    }

    /// As [`Triangulation::check`], but free faces are allowed.
    pub fn check_with_boundary(&self) -> Result<(), GluingError> {
        self.check_inner(true)
    }

    fn check_inner(&self, allow_free: bool) -> Result<(), GluingError> {
        if self.tets.is_empty() {
            return Err(GluingError::Empty);
        }
        for (t, row) in self.tets.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                let here = FaceRef::new(t, f);
                let Some(g) = g else {
                    if allow_free {
                        continue;
                    }
                    return Err(GluingError::Unpaired(here));
                };
                if g.tet >= self.tets.len() {
                    return Err(GluingError::TetOutOfRange(here, g.tet));
                }
                let back_face = g.perm.apply(f);
                let there = FaceRef::new(g.tet, back_face);
                if there == here {
                    return Err(GluingError::SelfGlued(here));
                }
                match self.tets[g.tet][back_face] {
                    Some(b) if b.tet == t && b.perm == g.perm.inverse() => {}
                    _ => return Err(GluingError::NotInvolutive(here, there)),
                }
            }
        }
        Ok(())
    }

    /// True iff every gluing permutation is odd, i.e. the tetrahedra are
    /// consistently oriented as labelled.
    pub fn is_oriented(&self) -> bool {
        self.tets
            .iter()
            .all(|row| row.iter().flatten().all(|g| g.perm.is_odd()))
    }

    /// Orientation signs (±1 per tetrahedron) compatible with the parity rule,
    /// or `None` if the triangulation is non-orientable. Gluings by an odd
    /// permutation join tetrahedra of equal sign.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let n = self.len();
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for g in self.tets[t].iter().flatten() {
                    let want = if g.perm.is_odd() { sign[t] } else { -sign[t] };
                    if sign[g.tet] == 0 {
                        sign[g.tet] = want;
                        stack.push(g.tet);
                    } else if sign[g.tet] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for g in self.tets[t].iter().flatten() {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    count += 1;
                    stack.push(g.tet);
                }
            }
        }
        count == self.len()
    }

    /// Renumbers the vertices of `tet`: old vertex `i` becomes `relabel(i)`.
    pub fn relabel_tet(&mut self, tet: usize, relabel: Perm) {
        let old = self.tets[tet];
        let inv = relabel.inverse();
        for (face, g) in old.iter().enumerate() {
            if g.is_some() {
                self.tets[tet][face] = None;
            }
            if let Some(g) = g {
                if g.tet != tet {
                    self.tets[g.tet][g.perm.apply(face)] = None;
                }
            }
        }
        for (face, g) in old.iter().enumerate() {
            let Some(g) = *g else { continue };
            let new_face = relabel.apply(face);
            if g.tet == tet {
                // Both ends move; set this direction only, the other end is
                // handled by its own iteration.
                self.tets[tet][new_face] = Some(Gluing {
                    tet,
                    perm: relabel.compose(g.perm).compose(inv),
                });
            } else {
                let perm = g.perm.compose(inv);
                self.tets[tet][new_face] = Some(Gluing { tet: g.tet, perm });
                self.tets[g.tet][perm.apply(new_face)] = Some(Gluing { tet, perm: perm.inverse() });
            }
        }
    }

    /// Renumbers tetrahedra: old `t` becomes `order[t]` with its vertices
    /// relabelled by `perms[t]`. Produces an isomorphic triangulation.
    pub fn relabel(&self, order: &[usize], perms: &[Perm]) -> Triangulation {
        let n = self.len();
        let mut out = Triangulation::with_tets(n);
        for t in 0..n {
            for f in 0..4 {
                if let Some(g) = self.tets[t][f] {
                    let perm = perms[g.tet].compose(g.perm).compose(perms[t].inverse());
                    out.tets[order[t]][perms[t].apply(f)] = Some(Gluing { tet: order[g.tet], perm });
                }
            }
        }
        out
    }

    /// Deletes the given tetrahedra (which must have no gluings to survivors)
    /// and shifts the survivors down, preserving their relative order.
    /// Returns the old-to-new index map.
    pub fn remove_tets(&mut self, doomed: &[usize]) -> Vec<Option<usize>> {
        let n = self.len();
        let mut map = vec![None; n];
        let mut next = 0;
        for (t, slot) in map.iter_mut().enumerate() {
            if !doomed.contains(&t) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut tets = Vec::with_capacity(next);
        for (t, row) in self.tets.iter().enumerate() {
            if map[t].is_none() {
                debug_assert!(row.iter().flatten().all(|g| map[g.tet].is_none()));
                continue;
            }
            tets.push(row.map(|g| {
                g.map(|g| Gluing {
                    tet: map[g.tet].expect("survivor glued to removed tetrahedron"),
                    perm: g.perm,
                })
            }));
        }
        self.tets = tets;
        map
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::write_table(self))
    }
}
