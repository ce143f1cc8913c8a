//! Bird beaks and the rotation of their mandibles.

use crate::isosig::is_isomorphic;
use crate::moves::{move_2_0, pachner_2_3, pachner_3_2, Move, MovePath};
use crate::skeleton::Skeleton;
use crate::triangulation::{FaceRef, Triangulation};

use super::CompositeError;

/// Two distinct tetrahedra glued along the two faces around a degree-two
/// hinge edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BirdBeak {
    pub hinge: usize,
    pub tets: [usize; 2],
    /// The outer faces, as pairs (one face of each tetrahedron) that a 2-0
    /// collapse glues to each other. Each pair is one mandible.
    pub mandibles: [[FaceRef; 2]; 2],
}

impl BirdBeak {
    pub fn new(tri: &Triangulation, skel: &Skeleton, hinge: usize) -> Result<Self, CompositeError> {
        let class = skel.edges.get(hinge).ok_or(CompositeError::NotABeak(hinge))?;
        if class.boundary || class.degree() != 2 {
            return Err(CompositeError::NotDegreeTwo { edge: hinge, degree: class.degree() });
        }
        let entry = class.book[0];
        let (x, y) = (entry.tet, class.book[1].tet);
        if x == y {
            return Err(CompositeError::RepeatedTetrahedron(hinge));
        }
        let v = entry.verts;
        let g = tri.gluing(x, v.apply(3)).ok_or(CompositeError::NotABeak(hinge))?;
        let (c, d) = (v.apply(0), v.apply(1));
        Ok(BirdBeak {
            hinge,
            tets: [x, y],
            mandibles: [
                [FaceRef::new(x, c), FaceRef::new(y, g.perm.apply(c))],
                [FaceRef::new(x, d), FaceRef::new(y, g.perm.apply(d))],
            ],
        })
    }

    /// Every bird beak whose tetrahedra both have index at least `from`.
    pub fn all(tri: &Triangulation, skel: &Skeleton, from: usize) -> Vec<BirdBeak> {
        (0..skel.edges.len())
            .filter(|&h| skel.degree(h) == 2)
            .filter_map(|h| BirdBeak::new(tri, skel, h).ok())
            .filter(|b| b.tets.iter().all(|&t| t >= from))
            .collect()
    }

    /// The 2-0 collapse, when it is valid and leaves no degree-one edge.
    pub fn safe_collapse(&self, tri: &Triangulation) -> Option<Triangulation> {
        let out = move_2_0(tri, self.hinge).ok()?;
        (Skeleton::new(&out.result).min_degree() >= 2).then_some(out.result)
    }
}

#[derive(Clone, Debug)]
pub struct Rotation {
    pub result: Triangulation,
    pub path: MovePath,
    /// The intermediate state after the 2-3.
    pub middle: Triangulation,
    pub beak: BirdBeak,
    /// How many tetrahedra with index below the caller's `from` survive.
    pub survivors_below: usize,
}

/// Rotates one face of a mandible past the tetrahedron glued to it, by a 2-3
/// across that face followed by a 3-2.
///
/// `mandible` picks the mandible and `side` which of its two faces (the one
/// on `beak.tets[side]`) leads the rotation.
pub fn rotate_mandible(tri: &Triangulation, beak: &BirdBeak, mandible: usize, side: usize) -> Result<Rotation, CompositeError> {
    let from = beak.tets[0].min(beak.tets[1]);
    rotate_face(tri, beak, beak.mandibles[mandible % 2][side % 2], from)
}

pub(crate) fn rotate_face(tri: &Triangulation, beak: &BirdBeak, face: FaceRef, from: usize) -> Result<Rotation, CompositeError> {
    rotate_face_all(tri, beak, face, from)?
        .into_iter()
        .next()
        .ok_or(CompositeError::NotRealised("mandible rotation"))
}

/// Every way of completing the rotation of `face`: the 2-3 is forced but
/// several 3-2 moves may leave an equivalent bird beak.
fn rotate_face_all(tri: &Triangulation, beak: &BirdBeak, face: FaceRef, from: usize) -> Result<Vec<Rotation>, CompositeError> {
    let g = tri.gluing(face.tet, face.face).ok_or(CompositeError::FreeFace(face))?;
    let outer: Vec<FaceRef> = beak.mandibles.iter().flatten().copied().collect();
    if outer.contains(&FaceRef::new(g.tet, g.perm.apply(face.face))) {
        return Err(CompositeError::FoldsBeak);
    }
    if beak.tets.contains(&g.tet) {
        return Err(CompositeError::BeakTetrahedron(g.tet));
    }
    let collapsed = beak.safe_collapse(tri);

    let first = pachner_2_3(tri, face)?;
    let mskel = Skeleton::new(&first.result);
    if mskel.min_degree() < 2 {
        return Err(CompositeError::FoldsBeak);
    }
    let undo = first.inverse;
    let mut out = Vec::new();
    for c in 0..mskel.edges.len() {
        if mskel.degree(c) != 3 || Some(Move::ThreeTwo(c)) == undo {
            continue;
        }
        if !mskel.edges[c].book.iter().any(|b| b.tet >= first.first_new) {
            continue;
        }
        let Ok(second) = pachner_3_2(&first.result, c) else { continue };
        let rskel = Skeleton::new(&second.result);
        if rskel.min_degree() < 2 {
            continue;
        }
        let below = |m: &[Option<usize>], n: usize| (0..n.min(m.len())).filter(|&i| m[i].is_some()).count();
        let survivors_below = below(&second.tet_map, below(&first.tet_map, from));
        let mut beaks = BirdBeak::all(&second.result, &rskel, survivors_below);
        beaks.sort_by_key(|b| !b.tets.iter().any(|&t| t >= second.first_new));
        let found = beaks.into_iter().find(|b| match &collapsed {
            Some(c) => b.safe_collapse(&second.result).is_some_and(|r| is_isomorphic(&r, c)),
            None => b.tets.iter().any(|&t| t >= second.first_new),
        });
        if let Some(new_beak) = found {
            out.push(Rotation {
                result: second.result,
                path: MovePath { initial: tri.clone(), moves: vec![Move::TwoThree(face), Move::ThreeTwo(c)] },
                middle: first.result.clone(),
                beak: new_beak,
                survivors_below,
            });
        }
    }
    Ok(out)
}

/// All rotations of bird beaks made of tetrahedra with index at least
/// `from`, past tetrahedra outside the beak.
pub fn rotations(tri: &Triangulation, from: usize) -> Vec<Rotation> {
    let skel = Skeleton::new(tri);
    let mut out = Vec::new();
    for beak in BirdBeak::all(tri, &skel, from) {
        for face in beak.mandibles.iter().flatten() {
            if let Ok(rs) = rotate_face_all(tri, &beak, *face, from) {
                out.extend(rs);
            }
        }
    }
    out
}
