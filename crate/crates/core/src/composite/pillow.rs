//! The triangular pillow: a four-tetrahedron ball bounded by two triangles,
//! built from two interleaved bird beaks.

use crate::perm::Perm;
use crate::triangulation::{FaceRef, Triangulation};

/// Gluing table of the pillow. Tetrahedra 0, 1 form one bird beak and 2, 3
/// the other; faces `0:2` and `3:2` are left free.
///
/// Found by exhaustive search over all ways of gluing two oriented bird
/// beaks along three face pairs; this is the only result (up to
/// isomorphism) that is a ball with internal edge degrees {2, 2, 3, 3} and
/// boundary edge contributions {3, 3, 8}.
pub const PILLOW_TABLE: &str = "\
tets 4
1:1023 1:1023 - 2:1302
0:1023 0:1023 3:2031 2:2103
3:1023 3:1023 0:2031 1:2103
2:1023 2:1023 - 1:1302
";

/// The two free faces of the pillow.
pub const PILLOW_FACES: [FaceRef; 2] = [FaceRef { tet: 0, face: 2 }, FaceRef { tet: 3, face: 2 }];

/// Vertices of the first free face spanning the boundary edge that
/// contributes eight model edges.
pub const HEAVY_EDGE: (usize, usize) = (1, 3);

/// Vertex `i` of the first free face sits at vertex `BOUNDARY_MATCH(i)` of
/// the second free face on the pillow's boundary sphere.
pub fn boundary_match() -> Perm {
    Perm::new([0, 3, 2, 1]).unwrap()
}

pub fn build_pillow() -> Triangulation {
    crate::io::parse_fragment(PILLOW_TABLE).expect("pillow fixture")
}

/// Cuts the triangulation open along the triangle containing `face` and
/// glues in a copy of the pillow, putting its heavy edge along the model
/// edge `heavy` (two vertices of `face`). The pillow occupies the four new
/// tetrahedra at the end.
///
/// Panics if `face` is free or `heavy` is not an edge of it.
pub fn graft_pillow(tri: &Triangulation, face: FaceRef, heavy: (usize, usize)) -> Triangulation {
    let g = tri.gluing(face.tet, face.face).expect("graft on a free face");
    assert!(heavy.0 != face.face && heavy.1 != face.face && heavy.0 != heavy.1);
    let third = (0..4).find(|&v| v != face.face && v != heavy.0 && v != heavy.1).unwrap();
    // Pillow tet 0 -> tri tet: 2 -> face, {1, 3} -> heavy, 0 -> third.
    let mut sigma = Perm::new([third as u8, heavy.0 as u8, face.face as u8, heavy.1 as u8]).unwrap();
    if !sigma.is_odd() {
        sigma = Perm::new([third as u8, heavy.1 as u8, face.face as u8, heavy.0 as u8]).unwrap();
    }
    let tau = g.perm.compose(sigma).compose(boundary_match().inverse());

    let pillow = build_pillow();
    let mut out = tri.clone();
    out.unjoin(face.tet, face.face);
    let base = out.len();
    for _ in 0..4 {
        out.add_tet();
    }
    for t in 0..4 {
        for f in 0..4 {
            if let Some(pg) = pillow.gluing(t, f) {
                if out.gluing(base + t, f).is_none() {
                    out.join(base + t, f, base + pg.tet, pg.perm);
                }
            }
        }
    }
    let [p1, p2] = PILLOW_FACES;
    out.join(base + p1.tet, p1.face, face.tet, sigma);
    out.join(base + p2.tet, p2.face, g.tet, tau);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::Skeleton;

    #[test]
    fn pillow_degrees() {
        let p = build_pillow();
        p.check_with_boundary().unwrap();
        assert_eq!(p.free_faces(), PILLOW_FACES.to_vec());
        let s = Skeleton::new(&p);
        let mut internal: Vec<usize> =
            s.edges.iter().filter(|e| !e.boundary).map(|e| e.degree()).collect();
        internal.sort_unstable();
        assert_eq!(internal, vec![2, 2, 3, 3]);
        let [p1, p2] = PILLOW_FACES;
        let m = boundary_match();
        let heavy = s.edge_between(p1.tet, HEAVY_EDGE.0, HEAVY_EDGE.1);
        assert_eq!(s.degree(heavy), 8);
        assert_eq!(heavy, s.edge_between(p2.tet, m.apply(HEAVY_EDGE.0), m.apply(HEAVY_EDGE.1)));
        for (a, b) in [(0, 1), (0, 3)] {
            let c = s.edge_between(p1.tet, a, b);
            assert_eq!(s.degree(c), 3);
            assert_eq!(c, s.edge_between(p2.tet, m.apply(a), m.apply(b)));
        }
    }
}
