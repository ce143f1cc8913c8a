//! Brute-force enumeration of small closed gluing tables.

use crate::isosig::iso_signature;
use crate::perm::Perm;
use crate::skeleton::{validate, Mode};
use crate::triangulation::Triangulation;

/// Every way of gluing the faces of `n` tetrahedra in pairs by odd
/// permutations, without deduplication. Grows as `(4n-1)!! * 3^(2n)`, so
/// only sensible for `n <= 2`.
pub fn all_oriented_tables(n: usize) -> Vec<Triangulation> {
    let mut out = Vec::new();
    let mut tri = Triangulation::with_tets(n);
    fill(&mut tri, &mut out);
    out
}

fn fill(tri: &mut Triangulation, out: &mut Vec<Triangulation>) {
    let Some(first) = tri.free_faces().into_iter().next() else {
        out.push(tri.clone());
        return;
    };
    for other in tri.free_faces().into_iter().skip(1) {
        for p in Perm::all().filter(|p| p.is_odd() && p.apply(first.face) == other.face) {
            tri.join(first.tet, first.face, other.tet, p);
            fill(tri, out);
            tri.unjoin(first.tet, first.face);
        }
    }
}

/// One representative per isomorphism class of connected, orientable,
/// one-vertex closed triangulations with `n` tetrahedra (`n <= 2`), in
/// signature order.
pub fn closed_one_vertex(n: usize) -> Vec<Triangulation> {
    let mut seen = std::collections::BTreeMap::new();
    for tri in all_oriented_tables(n) {
        if validate(&tri, Mode::ClosedOneVertex).is_valid() {
            seen.entry(iso_signature(&tri)).or_insert(tri);
        }
    }
    seen.into_values().collect()
}
