//! The exceptional one-vertex triangulations of L(4,1): odd stacks of
//! tetrahedra closed with a quarter turn.

use thiserror::Error;

use crate::isosig::is_isomorphic;
use crate::perm::Perm;
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

use super::CompositeError;

/// The stack of degree-two tetrahedra around a pillow site closed up with a
/// quarter turn, so every 2-3 move would create a degree-one edge.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("the triangulation is an exceptional L(4,1) stack of {size} tetrahedra")]
pub struct L41Exception {
    pub size: usize,
    /// Tetrahedra walked before the stack closed.
    pub stack: Vec<usize>,
}

/// Gluing carrying the top two faces of one layer to the bottom two of the
/// next; the cyclic closure of an odd stack is then a quarter turn.
const LAYER: [u8; 4] = [3, 2, 0, 1];

/// The odd stack of `k` tetrahedra, each glued to the next along two faces.
pub fn build_l41_stack(k: usize) -> Result<Triangulation, CompositeError> {
    if k < 3 || k % 2 == 0 {
        return Err(CompositeError::UnsupportedDegeneracy("L(4,1) stacks need an odd size of at least three"));
    }
    let up = Perm::new(LAYER).unwrap();
    let mut tri = Triangulation::with_tets(k);
    for i in 0..k {
        tri.join(i, 0, (i + 1) % k, up);
        tri.join(i, 1, (i + 1) % k, up);
    }
    Ok(tri)
}

/// Whether `tri` is isomorphic to [`build_l41_stack`] of its own size.
pub fn detect_l41_exceptional(tri: &Triangulation) -> bool {
    let n = tri.len();
    if n < 3 || n % 2 == 0 || !tri.is_closed() {
        return false;
    }
    let mut degrees = Skeleton::new(tri).degrees();
    degrees.sort_unstable();
    let mut expected = vec![2; n];
    expected.push(4 * n);
    if degrees != expected {
        return false;
    }
    is_isomorphic(tri, &build_l41_stack(n).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_stack_has_one_vertex_and_no_degree_three() {
        let t = build_l41_stack(3).unwrap();
        let s = Skeleton::new(&t);
        assert_eq!(s.vertices.len(), 1);
        let mut d = s.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![2, 2, 2, 12]);
        assert!(t.is_oriented());
    }

    #[test]
    fn rejects_even_and_small_sizes() {
        for k in [0, 1, 2, 4, 6] {
            assert!(build_l41_stack(k).is_err());
        }
    }
}
