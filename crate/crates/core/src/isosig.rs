//! Canonical isomorphism signatures and explicit isomorphisms.
//!
//! Two triangulations are combinatorially isomorphic when one is obtained
//! from the other by renumbering tetrahedra and relabelling the vertices of
//! each tetrahedron. The signature is the lexicographically least
//! breadth-first serialisation over all starting tetrahedra and all 24
//! starting labellings.

use std::fmt;

use crate::perm::Perm;
use crate::triangulation::Triangulation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoSignature(String);

impl IsoSignature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for IsoSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for IsoSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsoSignature({})", self.0)
    }
}

const FREE: u32 = u32::MAX;

/// Serialisation starting from `start` with labelling `perm`, as a flat
/// `[partner, perm index]` sequence over new tetrahedra and faces. Stops early
/// (returning `None`) once the output exceeds `best`.
fn serialise(tri: &Triangulation, start: usize, perm: Perm, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = tri.len();
    let mut new_index = vec![usize::MAX; n];
    let mut relabel = vec![Perm::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    new_index[start] = 0;
    relabel[start] = perm;
    order.push(start);
    let mut out = Vec::with_capacity(8 * n);
    let mut tighter = false;
    let mut k = 0;
    while k < order.len() {
        let t = order[k];
        k += 1;
        let inv = relabel[t].inverse();
        for face in 0..4 {
            let old_face = inv.apply(face);
            let (a, b) = match tri.gluing(t, old_face) {
                None => (FREE, 0),
                Some(g) => {
                    if new_index[g.tet] == usize::MAX {
                        new_index[g.tet] = order.len();
                        relabel[g.tet] = relabel[t].compose(g.perm.inverse());
                        order.push(g.tet);
                    }
                    let p = relabel[g.tet].compose(g.perm).compose(inv);
                    (new_index[g.tet] as u32, p.index() as u32)
                }
            };
            for x in [a, b] {
                if let (Some(best), false) = (best, tighter) {
                    let i = out.len();
                    match x.cmp(&best[i]) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => tighter = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                out.push(x);
            }
        }
    }
    Some(out)
}

fn components(tri: &Triangulation) -> Vec<Vec<usize>> {
    let n = tri.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let t = members[i];
            i += 1;
            for f in 0..4 {
                if let Some(g) = tri.gluing(t, f) {
                    if comp[g.tet] == usize::MAX {
                        comp[g.tet] = id;
                        members.push(g.tet);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// The tetrahedra `members` (sorted) with the gluings among them; faces
/// glued to other tetrahedra become free.
pub(crate) fn sub_triangulation(tri: &Triangulation, members: &[usize]) -> Triangulation {
    let mut out = Triangulation::with_tets(members.len());
    for (i, &t) in members.iter().enumerate() {
        for f in 0..4 {
            if let Some(g) = tri.gluing(t, f) {
                if let Ok(j) = members.binary_search(&g.tet) {
                    if out.gluing(i, f).is_none() {
                        out.join(i, f, j, g.perm);
                    }
                }
            }
        }
    }
    out
}

fn encode(n: usize, code: &[u32]) -> String {
    const ALPHABET: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    let base = ALPHABET.len() as u32;
    // Token range: partner indices 0..n, perm indices 0..24, plus FREE.
    let max = (n as u32).max(24) + 1;
    let mut width = 1;
    let mut cap = base;
    while cap <= max {
        cap *= base;
        width += 1;
    }
    let mut s = format!("{n}.");
    for &x in code {
        let mut v = if x == FREE { n as u32 + 1 } else { x };
        let mut digits = vec![0u8; width];
        for d in digits.iter_mut().rev() {
            *d = ALPHABET[(v % base) as usize];
            v /= base;
        }
        s.push_str(std::str::from_utf8(&digits).unwrap());
    }
    s
}

fn connected_signature(tri: &Triangulation) -> String {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..tri.len() {
        for perm in Perm::all() {
            if let Some(code) = serialise(tri, start, perm, best.as_deref()) {
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    encode(tri.len(), &best.unwrap_or_default())
}

/// Canonical signature; equal exactly for combinatorially isomorphic inputs.
pub fn iso_signature(tri: &Triangulation) -> IsoSignature {
    let comps = components(tri);
    if comps.len() <= 1 {
        return IsoSignature(connected_signature(tri));
    }
    let mut parts: Vec<String> = comps
        .iter()
        .map(|c| connected_signature(&sub_triangulation(tri, c)))
        .collect();
    parts.sort();
    IsoSignature(parts.join("+"))
}

/// An isomorphism: tetrahedron `t` of the source maps to `tets[t]` of the
/// target, with vertex `i` going to `perms[t](i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tets: Vec<usize>,
    pub perms: Vec<Perm>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism { tets: (0..n).collect(), perms: vec![Perm::IDENTITY; n] }
    }

    pub fn inverse(&self) -> Isomorphism {
        let n = self.tets.len();
        let mut tets = vec![0; n];
        let mut perms = vec![Perm::IDENTITY; n];
        for t in 0..n {
            tets[self.tets[t]] = t;
            perms[self.tets[t]] = self.perms[t].inverse();
        }
        Isomorphism { tets, perms }
    }
}

/// Tries to extend `src_start -> (dst_start, perm)` to an isomorphism of
/// connected triangulations.
pub fn extend_isomorphism(a: &Triangulation, b: &Triangulation, src_start: usize, dst_start: usize, perm: Perm) -> Option<Isomorphism> {
    let n = a.len();
    let mut tets = vec![usize::MAX; n];
    let mut perms = vec![Perm::IDENTITY; n];
    let mut used = vec![false; n];
    tets[src_start] = dst_start;
    perms[src_start] = perm;
    used[dst_start] = true;
    let mut stack = vec![src_start];
    while let Some(t) = stack.pop() {
        for f in 0..4 {
            let ga = a.gluing(t, f);
            let gb = b.gluing(tets[t], perms[t].apply(f));
            match (ga, gb) {
                (None, None) => {}
                (Some(ga), Some(gb)) => {
                    // perms[u] must equal gb.perm ∘ perms[t] ∘ ga.perm⁻¹.
                    let want = gb.perm.compose(perms[t]).compose(ga.perm.inverse());
                    if tets[ga.tet] == usize::MAX {
                        if used[gb.tet] {
                            return None;
                        }
                        tets[ga.tet] = gb.tet;
                        perms[ga.tet] = want;
                        used[gb.tet] = true;
                        stack.push(ga.tet);
                    } else if tets[ga.tet] != gb.tet || perms[ga.tet] != want {
                        return None;
                    }
                }
                _ => return None,
            }
        }
    }
    if tets.contains(&usize::MAX) {
        return None;
    }
    Some(Isomorphism { tets, perms })
}

/// Finds an explicit isomorphism `a -> b` between connected triangulations.
pub fn find_isomorphism(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    if a.len() != b.len() || a.is_empty() || !a.is_connected() || !b.is_connected() {
        return None;
    }
    for dst in 0..b.len() {
        for perm in Perm::all() {
            if let Some(iso) = extend_isomorphism(a, b, 0, dst, perm) {
                return Some(iso);
            }
        }
    }
    None
}

/// Like [`find_isomorphism`], but first tries the given anchor, which is
/// cheap when the caller already expects tetrahedron `src` to map to `dst`
/// with the identity labelling.
pub fn find_isomorphism_anchored(a: &Triangulation, b: &Triangulation, src: usize, dst: usize) -> Option<Isomorphism> {
    if a.len() != b.len() || src >= a.len() || dst >= b.len() {
        return None;
    }
    extend_isomorphism(a, b, src, dst, Perm::IDENTITY)
}

pub fn is_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_connected() && b.is_connected() {
        find_isomorphism(a, b).is_some()
    } else {
        iso_signature(a) == iso_signature(b)
    }
}

/// Applies an isomorphism to a triangulation, producing its image.
pub fn apply_isomorphism(tri: &Triangulation, iso: &Isomorphism) -> Triangulation {
    tri.relabel(&iso.tets, &iso.perms)
}
