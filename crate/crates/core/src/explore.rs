//! Breadth-first exploration of the Pachner graph up to a tetrahedron bound,
//! deduplicated by isomorphism signature.
//!
//! Nodes are expanded in layers of equal size, smallest first. Within a
//! layer the work is spread over a rayon pool, and results are merged in
//! signature order, so the slice does not depend on the number of workers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::isosig::{iso_signature, IsoSignature};
use crate::moves::{apply_fast, pachner_moves, Move};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("seed has {seed} tetrahedra, above the bound {bound}")]
    SeedTooLarge { seed: usize, bound: usize },
    #[error("slice is incomplete: {0} is below the bound but was not expanded")]
    Incomplete(IsoSignature),
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub tets: usize,
    pub min_degree: usize,
    /// Moves out of this node were followed.
    pub expanded: bool,
    /// Every applicable move stays within the bound and was followed.
    pub complete: bool,
}

/// An undirected edge, stored with `a < b`; `kind` is the move taking `a`
/// to `b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceEdge {
    pub a: IsoSignature,
    pub b: IsoSignature,
    pub kind: &'static str,
}

#[derive(Clone, Debug)]
pub struct PachnerGraphSlice {
    pub nodes: BTreeMap<IsoSignature, NodeInfo>,
    pub edges: BTreeSet<SliceEdge>,
    /// One gluing table per node, for replaying edges.
    pub reps: BTreeMap<IsoSignature, Triangulation>,
    pub max_tets: usize,
    pub seed: IsoSignature,
    pub forbid_degree_one: bool,
}

/// Worker count from `PACHNER_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("PACHNER_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn bfs_explore(seed: &Triangulation, max_tets: usize, forbid_degree_one: bool) -> Result<PachnerGraphSlice, ExploreError> {
    bfs_explore_with(seed, max_tets, forbid_degree_one, threads_from_env())
}

struct Expansion {
    complete: bool,
    found: Vec<(IsoSignature, Triangulation, &'static str)>,
}

fn expand(tri: &Triangulation, max_tets: usize) -> Expansion {
    let skel = Skeleton::new(tri);
    let mut complete = true;
    let mut found = Vec::new();
    for m in pachner_moves(tri, &skel) {
        let kind = match m {
            Move::TwoThree(_) if tri.len() + 1 > max_tets => {
                complete = false;
                continue;
            }
            Move::TwoThree(_) => "23",
            _ => "32",
        };
        if let Ok(next) = apply_fast(tri, &skel, &m) {
            found.push((iso_signature(&next), next, kind));
        }
    }
    Expansion { complete, found }
}

fn flip(kind: &'static str) -> &'static str {
    if kind == "23" {
        "32"
    } else {
        "23"
    }
}

/// Explores with at most `threads` workers (all available when `None`).
pub fn bfs_explore_with(
    seed: &Triangulation,
    max_tets: usize,
    forbid_degree_one: bool,
    threads: Option<usize>,
) -> Result<PachnerGraphSlice, ExploreError> {
    if seed.len() > max_tets {
        return Err(ExploreError::SeedTooLarge { seed: seed.len(), bound: max_tets });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| ExploreError::Pool(e.to_string()))?;

    let seed_sig = iso_signature(seed);
    let mut slice = PachnerGraphSlice {
        nodes: BTreeMap::new(),
        edges: BTreeSet::new(),
        reps: BTreeMap::new(),
        max_tets,
        seed: seed_sig.clone(),
        forbid_degree_one,
    };
    let mut pending: BTreeMap<usize, BTreeSet<IsoSignature>> = BTreeMap::new();
    let discover = |slice: &mut PachnerGraphSlice, pending: &mut BTreeMap<usize, BTreeSet<IsoSignature>>, sig: IsoSignature, tri: Triangulation| {
        if slice.nodes.contains_key(&sig) {
            return;
        }
        let min_degree = Skeleton::new(&tri).min_degree();
        let wall = forbid_degree_one && min_degree < 2;
        slice.nodes.insert(sig.clone(), NodeInfo { tets: tri.len(), min_degree, expanded: false, complete: false });
        slice.reps.insert(sig.clone(), tri.clone());
        if !wall {
            pending.entry(tri.len()).or_default().insert(sig);
        }
    };
    discover(&mut slice, &mut pending, seed_sig, seed.clone());

    while let Some((_, layer)) = pending.pop_first() {
        let work: Vec<(IsoSignature, Triangulation)> = layer.into_iter().map(|s| (s.clone(), slice.reps[&s].clone())).collect();
        let results: Vec<Expansion> = pool.install(|| work.par_iter().map(|(_, t)| expand(t, max_tets)).collect());
        for ((sig, _), exp) in work.into_iter().zip(results) {
            let node = slice.nodes.get_mut(&sig).expect("pending nodes are recorded");
            node.expanded = true;
            node.complete = exp.complete;
            for (next_sig, next, kind) in exp.found {
                let edge = if sig < next_sig {
                    SliceEdge { a: sig.clone(), b: next_sig.clone(), kind }
                } else {
                    SliceEdge { a: next_sig.clone(), b: sig.clone(), kind: flip(kind) }
                };
                slice.edges.insert(edge);
                discover(&mut slice, &mut pending, next_sig, next);
            }
        }
    }
    Ok(slice)
}

impl PachnerGraphSlice {
    /// Node is degree-one-free (always true without the filter).
    fn admits(&self, sig: &IsoSignature, forbid_degree_one: bool) -> bool {
        !forbid_degree_one || self.nodes[sig].min_degree >= 2
    }

    /// Diff-stable text export: a header comment, then `SIG` and `EDGE`
    /// lines in lexicographic order.
    pub fn export(&self) -> String {
        let mut lines: Vec<String> = self
            .nodes
            .iter()
            .map(|(s, n)| format!("SIG {s} {} {}", n.tets, n.min_degree))
            .chain(self.edges.iter().map(|e| format!("EDGE {} {} {}", e.a, e.b, e.kind)))
            .collect();
        lines.sort();
        let mut out = String::new();
        let _ = writeln!(out, "# seed {} max_tets {} forbid_degree_one {}", self.seed, self.max_tets, self.forbid_degree_one);
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Least signature in the component.
    pub representative: IsoSignature,
    pub size: usize,
    /// Contains a node at the bound whose upward moves were cut off, so the
    /// component may merge with others under a larger bound.
    pub bound_artifact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub forbid_degree_one: bool,
    pub components: Vec<Component>,
}

/// Connected components of the slice, restricted to degree-one-free nodes
/// when `forbid_degree_one` is set. Components are listed by
/// representative.
pub fn connectivity_report(slice: &PachnerGraphSlice, forbid_degree_one: bool) -> Result<ConnectivityReport, ExploreError> {
    for (sig, n) in &slice.nodes {
        let wall = slice.forbid_degree_one && n.min_degree < 2;
        if !wall && !n.expanded {
            return Err(ExploreError::Incomplete(sig.clone()));
        }
    }
    let keys: Vec<&IsoSignature> = slice.nodes.keys().filter(|s| slice.admits(s, forbid_degree_one)).collect();
    let index: BTreeMap<&IsoSignature, usize> = keys.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &slice.edges {
        if let (Some(&i), Some(&j)) = (index.get(&e.a), index.get(&e.b)) {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut comps: BTreeMap<usize, Component> = BTreeMap::new();
    for (i, sig) in keys.iter().enumerate() {
        let root = find(&mut parent, i);
        let n = &slice.nodes[*sig];
        let c = comps.entry(root).or_insert_with(|| Component { representative: (*sig).clone(), size: 0, bound_artifact: false });
        c.size += 1;
        c.bound_artifact |= n.tets == slice.max_tets && !n.complete;
    }
    Ok(ConnectivityReport { forbid_degree_one, components: comps.into_values().collect() })
}
