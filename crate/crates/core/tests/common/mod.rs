#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use pachner::census;
use pachner::moves::{apply, classify_degree_one_creation, pachner_moves, Creation, Move, MovePath};
use pachner::{iso_signature, validate, IsoSignature, Mode, Skeleton, Triangulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random 2-3 walks from every two-tetrahedron census class.
pub fn walks(seed: u64, per_class: usize, steps: std::ops::Range<usize>) -> Vec<Triangulation> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for base in census::closed_one_vertex(2) {
        for _ in 0..per_class {
            let mut t = base.clone();
            for _ in 0..rng.gen_range(steps.clone()) {
                let s = Skeleton::new(&t);
                let ups: Vec<Move> = pachner_moves(&t, &s).into_iter().filter(|m| matches!(m, Move::TwoThree(_))).collect();
                if ups.is_empty() {
                    break;
                }
                t = apply(&t, &ups[rng.gen_range(0..ups.len())]).unwrap().result;
            }
            out.push(t);
        }
    }
    out
}

/// Valid one-vertex walks without degree-one edges.
pub fn clean_walks(seed: u64, per_class: usize) -> Vec<Triangulation> {
    walks(seed, per_class, 2..9)
        .into_iter()
        .filter(|t| Skeleton::new(t).min_degree() >= 2 && validate(t, Mode::ClosedOneVertex).is_valid())
        .collect()
}

/// A random 2-3/3-2 path from `start` that passes through a degree-one
/// state and ends outside one, within eight tetrahedra.
pub fn bad_path(rng: &mut ChaCha8Rng, start: &Triangulation) -> Option<MovePath> {
    let mut t = start.clone();
    let mut moves = Vec::new();
    let mut seen_bad = false;
    for _ in 0..12 {
        let s = Skeleton::new(&t);
        let ms = pachner_moves(&t, &s);
        if ms.is_empty() {
            return None;
        }
        let creating: Vec<Move> = ms
            .iter()
            .filter(|m| !matches!(classify_degree_one_creation(&t, m), Ok(Creation::None)))
            .copied()
            .collect();
        let m = if !seen_bad && !creating.is_empty() {
            creating[rng.gen_range(0..creating.len())]
        } else {
            ms[rng.gen_range(0..ms.len())]
        };
        t = apply(&t, &m).unwrap().result;
        moves.push(m);
        let bad = Skeleton::new(&t).min_degree() < 2;
        seen_bad |= bad;
        if seen_bad && !bad && t.len() <= 8 {
            return Some(MovePath { initial: start.clone(), moves });
        }
    }
    None
}

/// Synthetic paths through degree-one states, from 3 to 6 tetrahedron
/// starting points whose endpoints are degree-one-free.
pub fn bad_paths(seed: u64, wanted: usize) -> Vec<MovePath> {
    let mut rng = rng(seed);
    let starts: Vec<Triangulation> = walks(seed, 6, 1..5)
        .into_iter()
        .filter(|t| (3..=6).contains(&t.len()) && Skeleton::new(t).min_degree() >= 2)
        .collect();
    let mut out = Vec::new();
    'outer: for _ in 0..20 {
        for s in &starts {
            if let Some(p) = bad_path(&mut rng, s) {
                out.push(p);
                if out.len() == wanted {
                    break 'outer;
                }
            }
        }
    }
    out
}

/// Per-class degrees, sorted.
pub fn sorted_degrees(t: &Triangulation) -> Vec<usize> {
    let mut d = Skeleton::new(t).degrees();
    d.sort_unstable();
    d
}

/// Degree change of each old class, from the local picture of the move.
pub fn predicted_deltas(tri: &Triangulation, m: &Move) -> HashMap<usize, i64> {
    let s = Skeleton::new(tri);
    let mut d: HashMap<usize, i64> = HashMap::new();
    match *m {
        Move::TwoThree(f) => {
            let g = tri.gluing(f.tet, f.face).unwrap();
            let rim: Vec<usize> = (0..4).filter(|&v| v != f.face).collect();
            for (i, &a) in rim.iter().enumerate() {
                for &b in &rim[i + 1..] {
                    *d.entry(s.edge_between(f.tet, a, b)).or_default() -= 1;
                }
                *d.entry(s.edge_between(f.tet, f.face, a)).or_default() += 1;
                *d.entry(s.edge_between(g.tet, g.perm.apply(f.face), g.perm.apply(a))).or_default() += 1;
            }
        }
        Move::ThreeTwo(e) => {
            for b in &s.edges[e].book {
                let v = |i| b.verts.apply(i);
                for end in [v(0), v(1)] {
                    *d.entry(s.edge_between(b.tet, end, v(3))).or_default() -= 1;
                }
                *d.entry(s.edge_between(b.tet, v(2), v(3))).or_default() += 1;
            }
            d.remove(&e);
        }
        _ => unreachable!(),
    }
    d
}

/// Plain FIFO search with no layering or parallelism.
pub fn slow_slice(seed: &Triangulation, max_tets: usize, forbid: bool) -> (BTreeSet<IsoSignature>, BTreeSet<(IsoSignature, IsoSignature)>) {
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([seed.clone()]);
    nodes.insert(iso_signature(seed));
    while let Some(t) = queue.pop_front() {
        let s = Skeleton::new(&t);
        if forbid && s.min_degree() < 2 {
            continue;
        }
        let here = iso_signature(&t);
        for m in pachner_moves(&t, &s) {
            if matches!(m, Move::TwoThree(_)) && t.len() == max_tets {
                continue;
            }
            let next = apply(&t, &m).unwrap().result;
            let sig = iso_signature(&next);
            edges.insert(if here < sig { (here.clone(), sig.clone()) } else { (sig.clone(), here.clone()) });
            if nodes.insert(sig) {
                queue.push_back(next);
            }
        }
    }
    (nodes, edges)
}
