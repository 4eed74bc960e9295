#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistlab::curve::NamedCurveSet;
use twistlab::plumbing::{build_plumbing, PlumbEdge, PlumbingGraph};
use twistlab::surface::CombSurface;
use twistlab::twist::TwistWord;

pub fn fixture(name: &str) -> PlumbingGraph {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    PlumbingGraph::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn load(name: &str) -> (PlumbingGraph, CombSurface, NamedCurveSet) {
    let g = fixture(name);
    let (s, c) = build_plumbing(&g).unwrap();
    (g, s, c)
}

pub fn w(s: &str) -> TwistWord {
    TwistWord::parse(s).unwrap()
}

/// Connected plumbing graph with at most `max_edges` edges, random flags and
/// random cyclic orders.
pub fn random_graph(seed: u64, max_edges: usize) -> PlumbingGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_edges.min(6) + 1).min(max_edges + 1);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push([rng.gen_range(0..v), v]);
    }
    let total = rng.gen_range(edges.len()..=max_edges);
    while edges.len() < total {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push([u, v]);
        }
    }
    let edges: Vec<PlumbEdge> = edges
        .into_iter()
        .map(|ends| PlumbEdge {
            ends,
            orient: if rng.gen_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    let cyclic = (0..n)
        .map(|v| {
            let mut inc: Vec<usize> = (0..edges.len())
                .filter(|&k| edges[k].ends.contains(&v))
                .collect();
            inc.shuffle(&mut rng);
            inc
        })
        .collect();
    PlumbingGraph::new(
        (0..n).map(|i| format!("v{}", i + 1)).collect(),
        edges,
        Some(cyclic),
    )
    .unwrap()
}

/// Random word over `names` with `len` letters and exponents in `±1..=±max_exp`.
pub fn random_word<R: Rng>(rng: &mut R, names: &[String], len: usize, max_exp: i64) -> TwistWord {
    TwistWord::new(
        (0..len)
            .map(|_| {
                let m = rng.gen_range(1..=max_exp) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (names[rng.gen_range(0..names.len())].clone(), m)
            })
            .collect(),
    )
}
