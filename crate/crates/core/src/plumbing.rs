//! Decorated plumbing graphs and the surfaces they describe.

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, NamedCurveSet};
use crate::error::{Error, Result};
use crate::surface::{CombSurface, Dart};

/// One plumbing gluing between two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlumbEdge {
    pub ends: [usize; 2],
    /// `+1` or `-1`: which of the two square gluings is used.
    pub orient: i8,
}

/// A plumbing graph with both decorations: an orientation flag per edge and,
/// per vertex, the cyclic order (in the direction of the core circle) in which
/// incident edges are glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: Vec<String>,
    edges: Vec<PlumbEdge>,
    cyclic: Vec<Vec<usize>>,
}

/// JSON form: `{vertices:[..], edges:[{ends:[u,v], orient:±1}], cyclic:{v:[edge ids]}}`.
/// Edge ids are 0-based positions in `edges`; a vertex missing from `cyclic`
/// takes its incident edges in increasing id order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlumbingGraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub cyclic: indexmap::IndexMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub ends: [String; 2],
    pub orient: i8,
}

impl PlumbingGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<PlumbEdge>,
        cyclic: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let n = vertices.len();
        for (k, e) in edges.iter().enumerate() {
            if e.ends[0] >= n || e.ends[1] >= n {
                return Err(Error::BadEdge {
                    edge: k,
                    reason: "endpoint out of range".into(),
                });
            }
            if e.ends[0] == e.ends[1] {
                return Err(Error::SelfLoop {
                    edge: k,
                    vertex: vertices[e.ends[0]].clone(),
                });
            }
            if e.orient != 1 && e.orient != -1 {
                return Err(Error::BadEdge {
                    edge: k,
                    reason: format!("orientation flag must be +1 or -1, got {}", e.orient),
                });
            }
        }
        let incident = |v: usize| -> Vec<usize> {
            (0..edges.len())
                .filter(|&k| edges[k].ends.contains(&v))
                .collect()
        };
        let cyclic = match cyclic {
            None => (0..n).map(incident).collect(),
            Some(c) => {
                if c.len() != n {
                    return Err(Error::BadCyclicOrder {
                        vertex: "*".into(),
                        reason: "one cyclic order per vertex required".into(),
                    });
                }
                for (v, order) in c.iter().enumerate() {
                    let mut got = order.clone();
                    got.sort_unstable();
                    let want = incident(v);
                    if got != want {
                        return Err(Error::BadCyclicOrder {
                            vertex: vertices[v].clone(),
                            reason: format!("cyclic order {order:?} must list each incident edge {want:?} exactly once"),
                        });
                    }
                }
                c
            }
        };
        Ok(PlumbingGraph {
            vertices,
            edges,
            cyclic,
        })
    }

    pub fn from_json(j: &PlumbingGraphJson) -> Result<Self> {
        let idx = |name: &str| {
            j.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownName(name.to_string()))
        };
        let edges = j
            .edges
            .iter()
            .map(|e| {
                Ok(PlumbEdge {
                    ends: [idx(&e.ends[0])?, idx(&e.ends[1])?],
                    orient: e.orient,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cyclic: Vec<Option<Vec<usize>>> = vec![None; j.vertices.len()];
        for (name, order) in &j.cyclic {
            cyclic[idx(name)?] = Some(order.clone());
        }
        let cyclic = cyclic
            .into_iter()
            .enumerate()
            .map(|(v, c)| {
                c.unwrap_or_else(|| {
                    (0..edges.len())
                        .filter(|&k| edges[k].ends.contains(&v))
                        .collect()
                })
            })
            .collect();
        PlumbingGraph::new(j.vertices.clone(), edges, Some(cyclic))
    }

    /// Parses the JSON form; errors name the offending field.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: PlumbingGraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        PlumbingGraph::from_json(&j)
    }

    pub fn to_json(&self) -> PlumbingGraphJson {
        PlumbingGraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    ends: [
                        self.vertices[e.ends[0]].clone(),
                        self.vertices[e.ends[1]].clone(),
                    ],
                    orient: e.orient,
                })
                .collect(),
            cyclic: self
                .vertices
                .iter()
                .cloned()
                .zip(self.cyclic.iter().cloned())
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PlumbEdge] {
        &self.edges
    }

    pub fn cyclic_order(&self, v: usize) -> &[usize] {
        &self.cyclic[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.cyclic[v].len()
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.ends == [u, v]) || (e.ends == [v, u]))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                if let Some(w) = other_end(e, v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// Flips the orientation flag of every edge at `v` and reverses the cyclic
    /// order at `v`: the same decorated graph described with the opposite
    /// orientation of the core circle at `v`.
    pub fn reorient_vertex(&self, v: usize) -> PlumbingGraph {
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            if e.ends.contains(&v) {
                e.orient = -e.orient;
            }
        }
        g.cyclic[v].reverse();
        g
    }

    /// Flips the orientation flags at `v` only.
    pub fn flip_vertex_flags(&self, v: usize) -> PlumbingGraph {
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            if e.ends.contains(&v) {
                e.orient = -e.orient;
            }
        }
        g
    }
}

fn other_end(e: &PlumbEdge, v: usize) -> Option<usize> {
    if e.ends[0] == v {
        Some(e.ends[1])
    } else if e.ends[1] == v {
        Some(e.ends[0])
    } else {
        None
    }
}

/// Builds the plumbed surface of `g` and its core curves, named after the
/// vertices.
///
/// Each graph edge becomes one face of the spine: the plumbing square where the
/// two cores cross. Core `v` runs through the squares of its incident edges in
/// the given cyclic order. At the square of edge `(u, w)` the outgoing and
/// incoming darts of the two cores alternate, as `u_out, w_out, u_in, w_in` for
/// flag `+1` and `u_out, w_in, u_in, w_out` for `-1`.
pub fn build_plumbing(g: &PlumbingGraph) -> Result<(CombSurface, NamedCurveSet)> {
    let n_edges = g.edges.len();
    let isolated: Vec<usize> = (0..g.vertices.len())
        .filter(|&v| g.degree(v) == 0)
        .collect();
    let n_faces = n_edges + isolated.len();
    // [u_out, u_in, w_out, w_in] per square
    let mut square: Vec<[Dart; 4]> = vec![[usize::MAX; 4]; n_edges];
    let mut next_edge = 0usize;
    let mut cores: Vec<Vec<Dart>> = vec![Vec::new(); g.vertices.len()];
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n_faces];
    for (v, order) in g.cyclic.iter().enumerate() {
        let d = order.len();
        if d == 0 {
            continue;
        }
        for j in 0..d {
            let (from, to) = (order[j], order[(j + 1) % d]);
            let s = next_edge;
            next_edge += 1;
            let side = |e: usize| if g.edges[e].ends[0] == v { 0 } else { 2 };
            square[from][side(from)] = 2 * s;
            square[to][side(to) + 1] = 2 * s + 1;
            cores[v].push(2 * s);
        }
    }
    for (k, sq) in square.iter().enumerate() {
        let [uo, ui, wo, wi] = *sq;
        rot[k] = if g.edges[k].orient > 0 {
            vec![uo, wo, ui, wi]
        } else {
            vec![uo, wi, ui, wo]
        };
    }
    for (i, &v) in isolated.iter().enumerate() {
        let s = next_edge;
        next_edge += 1;
        rot[n_edges + i] = vec![2 * s, 2 * s + 1];
        cores[v].push(2 * s);
    }
    let surf = CombSurface::from_rotation(rot)?;
    let expected = -(n_edges as i64);
    if surf.euler_characteristic() != expected {
        return Err(Error::Invariant(format!(
            "plumbing has Euler characteristic {} but the graph has {} edges",
            surf.euler_characteristic(),
            n_edges
        )));
    }
    let mut curves = NamedCurveSet::new();
    for (v, darts) in cores.into_iter().enumerate() {
        curves.insert(&g.vertices[v], Curve::closed(&surf, darts)?)?;
    }
    Ok((surf, curves))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn graph(names: &[&str], edges: &[(usize, usize, i8)]) -> PlumbingGraph {
        PlumbingGraph::new(
            names.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|&(a, b, o)| PlumbEdge {
                    ends: [a, b],
                    orient: o,
                })
                .collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn a2_is_punctured_torus() {
        let g = graph(&["a", "b"], &[(0, 1, 1)]);
        let (s, c) = build_plumbing(&g).unwrap();
        assert_eq!(s.euler_characteristic(), -1);
        assert_eq!(s.boundary_components().len(), 1);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn self_loop_rejected() {
        let r = PlumbingGraph::new(
            vec!["a".into()],
            vec![PlumbEdge {
                ends: [0, 0],
                orient: 1,
            }],
            None,
        );
        assert!(matches!(r, Err(Error::SelfLoop { edge: 0, .. })));
    }

    #[test]
    fn bad_cyclic_order_names_vertex() {
        let r = PlumbingGraph::new(
            vec!["a".into(), "b".into()],
            vec![PlumbEdge {
                ends: [0, 1],
                orient: 1,
            }],
            Some(vec![vec![0], vec![0, 0]]),
        );
        match r {
            Err(Error::BadCyclicOrder { vertex, .. }) => assert_eq!(vertex, "b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_orientation_flag() {
        let r = PlumbingGraph::new(
            vec!["a".into(), "b".into()],
            vec![PlumbEdge {
                ends: [0, 1],
                orient: 0,
            }],
            None,
        );
        assert!(matches!(r, Err(Error::BadEdge { .. })));
    }

    #[test]
    fn isolated_vertex_is_annulus() {
        let g = graph(&["a"], &[]);
        let (s, _) = build_plumbing(&g).unwrap();
        assert_eq!(s.euler_characteristic(), 0);
        assert_eq!(s.boundary_components().len(), 2);
    }

    #[test]
    fn reorienting_a_vertex_gives_isomorphic_surface() {
        let g = graph(
            &["a", "b", "c", "d"],
            &[(0, 1, 1), (1, 2, -1), (2, 0, 1), (0, 3, 1), (1, 3, -1)],
        );
        let base = build_plumbing(&g).unwrap().0.canonical_code();
        for v in 0..4 {
            let h = g.reorient_vertex(v);
            assert_eq!(
                build_plumbing(&h).unwrap().0.canonical_code(),
                base,
                "vertex {v}"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let g = graph(&["a", "b", "c"], &[(0, 1, 1), (1, 2, -1)]);
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back: PlumbingGraphJson = serde_json::from_str(&j).unwrap();
        assert_eq!(PlumbingGraph::from_json(&back).unwrap(), g);
    }
}
