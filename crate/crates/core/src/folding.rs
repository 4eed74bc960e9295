//! Stallings folding for finitely generated subgroups of free groups.
//!
//! Letters are nonzero integers; `-x` is the inverse of `x`.

use std::collections::BTreeMap;

/// Folded core graph of a subgroup, based at vertex 0.
#[derive(Clone, Debug)]
pub struct FoldedGraph {
    /// `adj[v][letter] = w`; both orientations are stored.
    adj: Vec<BTreeMap<i64, usize>>,
}

impl FoldedGraph {
    /// Subgroup generated by the given words.
    pub fn generated_by<'a>(words: impl IntoIterator<Item = &'a [i64]>) -> Self {
        let mut parent: Vec<usize> = vec![0];
        let mut edges: Vec<(usize, i64, usize)> = Vec::new();
        for w in words {
            if w.is_empty() {
                continue;
            }
            let mut at = 0;
            for (k, &l) in w.iter().enumerate() {
                let to = if k + 1 == w.len() {
                    0
                } else {
                    parent.push(parent.len());
                    parent.len() - 1
                };
                edges.push((at, l, to));
                at = to;
            }
        }
        fold(parent, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Follows `w` from the base vertex.
    fn read(&self, w: &[i64]) -> Option<usize> {
        w.iter().try_fold(0, |v, l| self.adj[v].get(l).copied())
    }

    /// Membership of a freely reduced word.
    pub fn contains(&self, w: &[i64]) -> bool {
        self.read(w) == Some(0)
    }

    /// True iff every given letter lies in the subgroup, i.e. the subgroup is
    /// the whole free group on that alphabet.
    pub fn contains_letters(&self, letters: impl IntoIterator<Item = i64>) -> bool {
        letters.into_iter().all(|x| self.contains(&[x]))
    }

    /// Rank of the subgroup: `E - V + 1` of the folded graph.
    pub fn rank(&self) -> usize {
        let e: usize = self.adj.iter().map(BTreeMap::len).sum::<usize>() / 2;
        e + 1 - self.adj.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn fold(mut parent: Vec<usize>, edges: Vec<(usize, i64, usize)>) -> FoldedGraph {
    let mut adj: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); parent.len()];
    let mut pending: Vec<(usize, i64, usize)> = edges
        .iter()
        .flat_map(|&(u, l, v)| [(u, l, v), (v, -l, u)])
        .collect();
    while let Some((u, l, v)) = pending.pop() {
        let (u, v) = (find(&mut parent, u), find(&mut parent, v));
        match adj[u].get(&l).copied() {
            None => {
                adj[u].insert(l, v);
            }
            Some(w) => {
                let w = find(&mut parent, w);
                if w != v {
                    // identify v and w, keeping the smaller index as root
                    let (keep, gone) = if v < w { (v, w) } else { (w, v) };
                    parent[gone] = keep;
                    let moved = std::mem::take(&mut adj[gone]);
                    pending.extend(moved.into_iter().map(|(m, t)| (keep, m, t)));
                }
            }
        }
    }
    // targets are resolved through `find`, so stale indices are harmless
    let roots: Vec<usize> = (0..parent.len())
        .filter(|&x| find(&mut parent, x) == x)
        .collect();
    let index: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let adj = roots
        .iter()
        .map(|&r| {
            adj[r]
                .iter()
                .map(|(&l, &t)| (l, index[&find(&mut parent, t)]))
                .collect()
        })
        .collect();
    FoldedGraph { adj }
}
