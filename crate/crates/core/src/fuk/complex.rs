use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use super::f2;
use super::zigzag::{add, Elem, ZigzagAlgebra};
use crate::error::{Error, Result};
use crate::twist::TwistWord;

/// Twisted complex over a zigzag algebra: generators `P_{gens[s]}` and a
/// differential with entries `δ(r, s) ∈ hom(P_{gens[s]}, P_{gens[r]})`,
/// nonzero only for `r > s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwComplex {
    gens: Vec<usize>,
    delta: BTreeMap<(usize, usize), Elem>,
}

impl TwComplex {
    /// The projective `P_i` on its own.
    pub fn vertex(i: usize) -> Self {
        TwComplex {
            gens: vec![i],
            delta: BTreeMap::new(),
        }
    }

    /// Builds a complex from `(r, s, entry)` triples and checks
    /// triangularity and `δ² = 0`.
    pub fn new(
        alg: &ZigzagAlgebra,
        gens: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, Elem)>,
    ) -> Result<Self> {
        let mut delta = BTreeMap::new();
        for (r, s, x) in entries {
            if !x.is_empty() {
                delta.insert((r, s), x);
            }
        }
        let c = TwComplex { gens, delta };
        c.check(alg)?;
        Ok(c)
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn entry(&self, r: usize, s: usize) -> &[usize] {
        self.delta.get(&(r, s)).map_or(&[], Vec::as_slice)
    }

    /// Nonzero entries as `((r, s), entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Elem)> {
        self.delta.iter()
    }

    /// Targets of each generator: `out[s]` lists `(r, δ(r, s))`.
    fn out_lists(&self) -> Vec<Vec<(usize, &Elem)>> {
        let mut out = vec![Vec::new(); self.gens.len()];
        for (&(r, s), x) in &self.delta {
            out[s].push((r, x));
        }
        out
    }

    fn check(&self, alg: &ZigzagAlgebra) -> Result<()> {
        let n = self.gens.len();
        for (&(r, s), x) in &self.delta {
            if r >= n || s >= r {
                return Err(Error::Invariant(format!(
                    "entry ({r},{s}) breaks triangularity"
                )));
            }
            for &b in x {
                let bb = alg.basis(b);
                if bb.source() != self.gens[s] || bb.target() != self.gens[r] {
                    return Err(Error::Invariant(format!(
                        "entry ({r},{s}) has the wrong endpoints"
                    )));
                }
            }
        }
        let out = self.out_lists();
        for s in 0..n {
            let mut sq: HashMap<usize, Elem> = HashMap::new();
            for &(m, x) in &out[s] {
                for &(r, y) in &out[m] {
                    let v = sq.entry(r).or_default();
                    *v = add(v, &alg.mul(x, y));
                }
            }
            if let Some((r, _)) = sq.iter().find(|(_, v)| !v.is_empty()) {
                return Err(Error::Invariant(format!("δ² ≠ 0 at ({r},{s})")));
            }
        }
        Ok(())
    }

    /// `T_{P_k}(X)`: cone of evaluation `hom(P_k, X) ⊗ P_k → X`.
    pub fn twist(&self, alg: &ZigzagAlgebra, k: usize) -> Result<TwComplex> {
        let mut copies: Vec<(usize, usize)> = Vec::new();
        for (s, &g) in self.gens.iter().enumerate() {
            copies.extend(alg.hom(k, g).iter().map(|&f| (s, f)));
        }
        let slot: HashMap<(usize, usize), usize> =
            copies.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let nc = copies.len();
        let out = self.out_lists();
        let mut entries = Vec::new();
        for (a, &(s, f)) in copies.iter().enumerate() {
            entries.push((nc + s, a, vec![f]));
            for &(r, x) in &out[s] {
                for b in alg.mul(&[f], x) {
                    entries.push((slot[&(r, b)], a, vec![alg.identity(k)]));
                }
            }
        }
        entries.extend(
            self.delta
                .iter()
                .map(|(&(r, s), x)| (nc + r, nc + s, x.clone())),
        );
        let gens = std::iter::repeat_n(k, nc)
            .chain(self.gens.iter().copied())
            .collect();
        TwComplex::new(alg, gens, entries)
    }

    /// `T_{P_k}^{-1}(X)`: cone of co-evaluation `X → hom(X, P_k)^∨ ⊗ P_k`.
    pub fn twist_inverse(&self, alg: &ZigzagAlgebra, k: usize) -> Result<TwComplex> {
        let mut copies: Vec<(usize, usize)> = Vec::new();
        for (s, &g) in self.gens.iter().enumerate() {
            copies.extend(alg.hom(g, k).iter().map(|&f| (s, f)));
        }
        let slot: HashMap<(usize, usize), usize> =
            copies.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let nx = self.gens.len();
        let mut entries: Vec<(usize, usize, Elem)> = self
            .delta
            .iter()
            .map(|(&(r, s), x)| (r, s, x.clone()))
            .collect();
        for (a, &(s, f)) in copies.iter().enumerate() {
            entries.push((nx + a, s, vec![f]));
        }
        // dual of precomposition with δ_X: copy g^∨ at r feeds copy f^∨ at s
        for (&(s, r), x) in &self.delta {
            for &f in alg.hom(self.gens[s], k) {
                for g in alg.mul(x, &[f]) {
                    entries.push((
                        nx + slot[&(s, f)],
                        nx + slot[&(r, g)],
                        vec![alg.identity(k)],
                    ));
                }
            }
        }
        let gens = self
            .gens
            .iter()
            .copied()
            .chain(copies.iter().map(|_| k))
            .collect();
        TwComplex::new(alg, gens, entries)
    }

    /// `T_{P_k}^m(X)`, minimizing after each step.
    pub fn twist_power(&self, alg: &ZigzagAlgebra, k: usize, m: i64) -> Result<TwComplex> {
        let mut x = self.clone();
        for _ in 0..m.unsigned_abs() {
            x = if m > 0 {
                x.twist(alg, k)?
            } else {
                x.twist_inverse(alg, k)?
            };
            x = x.minimize(alg)?;
        }
        Ok(x)
    }

    /// Cancels pairs of generators joined by an invertible entry until none is
    /// left whose removal keeps the complex triangular.
    pub fn minimize(&self, alg: &ZigzagAlgebra) -> Result<TwComplex> {
        let mut w = Work::new(self);
        let mut refused: HashSet<(usize, usize)> = HashSet::new();
        while let Some((r, s)) = w.find_unit(alg, &refused) {
            if !w.eliminate(alg, r, s) {
                refused.insert((r, s));
            }
        }
        w.finish(alg)
    }

    /// Text dump: generator list, then `(row, col, basis element)` entries.
    pub fn dump(&self, alg: &ZigzagAlgebra) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.gens.iter().map(|&g| alg.names()[g].as_str()).collect();
        let _ = writeln!(out, "gens: {}", names.join(" "));
        for (r, s, b) in self.json_entries(alg) {
            let _ = writeln!(out, "({r}, {s}, {b})");
        }
        out
    }

    fn json_entries(&self, alg: &ZigzagAlgebra) -> Vec<(usize, usize, String)> {
        let mut v: Vec<(usize, usize, usize)> = self
            .delta
            .iter()
            .flat_map(|(&(r, s), x)| x.iter().map(move |&b| (r, s, b)))
            .collect();
        v.sort_unstable();
        v.into_iter()
            .map(|(r, s, b)| (r, s, alg.basis_name(b)))
            .collect()
    }

    pub fn to_json(&self, alg: &ZigzagAlgebra) -> ComplexJson {
        ComplexJson {
            gens: self.gens.iter().map(|&g| alg.names()[g].clone()).collect(),
            delta: self.json_entries(alg),
        }
    }
}

/// Mutable sparse form used during minimization.
struct Work {
    gens: Vec<usize>,
    alive: Vec<bool>,
    /// `out[s][r] = δ(r, s)`
    out: Vec<BTreeMap<usize, Elem>>,
    /// `inc[r]` = sources with a nonzero entry into `r`
    inc: Vec<BTreeSet<usize>>,
    /// position in a current triangular order
    pos: Vec<usize>,
}

impl Work {
    fn new(x: &TwComplex) -> Self {
        let n = x.gens.len();
        let mut out = vec![BTreeMap::new(); n];
        let mut inc = vec![BTreeSet::new(); n];
        for (&(r, s), v) in &x.delta {
            out[s].insert(r, v.clone());
            inc[r].insert(s);
        }
        Work {
            gens: x.gens.clone(),
            alive: vec![true; n],
            out,
            inc,
            pos: (0..n).collect(),
        }
    }

    fn find_unit(
        &self,
        alg: &ZigzagAlgebra,
        refused: &HashSet<(usize, usize)>,
    ) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.gens.len()).filter(|&i| self.alive[i]).collect();
        order.sort_by_key(|&i| self.pos[i]);
        for s in order {
            for (&r, x) in &self.out[s] {
                if alg.is_unit(x) && !refused.contains(&(r, s)) {
                    return Some((r, s));
                }
            }
        }
        None
    }

    fn set(&mut self, r: usize, s: usize, v: Elem) {
        if v.is_empty() {
            self.out[s].remove(&r);
            self.inc[r].remove(&s);
        } else {
            self.out[s].insert(r, v);
            self.inc[r].insert(s);
        }
    }

    /// Eliminates the unit `δ(r, s)`; false (and no change) if the result
    /// would have no triangular order.
    fn eliminate(&mut self, alg: &ZigzagAlgebra, r: usize, s: usize) -> bool {
        // (e + a·l)² = e, so a unit is its own inverse
        let inv = self.out[s][&r].clone();
        let sources: Vec<usize> = self.inc[r].iter().copied().filter(|&b| b != s).collect();
        let targets: Vec<usize> = self.out[s].keys().copied().filter(|&a| a != r).collect();
        let mut updates = Vec::new();
        for &b in &sources {
            let left = alg.mul(&self.out[b][&r], &inv);
            for &a in &targets {
                let t = alg.mul(&left, &self.out[s][&a]);
                if !t.is_empty() {
                    let cur = self.out[b].get(&a).cloned().unwrap_or_default();
                    updates.push((a, b, add(&cur, &t)));
                }
            }
        }
        let breaks_order = updates
            .iter()
            .any(|(a, b, v)| !v.is_empty() && self.pos[*b] > self.pos[*a]);
        let saved: Vec<(usize, usize, Elem)> = updates
            .iter()
            .map(|&(a, b, _)| (a, b, self.out[b].get(&a).cloned().unwrap_or_default()))
            .collect();
        for (a, b, v) in updates {
            self.set(a, b, v);
        }
        if breaks_order {
            match self.topo_positions(r, s) {
                Some(pos) => self.pos = pos,
                None => {
                    for (a, b, v) in saved {
                        self.set(a, b, v);
                    }
                    return false;
                }
            }
        }
        for x in [r, s] {
            self.alive[x] = false;
            for t in std::mem::take(&mut self.out[x]).into_keys() {
                self.inc[t].remove(&x);
            }
            for src in std::mem::take(&mut self.inc[x]) {
                self.out[src].remove(&x);
            }
        }
        true
    }

    /// Triangular positions for the live generators other than `r`, `s`,
    /// staying close to the current order; `None` on a cycle.
    fn topo_positions(&self, r: usize, s: usize) -> Option<Vec<usize>> {
        let n = self.gens.len();
        let live = |i: usize| self.alive[i] && i != r && i != s;
        let mut indeg = vec![0usize; n];
        for i in (0..n).filter(|&i| live(i)) {
            indeg[i] = self.inc[i].iter().filter(|&&j| live(j)).count();
        }
        let mut ready: BTreeSet<(usize, usize)> = (0..n)
            .filter(|&i| live(i) && indeg[i] == 0)
            .map(|i| (self.pos[i], i))
            .collect();
        let mut pos = self.pos.clone();
        let mut placed = 0;
        let total = (0..n).filter(|&i| live(i)).count();
        while let Some((_, i)) = ready.pop_first() {
            pos[i] = placed;
            placed += 1;
            for &t in self.out[i].keys() {
                if live(t) {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert((self.pos[t], t));
                    }
                }
            }
        }
        (placed == total).then_some(pos)
    }

    fn finish(self, alg: &ZigzagAlgebra) -> Result<TwComplex> {
        let mut order: Vec<usize> = (0..self.gens.len()).filter(|&i| self.alive[i]).collect();
        order.sort_by_key(|&i| self.pos[i]);
        let mut new_index = vec![usize::MAX; self.gens.len()];
        for (k, &i) in order.iter().enumerate() {
            new_index[i] = k;
        }
        let gens = order.iter().map(|&i| self.gens[i]).collect();
        let entries = order
            .iter()
            .flat_map(|&s| self.out[s].iter().map(move |(&r, v)| (r, s, v.clone())))
            .map(|(r, s, v)| (new_index[r], new_index[s], v))
            .collect::<Vec<_>>();
        TwComplex::new(alg, gens, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexJson {
    pub gens: Vec<String>,
    pub delta: Vec<(usize, usize, String)>,
}

/// Dimension of the homology of `hom(X, Y)`.
pub fn hf_dim(alg: &ZigzagAlgebra, x: &TwComplex, y: &TwComplex) -> usize {
    let mut index = Vec::new();
    let mut slot = HashMap::new();
    for (s, &gx) in x.gens.iter().enumerate() {
        for (t, &gy) in y.gens.iter().enumerate() {
            for &f in alg.hom(gx, gy) {
                slot.insert((s, t, f), index.len());
                index.push((s, t, f));
            }
        }
    }
    let yout = y.out_lists();
    let mut xin: Vec<Vec<(usize, &Elem)>> = vec![Vec::new(); x.gens.len()];
    for (&(r, s), v) in &x.delta {
        xin[r].push((s, v));
    }
    let rows: Vec<Vec<usize>> = index
        .iter()
        .map(|&(s, t, f)| {
            let mut cols = Vec::new();
            for &(t2, v) in &yout[t] {
                cols.extend(alg.mul(&[f], v).into_iter().map(|b| slot[&(s, t2, b)]));
            }
            for &(s2, v) in &xin[s] {
                cols.extend(alg.mul(v, &[f]).into_iter().map(|b| slot[&(s2, t, b)]));
            }
            cols
        })
        .collect();
    index.len() - 2 * f2::rank(rows, index.len())
}

/// Applies a word of twists along vertex objects to `P_target`, rightmost
/// letter first.
pub fn twist_word_complex(alg: &ZigzagAlgebra, w: &TwistWord, target: &str) -> Result<TwComplex> {
    if alg.dim() == 0 {
        return Err(Error::InvalidSurface("empty algebra".into()));
    }
    let mut x = TwComplex::vertex(alg.vertex(target)?);
    for (name, m) in w.letters().iter().rev() {
        x = x.twist_power(alg, alg.vertex(name)?, *m)?;
    }
    Ok(x)
}

/// [`hf_dim`] with a check that both complexes live over `alg`.
pub fn hf_dim_checked(
    alg: &ZigzagAlgebra,
    other: &ZigzagAlgebra,
    x: &TwComplex,
    y: &TwComplex,
) -> Result<usize> {
    if !alg.same_as(other) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hf_dim(alg, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::tests::graph;

    fn star() -> ZigzagAlgebra {
        ZigzagAlgebra::from_tree(&graph(
            &["A", "B", "C", "D", "E"],
            &[(0, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1)],
        ))
        .unwrap()
    }

    fn w(s: &str) -> TwistWord {
        TwistWord::parse(s).unwrap()
    }

    #[test]
    fn labruere_value() {
        let alg = star();
        let x = twist_word_complex(&alg, &w("A C"), "D").unwrap();
        let y = twist_word_complex(&alg, &w("B C"), "E").unwrap();
        assert_eq!(hf_dim(&alg, &x, &y), 2);
        assert_eq!(x.dump(&alg), "gens: A C D\n(1, 0, p_AC)\n(2, 1, p_CD)\n");
    }

    #[test]
    fn vertex_homs() {
        let alg = star();
        let p = |n: &str| TwComplex::vertex(alg.vertex(n).unwrap());
        assert_eq!(hf_dim(&alg, &p("A"), &p("C")), 1);
        assert_eq!(hf_dim(&alg, &p("A"), &p("A")), 2);
        assert_eq!(hf_dim(&alg, &p("A"), &p("B")), 0);
    }

    #[test]
    fn self_twist_collapses() {
        let alg = star();
        let x = twist_word_complex(&alg, &w("C"), "C").unwrap();
        assert_eq!(x.len(), 1);
        for j in 0..5 {
            let pj = TwComplex::vertex(j);
            assert_eq!(
                hf_dim(&alg, &x, &pj),
                hf_dim(&alg, &TwComplex::vertex(2), &pj)
            );
        }
    }

    #[test]
    fn inverse_cancels() {
        let alg = star();
        for (word, t) in [("A A^-1", "C"), ("C^-1", "D"), ("A C^-1 B", "E")] {
            let x = twist_word_complex(&alg, &w(word), t).unwrap();
            let back = x
                .twist_power(&alg, 2, 1)
                .unwrap()
                .twist_power(&alg, 2, -1)
                .unwrap();
            for j in 0..5 {
                let pj = TwComplex::vertex(j);
                assert_eq!(
                    hf_dim(&alg, &back, &pj),
                    hf_dim(&alg, &x, &pj),
                    "{word} {j}"
                );
            }
        }
    }

    #[test]
    fn twists_preserve_hf() {
        let alg = star();
        let x = twist_word_complex(&alg, &w("A C"), "D").unwrap();
        let y = twist_word_complex(&alg, &w("B^-1 C"), "E").unwrap();
        let before = hf_dim(&alg, &x, &y);
        for (k, m) in [(0, 1), (2, -1), (4, 2)] {
            let (tx, ty) = (
                x.twist_power(&alg, k, m).unwrap(),
                y.twist_power(&alg, k, m).unwrap(),
            );
            assert_eq!(hf_dim(&alg, &tx, &ty), before);
        }
    }

    #[test]
    fn unknown_vertex() {
        assert!(matches!(
            twist_word_complex(&star(), &w("Q"), "A"),
            Err(Error::UnknownName(_))
        ));
    }
}
