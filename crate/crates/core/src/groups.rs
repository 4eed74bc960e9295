//! Group-theoretic outputs: coincidence graphs, right-angled Artin and wreath
//! presentations, free-group certificates and irredundancy checks.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::curve::{imin, is_isotopic, reduce_letters, Curve, NamedCurveSet};
use crate::error::{Error, Result};
use crate::exec;
use crate::surface::CombSurface;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::BadGroupTable("no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::BadGroupTable(format!("table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::BadGroupTable("entry out of range".into()));
        }
        if elements.iter().duplicates().next().is_some() {
            return Err(Error::BadGroupTable("duplicate element name".into()));
        }
        for (a, b, c) in itertools::iproduct!(0..n, 0..n, 0..n) {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                return Err(Error::BadGroupTable(format!(
                    "not associative on ({}, {}, {})",
                    elements[a], elements[b], elements[c]
                )));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::BadGroupTable("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return Err(Error::BadGroupTable(format!(
                    "{} has no inverse",
                    elements[a]
                )));
            }
        }
        Ok(FiniteGroup { elements, table })
    }

    /// `Z/n` with elements `0, 1, …, n-1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new((0..n).map(|k| k.to_string()).collect(), table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order())
            .find(|&e| self.table[e][e] == e)
            .expect("validated group has an identity")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Vertices are curve names; an edge joins disjoint curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceGraph {
    pub vertices: Vec<String>,
    /// Pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

impl CoincidenceGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i.min(j), i.max(j))).is_ok()
    }
}

fn closed_curves(curves: &NamedCurveSet) -> Result<Vec<(&str, &Curve)>> {
    curves
        .iter()
        .map(|(n, c)| {
            if c.is_closed() {
                Ok((n, c))
            } else {
                Err(Error::ExpectedClosed(n.to_string()))
            }
        })
        .collect()
}

/// Edge between two curves exactly when they can be made disjoint.
pub fn coincidence_graph(surf: &CombSurface, curves: &NamedCurveSet) -> Result<CoincidenceGraph> {
    let cs = closed_curves(curves)?;
    let pairs: Vec<(usize, usize)> = (0..cs.len()).tuple_combinations().collect();
    let hits = exec::map(&pairs, |&(i, j)| imin(surf, cs[i].1, cs[j].1));
    let mut edges = Vec::new();
    for (&(i, j), h) in pairs.iter().zip(hits) {
        if h? == 0 {
            edges.push((i, j));
        }
    }
    Ok(CoincidenceGraph {
        vertices: cs.iter().map(|(n, _)| n.to_string()).collect(),
        edges,
    })
}

/// Outcome of the free-group intersection test on a subset of curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCertificate {
    pub curves: Vec<String>,
    pub holds: bool,
    /// First failing ordered triple `(i, j, k)`, 1-based positions in `curves`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize, usize)>,
    pub statement: String,
}

/// Checks `6·imin(v_i, v_k) ≤ imin(v_i, v_j)·imin(v_j, v_k)` over all ordered
/// triples of distinct curves in `subset`.
pub fn hamidi_tehrani_certificate(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    subset: &[&str],
) -> Result<FreeCertificate> {
    if subset.len() < 2 {
        return Err(Error::TooFewCurves {
            need: 2,
            got: subset.len(),
        });
    }
    let cs: Vec<&Curve> = subset
        .iter()
        .map(|n| curves.get(n))
        .collect::<Result<_>>()?;
    for (n, c) in subset.iter().zip(&cs) {
        if !c.is_closed() {
            return Err(Error::ExpectedClosed(n.to_string()));
        }
    }
    let m = cs.len();
    let mut table = vec![vec![0usize; m]; m];
    for (i, j) in (0..m).tuple_combinations() {
        let h = imin(surf, cs[i], cs[j])?;
        table[i][j] = h;
        table[j][i] = h;
    }
    let witness = itertools::iproduct!(0..m, 0..m, 0..m)
        .filter(|&(i, j, k)| i != j && j != k && i != k)
        .find(|&(i, j, k)| 6 * table[i][k] > table[i][j] * table[j][k])
        .map(|(i, j, k)| (i + 1, j + 1, k + 1));
    let statement = match witness {
        None => format!("free subgroup F_{m} generated by the twists along these curves, in every stabilisation"),
        Some((i, j, k)) => format!(
            "inequality fails at ({i},{j},{k}): 6·{} > {}·{}",
            table[i - 1][k - 1],
            table[i - 1][j - 1],
            table[j - 1][k - 1]
        ),
    };
    Ok(FreeCertificate {
        curves: subset.iter().map(|s| s.to_string()).collect(),
        holds: witness.is_none(),
        witness,
        statement,
    })
}

/// Outcome of the pairwise non-isotopy check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irredundancy {
    pub holds: bool,
    /// First isotopic pair, 1-based positions in insertion order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

/// True iff no two curves in the set are isotopic.
pub fn irredundancy_check(surf: &CombSurface, curves: &NamedCurveSet) -> Result<Irredundancy> {
    let cs = closed_curves(curves)?;
    for (i, j) in (0..cs.len()).tuple_combinations() {
        if is_isotopic(surf, cs[i].1, cs[j].1)? {
            return Ok(Irredundancy {
                holds: false,
                witness: Some((i + 1, j + 1)),
            });
        }
    }
    Ok(Irredundancy {
        holds: true,
        witness: None,
    })
}

/// A finite presentation. Letters are `±(k + 1)` for generator `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub rels: Vec<Vec<i64>>,
    /// Free-form comment lines printed before the presentation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn commutator(x: i64, y: i64) -> Vec<i64> {
    vec![x, y, -x, -y]
}

impl Presentation {
    pub fn new(gens: Vec<String>, rels: Vec<Vec<i64>>) -> Result<Self> {
        if gens.iter().duplicates().next().is_some() {
            return Err(Error::Parse("duplicate generator".into()));
        }
        let n = gens.len() as i64;
        if rels.iter().flatten().any(|&l| l == 0 || l.abs() > n) {
            return Err(Error::Parse("relator letter out of range".into()));
        }
        let rels = rels
            .into_iter()
            .map(reduce_letters)
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation {
            gens,
            rels,
            notes: Vec::new(),
        })
    }

    /// Free group on the given generators.
    pub fn free(gens: Vec<String>) -> Result<Self> {
        Presentation::new(gens, Vec::new())
    }

    fn letter(&self, l: i64) -> String {
        let g = &self.gens[l.unsigned_abs() as usize - 1];
        if l > 0 {
            g.clone()
        } else {
            format!("{g}^-1")
        }
    }

    fn format_relator(&self, r: &[i64]) -> String {
        if let [x, y, a, b] = *r {
            if x > 0 && y > 0 && a == -x && b == -y {
                return format!("[{},{}]", self.letter(x), self.letter(y));
            }
        }
        r.iter().map(|&l| self.letter(l)).join(" ")
    }

    /// Parses the text format produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut raw: Vec<&str> = Vec::new();
        let mut in_rels = false;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                gens = Some(rest.split_whitespace().map(String::from).collect());
            } else if let Some(rest) = line.strip_prefix("rels:") {
                in_rels = true;
                if !rest.trim().is_empty() {
                    raw.push(rest.trim());
                }
            } else if in_rels {
                raw.push(line);
            } else {
                return Err(Error::Parse(format!("unexpected line `{line}`")));
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing `gens:` line".into()))?;
        let index = |name: &str| -> Result<i64> {
            gens.iter()
                .position(|g| g == name)
                .map(|k| k as i64 + 1)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
        };
        let mut rels = Vec::new();
        for r in raw {
            let mut word = Vec::new();
            for tok in r.split_whitespace() {
                if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    let (x, y) = inner
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("bad commutator `{tok}`")))?;
                    word.extend(commutator(index(x.trim())?, index(y.trim())?));
                } else {
                    let (name, power) = match tok.split_once('^') {
                        Some((n, p)) => (
                            n,
                            p.parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
                        ),
                        None => (tok, 1),
                    };
                    let g = index(name)?;
                    let l = if power < 0 { -g } else { g };
                    word.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
                }
            }
            rels.push(word);
        }
        Presentation::new(gens, rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "# {n}")?;
        }
        writeln!(f, "gens: {}", self.gens.join(" "))?;
        writeln!(f, "rels:")?;
        for r in &self.rels {
            writeln!(f, "{}", self.format_relator(r))?;
        }
        Ok(())
    }
}

/// Caveat attached to presentations whose exponent is not certified.
pub const LARGE_N_CAVEAT: &str = "valid for all sufficiently large n";

/// Right-angled Artin presentation of the coincidence graph. Generator `z_i`
/// stands for the `n`-th power of the twist along the `i`-th curve.
pub fn raag_presentation(g: &CoincidenceGraph, n: u32) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Parse("exponent must be at least 1".into()));
    }
    let gens = (1..=g.vertices.len()).map(|i| format!("z{i}")).collect();
    let rels = g
        .edges
        .iter()
        .map(|&(i, j)| commutator(i as i64 + 1, j as i64 + 1))
        .collect();
    let mut p = Presentation::new(gens, rels)?;
    p.notes.push(format!(
        "z_i = (twist along the i-th curve)^{n}; curves: {}",
        g.vertices.join(", ")
    ));
    p.notes.push(LARGE_N_CAVEAT.to_string());
    Ok(p)
}

/// Presentation of `gamma ≀ G`: one copy `x_g` of each generator per group
/// element, and one generator `t_g` per non-identity element acting by left
/// translation on copies.
pub fn wreath_presentation(gamma: &Presentation, group: &FiniteGroup) -> Result<Presentation> {
    let group = FiniteGroup::new(group.elements.clone(), group.table.clone())?;
    let (m, k) = (group.order(), gamma.gens.len());
    let e = group.identity();
    let trivial = m == 1;
    let copy = |x: usize, g: usize| (g * k + x) as i64 + 1;
    let mut gens: Vec<String> = Vec::new();
    for g in 0..m {
        for x in &gamma.gens {
            gens.push(if trivial {
                x.clone()
            } else {
                format!("{x}_{}", group.elements[g])
            });
        }
    }
    let others: Vec<usize> = (0..m).filter(|&g| g != e).collect();
    let t_index = |g: usize| -> Option<i64> {
        others
            .iter()
            .position(|&h| h == g)
            .map(|p| (m * k + p) as i64 + 1)
    };
    gens.extend(others.iter().map(|&g| format!("t_{}", group.elements[g])));

    let mut rels = Vec::new();
    for g in 0..m {
        for r in &gamma.rels {
            rels.push(
                r.iter()
                    .map(|&l| l.signum() * copy(l.unsigned_abs() as usize - 1, g))
                    .collect(),
            );
        }
    }
    for (g, h) in (0..m).tuple_combinations() {
        for (x, y) in itertools::iproduct!(0..k, 0..k) {
            rels.push(commutator(copy(x, g), copy(y, h)));
        }
    }
    for (&g, &h) in itertools::iproduct!(&others, &others) {
        let mut r = vec![t_index(g).unwrap(), t_index(h).unwrap()];
        if let Some(t) = t_index(group.mul(g, h)) {
            r.push(-t);
        }
        rels.push(r);
    }
    for (&g, h, x) in itertools::iproduct!(&others, 0..m, 0..k) {
        let t = t_index(g).unwrap();
        rels.push(vec![t, copy(x, h), -t, -copy(x, group.mul(g, h))]);
    }
    let mut p = Presentation::new(gens, rels)?;
    p.notes = gamma.notes.clone();
    Ok(p)
}

/// For each `t` generator of a wreath presentation, the permutation of copy
/// indices read back from its relators `t_g x_h t_g^-1 = x_{g·h}`.
pub fn translation_action(p: &Presentation, gamma_gens: usize, order: usize) -> Vec<Vec<usize>> {
    let k = gamma_gens;
    let base = (order * k) as i64;
    let mut act = vec![vec![usize::MAX; order]; order - 1];
    for r in &p.rels {
        if let [t, a, tinv, binv] = r[..] {
            if t > base && tinv == -t && a > 0 && a <= base && binv < 0 && -binv <= base {
                act[(t - base - 1) as usize][(a as usize - 1) / k] = (-binv as usize - 1) / k;
            }
        }
    }
    act
}
