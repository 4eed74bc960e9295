//! Symbolic stabilisation bookkeeping and transfer verdicts.
//!
//! A one-stabilisation of a fibre with curves `v_1..v_k` and permutation `σ`
//! has `2k` critical points with vanishing sequence
//! `v_σ(1), …, v_σ(k), v_σ(1), …, v_σ(k)`; the matching path between critical
//! points `i` and `i + k` gives a sphere `V_σ(i)` lifting `v_σ(i)`. Critical
//! values are taken at the `2k`-th roots of unity; nothing geometric is stored.

use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arcs::attach_handle;
use crate::curve::{homotopy_word, imin, is_simple, Curve, NamedCurveSet};
use crate::error::{Error, Result};
use crate::exec;
use crate::folding::FoldedGraph;
use crate::fuk::{hf_dim, twist_word_complex, DualModel};
use crate::groups::FiniteGroup;
use crate::plumbing::PlumbingGraph;
use crate::surface::CombSurface;
use crate::twist::{apply_word, is_trivial_word, ArcData, TrivialityVerdict, TwistWord};

/// One Lefschetz one-stabilisation, recorded symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabRecord {
    /// 0 when the fibre is the base surface, otherwise the level of the
    /// record whose spheres form the fibre's collection.
    #[serde(skip)]
    pub fibre_level: usize,
    /// 1-based permutation of `1..=k`.
    pub sigma: Vec<usize>,
    /// The doubled vanishing sequence, `2k` names.
    pub sequence: Vec<String>,
    /// `labels[i]` is the sphere of the matching path between critical points
    /// `i + 1` and `i + 1 + k`.
    pub labels: Vec<String>,
}

impl StabRecord {
    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    /// Critical points (1-based) joined by the matching path of `labels[i]`.
    pub fn matching(&self, i: usize) -> (usize, usize) {
        (i + 1, i + 1 + self.k())
    }

    /// Sphere names in index order `V_1, …, V_k`.
    pub fn spheres(&self) -> Vec<String> {
        (1..=self.k())
            .map(|i| sphere_name(i, self.fibre_level + 1))
            .collect()
    }
}

fn sphere_name(i: usize, level: usize) -> String {
    format!("V{i}{}", "'".repeat(level.saturating_sub(1)))
}

fn check_permutation(sigma: &[usize], k: usize) -> Result<()> {
    if sigma.len() != k {
        return Err(Error::NotPermutation(format!(
            "expected {k} entries, got {}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s == 0 || s > k || seen[s - 1] {
            return Err(Error::NotPermutation(format!(
                "{sigma:?} is not a bijection of 1..={k}"
            )));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

fn symbolic(fibre_level: usize, names: &[String], sigma: &[usize]) -> Result<StabRecord> {
    let k = names.len();
    if k == 0 {
        return Err(Error::TooFewCurves { need: 1, got: 0 });
    }
    check_permutation(sigma, k)?;
    let half: Vec<String> = sigma.iter().map(|&s| names[s - 1].clone()).collect();
    let sequence = half.iter().chain(&half).cloned().collect();
    let labels = sigma
        .iter()
        .map(|&s| sphere_name(s, fibre_level + 1))
        .collect();
    Ok(StabRecord {
        fibre_level,
        sigma: sigma.to_vec(),
        sequence,
        labels,
    })
}

fn check_closed_simple(surf: &CombSurface, curves: &NamedCurveSet, names: &[&str]) -> Result<()> {
    for &n in names {
        let c = curves.get(n)?;
        if !c.is_closed() {
            return Err(Error::ExpectedClosed(n.to_string()));
        }
        if !is_simple(surf, c) {
            return Err(Error::NotSimple(n.to_string()));
        }
    }
    Ok(())
}

/// One-stabilises a surface with the curves `names` (repeats allowed).
pub fn one_stabilise(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    names: &[&str],
    sigma: &[usize],
) -> Result<StabRecord> {
    check_closed_simple(surf, curves, names)?;
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    symbolic(0, &owned, sigma)
}

/// A base surface with curves and a sequence of one-stabilisations, each
/// taking the previous level's spheres as its collection.
#[derive(Clone, Debug)]
pub struct StabTower {
    pub surface: CombSurface,
    pub curves: NamedCurveSet,
    pub base_names: Vec<String>,
    pub records: Vec<StabRecord>,
}

impl StabTower {
    pub fn new(surface: CombSurface, curves: NamedCurveSet, names: &[&str]) -> Result<Self> {
        check_closed_simple(&surface, &curves, names)?;
        if names.is_empty() {
            return Err(Error::TooFewCurves { need: 1, got: 0 });
        }
        Ok(StabTower {
            surface,
            curves,
            base_names: names.iter().map(|s| s.to_string()).collect(),
            records: Vec::new(),
        })
    }

    /// Adds one level; `sigma` may differ from level to level.
    pub fn stabilise(&mut self, sigma: &[usize]) -> Result<&StabRecord> {
        let level = self.records.len();
        let names = self.top_names();
        let rec = symbolic(level, &names, sigma)?;
        self.records.push(rec);
        Ok(self.records.last().expect("just pushed"))
    }

    /// Dimension gain over the base.
    pub fn height(&self) -> usize {
        self.records.len()
    }

    /// Names of the collection at the top level.
    pub fn top_names(&self) -> Vec<String> {
        match self.records.last() {
            None => self.base_names.clone(),
            Some(r) => r.spheres(),
        }
    }

    /// The word with each base curve replaced by its lift at the top.
    pub fn lift_word(&self, w: &TwistWord) -> Result<TwistWord> {
        let top = self.top_names();
        let letters = w
            .letters()
            .iter()
            .map(|(n, m)| {
                let i = self
                    .base_names
                    .iter()
                    .position(|b| b == n)
                    .ok_or_else(|| Error::UnknownName(n.clone()))?;
                Ok((top[i].clone(), *m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistWord::new(letters))
    }
}

/// Cyclic order of the vertices of a cycle graph and the edge between
/// consecutive ones (the last edge closes the cycle).
fn cycle_walk(g: &PlumbingGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = g.vertices().len();
    if n < 2 || g.edges().len() != n || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return Err(Error::NotCycle(format!(
            "{n} vertices, {} edges",
            g.edges().len()
        )));
    }
    let (mut order, mut via) = (vec![0], Vec::new());
    let mut used = vec![false; n];
    let mut at = 0;
    for _ in 0..n {
        let e = (0..n)
            .find(|&e| !used[e] && g.edges()[e].ends.contains(&at))
            .expect("degree 2");
        used[e] = true;
        via.push(e);
        let [u, v] = g.edges()[e].ends;
        at = if u == at { v } else { u };
        if order.len() < n {
            order.push(at);
        }
    }
    Ok((order, via))
}

/// The permutation making a cycle plumbing a one-stabilisation of the chain:
/// identity when the cycle is positively oriented after normalising flags by
/// vertex flips, otherwise the transposition of the last two indices.
pub fn cycle_plumbing_sigma(g: &PlumbingGraph) -> Result<Vec<usize>> {
    let (order, via) = cycle_walk(g)?;
    let n = order.len();
    let mut h = g.clone();
    for j in 0..n - 1 {
        if h.edges()[via[j]].orient < 0 {
            h = h.flip_vertex_flags(order[j + 1]);
        }
    }
    let mut sigma: Vec<usize> = (1..=n).collect();
    if h.edges()[via[n - 1]].orient < 0 {
        sigma.swap(n - 2, n - 1);
    }
    Ok(sigma)
}

/// Vanishing sequence of an equivariant one-stabilisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSequence {
    pub group_order: usize,
    /// `v_1^{g_1}, …, v_1^{g_m}, v_2^{g_1}, …, v_k^{g_m}`, twice.
    pub sequence: Vec<String>,
    /// One merged block per curve: its copies over all group elements.
    pub blocks: Vec<Vec<String>>,
}

/// Builds the equivariant sequence and checks every block is disjoint when
/// the copies live in labelled disjoint copies of the surface.
pub fn equivariant_sequence(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    names: &[&str],
    group: &FiniteGroup,
) -> Result<EquivariantSequence> {
    let group = FiniteGroup::new(group.elements.clone(), group.table.clone())?;
    check_closed_simple(surf, curves, names)?;
    let m = group.order();
    let copies: Vec<&CombSurface> = vec![surf; m];
    let (union, offsets, _) = CombSurface::disjoint_union(&copies);
    let mut blocks = Vec::new();
    for &n in names {
        let c = curves.get(n)?;
        let placed: Vec<Curve> = offsets
            .iter()
            .map(|&o| Curve::closed(&union, c.darts().iter().map(|d| d + o).collect()))
            .collect::<Result<_>>()?;
        for (a, b) in (0..m).tuple_combinations() {
            if imin(&union, &placed[a], &placed[b])? != 0 {
                return Err(Error::BlockNotDisjoint(format!(
                    "{n}: copies {a} and {b} meet"
                )));
            }
        }
        let label = |g: usize| {
            if m == 1 {
                n.to_string()
            } else {
                format!("{n}^{}", group.elements[g])
            }
        };
        blocks.push((0..m).map(label).collect::<Vec<_>>());
    }
    let half: Vec<String> = blocks.concat();
    let sequence = half.iter().chain(&half).cloned().collect();
    Ok(EquivariantSequence {
        group_order: m,
        sequence,
        blocks,
    })
}

/// What a downstairs verdict implies for every stabilisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    ObstructedEverywhere,
    HoldsDownstairsConverseUnknown,
}

/// One detector value on the surface with handles attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorEntry {
    pub i: String,
    pub j: String,
    pub before: usize,
    pub after: usize,
}

/// The surface obtained by attaching a handle along the moved arc and along
/// each probe arc, with the resulting closed-curve values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorSurface {
    pub euler_characteristic: i64,
    pub handles: Vec<String>,
    /// Pairs `(i, (i, j))`.
    pub index_set: Vec<(String, (String, String))>,
    pub entries: Vec<DetectorEntry>,
    /// True iff every entry equals the arc witness value for its pair.
    pub agrees_with_arcs: bool,
}

/// Downstairs intersection against the upstairs Floer dimension for one pair
/// of letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub x: String,
    pub y: String,
    pub imin: usize,
    pub hf: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferVerdict {
    pub word: String,
    pub upstairs_word: String,
    pub height: usize,
    pub downstairs: TrivialityVerdict,
    pub conclusion: Conclusion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detector: Option<DetectorSurface>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<CrossCheck>,
    pub report: Vec<String>,
}

impl TransferVerdict {
    pub fn text(&self) -> String {
        self.report.join("\n") + "\n"
    }
}

/// Algebraic model of the upstairs category, with each curve named in a
/// verdict expressed as a twist word applied to a vertex sphere.
#[derive(Clone, Debug)]
pub struct UpstairsModel {
    pub model: DualModel,
    /// Curves other than the cores: name → (word, vertex).
    pub lifts: BTreeMap<String, (TwistWord, String)>,
}

impl UpstairsModel {
    pub fn new(model: DualModel) -> Self {
        UpstairsModel {
            model,
            lifts: BTreeMap::new(),
        }
    }

    fn object(&self, name: &str) -> Result<crate::fuk::TwComplex> {
        let (w, v) = match self.lifts.get(name) {
            Some((w, v)) => (w.clone(), v.as_str()),
            None => (TwistWord::new(Vec::new()), name),
        };
        twist_word_complex(&self.model.algebra, &w, v)
    }
}

const INTERNAL: &str = "#arc:";

fn detector_surface(
    tower: &StabTower,
    w: &TwistWord,
    wit: &crate::twist::Witness,
) -> Result<DetectorSurface> {
    let mut set = tower.curves.clone();
    let data: BTreeMap<&str, &ArcData> = wit.arcs.iter().map(|(n, a)| (n.as_str(), a)).collect();
    for (n, a) in &wit.arcs {
        set.insert(&format!("{INTERNAL}{n}"), a.to_curve(&tower.surface)?)?;
    }
    let mut handles = vec![wit.arc.clone()];
    handles.extend(
        wit.pairs
            .iter()
            .map(|p| p.j.clone())
            .filter(|j| *j != wit.arc),
    );
    let (mut surf, mut curves) = (tower.surface.clone(), set);
    for h in &handles {
        if !data.contains_key(h.as_str()) {
            return Err(Error::UnknownName(h.clone()));
        }
        let att = attach_handle(&surf, &curves, &format!("{INTERNAL}{h}"))?;
        surf = att.surface;
        curves = att.curves;
    }
    let closed = |n: &str| format!("{INTERNAL}{n}'");
    let a = curves.get(&closed(&wit.arc))?;
    let moved = apply_word(&surf, &curves, w, a)?;
    let entries = wit
        .pairs
        .iter()
        .map(|p| {
            let b = curves.get(&closed(&p.j))?;
            Ok(DetectorEntry {
                i: p.i.clone(),
                j: p.j.clone(),
                before: imin(&surf, a, b)?,
                after: imin(&surf, &moved, b)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let agrees = entries
        .iter()
        .zip(&wit.pairs)
        .all(|(e, p)| e.before == p.before && e.after == p.after);
    Ok(DetectorSurface {
        euler_characteristic: surf.euler_characteristic(),
        handles,
        index_set: wit
            .pairs
            .iter()
            .map(|p| (p.i.clone(), (p.i.clone(), p.j.clone())))
            .collect(),
        entries,
        agrees_with_arcs: agrees,
    })
}

/// Transfers a downstairs verdict on `w` up the tower.
pub fn transfer_verdict(w: &TwistWord, tower: &StabTower) -> Result<TransferVerdict> {
    transfer_verdict_with(w, tower, None)
}

/// As [`transfer_verdict`], also comparing each pair of letters against an
/// algebraic model of the upstairs category.
pub fn transfer_verdict_with(
    w: &TwistWord,
    tower: &StabTower,
    upstairs: Option<&UpstairsModel>,
) -> Result<TransferVerdict> {
    let upstairs_word = tower.lift_word(w)?;
    let downstairs = is_trivial_word(&tower.surface, &tower.curves, w)?;
    let mut report = vec![
        format!("word: {w}"),
        format!("lifted to height {}: {upstairs_word}", tower.height()),
    ];
    let (conclusion, detector) = match &downstairs.witness {
        Some(wit) if !downstairs.trivial => {
            let det = detector_surface(tower, w, wit)?;
            report.push(format!(
                "downstairs: nontrivial; arc {} moves, detected by {} probe(s)",
                wit.arc,
                wit.pairs.len()
            ));
            report.push("[transfer] not the identity in the compactly supported symplectic mapping class group of any stabilisation".into());
            report.push("[categorical transfer] not the identity as an autoequivalence of the Fukaya category of the augmented stabilisation".into());
            report.push(format!(
                "[detector] handle surface χ = {}, index set {:?}",
                det.euler_characteristic,
                det.index_set
                    .iter()
                    .map(|(i, (a, b))| format!("({i},({a},{b}))"))
                    .collect::<Vec<_>>()
            ));
            (Conclusion::ObstructedEverywhere, Some(det))
        }
        _ => {
            report.push("downstairs: identity rel boundary".into());
            report.push("[converse open] the relation need not hold in any stabilisation; no conclusion upstairs".into());
            (Conclusion::HoldsDownstairsConverseUnknown, None)
        }
    };
    let mut cross_checks = Vec::new();
    if let Some(up) = upstairs {
        let names: Vec<&str> = w
            .letters()
            .iter()
            .map(|(n, _)| n.as_str())
            .unique()
            .collect();
        let pairs: Vec<(&str, &str)> = names.iter().copied().tuple_combinations().collect();
        let checks = exec::map(&pairs, |&(x, y)| -> Result<CrossCheck> {
            let (cx, cy) = (tower.curves.get(x)?, tower.curves.get(y)?);
            let hf = hf_dim(&up.model.algebra, &up.object(x)?, &up.object(y)?);
            Ok(CrossCheck {
                x: x.to_string(),
                y: y.to_string(),
                imin: imin(&tower.surface, cx, cy)?,
                hf,
            })
        });
        for c in checks {
            let c = c?;
            if c.imin == 0 && c.hf > 0 {
                report.push(format!(
                    "[upstairs] {} and {} are disjoint downstairs but dim HF = {} upstairs: their twists do not commute there",
                    c.x, c.y, c.hf
                ));
            }
            cross_checks.push(c);
        }
    }
    report.push(format!(
        "conclusion: {}",
        serde_json::to_value(conclusion)
            .expect("enum serializes")
            .as_str()
            .unwrap_or("")
    ));
    Ok(TransferVerdict {
        word: w.to_string(),
        upstairs_word: upstairs_word.to_string(),
        height: tower.height(),
        downstairs,
        conclusion,
        detector,
        cross_checks,
        report,
    })
}

/// Tree path between two faces using only tree edges, as darts.
fn tree_path(surf: &CombSurface, tree: &[bool], from: usize, to: usize) -> Vec<usize> {
    let mut prev: Vec<Option<usize>> = vec![None; surf.face_count()];
    let mut seen = vec![false; surf.face_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(f) = queue.pop_front() {
        for &d in surf.rotation(f) {
            let g = surf.head(d);
            if tree[d / 2] && !seen[g] {
                seen[g] = true;
                prev[g] = Some(d);
                queue.push_back(g);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while let Some(d) = prev[at] {
        path.push(d);
        at = surf.face_of(d);
    }
    path.reverse();
    path
}

/// Adds simple closed curves until the classes of the collection generate
/// the fundamental group. Input curves are kept; additions are named
/// `aug1, aug2, …`.
pub fn augment_for_simple_connectivity(
    surf: &CombSurface,
    curves: &NamedCurveSet,
) -> Result<NamedCurveSet> {
    if surf.boundary_components().is_empty() {
        return Err(Error::NoBoundary);
    }
    if !surf.is_connected() {
        return Err(Error::InvalidSurface("surface is not connected".into()));
    }
    let tree = surf.spanning_forest();
    let mut words = Vec::new();
    for (n, c) in curves.iter() {
        if !c.is_closed() {
            return Err(Error::ExpectedClosed(n.to_string()));
        }
        words.push(homotopy_word(surf, c).letters);
    }
    let letters: Vec<i64> = (0..surf.edge_count())
        .filter(|&e| !tree[e])
        .map(|e| e as i64 + 1)
        .collect();
    let mut out = curves.clone();
    let mut added = 0;
    for &l in &letters {
        if FoldedGraph::generated_by(words.iter().map(Vec::as_slice)).contains(&[l]) {
            continue;
        }
        let d = 2 * (l as usize - 1);
        let mut darts = vec![d];
        darts.extend(tree_path(surf, &tree, surf.head(d), surf.face_of(d)));
        let c = Curve::closed(surf, darts)?;
        if !is_simple(surf, &c) {
            return Err(Error::Invariant("fundamental cycle is not simple".into()));
        }
        words.push(homotopy_word(surf, &c).letters);
        added += 1;
        let mut name = format!("aug{added}");
        while out.contains(&name) {
            name.push('\'');
        }
        out.insert(&name, c)?;
    }
    if !FoldedGraph::generated_by(words.iter().map(Vec::as_slice)).contains_letters(letters) {
        return Err(Error::Invariant(
            "augmented collection does not generate".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{build_plumbing, tests::graph};

    fn a2() -> (CombSurface, NamedCurveSet) {
        build_plumbing(&graph(&["a", "b"], &[(0, 1, 1)])).unwrap()
    }

    #[test]
    fn doubled_sequence() {
        let (s, c) = a2();
        let r = one_stabilise(&s, &c, &["a", "b"], &[1, 2]).unwrap();
        assert_eq!(r.sequence, ["a", "b", "a", "b"]);
        assert_eq!(r.labels, ["V1", "V2"]);
        assert_eq!(r.matching(1), (2, 4));
        let r = one_stabilise(&s, &c, &["a", "b"], &[2, 1]).unwrap();
        assert_eq!(r.sequence, ["b", "a", "b", "a"]);
        assert!(one_stabilise(&s, &c, &["a", "a"], &[1, 2]).is_ok());
        assert!(matches!(
            one_stabilise(&s, &c, &["a", "b"], &[1, 1]),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn tower_levels() {
        let (s, c) = a2();
        let mut t = StabTower::new(s, c, &["a", "b"]).unwrap();
        t.stabilise(&[1, 2]).unwrap();
        let r = t.stabilise(&[2, 1]).unwrap();
        assert_eq!(r.sequence, ["V2", "V1", "V2", "V1"]);
        assert_eq!(t.top_names(), ["V1'", "V2'"]);
        assert_eq!(
            t.lift_word(&TwistWord::parse("a b^-1").unwrap())
                .unwrap()
                .to_string(),
            "V1' V2'^-1"
        );
    }

    #[test]
    fn cycle_sigma() {
        let c3 = graph(&["v1", "v2", "v3"], &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        assert_eq!(cycle_plumbing_sigma(&c3).unwrap(), [1, 2, 3]);
        let c3n = graph(&["v1", "v2", "v3"], &[(0, 1, 1), (1, 2, -1), (2, 0, 1)]);
        assert_eq!(cycle_plumbing_sigma(&c3n).unwrap(), [1, 3, 2]);
        let chain = graph(&["v1", "v2", "v3"], &[(0, 1, 1), (1, 2, 1)]);
        assert!(matches!(
            cycle_plumbing_sigma(&chain),
            Err(Error::NotCycle(_))
        ));
    }

    #[test]
    fn equivariant_blocks() {
        let (s, c) = a2();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let e = equivariant_sequence(&s, &c, &["a"], &z2).unwrap();
        assert_eq!(e.sequence, ["a^0", "a^1", "a^0", "a^1"]);
        assert_eq!(e.blocks, vec![vec!["a^0".to_string(), "a^1".to_string()]]);
        let triv = FiniteGroup::cyclic(1).unwrap();
        let e = equivariant_sequence(&s, &c, &["a", "b"], &triv).unwrap();
        assert_eq!(
            e.sequence,
            one_stabilise(&s, &c, &["a", "b"], &[1, 2])
                .unwrap()
                .sequence
        );
    }

    #[test]
    fn augmentation() {
        let (s, c) = a2();
        assert_eq!(augment_for_simple_connectivity(&s, &c).unwrap().len(), 2);
        let disc = CombSurface::from_rotation(vec![vec![]]).unwrap();
        assert!(
            augment_for_simple_connectivity(&disc, &NamedCurveSet::new())
                .unwrap()
                .is_empty()
        );
        let more = augment_for_simple_connectivity(&s, &NamedCurveSet::new()).unwrap();
        assert_eq!(more.len(), s.homology_rank());
    }
}
