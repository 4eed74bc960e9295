use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use twistlab::arcs::filling_arc_system;
use twistlab::curve::{homotopy_word, imin, self_intersections, Curve, NamedCurveSet};
use twistlab::fuk::{hf_dim, twist_word_complex, DualModel, ZigzagAlgebra};
use twistlab::groups::{
    coincidence_graph, hamidi_tehrani_certificate, raag_presentation, wreath_presentation,
    FiniteGroup, Presentation,
};
use twistlab::plumbing::{build_plumbing, PlumbingGraph};
use twistlab::stab::{
    equivariant_sequence, one_stabilise, transfer_verdict_with, StabTower, UpstairsModel,
};
use twistlab::surface::CombSurface;
use twistlab::twist::{apply_word, is_trivial_word, verify_witness, TwistWord};
use twistlab::{Error, Result};

use crate::report::{Computed, Session};
use crate::{Command, GraphArg, GroupArg};

fn computed(json: Value, text: impl Into<String>, tags: &[&str]) -> Result<Computed> {
    Ok(Computed {
        json,
        text: text.into(),
        tags: tags.iter().map(|s| s.to_string()).collect(),
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

/// `"w : target"` or a bare target name.
fn parse_expr(expr: &str) -> Result<(TwistWord, String)> {
    match expr.split_once(':') {
        Some((w, t)) => {
            let t = t.trim();
            if t.is_empty() || t.contains(char::is_whitespace) {
                return Err(Error::Parse(format!(
                    "expected one target name after `:` in `{expr}`"
                )));
            }
            Ok((TwistWord::parse(w)?, t.to_string()))
        }
        None => {
            let t = expr.trim();
            if t.is_empty() || t.contains(char::is_whitespace) {
                return Err(Error::Parse(format!(
                    "expected `word : target` or a name, got `{expr}`"
                )));
            }
            Ok((TwistWord::new(Vec::new()), t.to_string()))
        }
    }
}

struct World {
    graph: PlumbingGraph,
    surface: CombSurface,
    curves: NamedCurveSet,
    arcs: Option<NamedCurveSet>,
    defined: BTreeMap<String, (TwistWord, String)>,
}

impl World {
    fn curve(&self, name: &str) -> Result<Curve> {
        if let Ok(c) = self.curves.get(name) {
            return Ok(c.clone());
        }
        match &self.arcs {
            Some(a) if a.contains(name) => Ok(a.get(name)?.clone()),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    fn eval(&self, expr: &str) -> Result<Curve> {
        let (w, t) = parse_expr(expr)?;
        apply_word(&self.surface, &self.curves, &w, &self.curve(&t)?)
    }
}

fn load_graph(sess: &Session, path: &Path) -> Result<PlumbingGraph> {
    sess.stage("load");
    let text = sess.read(path)?;
    PlumbingGraph::from_json_str(&text)
}

fn world(sess: &Session, g: &GraphArg) -> Result<World> {
    let graph = load_graph(sess, &g.graph)?;
    sess.stage("build");
    let (surface, curves) = build_plumbing(&graph)?;
    let arcs = filling_arc_system(&surface).ok();
    let mut w = World {
        graph,
        surface,
        curves,
        arcs,
        defined: BTreeMap::new(),
    };
    for d in &g.defines {
        let (name, expr) = d
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--define expects NAME=EXPR, got `{d}`")))?;
        let name = name.trim();
        let c = w.eval(expr)?;
        w.curves.insert(name, c)?;
        w.defined.insert(name.to_string(), parse_expr(expr)?);
    }
    sess.stage("compute");
    Ok(w)
}

fn names_or_cores(list: &Option<String>, w: &World) -> Vec<String> {
    match list {
        Some(s) => s.split_whitespace().map(String::from).collect(),
        None => w.graph.vertices().to_vec(),
    }
}

fn group(sess: &Session, g: &GroupArg) -> Result<FiniteGroup> {
    match (&g.group, g.cyclic) {
        (Some(p), None) => {
            let text = sess.read(p)?;
            let raw: FiniteGroup =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            FiniteGroup::new(raw.elements, raw.table)
        }
        (None, Some(n)) => FiniteGroup::cyclic(n),
        _ => Err(Error::Parse(
            "give exactly one of --group and --cyclic".into(),
        )),
    }
}

fn vertex_arg(g: &PlumbingGraph, s: &str) -> Result<String> {
    if let Ok(k) = s.parse::<usize>() {
        if k >= 1 && k <= g.vertices().len() {
            return Ok(g.vertices()[k - 1].clone());
        }
        if g.vertex_index(s).is_none() {
            return Err(Error::UnknownName(format!(
                "{k} (graph has {} vertices)",
                g.vertices().len()
            )));
        }
    }
    g.vertex_index(s)
        .map(|_| s.to_string())
        .ok_or_else(|| Error::UnknownName(s.to_string()))
}

fn curve_json(surf: &CombSurface, c: &Curve) -> Value {
    json!({
        "kind": c.kind(),
        "darts": c.darts(),
        "ends": c.ends(),
        "homotopy_word": homotopy_word(surf, c).letters,
        "self_intersections": self_intersections(surf, c),
    })
}

pub fn dispatch(sess: &Session, cmd: &Command) -> Result<Computed> {
    match cmd {
        Command::Plumb { g } => {
            let w = world(sess, g)?;
            let s = &w.surface;
            let names = w.graph.vertices();
            let mut matrix = vec![vec![0usize; names.len()]; names.len()];
            for (i, a) in names.iter().enumerate() {
                for (j, b) in names.iter().enumerate() {
                    matrix[i][j] = imin(s, w.curves.get(a)?, w.curves.get(b)?)?;
                }
            }
            let cores: BTreeMap<&str, &[usize]> = names
                .iter()
                .map(|n| (n.as_str(), w.curves.get(n).unwrap().darts()))
                .collect();
            let text = format!(
                "faces {} edges {} χ {} boundary components {} rank {}\n",
                s.face_count(),
                s.edge_count(),
                s.euler_characteristic(),
                s.boundary_components().len(),
                s.homology_rank()
            );
            computed(
                json!({
                    "faces": s.to_faces(),
                    "euler_characteristic": s.euler_characteristic(),
                    "boundary_components": s.boundary_components().len(),
                    "homology_rank": s.homology_rank(),
                    "vertices": names,
                    "cores": cores,
                    "intersection_matrix": matrix,
                }),
                text,
                &[],
            )
        }
        Command::Imin { g, a, b } => {
            let w = world(sess, g)?;
            let n = imin(&w.surface, &w.eval(a)?, &w.eval(b)?)?;
            computed(
                json!(n),
                n.to_string(),
                &["HF in two dimensions is the minimal intersection number"],
            )
        }
        Command::Apply { g, word, curve } => {
            let w = world(sess, g)?;
            let c = apply_word(
                &w.surface,
                &w.curves,
                &TwistWord::parse(word)?,
                &w.curve(curve)?,
            )?;
            let j = curve_json(&w.surface, &c);
            let text = format!("{}\n", j["darts"]);
            computed(j, text, &[])
        }
        Command::CheckRelation { g, word } => {
            let w = world(sess, g)?;
            let tw = TwistWord::parse(word)?;
            let v = is_trivial_word(&w.surface, &w.curves, &tw)?;
            let verified = match &v.witness {
                Some(wit) => Some(verify_witness(&w.surface, &w.curves, &tw, wit)?),
                None => None,
            };
            if verified == Some(false) {
                return Err(Error::Invariant("witness failed to re-verify".into()));
            }
            let mut j = to_value(&v);
            j["witness_verified"] = json!(verified);
            let text = if v.trivial { "trivial" } else { "nontrivial" };
            computed(j, text, &["Alexander method on a filling arc system"])
        }
        Command::Transfer { g, word, height } => {
            let w = world(sess, g)?;
            let names: Vec<&str> = w.curves.names().collect();
            let mut tower = StabTower::new(w.surface.clone(), w.curves.clone(), &names)?;
            for _ in 0..*height {
                tower.stabilise(&(1..=names.len()).collect::<Vec<_>>())?;
            }
            let up = if w.graph.is_tree() {
                let mut m = UpstairsModel::new(DualModel::new(&w.graph)?);
                m.lifts = w
                    .defined
                    .iter()
                    .filter(|(_, (_, t))| w.graph.vertex_index(t).is_some())
                    .map(|(n, l)| (n.clone(), l.clone()))
                    .collect();
                let all_liftable = w.defined.len() == m.lifts.len();
                all_liftable.then_some(m)
            } else {
                None
            };
            let v = transfer_verdict_with(&TwistWord::parse(word)?, &tower, up.as_ref())?;
            let text = v.text();
            computed(
                to_value(&v),
                text,
                &[
                    "stabilisation transfer",
                    "categorical transfer",
                    "converse open",
                ],
            )
        }
        Command::Hf { graph, x, y } => {
            let g = load_graph(sess, graph)?;
            sess.stage("build");
            let alg = ZigzagAlgebra::from_tree(&g)?;
            sess.stage("compute");
            let (wx, tx) = parse_expr(x)?;
            let (wy, ty) = parse_expr(y)?;
            let cx = twist_word_complex(&alg, &wx, &tx)?;
            let cy = twist_word_complex(&alg, &wy, &ty)?;
            let d = hf_dim(&alg, &cx, &cy);
            computed(
                json!({"hf": d, "X": cx.to_json(&alg), "Y": cy.to_json(&alg)}),
                d.to_string(),
                &[],
            )
        }
        Command::SsCompare {
            graph,
            word,
            i,
            j,
            samples,
        } => {
            let g = load_graph(sess, graph)?;
            sess.stage("build");
            let m = DualModel::new(&g)?;
            sess.stage("compute");
            match word {
                Some(word) => {
                    let (i, j) = (
                        vertex_arg(
                            &g,
                            i.as_deref().ok_or_else(|| {
                                Error::Parse("--i is required with --word".into())
                            })?,
                        )?,
                        vertex_arg(
                            &g,
                            j.as_deref().ok_or_else(|| {
                                Error::Parse("--j is required with --word".into())
                            })?,
                        )?,
                    );
                    let c = m.compare(&TwistWord::parse(word)?, &i, &j)?;
                    let text = format!(
                        "up {} down {} up>=down {} parity {} low-values {}",
                        c.up, c.down, c.up_ge_down, c.same_parity, c.low_values_agree
                    );
                    computed(
                        to_value(&c),
                        text,
                        &[
                            "Seidel–Smith inequality",
                            "parity",
                            "values zero or one agree",
                        ],
                    )
                }
                None => {
                    let seed: u64 = std::env::var("TWISTLAB_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                        .unwrap_or(0);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let names = g.vertices();
                    let fixed_i = i.as_deref().map(|s| vertex_arg(&g, s)).transpose()?;
                    let fixed_j = j.as_deref().map(|s| vertex_arg(&g, s)).transpose()?;
                    let mut jobs = Vec::new();
                    for _ in 0..*samples {
                        let len = rng.gen_range(1..=6);
                        let letters = (0..len)
                            .map(|_| {
                                (
                                    names[rng.gen_range(0..names.len())].clone(),
                                    rng.gen_range(1..=3i64)
                                        * if rng.gen_bool(0.5) { 1 } else { -1 },
                                )
                            })
                            .collect();
                        let a = fixed_i
                            .clone()
                            .unwrap_or_else(|| names[rng.gen_range(0..names.len())].clone());
                        let b = fixed_j
                            .clone()
                            .unwrap_or_else(|| names[rng.gen_range(0..names.len())].clone());
                        jobs.push((TwistWord::new(letters), a, b));
                    }
                    let results = twistlab::exec::map(&jobs, |(w, a, b)| m.compare(w, a, b));
                    let mut violations = Vec::new();
                    for ((w, a, b), r) in jobs.iter().zip(results) {
                        let c = r?;
                        if !c.all_hold() {
                            violations.push(
                                json!({"word": w.to_string(), "i": a, "j": b, "comparison": c}),
                            );
                        }
                    }
                    let text = format!(
                        "{} samples, {} violations (seed {seed})",
                        jobs.len(),
                        violations.len()
                    );
                    computed(
                        json!({"seed": seed, "samples": jobs.len(), "violations": violations}),
                        text,
                        &["Seidel–Smith inequality"],
                    )
                }
            }
        }
        Command::Coincidence { g } => {
            let w = world(sess, g)?;
            let cg = coincidence_graph(&w.surface, &w.curves)?;
            let text = cg
                .edges
                .iter()
                .map(|&(i, j)| format!("{} -- {}\n", cg.vertices[i], cg.vertices[j]))
                .collect::<String>();
            computed(to_value(&cg), text, &[])
        }
        Command::FreeCert { g, subset } => {
            let w = world(sess, g)?;
            let names = names_or_cores(subset, &w);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let cert = hamidi_tehrani_certificate(&w.surface, &w.curves, &refs)?;
            let text = cert.statement.clone();
            computed(
                to_value(&cert),
                text,
                &["free-group intersection criterion"],
            )
        }
        Command::Raag { g, n } => {
            let w = world(sess, g)?;
            let cg = coincidence_graph(&w.surface, &w.curves)?;
            let p = raag_presentation(&cg, *n)?;
            computed(
                to_value(&p),
                p.to_string(),
                &["right-angled Artin subgroup for large powers"],
            )
        }
        Command::Wreath {
            presentation,
            free,
            group: ga,
        } => {
            let gamma = match (presentation, free) {
                (Some(p), None) => Presentation::parse(&sess.read(p)?)?,
                (None, Some(f)) => {
                    Presentation::free(f.split_whitespace().map(String::from).collect())?
                }
                _ => {
                    return Err(Error::Parse(
                        "give exactly one of --presentation and --free".into(),
                    ))
                }
            };
            let gr = group(sess, ga)?;
            sess.stage("compute");
            let p = wreath_presentation(&gamma, &gr)?;
            computed(
                to_value(&p),
                p.to_string(),
                &["wreath product by left translation"],
            )
        }
        Command::Stab { g, sigma, curves } => {
            let w = world(sess, g)?;
            let names = names_or_cores(curves, &w);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let sigma: Vec<usize> = match sigma {
                Some(s) => s
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad permutation entry `{t}`")))
                    })
                    .collect::<Result<_>>()?,
                None => (1..=names.len()).collect(),
            };
            let r = one_stabilise(&w.surface, &w.curves, &refs, &sigma)?;
            let text = format!(
                "sequence: {}\nlabels: {}\n",
                r.sequence.join(" "),
                r.labels.join(" ")
            );
            computed(to_value(&r), text, &[])
        }
        Command::Equivariant {
            g,
            group: ga,
            curves,
        } => {
            let w = world(sess, g)?;
            let names = names_or_cores(curves, &w);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let gr = group(sess, ga)?;
            sess.stage("compute");
            let e = equivariant_sequence(&w.surface, &w.curves, &refs, &gr)?;
            let text = format!(
                "sequence: {}\nblocks: {}\n",
                e.sequence.join(" "),
                e.blocks.len()
            );
            computed(to_value(&e), text, &[])
        }
    }
}
