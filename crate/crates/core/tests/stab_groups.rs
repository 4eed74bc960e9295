//! Stabilisation bookkeeping and group outputs on the shipped fixtures.

use std::collections::BTreeMap;

use twistlab::curve::NamedCurveSet;
use twistlab::fuk::DualModel;
use twistlab::groups::{
    coincidence_graph, hamidi_tehrani_certificate, irredundancy_check, raag_presentation,
};
use twistlab::plumbing::{build_plumbing, PlumbingGraph};
use twistlab::stab::{
    augment_for_simple_connectivity, cycle_plumbing_sigma, transfer_verdict, transfer_verdict_with,
    Conclusion, StabTower, UpstairsModel,
};
use twistlab::surface::CombSurface;
use twistlab::twist::{apply_word, TwistWord};

fn graph(name: &str) -> PlumbingGraph {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    PlumbingGraph::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> (CombSurface, NamedCurveSet) {
    build_plumbing(&graph(name)).unwrap()
}

fn w(s: &str) -> TwistWord {
    TwistWord::parse(s).unwrap()
}

fn tower(name: &str, levels: usize) -> StabTower {
    let g = graph(name);
    let (s, c) = build_plumbing(&g).unwrap();
    let names: Vec<&str> = g.vertices().iter().map(String::as_str).collect();
    let mut t = StabTower::new(s, c, &names).unwrap();
    for _ in 0..levels {
        t.stabilise(&(1..=names.len()).collect::<Vec<_>>()).unwrap();
    }
    t
}

#[test]
fn commutator_on_a2_is_obstructed_with_detector() {
    let t = tower("a2", 1);
    let v = transfer_verdict(&w("a b a^-1 b^-1"), &t).unwrap();
    assert_eq!(v.conclusion, Conclusion::ObstructedEverywhere);
    let det = v.detector.unwrap();
    assert!(det.agrees_with_arcs);
    assert!(!det.entries.is_empty());
    assert!(det
        .entries
        .iter()
        .all(|e| e.before <= 1 && e.before != e.after));
    assert_eq!(v.upstairs_word, "V1 V2 V1^-1 V2^-1");
}

#[test]
fn braid_relator_holds_downstairs() {
    let t = tower("a2", 2);
    let v = transfer_verdict(&w("a b a b^-1 a^-1 b^-1"), &t).unwrap();
    assert_eq!(v.conclusion, Conclusion::HoldsDownstairsConverseUnknown);
    assert!(v.detector.is_none());
}

#[test]
fn labruere_commutator_reports_upstairs_failure() {
    let g = graph("star4");
    let (s, mut c) = build_plumbing(&g).unwrap();
    let c1 = apply_word(&s, &c, &w("A C"), c.get("D").unwrap()).unwrap();
    let c2 = apply_word(&s, &c, &w("B C"), c.get("E").unwrap()).unwrap();
    c.insert("c1", c1).unwrap();
    c.insert("c2", c2).unwrap();
    let t = StabTower::new(s, c, &["A", "B", "C", "D", "E", "c1", "c2"]).unwrap();
    let mut up = UpstairsModel::new(DualModel::new(&g).unwrap());
    up.lifts = BTreeMap::from([
        ("c1".to_string(), (w("A C"), "D".to_string())),
        ("c2".to_string(), (w("B C"), "E".to_string())),
    ]);
    let v = transfer_verdict_with(&w("c1 c2 c1^-1 c2^-1"), &t, Some(&up)).unwrap();
    assert_eq!(v.conclusion, Conclusion::HoldsDownstairsConverseUnknown);
    assert_eq!(v.cross_checks.len(), 1);
    assert_eq!((v.cross_checks[0].imin, v.cross_checks[0].hf), (0, 2));
    assert!(v.text().contains("dim HF = 2"));
}

#[test]
fn nontrivial_words_stay_obstructed_at_every_height() {
    for h in 0..3 {
        let t = tower("a3", h);
        for word in ["v1 v2", "v1 v3 v1^-1 v2", "v2^2 v1^-1"] {
            assert_eq!(
                transfer_verdict(&w(word), &t).unwrap().conclusion,
                Conclusion::ObstructedEverywhere
            );
        }
    }
}

#[test]
fn cycle_fixtures_sigma() {
    assert_eq!(cycle_plumbing_sigma(&graph("c3")).unwrap(), [1, 2, 3]);
    assert_eq!(cycle_plumbing_sigma(&graph("c4")).unwrap(), [1, 2, 3, 4]);
    let g = graph("c3");
    for v in 0..3 {
        assert_eq!(
            cycle_plumbing_sigma(&g.flip_vertex_flags(v)).unwrap(),
            [1, 2, 3]
        );
    }
}

#[test]
fn star_augmentation_generates() {
    let (s, c) = load("star4");
    let out = augment_for_simple_connectivity(&s, &c).unwrap();
    let added = out.len() - c.len();
    assert!(added <= 4, "{added}");
    assert_eq!(s.homology_rank(), 5);
}

#[test]
fn coincidence_graphs() {
    let (s, c) = load("star4");
    let g = coincidence_graph(&s, &c).unwrap();
    let centre = g.vertices.iter().position(|v| v == "C").unwrap();
    assert_eq!(g.edges.len(), 6);
    assert!(g.edges.iter().all(|&(i, j)| i != centre && j != centre));
    let p = raag_presentation(&g, 1).unwrap();
    assert_eq!((p.gens.len(), p.rels.len()), (5, 6));
    let (s, c) = load("multi6-triangle");
    assert!(coincidence_graph(&s, &c).unwrap().edges.is_empty());
    assert!(
        hamidi_tehrani_certificate(&s, &c, &["v1", "v2", "v3"])
            .unwrap()
            .holds
    );
}

#[test]
fn irredundancy() {
    let (s, c) = load("a2");
    assert!(irredundancy_check(&s, &c).unwrap().holds);
    let mut dup = c.clone();
    dup.insert("a2", c.get("a").unwrap().clone()).unwrap();
    let mut only = NamedCurveSet::new();
    only.insert("a", c.get("a").unwrap().clone()).unwrap();
    only.insert("a copy", c.get("a").unwrap().clone()).unwrap();
    assert_eq!(irredundancy_check(&s, &only).unwrap().witness, Some((1, 2)));
    let mut moved = only.clone();
    moved.remove("a copy");
    moved
        .insert(
            "tb a",
            apply_word(&s, &c, &w("b"), c.get("a").unwrap()).unwrap(),
        )
        .unwrap();
    assert!(irredundancy_check(&s, &moved).unwrap().holds);
    assert!(!irredundancy_check(&s, &dup).unwrap().holds);
}
