//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Set `TWISTLAB_BLESS=1` to rewrite the golden files instead of comparing.

mod common;

use std::time::{Duration, Instant};

use common::{fixture, load, random_graph, random_word, w};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistlab::curve::{imin, is_isotopic};
use twistlab::diagram::CurveDiagram;
use twistlab::fuk::{hf_dim, twist_word_complex, DualModel, TwComplex, ZigzagAlgebra};
use twistlab::groups::{
    coincidence_graph, hamidi_tehrani_certificate, raag_presentation, CoincidenceGraph, FiniteGroup,
};
use twistlab::plumbing::{build_plumbing, PlumbEdge, PlumbingGraph};
use twistlab::stab::{cycle_plumbing_sigma, equivariant_sequence, one_stabilise};
use twistlab::twist::{apply_word, is_trivial_word, verify_witness, TwistWord};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn c1_labruere_algebra() -> Check {
    let t = Instant::now();
    let g = fixture("star4");
    let alg = ZigzagAlgebra::from_tree(&g).map_err(|e| e.to_string())?;
    let x = twist_word_complex(&alg, &w("A C"), "D").map_err(|e| e.to_string())?;
    let y = twist_word_complex(&alg, &w("B C"), "E").map_err(|e| e.to_string())?;
    let d = hf_dim(&alg, &x, &y);
    ensure(d == 2, format!("dim HF = {d}, expected 2"))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("dim HF = {d}"))
}

fn c2_labruere_surface() -> Check {
    let t = Instant::now();
    let (_, s, mut c) = load("star4");
    let x = apply_word(&s, &c, &w("A C"), c.get("D").unwrap()).unwrap();
    let y = apply_word(&s, &c, &w("B C"), c.get("E").unwrap()).unwrap();
    let i = imin(&s, &x, &y).unwrap();
    ensure(i == 0, format!("imin = {i}"))?;
    c.insert("c1", x).unwrap();
    c.insert("c2", y).unwrap();
    let v = is_trivial_word(&s, &c, &w("c1 c2 c1^-1 c2^-1")).unwrap();
    ensure(v.trivial, "commutator not trivial")?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok("imin = 0, commutator trivial".into())
}

fn chain(n: usize) -> PlumbingGraph {
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = (1..n)
        .map(|i| PlumbEdge {
            ends: [i - 1, i],
            orient: 1,
        })
        .collect();
    PlumbingGraph::new(names, edges, None).unwrap()
}

fn c3_hom_table() -> Check {
    let t = Instant::now();
    let mut graphs: Vec<(String, PlumbingGraph)> =
        (2..=6).map(|n| (format!("A{n}"), chain(n))).collect();
    graphs.push(("star4".into(), fixture("star4")));
    graphs.push(("e6".into(), fixture("e6")));
    let mut cells = 0;
    for (name, g) in &graphs {
        let alg = ZigzagAlgebra::from_tree(g).unwrap();
        let n = g.vertices().len();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 2 } else { g.multiplicity(i, j) };
                let got = hf_dim(&alg, &TwComplex::vertex(i), &TwComplex::vertex(j));
                ensure(
                    got == want,
                    format!("{name}: hf(P_{i}, P_{j}) = {got}, expected {want}"),
                )?;
                cells += 1;
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{cells} entries"))
}

fn c4_seidel_smith() -> Check {
    let t = Instant::now();
    let mut total = 0;
    for (fx, seed) in [("a3", 11u64), ("star4", 12)] {
        let g = fixture(fx);
        let m = DualModel::new(&g).unwrap();
        let names = g.vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..300 {
            let len = rng.gen_range(1..=6);
            let word = random_word(&mut rng, names, len, 3);
            let i = &names[rng.gen_range(0..names.len())];
            let j = &names[rng.gen_range(0..names.len())];
            let c = m.compare(&word, i, j).map_err(|e| e.to_string())?;
            ensure(
                c.all_hold(),
                format!("{fx}: {word} on ({i},{j}): up {} down {}", c.up, c.down),
            )?;
            total += 1;
        }
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{total} samples, 0 violations"))
}

fn c5_relations() -> Check {
    let t = Instant::now();
    let (_, s, c) = load("a2");
    ensure(
        is_trivial_word(&s, &c, &w("a b a b^-1 a^-1 b^-1"))
            .unwrap()
            .trivial,
        "braid relator on imin 1 not trivial",
    )?;
    let comm = w("a b a^-1 b^-1");
    let v = is_trivial_word(&s, &c, &comm).unwrap();
    ensure(!v.trivial, "commutator on imin 1 trivial")?;
    let wit = v.witness.ok_or("no witness")?;
    ensure(
        wit.pairs
            .iter()
            .all(|p| p.before <= 1 && p.before != p.after),
        "witness values not 0/1 detector form",
    )?;
    ensure(
        verify_witness(&s, &c, &comm, &wit).unwrap(),
        "witness does not re-verify",
    )?;
    let (_, s3, c3) = load("a3");
    ensure(
        is_trivial_word(&s3, &c3, &w("v1 v3 v1^-1 v3^-1"))
            .unwrap()
            .trivial,
        "commutator on imin 0 not trivial",
    )?;
    let (_, s6, c6) = load("multi6-pair");
    ensure(
        !is_trivial_word(&s6, &c6, &w("a b a b^-1 a^-1 b^-1"))
            .unwrap()
            .trivial,
        "braid relator on imin 6 trivial",
    )?;
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok("4 relation checks".into())
}

fn c6_transvection() -> Check {
    for (fx, unit) in [("a2", 1), ("multi6-pair", 36)] {
        let (_, s, c) = load(fx);
        let b = c.get("b").unwrap();
        for n in 1..=3i64 {
            let tb = apply_word(&s, &c, &TwistWord::new(vec![("a".into(), n)]), b).unwrap();
            let got = imin(&s, &tb, b).unwrap();
            ensure(got == unit * n as usize, format!("{fx} n={n}: {got}"))?;
        }
    }
    Ok("A2: 1,2,3; multi6-pair: 36,72,108".into())
}

fn c7_free_certificate() -> Check {
    let (_, s, c) = load("multi6-triangle");
    ensure(
        hamidi_tehrani_certificate(&s, &c, &["v1", "v2", "v3"])
            .unwrap()
            .holds,
        "multi6-triangle not certified",
    )?;
    let (_, s, c) = load("a3");
    let cert = hamidi_tehrani_certificate(&s, &c, &["v1", "v2", "v3"]).unwrap();
    ensure(
        !cert.holds && cert.witness == Some((1, 3, 2)),
        format!("A3 gave {:?}", cert.witness),
    )?;
    Ok("multi6-triangle free; A3 witness (1,3,2)".into())
}

fn golden(name: &str, actual: &str) -> Result<(), String> {
    let path = format!(
        "{}/../../fixtures/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    );
    if std::env::var_os("TWISTLAB_BLESS").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    ensure(want == actual, format!("{name} differs from golden file"))
}

fn c8_goldens() -> Check {
    let (_, s, c) = load("star4");
    let g = coincidence_graph(&s, &c).unwrap();
    ensure(g.edges.len() == 6, format!("{} edges", g.edges.len()))?;
    golden(
        "star4_coincidence.json",
        &(serde_json::to_string_pretty(&g).unwrap() + "\n"),
    )?;
    let p = raag_presentation(&g, 1).unwrap();
    ensure(
        p.gens.len() == 5 && p.rels.len() == 6,
        "star4 presentation counts",
    )?;
    golden("star4_raag.txt", &p.to_string())?;
    let vertices: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let edgeless = CoincidenceGraph {
        vertices: vertices.clone(),
        edges: vec![],
    };
    golden(
        "edgeless4_raag.txt",
        &raag_presentation(&edgeless, 1).unwrap().to_string(),
    )?;
    let complete = CoincidenceGraph {
        vertices,
        edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    };
    golden(
        "complete4_raag.txt",
        &raag_presentation(&complete, 1).unwrap().to_string(),
    )?;
    Ok("4 golden files match".into())
}

fn c9_structural() -> Check {
    let t = Instant::now();
    for seed in 0..25u64 {
        let g = random_graph(seed, 8);
        let (s, _) = build_plumbing(&g).unwrap();
        ensure(
            s.euler_characteristic() == -(g.edges().len() as i64),
            format!("χ wrong for random graph {seed}"),
        )?;
    }
    let (_, s, c) = load("a3");
    let comps = vec![c.get("v1").unwrap().clone(), c.get("v3").unwrap().clone()];
    let tight = CurveDiagram::realize(&s, &comps).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut wiggled = tight.clone();
    for _ in 0..10 {
        wiggled.add_random_bigon(&s, &mut rng);
    }
    ensure(
        wiggled.crossing_count() > tight.crossing_count(),
        "no bigons were inserted",
    )?;
    for _ in 0..100 {
        let r = wiggled.tighten_random(&mut rng);
        ensure(
            r.edge_counts() == tight.edge_counts() && r.is_tight(),
            "tightening order changed the result",
        )?;
        let back = r.curves();
        ensure(back.len() == comps.len(), "component count changed")?;
        for x in &back {
            ensure(
                comps.iter().any(|y| is_isotopic(&s, x, y).unwrap()),
                "tightened component not isotopic to an original",
            )?;
        }
    }
    let (g, s, c) = load("star4");
    let pairs = [("A", "C"), ("A", "B"), ("C", "D")];
    for _ in 0..100 {
        let phi = random_word(&mut rng, g.vertices(), 4, 2);
        for (x, y) in pairs {
            let (cx, cy) = (c.get(x).unwrap(), c.get(y).unwrap());
            let (px, py) = (
                apply_word(&s, &c, &phi, cx).unwrap(),
                apply_word(&s, &c, &phi, cy).unwrap(),
            );
            ensure(
                imin(&s, &px, &py).unwrap() == imin(&s, cx, cy).unwrap(),
                format!("imin not invariant under {phi}"),
            )?;
        }
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok("25 graphs, 100 orders, 100 words".into())
}

fn c10_stabilisation() -> Check {
    let (_, s, c) = load("a2");
    let r = one_stabilise(&s, &c, &["a", "b"], &[1, 2]).unwrap();
    ensure(
        r.sequence == ["a", "b", "a", "b"] && r.labels == ["V1", "V2"],
        "A2 identity record",
    )?;
    let r = one_stabilise(&s, &c, &["a", "b"], &[2, 1]).unwrap();
    ensure(r.sequence == ["b", "a", "b", "a"], "A2 swapped record")?;
    ensure(
        cycle_plumbing_sigma(&fixture("c3")).unwrap() == [1, 2, 3],
        "C3 positive",
    )?;
    ensure(
        cycle_plumbing_sigma(&fixture("c4")).unwrap() == [1, 2, 3, 4],
        "C4 with two negative edges",
    )?;
    let c3n = fixture("c3").flip_vertex_flags(0);
    ensure(cycle_plumbing_sigma(&c3n).is_ok(), "flipped C3")?;
    let mut one_neg = PlumbingGraph::from_json(&{
        let mut j = fixture("c3").to_json();
        j.edges[1].orient = -1;
        j
    })
    .unwrap();
    ensure(
        cycle_plumbing_sigma(&one_neg).unwrap() == [1, 3, 2],
        "C3 with one negative edge",
    )?;
    one_neg = one_neg.flip_vertex_flags(2);
    ensure(
        cycle_plumbing_sigma(&one_neg).unwrap() == [1, 3, 2],
        "flip invariance",
    )?;
    let z2 = equivariant_sequence(&s, &c, &["a"], &FiniteGroup::cyclic(2).unwrap()).unwrap();
    ensure(
        z2.sequence.len() == 4 && z2.blocks.len() == 1 && z2.blocks[0].len() == 2,
        "Z/2 blocks",
    )?;
    let z3 = equivariant_sequence(&s, &c, &["a", "b"], &FiniteGroup::cyclic(3).unwrap()).unwrap();
    ensure(
        z3.sequence.len() == 12 && z3.blocks.len() == 2 && z3.blocks.iter().all(|b| b.len() == 3),
        "Z/3 blocks",
    )?;
    Ok("records, C3/C4 sigma, Z/2 and Z/3 blocks".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Labruère algebraic value", c1_labruere_algebra),
        ("Labruère surface side", c2_labruere_surface),
        ("zigzag hom table", c3_hom_table),
        ("Seidel–Smith property suite", c4_seidel_smith),
        ("relation suite", c5_relations),
        ("transvection law", c6_transvection),
        ("Hamidi-Tehrani certificate", c7_free_certificate),
        ("coincidence/RAAG golden files", c8_goldens),
        ("structural properties", c9_structural),
        ("stabilisation bookkeeping", c10_stabilisation),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({el:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({el:.2?})", k + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
