//! On a once-punctured torus, simple closed curves are classified by primitive
//! homology classes and their minimal intersection number is the absolute
//! determinant of those classes. Twists act on homology by transvections.

use proptest::prelude::*;
use twistlab::curve::{imin, is_simple, Curve};
use twistlab::plumbing::{build_plumbing, PlumbEdge, PlumbingGraph};
use twistlab::surface::CombSurface;
use twistlab::twist::{apply_word, TwistWord};

fn a2() -> (CombSurface, twistlab::curve::NamedCurveSet) {
    let g = PlumbingGraph::new(
        vec!["a".into(), "b".into()],
        vec![PlumbEdge {
            ends: [0, 1],
            orient: 1,
        }],
        None,
    )
    .unwrap();
    build_plumbing(&g).unwrap()
}

/// Signed dart counts per edge, restricted to the two edges of the spine.
fn homology(s: &CombSurface, c: &Curve) -> [i64; 2] {
    assert_eq!(s.edge_count(), 2);
    let mut h = [0i64; 2];
    for &d in c.darts() {
        h[d / 2] += if d % 2 == 0 { 1 } else { -1 };
    }
    h
}

fn det(x: [i64; 2], y: [i64; 2]) -> i64 {
    x[0] * y[1] - x[1] * y[0]
}

fn word() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..8).prop_map(|v| {
        TwistWord::new(
            v.into_iter()
                .map(|(x, m)| (if x { "a" } else { "b" }.to_string(), m))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn imin_is_homological_determinant(u in word(), v in word()) {
        let (s, c) = a2();
        let x = apply_word(&s, &c, &u, c.get("a").unwrap()).unwrap();
        let y = apply_word(&s, &c, &v, c.get("b").unwrap()).unwrap();
        prop_assert!(is_simple(&s, &x));
        prop_assert!(is_simple(&s, &y));
        let d = det(homology(&s, &x), homology(&s, &y)).unsigned_abs() as usize;
        prop_assert_eq!(imin(&s, &x, &y).unwrap(), d);
    }

    #[test]
    fn twists_act_by_transvections(u in word(), n in -3i64..=3) {
        let (s, c) = a2();
        let x = apply_word(&s, &c, &u, c.get("b").unwrap()).unwrap();
        let a = c.get("a").unwrap();
        let ha = homology(&s, a);
        let hx = homology(&s, &x);
        let tw = apply_word(&s, &c, &TwistWord::new(vec![("a".into(), n)]), &x).unwrap();
        let ht = homology(&s, &tw);
        let k = det(ha, hx);
        let plus = [hx[0] + n * k * ha[0], hx[1] + n * k * ha[1]];
        let minus = [hx[0] - n * k * ha[0], hx[1] - n * k * ha[1]];
        let neg = |h: [i64; 2]| [-h[0], -h[1]];
        prop_assert!(ht == plus || ht == neg(plus) || ht == minus || ht == neg(minus));
    }
}

#[test]
fn twist_direction_is_consistent() {
    // the sign of the transvection does not depend on the curve being twisted
    let (s, c) = a2();
    let a = c.get("a").unwrap();
    let ha = homology(&s, a);
    let mut signs = std::collections::BTreeSet::new();
    for w in ["b", "a b", "b^2 a^-1", "a^2 b^-3", "b a b"] {
        let x = apply_word(&s, &c, &TwistWord::parse(w).unwrap(), c.get("b").unwrap()).unwrap();
        let tw = apply_word(&s, &c, &TwistWord::parse("a").unwrap(), &x).unwrap();
        let (hx, ht) = (homology(&s, &x), homology(&s, &tw));
        let k = det(ha, hx);
        let sign = if ht == [hx[0] + k * ha[0], hx[1] + k * ha[1]] {
            1
        } else {
            -1
        };
        assert!(sign == 1 || ht == [hx[0] - k * ha[0], hx[1] - k * ha[1]]);
        signs.insert(sign);
    }
    assert_eq!(signs.len(), 1);
}
