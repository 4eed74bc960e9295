//! Dehn twists along simple closed curves and certified triviality of twist
//! words.
//!
//! A twist along `c` is applied to a curve `g` by splicing a copy of `c`
//! into `g` at every crossing, in the order the crossings occur along `g`,
//! and reducing. The positive twist turns right: a strand crossing `c` from
//! its right to its left picks up `c` in its own direction. A word acts
//! rightmost letter first, like composition of maps.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::arcs::{detector_arc, filling_arc_system, parallel_copies};
use crate::curve::{crossings, imin, is_simple, Crossing, Curve, NamedCurveSet, StrandOrder};
use crate::error::{Error, Result};
use crate::exec;
use crate::surface::{ccw_between, twin, BoundaryPoint, CombSurface, Dart, Dir};

/// Formal product of twist powers over curve names. Letters are stored left
/// to right; the rightmost letter is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord {
    letters: Vec<(String, i64)>,
}

impl TwistWord {
    pub fn new(letters: Vec<(String, i64)>) -> Self {
        let mut out: Vec<(String, i64)> = Vec::with_capacity(letters.len());
        for (name, m) in letters {
            match out.last_mut() {
                Some((last, e)) if *last == name => {
                    *e += m;
                    if *e == 0 {
                        out.pop();
                    }
                }
                _ if m != 0 => out.push((name, m)),
                _ => {}
            }
        }
        TwistWord { letters: out }
    }

    /// Parses `a b^-1 c^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("missing curve name in `{tok}`")));
            }
            letters.push((name.to_string(), exp));
        }
        Ok(TwistWord::new(letters))
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord::new(
            self.letters
                .iter()
                .rev()
                .map(|(n, m)| (n.clone(), -m))
                .collect(),
        )
    }

    /// `self` followed by `other` as a product; `other` acts first.
    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        TwistWord::new(self.letters.iter().chain(&other.letters).cloned().collect())
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &TwistWord, y: &TwistWord) -> TwistWord {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(n, m)| {
                if *m == 1 {
                    n.clone()
                } else {
                    format!("{n}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Checks that `name` can serve as a twist core.
pub fn check_core(surf: &CombSurface, curves: &NamedCurveSet, name: &str) -> Result<()> {
    let c = curves.get(name)?;
    if !c.is_closed() {
        return Err(Error::ExpectedClosed(name.to_string()));
    }
    if c.is_trivial_loop() {
        return Err(Error::NullHomotopic(name.to_string()));
    }
    if !is_simple(surf, c) {
        return Err(Error::NotSimple(name.to_string()));
    }
    Ok(())
}

/// Checks every letter of `w`.
pub fn check_word(surf: &CombSurface, curves: &NamedCurveSet, w: &TwistWord) -> Result<()> {
    for (name, _) in w.letters() {
        check_core(surf, curves, name)?;
    }
    Ok(())
}

/// Position on the face circle of one endpoint of a core chord, refined by
/// the core's own strand order.
fn fine_dirs(surf: &CombSurface, core: &Curve, order: &StrandOrder, l: usize) -> (Dir, Dir) {
    let n = core.len();
    let out = core.darts()[l];
    let prev = (l + n - 1) % n;
    let inn = twin(core.darts()[prev]);
    (
        surf.dir_of(inn).with_minor(order.minor(inn, prev)),
        surf.dir_of(out).with_minor(order.minor(out, l)),
    )
}

/// `τ_core^power (g)`. The core must be a simple, essential closed curve.
pub fn twist_curve(surf: &CombSurface, core: &Curve, power: i64, g: &Curve) -> Curve {
    if power == 0 || core.is_empty() {
        return g.clone();
    }
    let xs = crossings(surf, g, core);
    if xs.is_empty() {
        return g.clone();
    }
    let n = core.len();
    let order = StrandOrder::new(surf, core);
    let gv = g.view(surf);
    let mut at: Vec<Vec<(Dir, Crossing)>> = vec![Vec::new(); gv.visits()];
    for x in xs {
        let k = x.g_visit;
        let a = gv.in_dir(k);
        let b = gv.out_dir(k);
        let lf = if x.c_reversed {
            (n - x.c_visit) % n
        } else {
            x.c_visit
        };
        let (p, q) = fine_dirs(surf, core, &order, lf);
        let key = if p.major != b.major && q.major != b.major {
            if ccw_between(a, p, b) {
                p
            } else {
                q
            }
        } else {
            let (on_b, other) = if p.major == b.major { (p, q) } else { (q, p) };
            if ccw_between(a, other, b) {
                other
            } else {
                on_b
            }
        };
        at[k].push((key, x));
    }
    let loop_of = |x: &Crossing| -> Vec<Dart> {
        let lf = if x.c_reversed {
            (n - x.c_visit) % n
        } else {
            x.c_visit
        };
        let rotated: Vec<Dart> = core.darts()[lf..]
            .iter()
            .chain(&core.darts()[..lf])
            .copied()
            .collect();
        let dir_sign = if x.c_reversed { -1 } else { 1 };
        let e = power * x.sign as i64 * dir_sign;
        let unit: Vec<Dart> = if e > 0 {
            rotated
        } else {
            rotated.iter().rev().map(|&d| twin(d)).collect()
        };
        unit.iter()
            .copied()
            .cycle()
            .take(unit.len() * e.unsigned_abs() as usize)
            .collect()
    };
    let mut darts = Vec::new();
    for (k, group) in at.iter_mut().enumerate() {
        let a = gv.in_dir(k);
        group.sort_by(|(u, _), (v, _)| {
            if u == v {
                Ordering::Equal
            } else if ccw_between(a, *u, *v) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        for (_, x) in group.iter() {
            darts.extend(loop_of(x));
        }
        if let Some(d) = gv.out_dart(k) {
            if k < g.len() {
                darts.push(d);
            }
        }
    }
    Curve::from_parts_unchecked(darts, g.ends())
}

/// `w(g)`: rightmost letter first.
pub fn apply_word(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    w: &TwistWord,
    g: &Curve,
) -> Result<Curve> {
    check_word(surf, curves, w)?;
    let mut cur = g.clone();
    for (name, m) in w.letters().iter().rev() {
        cur = twist_curve(surf, curves.get(name)?, *m, &cur);
    }
    Ok(cur)
}

/// One entry of a nontriviality witness: `before = imin(moved, probe)`,
/// `after = imin(w(moved), probe)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub i: String,
    pub j: String,
    pub before: usize,
    pub after: usize,
}

/// An arc stored by its spine path and endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcData {
    pub start: BoundaryPoint,
    pub darts: Vec<Dart>,
    pub end: BoundaryPoint,
}

impl ArcData {
    pub fn from_curve(c: &Curve) -> Option<ArcData> {
        c.ends().map(|(s, e)| ArcData {
            start: s,
            darts: c.darts().to_vec(),
            end: e,
        })
    }

    pub fn to_curve(&self, surf: &CombSurface) -> Result<Curve> {
        Curve::arc(surf, self.start, self.darts.clone(), self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Filling arc that is moved.
    pub arc: String,
    /// All arcs named in `pairs`.
    pub arcs: Vec<(String, ArcData)>,
    pub pairs: Vec<WitnessPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityVerdict {
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Decides whether `w` is the identity rel boundary by applying it to a
/// filling arc system.
pub fn is_trivial_word(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    w: &TwistWord,
) -> Result<TrivialityVerdict> {
    check_word(surf, curves, w)?;
    let system = filling_arc_system(surf)?;
    let arcs: Vec<(&str, &Curve)> = system.iter().collect();
    let images = exec::map(&arcs, |(_, a)| apply_word(surf, curves, w, a));
    let mut moved = None;
    for ((name, a), img) in arcs.iter().zip(images) {
        let img = img?;
        if img != **a {
            moved = Some((name.to_string(), (*a).clone(), img));
            break;
        }
    }
    let Some((name, a, image)) = moved else {
        return Ok(TrivialityVerdict {
            trivial: true,
            witness: None,
        });
    };
    let witness = build_witness(surf, &system, &name, &a, &image)?;
    Ok(TrivialityVerdict {
        trivial: false,
        witness: Some(witness),
    })
}

fn build_witness(
    surf: &CombSurface,
    system: &NamedCurveSet,
    name: &str,
    a: &Curve,
    image: &Curve,
) -> Result<Witness> {
    let occupied: Vec<BoundaryPoint> = system
        .iter()
        .filter_map(|(_, c)| c.ends())
        .flat_map(|(p, q)| [p, q])
        .collect();
    let (c1, c2) = parallel_copies(surf, a, &occupied)?;
    let mut probes: Vec<(String, Curve)> = vec![(format!("{name}+"), c1), (format!("{name}-"), c2)];
    for (n, c) in system.iter() {
        if n != name {
            probes.push((n.to_string(), c.clone()));
        }
    }
    probes.push((format!("{name}@"), detector_arc(surf, a, None)?));
    let mut pairs = Vec::new();
    let mut used = vec![(name.to_string(), ArcData::from_curve(a).unwrap())];
    for (pn, p) in &probes {
        let before = imin(surf, a, p)?;
        let after = imin(surf, image, p)?;
        if before <= 1 && before != after {
            pairs.push(WitnessPair {
                i: name.to_string(),
                j: pn.clone(),
                before,
                after,
            });
            used.push((pn.clone(), ArcData::from_curve(p).unwrap()));
        }
    }
    if pairs.is_empty() {
        return Err(Error::Invariant(format!(
            "arc {name} moved but no probe detects it"
        )));
    }
    Ok(Witness {
        arc: name.to_string(),
        arcs: used,
        pairs,
    })
}

/// Re-checks a witness using only intersection numbers.
pub fn verify_witness(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    w: &TwistWord,
    wit: &Witness,
) -> Result<bool> {
    let find = |n: &str| -> Result<Curve> {
        wit.arcs
            .iter()
            .find(|(m, _)| m == n)
            .ok_or_else(|| Error::UnknownName(n.to_string()))?
            .1
            .to_curve(surf)
    };
    for p in &wit.pairs {
        let a = find(&p.i)?;
        let b = find(&p.j)?;
        let image = apply_word(surf, curves, w, &a)?;
        if p.before > 1
            || p.before == p.after
            || imin(surf, &a, &b)? != p.before
            || imin(surf, &image, &b)? != p.after
        {
            return Ok(false);
        }
    }
    Ok(!wit.pairs.is_empty())
}
