//! Explicit embedded realizations of disjoint curves and arcs.
//!
//! A diagram stores, for every spine edge, the ordered list of points where
//! strands cross it, and for every face the chords joining those points (or
//! arc endpoints) inside the face. Tightening removes innermost bigons
//! between a strand and an edge, one at a time.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::curve::{compare_strands, imin, is_simple, Curve, CurveKind};
use crate::error::{Error, Result};
use crate::surface::{ccw_between, BoundaryPoint, CombSurface, Dart, Dir};

/// Raw dart path of one component, with its ends if it is an arc.
pub type Trace = (Vec<Dart>, Option<(BoundaryPoint, BoundaryPoint)>);

/// End of a chord: a crossing point seen from one side of its edge, or an
/// arc endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Edge { point: usize, side: u8 },
    Boundary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Chord {
    face: usize,
    ends: [End; 2],
}

#[derive(Clone, Debug)]
pub struct CurveDiagram {
    /// Point ids per edge, counterclockwise as seen from the face of the
    /// edge's even dart.
    edges: Vec<Vec<usize>>,
    edge_of: Vec<usize>,
    chords: Vec<Option<Chord>>,
    at: HashMap<End, usize>,
    endpoints: Vec<BoundaryPoint>,
    null_loops: usize,
}

const GONE: usize = usize::MAX;

impl CurveDiagram {
    fn empty(surf: &CombSurface) -> Self {
        CurveDiagram {
            edges: vec![Vec::new(); surf.edge_count()],
            edge_of: Vec::new(),
            chords: Vec::new(),
            at: HashMap::new(),
            endpoints: Vec::new(),
            null_loops: 0,
        }
    }

    fn add_chord(&mut self, face: usize, a: End, b: End) {
        let id = self.chords.len();
        self.chords.push(Some(Chord { face, ends: [a, b] }));
        self.at.insert(a, id);
        self.at.insert(b, id);
    }

    fn remove_chord(&mut self, id: usize) -> Chord {
        let c = self.chords[id].take().expect("live chord");
        for e in c.ends {
            self.at.remove(&e);
        }
        c
    }

    fn new_point(&mut self, edge: usize) -> usize {
        self.edge_of.push(edge);
        self.edge_of.len() - 1
    }

    /// Realizes pairwise disjoint simple curves and arcs in minimal position
    /// with respect to the spine.
    pub fn realize(surf: &CombSurface, comps: &[Curve]) -> Result<Self> {
        for (i, c) in comps.iter().enumerate() {
            if !is_simple(surf, c) {
                return Err(Error::NotSimple(format!("component {i}")));
            }
            for d in &comps[..i] {
                if imin(surf, c, d)? != 0 {
                    return Err(Error::InvalidDiagram(format!(
                        "component {i} meets an earlier component"
                    )));
                }
            }
        }
        let revs: Vec<Curve> = comps.iter().map(Curve::reversed).collect();
        let mut per_edge: Vec<Vec<(usize, bool, usize)>> = vec![Vec::new(); surf.edge_count()];
        for (i, c) in comps.iter().enumerate() {
            let n = c.len();
            for (j, &d) in c.darts().iter().enumerate() {
                if d % 2 == 0 {
                    per_edge[d / 2].push((i, false, j));
                } else {
                    per_edge[d / 2].push((i, true, n - 1 - j));
                }
            }
        }
        let mut diag = CurveDiagram::empty(surf);
        let mut point_of: Vec<Vec<usize>> = comps.iter().map(|c| vec![GONE; c.len()]).collect();
        for (e, strands) in per_edge.iter_mut().enumerate() {
            strands.sort_by(|&(ca, ra, ja), &(cb, rb, jb)| {
                let va = if ra {
                    revs[ca].view(surf)
                } else {
                    comps[ca].view(surf)
                };
                let vb = if rb {
                    revs[cb].view(surf)
                } else {
                    comps[cb].view(surf)
                };
                compare_strands(&va, ja, &vb, jb).unwrap_or_else(|| match ca.cmp(&cb) {
                    Ordering::Less if ra => Ordering::Greater,
                    Ordering::Less => Ordering::Less,
                    Ordering::Greater if rb => Ordering::Less,
                    Ordering::Greater => Ordering::Greater,
                    Ordering::Equal => ja.cmp(&jb),
                })
            });
            for &(c, r, j) in strands.iter() {
                let jf = if r { comps[c].len() - 1 - j } else { j };
                let p = diag.new_point(e);
                diag.edges[e].push(p);
                point_of[c][jf] = p;
            }
        }
        for (i, c) in comps.iter().enumerate() {
            let v = c.view(surf);
            let n = c.len();
            if c.is_closed() && n == 0 {
                diag.null_loops += 1;
                continue;
            }
            let ends = c.ends().map(|(s, t)| {
                diag.endpoints.push(s);
                diag.endpoints.push(t);
                (
                    End::Boundary(diag.endpoints.len() - 2),
                    End::Boundary(diag.endpoints.len() - 1),
                )
            });
            for k in 0..v.visits() {
                let inn = match v.in_dart(k) {
                    Some(d) => End::Edge {
                        point: point_of[i][(k + n - 1) % n],
                        side: (d % 2) as u8,
                    },
                    None => ends.unwrap().0,
                };
                let out = match v.out_dart(k) {
                    Some(d) => End::Edge {
                        point: point_of[i][k % n.max(1)],
                        side: (d % 2) as u8,
                    },
                    None => ends.unwrap().1,
                };
                diag.add_chord(v.face(k), inn, out);
            }
        }
        diag.validate(surf)?;
        Ok(diag)
    }

    /// Points on `edge` in order.
    pub fn edge_points(&self, edge: usize) -> &[usize] {
        &self.edges[edge]
    }

    pub fn crossing_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.edges.iter().map(Vec::len).collect()
    }

    pub fn null_loops(&self) -> usize {
        self.null_loops
    }

    fn index_on_edge(&self, p: usize) -> usize {
        self.edges[self.edge_of[p]]
            .iter()
            .position(|&q| q == p)
            .expect("point on its edge")
    }

    fn end_dir(&self, surf: &CombSurface, end: End) -> Dir {
        match end {
            End::Boundary(b) => self.endpoints[b].dir(),
            End::Edge { point, side } => {
                let e = self.edge_of[point];
                let dart = 2 * e + side as usize;
                let idx = self.index_on_edge(point);
                let minor = if side == 0 {
                    idx
                } else {
                    self.edges[e].len() - 1 - idx
                };
                surf.dir_of(dart).with_minor(minor as i64)
            }
        }
    }

    fn end_face(&self, surf: &CombSurface, end: End) -> usize {
        match end {
            End::Boundary(b) => self.endpoints[b].corner.face,
            End::Edge { point, side } => surf.face_of(2 * self.edge_of[point] + side as usize),
        }
    }

    fn face_chords(&self, f: usize) -> Vec<(usize, [End; 2])> {
        self.chords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| c.face == f).map(|c| (i, c.ends)))
            .collect()
    }

    /// Checks chords are non-crossing, every point is used once from each
    /// side, and every endpoint is used once.
    pub fn validate(&self, surf: &CombSurface) -> Result<()> {
        let mut uses: HashMap<End, usize> = HashMap::new();
        for c in self.chords.iter().flatten() {
            for e in c.ends {
                if self.end_face(surf, e) != c.face {
                    return Err(Error::InvalidDiagram(format!(
                        "chord end {e:?} is not on face {}",
                        c.face
                    )));
                }
                *uses.entry(e).or_default() += 1;
            }
        }
        for (e, pts) in self.edges.iter().enumerate() {
            for &p in pts {
                for side in 0..2 {
                    if uses.get(&End::Edge { point: p, side }) != Some(&1) {
                        return Err(Error::InvalidDiagram(format!(
                            "point {p} on edge {e} is not met exactly once from side {side}"
                        )));
                    }
                }
            }
        }
        for b in 0..self.endpoints.len() {
            if uses.get(&End::Boundary(b)) != Some(&1) {
                return Err(Error::InvalidDiagram(format!(
                    "endpoint {b} is not used exactly once"
                )));
            }
        }
        if uses.len() != 2 * self.crossing_count() + self.endpoints.len() {
            return Err(Error::InvalidDiagram(
                "chord ends refer to missing points".into(),
            ));
        }
        for f in 0..surf.face_count() {
            let cs = self.face_chords(f);
            let dirs: Vec<[Dir; 2]> = cs
                .iter()
                .map(|(_, [a, b])| [self.end_dir(surf, *a), self.end_dir(surf, *b)])
                .collect();
            for i in 0..dirs.len() {
                for j in 0..i {
                    if interleaved(dirs[i], dirs[j]) {
                        return Err(Error::InvalidDiagram(format!("chords cross in face {f}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Components as raw (unreduced) dart paths.
    pub fn traces(&self) -> Vec<Trace> {
        let mut seen = vec![false; self.chords.len()];
        let mut out = Vec::new();
        let starts: Vec<(usize, End)> = (0..self.endpoints.len())
            .filter_map(|b| {
                self.at
                    .get(&End::Boundary(b))
                    .map(|&c| (c, End::Boundary(b)))
            })
            .chain(
                self.chords
                    .iter()
                    .enumerate()
                    .filter_map(|(i, c)| c.map(|c| (i, c.ends[0]))),
            )
            .collect();
        for (c0, from0) in starts {
            if seen[c0] {
                continue;
            }
            let mut darts = Vec::new();
            let (mut c, mut from) = (c0, from0);
            let end_b;
            loop {
                seen[c] = true;
                let ch = self.chords[c].unwrap();
                let to = if ch.ends[0] == from {
                    ch.ends[1]
                } else {
                    ch.ends[0]
                };
                match to {
                    End::Boundary(b) => {
                        end_b = Some(b);
                        break;
                    }
                    End::Edge { point, side } => {
                        darts.push(2 * self.edge_of[point] + side as usize);
                        from = End::Edge {
                            point,
                            side: 1 - side,
                        };
                        c = self.at[&from];
                        if c == c0 && from == from0 {
                            end_b = None;
                            break;
                        }
                    }
                }
            }
            let ends = match (from0, end_b) {
                (End::Boundary(s), Some(t)) => Some((self.endpoints[s], self.endpoints[t])),
                _ => None,
            };
            out.push((darts, ends));
        }
        out
    }

    /// Components as reduced curves, null loops included as empty words.
    pub fn curves(&self) -> Vec<Curve> {
        let mut v: Vec<Curve> = self
            .traces()
            .into_iter()
            .map(|(d, e)| Curve::from_parts_unchecked(d, e))
            .collect();
        v.extend((0..self.null_loops).map(|_| Curve::from_parts_unchecked(vec![], None)));
        v
    }

    /// Innermost bigons with edges: `(edge, index of the first point, side)`.
    fn bigons(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for (e, pts) in self.edges.iter().enumerate() {
            for i in 0..pts.len().saturating_sub(1) {
                for side in 0..2u8 {
                    let a = self.at[&End::Edge {
                        point: pts[i],
                        side,
                    }];
                    let b = self.at[&End::Edge {
                        point: pts[i + 1],
                        side,
                    }];
                    if a == b {
                        out.push((e, i, side));
                    }
                }
            }
        }
        out
    }

    fn remove_bigon(&mut self, (e, i, side): (usize, usize, u8)) {
        let (p, q) = (self.edges[e][i], self.edges[e][i + 1]);
        let inner = self.at[&End::Edge { point: p, side }];
        self.remove_chord(inner);
        let other = 1 - side;
        let cp = self.at[&End::Edge {
            point: p,
            side: other,
        }];
        let cq = self.at[&End::Edge {
            point: q,
            side: other,
        }];
        if cp == cq {
            self.remove_chord(cp);
            self.null_loops += 1;
        } else {
            let a = self.remove_chord(cp);
            let b = self.remove_chord(cq);
            let x = if a.ends[0]
                == (End::Edge {
                    point: p,
                    side: other,
                }) {
                a.ends[1]
            } else {
                a.ends[0]
            };
            let y = if b.ends[0]
                == (End::Edge {
                    point: q,
                    side: other,
                }) {
                b.ends[1]
            } else {
                b.ends[0]
            };
            self.add_chord(a.face, x, y);
        }
        self.edges[e].drain(i..=i + 1);
    }

    /// Removes bigons until none is left, always taking the first one found.
    pub fn tighten(&self) -> CurveDiagram {
        let mut d = self.clone();
        while let Some(&b) = d.bigons().first() {
            d.remove_bigon(b);
        }
        d
    }

    /// Removes bigons in a random order.
    pub fn tighten_random<R: Rng>(&self, rng: &mut R) -> CurveDiagram {
        let mut d = self.clone();
        loop {
            let bs = d.bigons();
            if bs.is_empty() {
                return d;
            }
            d.remove_bigon(bs[rng.gen_range(0..bs.len())]);
        }
    }

    pub fn is_tight(&self) -> bool {
        self.bigons().is_empty()
    }

    /// Adds one bigon by pushing a finger of a random chord across a random
    /// edge. Returns false if no legal finger was found in a few tries.
    pub fn add_random_bigon<R: Rng>(&mut self, surf: &CombSurface, rng: &mut R) -> bool {
        let live: Vec<usize> = (0..self.chords.len())
            .filter(|&i| self.chords[i].is_some())
            .collect();
        if live.is_empty() {
            return false;
        }
        for _ in 0..64 {
            let cid = live[rng.gen_range(0..live.len())];
            let ch = self.chords[cid].unwrap();
            let f = ch.face;
            if surf.degree(f) == 0 {
                continue;
            }
            let x = surf.rotation(f)[rng.gen_range(0..surf.degree(f))];
            let e = x / 2;
            let gap = rng.gen_range(0..=self.edges[e].len());
            let mut trial = self.clone();
            let p1 = trial.new_point(e);
            let p2 = trial.new_point(e);
            let s = (x % 2) as u8;
            // as seen from face f, counterclockwise order must be p1 then p2
            let (first, second) = if s == 0 { (p1, p2) } else { (p2, p1) };
            trial.edges[e].splice(gap..gap, [first, second]);
            trial.remove_chord(cid);
            let (a, b) = (ch.ends[0], ch.ends[1]);
            let flip = rng.gen_bool(0.5);
            let (u, v) = if flip { (b, a) } else { (a, b) };
            trial.add_chord(f, u, End::Edge { point: p1, side: s });
            trial.add_chord(f, End::Edge { point: p2, side: s }, v);
            trial.add_chord(
                surf.head(x),
                End::Edge {
                    point: p1,
                    side: 1 - s,
                },
                End::Edge {
                    point: p2,
                    side: 1 - s,
                },
            );
            if trial.validate(surf).is_ok() {
                *self = trial;
                return true;
            }
        }
        false
    }

    /// Independent of how the diagram was produced: faces map to chords
    /// given by point ids.
    pub fn to_json(&self, surf: &CombSurface) -> DiagramJson {
        let name = |e: End| -> String {
            match e {
                End::Edge { point, side } => {
                    format!("{point}{}", if side == 0 { "+" } else { "-" })
                }
                End::Boundary(b) => format!("b{b}"),
            }
        };
        let mut faces: BTreeMap<usize, Vec<[String; 2]>> = BTreeMap::new();
        for f in 0..surf.face_count() {
            let mut cs: Vec<[String; 2]> = self
                .face_chords(f)
                .into_iter()
                .map(|(_, [a, b])| [name(a), name(b)])
                .collect();
            cs.sort();
            if !cs.is_empty() {
                faces.insert(f, cs);
            }
        }
        let kinds: Vec<CurveKind> = self.curves().iter().map(Curve::kind).collect();
        let kind = if kinds.iter().all(|k| *k == CurveKind::Closed) {
            "closed"
        } else if kinds.iter().all(|k| *k == CurveKind::Arc) {
            "arc"
        } else {
            "mixed"
        };
        DiagramJson {
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_empty())
                .map(|(e, p)| (e, p.clone()))
                .collect(),
            faces,
            kind: kind.to_string(),
            endpoints: self.endpoints.clone(),
            null_loops: self.null_loops,
        }
    }

    pub fn from_json(surf: &CombSurface, j: &DiagramJson) -> Result<Self> {
        let mut d = CurveDiagram::empty(surf);
        let max_id = j
            .edges
            .values()
            .flatten()
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        d.edge_of = vec![GONE; max_id];
        for (&e, pts) in &j.edges {
            if e >= surf.edge_count() {
                return Err(Error::InvalidDiagram(format!("edge {e} does not exist")));
            }
            for &p in pts {
                if d.edge_of[p] != GONE {
                    return Err(Error::InvalidDiagram(format!("point {p} listed twice")));
                }
                d.edge_of[p] = e;
            }
            d.edges[e] = pts.clone();
        }
        d.endpoints = j.endpoints.clone();
        d.null_loops = j.null_loops;
        let parse = |s: &str| -> Result<End> {
            if let Some(b) = s.strip_prefix('b') {
                let b: usize = b
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad chord end `{s}`")))?;
                if b >= j.endpoints.len() {
                    return Err(Error::InvalidDiagram(format!(
                        "endpoint `{s}` does not exist"
                    )));
                }
                return Ok(End::Boundary(b));
            }
            let (num, side) = match s.strip_suffix('+') {
                Some(n) => (n, 0),
                None => (
                    s.strip_suffix('-')
                        .ok_or_else(|| Error::Parse(format!("bad chord end `{s}`")))?,
                    1,
                ),
            };
            let point: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad chord end `{s}`")))?;
            if point >= max_id || d.edge_of[point] == GONE {
                return Err(Error::InvalidDiagram(format!("point `{s}` is on no edge")));
            }
            Ok(End::Edge { point, side })
        };
        let mut pending = Vec::new();
        for (&f, cs) in &j.faces {
            if f >= surf.face_count() {
                return Err(Error::InvalidDiagram(format!("face {f} does not exist")));
            }
            for [a, b] in cs {
                pending.push((f, parse(a)?, parse(b)?));
            }
        }
        for (f, a, b) in pending {
            if d.at.contains_key(&a) || d.at.contains_key(&b) {
                return Err(Error::InvalidDiagram(format!(
                    "chord end used twice in face {f}"
                )));
            }
            d.add_chord(f, a, b);
        }
        d.validate(surf)?;
        Ok(d)
    }
}

fn interleaved([a, b]: [Dir; 2], [c, d]: [Dir; 2]) -> bool {
    ccw_between(a, c, b) != ccw_between(a, d, b)
}

/// JSON form of a diagram. Point ids are listed per edge in order; chord
/// ends are `"<id>+"` / `"<id>-"` for the side of the even / odd dart, or
/// `"b<k>"` for the `k`-th endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub edges: BTreeMap<usize, Vec<usize>>,
    pub faces: BTreeMap<usize, Vec<[String; 2]>>,
    pub kind: String,
    pub endpoints: Vec<BoundaryPoint>,
    #[serde(default)]
    pub null_loops: usize,
}

/// Result of tightening a diagram, optionally against a companion.
#[derive(Clone, Debug)]
pub struct Tightened {
    pub diagram: CurveDiagram,
    pub companion: Option<CurveDiagram>,
    /// Minimal intersection count between the two diagrams.
    pub imin: Option<usize>,
}

/// Tightens `d` (and `against`) and reports their minimal intersection count.
pub fn tighten(
    surf: &CombSurface,
    d: &CurveDiagram,
    against: Option<&CurveDiagram>,
) -> Result<Tightened> {
    d.validate(surf)?;
    let diagram = d.tighten();
    let Some(other) = against else {
        return Ok(Tightened {
            diagram,
            companion: None,
            imin: None,
        });
    };
    other.validate(surf)?;
    let companion = other.tighten();
    let mut total = 0;
    for x in diagram.curves() {
        for y in companion.curves() {
            total += imin(surf, &x, &y)?;
        }
    }
    Ok(Tightened {
        diagram,
        companion: Some(companion),
        imin: Some(total),
    })
}
