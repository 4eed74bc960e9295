//! Combinatorial oriented surfaces with boundary.
//!
//! A [`CombSurface`] is a finite collection of polygons glued in pairs along
//! interior edges, with every polygon corner truncated by a piece of
//! boundary. Because every polygon vertex lies on the boundary, the surface
//! deformation retracts onto its dual graph: one node per polygon (a *face*),
//! one edge per glued pair of sides. That dual graph is stored as a ribbon
//! graph: each face keeps the counterclockwise cyclic order of the *darts*
//! (directed half-edges) leaving it.
//!
//! Dart `2e` and `2e + 1` are the two ends of edge `e`; [`twin`] flips between
//! them. Corner `i` of a face is the boundary gap between darts `i` and
//! `i + 1` of its rotation. A face without darts is a disc with one corner.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

/// A boundary gap of a face, between rotation positions `index` and `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub face: usize,
    pub index: usize,
}

/// A marked point on the boundary. Points inside one corner are ordered
/// counterclockwise by `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub corner: Corner,
    pub slot: i64,
}

impl BoundaryPoint {
    pub fn new(face: usize, index: usize, slot: i64) -> Self {
        BoundaryPoint {
            corner: Corner { face, index },
            slot,
        }
    }

    pub fn dir(&self) -> Dir {
        Dir {
            major: 2 * self.corner.index as u32 + 1,
            minor: self.slot,
        }
    }
}

/// A direction leaving a face: either a dart or a boundary point. Directions
/// at one face are totally ordered counterclockwise, starting from dart 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dir {
    pub major: u32,
    pub minor: i64,
}

impl Dir {
    pub fn dart_at(pos: usize) -> Self {
        Dir {
            major: 2 * pos as u32,
            minor: 0,
        }
    }

    pub fn with_minor(self, minor: i64) -> Self {
        Dir {
            major: self.major,
            minor,
        }
    }
}

/// True iff turning counterclockwise from `a`, `x` is met strictly before `b`.
/// The three directions must be pairwise distinct.
#[inline]
pub fn ccw_between(a: Dir, x: Dir, b: Dir) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombSurface {
    rot: Vec<Vec<Dart>>,
    dart_face: Vec<usize>,
    dart_pos: Vec<usize>,
}

impl CombSurface {
    /// Builds a surface from per-face counterclockwise dart rotations. Every
    /// dart `0..2E` must occur exactly once.
    pub fn from_rotation(rot: Vec<Vec<Dart>>) -> Result<Self> {
        let n: usize = rot.iter().map(Vec::len).sum();
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidSurface(format!("odd number of darts ({n})")));
        }
        let mut dart_face = vec![usize::MAX; n];
        let mut dart_pos = vec![usize::MAX; n];
        for (f, darts) in rot.iter().enumerate() {
            for (p, &d) in darts.iter().enumerate() {
                if d >= n {
                    return Err(Error::InvalidSurface(format!("dart {d} out of range")));
                }
                if dart_face[d] != usize::MAX {
                    return Err(Error::InvalidSurface(format!("dart {d} used twice")));
                }
                dart_face[d] = f;
                dart_pos[d] = p;
            }
        }
        Ok(CombSurface {
            rot,
            dart_face,
            dart_pos,
        })
    }

    /// Builds a surface from the polygon description: each face lists the
    /// signed ids (1-based) of its sides counterclockwise. Ids used twice must
    /// appear once with each sign and are glued; ids used once are boundary
    /// sides. Every corner of every polygon is truncated by boundary.
    pub fn from_faces(faces: &[Vec<i64>]) -> Result<Self> {
        use std::collections::BTreeMap;
        let mut uses: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
        for (f, sides) in faces.iter().enumerate() {
            for (p, &s) in sides.iter().enumerate() {
                if s == 0 {
                    return Err(Error::InvalidSurface(format!(
                        "face {f}: edge id 0 is not allowed"
                    )));
                }
                uses.entry(s.abs()).or_default().push((f, p, s.signum()));
            }
        }
        let mut interior = BTreeMap::new();
        for (&id, u) in &uses {
            match u.len() {
                1 => {}
                2 => {
                    if u[0].2 == u[1].2 {
                        return Err(Error::InvalidSurface(format!(
                            "edge {id} is traversed twice in the same direction (non-orientable gluing)"
                        )));
                    }
                    let e = interior.len();
                    interior.insert(id, e);
                }
                k => {
                    return Err(Error::InvalidSurface(format!(
                        "edge {id} used by {k} face sides"
                    )));
                }
            }
        }
        let rot = faces
            .iter()
            .map(|sides| {
                sides
                    .iter()
                    .filter_map(|&s| {
                        interior
                            .get(&s.abs())
                            .map(|&e| if s > 0 { 2 * e } else { 2 * e + 1 })
                    })
                    .collect()
            })
            .collect();
        CombSurface::from_rotation(rot)
    }

    /// Inverse of [`CombSurface::from_faces`] (boundary sides are implicit).
    pub fn to_faces(&self) -> Vec<Vec<i64>> {
        self.rot
            .iter()
            .map(|ds| {
                ds.iter()
                    .map(|&d| {
                        let id = (d / 2) as i64 + 1;
                        if d % 2 == 0 {
                            id
                        } else {
                            -id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn face_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_face.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.dart_face.len()
    }

    /// Disjoint union; part `k` keeps its darts shifted by `offsets[k]` and its
    /// faces shifted by `face_offsets[k]`.
    pub fn disjoint_union(parts: &[&CombSurface]) -> (CombSurface, Vec<usize>, Vec<usize>) {
        let mut rot = Vec::new();
        let (mut offsets, mut face_offsets) = (Vec::new(), Vec::new());
        let mut shift = 0;
        for p in parts {
            offsets.push(shift);
            face_offsets.push(rot.len());
            rot.extend(
                p.rot
                    .iter()
                    .map(|ds| ds.iter().map(|d| d + shift).collect::<Vec<_>>()),
            );
            shift += p.dart_count();
        }
        let s = CombSurface::from_rotation(rot).expect("union of valid surfaces is valid");
        (s, offsets, face_offsets)
    }

    pub fn rotation(&self, face: usize) -> &[Dart] {
        &self.rot[face]
    }

    pub fn degree(&self, face: usize) -> usize {
        self.rot[face].len()
    }

    pub fn corner_count(&self, face: usize) -> usize {
        self.rot[face].len().max(1)
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d]
    }

    #[inline]
    pub fn pos_of(&self, d: Dart) -> usize {
        self.dart_pos[d]
    }

    /// Face a dart points into.
    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.dart_face[twin(d)]
    }

    #[inline]
    pub fn dir_of(&self, d: Dart) -> Dir {
        Dir::dart_at(self.dart_pos[d])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_count() as i64 - self.edge_count() as i64
    }

    pub fn is_valid_corner(&self, c: Corner) -> bool {
        c.face < self.face_count() && c.index < self.corner_count(c.face)
    }

    /// Next corner along the boundary walk.
    pub fn next_corner(&self, c: Corner) -> Corner {
        let deg = self.degree(c.face);
        if deg == 0 {
            return c;
        }
        let d = self.rot[c.face][(c.index + 1) % deg];
        let t = twin(d);
        Corner {
            face: self.face_of(t),
            index: self.pos_of(t),
        }
    }

    /// Boundary components as cyclic corner walks, in a deterministic order.
    pub fn boundary_components(&self) -> Vec<Vec<Corner>> {
        let mut seen: Vec<Vec<bool>> = (0..self.face_count())
            .map(|f| vec![false; self.corner_count(f)])
            .collect();
        let mut out = Vec::new();
        for f in 0..self.face_count() {
            for i in 0..self.corner_count(f) {
                if seen[f][i] {
                    continue;
                }
                let start = Corner { face: f, index: i };
                let mut cyc = Vec::new();
                let mut c = start;
                loop {
                    seen[c.face][c.index] = true;
                    cyc.push(c);
                    c = self.next_corner(c);
                    if c == start {
                        break;
                    }
                }
                out.push(cyc);
            }
        }
        out
    }

    /// Index of the boundary component containing each corner.
    pub fn boundary_index(&self) -> Vec<Vec<usize>> {
        let mut idx: Vec<Vec<usize>> = (0..self.face_count())
            .map(|f| vec![0; self.corner_count(f)])
            .collect();
        for (b, cyc) in self.boundary_components().iter().enumerate() {
            for c in cyc {
                idx[c.face][c.index] = b;
            }
        }
        idx
    }

    /// Connected components, as a face -> component label map.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.face_count()];
        let mut count = 0;
        for s in 0..self.face_count() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            label[s] = count;
            while let Some(f) = queue.pop_front() {
                for &d in &self.rot[f] {
                    let g = self.head(d);
                    if label[g] == usize::MAX {
                        label[g] = count;
                        queue.push_back(g);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().0 <= 1
    }

    /// Rank of the first homology, computed from the cell structure.
    pub fn homology_rank(&self) -> usize {
        let (comps, _) = self.component_labels();
        self.edge_count() + comps - self.face_count()
    }

    /// Breadth-first spanning forest from face 0; `true` marks tree edges.
    pub fn spanning_forest(&self) -> Vec<bool> {
        let mut tree = vec![false; self.edge_count()];
        let mut seen = vec![false; self.face_count()];
        for s in 0..self.face_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                for &d in &self.rot[f] {
                    let g = self.head(d);
                    if !seen[g] {
                        seen[g] = true;
                        tree[d / 2] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        tree
    }

    /// Removes the given edges and reports the Euler characteristic of every
    /// resulting piece. Cutting along the arc dual to an edge is the same as
    /// deleting that edge from the spine.
    pub fn cut_edges(&self, cut: &[usize]) -> Vec<i64> {
        let mut removed = vec![false; self.edge_count()];
        for &e in cut {
            removed[e] = true;
        }
        let rot = self
            .rot
            .iter()
            .map(|ds| {
                ds.iter()
                    .copied()
                    .filter(|d| !removed[d / 2])
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let mut label = vec![usize::MAX; rot.len()];
        let mut chi = Vec::new();
        for s in 0..rot.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let c = chi.len();
            label[s] = c;
            let mut faces = 0i64;
            let mut darts = 0i64;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                faces += 1;
                darts += rot[f].len() as i64;
                for &d in &rot[f] {
                    let g = self.head(d);
                    if label[g] == usize::MAX {
                        label[g] = c;
                        queue.push_back(g);
                    }
                }
            }
            chi.push(faces - darts / 2);
        }
        chi
    }

    /// Attaches a 1-handle whose feet sit at two distinct boundary points.
    /// Returns the new surface, the new dart leaving the face of `p`, and a
    /// remap for every other boundary point of the old surface.
    pub fn attach_handle(
        &self,
        p: BoundaryPoint,
        q: BoundaryPoint,
    ) -> Result<(CombSurface, Dart, PointRemap)> {
        if p == q {
            return Err(Error::CoincidentEndpoints);
        }
        for b in [p, q] {
            if !self.is_valid_corner(b.corner) {
                return Err(Error::InvalidCurve(format!(
                    "boundary point {b:?} is not on this surface"
                )));
            }
        }
        let e = self.edge_count();
        let (hp, hq) = (2 * e, 2 * e + 1);
        let feet = [(p, hp), (q, hq)];
        let mut rot = Vec::with_capacity(self.face_count());
        let mut layout: Vec<Vec<Slot>> = Vec::with_capacity(self.face_count());
        for f in 0..self.face_count() {
            let mut slots = Vec::new();
            let deg = self.degree(f);
            for i in 0..self.corner_count(f) {
                if deg > 0 {
                    slots.push(Slot::Old(self.rot[f][i]));
                }
                let mut here: Vec<(i64, Dart)> = feet
                    .iter()
                    .filter(|(b, _)| b.corner == Corner { face: f, index: i })
                    .map(|(b, h)| (b.slot, *h))
                    .collect();
                here.sort();
                slots.extend(here.into_iter().map(|(s, h)| Slot::New(s, h)));
            }
            rot.push(slots.iter().map(|s| s.dart()).collect());
            layout.push(slots);
        }
        let surf = CombSurface::from_rotation(rot)?;
        Ok((surf, hp, PointRemap { layout }))
    }

    /// Canonical code of the ribbon graph: equal codes iff the surfaces are
    /// isomorphic by an orientation-preserving relabeling.
    pub fn canonical_code(&self) -> Vec<Vec<usize>> {
        let (_, label) = self.component_labels();
        let ncomp = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut codes = Vec::new();
        for c in 0..ncomp {
            let faces: Vec<usize> = (0..self.face_count()).filter(|&f| label[f] == c).collect();
            let darts: Vec<Dart> = faces
                .iter()
                .flat_map(|&f| self.rot[f].iter().copied())
                .collect();
            if darts.is_empty() {
                codes.push(vec![]);
                continue;
            }
            let best = darts.iter().map(|&d| self.code_from(d)).min().unwrap();
            codes.push(best);
        }
        codes.sort();
        codes
    }

    fn next_in_rot(&self, d: Dart) -> Dart {
        let f = self.face_of(d);
        let r = &self.rot[f];
        r[(self.pos_of(d) + 1) % r.len()]
    }

    fn code_from(&self, start: Dart) -> Vec<usize> {
        let mut lab = vec![usize::MAX; self.dart_count()];
        let mut order = vec![start];
        lab[start] = 0;
        let mut i = 0;
        let mut code = Vec::new();
        while i < order.len() {
            let d = order[i];
            for n in [self.next_in_rot(d), twin(d)] {
                if lab[n] == usize::MAX {
                    lab[n] = order.len();
                    order.push(n);
                }
                code.push(lab[n]);
            }
            i += 1;
        }
        code
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Old(Dart),
    New(i64, Dart),
}

impl Slot {
    fn dart(&self) -> Dart {
        match *self {
            Slot::Old(d) | Slot::New(_, d) => d,
        }
    }
}

/// Moves boundary points of a surface onto the surface obtained from it by
/// [`CombSurface::attach_handle`].
#[derive(Clone, Debug)]
pub struct PointRemap {
    layout: Vec<Vec<Slot>>,
}

impl PointRemap {
    pub fn map(&self, b: BoundaryPoint) -> BoundaryPoint {
        let f = b.corner.face;
        let slots = &self.layout[f];
        if slots.is_empty() {
            return b;
        }
        // last slot strictly before the point, counterclockwise
        let mut anchor = None;
        for (k, s) in slots.iter().enumerate() {
            if self.old_corner_of(f, k) != b.corner.index {
                continue;
            }
            let before = match *s {
                Slot::Old(_) => true,
                Slot::New(slot, _) => slot < b.slot,
            };
            if before {
                anchor = Some(k);
            }
        }
        let index = match anchor {
            Some(k) => k,
            None => slots.len() - 1,
        };
        BoundaryPoint {
            corner: Corner { face: f, index },
            slot: b.slot,
        }
    }

    /// Old corner a slot belongs to: old dart `i` opens corner `i`, new
    /// darts sit inside the corner they were inserted into.
    fn old_corner_of(&self, f: usize, k: usize) -> usize {
        let mut c = 0usize;
        let mut seen_old = false;
        for s in &self.layout[f][..=k] {
            if let Slot::Old(_) = s {
                if seen_old {
                    c += 1;
                }
                seen_old = true;
            }
        }
        c
    }
}
