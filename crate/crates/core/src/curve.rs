//! Curves and arcs on a [`CombSurface`], kept as reduced dart words on the
//! spine.
//!
//! The spine is a deformation retract of the surface, so a closed curve is
//! determined up to free homotopy by its cyclically reduced dart word, and an
//! arc with fixed boundary points by its reduced dart path. For simple closed
//! curves free homotopy agrees with isotopy, and for arcs homotopy rel
//! boundary agrees with isotopy rel boundary; a reduced word therefore is a
//! tight representative of the isotopy class.
//!
//! Minimal intersection numbers are counted from shared segments: wherever two
//! words run along a common path (possibly of length zero, possibly in
//! opposite directions) the strands enter on one pair of sides and leave on
//! another; they must cross exactly when the sides swap.

use indexmap::IndexMap;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::surface::{ccw_between, twin, BoundaryPoint, CombSurface, Dart, Dir};

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Closed,
    Arc,
}

/// A closed curve (cyclically reduced dart word) or an arc (reduced dart path
/// between two boundary points).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    darts: Vec<Dart>,
    ends: Option<(BoundaryPoint, BoundaryPoint)>,
}

impl Curve {
    /// A closed curve through the given darts (cyclically consecutive).
    pub fn closed(surf: &CombSurface, darts: Vec<Dart>) -> Result<Self> {
        let n = darts.len();
        for (k, &d) in darts.iter().enumerate() {
            if d >= surf.dart_count() {
                return Err(Error::InvalidCurve(format!("dart {d} does not exist")));
            }
            let next = darts[(k + 1) % n];
            if next < surf.dart_count() && surf.head(d) != surf.face_of(next) {
                return Err(Error::InvalidCurve(format!(
                    "darts {d} and {next} are not consecutive"
                )));
            }
        }
        Ok(Curve {
            darts: cyclic_reduce(free_reduce(darts)),
            ends: None,
        })
    }

    /// An arc from `start` to `end` following the given darts.
    pub fn arc(
        surf: &CombSurface,
        start: BoundaryPoint,
        darts: Vec<Dart>,
        end: BoundaryPoint,
    ) -> Result<Self> {
        if start == end {
            return Err(Error::CoincidentEndpoints);
        }
        for b in [start, end] {
            if !surf.is_valid_corner(b.corner) {
                return Err(Error::InvalidCurve(format!(
                    "boundary point {b:?} is not on the surface"
                )));
            }
        }
        let mut face = start.corner.face;
        for &d in &darts {
            if d >= surf.dart_count() {
                return Err(Error::InvalidCurve(format!("dart {d} does not exist")));
            }
            if surf.face_of(d) != face {
                return Err(Error::InvalidCurve(format!(
                    "dart {d} does not leave face {face}"
                )));
            }
            face = surf.head(d);
        }
        if face != end.corner.face {
            return Err(Error::InvalidCurve(format!(
                "path ends in face {face}, endpoint is in face {}",
                end.corner.face
            )));
        }
        Ok(Curve {
            darts: free_reduce(darts),
            ends: Some((start, end)),
        })
    }

    pub(crate) fn from_parts_unchecked(
        darts: Vec<Dart>,
        ends: Option<(BoundaryPoint, BoundaryPoint)>,
    ) -> Self {
        match ends {
            None => Curve {
                darts: cyclic_reduce(free_reduce(darts)),
                ends,
            },
            Some(_) => Curve {
                darts: free_reduce(darts),
                ends,
            },
        }
    }

    pub fn kind(&self) -> CurveKind {
        if self.ends.is_some() {
            CurveKind::Arc
        } else {
            CurveKind::Closed
        }
    }

    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn ends(&self) -> Option<(BoundaryPoint, BoundaryPoint)> {
        self.ends
    }

    /// Number of spine edges crossed, i.e. the crossing count with the
    /// arcs dual to all edges.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Null-homotopic closed curve.
    pub fn is_trivial_loop(&self) -> bool {
        self.is_closed() && self.darts.is_empty()
    }

    pub fn reversed(&self) -> Curve {
        Curve {
            darts: self.darts.iter().rev().map(|&d| twin(d)).collect(),
            ends: self.ends.map(|(a, b)| (b, a)),
        }
    }

    /// Same curve with its endpoints (if any) moved by `f`.
    pub fn map_ends(&self, f: impl Fn(BoundaryPoint) -> BoundaryPoint) -> Curve {
        Curve {
            darts: self.darts.clone(),
            ends: self.ends.map(|(a, b)| (f(a), f(b))),
        }
    }

    pub(crate) fn view<'a>(&'a self, surf: &'a CombSurface) -> View<'a> {
        View {
            surf,
            darts: &self.darts,
            ends: self.ends,
        }
    }

    /// Crossing count with the dual arc of each edge.
    pub fn edge_weights(&self, surf: &CombSurface) -> Vec<usize> {
        let mut w = vec![0; surf.edge_count()];
        for &d in &self.darts {
            w[d / 2] += 1;
        }
        w
    }
}

pub(crate) fn free_reduce(darts: Vec<Dart>) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::with_capacity(darts.len());
    for d in darts {
        if out.last() == Some(&twin(d)) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

pub(crate) fn cyclic_reduce(darts: Vec<Dart>) -> Vec<Dart> {
    let mut lo = 0;
    let mut hi = darts.len();
    while hi - lo >= 2 && darts[lo] == twin(darts[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    darts[lo..hi].to_vec()
}

/// Read-only walker over the visits of a curve to the faces of the spine.
/// Visit `k` sits between dart `k - 1` and dart `k`.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub surf: &'a CombSurface,
    pub darts: &'a [Dart],
    pub ends: Option<(BoundaryPoint, BoundaryPoint)>,
}

impl<'a> View<'a> {
    pub fn n(&self) -> usize {
        self.darts.len()
    }

    pub fn closed(&self) -> bool {
        self.ends.is_none()
    }

    pub fn visits(&self) -> usize {
        if self.closed() {
            self.darts.len()
        } else {
            self.darts.len() + 1
        }
    }

    #[inline]
    fn wrap(&self, k: usize) -> usize {
        if self.closed() {
            k % self.darts.len()
        } else {
            k
        }
    }

    /// Visit index `k + delta` (closed curves wrap; arcs do not).
    #[inline]
    pub fn step_back(&self, k: usize) -> usize {
        if self.closed() {
            (k + self.darts.len() - 1) % self.darts.len()
        } else {
            k - 1
        }
    }

    pub fn face(&self, k: usize) -> usize {
        match self.ends {
            None => self.surf.face_of(self.darts[self.wrap(k)]),
            Some((s, _)) => {
                if k < self.darts.len() {
                    self.surf.face_of(self.darts[k])
                } else if k == 0 {
                    s.corner.face
                } else {
                    self.surf.head(self.darts[k - 1])
                }
            }
        }
    }

    #[inline]
    pub fn out_dart(&self, k: usize) -> Option<Dart> {
        if self.closed() {
            Some(self.darts[self.wrap(k)])
        } else {
            self.darts.get(k).copied()
        }
    }

    #[inline]
    pub fn in_dart(&self, k: usize) -> Option<Dart> {
        if self.closed() {
            let n = self.darts.len();
            Some(twin(self.darts[(k % n + n - 1) % n]))
        } else if k == 0 {
            None
        } else {
            Some(twin(self.darts[k - 1]))
        }
    }

    #[inline]
    pub fn out_dir(&self, k: usize) -> Dir {
        match self.out_dart(k) {
            Some(d) => self.surf.dir_of(d),
            None => self.ends.unwrap().1.dir(),
        }
    }

    #[inline]
    pub fn in_dir(&self, k: usize) -> Dir {
        match self.in_dart(k) {
            Some(d) => self.surf.dir_of(d),
            None => self.ends.unwrap().0.dir(),
        }
    }
}

/// One transverse crossing between a curve `g` and a curve `c`, located at the
/// start of a maximal shared segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Visit of `g` where the shared segment starts.
    pub g_visit: usize,
    /// Visit of `c` (in `c`'s own direction when `!c_reversed`, in the
    /// reversed curve otherwise) where the segment starts.
    pub c_visit: usize,
    pub c_reversed: bool,
    /// Number of shared darts.
    pub shared: usize,
    /// `+1` when `g` crosses from the right of `c` to its left (w.r.t. the
    /// direction of `c` used, i.e. reversed when `c_reversed`).
    pub sign: i8,
}

fn crossing_pass(g: &View, c: &View, c_reversed: bool, allow_zero: bool, out: &mut Vec<Crossing>) {
    let surf = g.surf;
    let mut by_face: Vec<Vec<usize>> = vec![Vec::new(); surf.face_count()];
    for l in 0..c.visits() {
        by_face[c.face(l)].push(l);
    }
    let limit = g.n() + c.n() + 2;
    for k in 0..g.visits() {
        let gi = g.in_dir(k);
        for &l in &by_face[g.face(k)] {
            let ci = c.in_dir(l);
            if gi == ci {
                continue;
            }
            let mut m = 0;
            let mut parallel = false;
            loop {
                match (g.out_dart(k + m), c.out_dart(l + m)) {
                    (Some(a), Some(b)) if a == b => {
                        m += 1;
                        if m > limit {
                            parallel = true;
                            break;
                        }
                    }
                    _ => break,
                }
            }
            if parallel {
                continue;
            }
            let co = c.out_dir(l);
            if m == 0 {
                if !allow_zero {
                    continue;
                }
                let go = g.out_dir(k);
                if gi == co || go == ci {
                    continue;
                }
            }
            let (ke, le) = (k + m, l + m);
            let left_start = ccw_between(co, gi, ci);
            let left_end = ccw_between(c.out_dir(le), g.out_dir(ke), c.in_dir(le));
            if left_start != left_end {
                out.push(Crossing {
                    g_visit: k,
                    c_visit: l,
                    c_reversed,
                    shared: m,
                    sign: if left_start { -1 } else { 1 },
                });
            }
        }
    }
}

/// All crossings of `g` with `c` in minimal position.
pub fn crossings(surf: &CombSurface, g: &Curve, c: &Curve) -> Vec<Crossing> {
    let mut out = Vec::new();
    if (g.is_closed() && g.is_empty()) || (c.is_closed() && c.is_empty()) {
        return out;
    }
    let cr = c.reversed();
    crossing_pass(&g.view(surf), &c.view(surf), false, true, &mut out);
    crossing_pass(&g.view(surf), &cr.view(surf), true, false, &mut out);
    out
}

fn shares_endpoint(a: &Curve, b: &Curve) -> bool {
    match (a.ends, b.ends) {
        (Some((p, q)), Some((r, s))) => p == r || p == s || q == r || q == s,
        _ => false,
    }
}

/// Geometric minimal intersection number. For two arcs the endpoints must be
/// pairwise distinct.
pub fn imin(surf: &CombSurface, a: &Curve, b: &Curve) -> Result<usize> {
    if shares_endpoint(a, b) {
        return Err(Error::SharedEndpoint);
    }
    Ok(crossings(surf, a, b).len())
}

/// Number of self-crossings of a tight representative; zero iff simple.
pub fn self_intersections(surf: &CombSurface, c: &Curve) -> usize {
    crossings(surf, c, c).len() / 2
}

pub fn is_simple(surf: &CombSurface, c: &Curve) -> bool {
    self_intersections(surf, c) == 0
}

/// Left-to-right order of the strands of a simple curve along each edge.
///
/// `minor(dart, j)` is the counterclockwise rank, as seen from the face of
/// `dart`, of the strand formed by dart `j` of the curve among all strands
/// crossing that edge.
pub(crate) struct StrandOrder {
    /// rank of forward traversal `j` along the even dart of its edge
    pos_plus: Vec<usize>,
    count: Vec<usize>,
}

impl StrandOrder {
    pub fn new(surf: &CombSurface, c: &Curve) -> Self {
        let fwd = c.view(surf);
        let rev_curve = c.reversed();
        let rev = rev_curve.view(surf);
        let n = c.len();
        let mut per_edge: Vec<Vec<(bool, usize)>> = vec![Vec::new(); surf.edge_count()];
        for (j, &d) in c.darts().iter().enumerate() {
            if d % 2 == 0 {
                per_edge[d / 2].push((false, j));
            } else {
                per_edge[d / 2].push((true, n - 1 - j));
            }
        }
        let mut pos_plus = vec![0; n];
        let mut count = vec![0; surf.edge_count()];
        for (e, strands) in per_edge.iter_mut().enumerate() {
            strands.sort_by(|&(ra, ja), &(rb, jb)| {
                let va = if ra { &rev } else { &fwd };
                let vb = if rb { &rev } else { &fwd };
                compare_strands(va, ja, vb, jb).unwrap_or(Ordering::Equal)
            });
            count[e] = strands.len();
            for (rank, &(r, j)) in strands.iter().enumerate() {
                let jf = if r { n - 1 - j } else { j };
                pos_plus[jf] = rank;
            }
        }
        StrandOrder { pos_plus, count }
    }

    pub fn minor(&self, dart: Dart, j: usize) -> i64 {
        let p = self.pos_plus[j];
        if dart.is_multiple_of(2) {
            p as i64
        } else {
            (self.count[dart / 2] - 1 - p) as i64
        }
    }
}

/// Orders two strands running along the same dart: `Less` means `a` is to the
/// right of `b` with respect to the direction of travel. `None` if the two
/// strands never separate (parallel copies).
pub(crate) fn compare_strands(a: &View, ja: usize, b: &View, jb: usize) -> Option<Ordering> {
    let limit = a.n() + b.n() + 2;
    let (mut ka, mut kb) = (ja + 1, jb + 1);
    for _ in 0..limit {
        match (a.out_dart(ka), b.out_dart(kb)) {
            (Some(x), Some(y)) if x == y => {
                ka += 1;
                kb += 1;
            }
            _ => {
                let r = a.in_dir(ka);
                let (o1, o2) = (a.out_dir(ka), b.out_dir(kb));
                if o1 != o2 {
                    return Some(if ccw_between(r, o1, o2) {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    });
                }
                break;
            }
        }
    }
    let (mut ka, mut kb) = (ja, jb);
    for _ in 0..limit {
        match (a.in_dart(ka), b.in_dart(kb)) {
            (Some(x), Some(y)) if x == y => {
                ka = a.step_back(ka);
                kb = b.step_back(kb);
            }
            _ => {
                let r = a.out_dir(ka);
                let (i1, i2) = (a.in_dir(ka), b.in_dir(kb));
                if i1 != i2 {
                    return Some(if ccw_between(r, i2, i1) {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    });
                }
                break;
            }
        }
    }
    None
}

/// Reduced word in the cut-system alphabet. Letter `±(e + 1)` records crossing
/// the cut arc dual to the non-tree edge `e` along dart `2e` (`+`) or `2e + 1`
/// (`-`). Closed words are cyclically reduced and rotated to their
/// lexicographically least rotation.
#[derive(
    Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub struct ReducedWord {
    pub letters: Vec<i64>,
    pub kind: CurveKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ends: Option<(BoundaryPoint, BoundaryPoint)>,
}

impl ReducedWord {
    pub fn inverse(&self) -> ReducedWord {
        let letters: Vec<i64> = self.letters.iter().rev().map(|l| -l).collect();
        let letters = if self.kind == CurveKind::Closed {
            least_rotation(&letters)
        } else {
            letters
        };
        ReducedWord {
            letters,
            kind: self.kind,
            ends: self.ends.map(|(a, b)| (b, a)),
        }
    }
}

pub(crate) fn reduce_letters(word: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub(crate) fn cyclic_reduce_letters(mut w: Vec<i64>) -> Vec<i64> {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w.truncate(hi);
    w.drain(..lo);
    w
}

pub(crate) fn least_rotation(w: &[i64]) -> Vec<i64> {
    (0..w.len().max(1))
        .map(|r| {
            w[r.min(w.len())..]
                .iter()
                .chain(&w[..r.min(w.len())])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Cut-system letters: `Some(±(e+1))` for darts of non-tree edges.
pub fn cut_letter(tree: &[bool], d: Dart) -> Option<i64> {
    let e = d / 2;
    if tree[e] {
        None
    } else if d.is_multiple_of(2) {
        Some(e as i64 + 1)
    } else {
        Some(-(e as i64 + 1))
    }
}

/// Homotopy certificate: the word read off from crossings with the cut
/// system (arcs dual to the edges outside a spanning forest).
pub fn homotopy_word(surf: &CombSurface, c: &Curve) -> ReducedWord {
    let tree = surf.spanning_forest();
    homotopy_word_with(&tree, c)
}

pub(crate) fn homotopy_word_with(tree: &[bool], c: &Curve) -> ReducedWord {
    let letters = reduce_letters(c.darts().iter().filter_map(|&d| cut_letter(tree, d)));
    match c.ends() {
        None => ReducedWord {
            letters: least_rotation(&cyclic_reduce_letters(letters)),
            kind: CurveKind::Closed,
            ends: None,
        },
        Some(e) => ReducedWord {
            letters,
            kind: CurveKind::Arc,
            ends: Some(e),
        },
    }
}

/// Isotopy (rel boundary for arcs) of unoriented curves.
pub fn is_isotopic(surf: &CombSurface, a: &Curve, b: &Curve) -> Result<bool> {
    if a.kind() != b.kind() {
        return Err(Error::MixedKinds);
    }
    let wa = homotopy_word(surf, a);
    let wb = homotopy_word(surf, b);
    Ok(wa == wb || wa == wb.inverse())
}

/// Curves and arcs on one surface, by name, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NamedCurveSet {
    curves: IndexMap<String, Curve>,
}

impl NamedCurveSet {
    pub fn new() -> Self {
        NamedCurveSet::default()
    }

    pub fn insert(&mut self, name: &str, c: Curve) -> Result<()> {
        if self.curves.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.curves.insert(name.to_string(), c);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Curve> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.curves.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Curve)> {
        self.curves.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn map_curves(&self, f: impl Fn(&Curve) -> Curve) -> NamedCurveSet {
        NamedCurveSet {
            curves: self.curves.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    pub fn remove(&mut self, name: &str) -> Option<Curve> {
        self.curves.shift_remove(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// once-punctured torus: a = [0], b = [2], rotation [0, 2, 1, 3]
    fn torus() -> CombSurface {
        CombSurface::from_rotation(vec![vec![0, 2, 1, 3]]).unwrap()
    }

    fn cl(s: &CombSurface, w: &[Dart]) -> Curve {
        Curve::closed(s, w.to_vec()).unwrap()
    }

    #[test]
    fn reduction() {
        let s = torus();
        assert_eq!(cl(&s, &[0, 2, 3, 1]).darts(), &[] as &[Dart]);
        assert_eq!(cl(&s, &[1, 2, 0]).darts(), &[2]);
        assert!(cl(&s, &[0, 1]).is_trivial_loop());
    }

    #[test]
    fn core_intersections() {
        let s = torus();
        let a = cl(&s, &[0]);
        let b = cl(&s, &[2]);
        assert_eq!(imin(&s, &a, &b).unwrap(), 1);
        assert_eq!(imin(&s, &b, &a).unwrap(), 1);
        assert_eq!(imin(&s, &a, &a).unwrap(), 0);
        let ab = cl(&s, &[0, 2]);
        assert_eq!(imin(&s, &ab, &a).unwrap(), 1);
        assert_eq!(imin(&s, &ab, &b).unwrap(), 1);
        let aab = cl(&s, &[0, 0, 2]);
        assert_eq!(imin(&s, &aab, &b).unwrap(), 2);
        assert_eq!(imin(&s, &aab, &ab).unwrap(), 1);
    }

    #[test]
    fn simplicity() {
        let s = torus();
        for w in [&[0][..], &[0, 2], &[0, 0, 2], &[0, 2, 1, 3], &[0, 3]] {
            assert!(is_simple(&s, &cl(&s, w)), "{w:?}");
        }
        assert!(!is_simple(&s, &cl(&s, &[0, 0, 2, 2])));
        assert!(!is_simple(&s, &cl(&s, &[0, 2, 3])) || cl(&s, &[0, 2, 3]).darts() == [0]);
    }

    #[test]
    fn homotopy_words() {
        let s = torus();
        let a = cl(&s, &[0]);
        assert_eq!(homotopy_word(&s, &a).letters.len(), 1);
        assert!(homotopy_word(&s, &cl(&s, &[0, 1])).letters.is_empty());
        assert!(is_isotopic(&s, &a, &a.reversed()).unwrap());
        assert!(!is_isotopic(&s, &a, &cl(&s, &[2])).unwrap());
        assert!(is_isotopic(&s, &cl(&s, &[0, 2]), &cl(&s, &[2, 0])).unwrap());
    }

    #[test]
    fn arcs_and_endpoints() {
        let s = torus();
        // arc around dart 0, from corner 3 to corner 0
        let x = Curve::arc(
            &s,
            BoundaryPoint::new(0, 3, 10),
            vec![],
            BoundaryPoint::new(0, 0, -10),
        )
        .unwrap();
        let a = cl(&s, &[0]);
        let b = cl(&s, &[2]);
        assert_eq!(imin(&s, &x, &a).unwrap(), 1);
        assert_eq!(imin(&s, &x, &b).unwrap(), 0);
        let y = Curve::arc(
            &s,
            BoundaryPoint::new(0, 3, 10),
            vec![2],
            BoundaryPoint::new(0, 0, 5),
        )
        .unwrap();
        assert_eq!(imin(&s, &x, &y), Err(Error::SharedEndpoint));
        assert!(matches!(is_isotopic(&s, &x, &a), Err(Error::MixedKinds)));
        assert!(matches!(
            Curve::arc(
                &s,
                BoundaryPoint::new(0, 0, 0),
                vec![],
                BoundaryPoint::new(0, 0, 0)
            ),
            Err(Error::CoincidentEndpoints)
        ));
    }

    #[test]
    fn bad_curves_rejected() {
        let s = CombSurface::from_rotation(vec![vec![0], vec![1]]).unwrap();
        assert!(Curve::closed(&s, vec![0, 0]).is_err());
        assert!(Curve::arc(
            &s,
            BoundaryPoint::new(0, 0, 0),
            vec![0],
            BoundaryPoint::new(0, 0, 1)
        )
        .is_err());
    }
}
