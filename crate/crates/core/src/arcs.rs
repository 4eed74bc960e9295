//! Arc systems: filling systems, collar detectors, parallel copies and
//! handle attachment along an arc.

use crate::curve::{imin, Curve, NamedCurveSet};
use crate::error::{Error, Result};
use crate::surface::{twin, BoundaryPoint, CombSurface, Corner};

/// Slot spacing used for arc endpoints created here. Later constructions
/// place new points between existing ones by halving gaps.
pub const SLOT_SPACING: i64 = 1 << 24;

/// Arc around dart `d` inside its face: it cuts the band of `d`'s edge.
fn dual_arc(surf: &CombSurface, d: usize) -> Curve {
    let f = surf.face_of(d);
    let p = surf.pos_of(d);
    let deg = surf.degree(f);
    let start = BoundaryPoint::new(f, (p + deg - 1) % deg, SLOT_SPACING);
    let end = BoundaryPoint::new(f, p, -SLOT_SPACING);
    Curve::arc(surf, start, vec![], end).expect("dual arc of an existing dart is valid")
}

/// Pairwise disjoint arcs, one across each edge outside a spanning forest of
/// the spine, named `f1, f2, …`. Cutting along them leaves only discs.
pub fn filling_arc_system(surf: &CombSurface) -> Result<NamedCurveSet> {
    if surf.boundary_components().is_empty() {
        return Err(Error::NoBoundary);
    }
    let tree = surf.spanning_forest();
    let cut: Vec<usize> = (0..surf.edge_count()).filter(|&e| !tree[e]).collect();
    let mut set = NamedCurveSet::new();
    for (k, &e) in cut.iter().enumerate() {
        set.insert(&format!("f{}", k + 1), dual_arc(surf, 2 * e))?;
    }
    if surf.cut_edges(&cut).iter().any(|&chi| chi != 1) {
        return Err(Error::Invariant(
            "filling system leaves a non-disc piece".into(),
        ));
    }
    Ok(set)
}

fn occupied_in(corner: Corner, points: &[BoundaryPoint]) -> Vec<i64> {
    let mut v: Vec<i64> = points
        .iter()
        .filter(|b| b.corner == corner)
        .map(|b| b.slot)
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Largest `eps` such that `(slot - eps, slot + eps)` contains no other
/// occupied slot; the interval is shrunk to a third of the nearest gap.
fn free_radius(slot: i64, taken: &[i64]) -> i64 {
    let gap = taken
        .iter()
        .filter(|&&s| s != slot)
        .map(|&s| (s - slot).abs())
        .min()
        .unwrap_or(3 * SLOT_SPACING);
    gap / 3
}

fn endpoints(curves: &[&Curve]) -> Vec<BoundaryPoint> {
    curves
        .iter()
        .filter_map(|c| c.ends())
        .flat_map(|(p, q)| [p, q])
        .collect()
}

/// A boundary-parallel arc in a collar of the start point of `a`, crossing `a`
/// once and avoiding `avoid`.
pub fn detector_arc(surf: &CombSurface, a: &Curve, avoid: Option<&Curve>) -> Result<Curve> {
    let (p, _) = a.ends().ok_or_else(|| Error::ExpectedArc("a".into()))?;
    if let Some(b) = avoid {
        if b.is_closed() {
            return Err(Error::ExpectedArc("avoid".into()));
        }
        if imin(surf, a, b)? != 0 {
            return Err(Error::InvalidCurve("the arc to avoid meets the arc".into()));
        }
    }
    let mut others = vec![a];
    others.extend(avoid);
    let eps = free_radius(p.slot, &occupied_in(p.corner, &endpoints(&others)));
    if eps == 0 {
        return Err(Error::InvalidSurface(
            "no collar room next to the arc endpoint".into(),
        ));
    }
    let c = Curve::arc(
        surf,
        BoundaryPoint {
            corner: p.corner,
            slot: p.slot - eps,
        },
        vec![],
        BoundaryPoint {
            corner: p.corner,
            slot: p.slot + eps,
        },
    )?;
    let hits_a = imin(surf, a, &c)?;
    let hits_avoid = match avoid {
        Some(b) => imin(surf, b, &c)?,
        None => 0,
    };
    if hits_a != 1 || hits_avoid != 0 {
        return Err(Error::Invariant(format!(
            "detector meets a {hits_a} times and avoid {hits_avoid} times"
        )));
    }
    Ok(c)
}

/// The two boundary-parallel copies of `a` bounding a thin strip around it,
/// with endpoints kept clear of every point in `occupied`.
pub fn parallel_copies(
    surf: &CombSurface,
    a: &Curve,
    occupied: &[BoundaryPoint],
) -> Result<(Curve, Curve)> {
    let (p, q) = a.ends().ok_or_else(|| Error::ExpectedArc("a".into()))?;
    let mut pts = occupied.to_vec();
    pts.extend([p, q]);
    let dp = free_radius(p.slot, &occupied_in(p.corner, &pts));
    let dq = free_radius(q.slot, &occupied_in(q.corner, &pts));
    if dp == 0 || dq == 0 {
        return Err(Error::InvalidSurface("no room for a parallel copy".into()));
    }
    let mut found = Vec::new();
    for (sp, sq) in [(-1, 1), (1, -1), (-1, -1), (1, 1)] {
        let c = Curve::arc(
            surf,
            BoundaryPoint {
                corner: p.corner,
                slot: p.slot + sp * dp,
            },
            a.darts().to_vec(),
            BoundaryPoint {
                corner: q.corner,
                slot: q.slot + sq * dq,
            },
        )?;
        if imin(surf, a, &c)? == 0 {
            found.push(c);
        }
    }
    match <[Curve; 2]>::try_from(found) {
        Ok([c1, c2]) => Ok((c1, c2)),
        Err(v) => Err(Error::Invariant(format!(
            "found {} disjoint parallel copies",
            v.len()
        ))),
    }
}

/// Result of attaching a 1-handle along an arc.
#[derive(Clone, Debug)]
pub struct HandleAttachment {
    pub surface: CombSurface,
    /// All input curves carried over, plus the new closed curve.
    pub curves: NamedCurveSet,
    pub closed_name: String,
}

/// Attaches a 1-handle with feet at the endpoints of the arc `name` and closes
/// the arc up through the handle. The new curve is called `name` + `"'"`.
pub fn attach_handle(
    surf: &CombSurface,
    curves: &NamedCurveSet,
    name: &str,
) -> Result<HandleAttachment> {
    let a = curves.get(name)?;
    let (p, q) = a
        .ends()
        .ok_or_else(|| Error::ExpectedArc(name.to_string()))?;
    let (surface, hp, remap) = surf.attach_handle(p, q)?;
    let mut out = NamedCurveSet::new();
    for (n, c) in curves.iter() {
        let moved = c.map_ends(|b| remap.map(b));
        out.insert(
            n,
            Curve::from_parts_unchecked(moved.darts().to_vec(), moved.ends()),
        )?;
    }
    let mut darts = a.darts().to_vec();
    darts.push(twin(hp));
    let closed = Curve::closed(&surface, darts)?;
    let closed_name = format!("{name}'");
    out.insert(&closed_name, closed)?;
    Ok(HandleAttachment {
        surface,
        curves: out,
        closed_name,
    })
}
