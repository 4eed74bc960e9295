use serde::Serialize;

use super::complex::{hf_dim, twist_word_complex, TwComplex};
use super::zigzag::ZigzagAlgebra;
use crate::curve::{imin, NamedCurveSet};
use crate::error::Result;
use crate::plumbing::{build_plumbing, PlumbingGraph};
use crate::surface::CombSurface;
use crate::twist::{apply_word, TwistWord};

/// Floer dimension upstairs against minimal intersection downstairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub up: usize,
    pub down: usize,
    pub up_ge_down: bool,
    pub same_parity: bool,
    pub low_values_agree: bool,
}

impl Comparison {
    pub fn new(up: usize, down: usize) -> Self {
        Comparison {
            up,
            down,
            up_ge_down: up >= down,
            same_parity: up % 2 == down % 2,
            low_values_agree: up > 1 || up == down,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.up_ge_down && self.same_parity && self.low_values_agree
    }
}

/// Both models of one tree plumbing.
#[derive(Clone, Debug)]
pub struct DualModel {
    pub graph: PlumbingGraph,
    pub algebra: ZigzagAlgebra,
    pub surface: CombSurface,
    pub cores: NamedCurveSet,
}

impl DualModel {
    pub fn new(g: &PlumbingGraph) -> Result<Self> {
        let algebra = ZigzagAlgebra::from_tree(g)?;
        let (surface, cores) = build_plumbing(g)?;
        Ok(DualModel {
            graph: g.clone(),
            algebra,
            surface,
            cores,
        })
    }

    /// Compares `hf(w P_i, P_j)` with `imin(w v_i, v_j)`.
    pub fn compare(&self, w: &TwistWord, i: &str, j: &str) -> Result<Comparison> {
        let x = twist_word_complex(&self.algebra, w, i)?;
        let up = hf_dim(
            &self.algebra,
            &x,
            &TwComplex::vertex(self.algebra.vertex(j)?),
        );
        let moved = apply_word(&self.surface, &self.cores, w, self.cores.get(i)?)?;
        let down = imin(&self.surface, &moved, self.cores.get(j)?)?;
        Ok(Comparison::new(up, down))
    }
}

/// One-shot form of [`DualModel::compare`].
pub fn ss_compare(g: &PlumbingGraph, w: &TwistWord, i: &str, j: &str) -> Result<Comparison> {
    DualModel::new(g)?.compare(w, i, j)
}
