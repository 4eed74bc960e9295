//! Twisted complexes over ungraded zigzag algebras of trees, with
//! coefficients in the two-element field, and the comparison of their Floer
//! dimensions with minimal intersection numbers on the plumbing surface.

mod compare;
mod complex;
mod f2;
mod zigzag;

pub use compare::{ss_compare, Comparison, DualModel};
pub use complex::{hf_dim, hf_dim_checked, twist_word_complex, ComplexJson, TwComplex};
pub use zigzag::{Basis, Elem, ZigzagAlgebra};
