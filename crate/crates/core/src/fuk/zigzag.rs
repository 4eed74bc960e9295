use serde::Serialize;

use crate::error::{Error, Result};
use crate::plumbing::PlumbingGraph;

/// Basis element of a zigzag algebra, read as a morphism `P_source → P_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Basis {
    /// Identity of `P_i`.
    E(usize),
    /// Loop at `i`: the path `i → j → i` for any neighbour `j`.
    L(usize),
    /// Arrow along an edge, `P_i → P_j`.
    P(usize, usize),
}

impl Basis {
    pub fn source(self) -> usize {
        match self {
            Basis::E(i) | Basis::L(i) | Basis::P(i, _) => i,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Basis::E(i) | Basis::L(i) => i,
            Basis::P(_, j) => j,
        }
    }
}

/// An element of the algebra: a set of basis indices (coefficients in F2).
pub type Elem = Vec<usize>;

/// Zigzag algebra of a tree over F2, without gradings.
#[derive(Clone, Debug)]
pub struct ZigzagAlgebra {
    names: Vec<String>,
    basis: Vec<Basis>,
    /// `table[a][b]` = product "a then b".
    table: Vec<Vec<Option<usize>>>,
    /// Basis indices of `hom(P_i, P_j)`.
    homs: Vec<Vec<Vec<usize>>>,
    fingerprint: u64,
}

impl ZigzagAlgebra {
    pub fn from_tree(g: &PlumbingGraph) -> Result<Self> {
        if g.vertices().is_empty() {
            return Err(Error::NotTree("no vertices".into()));
        }
        if !g.is_tree() {
            return Err(Error::NotTree(
                "zigzag algebras are only built for trees".into(),
            ));
        }
        let n = g.vertices().len();
        let mut basis: Vec<Basis> = (0..n).map(Basis::E).chain((0..n).map(Basis::L)).collect();
        for e in g.edges() {
            let [u, v] = e.ends;
            basis.push(Basis::P(u, v));
            basis.push(Basis::P(v, u));
        }
        let index = |b: Basis| basis.iter().position(|&x| x == b);
        let mut table = vec![vec![None; basis.len()]; basis.len()];
        for (ia, &a) in basis.iter().enumerate() {
            for (ib, &b) in basis.iter().enumerate() {
                if a.target() != b.source() {
                    continue;
                }
                let prod = match (a, b) {
                    (Basis::E(_), _) => Some(b),
                    (_, Basis::E(_)) => Some(a),
                    (Basis::P(i, j), Basis::P(j2, k)) if j == j2 && i == k => Some(Basis::L(i)),
                    _ => None,
                };
                table[ia][ib] = prod.map(|p| index(p).expect("product is a basis element"));
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (i, b) in basis.iter().enumerate() {
            homs[b.source()][b.target()].push(i);
        }
        let fingerprint = {
            let mut h: u64 = 0xcbf2_9ce4_8422_2325;
            for b in &basis {
                for x in [
                    b.source() as u64,
                    b.target() as u64,
                    matches!(b, Basis::L(_)) as u64,
                ] {
                    h = (h ^ x).wrapping_mul(0x100_0000_01b3);
                }
            }
            h
        };
        let alg = ZigzagAlgebra {
            names: g.vertices().to_vec(),
            basis,
            table,
            homs,
            fingerprint,
        };
        alg.check_associative()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.basis.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let left = self.table[a][b].and_then(|ab| self.table[ab][c]);
                    let right = self.table[b][c].and_then(|bc| self.table[a][bc]);
                    if left != right {
                        return Err(Error::Invariant(format!(
                            "multiplication not associative on {a},{b},{c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn basis(&self, i: usize) -> Basis {
        self.basis[i]
    }

    pub fn hom(&self, i: usize, j: usize) -> &[usize] {
        &self.homs[i][j]
    }

    pub fn identity(&self, i: usize) -> usize {
        i
    }

    pub(crate) fn same_as(&self, other: &ZigzagAlgebra) -> bool {
        self.fingerprint == other.fingerprint
            && self.names == other.names
            && self.basis == other.basis
    }

    /// Product "a then b" of basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    /// Product "x then y" of elements.
    pub fn mul(&self, x: &[usize], y: &[usize]) -> Elem {
        let mut out: Vec<usize> = Vec::new();
        for &a in x {
            for &b in y {
                if let Some(p) = self.table[a][b] {
                    toggle(&mut out, p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `e + a·l` is invertible; nothing else in a hom space between
    /// projectives is.
    pub fn is_unit(&self, x: &[usize]) -> bool {
        x.iter().any(|&b| matches!(self.basis[b], Basis::E(_)))
    }

    pub fn basis_name(&self, b: usize) -> String {
        match self.basis[b] {
            Basis::E(i) => format!("e_{}", self.names[i]),
            Basis::L(i) => format!("l_{}", self.names[i]),
            Basis::P(i, j) => format!("p_{}{}", self.names[i], self.names[j]),
        }
    }
}

pub(crate) fn toggle(v: &mut Vec<usize>, x: usize) {
    match v.iter().position(|&y| y == x) {
        Some(k) => {
            v.swap_remove(k);
        }
        None => v.push(x),
    }
}

pub(crate) fn add(x: &[usize], y: &[usize]) -> Elem {
    let mut out = x.to_vec();
    for &b in y {
        toggle(&mut out, b);
    }
    out.sort_unstable();
    out
}
