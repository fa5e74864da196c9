use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::Quad;

/// `M[(x0,x1),(x2,x3)] = 1` iff `(x0,x1,x2,x3) ∈ P`, pairs indexed `x0·n + x1`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub n: usize,
    entries: Vec<u8>,
    pub trace: u64,
    pub trace_sq: u64,
}

pub const GRAM_MAX_POINTS: usize = 16;

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.dim() + j]
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.get(i, j) as f64)
    }

    /// `M² = n·M` over the integers.
    pub fn satisfies_square_identity(&self) -> bool {
        let d = self.dim();
        let rows: Vec<Vec<usize>> = (0..d).map(|i| (0..d).filter(|&k| self.get(i, k) == 1).collect()).collect();
        for i in 0..d {
            for j in 0..d {
                let sq = rows[i].iter().filter(|&&k| self.get(k, j) == 1).count() as u64;
                if sq != self.n as u64 * self.get(i, j) as u64 {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds `M` for a candidate quad set that is reflexive, symmetric and
/// closes uniquely; transitivity of `∼` is not required.
pub fn gram_matrix(n: usize, quads: &[Quad]) -> Result<GramMatrix> {
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if n > GRAM_MAX_POINTS {
        return Err(Error::Guard { what: "gram matrix points", size: n as u128, limit: GRAM_MAX_POINTS as u128 });
    }
    let d = n * n;
    let mut entries = vec![0u8; d * d];
    let idx = |a: usize, b: usize| a * n + b;
    for q in quads {
        if q.max_index() >= n {
            return Err(Error::Invalid(format!("quad {:?} has an index >= {n}", q.0)));
        }
        let [a, b, c, e] = q.0;
        entries[idx(a, b) * d + idx(c, e)] = 1;
    }
    let has = |a: usize, b: usize, c: usize, e: usize| entries[idx(a, b) * d + idx(c, e)] == 1;
    if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| !has(a, b, a, b)) {
        return Err(Error::Invalid(format!("reflexivity fails at ({a},{b},{a},{b})")));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = (0..n).filter(|&e| has(a, b, c, e)).count();
                if w != 1 {
                    return Err(Error::Invalid(format!("closing of ({a},{b},{c}) has {w} witnesses, not 1")));
                }
                for e in 0..n {
                    if has(a, b, c, e) && !has(a, c, b, e) {
                        return Err(Error::Invalid(format!("symmetry fails at ({a},{b},{c},{e})")));
                    }
                    if has(a, b, c, e) != has(c, e, a, b) {
                        return Err(Error::Invalid(format!("M is not symmetric at ({a},{b}),({c},{e})")));
                    }
                }
            }
        }
    }
    let trace = (0..d).map(|i| entries[i * d + i] as u64).sum();
    // M symmetric 0/1: trace(M²) = number of ones
    let trace_sq = entries.iter().map(|&x| x as u64).sum();
    Ok(GramMatrix { n, entries, trace, trace_sq })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub enum TransitivityVerdict {
    /// `M` is positive semidefinite, and then `M² = n·M`.
    TransitiveForced { min_eigenvalue: f64 },
    PositivityFails { eigenvalue: f64 },
}

/// The positivity gate: a negative eigenvalue below `-1e-8·n` fails; a PSD
/// matrix must satisfy `M² = n·M` exactly.
pub fn transitivity_test(m: &GramMatrix) -> Result<TransitivityVerdict> {
    let eig = SymmetricEigen::new(m.to_f64());
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-8 * m.n as f64 {
        return Ok(TransitivityVerdict::PositivityFails { eigenvalue: min });
    }
    if !m.satisfies_square_identity() {
        return Err(Error::Inconsistent("M is positive semidefinite but M² ≠ n·M".into()));
    }
    Ok(TransitivityVerdict::TransitiveForced { min_eigenvalue: min })
}
