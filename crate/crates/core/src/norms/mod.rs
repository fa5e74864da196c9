//! Gowers-type seminorms over `P` and `Q`, the Cauchy-Schwarz-Gowers
//! inequality, and the spectral positivity test.

mod gram;

pub use gram::{gram_matrix, transitivity_test, GramMatrix, TransitivityVerdict, GRAM_MAX_POINTS};

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::unionfind::UnionFind;
use crate::structures::{ParallelepipedStructure, ParallelogramStructure, Quad};

/// `f: X → C`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFunction {
    values: Vec<Complex64>,
}

impl ComplexFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("function on an empty set".into()));
        }
        Ok(ComplexFunction { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn constant(n: usize, c: Complex64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn indicator(n: usize, a: usize) -> Result<Self> {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        *v.get_mut(a).ok_or_else(|| Error::Invalid(format!("point {a} outside 0..{n}")))? = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn conj(&self) -> Self {
        ComplexFunction { values: self.values.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexFunction { values: self.values.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Dimension("functions of different lengths".into()));
        }
        Ok(ComplexFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn l1(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum()
    }

    /// Integer values, when every value is a real integer in `[-1, 1]`.
    pub fn as_small_integers(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|z| (z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() <= 1.0).then_some(z.re as i64))
            .collect()
    }
}

/// Fixed-order pairwise summation: blocks of 64 terms summed in order,
/// block sums merged as a binary counter.
#[derive(Clone, Debug, Default)]
pub struct PairwiseSum {
    block: Complex64,
    filled: usize,
    stack: Vec<(u32, Complex64)>,
}

impl PairwiseSum {
    const BLOCK: usize = 64;

    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.block += z;
        self.filled += 1;
        if self.filled == Self::BLOCK {
            self.push(0, self.block);
            self.block = Complex64::new(0.0, 0.0);
            self.filled = 0;
        }
    }

    fn push(&mut self, mut level: u32, mut z: Complex64) {
        while let Some(&(l, w)) = self.stack.last() {
            if l != level {
                break;
            }
            self.stack.pop();
            z += w;
            level += 1;
        }
        self.stack.push((level, z));
    }

    pub fn total(&self) -> Complex64 {
        let mut t = self.block;
        for &(_, w) in self.stack.iter().rev() {
            t += w;
        }
        t
    }
}

/// A norm sum and its root.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct NormValue {
    pub sum_re: f64,
    pub sum_im: f64,
    pub norm: f64,
    /// Whether the sum was computed in exact integer arithmetic.
    pub exact: bool,
}

impl NormValue {
    pub fn sum(&self) -> Complex64 {
        Complex64::new(self.sum_re, self.sum_im)
    }
}

pub const POSITIVITY_TOL: f64 = 1e-9;

fn rooted(sum: Complex64, l1: f64, k: u32, exact: bool) -> Result<NormValue> {
    let tol = POSITIVITY_TOL * l1.powi(k as i32);
    if sum.im.abs() > tol || sum.re < -tol {
        return Err(Error::Positivity(format!(
            "sum {} + {}i is not a nonnegative real (tolerance {tol:e})",
            sum.re, sum.im
        )));
    }
    let r = sum.re.max(0.0);
    Ok(NormValue { sum_re: sum.re, sum_im: sum.im, norm: r.powf(1.0 / k as f64), exact })
}

fn check_len(f: &ComplexFunction, n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::Dimension(format!("function has {} values, ground set has {n}", f.len())));
    }
    Ok(())
}

/// `Σ_{x∈P} f00(x00) conj f01(x01) conj f10(x10) f11(x11)`.
fn grid_sum(fs: [&ComplexFunction; 4], p: &ParallelogramStructure) -> Complex64 {
    let n = p.size();
    let model = p.model();
    let mut acc = PairwiseSum::new();
    let mut w = Vec::new();
    for a in 0..n {
        let fa = fs[0].get(a);
        for b in 0..n {
            let fab = fa * fs[1].get(b).conj();
            for c in 0..n {
                let fabc = fab * fs[2].get(c).conj();
                w.clear();
                model.quad_witnesses(a, b, c, &mut w);
                for &d in &w {
                    acc.add(fabc * fs[3].get(d));
                }
            }
        }
    }
    acc.total()
}

fn grid_sum_int(v: &[i64], p: &ParallelogramStructure) -> i128 {
    let n = p.size();
    let model = p.model();
    let mut acc = 0i128;
    let mut w = Vec::new();
    for a in 0..n {
        if v[a] == 0 {
            continue;
        }
        for b in 0..n {
            let ab = v[a] * v[b];
            if ab == 0 {
                continue;
            }
            for c in 0..n {
                let abc = ab * v[c];
                if abc == 0 {
                    continue;
                }
                w.clear();
                model.quad_witnesses(a, b, c, &mut w);
                acc += w.iter().map(|&d| (abc * v[d]) as i128).sum::<i128>();
            }
        }
    }
    acc
}

/// `‖f‖_P`, the fourth root of the sum over `P`.
pub fn u2(f: &ComplexFunction, p: &ParallelogramStructure) -> Result<NormValue> {
    p.ensure_verified()?;
    check_len(f, p.size())?;
    if let Some(v) = f.as_small_integers() {
        let s = grid_sum_int(&v, p);
        return rooted(Complex64::new(s as f64, 0.0), f.l1(), 4, true);
    }
    rooted(grid_sum([f, f, f, f], p), f.l1(), 4, false)
}

pub const U3_MAX_OCTS: u128 = 1 << 27;

fn oct_guard(s: &ParallelepipedStructure) -> Result<()> {
    let est = s.estimated_oct_count();
    if est > U3_MAX_OCTS {
        return Err(Error::Guard { what: "oct enumeration", size: est, limit: U3_MAX_OCTS });
    }
    Ok(())
}

/// `Σ_{x∈Q} Π_ε C^{|ε|} f(x_ε)` through the closing parameterization.
fn cube_sum(f: &ComplexFunction, s: &ParallelepipedStructure) -> Complex64 {
    let g: Vec<Complex64> = f.values().to_vec();
    let gc: Vec<Complex64> = g.iter().map(|z| z.conj()).collect();
    let mut acc = PairwiseSum::new();
    crate::structures::for_each_oct_parts(s, &mut |seven, ws| {
        // signs + - - + - + +, last vertex conjugated
        let p = g[seven[0]] * gc[seven[1]] * gc[seven[2]] * g[seven[3]] * gc[seven[4]] * g[seven[5]] * g[seven[6]];
        for &x in ws {
            acc.add(p * gc[x]);
        }
    });
    acc.total()
}

fn cube_sum_int(v: &[i64], s: &ParallelepipedStructure) -> i128 {
    let mut acc = 0i128;
    crate::structures::for_each_oct_parts(s, &mut |seven, ws| {
        let p: i64 = seven.iter().map(|&x| v[x]).product();
        if p != 0 {
            acc += ws.iter().map(|&x| (p * v[x]) as i128).sum::<i128>();
        }
    });
    acc
}

/// `‖f‖_Q`, the eighth root of the sum over `Q`.
pub fn u3(f: &ComplexFunction, s: &ParallelepipedStructure) -> Result<NormValue> {
    s.ensure_verified()?;
    check_len(f, s.size())?;
    oct_guard(s)?;
    if let Some(v) = f.as_small_integers() {
        let t = cube_sum_int(&v, s);
        return rooted(Complex64::new(t as f64, 0.0), f.l1(), 8, true);
    }
    rooted(cube_sum(f, s), f.l1(), 8, false)
}

/// The `≈` classes of `P`: quads in lexicographic order and a class id for each.
pub fn equivalence_classes(s: &ParallelepipedStructure) -> Result<(Vec<Quad>, Vec<usize>)> {
    oct_guard(s)?;
    let quads = s.grid().quads();
    let index: HashMap<Quad, usize> = quads.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut uf = UnionFind::new(quads.len());
    let mut missing = false;
    s.for_each_oct(|o| {
        let (a, b) = o.split();
        match (index.get(&a), index.get(&b)) {
            (Some(&i), Some(&j)) => {
                uf.union(i, j);
            }
            _ => missing = true,
        }
    });
    if missing {
        return Err(Error::Inconsistent("an oct has a face outside P".into()));
    }
    let mut ids = HashMap::new();
    let classes = (0..quads.len())
        .map(|i| {
            let r = uf.find(i);
            let k = ids.len();
            *ids.entry(r).or_insert(k)
        })
        .collect();
    Ok((quads, classes))
}

/// `u3(f)^8` as `Σ_classes |Σ_{x' in class} f(x00) conj f(x01) conj f(x10) f(x11)|²`.
pub fn u3_grouped(f: &ComplexFunction, s: &ParallelepipedStructure) -> Result<f64> {
    s.ensure_verified()?;
    check_len(f, s.size())?;
    let (quads, classes) = equivalence_classes(s)?;
    let m = classes.iter().max().map_or(0, |&c| c + 1);
    let mut sums = vec![PairwiseSum::new(); m];
    for (q, &c) in quads.iter().zip(&classes) {
        let [a, b, c2, d] = q.0;
        sums[c].add(f.get(a) * f.get(b).conj() * f.get(c2).conj() * f.get(d));
    }
    let mut acc = PairwiseSum::new();
    for s in &sums {
        acc.add(Complex64::new(s.total().norm_sqr(), 0.0));
    }
    Ok(acc.total().re)
}

/// `(|Σ_P f00 conj f01 conj f10 f11|, Π ‖f_ε‖_P)`.
pub fn csg_check(fs: [&ComplexFunction; 4], p: &ParallelogramStructure) -> Result<(f64, f64)> {
    p.ensure_verified()?;
    for f in fs {
        check_len(f, p.size())?;
    }
    let lhs = grid_sum(fs, p).norm();
    let mut rhs = 1.0;
    for f in fs {
        rhs *= u2(f, p)?.norm;
    }
    Ok((lhs, rhs))
}

/// `((1/N) Σ_ξ |F(ξ)|⁴)^(1/4)` with `F(ξ) = Σ_x f(x) e^(2πi xξ/N)`, for
/// `P = P_G` on a cyclic group of order `N = |f|`.
pub fn dft_oracle_u2(f: &ComplexFunction, p: &ParallelogramStructure) -> Result<f64> {
    let n = f.len();
    check_len(f, p.size())?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if p.witnesses(a, b, c) != [(b + c + n - a) % n] {
                    return Err(Error::Invalid("structure is not P_G on a cyclic group in its standard labelling".into()));
                }
            }
        }
    }
    let mut acc = PairwiseSum::new();
    for xi in 0..n {
        let mut fx = PairwiseSum::new();
        for x in 0..n {
            let theta = 2.0 * std::f64::consts::PI * ((x * xi) % n) as f64 / n as f64;
            fx.add(f.get(x) * Complex64::from_polar(1.0, theta));
        }
        let m = fx.total().norm_sqr();
        acc.add(Complex64::new(m * m, 0.0));
    }
    Ok((acc.total().re / n as f64).powf(0.25))
}

/// A function on the quads of `P`, aligned with `P` in lexicographic order.
#[derive(Clone, Debug)]
pub struct QuadFunction {
    pub quads: Vec<Quad>,
    pub values: Vec<Complex64>,
}

impl QuadFunction {
    pub fn new(s: &ParallelepipedStructure, values: Vec<Complex64>) -> Result<Self> {
        let quads = s.grid().quads();
        if quads.len() != values.len() {
            return Err(Error::Dimension(format!("{} values for {} quads", values.len(), quads.len())));
        }
        Ok(QuadFunction { quads, values })
    }

    pub fn get(&self, q: &Quad) -> Option<Complex64> {
        self.quads.binary_search(q).ok().map(|i| self.values[i])
    }
}

/// `Σ_{x∈Q} F(x') conj F(x'')` and the same sum grouped by `≈` classes.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PositivityValue {
    pub sum_re: f64,
    pub sum_im: f64,
    pub grouped: f64,
}

pub fn q_positivity_check(s: &ParallelepipedStructure, f: &QuadFunction) -> Result<PositivityValue> {
    s.ensure_verified()?;
    let (quads, classes) = equivalence_classes(s)?;
    if quads != f.quads {
        return Err(Error::Dimension("function is not aligned with P".into()));
    }
    let mut acc = PairwiseSum::new();
    let mut bad = false;
    s.for_each_oct(|o| {
        let (a, b) = o.split();
        match (f.get(&a), f.get(&b)) {
            (Some(x), Some(y)) => acc.add(x * y.conj()),
            _ => bad = true,
        }
    });
    if bad {
        return Err(Error::Inconsistent("an oct has a face outside P".into()));
    }
    let m = classes.iter().max().map_or(0, |&c| c + 1);
    let mut sums = vec![Complex64::new(0.0, 0.0); m];
    for (v, &c) in f.values.iter().zip(&classes) {
        sums[c] += v;
    }
    let grouped: f64 = sums.iter().map(|z| z.norm_sqr()).sum();
    let total = acc.total();
    let l1: f64 = f.values.iter().map(|z| z.norm()).sum();
    let tol = POSITIVITY_TOL * l1 * l1;
    if total.im.abs() > tol.max(POSITIVITY_TOL) || total.re < -tol.max(POSITIVITY_TOL) {
        return Err(Error::Positivity(format!("positivity sum {} + {}i", total.re, total.im)));
    }
    Ok(PositivityValue { sum_re: total.re, sum_im: total.im, grouped })
}
