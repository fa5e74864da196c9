use std::sync::Arc;

use crate::algebra::group::is_prime;
use crate::algebra::{FiniteGroup, Subgroup};
use crate::analysis::base_group;
use crate::catalog::abelian_structure;
use crate::error::{Error, Result};
use crate::structures::{Certificate, CubeModel, GridModel, GroundSet, Oct, ParallelepipedStructure, Quad};

/// `(P ∩ Y^[2], Q ∩ Y^[3])` for `Y ⊆ X`.
#[derive(Debug)]
pub struct RestrictedModel {
    inner: Arc<dyn CubeModel>,
    points: Vec<usize>,
    index_of: Vec<Option<usize>>,
    cert: Certificate,
}

impl RestrictedModel {
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    fn push_mapped(&self, w: &[usize], out: &mut Vec<usize>) {
        // w is ascending and the map is monotone
        out.extend(w.iter().filter_map(|&x| self.index_of[x]));
    }
}

impl GridModel for RestrictedModel {
    fn size(&self) -> usize {
        self.points.len()
    }

    fn has_quad(&self, q: &Quad) -> bool {
        self.inner.has_quad(&q.map(|y| self.points[y]))
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        let mut w = Vec::new();
        let p = &self.points;
        self.inner.quad_witnesses(p[x00], p[x01], p[x10], &mut w);
        self.push_mapped(&w, out);
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(self.cert.clone())
    }

    fn describe(&self) -> String {
        self.cert.construction.clone()
    }
}

impl CubeModel for RestrictedModel {
    fn has_oct(&self, o: &Oct) -> bool {
        self.inner.has_oct(&o.map(|y| self.points[y]))
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        let mut w = Vec::new();
        self.inner.oct_witnesses(&seven.map(|y| self.points[y]), &mut w);
        self.push_mapped(&w, out);
    }
}

/// The structure embedded on `Y`. Checks that `π|Y` is onto the base and
/// that every closing of seven points of `Y` stays in `Y`.
pub fn restrict(s: &ParallelepipedStructure, y: &[usize]) -> Result<ParallelepipedStructure> {
    s.ensure_verified()?;
    let n = s.size();
    let mut points = y.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if let Some(&x) = points.iter().find(|&&x| x >= n) {
        return Err(Error::Invalid(format!("point {x} is not in the ground set (n = {n})")));
    }
    let (base, proj) = base_group(&s.grid())?;
    let mut hit = vec![false; base.order()];
    for &x in &points {
        hit[proj.pi[x]] = true;
    }
    if let Some(b) = hit.iter().position(|&h| !h) {
        return Err(Error::Invalid(format!(
            "projection restricted to Y is not onto: base element {b} (fiber of {}) is missed",
            s.ground().label(proj.rep(b))
        )));
    }
    let mut index_of = vec![None; n];
    for (i, &x) in points.iter().enumerate() {
        index_of[x] = Some(i);
    }
    let inner = s.model().clone();
    let in_y = |w: &[usize], out: &mut Vec<usize>| {
        out.clear();
        out.extend(w.iter().copied().filter(|&x| index_of[x].is_some()));
    };
    let (mut w, mut wy) = (Vec::new(), Vec::new());
    let (mut w101, mut w110, mut wd) = (Vec::new(), Vec::new(), Vec::new());
    for &a in &points {
        for &b in &points {
            for &c in &points {
                w.clear();
                inner.quad_witnesses(a, b, c, &mut w);
                in_y(&w, &mut wd);
                for &d in &wd {
                    for &e in &points {
                        w.clear();
                        inner.quad_witnesses(a, b, e, &mut w);
                        in_y(&w, &mut w101);
                        w.clear();
                        inner.quad_witnesses(a, c, e, &mut w);
                        in_y(&w, &mut w110);
                        for &f in &w101 {
                            for &g in &w110 {
                                let seven = [a, b, c, d, e, f, g];
                                wy.clear();
                                inner.oct_witnesses(&seven, &mut wy);
                                if let Some(&x) = wy.iter().find(|&&x| index_of[x].is_none()) {
                                    let labels: Vec<String> = seven.iter().map(|&p| s.ground().label(p)).collect();
                                    return Err(Error::Invalid(format!(
                                        "Y is not closed under completion: closing of ({}) gives {} outside Y",
                                        labels.join(","),
                                        s.ground().label(x)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut checks = vec![
        ("projection restricted to Y is onto".to_string(), true),
        ("Y closed under completion".to_string(), true),
    ];
    if let Some(c) = inner.certificate() {
        checks.extend(c.checks);
    }
    let inner_strong = s.is_strong();
    let cert = Certificate {
        construction: format!("restriction to {} of {} points: {}", points.len(), n, inner.describe()),
        checks,
        strong: inner_strong,
    };
    let labels: Vec<String> = points.iter().map(|&x| s.ground().label(x)).collect();
    let model = RestrictedModel { inner, points, index_of, cert };
    let r = ParallelepipedStructure::new(GroundSet::with_labels(labels)?, Arc::new(model))?;
    r.ensure_verified()?;
    Ok(r)
}

/// The points `(b, f)` of `Z/p × Z/p²` (index `b·p² + f`) with
/// `f ≡ b(b-1)/2 mod p`, `b` taken in `0..p`.
pub fn counterexample_points(p: usize) -> Vec<usize> {
    let p2 = p * p;
    let mut y = Vec::with_capacity(p2);
    for b in 0..p {
        let r = b * b.saturating_sub(1) / 2 % p;
        for k in 0..p {
            y.push(b * p2 + r + k * p);
        }
    }
    y.sort_unstable();
    y
}

pub const COUNTEREXAMPLE_MAX_P: usize = 13;

/// The restriction of the structure on `Z/p × Z/p²` with `F = 0 × Z/p²` to
/// the points of [`counterexample_points`]; a strong structure that is not
/// a nilstructure.
pub fn counterexample(p: usize) -> Result<ParallelepipedStructure> {
    if p == 2 {
        return Err(Error::Invalid("the counterexample needs an odd prime".into()));
    }
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if p > COUNTEREXAMPLE_MAX_P {
        return Err(Error::Guard { what: "counterexample prime", size: p as u128, limit: COUNTEREXAMPLE_MAX_P as u128 });
    }
    let bp = FiniteGroup::cyclic(p)?;
    let fp = FiniteGroup::cyclic(p * p)?;
    let g = FiniteGroup::product(&bp, &fp)?;
    let f0 = Subgroup::generated(&g, &[1]);
    let labels: Vec<String> = (0..g.order()).map(|x| format!("({},{})", x / (p * p), x % (p * p))).collect();
    let s = abelian_structure(&g, Some(&f0))?.with_labels(labels)?;
    restrict(&s, &counterexample_points(p))
}
