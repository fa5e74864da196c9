//! Parallelogram and parallelepiped structures and their axiom checks.

pub mod model;
pub mod quotient;
pub mod tuples;
pub mod unionfind;
pub mod verify;

use std::sync::{Arc, OnceLock};

pub use model::{Certificate, CubeModel, ExplicitCube, ExplicitGrid, GridModel};
pub use quotient::{strong_quotient, StrongQuotient};
pub use tuples::{cube_isometries, euclidean_orbit, square_isometries, Configuration, Oct, Quad, FACES};
pub use verify::{verify_cube, verify_cube_with, verify_grid, verify_grid_with, Axiom, AxiomCheck, Method, VerificationReport, VerifyOptions};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("ground set must be nonempty".into()));
        }
        Ok(GroundSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// A set `P ⊆ X^[2]`, explicit or given by a model.
#[derive(Clone, Debug)]
pub struct ParallelogramStructure {
    ground: GroundSet,
    model: Arc<dyn GridModel>,
    report: OnceLock<VerificationReport>,
}

/// A pair `(P, Q)` with `Q ⊆ X^[3]`.
#[derive(Clone, Debug)]
pub struct ParallelepipedStructure {
    ground: GroundSet,
    model: Arc<dyn CubeModel>,
    report: OnceLock<VerificationReport>,
    strong: OnceLock<bool>,
}

impl ParallelogramStructure {
    pub fn new(ground: GroundSet, model: Arc<dyn GridModel>) -> Result<Self> {
        if model.size() != ground.size() {
            return Err(Error::Dimension(format!(
                "model on {} points, ground set of {}",
                model.size(),
                ground.size()
            )));
        }
        Ok(ParallelogramStructure { ground, model, report: OnceLock::new() })
    }

    pub fn explicit(n: usize, quads: impl IntoIterator<Item = Quad>) -> Result<Self> {
        let m = ExplicitGrid::new(n, quads)?;
        ParallelogramStructure::new(GroundSet::new(n)?, Arc::new(m))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::Dimension("label count".into()));
        }
        self.ground = GroundSet::with_labels(labels)?;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn model(&self) -> &Arc<dyn GridModel> {
        &self.model
    }

    pub fn has_quad(&self, q: &Quad) -> bool {
        self.model.has_quad(q)
    }

    pub fn witnesses(&self, x00: usize, x01: usize, x10: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.model.quad_witnesses(x00, x01, x10, &mut out);
        out
    }

    /// Quads in lexicographic order.
    pub fn for_each_quad(&self, mut f: impl FnMut(Quad)) {
        for_each_quad(self.model.as_ref(), &mut f)
    }

    pub fn quads(&self) -> Vec<Quad> {
        let mut v = Vec::new();
        self.for_each_quad(|q| v.push(q));
        v
    }

    pub fn quad_count(&self) -> u64 {
        if let Some(q) = self.model.explicit_quads() {
            return q.len() as u64;
        }
        let n = self.size();
        let mut w = Vec::new();
        let mut total = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    w.clear();
                    self.model.quad_witnesses(a, b, c, &mut w);
                    total += w.len() as u64;
                }
            }
        }
        total
    }

    /// Verification with default options, cached.
    pub fn verify(&self) -> &VerificationReport {
        self.report.get_or_init(|| verify_grid(self))
    }

    pub fn ensure_verified(&self) -> Result<&VerificationReport> {
        let r = self.verify();
        if r.passed() {
            Ok(r)
        } else {
            Err(Error::NotVerified(r.first_failure()))
        }
    }

    pub fn is_strong(&self) -> bool {
        self.verify().strong
    }
}

pub(crate) fn for_each_quad(model: &dyn GridModel, f: &mut dyn FnMut(Quad)) {
    if let Some(codes) = model.explicit_quads() {
        for &c in codes {
            f(model::unpack_quad(c));
        }
        return;
    }
    let n = model.size();
    let mut w = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                w.clear();
                model.quad_witnesses(a, b, c, &mut w);
                for &d in &w {
                    f(Quad([a, b, c, d]));
                }
            }
        }
    }
}

/// Calls `f(seven, witnesses)` for every seven-point configuration whose
/// three closing hypotheses hold.
pub(crate) fn for_each_seven(model: &dyn CubeModel, f: &mut dyn FnMut(&[usize; 7], &[usize])) {
    let n = model.size();
    let (mut w011, mut w101, mut w110, mut w111) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                w011.clear();
                model.quad_witnesses(a, b, c, &mut w011);
                if w011.is_empty() {
                    continue;
                }
                for d in 0..n {
                    w101.clear();
                    model.quad_witnesses(a, b, d, &mut w101);
                    w110.clear();
                    model.quad_witnesses(a, c, d, &mut w110);
                    for &e in &w011 {
                        for &x101 in &w101 {
                            for &x110 in &w110 {
                                let seven = [a, b, c, e, d, x101, x110];
                                w111.clear();
                                model.oct_witnesses(&seven, &mut w111);
                                f(&seven, &w111);
                            }
                        }
                    }
                }
            }
        }
    }
}

impl ParallelepipedStructure {
    pub fn new(ground: GroundSet, model: Arc<dyn CubeModel>) -> Result<Self> {
        if model.size() != ground.size() {
            return Err(Error::Dimension(format!(
                "model on {} points, ground set of {}",
                model.size(),
                ground.size()
            )));
        }
        Ok(ParallelepipedStructure { ground, model, report: OnceLock::new(), strong: OnceLock::new() })
    }

    pub fn explicit(n: usize, quads: impl IntoIterator<Item = Quad>, octs: impl IntoIterator<Item = Oct>) -> Result<Self> {
        let m = ExplicitCube::new(ExplicitGrid::new(n, quads)?, octs)?;
        ParallelepipedStructure::new(GroundSet::new(n)?, Arc::new(m))
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn model(&self) -> &Arc<dyn CubeModel> {
        &self.model
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::Dimension("label count".into()));
        }
        self.ground = GroundSet::with_labels(labels)?;
        Ok(self)
    }

    /// The parallelogram structure `P`.
    pub fn grid(&self) -> ParallelogramStructure {
        let model: Arc<dyn GridModel> = self.model.clone();
        ParallelogramStructure { ground: self.ground.clone(), model, report: OnceLock::new() }
    }

    pub fn has_quad(&self, q: &Quad) -> bool {
        self.model.has_quad(q)
    }

    pub fn has_oct(&self, o: &Oct) -> bool {
        self.model.has_oct(o)
    }

    pub fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.model.quad_witnesses(x00, x01, x10, &mut out);
        out
    }

    pub fn oct_witnesses(&self, seven: &[usize; 7]) -> Vec<usize> {
        let mut out = Vec::new();
        self.model.oct_witnesses(seven, &mut out);
        out
    }

    /// The unique closing point; panics on a weak or invalid configuration, so
    /// only for use on verified strong structures.
    #[inline]
    pub(crate) fn close_unique(&self, seven: &[usize; 7], buf: &mut Vec<usize>) -> usize {
        buf.clear();
        self.model.oct_witnesses(seven, buf);
        debug_assert_eq!(buf.len(), 1, "closing of {seven:?}");
        buf[0]
    }

    /// Octs: in lexicographic order for explicit models, parameter order
    /// otherwise.
    pub fn for_each_oct(&self, mut f: impl FnMut(&Oct)) {
        if let Some(codes) = self.model.explicit_octs() {
            for &c in codes {
                f(&model::unpack_oct(c));
            }
            return;
        }
        for_each_seven(self.model.as_ref(), &mut |seven, ws| {
            for &x in ws {
                f(&Oct::with_last(seven, x));
            }
        });
    }

    pub fn octs_sorted(&self) -> Vec<Oct> {
        let mut v = Vec::new();
        self.for_each_oct(|o| v.push(*o));
        v.sort_unstable();
        v
    }

    pub fn quad_count(&self) -> u64 {
        self.grid().quad_count()
    }

    pub fn oct_count(&self) -> u64 {
        if let Some(o) = self.model.explicit_octs() {
            return o.len() as u64;
        }
        let mut total = 0u64;
        for_each_seven(self.model.as_ref(), &mut |_, ws| total += ws.len() as u64);
        total
    }

    /// `n^4 · w^3 · v` from the closing counts at the constant configuration.
    pub fn estimated_oct_count(&self) -> u128 {
        if let Some(o) = self.model.explicit_octs() {
            return o.len() as u128;
        }
        let n = self.size() as u128;
        let w = self.quad_witnesses(0, 0, 0).len() as u128;
        let v = self.oct_witnesses(&[0; 7]).len() as u128;
        n.pow(4) * w.pow(3) * v
    }

    pub fn verify(&self) -> &VerificationReport {
        self.report.get_or_init(|| verify_cube(self))
    }

    pub fn ensure_verified(&self) -> Result<&VerificationReport> {
        let r = self.verify();
        if r.passed() {
            Ok(r)
        } else {
            Err(Error::NotVerified(r.first_failure()))
        }
    }

    /// For a verified structure: `≡_Q` is trivial, i.e. closing the constant
    /// seven-point configuration at every `x` gives only `x`.
    pub fn is_strong(&self) -> bool {
        *self.strong.get_or_init(|| {
            let mut buf = Vec::new();
            (0..self.size()).all(|x| {
                buf.clear();
                self.model.oct_witnesses(&[x; 7], &mut buf);
                buf == [x]
            })
        })
    }

    pub fn ensure_strong(&self) -> Result<()> {
        self.ensure_verified()?;
        if self.is_strong() {
            Ok(())
        } else {
            Err(Error::Weak("closing is not unique; apply the strong quotient first".into()))
        }
    }

    /// An explicit copy of the structure, if `|Q|` fits the guard.
    pub fn materialize(&self, max_q: u128) -> Result<ParallelepipedStructure> {
        if self.model.explicit_octs().is_some() {
            return Ok(self.clone());
        }
        let n = self.size();
        if n > model::EXPLICIT_MAX_POINTS {
            return Err(Error::Guard { what: "explicit ground set", size: n as u128, limit: model::EXPLICIT_MAX_POINTS as u128 });
        }
        let est = self.estimated_oct_count();
        if est > max_q {
            return Err(Error::Guard { what: "oct count", size: est, limit: max_q });
        }
        let grid = ExplicitGrid::new(n, self.grid().quads())?;
        let mut codes = Vec::new();
        self.for_each_oct(|o| codes.push(model::pack_oct(o)));
        codes.sort_unstable();
        codes.dedup();
        let m = ExplicitCube::from_sorted_codes(grid, codes);
        let mut s = ParallelepipedStructure::new(self.ground.clone(), Arc::new(m))?;
        if let Some(r) = self.report.get() {
            let _ = s.report.set(r.clone());
        }
        s.strong = self.strong.clone();
        Ok(s)
    }
}

/// Every seven-point configuration whose closing hypotheses hold, with its
/// closings, in parameter order.
pub fn for_each_oct_parts(s: &ParallelepipedStructure, f: &mut dyn FnMut(&[usize; 7], &[usize])) {
    for_each_seven(s.model().as_ref(), f)
}

/// All `x11` with `(x00,x01,x10,x11) ∈ P`; an empty result is the closing
/// axiom failing and is reported as an error.
pub fn close_parallelogram(p: &ParallelogramStructure, x00: usize, x01: usize, x10: usize) -> Result<Vec<usize>> {
    let n = p.size();
    if x00.max(x01).max(x10) >= n {
        return Err(Error::Invalid(format!("point index out of range (n = {n})")));
    }
    let w = p.witnesses(x00, x01, x10);
    if w.is_empty() {
        return Err(Error::NotVerified(format!("closing fails at ({x00},{x01},{x10})")));
    }
    Ok(w)
}

/// All `x111` completing seven points; the three faces through `000` must
/// lie in `P`.
pub fn close_parallelepiped(s: &ParallelepipedStructure, seven: &[usize; 7]) -> Result<Vec<usize>> {
    let n = s.size();
    if seven.iter().any(|&x| x >= n) {
        return Err(Error::Invalid(format!("point index out of range (n = {n})")));
    }
    const NAMES: [&str; 3] = ["(x000,x001,x010,x011)", "(x000,x010,x100,x110)", "(x000,x001,x100,x101)"];
    for (q, name) in Oct::closing_hypotheses(seven).iter().zip(NAMES) {
        if !s.has_quad(q) {
            return Err(Error::Hypothesis(format!("{name} = {:?} is not in P", q.0)));
        }
    }
    let w = s.oct_witnesses(seven);
    if w.is_empty() {
        return Err(Error::NotVerified(format!("closing fails at {seven:?}")));
    }
    Ok(w)
}
