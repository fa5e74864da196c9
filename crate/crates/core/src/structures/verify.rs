use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::model::{pack_quad, Certificate, CubeModel, GridModel};
use crate::structures::tuples::{cube_isometries, square_isometries, Oct, Quad, CUBE_GENERATORS};
use crate::structures::unionfind::UnionFind;
use crate::structures::{for_each_quad, for_each_seven, ParallelepipedStructure, ParallelogramStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `∼` is an equivalence relation on `X^2`.
    Equivalence,
    /// `(x00,x01,x10,x11) ∈ P ⇒ (x00,x10,x01,x11) ∈ P`.
    Symmetry,
    Closing,
    /// `(x0,x0,x1,x1) ∈ P`.
    DegenerateQuads,
    /// Invariance under the 8 square isometries.
    EuclideanInvariance,
    /// Every face of every oct lies in `P`.
    Faces,
    /// Invariance under the 48 cube isometries.
    CubeSymmetry,
    /// `≈` is an equivalence relation on `P`.
    CubeEquivalence,
    CubeClosing,
    /// `(x,y,x,y,x',y',x',y') ∈ Q` whenever `(x,y,x',y') ∈ P`.
    DoubledParallelograms,
    /// Hypotheses of an algebraic construction.
    Construction,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Equivalence => "P: ~ is an equivalence relation",
            Axiom::Symmetry => "P: symmetry",
            Axiom::Closing => "P: closing parallelogram",
            Axiom::DegenerateQuads => "P: (x0,x0,x1,x1) in P",
            Axiom::EuclideanInvariance => "P: euclidean invariance",
            Axiom::Faces => "Q: faces in P",
            Axiom::CubeSymmetry => "Q: euclidean invariance",
            Axiom::CubeEquivalence => "Q: ≈ is an equivalence relation",
            Axiom::CubeClosing => "Q: closing parallelepiped",
            Axiom::DoubledParallelograms => "Q: doubled parallelograms in Q",
            Axiom::Construction => "construction hypotheses",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub counterexample: Option<Vec<usize>>,
    pub detail: String,
}

impl AxiomCheck {
    fn new(axiom: Axiom, counterexample: Option<Vec<usize>>, detail: impl Into<String>) -> Self {
        AxiomCheck { axiom, passed: counterexample.is_none(), counterexample, detail: detail.into() }
    }

    fn flag(axiom: Axiom, passed: bool, detail: impl Into<String>) -> Self {
        AxiomCheck { axiom, passed, counterexample: None, detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Enumeration,
    /// Construction certificate plus seeded sampling.
    Algebraic,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub level: u8,
    pub size: usize,
    pub method: Method,
    pub checks: Vec<AxiomCheck>,
    pub strong: bool,
    pub quad_count: Option<u64>,
    pub oct_count: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> String {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => format!("{} fails: {}", c.axiom.label(), c.detail),
            None => "all axioms pass".into(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let kind = if self.level == 2 { "parallelogram" } else { "parallelepiped" };
        let method = match self.method {
            Method::Enumeration => "enumeration",
            Method::Algebraic => "certificate + sampling",
        };
        let _ = writeln!(s, "{kind} structure on {} points ({method})", self.size);
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = write!(s, "  [{mark}] {}", c.axiom.label());
            if !c.detail.is_empty() {
                let _ = write!(s, ": {}", c.detail);
            }
            if let Some(x) = &c.counterexample {
                let _ = write!(s, " counterexample {x:?}");
            }
            s.push('\n');
        }
        if let Some(q) = self.quad_count {
            let _ = writeln!(s, "  |P| = {q}");
        }
        if let Some(o) = self.oct_count {
            let _ = writeln!(s, "  |Q| = {o}");
        }
        let _ = writeln!(s, "  {}", if self.strong { "strong" } else { "weak" });
        let _ = writeln!(s, "verdict: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_q: u128,
    pub max_points: usize,
    /// When false, reflexivity of `≈` is not checked directly, only symmetry
    /// invariance and transitivity.
    pub full_equivalence: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_q: 1 << 24, max_points: 64, full_equivalence: true, samples: 20_000, seed: 0 }
    }
}

fn keep_min(slot: &mut Option<Vec<usize>>, cand: &[usize]) {
    if slot.as_deref().is_none_or(|s| cand < s) {
        *slot = Some(cand.to_vec());
    }
}

pub fn verify_grid(p: &ParallelogramStructure) -> VerificationReport {
    verify_grid_with(p, &VerifyOptions::default()).unwrap_or_else(|e| guard_report(2, p.size(), e))
}

pub fn verify_cube(s: &ParallelepipedStructure) -> VerificationReport {
    verify_cube_with(s, &VerifyOptions::default()).unwrap_or_else(|e| guard_report(3, s.size(), e))
}

fn guard_report(level: u8, size: usize, e: Error) -> VerificationReport {
    VerificationReport {
        level,
        size,
        method: Method::Algebraic,
        checks: vec![AxiomCheck::flag(Axiom::Construction, false, e.to_string())],
        strong: false,
        quad_count: None,
        oct_count: None,
    }
}

fn grid_estimate(model: &dyn GridModel) -> u128 {
    if let Some(q) = model.explicit_quads() {
        return q.len() as u128;
    }
    let mut w = Vec::new();
    model.quad_witnesses(0, 0, 0, &mut w);
    (model.size() as u128).pow(3) * w.len() as u128
}

pub fn verify_grid_with(p: &ParallelogramStructure, opts: &VerifyOptions) -> Result<VerificationReport> {
    let model = p.model().as_ref();
    let n = model.size();
    if n <= opts.max_points && grid_estimate(model) <= opts.max_q {
        let (checks, strong, count) = grid_checks(model);
        return Ok(VerificationReport {
            level: 2,
            size: n,
            method: Method::Enumeration,
            checks,
            strong,
            quad_count: Some(count),
            oct_count: None,
        });
    }
    let cert = model.certificate().ok_or(Error::Guard {
        what: "parallelogram enumeration",
        size: grid_estimate(model),
        limit: opts.max_q,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = vec![certificate_check(&cert)];
    let strong = cert.strong && (0..n).all(|x| p.witnesses(x, x, x) == [x]);
    checks.extend(sampled_grid(model, opts.samples, &mut rng));
    Ok(VerificationReport { level: 2, size: n, method: Method::Algebraic, checks, strong, quad_count: None, oct_count: None })
}

fn certificate_check(cert: &Certificate) -> AxiomCheck {
    let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} ({} hypotheses hold)", cert.construction, cert.checks.len())
    } else {
        format!("{}: failing {}", cert.construction, failed.join("; "))
    };
    AxiomCheck::flag(Axiom::Construction, failed.is_empty(), detail)
}

/// Full sweep of the parallelogram axioms.
fn grid_checks(model: &dyn GridModel) -> (Vec<AxiomCheck>, bool, u64) {
    let n = model.size();
    let mut uf = UnionFind::new(n * n);
    let mut count = 0u64;
    let (mut rel_sym, mut sym, mut euc) = (None, None, None);
    let isos = square_isometries();
    for_each_quad(model, &mut |q| {
        count += 1;
        let [a, b, c, d] = q.0;
        uf.union(a * n + b, c * n + d);
        if !model.has_quad(&Quad([c, d, a, b])) {
            keep_min(&mut rel_sym, &q.0);
        }
        if !model.has_quad(&Quad([a, c, b, d])) {
            keep_min(&mut sym, &q.0);
        }
        if isos.iter().any(|p| !model.has_quad(&q.permute(p))) {
            keep_min(&mut euc, &q.0);
        }
    });
    let mut refl = None;
    let mut degen = None;
    'outer: for a in 0..n {
        for b in 0..n {
            if refl.is_none() && !model.has_quad(&Quad([a, b, a, b])) {
                refl = Some(vec![a, b, a, b]);
            }
            if degen.is_none() && !model.has_quad(&Quad([a, a, b, b])) {
                degen = Some(vec![a, a, b, b]);
            }
            if refl.is_some() && degen.is_some() {
                break 'outer;
            }
        }
    }
    let mut squares = 0u64;
    for r in 0..n * n {
        if uf.find(r) == r {
            let s = uf.class_size(r) as u64;
            squares += s * s;
        }
    }
    let equivalence = if let Some(ce) = refl {
        AxiomCheck::new(Axiom::Equivalence, Some(ce), "not reflexive")
    } else if let Some(ce) = rel_sym {
        AxiomCheck::new(Axiom::Equivalence, Some(ce), "not symmetric: (x10,x11,x00,x01) missing")
    } else if squares != count {
        let ce = grid_transitivity_witness(model);
        AxiomCheck::new(
            Axiom::Equivalence,
            Some(ce.unwrap_or_default()),
            format!("not transitive: {count} quads, {squares} in the closure; pairs p~q, q~r with p !~ r"),
        )
    } else {
        AxiomCheck::new(Axiom::Equivalence, None, "")
    };
    let mut closing = None;
    let mut strong = true;
    let mut w = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                w.clear();
                model.quad_witnesses(a, b, c, &mut w);
                if w.is_empty() && closing.is_none() {
                    closing = Some(vec![a, b, c]);
                }
                if w.len() > 1 {
                    strong = false;
                }
            }
        }
    }
    let checks = vec![
        equivalence,
        AxiomCheck::new(Axiom::Symmetry, sym, ""),
        AxiomCheck::new(Axiom::Closing, closing, ""),
        AxiomCheck::new(Axiom::DegenerateQuads, degen, ""),
        AxiomCheck::new(Axiom::EuclideanInvariance, euc, ""),
    ];
    let strong = strong && checks_ok(&checks);
    (checks, strong, count)
}

fn checks_ok(c: &[AxiomCheck]) -> bool {
    c.iter().all(|c| c.passed)
}

/// Lexicographically first `p ~ q ~ r` with `p !~ r`, as six indices.
fn grid_transitivity_witness(model: &dyn GridModel) -> Option<Vec<usize>> {
    let n = model.size();
    let neighbours = |a: usize, b: usize| {
        let mut out = Vec::new();
        let mut w = Vec::new();
        for c in 0..n {
            w.clear();
            model.quad_witnesses(a, b, c, &mut w);
            out.extend(w.iter().map(|&d| (c, d)));
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            let np = neighbours(a, b);
            for &(c, d) in &np {
                for (e, f) in neighbours(c, d) {
                    if np.binary_search(&(e, f)).is_err() {
                        return Some(vec![a, b, c, d, e, f]);
                    }
                }
            }
        }
    }
    None
}

fn sampled_grid(model: &dyn GridModel, samples: usize, rng: &mut ChaCha8Rng) -> Vec<AxiomCheck> {
    let n = model.size();
    let isos = square_isometries();
    let (mut closing, mut equiv, mut sym, mut degen, mut euc) = (None, None, None, None, None);
    let mut w = Vec::new();
    for _ in 0..samples {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        w.clear();
        model.quad_witnesses(a, b, c, &mut w);
        if w.is_empty() {
            keep_min(&mut closing, &[a, b, c]);
            continue;
        }
        let q = Quad([a, b, c, w[rng.gen_range(0..w.len())]]);
        if !model.has_quad(&Quad([a, b, a, b])) || !model.has_quad(&Quad([q.0[2], q.0[3], a, b])) {
            keep_min(&mut equiv, &q.0);
        }
        // transitivity through a random second quad starting at (c, d)
        let e = rng.gen_range(0..n);
        let mut w2 = Vec::new();
        model.quad_witnesses(q.0[2], q.0[3], e, &mut w2);
        if let Some(&f) = w2.first() {
            if !model.has_quad(&Quad([a, b, e, f])) {
                keep_min(&mut equiv, &[a, b, q.0[2], q.0[3], e, f]);
            }
        }
        if !model.has_quad(&Quad([a, c, b, q.0[3]])) {
            keep_min(&mut sym, &q.0);
        }
        if !model.has_quad(&Quad([a, a, b, b])) {
            keep_min(&mut degen, &[a, a, b, b]);
        }
        if isos.iter().any(|p| !model.has_quad(&q.permute(p))) {
            keep_min(&mut euc, &q.0);
        }
    }
    let note = format!("{samples} seeded samples");
    vec![
        AxiomCheck::new(Axiom::Equivalence, equiv, note.clone()),
        AxiomCheck::new(Axiom::Symmetry, sym, note.clone()),
        AxiomCheck::new(Axiom::Closing, closing, note.clone()),
        AxiomCheck::new(Axiom::DegenerateQuads, degen, note.clone()),
        AxiomCheck::new(Axiom::EuclideanInvariance, euc, note),
    ]
}

/// Index of the quads of `P`.
enum QuadIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl QuadIndex {
    fn build(n: usize, quads: &[Quad]) -> Self {
        if n.pow(4) <= 1 << 26 {
            let mut v = vec![u32::MAX; n.pow(4)];
            for (i, q) in quads.iter().enumerate() {
                v[((q.0[0] * n + q.0[1]) * n + q.0[2]) * n + q.0[3]] = i as u32;
            }
            QuadIndex::Dense(v)
        } else {
            QuadIndex::Sparse(quads.iter().enumerate().map(|(i, q)| (pack_quad(q), i as u32)).collect())
        }
    }

    #[inline]
    fn get(&self, n: usize, q: &Quad) -> Option<usize> {
        match self {
            QuadIndex::Dense(v) => {
                let i = v[((q.0[0] * n + q.0[1]) * n + q.0[2]) * n + q.0[3]];
                (i != u32::MAX).then_some(i as usize)
            }
            QuadIndex::Sparse(m) => m.get(&pack_quad(q)).map(|&i| i as usize),
        }
    }
}

pub fn verify_cube_with(s: &ParallelepipedStructure, opts: &VerifyOptions) -> Result<VerificationReport> {
    let model = s.model().as_ref();
    let n = model.size();
    let est = s.estimated_oct_count();
    let grid_fits = grid_estimate(model) <= opts.max_q;
    if n <= opts.max_points && est <= opts.max_q && grid_fits {
        let (mut checks, _, quads) = grid_checks(model);
        let (cube, strong, octs) = cube_checks(model, opts);
        checks.extend(cube);
        return Ok(VerificationReport {
            level: 3,
            size: n,
            method: Method::Enumeration,
            checks,
            strong,
            quad_count: Some(quads),
            oct_count: Some(octs),
        });
    }
    let cert = model.certificate().ok_or(Error::Guard { what: "parallelepiped enumeration", size: est, limit: opts.max_q })?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = vec![certificate_check(&cert)];
    checks.extend(sampled_grid(model, opts.samples, &mut rng));
    checks.extend(sampled_cube(model, opts.samples, &mut rng));
    let strong = cert.strong && s.is_strong();
    Ok(VerificationReport { level: 3, size: n, method: Method::Algebraic, checks, strong, quad_count: None, oct_count: None })
}

fn cube_checks(model: &dyn CubeModel, opts: &VerifyOptions) -> (Vec<AxiomCheck>, bool, u64) {
    let n = model.size();
    let mut quads = Vec::new();
    for_each_quad(model, &mut |q| quads.push(q));
    let index = QuadIndex::build(n, &quads);
    let mut uf = UnionFind::new(quads.len());
    let mut looped = vec![false; quads.len()];
    let mut related = 0u64;
    let mut total = 0u64;
    let (mut faces_fail, mut sym_fail) = (None, None);
    let (mut closing_fail, mut strong) = (None, true);
    let mut process = |o: &Oct| {
        total += 1;
        let ia = index.get(n, &o.split().0);
        let ib = index.get(n, &o.split().1);
        let faces_ok = ia.is_some()
            && ib.is_some()
            && (2..6).all(|i| index.get(n, &o.face(i)).is_some());
        if !faces_ok {
            keep_min(&mut faces_fail, &o.0);
        }
        if CUBE_GENERATORS.iter().any(|g| !model.has_oct(&o.permute(g))) {
            keep_min(&mut sym_fail, &o.0);
        }
        if let (Some(a), Some(b)) = (ia, ib) {
            related += 1;
            if a == b {
                looped[a] = true;
            }
            uf.union(a, b);
        }
    };
    let explicit = model.explicit_octs().is_some();
    if let Some(codes) = model.explicit_octs() {
        for &c in codes {
            process(&crate::structures::model::unpack_oct(c));
        }
    }
    for_each_seven(model, &mut |seven, ws| {
        if ws.is_empty() {
            keep_min(&mut closing_fail, seven);
        }
        if ws.len() > 1 {
            strong = false;
        }
        if !explicit {
            for &x in ws {
                process(&Oct::with_last(seven, x));
            }
        }
    });
    // classes that take part in the relation
    let mut class_loop = vec![false; quads.len()];
    for i in 0..quads.len() {
        if looped[i] {
            let r = uf.find(i);
            class_loop[r] = true;
        }
    }
    let mut squares = 0u64;
    for r in 0..quads.len() {
        if uf.find(r) == r {
            let s = uf.class_size(r) as u64;
            if opts.full_equivalence || s >= 2 || class_loop[r] {
                squares += s * s;
            }
        }
    }
    let refl = if opts.full_equivalence {
        (0..quads.len()).find(|&i| !looped[i]).map(|i| Oct::from_halves(quads[i], quads[i]).0.to_vec())
    } else {
        None
    };
    let equivalence = if let Some(ce) = refl {
        AxiomCheck::new(Axiom::CubeEquivalence, Some(ce), "not reflexive")
    } else if squares != related {
        let ce = cube_transitivity_witness(model, &quads);
        AxiomCheck::new(
            Axiom::CubeEquivalence,
            Some(ce.unwrap_or_default()),
            format!("not transitive: {related} related pairs, {squares} in the closure"),
        )
    } else {
        AxiomCheck::new(Axiom::CubeEquivalence, None, if opts.full_equivalence { "" } else { "symmetry + transitivity only" })
    };
    let mut doubled = None;
    for q in &quads {
        let [x, y, x2, y2] = q.0;
        let o = Oct([x, y, x, y, x2, y2, x2, y2]);
        if !model.has_oct(&o) {
            doubled = Some(o.0.to_vec());
            break;
        }
    }
    let checks = vec![
        AxiomCheck::new(Axiom::Faces, faces_fail, ""),
        AxiomCheck::new(Axiom::CubeSymmetry, sym_fail, "3 generators of the 48-element group"),
        equivalence,
        AxiomCheck::new(Axiom::CubeClosing, closing_fail, ""),
        AxiomCheck::new(Axiom::DoubledParallelograms, doubled, ""),
    ];
    let ok = checks_ok(&checks);
    (checks, strong && ok, total)
}

fn oct_neighbours(model: &dyn CubeModel, q: &Quad) -> Vec<Quad> {
    let n = model.size();
    let [a, b, c, d] = q.0;
    let (mut w1, mut w2, mut w3) = (Vec::new(), Vec::new(), Vec::new());
    let mut out = Vec::new();
    for e in 0..n {
        w1.clear();
        model.quad_witnesses(a, b, e, &mut w1);
        w2.clear();
        model.quad_witnesses(a, c, e, &mut w2);
        for &f in &w1 {
            for &g in &w2 {
                w3.clear();
                model.oct_witnesses(&[a, b, c, d, e, f, g], &mut w3);
                out.extend(w3.iter().map(|&h| Quad([e, f, g, h])));
            }
        }
    }
    out.sort_unstable();
    out
}

fn cube_transitivity_witness(model: &dyn CubeModel, quads: &[Quad]) -> Option<Vec<usize>> {
    for p in quads {
        let np = oct_neighbours(model, p);
        for q in &np {
            for r in oct_neighbours(model, q) {
                if np.binary_search(&r).is_err() {
                    let mut v = p.0.to_vec();
                    v.extend_from_slice(&q.0);
                    v.extend_from_slice(&r.0);
                    return Some(v);
                }
            }
        }
    }
    None
}

fn random_witness(model: &dyn GridModel, a: usize, b: usize, c: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let mut w = Vec::new();
    model.quad_witnesses(a, b, c, &mut w);
    (!w.is_empty()).then(|| w[rng.gen_range(0..w.len())])
}

/// A random oct whose face `ε1 = 0` is `q`, if the closings allow one.
fn random_oct_over(model: &dyn CubeModel, q: &Quad, rng: &mut ChaCha8Rng) -> Option<Oct> {
    let n = model.size();
    let [a, b, c, d] = q.0;
    let e = rng.gen_range(0..n);
    let f = random_witness(model, a, b, e, rng)?;
    let g = random_witness(model, a, c, e, rng)?;
    let seven = [a, b, c, d, e, f, g];
    let mut w = Vec::new();
    model.oct_witnesses(&seven, &mut w);
    (!w.is_empty()).then(|| Oct::with_last(&seven, w[rng.gen_range(0..w.len())]))
}

fn sampled_cube(model: &dyn CubeModel, samples: usize, rng: &mut ChaCha8Rng) -> Vec<AxiomCheck> {
    let n = model.size();
    let isos = cube_isometries();
    let (mut faces, mut sym, mut equiv, mut closing, mut doubled) = (None, None, None, None, None);
    for _ in 0..samples {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        let Some(d) = random_witness(model, a, b, c, rng) else { continue };
        let e = rng.gen_range(0..n);
        let (Some(f), Some(g)) = (random_witness(model, a, b, e, rng), random_witness(model, a, c, e, rng)) else {
            continue;
        };
        let seven = [a, b, c, d, e, f, g];
        let mut w = Vec::new();
        model.oct_witnesses(&seven, &mut w);
        if w.is_empty() {
            keep_min(&mut closing, &seven);
            continue;
        }
        let o = Oct::with_last(&seven, w[rng.gen_range(0..w.len())]);
        if o.faces().iter().any(|f| !model.has_quad(f)) {
            keep_min(&mut faces, &o.0);
        }
        if isos.iter().any(|p| !model.has_oct(&o.permute(p))) {
            keep_min(&mut sym, &o.0);
        }
        let (x1, x2) = o.split();
        if !model.has_oct(&Oct::from_halves(x1, x1)) {
            keep_min(&mut equiv, &Oct::from_halves(x1, x1).0);
        }
        if let Some(o2) = random_oct_over(model, &x2, rng) {
            let y = o2.split().1;
            if !model.has_oct(&Oct::from_halves(x1, y)) {
                let mut v = x1.0.to_vec();
                v.extend_from_slice(&x2.0);
                v.extend_from_slice(&y.0);
                keep_min(&mut equiv, &v);
            }
        }
        let dq = Oct([a, b, a, b, c, d, c, d]);
        if !model.has_oct(&dq) {
            keep_min(&mut doubled, &dq.0);
        }
    }
    let note = format!("{samples} seeded samples");
    vec![
        AxiomCheck::new(Axiom::Faces, faces, note.clone()),
        AxiomCheck::new(Axiom::CubeSymmetry, sym, note.clone()),
        AxiomCheck::new(Axiom::CubeEquivalence, equiv, note.clone()),
        AxiomCheck::new(Axiom::CubeClosing, closing, note.clone()),
        AxiomCheck::new(Axiom::DoubledParallelograms, doubled, note),
    ]
}
