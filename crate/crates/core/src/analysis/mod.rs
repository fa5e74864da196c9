//! Invariants of a strong parallelepiped structure: base group, class
//! groups, fiber group, the exact sequences and their splitting.

mod report;
mod structure_group;

pub use report::{analyze, AnalysisReport, ClassSummary, SplitSummary};
pub use structure_group::{
    base_translation, in_structure_group, in_structure_group_faces, nil_realization, structure_group_enumerate, NilRealization,
};

use serde::Serialize;

use crate::algebra::{AbelianGroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::structures::{ParallelepipedStructure, ParallelogramStructure, Quad};

/// `π: X → B` with basepoint `0`, and the fibers in increasing order.
#[derive(Clone, Debug)]
pub struct BaseProjection {
    pub pi: Vec<usize>,
    pub basepoint: usize,
    pub fibers: Vec<Vec<usize>>,
}

impl BaseProjection {
    /// Least point of the fiber over `b`.
    pub fn rep(&self, b: usize) -> usize {
        self.fibers[b][0]
    }
}

/// `B = X²/∼` with `⟨a,b⟩·⟨b,c⟩ = ⟨a,c⟩`; element `b` is the class of
/// `⟨0, x⟩` for the least such `x`.
pub fn base_group(p: &ParallelogramStructure) -> Result<(AbelianGroup, BaseProjection)> {
    p.ensure_verified()?;
    let n = p.size();
    let mut reps: Vec<usize> = Vec::new();
    let mut pi = vec![0usize; n];
    for x in 0..n {
        match reps.iter().position(|&r| p.has_quad(&Quad([0, r, 0, x]))) {
            Some(b) => pi[x] = b,
            None => {
                pi[x] = reps.len();
                reps.push(x);
            }
        }
    }
    let m = reps.len();
    let mut mul = vec![0u32; m * m];
    for (b1, &a) in reps.iter().enumerate() {
        for (b2, &b) in reps.iter().enumerate() {
            // ⟨0,a⟩⟨a,c⟩ with ⟨a,c⟩ = ⟨0,b⟩
            let c = *p
                .witnesses(0, b, a)
                .first()
                .ok_or_else(|| Error::NotVerified("closing fails".into()))?;
            mul[b1 * m + b2] = pi[c] as u32;
        }
    }
    let g = FiniteGroup::from_table(m, mul, None)
        .map_err(|e| Error::Inconsistent(format!("X²/∼ is not a group: {e}")))?;
    let base = AbelianGroup::new(g).map_err(|_| Error::Inconsistent("base group is not abelian".into()))?;
    let mut fibers = vec![Vec::new(); m];
    for x in 0..n {
        fibers[pi[x]].push(x);
    }
    // P must be the preimage of the base parallelograms
    let bg = base.group();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let b11 = bg.div(bg.mul(pi[c], pi[b]), pi[a]);
                if p.witnesses(a, b, c) != fibers[b11] {
                    return Err(Error::Inconsistent(format!(
                        "closing of ({a},{b},{c}) is not the fiber over the base value"
                    )));
                }
            }
        }
    }
    Ok((base, BaseProjection { pi, basepoint: 0, fibers }))
}

/// `F = ker q_1` with its action on `X`.
#[derive(Clone, Debug)]
pub struct FiberGroup {
    pub group: AbelianGroup,
    /// `points[u]`: the point `u·0` of the basepoint fiber.
    pub points: Vec<usize>,
    /// `action[u][x] = u·x`.
    pub action: Vec<Vec<usize>>,
    /// `coords[x] = u` with `x = u·x_{π(x)}`.
    pub coords: Vec<usize>,
}

impl FiberGroup {
    pub fn act(&self, u: usize, x: usize) -> usize {
        self.action[u][x]
    }
}

/// Everything the per-`s` computations need.
#[derive(Clone, Debug)]
pub struct Foundation<'a> {
    pub s: &'a ParallelepipedStructure,
    pub base: AbelianGroup,
    pub proj: BaseProjection,
}

impl<'a> Foundation<'a> {
    pub fn new(s: &'a ParallelepipedStructure) -> Result<Self> {
        s.ensure_strong()?;
        let (base, proj) = base_group(&s.grid())?;
        Ok(Foundation { s, base, proj })
    }

    #[inline]
    fn close(&self, seven: [usize; 7], buf: &mut Vec<usize>) -> usize {
        self.s.close_unique(&seven, buf)
    }

    /// The representative `(0, x_s, x_b', d)` of the class of `y`.
    pub fn canon(&self, s: usize, y: &Quad, buf: &mut Vec<usize>) -> Quad {
        let bg = self.base.group();
        let [y00, y01, y10, y11] = y.0;
        let b = bg.div(self.proj.pi[y10], self.proj.pi[y00]);
        let xs = self.proj.rep(s);
        let xb = self.proj.rep(b);
        let d = self.close([y00, y01, y10, y11, 0, xs, xb], buf);
        Quad([0, xs, xb, d])
    }

    /// `⟨x00, x01⟩`
    pub fn bracket(&self, a: usize, b: usize) -> usize {
        self.base.group().div(self.proj.pi[b], self.proj.pi[a])
    }
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub s: usize,
    pub group: AbelianGroup,
    /// Canonical (lexicographically least) representative of each class.
    pub reps: Vec<Quad>,
    /// `q_s`: class → base element.
    pub q: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// The partition of the quads of `P_s`, kept when it is small.
    pub members: Option<Vec<Vec<Quad>>>,
}

const MEMBER_LIMIT: usize = 1 << 20;

pub(crate) fn class_group_in(f: &Foundation, s: usize) -> Result<ClassGroup> {
    if s >= f.base.order() {
        return Err(Error::Invalid(format!("{s} is not an element of B (order {})", f.base.order())));
    }
    let bg = f.base.group();
    let nb = f.base.order();
    let xs = f.proj.rep(s);
    let mut buf = Vec::new();
    // classes (b', j): d = j-th witness of (0, x_s, x_b')
    let mut ds: Vec<Vec<usize>> = Vec::with_capacity(nb);
    for b in 0..nb {
        ds.push(f.s.quad_witnesses(0, xs, f.proj.rep(b)));
    }
    let nf = ds[0].len();
    if ds.iter().any(|d| d.len() != nf) {
        return Err(Error::Inconsistent("fiber sizes differ".into()));
    }
    let index = |q: &Quad, ds: &Vec<Vec<usize>>| -> Result<usize> {
        let b = f.proj.pi[q.0[2]];
        let j = ds[b].binary_search(&q.0[3]).map_err(|_| Error::Inconsistent("class representative".into()))?;
        Ok(b * nf + j)
    };
    let m = nb * nf;
    let reps: Vec<Quad> = (0..m).map(|k| Quad([0, xs, f.proj.rep(k / nf), ds[k / nf][k % nf]])).collect();
    let mut mul = vec![0u32; m * m];
    for (i, r1) in reps.iter().enumerate() {
        for (j, r2) in reps.iter().enumerate() {
            let (c, d) = (r1.0[2], r1.0[3]);
            let (c2, d2) = (r2.0[2], r2.0[3]);
            let x4 = f.proj.rep(bg.mul(f.proj.pi[c], f.proj.pi[c2]));
            let x5 = f.close([0, xs, c2, d2, c, d, x4], &mut buf);
            mul[i * m + j] = index(&Quad([0, xs, x4, x5]), &ds)? as u32;
        }
    }
    let table = FiniteGroup::from_table(m, mul, None)
        .map_err(|e| Error::Inconsistent(format!("class multiplication: {e}")))?;
    let group = AbelianGroup::new(table).map_err(|_| Error::Inconsistent("P_s is not abelian".into()))?;
    let q: Vec<usize> = (0..m).map(|k| k / nf).collect();
    if !group.group().is_hom_to(bg, &q) {
        return Err(Error::Inconsistent("q_s is not a homomorphism".into()));
    }
    // partition of all quads with ⟨x00,x01⟩ = s
    let n = f.s.size();
    let mut class_sizes = vec![0usize; m];
    let total = n * (n / nb) * n * nf;
    let mut members = (total <= MEMBER_LIMIT).then(|| vec![Vec::new(); m]);
    for x00 in 0..n {
        let b01 = bg.mul(f.proj.pi[x00], s);
        for &x01 in &f.proj.fibers[b01] {
            for x10 in 0..n {
                for x11 in f.s.quad_witnesses(x00, x01, x10) {
                    let y = Quad([x00, x01, x10, x11]);
                    let k = index(&f.canon(s, &y, &mut buf), &ds)?;
                    class_sizes[k] += 1;
                    if let Some(mm) = members.as_mut() {
                        mm[k].push(y);
                    }
                }
            }
        }
    }
    Ok(ClassGroup { s, group, reps, q, class_sizes, members })
}

/// `P_s` with multiplication `⟦x0,x1,x2,x3⟧·⟦x2,x3,x4,x5⟧ = ⟦x0,x1,x4,x5⟧`.
pub fn class_group(s_struct: &ParallelepipedStructure, s: usize) -> Result<ClassGroup> {
    class_group_in(&Foundation::new(s_struct)?, s)
}

pub(crate) fn fiber_group_in(f: &Foundation) -> Result<FiberGroup> {
    let n = f.s.size();
    let points = f.proj.fibers[0].clone();
    let nf = points.len();
    let mut buf = Vec::new();
    let mut action = vec![vec![0usize; n]; nf];
    for (u, &d) in points.iter().enumerate() {
        for x in 0..n {
            action[u][x] = f.close([0, 0, 0, d, x, x, x], &mut buf);
        }
    }
    let pos = |x: usize| points.binary_search(&x).map_err(|_| Error::Inconsistent("action leaves the fiber".into()));
    let mut mul = vec![0u32; nf * nf];
    for u in 0..nf {
        for v in 0..nf {
            mul[u * nf + v] = pos(action[u][action[v][0]])? as u32;
        }
    }
    let table = FiniteGroup::from_table(nf, mul, None).map_err(|e| Error::Inconsistent(format!("fiber group: {e}")))?;
    let group = AbelianGroup::new(table).map_err(|_| Error::Inconsistent("fiber group is not abelian".into()))?;
    let g = group.group();
    let mut coords = vec![usize::MAX; n];
    for (b, fib) in f.proj.fibers.iter().enumerate() {
        let xb = f.proj.rep(b);
        for u in 0..nf {
            let y = action[u][xb];
            if f.proj.pi[y] != b || coords[y] != usize::MAX {
                return Err(Error::Inconsistent(format!("action is not free and transitive on fiber {b}")));
            }
            coords[y] = u;
        }
        if fib.len() != nf {
            return Err(Error::Inconsistent("fiber sizes differ".into()));
        }
    }
    for u in 0..nf {
        for v in 0..nf {
            let uv = g.mul(u, v);
            if (0..n).any(|x| action[uv][x] != action[u][action[v][x]]) {
                return Err(Error::Inconsistent("action is not a group action".into()));
            }
        }
    }
    Ok(FiberGroup { group, points, action, coords })
}

/// Vertical quads `(x, u·x, v·x, w·x)` have class `w u^-1 v^-1`; checked on
/// every vertical quad.
fn check_vertical_classes(f: &Foundation, fg: &FiberGroup) -> Result<()> {
    let g = fg.group.group();
    let nf = fg.points.len();
    let mut buf = Vec::new();
    for x in 0..f.s.size() {
        for u in 0..nf {
            for v in 0..nf {
                for w in 0..nf {
                    let q = Quad([x, fg.act(u, x), fg.act(v, x), fg.act(w, x)]);
                    let c = f.canon(f.base.identity(), &q, &mut buf);
                    let expect = g.mul(w, g.inv(g.mul(u, v)));
                    if c.0[3] != fg.points[expect] {
                        return Err(Error::Inconsistent(format!("vertical class of {:?}", q.0)));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn fiber_group(s: &ParallelepipedStructure) -> Result<FiberGroup> {
    let f = Foundation::new(s)?;
    let fg = fiber_group_in(&f)?;
    let n = s.size() as u128;
    let nf = fg.points.len() as u128;
    if n * nf.pow(3) <= 1 << 22 {
        check_vertical_classes(&f, &fg)?;
    }
    Ok(fg)
}

/// `0 → F → P_s → B → 0`.
#[derive(Clone, Debug)]
pub struct ExtensionSequence {
    pub s: usize,
    pub fiber: AbelianGroup,
    pub middle: AbelianGroup,
    pub base: AbelianGroup,
    pub inclusion: Vec<usize>,
    pub projection: Vec<usize>,
}

pub(crate) fn extension_in(f: &Foundation, fg: &FiberGroup, s: usize) -> Result<ExtensionSequence> {
    let cg = class_group_in(f, s)?;
    let xs = f.proj.rep(s);
    let nf = fg.points.len();
    let mut buf = Vec::new();
    let mut inclusion = Vec::with_capacity(nf);
    for v in 0..nf {
        let q = Quad([0, xs, 0, fg.act(v, xs)]);
        let c = f.canon(s, &q, &mut buf);
        let k = cg.reps.binary_search(&c).map_err(|_| Error::Inconsistent("inclusion image".into()))?;
        inclusion.push(k);
    }
    let e = ExtensionSequence {
        s,
        fiber: fg.group.clone(),
        middle: cg.group,
        base: f.base.clone(),
        inclusion,
        projection: cg.q,
    };
    check_exact(&e)?;
    Ok(e)
}

fn check_exact(e: &ExtensionSequence) -> Result<()> {
    let (fg, mg, bg) = (e.fiber.group(), e.middle.group(), e.base.group());
    if !fg.is_hom_to(mg, &e.inclusion) || !mg.is_hom_to(bg, &e.projection) {
        return Err(Error::Inconsistent("sequence maps are not homomorphisms".into()));
    }
    let mut image = vec![false; mg.order()];
    for &k in &e.inclusion {
        if image[k] {
            return Err(Error::Inconsistent("inclusion is not injective".into()));
        }
        image[k] = true;
    }
    let mut onto = vec![false; bg.order()];
    for (k, &b) in e.projection.iter().enumerate() {
        onto[b] = true;
        if image[k] != (b == bg.identity()) {
            return Err(Error::Inconsistent("image of the inclusion is not the kernel".into()));
        }
    }
    if onto.iter().any(|&o| !o) {
        return Err(Error::Inconsistent("projection is not onto".into()));
    }
    Ok(())
}

pub fn extension_at(s_struct: &ParallelepipedStructure, s: usize) -> Result<ExtensionSequence> {
    let f = Foundation::new(s_struct)?;
    let fg = fiber_group_in(&f)?;
    extension_in(&f, &fg, s)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum SplitResult {
    /// `images[b]` is the class `φ(b)`.
    Section { images: Vec<usize> },
    /// No lift of basis element `generator` (of order `order`) has order
    /// dividing `order`; `lift_orders` lists the orders that occur.
    NoSection { generator: usize, order: u64, lift_orders: Vec<u64> },
}

impl SplitResult {
    pub fn splits(&self) -> bool {
        matches!(self, SplitResult::Section { .. })
    }
}

pub const SPLIT_GUARD: usize = 1 << 20;

/// Searches a section `φ: B → P_s` of `q_s`, one basis generator at a time.
pub fn splits(e: &ExtensionSequence) -> Result<SplitResult> {
    check_exact(e)?;
    let (mg, bg) = (&e.middle, &e.base);
    let mut cands: Vec<Vec<usize>> = Vec::new();
    for &b in bg.basis() {
        let mut c: Vec<usize> = (0..mg.order()).filter(|&k| e.projection[k] == b).collect();
        c.sort_by_key(|&k| (mg.element_order(k), k));
        cands.push(c);
    }
    let total: usize = cands.iter().map(|c| c.len()).sum();
    if total > SPLIT_GUARD {
        return Err(Error::Guard { what: "split search", size: total as u128, limit: SPLIT_GUARD as u128 });
    }
    let mut chosen = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let d = bg.factors()[i];
        match c.iter().find(|&&k| d % mg.element_order(k) as u64 == 0) {
            Some(&k) => chosen.push(k),
            None => {
                let mut lift_orders: Vec<u64> = c.iter().map(|&k| mg.element_order(k) as u64).collect();
                lift_orders.sort_unstable();
                lift_orders.dedup();
                return Ok(SplitResult::NoSection { generator: bg.basis()[i], order: d, lift_orders });
            }
        }
    }
    let g = mg.group();
    let images: Vec<usize> = (0..bg.order())
        .map(|b| {
            bg.coordinates(b)
                .iter()
                .zip(&chosen)
                .fold(g.identity(), |acc, (&c, &k)| g.mul(acc, g.pow(k, c as i64)))
        })
        .collect();
    if !bg.group().is_hom_to(g, &images) || (0..bg.order()).any(|b| e.projection[images[b]] != b) {
        return Err(Error::Inconsistent("section failed post-hoc verification".into()));
    }
    Ok(SplitResult::Section { images })
}

#[derive(Clone, Debug)]
pub struct NilReport {
    pub per_s: Vec<(usize, SplitResult)>,
    pub nil: bool,
}

/// True iff every extension `0 → F → P_s → B → 0` splits.
pub fn is_nil(s_struct: &ParallelepipedStructure) -> Result<NilReport> {
    let f = Foundation::new(s_struct)?;
    let fg = fiber_group_in(&f)?;
    let mut per_s = Vec::new();
    for s in 0..f.base.order() {
        let e = extension_in(&f, &fg, s)?;
        per_s.push((s, splits(&e)?));
    }
    let nil = per_s.iter().all(|(_, r)| r.splits());
    Ok(NilReport { per_s, nil })
}
