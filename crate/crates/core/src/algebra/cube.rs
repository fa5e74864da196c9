//! Tuple powers `G^[2]`, `G^[3]` and their diagonal, edge and face subgroups.
//!
//! Vertex `ε ∈ {0,1}^k` has index `ε1·2^(k-1) + ... + εk`, so coordinates are
//! in lexicographic vertex order.

use std::collections::HashSet;

use crate::algebra::group::FiniteGroup;
use crate::algebra::subgroup::{commutator_series, Subgroup};
use crate::error::{Error, Result};

/// A set of vertices of `{0,1}^k` as a bitmask over vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u8);

impl VertexSet {
    pub fn full(k: usize) -> VertexSet {
        VertexSet(((1u16 << (1 << k)) - 1) as u8)
    }

    pub fn from_vertices(vs: &[usize]) -> VertexSet {
        VertexSet(vs.iter().fold(0u8, |m, &v| m | (1 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    /// Edges of the square (k = 2) or cube (k = 3).
    pub fn edges(k: usize) -> Vec<VertexSet> {
        let nv = 1usize << k;
        let mut out = Vec::new();
        for a in 0..nv {
            for bit in 0..k {
                let b = a | (1 << bit);
                if b != a {
                    out.push(VertexSet::from_vertices(&[a, b]));
                }
            }
        }
        out
    }

    /// The six faces of the cube.
    pub fn faces3() -> Vec<VertexSet> {
        let mut out = Vec::new();
        for bit in (0..3).rev() {
            for c in 0..2 {
                let vs: Vec<usize> = (0..8).filter(|v| (v >> bit) & 1 == c).collect();
                out.push(VertexSet::from_vertices(&vs));
            }
        }
        out
    }
}

/// A point of `G^[2]` or `G^[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleGroupElement {
    arity: u8,
    coords: [u16; 8],
}

impl TupleGroupElement {
    pub fn new(coords: &[usize]) -> Result<Self> {
        if coords.len() != 4 && coords.len() != 8 {
            return Err(Error::Invalid(format!("tuple arity {} is not 4 or 8", coords.len())));
        }
        let mut c = [0u16; 8];
        for (i, &x) in coords.iter().enumerate() {
            c[i] = u16::try_from(x).map_err(|_| Error::Invalid("coordinate out of range".into()))?;
        }
        Ok(TupleGroupElement { arity: coords.len() as u8, coords: c })
    }

    pub fn identity(g: &FiniteGroup, arity: usize) -> Self {
        TupleGroupElement { arity: arity as u8, coords: [g.identity() as u16; 8] }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn coords(&self) -> Vec<usize> {
        self.coords[..self.arity()].iter().map(|&c| c as usize).collect()
    }

    #[inline]
    pub fn get(&self, v: usize) -> usize {
        self.coords[v] as usize
    }

    pub fn mul(&self, g: &FiniteGroup, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..self.arity() {
            out.coords[i] = g.mul(self.get(i), other.get(i)) as u16;
        }
        out
    }

    pub fn inv(&self, g: &FiniteGroup) -> Self {
        let mut out = *self;
        for i in 0..self.arity() {
            out.coords[i] = g.inv(self.get(i)) as u16;
        }
        out
    }

    pub fn commutator(&self, g: &FiniteGroup, other: &Self) -> Self {
        self.mul(g, other).mul(g, &self.inv(g).mul(g, &other.inv(g)))
    }

    /// `(t', t'')`: the two faces `ε1 = 0` and `ε1 = 1` of an 8-tuple.
    pub fn split(&self) -> (Self, Self) {
        let a = TupleGroupElement::new(&[self.get(0), self.get(1), self.get(2), self.get(3)]).unwrap();
        let b = TupleGroupElement::new(&[self.get(4), self.get(5), self.get(6), self.get(7)]).unwrap();
        (a, b)
    }
}

/// `g^[k,α]`: `g` on the vertices of `alpha`, identity elsewhere.
pub fn cube_vector(g: &FiniteGroup, elem: usize, alpha: VertexSet, k: usize) -> Result<TupleGroupElement> {
    if k != 2 && k != 3 {
        return Err(Error::Invalid(format!("cube dimension {k} is not 2 or 3")));
    }
    let nv = 1usize << k;
    if alpha.is_empty() || (alpha.0 as usize) >> nv != 0 {
        return Err(Error::EmptyVertexSet);
    }
    let coords: Vec<usize> = (0..nv)
        .map(|v| if alpha.contains(v) { elem } else { g.identity() })
        .collect();
    TupleGroupElement::new(&coords)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubeKind {
    Diag2,
    Edge2,
    Diag3,
    Edge3,
    Face3,
}

impl CubeKind {
    pub fn arity(self) -> usize {
        match self {
            CubeKind::Diag2 | CubeKind::Edge2 => 4,
            _ => 8,
        }
    }

    pub fn dimension(self) -> usize {
        if self.arity() == 4 { 2 } else { 3 }
    }

    pub fn generator_sets(self) -> Vec<VertexSet> {
        match self {
            CubeKind::Diag2 => vec![VertexSet::full(2)],
            CubeKind::Edge2 => VertexSet::edges(2),
            CubeKind::Diag3 => vec![VertexSet::full(3)],
            CubeKind::Edge3 => VertexSet::edges(3),
            CubeKind::Face3 => VertexSet::faces3(),
        }
    }
}

/// A subgroup of a tuple power, materialized.
#[derive(Clone, Debug)]
pub struct TupleSubgroup {
    pub kind: CubeKind,
    elements: Vec<TupleGroupElement>,
    generators: Vec<TupleGroupElement>,
}

impl TupleSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[TupleGroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[TupleGroupElement] {
        &self.generators
    }

    pub fn contains(&self, t: &TupleGroupElement) -> bool {
        self.elements.binary_search(t).is_ok()
    }
}

pub const CUBE_GROUP_GUARD: usize = 1 << 24;

/// Closure of the generators `g^[k,α]` (g in a generating set of G, α in the
/// kind's vertex sets).
pub fn cube_group(g: &FiniteGroup, kind: CubeKind) -> Result<TupleSubgroup> {
    cube_group_with_guard(g, kind, CUBE_GROUP_GUARD)
}

pub fn cube_group_with_guard(g: &FiniteGroup, kind: CubeKind, guard: usize) -> Result<TupleSubgroup> {
    let k = kind.dimension();
    let gens_g = small_generating_set(g);
    let mut generators = Vec::new();
    for alpha in kind.generator_sets() {
        for &x in &gens_g {
            generators.push(cube_vector(g, x, alpha, k)?);
        }
    }
    let id = TupleGroupElement::identity(g, kind.arity());
    let mut seen: HashSet<TupleGroupElement> = HashSet::new();
    seen.insert(id);
    let mut queue = vec![id];
    while let Some(t) = queue.pop() {
        for s in &generators {
            let u = t.mul(g, s);
            if seen.insert(u) {
                if seen.len() > guard {
                    return Err(Error::Guard {
                        what: "cube group closure",
                        size: seen.len() as u128,
                        limit: guard as u128,
                    });
                }
                queue.push(u);
            }
        }
    }
    let mut elements: Vec<TupleGroupElement> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(TupleSubgroup { kind, elements, generators })
}

/// Greedy generating set in index order.
pub fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut sub = Subgroup::trivial(g);
    for x in 0..g.order() {
        if !sub.contains(x) {
            gens.push(x);
            sub = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Membership in the cube groups without enumerating them.
#[derive(Clone, Debug)]
pub struct CubeOracle {
    group: FiniteGroup,
    g2: Subgroup,
    g3: Subgroup,
}

impl CubeOracle {
    pub fn new(g: &FiniteGroup) -> Self {
        let (g2, g3) = commutator_series(g);
        CubeOracle { group: g.clone(), g2, g3 }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn series(&self) -> (&Subgroup, &Subgroup) {
        (&self.g2, &self.g3)
    }

    /// `t00 t01^-1 t10^-1 t11`
    pub fn alt2(&self, t: [usize; 4]) -> usize {
        let g = &self.group;
        g.mul(g.mul(g.div(t[0], t[1]), g.inv(t[2])), t[3])
    }

    /// Ordered product of `t_ε^((-1)^|ε|)` over vertices in index order.
    pub fn alt3(&self, t: &TupleGroupElement) -> usize {
        let g = &self.group;
        (0..8).fold(g.identity(), |acc, v| {
            let x = t.get(v);
            let x = if (v as u32).count_ones().is_multiple_of(2) { x } else { g.inv(x) };
            g.mul(acc, x)
        })
    }

    pub fn contains(&self, kind: CubeKind, t: &TupleGroupElement) -> bool {
        if t.arity() != kind.arity() {
            return false;
        }
        let c = t.coords();
        match kind {
            CubeKind::Diag2 | CubeKind::Diag3 => c.iter().all(|&x| x == c[0]),
            CubeKind::Edge2 => self.g2.contains(self.alt2([c[0], c[1], c[2], c[3]])),
            CubeKind::Edge3 => self.g2.contains(self.alt3(t)),
            CubeKind::Face3 => {
                let (a, b) = t.split();
                face_pair_member(
                    &self.group,
                    &self.g2,
                    &self.g2,
                    &self.g3,
                    [a.get(0), a.get(1), a.get(2), a.get(3)],
                    [b.get(0), b.get(1), b.get(2), b.get(3)],
                )
            }
        }
    }
}

/// `(t', t'')` with `t', t'' ∈ G^[2,1]·A^[2]` (A given by `p_sub`) and
/// `t' t''^-1 ∈ G^[2,2]·M2^[2,1]·M3^[2]`.
///
/// With `k = t' t''^-1`, `h = k00` and `m = h^-1 k`, the second condition
/// holds iff every `m_ε ∈ M2` and `m00 m01^-1 m10^-1 m11 ∈ M3`.
pub(crate) fn face_pair_member(
    g: &FiniteGroup,
    p_sub: &Subgroup,
    m2: &Subgroup,
    m3: &Subgroup,
    a: [usize; 4],
    b: [usize; 4],
) -> bool {
    let alt = |t: [usize; 4]| g.mul(g.mul(g.div(t[0], t[1]), g.inv(t[2])), t[3]);
    if !p_sub.contains(alt(a)) || !p_sub.contains(alt(b)) {
        return false;
    }
    let k: [usize; 4] = std::array::from_fn(|i| g.div(a[i], b[i]));
    let hi = g.inv(k[0]);
    let m: [usize; 4] = std::array::from_fn(|i| g.mul(hi, k[i]));
    m.iter().all(|&x| m2.contains(x)) && m3.contains(alt(m))
}

pub fn cube_membership(g: &FiniteGroup, kind: CubeKind, t: &TupleGroupElement) -> bool {
    CubeOracle::new(g).contains(kind, t)
}
