use std::sync::Arc;

use crate::algebra::cube::face_pair_member;
use crate::algebra::{center, commutator_series, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::structures::{Certificate, CubeModel, GridModel, GroundSet, Oct, ParallelepipedStructure, Quad};

/// `P = {g : g00 g01^-1 g10^-1 g11 ∈ A}` and
/// `Q = {(g',g'') : g',g'' ∈ P, g'g''^-1 ∈ G^[2,2]·M2^[2,1]·M3^[2]}`.
///
/// With `(A, M2, M3) = (G2, G2, G3)` this is `(G^[2,1], G^[3,2])`; with
/// `(F, F, 1)` it is `(G^[2,1]F^[2], G^[3,2]F^[3,1])`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    group: FiniteGroup,
    a: Subgroup,
    m2: Subgroup,
    m3: Subgroup,
    cert: Certificate,
}

impl GroupModel {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn p_subgroup(&self) -> &Subgroup {
        &self.a
    }

    #[inline]
    fn alt(&self, t: [usize; 4]) -> usize {
        let g = &self.group;
        g.mul(g.mul(g.div(t[0], t[1]), g.inv(t[2])), t[3])
    }
}

impl GridModel for GroupModel {
    fn size(&self) -> usize {
        self.group.order()
    }

    #[inline]
    fn has_quad(&self, q: &Quad) -> bool {
        self.a.contains(self.alt(q.0))
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        let g = &self.group;
        let base = g.div(g.mul(x10, x01), x00);
        let start = out.len();
        out.extend(self.a.elements().iter().map(|&t| g.mul(base, t)));
        out[start..].sort_unstable();
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(self.cert.clone())
    }

    fn describe(&self) -> String {
        self.cert.construction.clone()
    }
}

impl CubeModel for GroupModel {
    #[inline]
    fn has_oct(&self, o: &Oct) -> bool {
        let x = &o.0;
        face_pair_member(&self.group, &self.a, &self.m2, &self.m3, [x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]])
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        let g = &self.group;
        let x = seven;
        if !self.a.contains(self.alt([x[0], x[1], x[2], x[3]])) {
            return;
        }
        let h = g.div(x[0], x[4]);
        let hi = g.inv(h);
        let m01 = g.mul(hi, g.div(x[1], x[5]));
        let m10 = g.mul(hi, g.div(x[2], x[6]));
        if !self.m2.contains(m01) || !self.m2.contains(m10) {
            return;
        }
        let start = out.len();
        let base = g.mul(m10, m01);
        for &t in self.m3.elements() {
            let k11 = g.mul(h, g.mul(base, t));
            let x111 = g.mul(g.inv(k11), x[3]);
            if self.a.contains(self.alt([x[4], x[5], x[6], x111])) {
                out.push(x111);
            }
        }
        out[start..].sort_unstable();
    }
}

fn ground_for(g: &FiniteGroup) -> Result<GroundSet> {
    match g.labels() {
        Some(l) => GroundSet::with_labels(l.to_vec()),
        None => GroundSet::new(g.order()),
    }
}

pub(crate) fn group_model_with(g: &FiniteGroup, f0: Option<&Subgroup>, construction: String) -> Result<GroupModel> {
    let (g2, g3) = commutator_series(g);
    let mut checks = Vec::new();
    let (a, m2, m3, strong) = match f0 {
        None => {
            let strong = g3.is_trivial();
            checks.push(("G3 trivial (strong)".to_string(), true));
            (g2.clone(), g2, g3, strong)
        }
        Some(f) => {
            if !g2.is_subset(f) {
                return Err(Error::Invalid("hypothesis G2 ⊆ F fails".into()));
            }
            if !f.is_central(g) {
                return Err(Error::Invalid("hypothesis F ⊆ Z(G) fails".into()));
            }
            checks.push(("G2 ⊆ F".to_string(), true));
            checks.push(("F ⊆ Z(G)".to_string(), f.is_subset(&center(g))));
            (f.clone(), f.clone(), Subgroup::trivial(g), true)
        }
    };
    let cert = Certificate { construction, checks, strong };
    Ok(GroupModel { group: g.clone(), a, m2, m3, cert })
}

/// `(G^[2,1], G^[3,2])` on an abelian group, or `(G^[2,1]F0^[2], G^[3,2]F0^[3,1])`.
pub fn abelian_structure(g: &FiniteGroup, f0: Option<&Subgroup>) -> Result<ParallelepipedStructure> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let name = match f0 {
        None => format!("abelian structure (G^[2,1], G^[3,2]) on a group of order {}", g.order()),
        Some(f) => format!("abelian structure (G^[2,1]F^[2], G^[3,2]F^[3,1]) with |G| = {}, |F| = {}", g.order(), f.order()),
    };
    let m = group_model_with(g, f0, name)?;
    ParallelepipedStructure::new(ground_for(g)?, Arc::new(m))
}

/// `(G^[2,1], G^[3,2])`, or with `F0` (requires `G2 ⊆ F0 ⊆ Z(G)`)
/// `(G^[2,1]F0^[2], G^[3,2]F0^[3,1])`.
pub fn group_structure(g: &FiniteGroup, f0: Option<&Subgroup>) -> Result<ParallelepipedStructure> {
    let name = match f0 {
        None => format!("group structure (G^[2,1], G^[3,2]) on a group of order {}", g.order()),
        Some(f) => format!("group structure (G^[2,1]F^[2], G^[3,2]F^[3,1]) with |G| = {}, |F| = {}", g.order(), f.order()),
    };
    let m = group_model_with(g, f0, name)?;
    ParallelepipedStructure::new(ground_for(g)?, Arc::new(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cube::{cube_vector, small_generating_set, TupleGroupElement, VertexSet};
    use std::collections::HashSet;

    /// Closure of the generators of `G^[3,2]` and `F^[3,1]`.
    fn closure_q(g: &FiniteGroup, f: &Subgroup) -> HashSet<[usize; 8]> {
        let mut gens = Vec::new();
        for alpha in VertexSet::faces3() {
            for &x in &small_generating_set(g) {
                gens.push(cube_vector(g, x, alpha, 3).unwrap());
            }
        }
        for alpha in VertexSet::edges(3) {
            for &x in f.generators() {
                gens.push(cube_vector(g, x, alpha, 3).unwrap());
            }
        }
        let id = TupleGroupElement::identity(g, 8);
        let mut seen = HashSet::new();
        seen.insert(id);
        let mut queue = vec![id];
        while let Some(t) = queue.pop() {
            for s in &gens {
                let u = t.mul(g, s);
                if seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        seen.into_iter().map(|t| std::array::from_fn(|i| t.get(i))).collect()
    }

    #[test]
    fn with_subgroup_matches_closure() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let cases = vec![
            (FiniteGroup::cyclic(4).unwrap(), vec![2]),
            (FiniteGroup::product(&c2, &c2).unwrap(), vec![1]),
            (FiniteGroup::heisenberg(2).unwrap(), vec![1]),
        ];
        for (g, fgens) in cases {
            let f = Subgroup::generated(&g, &fgens);
            let closure = closure_q(&g, &f);
            let s = group_structure(&g, Some(&f)).unwrap();
            let octs: HashSet<[usize; 8]> = s.octs_sorted().into_iter().map(|o| o.0).collect();
            assert_eq!(octs, closure, "order {}", g.order());
            for o in &closure {
                assert!(s.has_oct(&Oct(*o)));
            }
        }
    }

    #[test]
    fn enumeration_matches_membership() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let s = group_structure(&g, None).unwrap();
        let octs = s.octs_sorted();
        assert_eq!(octs.len(), crate::algebra::cube_group(&g, crate::algebra::CubeKind::Face3).unwrap().order());
        assert!(octs.iter().all(|o| s.has_oct(o)));
    }

    #[test]
    fn hypothesis_errors_name_the_inclusion() {
        let h = FiniteGroup::heisenberg(2).unwrap();
        let triv = Subgroup::trivial(&h);
        let err = group_structure(&h, Some(&triv)).unwrap_err().to_string();
        assert!(err.contains("G2 ⊆ F"), "{err}");
        let whole = Subgroup::whole(&h);
        let err = group_structure(&h, Some(&whole)).unwrap_err().to_string();
        assert!(err.contains("Z(G)"), "{err}");
        assert!(matches!(abelian_structure(&h, None), Err(Error::NotAbelian)));
    }
}
