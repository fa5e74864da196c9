use std::sync::Arc;

use crate::algebra::{commutator_series, FiniteGroup, Subgroup};
use crate::catalog::group_model::{group_model_with, GroupModel};
use crate::error::{Error, Result};
use crate::structures::{Certificate, CubeModel, GridModel, GroundSet, Oct, ParallelepipedStructure, Quad};

/// `G/Γ` with left cosets `gΓ`, numbered by increasing least element.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub group: FiniteGroup,
    pub gamma: Subgroup,
    /// Least element of each coset.
    pub reps: Vec<usize>,
    /// `π_Γ(g)`.
    pub projection: Vec<usize>,
}

impl CosetSpace {
    pub fn new(group: &FiniteGroup, gamma: &Subgroup) -> Self {
        let mut projection = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for g in 0..group.order() {
            if projection[g] == usize::MAX {
                for &h in gamma.elements() {
                    projection[group.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        CosetSpace { group: group.clone(), gamma: gamma.clone(), reps, projection }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// The image of `(G^[2,1]F^[2], G^[3,2]F^[3,1])` on `G/Γ`, with `Γ ∩ F = 1`.
#[derive(Clone, Debug)]
pub struct CosetModel {
    space: CosetSpace,
    inner: GroupModel,
    f: Subgroup,
    f_gamma: Subgroup,
    cert: Certificate,
}

impl CosetModel {
    #[inline]
    fn alt(&self, t: [usize; 4]) -> usize {
        let g = &self.space.group;
        g.mul(g.mul(g.div(t[0], t[1]), g.inv(t[2])), t[3])
    }

    /// `t3·γ` for the unique `γ ∈ Γ` with `(t0,t1,t2,t3·γ) ∈ P`.
    fn adjust(&self, t: [usize; 4]) -> Option<usize> {
        let g = &self.space.group;
        self.space
            .gamma
            .elements()
            .iter()
            .map(|&c| g.mul(t[3], c))
            .find(|&x| self.f.contains(self.alt([t[0], t[1], t[2], x])))
    }
}

fn dedup_tail(out: &mut Vec<usize>, start: usize) {
    out[start..].sort_unstable();
    let mut k = start;
    for i in start..out.len() {
        if i == start || out[i] != out[k - 1] {
            out[k] = out[i];
            k += 1;
        }
    }
    out.truncate(k);
}

impl GridModel for CosetModel {
    fn size(&self) -> usize {
        self.space.len()
    }

    fn has_quad(&self, q: &Quad) -> bool {
        let r = q.map(|x| self.space.reps[x]);
        self.f_gamma.contains(self.alt(r.0))
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        let g = &self.space.group;
        let r = &self.space.reps;
        let base = g.div(g.mul(r[x10], r[x01]), r[x00]);
        let start = out.len();
        out.extend(self.f_gamma.elements().iter().map(|&t| self.space.projection[g.mul(base, t)]));
        dedup_tail(out, start);
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(self.cert.clone())
    }

    fn describe(&self) -> String {
        self.cert.construction.clone()
    }
}

impl CubeModel for CosetModel {
    fn has_oct(&self, o: &Oct) -> bool {
        let mut w = Vec::new();
        self.oct_witnesses(&o.seven(), &mut w);
        w.binary_search(&o.0[7]).is_ok()
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        let mut h: [usize; 7] = std::array::from_fn(|i| self.space.reps[seven[i]]);
        for (target, face) in [(3usize, [0usize, 1, 2, 3]), (6, [0, 2, 4, 6]), (5, [0, 1, 4, 5])] {
            let t = face.map(|i| h[i]);
            match self.adjust(t) {
                Some(x) => h[target] = x,
                None => return,
            }
        }
        let mut w = Vec::new();
        self.inner.oct_witnesses(&h, &mut w);
        let start = out.len();
        out.extend(w.iter().map(|&x| self.space.projection[x]));
        dedup_tail(out, start);
    }
}

/// The structure induced on `G/Γ`. Requires `G2 ⊆ F0 ⊆ Z(G)`; when
/// `Γ ∩ F0 ≠ 1` the construction runs on `G/(Γ ∩ F0)`, which has the same
/// coset space.
pub fn coset_structure(g: &FiniteGroup, f0: &Subgroup, gamma: &Subgroup) -> Result<ParallelepipedStructure> {
    let (g2, _) = commutator_series(g);
    if !g2.is_subset(f0) {
        return Err(Error::Invalid("hypothesis G2 ⊆ F fails".into()));
    }
    if !f0.is_central(g) {
        return Err(Error::Invalid("hypothesis F ⊆ Z(G) fails".into()));
    }
    let original = CosetSpace::new(g, gamma);
    let meet = gamma.intersection(f0);
    let (group, proj) = if meet.is_trivial() {
        (g.clone(), (0..g.order()).collect::<Vec<_>>())
    } else {
        g.quotient(&meet)?
    };
    let image = |h: &Subgroup| {
        let mut v: Vec<usize> = h.elements().iter().map(|&x| proj[x]).collect();
        v.sort_unstable();
        v.dedup();
        Subgroup::generated(&group, &v)
    };
    let (f, gam) = (image(f0), image(gamma));
    if !gam.intersection(&f).is_trivial() {
        return Err(Error::Inconsistent("Γ ∩ F is not trivial after reduction".into()));
    }
    // points in the order of the cosets in G
    let reduced = CosetSpace::new(&group, &gam);
    let mut reps = Vec::with_capacity(original.len());
    for &r in &original.reps {
        reps.push(proj[r]);
    }
    let mut point_of = vec![usize::MAX; reduced.len()];
    for (i, &r) in reps.iter().enumerate() {
        point_of[reduced.projection[r]] = i;
    }
    if point_of.contains(&usize::MAX) || reps.len() != reduced.len() {
        return Err(Error::Inconsistent("coset spaces differ after reduction".into()));
    }
    let projection: Vec<usize> = (0..group.order()).map(|x| point_of[reduced.projection[x]]).collect();
    let space = CosetSpace { group: group.clone(), gamma: gam.clone(), reps, projection };
    let f_gamma = f.join(&group, &gam);
    let construction = format!(
        "coset structure on G/Γ with |G| = {}, |F| = {}, |Γ| = {}{}",
        g.order(),
        f0.order(),
        gamma.order(),
        if meet.is_trivial() { String::new() } else { format!(", reduced by Γ ∩ F of order {}", meet.order()) }
    );
    let inner = group_model_with(&group, Some(&f), construction.clone())?;
    let cert = Certificate {
        construction,
        checks: vec![
            ("G2 ⊆ F".into(), true),
            ("F ⊆ Z(G)".into(), true),
            ("Γ ∩ F = 1".into(), true),
        ],
        strong: true,
    };
    let labels: Vec<String> = original.reps.iter().map(|&r| format!("{}Γ", g.label(r))).collect();
    let model = CosetModel { space, inner, f, f_gamma, cert };
    ParallelepipedStructure::new(GroundSet::with_labels(labels)?, Arc::new(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::center;
    use crate::catalog::group_structure;
    use std::collections::BTreeSet;

    fn heis_gamma() -> (FiniteGroup, Subgroup, Subgroup) {
        let h = FiniteGroup::heisenberg(2).unwrap();
        let z = center(&h);
        // (1,0,0) has order 2 and is not central
        let gamma = Subgroup::generated(&h, &[4]);
        (h, z, gamma)
    }

    #[test]
    fn heisenberg_coset_matches_image() {
        let (h, z, gamma) = heis_gamma();
        assert!(gamma.intersection(&z).is_trivial());
        let s = coset_structure(&h, &z, &gamma).unwrap();
        assert_eq!(s.size(), 4);
        let r = s.verify();
        assert!(r.passed() && r.strong, "{}", r.render());
        let up = group_structure(&h, Some(&z)).unwrap();
        let space = CosetSpace::new(&h, &gamma);
        let pi = |x: usize| space.projection[x];
        let mut image = BTreeSet::new();
        up.for_each_oct(|o| {
            image.insert(o.map(pi));
        });
        let octs: BTreeSet<Oct> = s.octs_sorted().into_iter().collect();
        assert_eq!(octs, image);
        let quads: BTreeSet<Quad> = up.grid().quads().into_iter().map(|q| q.map(pi)).collect();
        assert_eq!(quads, s.grid().quads().into_iter().collect());
    }

    #[test]
    fn trivial_gamma_and_full_gamma() {
        let (h, z, _) = heis_gamma();
        let s = coset_structure(&h, &z, &Subgroup::trivial(&h)).unwrap();
        let g = group_structure(&h, Some(&z)).unwrap();
        assert_eq!(s.octs_sorted(), g.octs_sorted());
        let c = FiniteGroup::cyclic(6).unwrap();
        let one = coset_structure(&c, &Subgroup::trivial(&c), &Subgroup::whole(&c)).unwrap();
        assert_eq!(one.size(), 1);
        assert!(one.verify().passed());
    }

    #[test]
    fn meeting_gamma_is_reduced() {
        let c = FiniteGroup::cyclic(8).unwrap();
        let f = Subgroup::generated(&c, &[2]);
        let gamma = Subgroup::generated(&c, &[4]);
        let s = coset_structure(&c, &f, &gamma).unwrap();
        assert_eq!(s.size(), 4);
        assert!(s.verify().passed() && s.is_strong());
        assert!(s.model().describe().contains("reduced"));
    }
}
