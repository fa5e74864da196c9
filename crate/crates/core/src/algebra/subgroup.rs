use crate::algebra::group::FiniteGroup;

/// A subgroup of a [`FiniteGroup`], stored as a sorted element list plus a
/// membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Closure of `gens` under multiplication.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; g.order()];
        mask[g.identity()] = true;
        let mut elements = vec![g.identity()];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &h in gens {
                let y = g.mul(x, h);
                if !mask[y] {
                    mask[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Subgroup { elements, generators, mask }
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup::generated(g, &[])
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let all: Vec<usize> = (0..g.order()).collect();
        Subgroup { elements: all.clone(), generators: all, mask: vec![true; g.order()] }
    }

    /// Builds a subgroup from a membership mask already known to be closed.
    pub(crate) fn from_mask(mask: Vec<bool>) -> Subgroup {
        let elements: Vec<usize> = (0..mask.len()).filter(|&x| mask[x]).collect();
        Subgroup { generators: elements.clone(), elements, mask }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask: Vec<bool> = self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect();
        Subgroup::from_mask(mask)
    }

    /// Subgroup generated by both.
    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Subgroup::generated(g, &gens)
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| {
            let xi = g.inv(x);
            self.generators.iter().all(|&h| self.contains(g.mul(g.mul(x, h), xi)))
        })
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&h| (0..g.order()).all(|x| g.mul(x, h) == g.mul(h, x)))
    }

    /// The subgroup as a group of its own, with the embedding table
    /// (new index → parent index).
    pub fn to_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let m = self.elements.len();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            pos[x] = i;
        }
        let mut mul = vec![0u32; m * m];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mul[i * m + j] = pos[g.mul(a, b)] as u32;
            }
        }
        let labels = g
            .labels()
            .map(|_| self.elements.iter().map(|&x| g.label(x)).collect());
        let sub = FiniteGroup::from_table(m, mul, labels).expect("subgroup table is a group");
        (sub, self.elements.clone())
    }
}

/// `(G2, G3)`: the closure of all commutators `[g,h]`, and the closure of all
/// `[g,u]` with `u ∈ G2`.
pub fn commutator_series(g: &FiniteGroup) -> (Subgroup, Subgroup) {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut comms = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    let g2 = Subgroup::generated(g, &comms);
    let mut seen = vec![false; n];
    let mut comms = Vec::new();
    for a in 0..n {
        for &u in g2.elements() {
            let c = g.commutator(a, u);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    let g3 = Subgroup::generated(g, &comms);
    (g2, g3)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let mask = (0..g.order())
        .map(|h| (0..g.order()).all(|x| g.mul(x, h) == g.mul(h, x)))
        .collect();
    Subgroup::from_mask(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_closure(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
        let mut set: std::collections::BTreeSet<usize> = seed.iter().copied().collect();
        set.insert(g.identity());
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in &cur {
                    set.insert(g.mul(a, b));
                }
            }
            if set.len() == before {
                return cur;
            }
        }
    }

    #[test]
    fn series_of_small_groups() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let (a, b) = commutator_series(&c6);
        assert!(a.is_trivial() && b.is_trivial());

        let h = FiniteGroup::heisenberg(2).unwrap();
        let (h2, h3) = commutator_series(&h);
        let comms: Vec<usize> = (0..8).flat_map(|x| (0..8).map(move |y| (x, y))).map(|(x, y)| h.commutator(x, y)).collect();
        assert_eq!(h2.elements(), brute_closure(&h, &comms).as_slice());
        assert_eq!((h2.order(), h3.order()), (2, 1));
        assert_eq!(center(&h).order(), 2);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let (s2, s3c) = commutator_series(&s3);
        assert_eq!((s2.order(), s3c.order()), (3, 3));
        assert!(s3c.is_subset(&s2));
        let (q, _) = s3.quotient(&s3c).unwrap();
        assert!(commutator_series(&q).1.is_trivial());
    }

    #[test]
    fn subgroup_operations() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let a = Subgroup::generated(&g, &[4]);
        let b = Subgroup::generated(&g, &[6]);
        assert_eq!(a.order(), 3);
        assert_eq!(a.join(&g, &b).order(), 6);
        assert!(a.intersection(&b).is_trivial());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(t.order(), 2);
        assert!(!t.is_normal(&s3));
        let (sub, emb) = commutator_series(&s3).0.to_group(&s3);
        assert_eq!(sub.order(), 3);
        assert!(sub.is_hom_to(&s3, &emb));
    }
}
