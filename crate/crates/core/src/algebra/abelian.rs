use serde::Serialize;

use crate::algebra::group::FiniteGroup;
use crate::algebra::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A finite abelian group with an invariant-factor basis.
///
/// `factors` satisfy `d1 | d2 | ... | dk`; `basis[i]` has order `factors[i]`
/// and every element has a unique coordinate vector with `0 <= c_i < d_i`.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    group: FiniteGroup,
    factors: Vec<u64>,
    basis: Vec<usize>,
    coords: Vec<Vec<u32>>,
    by_code: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Invariants(pub Vec<u64>);

impl std::fmt::Display for Invariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Basis and orders by repeatedly splitting off a cyclic subgroup of
/// maximal order; orders come out non-increasing.
fn decompose(g: &FiniteGroup) -> Result<(Vec<usize>, Vec<u64>)> {
    if g.order() == 1 {
        return Ok((vec![], vec![]));
    }
    let (a, d) = (0..g.order())
        .map(|x| (x, g.element_order(x)))
        .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
        .unwrap();
    let cyc = Subgroup::generated(g, &[a]);
    let (h, proj) = g.quotient(&cyc)?;
    let mut rep = vec![usize::MAX; h.order()];
    for x in (0..g.order()).rev() {
        rep[proj[x]] = x;
    }
    let (hb, ho) = decompose(&h)?;
    let mut basis = vec![a];
    let mut orders = vec![d as u64];
    // position of each power of a
    let mut log_a = vec![usize::MAX; g.order()];
    let mut x = g.identity();
    for k in 0..d {
        log_a[x] = k;
        x = g.mul(x, a);
    }
    for (&cb, &e) in hb.iter().zip(&ho) {
        let c = rep[cb];
        let k = log_a[g.pow(c, e as i64)];
        if k == usize::MAX || !(k as u64).is_multiple_of(e) {
            return Err(Error::Inconsistent("lift of quotient generator".into()));
        }
        let lifted = g.mul(c, g.pow(a, -((k as u64 / e) as i64)));
        debug_assert_eq!(g.element_order(lifted) as u64, e);
        basis.push(lifted);
        orders.push(e);
    }
    Ok((basis, orders))
}

impl AbelianGroup {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let (mut basis, mut factors) = decompose(&group)?;
        basis.reverse();
        factors.reverse();
        let total: u64 = factors.iter().product();
        if total != group.order() as u64 {
            return Err(Error::Inconsistent("invariant factors do not multiply to the order".into()));
        }
        let n = group.order();
        let mut coords = vec![Vec::new(); n];
        let mut by_code = vec![usize::MAX; n];
        for code in 0..n {
            let mut rest = code as u64;
            let mut c = vec![0u32; factors.len()];
            let mut x = group.identity();
            for i in (0..factors.len()).rev() {
                c[i] = (rest % factors[i]) as u32;
                rest /= factors[i];
                x = group.mul(x, group.pow(basis[i], c[i] as i64));
            }
            if !coords[x].is_empty() || (factors.is_empty() && code > 0) {
                return Err(Error::Inconsistent("basis is not free".into()));
            }
            coords[x] = c;
            by_code[code] = x;
        }
        Ok(AbelianGroup { group, factors, basis, coords, by_code })
    }

    pub fn trivial() -> Self {
        AbelianGroup::new(FiniteGroup::trivial()).expect("trivial group")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn identity(&self) -> usize {
        self.group.identity()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn invariants(&self) -> Invariants {
        Invariants(self.factors.clone())
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coordinates(&self, x: usize) -> &[u32] {
        &self.coords[x]
    }

    /// Element with the given coordinates (reduced modulo the factors).
    pub fn element(&self, c: &[u64]) -> usize {
        let mut code = 0u64;
        for (i, &d) in self.factors.iter().enumerate() {
            code = code * d + c.get(i).copied().unwrap_or(0) % d;
        }
        self.by_code[code as usize]
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.group.element_order(x)
    }
}

pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    Ok(AbelianGroup::new(g.clone())?.factors)
}

pub fn subgroup_invariants(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<u64>> {
    abelian_invariants(&h.to_group(g).0)
}

/// Whether two finite abelian groups are isomorphic.
pub fn isomorphic(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    a.factors == b.factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert!(abelian_invariants(&FiniteGroup::trivial()).unwrap().is_empty());
        assert_eq!(abelian_invariants(&FiniteGroup::cyclic(9).unwrap()).unwrap(), vec![9]);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = FiniteGroup::product(&c3, &c3).unwrap();
        assert_eq!(abelian_invariants(&g).unwrap(), vec![3, 3]);
        assert!(matches!(
            abelian_invariants(&FiniteGroup::symmetric(3).unwrap()),
            Err(Error::NotAbelian)
        ));
    }

    #[test]
    fn mixed_products() {
        let c = |n| FiniteGroup::cyclic(n).unwrap();
        let g = FiniteGroup::product(&FiniteGroup::product(&c(4), &c(6)).unwrap(), &c(10)).unwrap();
        // Z/4 x Z/6 x Z/10 = Z/2 x Z/2 x Z/60
        assert_eq!(abelian_invariants(&g).unwrap(), vec![2, 2, 60]);
        let h = FiniteGroup::heisenberg(3).unwrap();
        let z = crate::algebra::subgroup::center(&h);
        assert_eq!(subgroup_invariants(&h, &z).unwrap(), vec![3]);
    }

    fn count_elements_of_order_dividing(g: &FiniteGroup, k: usize) -> usize {
        (0..g.order()).filter(|&x| k.is_multiple_of(g.element_order(x))).count()
    }

    proptest! {
        // the number of solutions of x^k = 1 determines a finite abelian group
        #[test]
        fn factors_match_torsion_counts(a in 1usize..13, b in 1usize..13, c in 1usize..7) {
            let g = FiniteGroup::product(
                &FiniteGroup::product(&FiniteGroup::cyclic(a).unwrap(), &FiniteGroup::cyclic(b).unwrap()).unwrap(),
                &FiniteGroup::cyclic(c).unwrap(),
            ).unwrap();
            let ag = AbelianGroup::new(g.clone()).unwrap();
            let f = ag.factors().to_vec();
            prop_assert_eq!(f.iter().product::<u64>(), (a * b * c) as u64);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            for k in 1..=12usize {
                let predicted: u64 = f.iter().map(|&d| num_gcd(d, k as u64)).product();
                prop_assert_eq!(predicted as usize, count_elements_of_order_dividing(&g, k));
            }
            for x in 0..g.order() {
                let cs: Vec<u64> = ag.coordinates(x).iter().map(|&v| v as u64).collect();
                prop_assert_eq!(ag.element(&cs), x);
            }
        }
    }

    fn num_gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { num_gcd(b, a % b) }
    }
}
