use crate::error::{Error, Result};
use crate::structures::ParallelepipedStructure;

pub const ISO_MAX_OCTS: u128 = 1 << 26;
pub const RELABEL_MAX_POINTS: usize = 8;

fn octs_fit(s: &ParallelepipedStructure) -> Result<()> {
    let est = s.estimated_oct_count();
    if est > ISO_MAX_OCTS {
        return Err(Error::Guard { what: "isomorphism check", size: est, limit: ISO_MAX_OCTS });
    }
    Ok(())
}

/// Whether the bijection `map: X → Y` carries `P` onto `P'` and `Q` onto `Q'`.
pub fn is_isomorphism(a: &ParallelepipedStructure, b: &ParallelepipedStructure, map: &[usize]) -> Result<bool> {
    let n = a.size();
    if b.size() != n || map.len() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(Error::NotBijection);
        }
    }
    octs_fit(a)?;
    octs_fit(b)?;
    let f = |x: usize| map[x];
    let mut ok = true;
    let mut pa = 0u64;
    a.grid().for_each_quad(|q| {
        pa += 1;
        ok &= b.has_quad(&q.map(f));
    });
    if !ok || pa != b.quad_count() {
        return Ok(false);
    }
    let mut qa = 0u64;
    a.for_each_oct(|o| {
        qa += 1;
        ok &= b.has_oct(&o.map(f));
    });
    Ok(ok && qa == b.oct_count())
}

/// Exhaustive search over relabelings of a small ground set; returns the
/// first isomorphism in lexicographic order.
pub fn find_isomorphism(a: &ParallelepipedStructure, b: &ParallelepipedStructure) -> Result<Option<Vec<usize>>> {
    let n = a.size();
    if n > RELABEL_MAX_POINTS {
        return Err(Error::Guard { what: "relabeling search", size: n as u128, limit: RELABEL_MAX_POINTS as u128 });
    }
    if b.size() != n || a.quad_count() != b.quad_count() || a.oct_count() != b.oct_count() {
        return Ok(None);
    }
    let quads = a.grid().quads();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if quads.iter().all(|q| b.has_quad(&q.map(|x| perm[x]))) && is_isomorphism(a, b, &perm)? {
            return Ok(Some(perm));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::catalog::abelian_structure;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
    }

    #[test]
    fn negation_is_an_automorphism() {
        let s = abelian_structure(&FiniteGroup::cyclic(5).unwrap(), None).unwrap();
        let neg: Vec<usize> = (0..5).map(|x| (5 - x) % 5).collect();
        assert!(is_isomorphism(&s, &s, &neg).unwrap());
        let t = abelian_structure(&FiniteGroup::cyclic(4).unwrap(), None).unwrap();
        let c22 = FiniteGroup::product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap()).unwrap();
        let u = abelian_structure(&c22, None).unwrap();
        assert!(find_isomorphism(&t, &u).unwrap().is_none());
        assert_eq!(find_isomorphism(&t, &t).unwrap(), Some(vec![0, 1, 2, 3]));
    }
}
