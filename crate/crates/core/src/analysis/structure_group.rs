use crate::algebra::{FiniteGroup, Subgroup};
use crate::analysis::{fiber_group, Foundation};
use crate::catalog::{coset_structure, is_isomorphism};
use crate::error::{Error, Result};
use crate::structures::{Oct, ParallelepipedStructure, Quad, FACES};

fn check_bijection(g: &[usize], n: usize) -> Result<()> {
    if g.len() != n {
        return Err(Error::NotBijection);
    }
    let mut seen = vec![false; n];
    for &y in g {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(Error::NotBijection);
        }
    }
    Ok(())
}

/// `g ∈ 𝒢`: every quad `x ∈ P` has `g·x ∈ P` and `(x, g·x) ∈ Q`.
pub fn in_structure_group(g: &[usize], s: &ParallelepipedStructure) -> Result<bool> {
    check_bijection(g, s.size())?;
    s.ensure_strong()?;
    let mut ok = true;
    s.grid().for_each_quad(|q| {
        if ok {
            let y = q.map(|x| g[x]);
            ok = s.has_quad(&y) && s.has_oct(&Oct::from_halves(q, y));
        }
    });
    Ok(ok)
}

pub const FACE_CHECK_MAX_OCTS: u128 = 1 << 24;

/// The face form: `g` applied to the four vertices of any face of any
/// `x ∈ Q` gives an element of `Q`.
pub fn in_structure_group_faces(g: &[usize], s: &ParallelepipedStructure) -> Result<bool> {
    check_bijection(g, s.size())?;
    s.ensure_strong()?;
    let est = s.estimated_oct_count();
    if est > FACE_CHECK_MAX_OCTS {
        return Err(Error::Guard { what: "face-form membership", size: est, limit: FACE_CHECK_MAX_OCTS });
    }
    let mut ok = true;
    s.for_each_oct(|o| {
        if ok {
            for face in FACES {
                let mut y = *o;
                for v in face {
                    y.0[v] = g[y.0[v]];
                }
                if !s.has_oct(&y) {
                    ok = false;
                    break;
                }
            }
        }
    });
    Ok(ok)
}

pub const ENUMERATE_MAX_POINTS: usize = 10;

/// All members of `𝒢` by a permutation search that checks each quad as soon
/// as its points are assigned. The result is sorted and checked to be a
/// 2-step nilpotent group commuting with the fiber action.
pub fn structure_group_enumerate(s: &ParallelepipedStructure, max_points: usize) -> Result<Vec<Vec<usize>>> {
    let n = s.size();
    let limit = max_points.min(ENUMERATE_MAX_POINTS);
    if n > limit {
        return Err(Error::Guard { what: "structure group enumeration", size: n as u128, limit: limit as u128 });
    }
    s.ensure_strong()?;
    let mut by_max: Vec<Vec<Quad>> = vec![Vec::new(); n];
    s.grid().for_each_quad(|q| by_max[q.max_index()].push(q));
    let mut found = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(s, &by_max, 0, &mut perm, &mut used, &mut found);
    found.sort();
    check_group(s, &found)?;
    Ok(found)
}

fn search(
    s: &ParallelepipedStructure,
    by_max: &[Vec<Quad>],
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let n = perm.len();
    if k == n {
        found.push(perm.clone());
        return;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        perm[k] = y;
        let ok = by_max[k].iter().all(|q| {
            let img = q.map(|x| perm[x]);
            s.has_quad(&img) && s.has_oct(&Oct::from_halves(*q, img))
        });
        if ok {
            used[y] = true;
            search(s, by_max, k + 1, perm, used, found);
            used[y] = false;
        }
    }
    perm[k] = usize::MAX;
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

const CLOSURE_CHECK_MAX: usize = 1 << 12;

fn check_group(s: &ParallelepipedStructure, members: &[Vec<usize>]) -> Result<()> {
    let n = s.size();
    let id: Vec<usize> = (0..n).collect();
    if members.binary_search(&id).is_err() {
        return Err(Error::Inconsistent("identity is not in the structure group".into()));
    }
    if members.len() > CLOSURE_CHECK_MAX {
        return Err(Error::Guard { what: "structure group closure check", size: members.len() as u128, limit: CLOSURE_CHECK_MAX as u128 });
    }
    for a in members {
        for b in members {
            if members.binary_search(&compose(a, b)).is_err() {
                return Err(Error::Inconsistent("structure group is not closed under composition".into()));
            }
        }
    }
    // generators by greedy closure
    let mut gens: Vec<&Vec<usize>> = Vec::new();
    let mut span: Vec<Vec<usize>> = vec![id.clone()];
    for m in members {
        if span.binary_search(m).is_ok() {
            continue;
        }
        gens.push(m);
        span = closure(&gens, &id);
    }
    let commutes = |a: &[usize], b: &[usize]| compose(a, b) == compose(b, a);
    for a in &gens {
        for b in &gens {
            let c = compose(&compose(a, b), &inverse(&compose(b, a)));
            if gens.iter().any(|t| !commutes(&c, t)) {
                return Err(Error::Inconsistent("structure group is not 2-step nilpotent".into()));
            }
        }
    }
    let fg = fiber_group(s)?;
    for u in &fg.action {
        if gens.iter().any(|t| !commutes(u, t)) {
            return Err(Error::Inconsistent("fiber action is not central in the structure group".into()));
        }
    }
    Ok(())
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut r = vec![0; a.len()];
    for (i, &y) in a.iter().enumerate() {
        r[y] = i;
    }
    r
}

fn closure(gens: &[&Vec<usize>], id: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(id.to_vec());
    let mut stack = vec![id.to_vec()];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The base translation `⟨x, g·x⟩` of a member, the same for every `x`.
pub fn base_translation(g: &[usize], s: &ParallelepipedStructure) -> Result<usize> {
    check_bijection(g, s.size())?;
    let f = Foundation::new(s)?;
    let b = f.bracket(0, g[0]);
    if (0..s.size()).any(|x| f.bracket(x, g[x]) != b) {
        return Err(Error::Inconsistent("permutation does not translate the base".into()));
    }
    Ok(b)
}

#[derive(Clone, Debug)]
pub struct NilRealization {
    pub group_order: usize,
    pub stabilizer_order: usize,
    pub transitive: bool,
    /// `gΓ ↦ g·0` is an isomorphism from the coset structure onto `S`.
    pub realized: bool,
}

/// Rebuilds `S` as the coset structure of its structure group modulo the
/// stabilizer of the basepoint, with `F` the fiber action.
pub fn nil_realization(s: &ParallelepipedStructure, max_points: usize) -> Result<NilRealization> {
    let members = structure_group_enumerate(s, max_points)?;
    let n = s.size();
    let m = members.len();
    let transitive = (0..n).all(|y| members.iter().any(|g| g[0] == y));
    if !transitive {
        return Ok(NilRealization { group_order: m, stabilizer_order: 0, transitive, realized: false });
    }
    let index = |p: &Vec<usize>| members.binary_search(p).expect("closed");
    let mut table = vec![0u32; m * m];
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            table[i * m + j] = index(&compose(a, b)) as u32;
        }
    }
    let g = FiniteGroup::from_table(m, table, None)?;
    let stab: Vec<usize> = (0..m).filter(|&i| members[i][0] == 0).collect();
    let gamma = Subgroup::generated(&g, &stab);
    let fg = fiber_group(s)?;
    let f_idx: Vec<usize> = fg.action.iter().map(index).collect();
    let f0 = Subgroup::generated(&g, &f_idx);
    let c = coset_structure(&g, &f0, &gamma)?;
    // coset i has least element reps[i]; it maps to reps[i]·0
    let space = crate::catalog::CosetSpace::new(&g, &gamma);
    let map: Vec<usize> = space.reps.iter().map(|&r| members[r][0]).collect();
    let realized = is_isomorphism(&c, s, &map)?;
    Ok(NilRealization { group_order: m, stabilizer_order: gamma.order(), transitive, realized })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::center;
    use crate::analysis::is_nil;
    use crate::catalog::{abelian_structure, counterexample, group_structure};

    #[test]
    fn identity_and_fiber_action_are_members() {
        let s = counterexample(3).unwrap();
        let id: Vec<usize> = (0..9).collect();
        assert!(in_structure_group(&id, &s).unwrap());
        let fg = fiber_group(&s).unwrap();
        for u in &fg.action {
            assert!(in_structure_group(u, &s).unwrap());
            assert!(in_structure_group_faces(u, &s).unwrap());
        }
        let mut t = id.clone();
        t.swap(0, 4);
        assert!(!in_structure_group(&t, &s).unwrap());
        assert!(!in_structure_group_faces(&t, &s).unwrap());
        assert!(matches!(in_structure_group(&[0, 0, 1], &s), Err(Error::NotBijection)));
    }

    #[test]
    fn counterexample_group_misses_nonzero_translations() {
        let s = counterexample(3).unwrap();
        let members = structure_group_enumerate(&s, 10).unwrap();
        let base: Vec<usize> = members.iter().map(|g| base_translation(g, &s).unwrap()).collect();
        assert!(base.iter().all(|&b| b == 0));
        let fg = fiber_group(&s).unwrap();
        assert!(fg.action.iter().all(|u| members.binary_search(u).is_ok()));
    }

    #[test]
    fn cyclic_two_translations() {
        let s = abelian_structure(&FiniteGroup::cyclic(2).unwrap(), None).unwrap();
        let m = structure_group_enumerate(&s, 10).unwrap();
        assert!(m.contains(&vec![0, 1]) && m.contains(&vec![1, 0]));
        let one = abelian_structure(&FiniteGroup::trivial(), None).unwrap();
        assert_eq!(structure_group_enumerate(&one, 10).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn weak_structure_is_rejected() {
        let s = group_structure(&FiniteGroup::symmetric(3).unwrap(), None).unwrap();
        assert!(matches!(in_structure_group(&[0, 1, 2, 3, 4, 5], &s), Err(Error::Weak(_))));
    }

    #[test]
    fn heisenberg_coset_is_realized() {
        let h = FiniteGroup::heisenberg(2).unwrap();
        let z = center(&h);
        let gamma = Subgroup::generated(&h, &[4]);
        let s = coset_structure(&h, &z, &gamma).unwrap();
        assert!(is_nil(&s).unwrap().nil);
        let r = nil_realization(&s, 10).unwrap();
        assert!(r.transitive && r.realized, "{r:?}");
        let c = counterexample(3).unwrap();
        let r = nil_realization(&c, 10).unwrap();
        assert!(!r.transitive);
    }
}
