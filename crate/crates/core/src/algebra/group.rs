use crate::algebra::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: usize,
    labels: Option<Vec<String>>,
}

/// Group descriptions accepted by [`build_group`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Heisenberg(usize),
    Symmetric(usize),
    Table {
        order: usize,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
    },
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupSpec::Product(a, b) => FiniteGroup::product(&build_group(a)?, &build_group(b)?),
        GroupSpec::Heisenberg(p) => FiniteGroup::heisenberg(*p),
        GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n),
        GroupSpec::Table { order, mul, labels } => {
            FiniteGroup::from_table(*order, mul.clone(), labels.clone())
        }
    }
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn guard(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidGroup("order must be positive".into()));
    }
    if order > FiniteGroup::MAX_ORDER {
        return Err(Error::Guard {
            what: "group order",
            size: order as u128,
            limit: FiniteGroup::MAX_ORDER as u128,
        });
    }
    Ok(())
}

impl FiniteGroup {
    pub const MAX_ORDER: usize = 4096;

    /// Validates a row-major table: entries in range, two-sided identity and
    /// inverses, and associativity (Light's test over a generating set).
    pub fn from_table(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        guard(order)?;
        if mul.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(bad) = mul.iter().position(|&v| v as usize >= order) {
            return Err(Error::InvalidGroup(format!(
                "entry {} at position {} is out of range",
                mul[bad], bad
            )));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "{} labels for {} elements",
                    l.len(),
                    order
                )));
            }
        }
        let n = order;
        let id = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] as usize == id)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no right inverse")))?;
            if mul[y * n + x] as usize != id {
                return Err(Error::InvalidGroup(format!(
                    "inverse of element {x} is not two-sided"
                )));
            }
            inv[x] = y as u32;
        }
        let g = FiniteGroup { order, mul, inv, id, labels };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            gens.push(x);
            // closure of the identity under right multiplication by gens
            seen = vec![false; n];
            seen[self.id] = true;
            let mut queue = vec![self.id];
            while let Some(c) = queue.pop() {
                for &g in &gens {
                    let y = self.mul(c, g);
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for &g in &gens {
                    if self.mul(xy, g) != self.mul(x, self.mul(y, g)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative: ({x}*{y})*{g} != {x}*({y}*{g})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0], id: 0, labels: None }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        guard(n)?;
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inv = (0..n).map(|x| ((n - x) % n) as u32).collect();
        Ok(FiniteGroup { order: n, mul, inv, id: 0, labels: None })
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        guard(na.saturating_mul(nb))?;
        let n = na * nb;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
                mul[x * n + y] = v as u32;
            }
        }
        let inv = (0..n).map(|x| (a.inv(x / nb) * nb + b.inv(x % nb)) as u32).collect();
        let labels = match (&a.labels, &b.labels) {
            (None, None) => None,
            _ => Some((0..n).map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb))).collect()),
        };
        Ok(FiniteGroup { order: n, mul, inv, id: a.id * nb + b.id, labels })
    }

    /// Unitriangular 3×3 matrices over Z/p, encoded `(a,b,c)` with
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`, index `(a*p + b)*p + c`.
    pub fn heisenberg(p: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidGroup(format!("{p} is not prime")));
        }
        guard(p.saturating_pow(3))?;
        let n = p * p * p;
        let enc = |a: usize, b: usize, c: usize| (a % p * p + b % p) * p + c % p;
        let dec = |x: usize| (x / (p * p), x / p % p, x % p);
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let (a, b, c) = dec(x);
            for y in 0..n {
                let (a2, b2, c2) = dec(y);
                mul[x * n + y] = enc(a + a2, b + b2, c + c2 + a * b2) as u32;
            }
        }
        let inv = (0..n)
            .map(|x| {
                let (a, b, c) = dec(x);
                // (a,b,c)^-1 = (-a, -b, ab - c)
                enc(p - a, p - b, (a * b + p * p - c) % p) as u32
            })
            .collect();
        let labels = (0..n)
            .map(|x| {
                let (a, b, c) = dec(x);
                format!("({a},{b},{c})")
            })
            .collect();
        Ok(FiniteGroup { order: n, mul, inv, id: 0, labels: Some(labels) })
    }

    /// Symmetric group on `n` letters, elements in lexicographic order of
    /// their one-line notation, composition `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("symmetric group needs n >= 1".into()));
        }
        let count = (1..=n).try_fold(1usize, |a, k| a.checked_mul(k)).unwrap_or(usize::MAX);
        guard(count)?;
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(count);
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let index: std::collections::HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut mul = vec![0u32; count * count];
        for (x, s) in perms.iter().enumerate() {
            for (y, t) in perms.iter().enumerate() {
                let st: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
                mul[x * count + y] = index[&st] as u32;
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        FiniteGroup::from_table(count, mul, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a * b^-1`
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (self.id, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[g,h] = g h g^-1 h^-1`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    /// Quotient by a normal subgroup. Cosets are numbered by increasing least
    /// element; returns the quotient and the projection table.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !n.is_normal(self) {
            return Err(Error::Invalid("quotient by a non-normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in n.elements() {
                proj[self.mul(g, h)] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = proj[self.mul(a, b)] as u32;
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|_| reps.iter().map(|&r| format!("{}N", self.label(r))).collect());
        let q = FiniteGroup::from_table(m, mul, labels)?;
        Ok((q, proj))
    }

    /// Whether `f` (a table from this group to `other`) is a homomorphism.
    pub fn is_hom_to(&self, other: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn heisenberg_entries() {
        for p in [2, 3, 5] {
            let g = FiniteGroup::heisenberg(p).unwrap();
            assert_eq!(g.order(), p * p * p);
            let again = FiniteGroup::from_table(g.order(), g.table().to_vec(), None).unwrap();
            assert_eq!(again.inv, g.inv);
        }
        assert!(FiniteGroup::heisenberg(4).is_err());
        assert!(!FiniteGroup::heisenberg(3).unwrap().is_abelian());
    }

    #[test]
    fn product_is_abelian() {
        let g = FiniteGroup::product(&FiniteGroup::cyclic(3).unwrap(), &FiniteGroup::cyclic(9).unwrap()).unwrap();
        assert_eq!(g.order(), 27);
        assert!(g.is_abelian());
    }

    #[test]
    fn symmetric_three() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.label(g.identity()), "123");
    }

    #[test]
    fn rejects_bad_tables() {
        // identity missing
        assert!(FiniteGroup::from_table(2, vec![1, 0, 0, 0], None).is_err());
        // a loop that is not a group: Latin square without associativity
        let t = vec![0, 1, 2, 3, 4, 1, 2, 0, 4, 3, 2, 4, 3, 0, 1, 3, 0, 4, 1, 2, 4, 3, 1, 2, 0];
        let err = FiniteGroup::from_table(5, t, None).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)), "{err}");
        assert!(matches!(FiniteGroup::cyclic(5000), Err(Error::Guard { .. })));
    }

    #[test]
    fn quotient_of_heisenberg_by_center() {
        let g = FiniteGroup::heisenberg(3).unwrap();
        let z = crate::algebra::subgroup::center(&g);
        let (q, proj) = g.quotient(&z).unwrap();
        assert_eq!(q.order(), 9);
        assert!(q.is_abelian());
        assert!(g.is_hom_to(&q, &proj));
    }
}
