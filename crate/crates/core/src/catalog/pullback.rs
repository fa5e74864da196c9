use std::sync::Arc;

use crate::error::{Error, Result};
use crate::structures::{Certificate, CubeModel, GridModel, GroundSet, Oct, ParallelepipedStructure, Quad};

/// `((π^[2])^-1 P, (π^[3])^-1 Q)` for a surjection `π: X → Y`.
#[derive(Debug)]
pub struct PullbackModel {
    inner: Arc<dyn CubeModel>,
    map: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    cert: Certificate,
}

impl PullbackModel {
    fn push_fibers(&self, w: &[usize], out: &mut Vec<usize>) {
        let start = out.len();
        for &y in w {
            out.extend_from_slice(&self.fibers[y]);
        }
        out[start..].sort_unstable();
    }
}

impl GridModel for PullbackModel {
    fn size(&self) -> usize {
        self.map.len()
    }

    fn has_quad(&self, q: &Quad) -> bool {
        self.inner.has_quad(&q.map(|x| self.map[x]))
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        let mut w = Vec::new();
        self.inner.quad_witnesses(self.map[x00], self.map[x01], self.map[x10], &mut w);
        self.push_fibers(&w, out);
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(self.cert.clone())
    }

    fn describe(&self) -> String {
        self.cert.construction.clone()
    }
}

impl CubeModel for PullbackModel {
    fn has_oct(&self, o: &Oct) -> bool {
        self.inner.has_oct(&o.map(|x| self.map[x]))
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        let mut w = Vec::new();
        self.inner.oct_witnesses(&seven.map(|x| self.map[x]), &mut w);
        self.push_fibers(&w, out);
    }
}

/// The inverse image of `S` under `map: X → S.ground`, which must be onto.
pub fn inverse_image(s: &ParallelepipedStructure, map: &[usize]) -> Result<ParallelepipedStructure> {
    s.ensure_verified()?;
    let m = s.size();
    let mut fibers = vec![Vec::new(); m];
    for (x, &y) in map.iter().enumerate() {
        if y >= m {
            return Err(Error::Invalid(format!("map sends {x} to {y}, outside the {m}-point ground set")));
        }
        fibers[y].push(x);
    }
    if let Some(y) = fibers.iter().position(|f| f.is_empty()) {
        return Err(Error::Invalid(format!("map is not onto: {y} has no preimage")));
    }
    let mut checks = vec![("map onto".to_string(), true)];
    if let Some(c) = s.model().certificate() {
        checks.extend(c.checks);
    }
    let injective = fibers.iter().all(|f| f.len() == 1);
    let cert = Certificate {
        construction: format!("inverse image on {} points of: {}", map.len(), s.model().describe()),
        checks,
        strong: injective && s.is_strong(),
    };
    let labels: Vec<String> = map
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}.{}", s.ground().label(y), fibers[y].iter().position(|&z| z == x).unwrap_or(0)))
        .collect();
    let model = PullbackModel { inner: s.model().clone(), map: map.to_vec(), fibers, cert };
    ParallelepipedStructure::new(GroundSet::with_labels(labels)?, Arc::new(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::catalog::{abelian_structure, find_isomorphism};
    use crate::structures::{close_parallelogram, strong_quotient};

    #[test]
    fn two_to_one_is_weak_and_collapses() {
        let s = abelian_structure(&FiniteGroup::cyclic(3).unwrap(), None).unwrap();
        let map = vec![0, 0, 1, 1, 2, 2];
        let w = inverse_image(&s, &map).unwrap();
        let r = w.verify();
        assert!(r.passed(), "{}", r.render());
        assert!(!r.strong);
        assert_eq!(close_parallelogram(&w.grid(), 0, 2, 4).unwrap(), vec![0, 1]);
        let q = strong_quotient(&w).unwrap();
        assert_eq!(q.structure.size(), 3);
        assert!(find_isomorphism(&q.structure, &s).unwrap().is_some());
    }

    #[test]
    fn not_onto_is_rejected() {
        let s = abelian_structure(&FiniteGroup::cyclic(3).unwrap(), None).unwrap();
        assert!(inverse_image(&s, &[0, 1, 1]).is_err());
    }
}
