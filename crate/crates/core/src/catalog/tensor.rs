use std::sync::Arc;

use crate::algebra::{isomorphic, AbelianGroup, FiniteGroup};
use crate::analysis::{base_group, fiber_group};
use crate::catalog::iso::is_isomorphism;
use crate::catalog::restrict::restrict;
use crate::error::{Error, Result};
use crate::structures::{Certificate, CubeModel, GridModel, GroundSet, Oct, ParallelepipedStructure, Quad};

/// `X⊗E = (X×E)/≅`, point `(b, e)` at index `b·|E| + e` standing for the
/// class of `(x_b, e)`.
#[derive(Debug)]
pub struct TensorModel {
    base: FiniteGroup,
    e: FiniteGroup,
    inner: Arc<dyn CubeModel>,
    reps: Vec<usize>,
    pi: Vec<usize>,
    coords: Vec<usize>,
    inc: Vec<usize>,
    cert: Certificate,
}

const SIGNS: [bool; 8] = [true, false, false, true, false, true, true, false];

impl TensorModel {
    fn split(&self, y: usize) -> (usize, usize) {
        (y / self.e.order(), y % self.e.order())
    }

    fn base_alt(&self, b: [usize; 4]) -> usize {
        let g = &self.base;
        g.mul(g.mul(g.div(b[0], b[1]), g.inv(b[2])), b[3])
    }
}

impl GridModel for TensorModel {
    fn size(&self) -> usize {
        self.base.order() * self.e.order()
    }

    fn has_quad(&self, q: &Quad) -> bool {
        self.base_alt(q.0.map(|y| self.split(y).0)) == self.base.identity()
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        let g = &self.base;
        let (b00, b01, b10) = (self.split(x00).0, self.split(x01).0, self.split(x10).0);
        let b11 = g.div(g.mul(b10, b01), b00);
        let ne = self.e.order();
        out.extend(b11 * ne..(b11 + 1) * ne);
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(self.cert.clone())
    }

    fn describe(&self) -> String {
        self.cert.construction.clone()
    }
}

impl CubeModel for TensorModel {
    fn has_oct(&self, o: &Oct) -> bool {
        let mut w = Vec::new();
        self.oct_witnesses(&o.seven(), &mut w);
        w.contains(&o.0[7])
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        let parts = seven.map(|y| self.split(y));
        let b = parts.map(|p| p.0);
        let id = self.base.identity();
        for face in Oct::closing_hypotheses(&b) {
            if self.base_alt(face.0) != id {
                return;
            }
        }
        let mut w = Vec::new();
        self.inner.oct_witnesses(&b.map(|x| self.reps[x]), &mut w);
        let Some(&x) = w.first() else { return };
        let eg = &self.e;
        let mut c = self.inc[self.coords[x]];
        for (eps, &(_, e)) in parts.iter().enumerate() {
            c = if SIGNS[eps] { eg.mul(c, e) } else { eg.div(c, e) };
        }
        out.push(self.pi[x] * eg.order() + c);
    }
}

#[derive(Debug)]
pub struct TensorEmbedding {
    pub structure: ParallelepipedStructure,
    /// `x ↦ class of (x, 1)`.
    pub embedding: Vec<usize>,
    pub inc: Vec<usize>,
}

pub const TENSOR_MAX_POINTS: usize = 4096;
const INC_SEARCH_GUARD: u128 = 1 << 20;

/// The first injective homomorphism `F → E` in the lexicographic order of
/// basis images.
pub fn find_injection(f: &AbelianGroup, e: &FiniteGroup) -> Result<Vec<usize>> {
    let cands: Vec<Vec<usize>> = f
        .factors()
        .iter()
        .map(|&d| (0..e.order()).filter(|&x| d % e.element_order(x) as u64 == 0).collect())
        .collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    if total > INC_SEARCH_GUARD {
        return Err(Error::Guard { what: "injection search", size: total, limit: INC_SEARCH_GUARD });
    }
    let k = cands.len();
    let mut idx = vec![0usize; k];
    loop {
        let imgs: Vec<usize> = (0..k).map(|i| cands[i][idx[i]]).collect();
        let map: Vec<usize> = (0..f.order())
            .map(|u| {
                f.coordinates(u)
                    .iter()
                    .zip(&imgs)
                    .fold(e.identity(), |acc, (&c, &x)| e.mul(acc, e.pow(x, c as i64)))
            })
            .collect();
        let mut seen = vec![false; e.order()];
        if map.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
            return Ok(map);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Err(Error::Invalid("no injective homomorphism from the fiber group into E".into()));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Embeds `S` into a structure with fiber group `E`. `inc` maps fiber-group
/// indices to `E`; when absent the first injection is used.
pub fn tensor_embed(s: &ParallelepipedStructure, e: &FiniteGroup, inc: Option<&[usize]>) -> Result<TensorEmbedding> {
    s.ensure_strong()?;
    if !e.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let fg = fiber_group(s)?;
    let (base, proj) = base_group(&s.grid())?;
    let inc = match inc {
        Some(m) => {
            if !fg.group.group().is_hom_to(e, m) {
                return Err(Error::Invalid("inc is not a homomorphism from the fiber group".into()));
            }
            let mut seen = vec![false; e.order()];
            if m.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Invalid("inc is not injective".into()));
            }
            m.to_vec()
        }
        None => find_injection(&fg.group, e)?,
    };
    let ne = e.order();
    let size = base.order() * ne;
    if size > TENSOR_MAX_POINTS {
        return Err(Error::Guard { what: "tensor ground set", size: size as u128, limit: TENSOR_MAX_POINTS as u128 });
    }
    let reps: Vec<usize> = (0..base.order()).map(|b| proj.rep(b)).collect();
    let labels: Vec<String> = (0..size)
        .map(|y| format!("{}⊗{}", s.ground().label(reps[y / ne]), e.label(y % ne)))
        .collect();
    let cert = Certificate {
        construction: format!("tensor embedding with |E| = {ne} of: {}", s.model().describe()),
        checks: vec![
            ("source strong".into(), true),
            ("inc injective homomorphism".into(), true),
        ],
        strong: true,
    };
    let model = TensorModel {
        base: base.group().clone(),
        e: e.clone(),
        inner: s.model().clone(),
        reps,
        pi: proj.pi.clone(),
        coords: fg.coords.clone(),
        inc: inc.clone(),
        cert,
    };
    let structure = ParallelepipedStructure::new(GroundSet::with_labels(labels)?, Arc::new(model))?;
    structure.ensure_strong()?;
    let embedding: Vec<usize> = (0..s.size()).map(|x| proj.pi[x] * ne + inc[fg.coords[x]]).collect();
    let mut image = embedding.clone();
    image.sort_unstable();
    let back = restrict(&structure, &image)?;
    let map: Vec<usize> = embedding.iter().map(|y| image.binary_search(y).expect("image point")).collect();
    if !is_isomorphism(s, &back, &map)? {
        return Err(Error::Inconsistent("restriction to the image of X does not recover the structure".into()));
    }
    let fe = fiber_group(&structure)?;
    if !isomorphic(&fe.group, &AbelianGroup::new(e.clone())?) {
        return Err(Error::Inconsistent("fiber group of the embedding is not E".into()));
    }
    Ok(TensorEmbedding { structure, embedding, inc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_nil;
    use crate::catalog::{abelian_structure, counterexample, find_isomorphism};

    #[test]
    fn fiber_itself_gives_back_the_structure() {
        let s = counterexample(3).unwrap();
        let t = tensor_embed(&s, &FiniteGroup::cyclic(3).unwrap(), None).unwrap();
        assert_eq!(t.structure.size(), 9);
        let m = t.structure.materialize(1 << 24).unwrap();
        assert!(is_isomorphism(&s, &m, &t.embedding).unwrap());
    }

    #[test]
    fn trivial_fiber_trivial_e() {
        let s = abelian_structure(&FiniteGroup::cyclic(4).unwrap(), None).unwrap();
        let t = tensor_embed(&s, &FiniteGroup::trivial(), None).unwrap();
        assert!(find_isomorphism(&s, &t.structure).unwrap().is_some());
    }

    #[test]
    fn counterexample_becomes_nil() {
        let s = counterexample(3).unwrap();
        let t = tensor_embed(&s, &FiniteGroup::cyclic(9).unwrap(), None).unwrap();
        assert_eq!(t.inc, vec![0, 3, 6]);
        assert_eq!(t.structure.size(), 27);
        let r = is_nil(&t.structure).unwrap();
        assert!(r.nil);
    }

    #[test]
    fn rejects_bad_inc() {
        let s = counterexample(3).unwrap();
        let e = FiniteGroup::cyclic(9).unwrap();
        assert!(tensor_embed(&s, &e, Some(&[0, 1, 2])).is_err());
        assert!(tensor_embed(&s, &e, Some(&[0, 0, 0])).is_err());
        assert!(tensor_embed(&s, &FiniteGroup::cyclic(2).unwrap(), None).is_err());
    }
}
