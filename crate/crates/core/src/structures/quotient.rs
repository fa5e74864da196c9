use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::structures::{GroundSet, Oct, ParallelepipedStructure, Quad};

/// `S'` on `Y = X/≡_Q` together with `r: X → Y`.
#[derive(Clone, Debug)]
pub struct StrongQuotient {
    pub structure: ParallelepipedStructure,
    pub projection: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

/// Collapses `x ≡_Q x'` (the closing of the constant configuration at `x`
/// contains `x'`) and checks that `S` is the preimage of the result.
pub fn strong_quotient(s: &ParallelepipedStructure) -> Result<StrongQuotient> {
    s.ensure_verified()?;
    let n = s.size();
    let mut projection = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let class = s.oct_witnesses(&[x; 7]);
        if !class.contains(&x) {
            return Err(Error::Inconsistent(format!("point {x} is not in its own class")));
        }
        if projection[x] == usize::MAX {
            let id = classes.len();
            for &y in &class {
                if projection[y] != usize::MAX {
                    return Err(Error::Inconsistent("classes overlap".into()));
                }
                projection[y] = id;
            }
            classes.push(class);
        } else if classes[projection[x]] != class {
            return Err(Error::Inconsistent(format!("class of {x} differs from the class containing it")));
        }
    }
    let m = classes.len();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let r = |x: usize| projection[x];

    let mut quads: BTreeSet<Quad> = BTreeSet::new();
    let mut pcount = 0u64;
    s.grid().for_each_quad(|q| {
        pcount += 1;
        quads.insert(q.map(r));
    });
    let preimage_p: u64 = quads.iter().map(|q| q.0.iter().map(|&y| sizes[y]).product::<u64>()).sum();
    if preimage_p != pcount {
        return Err(Error::Inconsistent(format!("P has {pcount} quads, preimage of r(P) has {preimage_p}")));
    }
    let mut octs: BTreeSet<Oct> = BTreeSet::new();
    let mut qcount = 0u64;
    s.for_each_oct(|o| {
        qcount += 1;
        octs.insert(o.map(r));
    });
    let preimage_q: u64 = octs.iter().map(|o| o.0.iter().map(|&y| sizes[y]).product::<u64>()).sum();
    if preimage_q != qcount {
        return Err(Error::Inconsistent(format!("Q has {qcount} octs, preimage of r(Q) has {preimage_q}")));
    }
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                s.ground().label(c[0])
            } else {
                let parts: Vec<String> = c.iter().map(|&x| s.ground().label(x)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let q = ParallelepipedStructure::explicit(m, quads, octs)?;
    let structure = ParallelepipedStructure::new(GroundSet::with_labels(labels)?, q.model().clone())?;
    structure.ensure_verified()?;
    if !structure.verify().strong {
        return Err(Error::Inconsistent("quotient is not strong".into()));
    }
    Ok(StrongQuotient { structure, projection, classes })
}
