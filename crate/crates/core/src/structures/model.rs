use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::structures::tuples::{Oct, Quad};

/// Facts established by construction rather than by enumeration.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub construction: String,
    pub checks: Vec<(String, bool)>,
    pub strong: bool,
}

/// Membership and closing queries for a set `P ⊆ X^[2]`.
pub trait GridModel: Send + Sync + Debug {
    fn size(&self) -> usize;
    fn has_quad(&self, q: &Quad) -> bool;
    /// Appends, in ascending order, every `x11` with `(x00,x01,x10,x11) ∈ P`.
    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>);
    /// Sorted packed quads, when stored explicitly.
    fn explicit_quads(&self) -> Option<&[u32]> {
        None
    }
    fn certificate(&self) -> Option<Certificate> {
        None
    }
    fn describe(&self) -> String;
}

/// Membership and closing queries for a pair `(P, Q)`.
pub trait CubeModel: GridModel {
    fn has_oct(&self, o: &Oct) -> bool;
    /// Appends, in ascending order, every `x111` completing the seven points.
    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>);
    fn explicit_octs(&self) -> Option<&[u64]> {
        None
    }
}

pub const EXPLICIT_MAX_POINTS: usize = 256;

#[inline]
pub fn pack_quad(q: &Quad) -> u32 {
    q.0.iter().fold(0u32, |acc, &x| acc << 8 | x as u32)
}

#[inline]
pub fn unpack_quad(c: u32) -> Quad {
    Quad(std::array::from_fn(|i| (c >> (8 * (3 - i)) & 0xff) as usize))
}

#[inline]
pub fn pack_oct(o: &Oct) -> u64 {
    o.0.iter().fold(0u64, |acc, &x| acc << 8 | x as u64)
}

#[inline]
pub fn unpack_oct(c: u64) -> Oct {
    Oct(std::array::from_fn(|i| (c >> (8 * (7 - i)) & 0xff) as usize))
}

/// A quad set stored as sorted packed codes.
#[derive(Clone, Debug)]
pub struct ExplicitGrid {
    n: usize,
    quads: Vec<u32>,
}

impl ExplicitGrid {
    pub fn new(n: usize, quads: impl IntoIterator<Item = Quad>) -> Result<Self> {
        if n == 0 || n > EXPLICIT_MAX_POINTS {
            return Err(Error::Invalid(format!("explicit ground set size {n} not in 1..=256")));
        }
        let mut codes = Vec::new();
        for q in quads {
            if q.max_index() >= n {
                return Err(Error::Invalid(format!("quad {:?} has an index >= {n}", q.0)));
            }
            codes.push(pack_quad(&q));
        }
        codes.sort_unstable();
        codes.dedup();
        Ok(ExplicitGrid { n, quads: codes })
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }
}

impl GridModel for ExplicitGrid {
    fn size(&self) -> usize {
        self.n
    }

    fn has_quad(&self, q: &Quad) -> bool {
        q.max_index() < self.n && self.quads.binary_search(&pack_quad(q)).is_ok()
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        if x00.max(x01).max(x10) >= self.n {
            return;
        }
        let lo = pack_quad(&Quad([x00, x01, x10, 0]));
        let start = self.quads.partition_point(|&c| c < lo);
        for &c in &self.quads[start..] {
            if c >> 8 != lo >> 8 {
                break;
            }
            out.push((c & 0xff) as usize);
        }
    }

    fn explicit_quads(&self) -> Option<&[u32]> {
        Some(&self.quads)
    }

    fn describe(&self) -> String {
        format!("explicit quad list ({} quads)", self.quads.len())
    }
}

/// Quads and octs stored as sorted packed codes.
#[derive(Clone, Debug)]
pub struct ExplicitCube {
    grid: ExplicitGrid,
    octs: Vec<u64>,
}

impl ExplicitCube {
    pub fn new(grid: ExplicitGrid, octs: impl IntoIterator<Item = Oct>) -> Result<Self> {
        let n = grid.n;
        let mut codes = Vec::new();
        for o in octs {
            if o.max_index() >= n {
                return Err(Error::Invalid(format!("oct {:?} has an index >= {n}", o.0)));
            }
            codes.push(pack_oct(&o));
        }
        codes.sort_unstable();
        codes.dedup();
        Ok(ExplicitCube { grid, octs: codes })
    }

    pub(crate) fn from_sorted_codes(grid: ExplicitGrid, octs: Vec<u64>) -> Self {
        debug_assert!(octs.windows(2).all(|w| w[0] < w[1]));
        ExplicitCube { grid, octs }
    }

    pub fn grid(&self) -> &ExplicitGrid {
        &self.grid
    }

    pub fn oct_len(&self) -> usize {
        self.octs.len()
    }
}

impl GridModel for ExplicitCube {
    fn size(&self) -> usize {
        self.grid.n
    }

    fn has_quad(&self, q: &Quad) -> bool {
        self.grid.has_quad(q)
    }

    fn quad_witnesses(&self, x00: usize, x01: usize, x10: usize, out: &mut Vec<usize>) {
        self.grid.quad_witnesses(x00, x01, x10, out)
    }

    fn explicit_quads(&self) -> Option<&[u32]> {
        Some(&self.grid.quads)
    }

    fn describe(&self) -> String {
        format!(
            "explicit lists ({} quads, {} octs)",
            self.grid.quads.len(),
            self.octs.len()
        )
    }
}

impl CubeModel for ExplicitCube {
    fn has_oct(&self, o: &Oct) -> bool {
        o.max_index() < self.grid.n && self.octs.binary_search(&pack_oct(o)).is_ok()
    }

    fn oct_witnesses(&self, seven: &[usize; 7], out: &mut Vec<usize>) {
        if seven.iter().any(|&x| x >= self.grid.n) {
            return;
        }
        let lo = pack_oct(&Oct::with_last(seven, 0));
        let start = self.octs.partition_point(|&c| c < lo);
        for &c in &self.octs[start..] {
            if c >> 8 != lo >> 8 {
                break;
            }
            out.push((c & 0xff) as usize);
        }
    }

    fn explicit_octs(&self) -> Option<&[u64]> {
        Some(&self.octs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn packing_round_trips(a in proptest::array::uniform8(0usize..256)) {
            let o = Oct(a);
            prop_assert_eq!(unpack_oct(pack_oct(&o)), o);
            let q = Quad([a[0], a[1], a[2], a[3]]);
            prop_assert_eq!(unpack_quad(pack_quad(&q)), q);
        }
    }

    #[test]
    fn witnesses_by_prefix() {
        let g = ExplicitGrid::new(3, [Quad([0, 1, 2, 0]), Quad([0, 1, 2, 2]), Quad([0, 1, 1, 1])]).unwrap();
        let mut w = Vec::new();
        g.quad_witnesses(0, 1, 2, &mut w);
        assert_eq!(w, vec![0, 2]);
        w.clear();
        g.quad_witnesses(2, 2, 2, &mut w);
        assert!(w.is_empty());
        assert!(ExplicitGrid::new(2, [Quad([0, 0, 0, 2])]).is_err());
    }
}
