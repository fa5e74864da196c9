use std::collections::BTreeSet;

use serde::Serialize;

/// A point `(x00, x01, x10, x11)` of `X^[2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quad(pub [usize; 4]);

/// A point `(x000, ..., x111)` of `X^[3]`, lexicographic vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Oct(pub [usize; 8]);

/// Vertex lists of the six faces: `ε1 = 0, 1`, `ε2 = 0, 1`, `ε3 = 0, 1`.
pub const FACES: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [4, 5, 6, 7],
    [0, 1, 4, 5],
    [2, 3, 6, 7],
    [0, 2, 4, 6],
    [1, 3, 5, 7],
];

impl Quad {
    pub fn new(x00: usize, x01: usize, x10: usize, x11: usize) -> Quad {
        Quad([x00, x01, x10, x11])
    }

    pub fn max_index(&self) -> usize {
        *self.0.iter().max().unwrap()
    }

    pub fn permute(&self, p: &[u8; 4]) -> Quad {
        Quad(std::array::from_fn(|v| self.0[p[v] as usize]))
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Quad {
        Quad(self.0.map(f))
    }
}

impl Oct {
    pub fn from_halves(a: Quad, b: Quad) -> Oct {
        Oct([a.0[0], a.0[1], a.0[2], a.0[3], b.0[0], b.0[1], b.0[2], b.0[3]])
    }

    /// `(x', x'')`, the faces `ε1 = 0` and `ε1 = 1`.
    pub fn split(&self) -> (Quad, Quad) {
        let x = &self.0;
        (Quad([x[0], x[1], x[2], x[3]]), Quad([x[4], x[5], x[6], x[7]]))
    }

    pub fn face(&self, i: usize) -> Quad {
        Quad(FACES[i].map(|v| self.0[v]))
    }

    pub fn faces(&self) -> [Quad; 6] {
        std::array::from_fn(|i| self.face(i))
    }

    pub fn seven(&self) -> [usize; 7] {
        std::array::from_fn(|i| self.0[i])
    }

    pub fn with_last(seven: &[usize; 7], x111: usize) -> Oct {
        let mut o = [0; 8];
        o[..7].copy_from_slice(seven);
        o[7] = x111;
        Oct(o)
    }

    pub fn permute(&self, p: &[u8; 8]) -> Oct {
        Oct(std::array::from_fn(|v| self.0[p[v] as usize]))
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Oct {
        Oct(self.0.map(f))
    }

    pub fn max_index(&self) -> usize {
        *self.0.iter().max().unwrap()
    }

    /// The three faces through `000` that the closing property assumes.
    pub fn closing_hypotheses(seven: &[usize; 7]) -> [Quad; 3] {
        let x = seven;
        [
            Quad([x[0], x[1], x[2], x[3]]),
            Quad([x[0], x[2], x[4], x[6]]),
            Quad([x[0], x[1], x[4], x[5]]),
        ]
    }
}

fn isometries<const V: usize>(k: usize) -> Vec<[u8; V]> {
    let mut out = Vec::new();
    let perms: Vec<Vec<usize>> = if k == 2 {
        vec![vec![0, 1], vec![1, 0]]
    } else {
        vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ]
    };
    for sigma in &perms {
        for flip in 0..(1usize << k) {
            let img: [u8; V] = std::array::from_fn(|v| {
                let mut w = 0;
                for i in 0..k {
                    let bit = (v >> (k - 1 - sigma[i])) & 1 ^ (flip >> i) & 1;
                    w |= bit << (k - 1 - i);
                }
                w as u8
            });
            out.push(img);
        }
    }
    out
}

/// The 8 isometries of the square as vertex maps.
pub fn square_isometries() -> Vec<[u8; 4]> {
    isometries::<4>(2)
}

/// The 48 isometries of the cube as vertex maps.
pub fn cube_isometries() -> Vec<[u8; 8]> {
    isometries::<8>(3)
}

/// Generators of the cube's isometry group: swap `ε1,ε2`, swap `ε2,ε3`,
/// reflect `ε1`.
pub const CUBE_GENERATORS: [[u8; 8]; 3] = [
    [0, 1, 4, 5, 2, 3, 6, 7],
    [0, 2, 1, 3, 4, 6, 5, 7],
    [4, 5, 6, 7, 0, 1, 2, 3],
];

pub trait Configuration: Copy + Ord {
    fn orbit(&self) -> BTreeSet<Self>;
}

impl Configuration for Quad {
    fn orbit(&self) -> BTreeSet<Quad> {
        square_isometries().iter().map(|p| self.permute(p)).collect()
    }
}

impl Configuration for Oct {
    fn orbit(&self) -> BTreeSet<Oct> {
        cube_isometries().iter().map(|p| self.permute(p)).collect()
    }
}

/// Orbit under the Euclidean permutations of the square or cube.
pub fn euclidean_orbit<C: Configuration>(c: &C) -> BTreeSet<C> {
    c.orbit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn orbit_sizes() {
        assert_eq!(euclidean_orbit(&Quad([3, 3, 3, 3])).len(), 1);
        let q = euclidean_orbit(&Quad([0, 1, 2, 3]));
        assert!(q.contains(&Quad([2, 3, 0, 1])));
        assert!(q.contains(&Quad([2, 0, 3, 1])));
        assert_eq!(q.len(), 8);
        assert_eq!(euclidean_orbit(&Oct([0, 1, 2, 3, 4, 5, 6, 7])).len(), 48);
    }

    #[test]
    fn generators_generate() {
        let all: HashSet<[u8; 8]> = cube_isometries().into_iter().collect();
        assert_eq!(all.len(), 48);
        let mut seen: HashSet<[u8; 8]> = HashSet::new();
        let id: [u8; 8] = std::array::from_fn(|i| i as u8);
        seen.insert(id);
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for g in &CUBE_GENERATORS {
                let q: [u8; 8] = std::array::from_fn(|v| p[g[v] as usize]);
                if seen.insert(q) {
                    queue.push(q);
                }
            }
        }
        assert_eq!(seen, all);
    }

    #[test]
    fn isometries_preserve_faces() {
        let faces: HashSet<[usize; 4]> = FACES
            .iter()
            .map(|f| {
                let mut s = *f;
                s.sort();
                s
            })
            .collect();
        for p in cube_isometries() {
            for f in FACES {
                let mut img = f.map(|v| p[v] as usize);
                img.sort();
                assert!(faces.contains(&img));
            }
        }
    }
}
