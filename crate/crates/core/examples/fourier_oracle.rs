//! Compares u2 on Z/N with the Fourier formula (sum of |f^(xi)|^4).

use num_complex::Complex64;
use parallelepiped::io::build_structure;
use parallelepiped::norms::{dft_oracle_u2, u2, ComplexFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> parallelepiped::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4usize, 16, 64] {
        let p = build_structure(&format!("abelian:cyclic:{n}"))?.grid();
        let f = ComplexFunction::new((0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())?;
        let direct = u2(&f, &p)?.norm;
        let oracle = dft_oracle_u2(&f, &p)?;
        println!("N = {n:>2}: direct {direct:.12}  fourier {oracle:.12}  rel err {:.1e}", (direct - oracle).abs() / direct);
    }
    Ok(())
}
