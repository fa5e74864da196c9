//! u2 and u3 of a few functions on Z/N, and the Cauchy-Schwarz-Gowers bound.

use num_complex::Complex64;
use parallelepiped::io::build_structure;
use parallelepiped::norms::{csg_check, u2, u3, ComplexFunction};

fn main() -> parallelepiped::Result<()> {
    let n = 12;
    let s = build_structure(&format!("abelian:cyclic:{n}"))?;
    let p = s.grid();
    let tau = std::f64::consts::TAU;
    let linear = ComplexFunction::new((0..n).map(|x| Complex64::from_polar(1.0, tau * x as f64 / n as f64)).collect())?;
    let quadratic =
        ComplexFunction::new((0..n).map(|x| Complex64::from_polar(1.0, tau * (x * x) as f64 / n as f64)).collect())?;
    let sign = ComplexFunction::from_real(&(0..n).map(|x| if x % 3 == 0 { 1.0 } else { -1.0 }).collect::<Vec<_>>())?;
    for (name, f) in [("linear phase", &linear), ("quadratic phase", &quadratic), ("sign pattern", &sign)] {
        let a = u2(f, &p)?;
        let b = u3(f, &s)?;
        println!("{name:>16}: u2 = {:.6}  u3 = {:.6}  (exact: {})", a.norm, b.norm, a.exact && b.exact);
    }
    let (lhs, rhs) = csg_check([&linear, &quadratic, &sign, &linear], &p)?;
    println!("CSG: {lhs:.6} <= {rhs:.6}");
    Ok(())
}
