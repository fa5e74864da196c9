//! The strong structure on p^2 points that is not a nilstructure.

use parallelepiped::analysis::analyze;
use parallelepiped::catalog::{counterexample, counterexample_points};

fn main() -> parallelepiped::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    println!("points of Z/{p} x Z/{}: {:?}", p * p, counterexample_points(p));
    let s = counterexample(p)?;
    print!("{}", analyze(&s)?.render());
    Ok(())
}
