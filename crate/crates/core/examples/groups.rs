//! Builds a few groups and prints their commutator series and cube group orders.

use parallelepiped::algebra::{abelian_invariants, commutator_series, cube_group, CubeKind};
use parallelepiped::io::parse_group;

fn main() -> parallelepiped::Result<()> {
    for spec in ["cyclic:6", "prod:cyclic:3,cyclic:9", "heis:2", "heis:3", "S3"] {
        let g = parse_group(spec)?;
        let (g2, g3) = commutator_series(&g);
        print!("{spec:>22}: order {:>3}, |G2| = {}, |G3| = {}", g.order(), g2.order(), g3.order());
        if g.is_abelian() {
            print!(", invariants {:?}", abelian_invariants(&g)?);
        }
        if g.order() <= 8 {
            print!(", |G^[2,1]| = {}", cube_group(&g, CubeKind::Edge2)?.order());
        }
        println!();
    }
    Ok(())
}
