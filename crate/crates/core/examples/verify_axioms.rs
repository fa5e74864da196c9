//! Verifies catalog structures and a damaged copy of one of them.

use parallelepiped::io::build_structure;
use parallelepiped::structures::{verify_cube, ParallelepipedStructure};

fn main() -> parallelepiped::Result<()> {
    for spec in ["abelian:cyclic:4", "group:heis:2", "group:S3", "coset:heis:2,F=center,Gamma=4"] {
        let s = build_structure(spec)?;
        let r = verify_cube(&s);
        println!("{spec}: {} ({})", if r.passed() { "pass" } else { "fail" }, if r.strong { "strong" } else { "weak" });
    }

    // drop one oct from the abelian structure on Z/3
    let s = build_structure("abelian:cyclic:3")?;
    let mut octs = s.octs_sorted();
    octs.remove(octs.len() / 2);
    let damaged = ParallelepipedStructure::explicit(3, s.grid().quads(), octs)?;
    print!("{}", verify_cube(&damaged).render());
    Ok(())
}
