//! Collapses a weak structure to its strong quotient.

use parallelepiped::catalog::{find_isomorphism, inverse_image};
use parallelepiped::io::build_structure;
use parallelepiped::structures::strong_quotient;

fn main() -> parallelepiped::Result<()> {
    let s3 = build_structure("group:S3")?;
    let q = strong_quotient(&s3)?;
    println!("S3: classes {:?}", q.classes);
    let c2 = build_structure("abelian:cyclic:2")?;
    println!("  isomorphic to the Z/2 structure via {:?}", find_isomorphism(&q.structure, &c2)?);

    let c3 = build_structure("abelian:cyclic:3")?;
    let w = inverse_image(&c3, &[0, 1, 2, 0, 1, 2])?;
    let q = strong_quotient(&w)?;
    println!("two copies of Z/3: strong {}, classes {:?}", w.is_strong(), q.classes);
    Ok(())
}
