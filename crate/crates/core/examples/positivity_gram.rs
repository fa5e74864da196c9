//! The matrix of a candidate parallelogram set and its positivity test.

use parallelepiped::io::{parse_structure, StructureFile};
use parallelepiped::io::build_structure;
use parallelepiped::norms::{gram_matrix, transitivity_test};

fn main() -> parallelepiped::Result<()> {
    for n in [2usize, 3, 5] {
        let p = build_structure(&format!("abelian:cyclic:{n}"))?.grid();
        let m = gram_matrix(n, &p.quads())?;
        println!("Z/{n}: trace {} trace(M^2) {} -> {:?}", m.trace, m.trace_sq, transitivity_test(&m)?);
    }
    let text = include_str!("../tests/data/nontransitive_6.pg");
    if let StructureFile::Grid(p) = parse_structure(text, std::path::Path::new("."))? {
        let m = gram_matrix(p.size(), &p.quads())?;
        println!("stored 6-point candidate: trace {} -> {:?}", m.trace, transitivity_test(&m)?);
    }
    Ok(())
}
