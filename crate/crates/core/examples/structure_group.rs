//! Structure groups by exhaustive search on small examples.

use parallelepiped::analysis::{base_translation, is_nil, nil_realization, structure_group_enumerate};
use parallelepiped::io::build_structure;

fn main() -> parallelepiped::Result<()> {
    for spec in ["abelian:cyclic:4", "coset:heis:2,F=center,Gamma=4", "counterexample:3"] {
        let s = build_structure(spec)?;
        let members = structure_group_enumerate(&s, 10)?;
        let mut shifts: Vec<usize> = members.iter().map(|g| base_translation(g, &s)).collect::<Result<_, _>>()?;
        shifts.sort_unstable();
        shifts.dedup();
        let r = nil_realization(&s, 10)?;
        println!(
            "{spec}: |G| = {}, base translations {shifts:?}, transitive {}, nil {}, rebuilt from G {}",
            members.len(),
            r.transitive,
            is_nil(&s)?.nil,
            r.realized
        );
    }
    Ok(())
}
