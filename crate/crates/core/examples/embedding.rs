//! Embeds the p = 3 counterexample into X (x) Z/9, where every extension splits.

use parallelepiped::algebra::FiniteGroup;
use parallelepiped::analysis::analyze;
use parallelepiped::catalog::{counterexample, is_isomorphism, restrict, tensor_embed};

fn main() -> parallelepiped::Result<()> {
    let s = counterexample(3)?;
    for e in [3usize, 9] {
        let t = tensor_embed(&s, &FiniteGroup::cyclic(e)?, None)?;
        let r = analyze(&t.structure)?;
        println!("E = Z/{e}: {} points, inc = {:?}, nil = {}", t.structure.size(), t.inc, r.nil);
        for sp in &r.splits {
            println!("  s = {}: {}", sp.s, if sp.splits { "splits" } else { "does not split" });
        }
        let back = restrict(&t.structure, &t.embedding)?;
        let mut sorted = t.embedding.clone();
        sorted.sort_unstable();
        let map: Vec<usize> = t.embedding.iter().map(|y| sorted.binary_search(y).unwrap()).collect();
        println!("  restriction to the image is the original: {}", is_isomorphism(&s, &back, &map)?);
    }
    Ok(())
}
