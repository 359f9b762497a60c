//! Search for centralizer-closed sets that are not algebraic.

use polhom::algebra::ResourceBounds;
use polhom::builtin::parse_builtin;
use polhom::decide::{centralizer_closed_sets, sdc_witness};

fn main() -> Result<(), polhom::error::Error> {
    let bounds = ResourceBounds::default();
    let two = parse_builtin("chain-semilattice:2")?;
    println!(
        "2-chain: {} centralizer-closed subsets of A^2",
        centralizer_closed_sets(&two, 2, &bounds)?.len()
    );
    for (spec, n) in [
        ("chain-semilattice:2", 3),
        ("cyclic:4", 2),
        ("fork-semilattice", 2),
        ("monounary:0,0,1,0", 2),
        ("product:cyclic:2,cyclic:4", 1),
        ("chain-lattice:3", 3),
    ] {
        let a = parse_builtin(spec)?;
        match sdc_witness(&a, n, &bounds)? {
            Some(w) => println!("{spec:<28} {}", w.render()),
            None => println!("{spec:<28} none up to n={n}"),
        }
    }
    Ok(())
}
