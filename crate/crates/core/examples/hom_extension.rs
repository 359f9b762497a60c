//! Homomorphisms from a subuniverse of A^2 into A, and whether each one
//! extends to the whole square.

use polhom::algebra::ResourceBounds;
use polhom::builtin::fork_semilattice;
use polhom::hom::{enumerate_homomorphisms, extend_homomorphism};
use polhom::power::{enumerate_subuniverses, SubuniverseSet};

fn main() -> Result<(), polhom::error::Error> {
    let bounds = ResourceBounds::default();
    let fork = fork_semilattice();
    let full = SubuniverseSet::full(&fork, 2, &bounds)?;
    let subs = enumerate_subuniverses(&fork, 2, &bounds)?;
    println!("fork semilattice: {} subuniverses of A^2", subs.len());

    let (mut total, mut stuck) = (0, 0);
    for b in &subs {
        for h in enumerate_homomorphisms(&fork, b, &bounds)? {
            total += 1;
            if extend_homomorphism(&fork, &h, &full, &bounds)?.is_none() {
                stuck += 1;
                if stuck <= 3 {
                    println!("  no extension: {}", h.render());
                }
            }
        }
    }
    println!("{total} homomorphisms, {stuck} without an extension to A^2");
    Ok(())
}
