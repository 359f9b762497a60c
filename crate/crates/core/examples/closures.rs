//! Algebraic closure (generated subuniverse of a power) against
//! centralizer closure (invariant under the centralizer clone).

use polhom::algebra::ResourceBounds;
use polhom::builtin::{chain_semilattice, fork_semilattice};
use polhom::clone::{algebraic_closure, centralizer_closure, clone_fragment, centralizer_fragment};
use polhom::relation::Relation;

fn main() -> Result<(), polhom::error::Error> {
    let bounds = ResourceBounds::default();
    let two = chain_semilattice(2);
    let s = Relation::parse_tuples(2, 2, "01,10")?;
    println!("2-chain, S = {}", s.render());
    println!("  algebraic   {}", algebraic_closure(&two, &s, &bounds)?.render());
    println!("  centralizer {}", centralizer_closure(&two, &s, &bounds)?.render());

    let fork = fork_semilattice();
    println!(
        "fork: |C^(2)| = {}, |C*^(2)| = {}",
        clone_fragment(&fork, 2, &bounds)?.len(),
        centralizer_fragment(&fork, 2, &bounds)?.len()
    );
    for text in ["12", "12,21", "01,02"] {
        let s = Relation::parse_tuples(2, 3, text)?;
        let alg = algebraic_closure(&fork, &s, &bounds)?;
        let cen = centralizer_closure(&fork, &s, &bounds)?;
        let gap = if alg == cen { "" } else { "  <- differ" };
        println!("  {:<8} alg {:<28} cen {}{gap}", text, alg.render(), cen.render());
    }
    Ok(())
}
