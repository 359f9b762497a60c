//! Relations definable without quantifiers from solution sets of term
//! equations but not from graphs of term operations.

use polhom::algebra::ResourceBounds;
use polhom::builtin::chain_semilattice;
use polhom::decide::cbullet_gap_witness;
use polhom::pp::{qfpp_closure, RelationFamily};

fn main() -> Result<(), polhom::error::Error> {
    let bounds = ResourceBounds::default();
    let a = chain_semilattice(2);
    let bullet = RelationFamily::cbullet(&a, 1..=3, &bounds)?;
    let circ = RelationFamily::ccirc(&a, 1..=3, &bounds)?;
    println!("C• has {} graphs, C∘ has {} solution sets", bullet.len(), circ.len());
    for n in 1..=3 {
        let b = qfpp_closure(&bullet, n, &bounds)?;
        let c = qfpp_closure(&circ, n, &bounds)?;
        let gaps: Vec<_> = c.iter().filter(|r| !b.contains(r)).collect();
        println!("n={n}: {} vs {} relations, {} gaps", b.len(), c.len(), gaps.len());
        for g in gaps {
            println!("  {}", g.render());
        }
    }
    if let Some(w) = cbullet_gap_witness(&a, 3, &bounds)? {
        println!("reported witness: {}", w.render());
    }
    Ok(())
}
