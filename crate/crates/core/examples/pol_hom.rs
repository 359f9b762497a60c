//! Polynomial homogeneity: the least power with a homomorphism from a
//! subuniverse that does not extend.

use polhom::algebra::ResourceBounds;
use polhom::corpus::CORPUS;
use polhom::decide::{pol_hom_witness, revalidate};

fn main() -> Result<(), polhom::error::Error> {
    let bounds = ResourceBounds::default();
    for entry in CORPUS {
        let a = entry.algebra();
        match pol_hom_witness(&a, entry.max_power, &bounds)? {
            Some(w) => {
                assert!(revalidate(&a, &w, &bounds)?);
                println!("{:<44} {}", entry.spec, w.render());
            }
            None => println!("{:<44} extends up to k={}", entry.spec, entry.max_power),
        }
    }
    Ok(())
}
