//! Abelian groups: brute-force homomorphism homogeneity against the
//! homocyclic Sylow test.

use polhom::builtin::parse_builtin;
use polhom::decide::{is_hom_homogeneous, DecideOptions};
use polhom::variety::sylows_homocyclic;

fn main() -> Result<(), polhom::error::Error> {
    let specs = [
        "cyclic:2",
        "cyclic:3",
        "product:cyclic:2,cyclic:2",
        "cyclic:4",
        "cyclic:6",
        "cyclic:8",
        "product:cyclic:2,cyclic:4",
        "product:cyclic:2,product:cyclic:2,cyclic:2",
        "product:cyclic:3,cyclic:9",
    ];
    for spec in specs {
        let a = parse_builtin(spec)?;
        let v = is_hom_homogeneous(&a, &DecideOptions::defaults_for(&a))?;
        println!("{spec:<44} homocyclic Sylows: {:<5} hom-hom: {}", sylows_homocyclic(&a)?, v.value);
    }
    Ok(())
}
