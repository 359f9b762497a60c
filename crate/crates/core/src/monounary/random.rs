//! Random monounary algebras and formulas for property checks.

use rand::Rng;

use super::formula::{Atom, MonoFormula, Side, Var};
use super::MonounaryProfile;

/// A conjunction of 1 to 4 atoms with exponents up to `max_exp` over
/// `free` free and `bound` bound variables.
pub fn random_formula<R: Rng>(rng: &mut R, free: usize, bound: usize, max_exp: usize) -> MonoFormula {
    let var = |rng: &mut R| {
        let i = rng.gen_range(0..free + bound);
        if i < free {
            Var::Free(i)
        } else {
            Var::Bound(i - free)
        }
    };
    let atoms = (0..rng.gen_range(1..=4))
        .map(|_| {
            Atom::new(
                Side::new(rng.gen_range(0..=max_exp), var(rng)),
                Side::new(rng.gen_range(0..=max_exp), var(rng)),
            )
        })
        .collect();
    let names = (0..bound).map(|j| format!("y{j}")).collect();
    MonoFormula::new(free, names, atoms)
}

/// A map on at most `max_size` points whose sources share one height.
pub fn random_v_map<R: Rng>(rng: &mut R, max_size: usize) -> Vec<usize> {
    loop {
        let n = rng.gen_range(1..=max_size);
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        if MonounaryProfile::new(&f).unwrap().sources_share_height() {
            return f;
        }
    }
}
