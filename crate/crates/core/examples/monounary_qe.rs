//! Quantifier elimination over a unary algebra, with the weight trace of
//! each rewrite and a semantic check.

use polhom::builtin::monounary;
use polhom::monounary::qe::{eliminate_quantifiers, eliminate_traced, psi_k};
use polhom::monounary::{MonoFormula, MonounaryProfile};

fn main() -> Result<(), polhom::error::Error> {
    let a = monounary(&[1, 2, 0, 0])?;
    let profile = MonounaryProfile::of(&a)?;
    println!("f = {:?}, psi_2 = {}", profile.map(), psi_k(&a, 2)?);

    for text in [
        "Ey. f^2(y)=x1 & f(y)=x2",
        "Ey. f(y)=x1",
        "Ey. f^3(y)=f(x1) & y=f(x2)",
        "Ey. f(y)=y",
    ] {
        let phi = MonoFormula::parse(text)?;
        let (_, weights) = eliminate_traced(&profile, &phi)?;
        let out = eliminate_quantifiers(&a, &phi)?;
        assert_eq!(phi.relation(&profile), out.relation(&profile));
        println!("{text}\n  => {out}\n  weights {weights:?}");
    }

    match eliminate_quantifiers(&monounary(&[0, 0, 1, 0])?, &MonoFormula::parse("Ey. f(y)=x1")?) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
