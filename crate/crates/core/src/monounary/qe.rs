//! Quantifier elimination for primitive positive formulas over unary
//! algebras whose sources all have the same height.

use super::formula::{Atom, MonoFormula, Side, Var};
use super::MonounaryProfile;
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// How deeply the innermost quantified variable is involved:
/// `Σ (r+1)` over every occurrence `f^r(y)`.
pub fn weight(phi: &MonoFormula) -> usize {
    let Some(y) = phi.innermost() else { return 0 };
    phi.atoms
        .iter()
        .flat_map(|a| [a.left, a.right])
        .filter(|s| s.var == y)
        .map(|s| s.exp + 1)
        .sum()
}

fn normalize_atom(atom: Atom, y: Option<Var>) -> Option<Atom> {
    if atom.is_trivial() {
        return None;
    }
    let (l, r) = (Some(atom.left.var) == y, Some(atom.right.var) == y);
    let flip = match (l, r) {
        (false, true) => true,
        (true, true) => atom.left.exp < atom.right.exp,
        _ => false,
    };
    Some(if flip { atom.swapped() } else { atom })
}

/// Puts the innermost bound variable on the left of every atom it occurs
/// in (the larger exponent on the left when it occurs on both sides) and
/// drops trivial atoms.
pub fn normalize(phi: &MonoFormula) -> MonoFormula {
    let y = phi.innermost();
    let mut out = phi.clone();
    out.atoms = phi.atoms.iter().filter_map(|&a| normalize_atom(a, y)).collect();
    out
}

#[derive(Clone, Copy)]
enum Shape {
    /// `f^k(y) = f^l(x)`
    Mixed { k: usize, rhs: Side },
    /// `f^k(y) = f^l(y)` with `k > l`
    Loop { k: usize, l: usize },
}

fn shape(atom: &Atom, y: Var) -> Option<Shape> {
    if atom.left.var != y {
        return None;
    }
    Some(if atom.right.var == y {
        Shape::Loop {
            k: atom.left.exp,
            l: atom.right.exp,
        }
    } else {
        Shape::Mixed {
            k: atom.left.exp,
            rhs: atom.right,
        }
    })
}

/// Outcome of one rule: which of the two atoms is replaced, and by what.
enum Replace {
    First(Atom),
    Second(Atom),
}

fn try_rule(rule: u8, a: Shape, b: Shape, y: Var) -> Option<Replace> {
    match (rule, a, b) {
        (1, Shape::Mixed { k, rhs: xi }, Shape::Mixed { k: m, rhs: xj }) if k >= m => {
            Some(Replace::First(Atom::new(Side::new(k - m + xj.exp, xj.var), xi)))
        }
        (2, Shape::Mixed { k, rhs: xi }, Shape::Loop { k: m, l: n }) if k >= m && m > n => {
            Some(Replace::First(Atom::new(Side::new(k - m + n, y), xi)))
        }
        (3, Shape::Mixed { k, rhs: xi }, Shape::Loop { k: m, l: n }) if k < m && m > n => {
            Some(Replace::Second(Atom::new(
                Side::new(n, y),
                Side::new(m - k + xi.exp, xi.var),
            )))
        }
        (4, Shape::Loop { k, l }, Shape::Loop { k: m, l: n }) if k >= m && k > l && m > n => {
            Some(Replace::First(Atom::new(Side::new(k - m + n, y), Side::new(l, y))))
        }
        _ => None,
    }
}

/// One substitution step on the innermost quantified variable, or `None`
/// when it occurs in at most one atom.
pub fn rewrite_step(phi: &MonoFormula) -> Option<MonoFormula> {
    let y = phi.innermost()?;
    let phi = normalize(phi);
    let shapes: Vec<Option<Shape>> = phi.atoms.iter().map(|a| shape(a, y)).collect();
    for i in 0..shapes.len() {
        for j in i + 1..shapes.len() {
            let (Some(si), Some(sj)) = (shapes[i], shapes[j]) else {
                continue;
            };
            for rule in 1..=4 {
                for (p, q, sp, sq) in [(i, j, si, sj), (j, i, sj, si)] {
                    let Some(rep) = try_rule(rule, sp, sq, y) else {
                        continue;
                    };
                    let (at, atom) = match rep {
                        Replace::First(a) => (p, a),
                        Replace::Second(a) => (q, a),
                    };
                    let mut out = phi.clone();
                    match normalize_atom(atom, Some(y)) {
                        Some(a) => out.atoms[at] = a,
                        None => {
                            out.atoms.remove(at);
                        }
                    }
                    debug_assert!(weight(&out) < weight(&phi));
                    return Some(out);
                }
            }
        }
    }
    None
}

fn require_v(profile: &MonounaryProfile) -> Result<()> {
    if profile.sources_share_height() {
        Ok(())
    } else {
        Err(Error::ConditionVNotSatisfied)
    }
}

/// A quantifier-free formula in `x1` defining `f^k(A)`.
pub fn psi_k(alg: &FiniteAlgebra, k: usize) -> Result<MonoFormula> {
    let profile = MonounaryProfile::of(alg)?;
    psi_k_for(&profile, k)
}

pub(crate) fn psi_k_for(profile: &MonounaryProfile, k: usize) -> Result<MonoFormula> {
    require_v(profile)?;
    let x = Var::Free(0);
    let ell = profile.ell;
    let atom = match profile.common_source_height {
        None => Atom::new(Side::new(0, x), Side::new(0, x)),
        Some(n) if k >= n => Atom::new(Side::new(0, x), Side::new(ell, x)),
        Some(n) => Atom::new(Side::new(n - k, x), Side::new(n - k + ell, x)),
    };
    Ok(MonoFormula::new(1, Vec::new(), vec![atom]))
}

/// Removes the innermost quantifier; the result is equivalent over `alg`.
pub fn eliminate_quantifier(alg: &FiniteAlgebra, phi: &MonoFormula) -> Result<MonoFormula> {
    let profile = MonounaryProfile::of(alg)?;
    eliminate_traced(&profile, phi).map(|(out, _)| out)
}

/// Like [`eliminate_quantifier`], also returning the weight before every
/// rewrite step and after the last one.
pub fn eliminate_traced(
    profile: &MonounaryProfile,
    phi: &MonoFormula,
) -> Result<(MonoFormula, Vec<usize>)> {
    require_v(profile)?;
    let Some(y) = phi.innermost() else {
        return Err(Error::InvalidArgument("formula has no quantifier".into()));
    };
    let mut cur = normalize(phi);
    let mut weights = vec![weight(&cur)];
    while let Some(next) = rewrite_step(&cur) {
        weights.push(weight(&next));
        cur = next;
    }
    let mut out = cur.clone();
    out.bound.pop();
    let Some(pos) = cur.atoms.iter().position(|a| a.mentions(y)) else {
        return Ok((out, weights));
    };
    let atom = cur.atoms[pos];
    out.atoms.remove(pos);
    if atom.right.var == y {
        let (k, l) = (atom.left.exp, atom.right.exp);
        let sat = (0..profile.size()).any(|a| profile.iterate(a, k) == profile.iterate(a, l));
        if !sat {
            let x1 = Var::Free(0);
            out.atoms = vec![Atom::new(Side::new(k, x1), Side::new(l, x1))];
            out.denotes_empty = true;
        }
        return Ok((out, weights));
    }
    let psi = psi_k_for(profile, atom.left.exp)?;
    let at = atom.right;
    let shift = |s: Side| Side::new(s.exp + at.exp, at.var);
    let inst = psi
        .atoms
        .iter()
        .map(|a| Atom::new(shift(a.left), shift(a.right)))
        .filter(|a| !a.is_trivial());
    for (offset, a) in inst.enumerate() {
        out.atoms.insert(pos + offset, a);
    }
    Ok((out, weights))
}

/// Eliminates every quantifier, innermost first.
pub fn eliminate_quantifiers(alg: &FiniteAlgebra, phi: &MonoFormula) -> Result<MonoFormula> {
    let profile = MonounaryProfile::of(alg)?;
    require_v(&profile)?;
    let mut cur = phi.clone();
    while cur.has_bound_y() {
        cur = eliminate_traced(&profile, &cur)?.0;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::monounary::random::{random_formula, random_v_map};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parse(s: &str) -> MonoFormula {
        MonoFormula::parse(s).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&parse("Ey. f^2(y)=x1 & f(y)=x2")), 5);
        assert_eq!(weight(&parse("Ey. f(x1)=x2")), 0);
        assert_eq!(weight(&parse("Ey. f(y)=f^3(y)")), 6);
    }

    #[test]
    fn first_rule_examples() {
        let next = rewrite_step(&parse("Ey. f^2(y)=x1 & f(y)=x2")).unwrap();
        assert_eq!(next.to_string(), "Ey. f(x2)=x1 & f(y)=x2");
        assert_eq!(weight(&next), 2);
        let next = rewrite_step(&parse("Ey. f(y)=x1 & f(y)=x2")).unwrap();
        assert_eq!(next.to_string(), "Ey. x2=x1 & f(y)=x2");
        assert_eq!(weight(&next), 2);
        assert!(rewrite_step(&parse("Ey. f(y)=x1 & x1=x2")).is_none());
    }

    #[test]
    fn loop_rules() {
        // rule 3: the loop atom is rewritten in place
        let next = rewrite_step(&parse("Ey. y=x1 & f^2(y)=y")).unwrap();
        assert_eq!(next.to_string(), "Ey. y=x1 & y=f^2(x1)");
        // rule 4 can produce a trivial atom, which disappears
        let next = rewrite_step(&parse("Ey. f^2(y)=y & f^2(y)=y")).unwrap();
        assert_eq!(next.to_string(), "Ey. f^2(y)=y");
    }

    #[test]
    fn elimination_examples() {
        let swap = builtin::monounary(&[1, 0]).unwrap();
        let out = eliminate_quantifier(&swap, &parse("Ey. f(y)=x1 & f(y)=x2")).unwrap();
        assert_eq!(out.to_string(), "x2=x1");
        let tail = builtin::monounary(&[1, 0, 0]).unwrap();
        let out = eliminate_quantifier(&tail, &parse("Ey. f(y)=x1")).unwrap();
        assert_eq!(out.to_string(), "x1=f^2(x1)");
        let out = eliminate_quantifier(&tail, &parse("Ey. f(y)=f(y)")).unwrap();
        assert!(out.atoms.is_empty() && out.bound.is_empty());
        let out = eliminate_quantifier(&swap, &parse("Ey. f(y)=y")).unwrap();
        assert!(out.denotes_empty);
        assert_eq!(out.to_string(), "f(x1)=x1");
    }

    #[test]
    fn psi_examples() {
        let tail = builtin::monounary(&[1, 0, 0]).unwrap();
        assert_eq!(psi_k(&tail, 1).unwrap().to_string(), "x1=f^2(x1)");
        let chain = builtin::monounary(&[0, 0, 1]).unwrap();
        assert_eq!(psi_k(&chain, 1).unwrap().to_string(), "f(x1)=f^2(x1)");
        let swap = builtin::monounary(&[1, 0]).unwrap();
        assert_eq!(psi_k(&swap, 3).unwrap().to_string(), "x1=x1");
        let bad = builtin::monounary(&[0, 0, 1, 0]).unwrap();
        assert_eq!(psi_k(&bad, 1), Err(Error::ConditionVNotSatisfied));
        assert_eq!(
            eliminate_quantifier(&bad, &parse("Ey. f(y)=x1")),
            Err(Error::ConditionVNotSatisfied)
        );
    }

    #[test]
    fn elimination_preserves_the_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let f = random_v_map(&mut rng, 5);
            let alg = builtin::monounary(&f).unwrap();
            let profile = MonounaryProfile::new(&f).unwrap();
            let free = rng.gen_range(0..=3);
            let bound = rng.gen_range(1..=2);
            let phi = random_formula(&mut rng, free, bound, 3);
            let out = eliminate_quantifiers(&alg, &phi).unwrap();
            assert!(out.is_quantifier_free());
            assert_eq!(out.relation(&profile), phi.relation(&profile), "f={f:?} {phi}");
        }
    }

    #[test]
    fn psi_defines_the_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let f = random_v_map(&mut rng, 5);
            let profile = MonounaryProfile::new(&f).unwrap();
            for k in 0..=2 * f.len() {
                let psi = psi_k_for(&profile, k).unwrap();
                let defined: Vec<usize> = psi.relation(&profile).tuples().into_iter().map(|t| t[0]).collect();
                assert_eq!(defined, profile.image_of_iterate(k), "f={f:?} k={k}");
            }
        }
    }
}
