//! Bounded deciders for the six homogeneity-type properties. Each search
//! returns the canonical least witness: least power or arity first, then
//! the least subuniverse or set in canonical order, then the least
//! homomorphism in lexicographic order.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::algebra::{Element, FiniteAlgebra, ResourceBounds, Tuple};
use crate::clone::{
    algebraic_closure, centralizer_closure, clone_fragment, solution_set, AlgebraicCloser,
    CentralizerCloser,
};
use crate::error::{bound_exceeded, Error, Result};
use crate::hom::{extend_homomorphism, extend_partial, for_each_homomorphism, is_homomorphism, PartialOperation};
use crate::monounary::{extends_to_power, MonounaryProfile};
use crate::pointset::PointSet;
use crate::power::Power;
use crate::pp::{QfppBasis, RelationFamily};
use crate::relation::Relation;
use crate::variety::{classify, ClassificationReport};
use crate::verdict::{Bounds, Certificate, Property, Verdict, VerdictValue, Witness};

/// Search limits for the deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// `K`: largest power searched.
    pub max_power: usize,
    /// `N`: largest arity searched.
    pub max_arity: usize,
    pub resources: ResourceBounds,
}

impl DecideOptions {
    pub fn new(max_power: usize, max_arity: usize) -> Self {
        DecideOptions {
            max_power,
            max_arity,
            resources: ResourceBounds::default(),
        }
    }

    /// `K = 2`, and `N = 3` on two elements, `N = 2` otherwise.
    pub fn defaults_for(alg: &FiniteAlgebra) -> Self {
        DecideOptions::new(2, if alg.size() <= 2 { 3 } else { 2 })
    }
}

fn domain_relation(k: usize, size: usize, points: &PointSet) -> Relation {
    Relation::from_points(k, size, points.clone())
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn new(bounds: &ResourceBounds) -> Self {
        Budget {
            used: 0,
            max: bounds.max_nodes,
        }
    }

    fn tick(&mut self, what: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            return Err(bound_exceeded(format!("{what} exceeded {} steps", self.max)));
        }
        Ok(())
    }
}

/// The one-generated subuniverses `⟨b⟩` of `A^k` for a unary algebra, in
/// canonical order, each with its orbit listed from `b`.
fn orbits(profile: &MonounaryProfile, power: &Power<'_>) -> Vec<(PointSet, Vec<usize>)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for b in 0..power.len() {
        let mut orbit = vec![b];
        let mut set = PointSet::from_points(power.len(), [b]);
        loop {
            let next = power.apply(0, &[*orbit.last().unwrap()]);
            if !set.insert(next) {
                break;
            }
            orbit.push(next);
        }
        if seen.insert(set.clone()) {
            out.push((set, orbit));
        }
    }
    let _ = profile;
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    out
}

/// Homomorphisms `⟨b⟩ → A` in lexicographic order of their value vectors.
fn orbit_homs(profile: &MonounaryProfile, power: &Power<'_>, orbit: &[usize]) -> Vec<PartialOperation> {
    let k = power.exponent();
    let n = profile.size();
    let last = power.apply(0, &[*orbit.last().unwrap()]);
    let back = orbit.iter().position(|&p| p == last).unwrap();
    let mut homs: Vec<PartialOperation> = (0..n)
        .filter_map(|v| {
            let vals: Vec<Element> = (0..orbit.len()).map(|i| profile.iterate(v, i)).collect();
            if profile.apply(*vals.last().unwrap()) != vals[back] {
                return None;
            }
            Some(PartialOperation::from_points(
                k,
                n,
                orbit.iter().copied().zip(vals),
            ))
        })
        .collect();
    homs.sort_by_key(|h| h.value_vector());
    homs
}

fn unary_extends(profile: &MonounaryProfile, power: &Power<'_>, h: &PartialOperation) -> bool {
    let (points, values): (Vec<Tuple>, Vec<Element>) =
        h.point_values().map(|(p, v)| (power.tuple(p), v)).unzip();
    extends_to_power(profile, power.exponent(), &points, &values)
}

/// The least `(k, B, h)` with `h: B → A` not extending to `A^k`.
fn least_non_extendable(
    alg: &FiniteAlgebra,
    ks: impl IntoIterator<Item = usize>,
    bounds: &ResourceBounds,
) -> Result<Option<(usize, PointSet, PartialOperation)>> {
    let mut budget = Budget::new(bounds);
    let profile = if alg.is_monounary() {
        Some(MonounaryProfile::of(alg)?)
    } else {
        None
    };
    for k in ks {
        let power = Power::new(alg, k, bounds)?;
        let full = PointSet::full(power.len());
        if let Some(profile) = &profile {
            for (set, orbit) in orbits(profile, &power) {
                for h in orbit_homs(profile, &power, &orbit) {
                    budget.tick("pol-hom search")?;
                    if !unary_extends(profile, &power, &h) {
                        return Ok(Some((k, set, h)));
                    }
                }
            }
            continue;
        }
        for b in power.subuniverses(bounds)? {
            if b.is_full() {
                continue;
            }
            let mut failure: Option<PartialOperation> = None;
            let mut err: Option<Error> = None;
            for_each_homomorphism(&power, &b, bounds, &mut |h| {
                if let Err(e) = budget.tick("pol-hom search") {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
                match extend_partial(&power, &h, &full, bounds) {
                    Ok(Some(_)) => ControlFlow::Continue(()),
                    Ok(None) => {
                        failure = Some(h);
                        ControlFlow::Break(())
                    }
                    Err(e) => {
                        err = Some(e);
                        ControlFlow::Break(())
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            if let Some(h) = failure {
                return Ok(Some((k, b, h)));
            }
        }
    }
    Ok(None)
}

/// Brute-force search for a homomorphism between subalgebras of `A` that
/// does not extend to an endomorphism.
pub fn hom_hom_witness(alg: &FiniteAlgebra, bounds: &ResourceBounds) -> Result<Option<Witness>> {
    Ok(least_non_extendable(alg, [1], bounds)?.map(|(k, b, h)| Witness::NonExtendableHomomorphism {
        k,
        domain: domain_relation(k, alg.size(), &b),
        homomorphism: h,
        within: None,
    }))
}

/// Brute-force pol-hom search over `A^1, …, A^K`.
pub fn pol_hom_witness(alg: &FiniteAlgebra, max_power: usize, bounds: &ResourceBounds) -> Result<Option<Witness>> {
    Ok(
        least_non_extendable(alg, 1..=max_power, bounds)?.map(|(k, b, h)| Witness::NonExtendableHomomorphism {
            k,
            domain: domain_relation(k, alg.size(), &b),
            homomorphism: h,
            within: None,
        }),
    )
}

/// Brute-force search for `B ≤ C ≤ A^k` and `h: B → A` with no extension
/// to `C`; `C` is the least such subuniverse.
pub fn inj_spfin_witness(alg: &FiniteAlgebra, max_power: usize, bounds: &ResourceBounds) -> Result<Option<Witness>> {
    let Some((k, b, h)) = least_non_extendable(alg, 1..=max_power, bounds)? else {
        return Ok(None);
    };
    let power = Power::new(alg, k, bounds)?;
    let candidates: Vec<PointSet> = if alg.is_monounary() {
        let profile = MonounaryProfile::of(alg)?;
        let mut seen = HashSet::new();
        let mut cs: Vec<PointSet> = orbits(&profile, &power)
            .into_iter()
            .map(|(o, _)| {
                let mut c = b.clone();
                c.union_with(&o);
                c
            })
            .filter(|c| *c != b && seen.insert(c.clone()))
            .collect();
        cs.sort_by(|x, y| x.canonical_cmp(y));
        cs.push(PointSet::full(power.len()));
        cs
    } else {
        power
            .subuniverses(bounds)?
            .into_iter()
            .filter(|c| b.is_subset(c) && *c != b)
            .collect()
    };
    for c in candidates {
        if extend_partial(&power, &h, &c, bounds)?.is_none() {
            let within = (!c.is_full()).then(|| domain_relation(k, alg.size(), &c));
            return Ok(Some(Witness::NonExtendableHomomorphism {
                k,
                domain: domain_relation(k, alg.size(), &b),
                homomorphism: h,
                within,
            }));
        }
    }
    Err(Error::Validation(
        "non-extendable homomorphism extends to every subuniverse".into(),
    ))
}

/// Closed-set enumeration gives up beyond this many sets.
const CLOSED_SET_CAP: usize = 128;

fn closed_sets_capped(
    cent: &mut CentralizerCloser<'_>,
    cap: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<PointSet>>> {
    let len = cent.universe_len();
    let start = cent.close(&PointSet::empty(len))?;
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i].clone();
        i += 1;
        for p in 0..len {
            if x.contains(p) {
                continue;
            }
            budget.tick("closed-set enumeration")?;
            let mut y = x.clone();
            y.insert(p);
            let y = cent.close(&y)?;
            if seen.insert(y.clone()) {
                if queue.len() == cap {
                    return Ok(None);
                }
                queue.push(y);
            }
        }
    }
    queue.sort_by(|a, b| a.canonical_cmp(b));
    Ok(Some(queue))
}

/// The centralizer-closed subsets of `A^n` in canonical order, by closing
/// upward one point at a time from the closure of `∅`.
pub fn centralizer_closed_sets(alg: &FiniteAlgebra, n: usize, bounds: &ResourceBounds) -> Result<Vec<PointSet>> {
    let mut cent = CentralizerCloser::new(alg, n, bounds)?;
    let mut budget = Budget::new(bounds);
    closed_sets_capped(&mut cent, usize::MAX, &mut budget).map(|s| s.expect("uncapped"))
}

/// Visits the `r`-subsets of `pool` in lexicographic order until `f`
/// returns true.
fn each_combination(pool: &[usize], r: usize, f: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<()> {
    let mut idx: Vec<usize> = (0..r).collect();
    if r > pool.len() {
        return Ok(());
    }
    let mut cur: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if f(&cur)? {
            return Ok(());
        }
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + pool.len() - r) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..r {
            cur[j] = pool[idx[j]];
        }
    }
}

/// Least closed non-algebraic set at arity `n`, as `(set, algebraic closure)`.
fn sdc_witness_at(
    alg: &FiniteAlgebra,
    n: usize,
    bounds: &ResourceBounds,
    budget: &mut Budget,
) -> Result<Option<(PointSet, PointSet)>> {
    let algebraic = AlgebraicCloser::new(alg, n, bounds)?;
    let mut cent = CentralizerCloser::new(alg, n, bounds)?;
    if let Some(sets) = closed_sets_capped(&mut cent, CLOSED_SET_CAP, budget)? {
        return Ok(sets.into_iter().find_map(|x| {
            let a = algebraic.close(&x);
            (a != x).then_some((x, a))
        }));
    }
    // Too many closed sets: scan all supersets of the closure of `∅` by
    // size, then lexicographically.
    let len = cent.universe_len();
    let base = cent.close(&PointSet::empty(len))?;
    let pool: Vec<usize> = (0..len).filter(|&p| !base.contains(p)).collect();
    let mut found = None;
    for r in 0..=pool.len() {
        each_combination(&pool, r, &mut |extra| {
            budget.tick("invariant-set sweep")?;
            let mut x = base.clone();
            for &p in extra {
                x.insert(p);
            }
            let a = algebraic.close(&x);
            if a != x && cent.is_closed(&x)? {
                found = Some((x, a));
                return Ok(true);
            }
            Ok(false)
        })?;
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// Least centralizer-closed, non-algebraic set of arity `≤ N`.
pub fn sdc_witness(alg: &FiniteAlgebra, max_arity: usize, bounds: &ResourceBounds) -> Result<Option<Witness>> {
    let mut budget = Budget::new(bounds);
    for n in 1..=max_arity {
        if let Some((x, a)) = sdc_witness_at(alg, n, bounds, &mut budget)? {
            return Ok(Some(Witness::NonAlgebraicInvariantSet {
                n,
                set: domain_relation(n, alg.size(), &x),
                algebraic_closure: domain_relation(n, alg.size(), &a),
            }));
        }
    }
    Ok(None)
}

/// The first `Sol(f, g)` (pairs `f ≤ g` of `C^(n)` by table) that is not
/// quantifier-free pp definable over the graphs, for `n ≤ N`.
pub fn cbullet_gap_witness(alg: &FiniteAlgebra, max_arity: usize, bounds: &ResourceBounds) -> Result<Option<Witness>> {
    for n in 1..=max_arity {
        let graphs = QfppBasis::new(&RelationFamily::cbullet(alg, [n + 1], bounds)?, n, bounds)?;
        let frag = clone_fragment(alg, n, bounds)?;
        let ms = frag.members();
        let mut tried = HashSet::new();
        for i in 0..ms.len() {
            for j in i..ms.len() {
                let s = solution_set(n, alg.size(), ms[i].table(), ms[j].table());
                if tried.insert(s.points().clone()) && !graphs.contains(&s) {
                    return Ok(Some(Witness::QfppGapRelation { n, relation: s }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether a witness is a genuine counterexample.
pub fn revalidate(alg: &FiniteAlgebra, witness: &Witness, bounds: &ResourceBounds) -> Result<bool> {
    match witness {
        Witness::NonExtendableHomomorphism {
            k,
            domain,
            homomorphism,
            within,
        } => {
            let power = Power::new(alg, *k, bounds)?;
            if !power.is_subuniverse(domain.points()) || homomorphism.domain() != *domain.points() {
                return Ok(false);
            }
            if !is_homomorphism(alg, homomorphism) {
                return Ok(false);
            }
            let target = match within {
                Some(c) => {
                    if !power.is_subuniverse(c.points()) {
                        return Ok(false);
                    }
                    c.points().clone()
                }
                None => PointSet::full(power.len()),
            };
            let target = crate::power::SubuniverseSet::from_points(*k, alg.size(), target);
            Ok(extend_homomorphism(alg, homomorphism, &target, bounds)?.is_none())
        }
        Witness::NonAlgebraicInvariantSet {
            set,
            algebraic_closure: reported,
            ..
        } => {
            let cent = centralizer_closure(alg, set, bounds)?;
            let alg_closure = algebraic_closure(alg, set, bounds)?;
            Ok(cent == *set && alg_closure != *set && alg_closure == *reported)
        }
        Witness::QfppGapRelation { n, relation } => {
            let sols = QfppBasis::new(&RelationFamily::ccirc(alg, [*n], bounds)?, *n, bounds)?;
            let graphs = QfppBasis::new(&RelationFamily::cbullet(alg, [*n + 1], bounds)?, *n, bounds)?;
            Ok(sols.contains(relation) && !graphs.contains(relation))
        }
    }
}

fn fast_answer(rep: &Option<ClassificationReport>, p: Property) -> Option<(bool, String)> {
    rep.as_ref().map(|r| {
        let (v, t) = r.answer(p);
        (v, t.to_string())
    })
}

/// Merges a brute-force outcome with the classification answer.
fn finish(
    property: Property,
    bounds: Bounds,
    brute: Result<Option<Witness>>,
    brute_is_exact: bool,
    fast: Option<(bool, String)>,
) -> Result<Verdict> {
    let mut notes = Vec::new();
    let witness = match brute {
        Ok(w) => w,
        Err(Error::ResourceBoundExceeded(msg)) if fast.is_some() => {
            notes.push(format!("brute force stopped: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let fastpath = fast.as_ref().map(|f| f.0);
    let (value, certificate) = match (&witness, fast) {
        (Some(_), fast) => {
            if let Some((true, theorem)) = fast {
                notes.push(format!("witness contradicts the fast path ({theorem})"));
            }
            (VerdictValue::ExactFalse, Certificate::BruteForce)
        }
        (None, _) if brute_is_exact && notes.is_empty() => (VerdictValue::ExactTrue, Certificate::BruteForce),
        (None, Some((true, theorem))) => (VerdictValue::ExactTrue, Certificate::Fastpath { theorem }),
        (None, Some((false, theorem))) => {
            if notes.is_empty() {
                notes.push("no witness within the search bounds".into());
            }
            (VerdictValue::ExactFalse, Certificate::Fastpath { theorem })
        }
        (None, None) => (VerdictValue::TrueUpToBound, Certificate::BruteForce),
    };
    Ok(Verdict {
        property,
        value,
        bounds,
        witness,
        certificate,
        fastpath,
        notes,
    })
}

pub fn is_hom_homogeneous(alg: &FiniteAlgebra, opts: &DecideOptions) -> Result<Verdict> {
    let (_, rep) = classify(alg);
    let group = matches!(crate::variety::recognize(alg).kind, crate::variety::VarietyKind::AbelianGroup);
    let fast = fast_answer(&rep, Property::Sdc).filter(|_| group);
    let bounds = Bounds {
        max_power: Some(1),
        max_arity: None,
    };
    finish(Property::HomHom, bounds, hom_hom_witness(alg, &opts.resources), true, fast)
}

pub fn is_pol_hom_up_to(alg: &FiniteAlgebra, opts: &DecideOptions) -> Result<Verdict> {
    let (_, rep) = classify(alg);
    let bounds = Bounds {
        max_power: Some(opts.max_power),
        max_arity: None,
    };
    let brute = pol_hom_witness(alg, opts.max_power, &opts.resources);
    finish(Property::PolHom, bounds, brute, alg.size() == 1, fast_answer(&rep, Property::PolHom))
}

pub fn has_sdc_up_to(alg: &FiniteAlgebra, opts: &DecideOptions) -> Result<Verdict> {
    let (_, rep) = classify(alg);
    let bounds = Bounds {
        max_power: None,
        max_arity: Some(opts.max_arity),
    };
    let brute = sdc_witness(alg, opts.max_arity, &opts.resources);
    finish(Property::Sdc, bounds, brute, alg.size() == 1, fast_answer(&rep, Property::Sdc))
}

pub fn is_injective_spfin_up_to(alg: &FiniteAlgebra, opts: &DecideOptions) -> Result<Verdict> {
    let (_, rep) = classify(alg);
    let bounds = Bounds {
        max_power: Some(opts.max_power),
        max_arity: None,
    };
    let brute = inj_spfin_witness(alg, opts.max_power, &opts.resources);
    finish(Property::InjSpfin, bounds, brute, alg.size() == 1, fast_answer(&rep, Property::InjSpfin))
}

pub fn is_cbullet_polhom_up_to(alg: &FiniteAlgebra, opts: &DecideOptions) -> Result<Verdict> {
    let (_, rep) = classify(alg);
    let bounds = Bounds {
        max_power: Some(opts.max_power),
        max_arity: Some(opts.max_arity),
    };
    let brute = cbullet_gap_witness(alg, opts.max_arity, &opts.resources).and_then(|gap| match gap {
        Some(w) => Ok(Some(w)),
        None => pol_hom_witness(alg, opts.max_power, &opts.resources),
    });
    finish(Property::Cbullet, bounds, brute, alg.size() == 1, fast_answer(&rep, Property::Cbullet))
}

/// Exact only for recognized varieties; `unknown` otherwise.
pub fn is_injective_hsp(alg: &FiniteAlgebra) -> Verdict {
    let (tag, rep) = classify(alg);
    match fast_answer(&rep, Property::InjHsp) {
        Some((v, theorem)) => Verdict {
            property: Property::InjHsp,
            value: if v {
                VerdictValue::ExactTrue
            } else {
                VerdictValue::ExactFalse
            },
            bounds: Bounds::default(),
            witness: None,
            certificate: Certificate::Fastpath { theorem },
            fastpath: Some(v),
            notes: Vec::new(),
        },
        None => Verdict {
            property: Property::InjHsp,
            value: VerdictValue::Unknown,
            bounds: Bounds::default(),
            witness: None,
            certificate: Certificate::BruteForce,
            fastpath: None,
            notes: vec![format!(
                "no classification applies (variety kind {:?}) and the variety is infinite",
                tag.kind
            )],
        },
    }
}

pub fn decide(alg: &FiniteAlgebra, property: Property, opts: &DecideOptions) -> Result<Verdict> {
    match property {
        Property::HomHom => is_hom_homogeneous(alg, opts),
        Property::PolHom => is_pol_hom_up_to(alg, opts),
        Property::Sdc => has_sdc_up_to(alg, opts),
        Property::InjSpfin => is_injective_spfin_up_to(alg, opts),
        Property::InjHsp => Ok(is_injective_hsp(alg)),
        Property::Cbullet => is_cbullet_polhom_up_to(alg, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn opts(k: usize, n: usize) -> DecideOptions {
        DecideOptions::new(k, n)
    }

    #[test]
    fn two_element_semilattice() {
        let m = builtin::chain_semilattice(2);
        let o = opts(3, 3);
        assert_eq!(is_hom_homogeneous(&m, &o).unwrap().value, VerdictValue::ExactTrue);
        assert_eq!(is_pol_hom_up_to(&m, &o).unwrap().value, VerdictValue::ExactTrue);
        assert_eq!(has_sdc_up_to(&m, &o).unwrap().value, VerdictValue::ExactTrue);
        assert_eq!(is_injective_spfin_up_to(&m, &o).unwrap().value, VerdictValue::ExactTrue);
        let cb = is_cbullet_polhom_up_to(&m, &o).unwrap();
        assert_eq!(cb.value, VerdictValue::ExactFalse);
        match cb.witness.unwrap() {
            Witness::QfppGapRelation { n, relation } => {
                assert_eq!(n, 3);
                assert_eq!(relation.render(), "{000,001,010,011,100,101,111}");
            }
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn unary_algebra_with_uneven_sources() {
        let a = builtin::monounary(&[0, 0, 1, 0]).unwrap();
        let v = has_sdc_up_to(&a, &opts(2, 2)).unwrap();
        assert_eq!(v.value, VerdictValue::ExactFalse);
        match v.witness.as_ref().unwrap() {
            Witness::NonAlgebraicInvariantSet { n, set, .. } => {
                assert_eq!(*n, 1);
                assert_eq!(set.render(), "{0,1}");
            }
            w => panic!("{w:?}"),
        }
        assert!(revalidate(&a, v.witness.as_ref().unwrap(), &ResourceBounds::default()).unwrap());
        let p = is_pol_hom_up_to(&a, &opts(3, 2)).unwrap();
        assert_eq!(p.value, VerdictValue::ExactFalse);
        assert!(revalidate(&a, p.witness.as_ref().unwrap(), &ResourceBounds::default()).unwrap());
        let s = is_injective_spfin_up_to(&a, &opts(3, 2)).unwrap();
        assert_eq!(s.value, VerdictValue::ExactFalse);
        assert!(revalidate(&a, s.witness.as_ref().unwrap(), &ResourceBounds::default()).unwrap());
    }

    #[test]
    fn groups_by_hom_homogeneity() {
        let g = builtin::product(&builtin::cyclic(2), &builtin::cyclic(4)).unwrap();
        let v = is_hom_homogeneous(&g, &opts(1, 1)).unwrap();
        assert_eq!(v.value, VerdictValue::ExactFalse);
        assert!(revalidate(&g, v.witness.as_ref().unwrap(), &ResourceBounds::default()).unwrap());
        assert_eq!(is_hom_homogeneous(&builtin::cyclic(6), &opts(1, 1)).unwrap().value, VerdictValue::ExactTrue);
    }

    #[test]
    fn three_chain_lattice_fails() {
        let l = builtin::chain_lattice(3);
        let v = is_pol_hom_up_to(&l, &opts(3, 2)).unwrap();
        assert_eq!(v.value, VerdictValue::ExactFalse);
        assert!(v.witness.as_ref().unwrap().level() <= 3);
        assert!(revalidate(&l, v.witness.as_ref().unwrap(), &ResourceBounds::default()).unwrap());
        assert!(sdc_witness(&l, 2, &ResourceBounds::default()).unwrap().is_none());
        let w = sdc_witness(&l, 3, &ResourceBounds::default()).unwrap().unwrap();
        assert_eq!(w.level(), 3);
        assert!(revalidate(&l, &w, &ResourceBounds::default()).unwrap());
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        each_combination(&[1, 4, 6, 9], 2, &mut |c| {
            seen.push(c.to_vec());
            Ok(false)
        })
        .unwrap();
        assert_eq!(seen, vec![vec![1, 4], vec![1, 6], vec![1, 9], vec![4, 6], vec![4, 9], vec![6, 9]]);
    }

    #[test]
    fn hsp_needs_a_classification() {
        let cyc = builtin::monounary(&[1, 2, 0]).unwrap();
        assert_eq!(is_injective_hsp(&cyc).value, VerdictValue::ExactFalse);
        let proj = crate::algebra::OperationTable::from_fn("p", 2, 2, |a| a[0]);
        let odd = FiniteAlgebra::new("p", 2, vec![proj]).unwrap();
        assert_eq!(is_injective_hsp(&odd).value, VerdictValue::Unknown);
    }

    #[test]
    fn transposition_is_cbullet_pol_hom() {
        let t = builtin::monounary(&[1, 0]).unwrap();
        let v = is_cbullet_polhom_up_to(&t, &opts(2, 3)).unwrap();
        assert_eq!(v.value, VerdictValue::ExactTrue);
        assert!(v.witness.is_none());
    }
}
