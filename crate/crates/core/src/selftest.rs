//! Acceptance checks run by `polhom selftest` and the test suite. Each
//! check reports a pass or a failure with a one-line explanation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FiniteAlgebra, OperationTable, ResourceBounds};
use crate::builtin;
use crate::clone::{AlgebraicCloser, CentralizerCloser};
use crate::corpus::CORPUS;
use crate::decide::{
    cbullet_gap_witness, decide, has_sdc_up_to, hom_hom_witness, is_cbullet_polhom_up_to, is_hom_homogeneous,
    pol_hom_witness, revalidate, sdc_witness, DecideOptions,
};
use crate::error::Result;
use crate::format::{parse_algebra, serialize_algebra};
use crate::monounary::random::{random_formula, random_v_map};
use crate::monounary::{eliminate_traced, psi_k, MonounaryProfile};
use crate::pointset::PointSet;
use crate::pp::{QfppBasis, RelationFamily};
use crate::relation::Relation;
use crate::report::Report;
use crate::variety::sylows_homocyclic;
use crate::verdict::{Certificate, Property, VerdictValue, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub const TITLES: [&str; 8] = [
    "two-element semilattice",
    "two-element and three-element chain lattices",
    "two-element binary algebras have SDC",
    "abelian groups: hom-homogeneity vs homocyclic Sylows",
    "unary maps on at most four points",
    "quantifier elimination",
    "closure operators",
    "cross-equivalence on the corpus",
];

/// Runs one criterion, `1..=8`.
pub fn run_criterion(id: u8) -> Outcome {
    let result = match id {
        1 => semilattice(),
        2 => lattices(),
        3 => two_element_binary(),
        4 => abelian(),
        5 => unary_maps(),
        6 => quantifier_elimination(),
        7 => closures(),
        8 => cross_equivalence(),
        _ => fail(format!("no criterion {id}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("?"),
        passed,
        detail,
    }
}

/// The criteria followed by corpus-wide invariants.
pub fn run_all() -> Vec<Outcome> {
    let mut out: Vec<Outcome> = (1..=8).map(run_criterion).collect();
    let (passed, detail) = match corpus_invariants() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(Outcome {
        id: 9,
        title: "corpus invariants",
        passed,
        detail,
    });
    out
}

fn all_but(arity: usize, missing: &[usize]) -> Relation {
    let all: Vec<Vec<usize>> = Relation::full(arity, 2).tuples();
    let keep: Vec<Vec<usize>> = all.into_iter().filter(|t| t != missing).collect();
    Relation::new(arity, 2, &keep).expect("valid tuples")
}

fn expect_value(alg: &FiniteAlgebra, p: Property, opts: &DecideOptions, want: VerdictValue) -> Check {
    let v = lift(decide(alg, p, opts))?;
    if v.value != want {
        return fail(format!("{p} of {} is {}, expected {want}", alg.name(), v.value));
    }
    if want == VerdictValue::ExactTrue && v.witness.is_some() {
        return fail(format!("{p} of {} reports a witness", alg.name()));
    }
    Ok(v.render())
}

/// Whether some permutation of coordinates carries `a` onto `b`.
pub fn permutation_equivalent(a: &Relation, b: &Relation) -> bool {
    if a.arity() != b.arity() || a.len() != b.len() {
        return false;
    }
    let n = a.arity();
    let tuples = a.tuples();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if tuples.iter().all(|t| {
            let moved: Vec<usize> = perm.iter().map(|&i| t[i]).collect();
            b.contains(&moved)
        }) {
            return true;
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[i] < perm[j]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn semilattice() -> Check {
    let m = builtin::chain_semilattice(2);
    let opts = DecideOptions::new(3, 3);
    for p in [Property::Sdc, Property::PolHom, Property::InjSpfin] {
        expect_value(&m, p, &opts, VerdictValue::ExactTrue)?;
    }
    let v = lift(is_cbullet_polhom_up_to(&m, &opts))?;
    let want = all_but(3, &[1, 1, 0]);
    match (&v.value, &v.witness) {
        (VerdictValue::ExactFalse, Some(Witness::QfppGapRelation { n: 3, relation })) if *relation == want => {}
        _ => return fail(format!("cbullet: {}", v.render())),
    }
    if !lift(revalidate(&m, v.witness.as_ref().unwrap(), &opts.resources))? {
        return fail("cbullet witness does not revalidate");
    }
    Ok(format!("sdc/pol-hom/inj-spfin exact-true at K=3,N=3; cbullet gap {want}"))
}

fn lattices() -> Check {
    let l = builtin::chain_lattice(2);
    let bounds = ResourceBounds::default();
    let opts = DecideOptions::new(2, 4);
    expect_value(&l, Property::Sdc, &opts, VerdictValue::ExactTrue)?;
    let v = lift(is_cbullet_polhom_up_to(&l, &opts))?;
    let Some(Witness::QfppGapRelation { n: 4, relation }) = &v.witness else {
        return fail(format!("cbullet of the 2-lattice: {}", v.render()));
    };
    let known = all_but(4, &[0, 0, 1, 1]);
    let sols = lift(QfppBasis::new(&lift(RelationFamily::ccirc(&l, [4], &bounds))?, 4, &bounds))?;
    let graphs = lift(QfppBasis::new(&lift(RelationFamily::cbullet(&l, [5], &bounds))?, 4, &bounds))?;
    if !sols.contains(&known) || graphs.contains(&known) {
        return fail(format!("{known} is not a qfpp gap of the 2-lattice"));
    }
    if !permutation_equivalent(relation, &known) {
        return fail(format!("reported gap {relation} is not a coordinate permutation of {known}"));
    }
    let c3 = builtin::chain_lattice(3);
    let Some(pw) = lift(pol_hom_witness(&c3, 3, &bounds))? else {
        return fail("no pol-hom witness for the 3-chain up to k=3");
    };
    let mut sdc = None;
    for n in 1..=3 {
        let v = lift(has_sdc_up_to(&c3, &DecideOptions::new(2, n)))?;
        if let Some(w) = v.witness.clone() {
            if v.value != VerdictValue::ExactFalse || v.certificate != Certificate::BruteForce {
                return fail(format!("3-chain sdc: {}", v.render()));
            }
            sdc = Some(w);
            break;
        }
    }
    let Some(sw) = sdc else {
        return fail("no sdc witness for the 3-chain up to n=3");
    };
    for w in [&pw, &sw] {
        if !lift(revalidate(&c3, w, &bounds))? {
            return fail(format!("3-chain witness does not revalidate: {}", w.render()));
        }
    }
    Ok(format!(
        "2-lattice sdc exact-true, gap {relation} (coordinate mirror of {known}); 3-chain pol-hom witness at k={}, sdc witness at n={} (none at n<=2)",
        pw.level(),
        sw.level()
    ))
}

/// The 16 algebras `({0,1}, ·)`.
pub fn two_element_binary_algebras() -> Vec<FiniteAlgebra> {
    (0..16usize)
        .map(|code| {
            let table: Vec<usize> = (0..4).map(|i| code >> (3 - i) & 1).collect();
            let name = format!("binary:{}", table.iter().map(|v| v.to_string()).collect::<String>());
            FiniteAlgebra::new(name, 2, vec![OperationTable::new("op", 2, table)]).expect("valid table")
        })
        .collect()
}

fn two_element_binary() -> Check {
    let bounds = ResourceBounds::default();
    for alg in two_element_binary_algebras() {
        if let Some(w) = lift(sdc_witness(&alg, 3, &bounds))? {
            return fail(format!("{}: {}", alg.name(), w.render()));
        }
    }
    Ok("no counterexample at N=3 on all 16 tables".into())
}

pub const ABELIAN_CORPUS: [&str; 10] = [
    "cyclic:2",
    "cyclic:3",
    "product:cyclic:2,cyclic:2",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "cyclic:7",
    "cyclic:8",
    "product:cyclic:2,cyclic:4",
    "product:cyclic:2,product:cyclic:2,cyclic:2",
];

fn abelian() -> Check {
    let bounds = ResourceBounds::default();
    let mut summary = Vec::new();
    for spec in ABELIAN_CORPUS {
        let g = lift(builtin::parse_builtin(spec))?;
        let brute = lift(hom_hom_witness(&g, &bounds))?;
        let fast = lift(sylows_homocyclic(&g))?;
        if brute.is_none() != fast {
            return fail(format!("{spec}: brute force {} but homocyclic={fast}", brute.is_none()));
        }
        let v = lift(is_hom_homogeneous(&g, &DecideOptions::new(1, 1)))?;
        if !v.is_exact() || v.value.as_bool() != Some(fast) {
            return fail(format!("{spec}: {}", v.render()));
        }
        if let Some(w) = &brute {
            if !lift(revalidate(&g, w, &bounds))? {
                return fail(format!("{spec}: witness does not revalidate"));
            }
        }
        summary.push(format!("{spec}={}", v.value));
    }
    Ok(summary.join(" "))
}

/// Every map on `{0,…,n−1}` for `1 ≤ n ≤ max`, as image lists.
pub fn all_unary_maps(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max {
        let mut f = vec![0; n];
        loop {
            out.push(f.clone());
            let Some(i) = (0..n).rev().find(|&i| f[i] + 1 < n) else {
                break;
            };
            f[i] += 1;
            for x in &mut f[i + 1..] {
                *x = 0;
            }
        }
    }
    out
}

fn unary_maps() -> Check {
    let bounds = ResourceBounds::default();
    let mut realized: BTreeMap<(Option<usize>, Option<usize>), usize> = BTreeMap::new();
    let maps = all_unary_maps(4);
    for f in &maps {
        let alg = lift(builtin::monounary(f))?;
        let profile = lift(MonounaryProfile::new(f))?;
        let cond_v = profile.sources_share_height();
        let cb = profile.is_bijective() || profile.is_constant();
        let hsp = cond_v && profile.has_fixed_point();
        let ph = lift(pol_hom_witness(&alg, 2, &bounds))?;
        let sd = lift(sdc_witness(&alg, 2, &bounds))?;
        let levels = (ph.as_ref().map(|w| w.level()), sd.as_ref().map(|w| w.level()));
        *realized.entry(levels).or_default() += 1;
        if cond_v && (ph.is_some() || sd.is_some()) {
            return fail(format!("{f:?}: condition (v) holds but a witness exists"));
        }
        if !cond_v && (ph.is_none() || sd.is_none()) {
            return fail(format!("{f:?}: condition (v) fails but no witness at K=2, N=2"));
        }
        for w in ph.iter().chain(sd.iter()) {
            if !lift(revalidate(&alg, w, &bounds))? {
                return fail(format!("{f:?}: witness does not revalidate"));
            }
        }
        if cb && !cond_v {
            return fail(format!("{f:?}: cbullet true but pol-hom false"));
        }
        if hsp && !cond_v {
            return fail(format!("{f:?}: inj-hsp true but inj-spfin false"));
        }
        if cb {
            if let Some(w) = lift(cbullet_gap_witness(&alg, 2, &bounds))? {
                return fail(format!("{f:?}: cbullet fast path true but {}", w.render()));
            }
        }
    }
    let census: Vec<String> = realized
        .iter()
        .map(|((k, n), c)| format!("k={} n={}: {c}", show(*k), show(*n)))
        .collect();
    Ok(format!("{} maps; witness levels {}", maps.len(), census.join(", ")))
}

fn show(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

fn quantifier_elimination() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut formulas = 0;
    for _ in 0..20 {
        let f = random_v_map(&mut rng, 5);
        let alg = lift(builtin::monounary(&f))?;
        let profile = lift(MonounaryProfile::new(&f))?;
        for _ in 0..50 {
            let free = rng.gen_range(0..=3);
            let phi = random_formula(&mut rng, free, 1, 4);
            let (out, weights) = lift(eliminate_traced(&profile, &phi))?;
            if weights.windows(2).any(|w| w[1] >= w[0]) {
                return fail(format!("f={f:?} {phi}: weights {weights:?}"));
            }
            if !out.is_quantifier_free() || out.relation(&profile) != phi.relation(&profile) {
                return fail(format!("f={f:?} {phi} became {out}"));
            }
            formulas += 1;
        }
        for k in 0..=10 {
            let psi = lift(psi_k(&alg, k))?;
            let defined: Vec<usize> = psi.relation(&profile).tuples().into_iter().map(|t| t[0]).collect();
            if defined != profile.image_of_iterate(k) {
                return fail(format!("f={f:?}: Psi_{k} defines {defined:?}"));
            }
        }
    }
    Ok(format!("{formulas} formulas over 20 algebras; Psi_k for k<=10"))
}

fn from_mask(len: usize, mask: usize) -> PointSet {
    PointSet::from_points(len, (0..len).filter(|&i| mask >> i & 1 == 1))
}

fn closure_suite(alg: &FiniteAlgebra, n: usize) -> std::result::Result<usize, String> {
    let bounds = ResourceBounds::default();
    let algebraic = lift(AlgebraicCloser::new(alg, n, &bounds))?;
    let mut cent = lift(CentralizerCloser::new(alg, n, &bounds))?;
    let len = cent.universe_len();
    let total = 1usize << len;
    let mut cc = Vec::with_capacity(total);
    let mut ac = Vec::with_capacity(total);
    for mask in 0..total {
        let s = from_mask(len, mask);
        let c = lift(cent.close(&s))?;
        let a = algebraic.close(&s);
        if !s.is_subset(&c) || !c.is_subset(&a) {
            return fail(format!("{} n={n}: S ⊆ cent(S) ⊆ alg(S) fails at mask {mask:#x}", alg.name()));
        }
        cc.push(c);
        ac.push(a);
    }
    let to_mask = |p: &PointSet| p.iter().fold(0usize, |m, i| m | 1 << i);
    let mut all_equal = true;
    for mask in 0..total {
        for (name, cl) in [("centralizer", &cc), ("algebraic", &ac)] {
            if cl[to_mask(&cl[mask])] != cl[mask] {
                return fail(format!("{} n={n}: {name} closure not idempotent", alg.name()));
            }
            for i in 0..len {
                if !cl[mask].is_subset(&cl[mask | 1 << i]) {
                    return fail(format!("{} n={n}: {name} closure not monotone", alg.name()));
                }
            }
        }
        all_equal &= cc[mask] == ac[mask];
    }
    let below = n > 1 && lift(sdc_witness(alg, n - 1, &bounds))?.is_some();
    let sdc = lift(sdc_witness(alg, n, &bounds))?;
    if !below && sdc.is_none() != all_equal {
        return fail(format!("{} n={n}: sdc search disagrees with the closure comparison", alg.name()));
    }
    Ok(total)
}

fn closures() -> Check {
    let mut sets = 0;
    let mut algebras = 0;
    for e in CORPUS {
        let alg = e.algebra();
        if alg.size() > 4 {
            continue;
        }
        for n in 1..=2 {
            sets += closure_suite(&alg, n)?;
        }
        algebras += 1;
    }
    Ok(format!("{algebras} algebras, {sets} sets"))
}

fn cross_equivalence() -> Check {
    let mut checked = 0;
    for e in CORPUS {
        let alg = e.algebra();
        let opts = e.options();
        let trio = [Property::PolHom, Property::Sdc, Property::InjSpfin];
        let mut verdicts = Vec::new();
        for p in trio {
            let v = lift(decide(&alg, p, &opts))?;
            if let Some(w) = &v.witness {
                if !lift(revalidate(&alg, w, &opts.resources))? {
                    return fail(format!("{}: {p} witness does not revalidate", e.spec));
                }
            }
            verdicts.push(v);
        }
        let values: Vec<Option<bool>> = verdicts.iter().map(|v| v.value.as_bool()).collect();
        let exact: Vec<bool> = verdicts.iter().map(|v| v.is_exact()).collect();
        if values.iter().any(|v| *v != values[0]) || exact.iter().any(|x| *x != exact[0]) {
            let r: Vec<String> = verdicts.iter().map(|v| v.render()).collect();
            return fail(format!("{}: {}", e.spec, r.join(" | ")));
        }
        let ph = verdicts[0].witness.as_ref().map(|w| w.level());
        let sd = verdicts[1].witness.as_ref().map(|w| w.level());
        if ph != e.pol_hom_witness_power || sd != e.sdc_witness_arity {
            return fail(format!(
                "{}: witness levels k={} n={} differ from the corpus record",
                e.spec,
                show(ph),
                show(sd)
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} corpus algebras agree"))
}

fn corpus_invariants() -> Check {
    for e in CORPUS {
        let alg = e.algebra();
        let text = serialize_algebra(&alg);
        let back = lift(parse_algebra(&text))?;
        if back != alg || serialize_algebra(&back) != text {
            return fail(format!("{}: file round trip changed the algebra", e.spec));
        }
        let (report, err) = Report::analyze(&alg, &e.options());
        if let Some(err) = err {
            return fail(format!("{}: {err}", e.spec));
        }
        if !report.cross_check.is_empty() {
            return fail(format!("{}: {}", e.spec, report.cross_check.join("; ")));
        }
        for p in &report.properties {
            if let Some(w) = p.verdict.as_ref().and_then(|v| v.witness.as_ref()) {
                if !lift(revalidate(&alg, w, &e.options().resources))? {
                    return fail(format!("{}: {} witness does not revalidate", e.spec, p.property));
                }
            }
        }
    }
    Ok(format!("{} entries round-trip, analyze consistently and revalidate", CORPUS.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let a = all_but(4, &[1, 1, 0, 0]);
        let b = all_but(4, &[0, 0, 1, 1]);
        assert!(permutation_equivalent(&a, &b));
        assert!(!permutation_equivalent(&a, &all_but(4, &[0, 1, 1, 1])));
    }

    #[test]
    fn map_census() {
        assert_eq!(all_unary_maps(4).len(), 1 + 4 + 27 + 256);
        assert_eq!(two_element_binary_algebras()[1].ops()[0].values(), &[0, 0, 0, 1]);
    }
}
