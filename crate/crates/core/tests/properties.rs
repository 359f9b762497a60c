use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polhom::algebra::{FiniteAlgebra, OperationTable, ResourceBounds};
use polhom::builtin::monounary;
use polhom::clone::{AlgebraicCloser, CentralizerCloser};
use polhom::decide::{decide, pol_hom_witness, revalidate, sdc_witness, DecideOptions};
use polhom::format::{parse_algebra, serialize_algebra};
use polhom::monounary::random::{random_formula, random_v_map};
use polhom::monounary::{eliminate_quantifier, rewrite_step, weight, MonoFormula, MonounaryProfile};
use polhom::pointset::PointSet;
use polhom::verdict::{Property, VerdictValue};

fn bounds() -> ResourceBounds {
    ResourceBounds::default()
}

/// One operation of arity 1 or 2 on 2 or 3 points.
fn small_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=3, 1usize..=2)
        .prop_flat_map(|(n, ar)| (Just(n), Just(ar), prop::collection::vec(0..n, n.pow(ar as u32))))
        .prop_map(|(n, ar, table)| {
            FiniteAlgebra::new("random", n, vec![OperationTable::new("f", ar, table)]).unwrap()
        })
}

/// Two points with a unary or binary operation, or three points with a
/// unary one.
fn decidable_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    prop_oneof![(Just(2usize), 1usize..=2), (Just(3usize), Just(1usize))]
        .prop_flat_map(|(n, ar)| (Just(n), Just(ar), prop::collection::vec(0..n, n.pow(ar as u32))))
        .prop_map(|(n, ar, table)| {
            FiniteAlgebra::new("random", n, vec![OperationTable::new("f", ar, table)]).unwrap()
        })
}

fn relabel(alg: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = alg.size();
    let ops = alg
        .ops()
        .iter()
        .map(|op| {
            let ar = op.arity();
            let mut values = vec![0; n.pow(ar as u32)];
            for (i, &v) in op.values().iter().enumerate() {
                let mut j = 0;
                let mut rest = i;
                let mut digits = vec![0; ar];
                for d in digits.iter_mut().rev() {
                    *d = rest % n;
                    rest /= n;
                }
                for d in digits {
                    j = j * n + perm[d];
                }
                values[j] = perm[v];
            }
            OperationTable::new(op.name(), ar, values)
        })
        .collect();
    FiniteAlgebra::new("relabelled", n, ops).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn file_format_round_trips(alg in small_algebra()) {
        let text = serialize_algebra(&alg);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(serialize_algebra(&back), text);
    }

    #[test]
    fn closures_are_closure_operators(alg in small_algebra(), n in 1usize..=2, a in any::<u64>(), b in any::<u64>()) {
        let n = if alg.size() == 3 && alg.ops()[0].arity() == 2 { 1 } else { n };
        let len = alg.size().pow(n as u32);
        let set = |bits: u64| PointSet::from_points(len, (0..len).filter(|i| bits >> i & 1 == 1));
        let (s, t) = (set(a), set(a | b));
        let alg_c = AlgebraicCloser::new(&alg, n, &bounds()).unwrap();
        let mut cen = CentralizerCloser::new(&alg, n, &bounds()).unwrap();
        let (as_, at) = (alg_c.close(&s), alg_c.close(&t));
        let (cs, ct) = (cen.close(&s).unwrap(), cen.close(&t).unwrap());
        prop_assert!(s.is_subset(&cs) && cs.is_subset(&as_));
        prop_assert_eq!(&alg_c.close(&as_), &as_);
        prop_assert_eq!(&cen.close(&cs).unwrap(), &cs);
        prop_assert!(as_.is_subset(&at) && cs.is_subset(&ct));
        prop_assert!(cen.is_closed(&cs).unwrap());
    }

    #[test]
    fn witnesses_revalidate(alg in decidable_algebra()) {
        if let Some(w) = pol_hom_witness(&alg, 2, &bounds()).unwrap() {
            prop_assert!(revalidate(&alg, &w, &bounds()).unwrap());
        }
        if let Some(w) = sdc_witness(&alg, 2, &bounds()).unwrap() {
            prop_assert!(revalidate(&alg, &w, &bounds()).unwrap());
        }
    }

    #[test]
    fn verdicts_survive_relabelling(alg in decidable_algebra(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let perm: Vec<usize> = if alg.size() == 2 { vec![perm[0].min(1), 1 - perm[0].min(1)] } else { perm };
        let other = relabel(&alg, &perm);
        let opts = DecideOptions::new(2, 2);
        for p in [Property::HomHom, Property::PolHom, Property::Sdc, Property::InjSpfin] {
            let x = decide(&alg, p, &opts).unwrap();
            let y = decide(&other, p, &opts).unwrap();
            prop_assert_eq!(x.value, y.value, "{} under {:?}", p, perm);
            prop_assert_eq!(x.witness.map(|w| w.level()), y.witness.map(|w| w.level()));
        }
    }

    #[test]
    fn trio_agrees(alg in decidable_algebra()) {
        let opts = DecideOptions::new(2, 2);
        let values: Vec<VerdictValue> = [Property::PolHom, Property::Sdc, Property::InjSpfin]
            .into_iter()
            .map(|p| decide(&alg, p, &opts).unwrap().value)
            .collect();
        prop_assert!(values.windows(2).all(|w| w[0].as_bool() == w[1].as_bool()), "{:?}", values);
    }

    #[test]
    fn unary_fast_path_matches_search(f in (1usize..=5).prop_flat_map(|n| prop::collection::vec(0..n, n))) {
        let alg = monounary(&f).unwrap();
        let cond_v = MonounaryProfile::new(&f).unwrap().sources_share_height();
        let witness = pol_hom_witness(&alg, 2, &bounds()).unwrap();
        prop_assert_eq!(witness.is_none(), cond_v);
        let v = decide(&alg, Property::Sdc, &DecideOptions::new(2, 2)).unwrap();
        prop_assert_eq!(v.value.as_bool(), Some(cond_v));
    }

    #[test]
    fn elimination_preserves_meaning(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_v_map(&mut rng, 5);
        let alg = monounary(&f).unwrap();
        let profile = MonounaryProfile::of(&alg).unwrap();
        let phi = random_formula(&mut rng, 3, 1, 4);
        let out = eliminate_quantifier(&alg, &phi).unwrap();
        prop_assert!(out.is_quantifier_free());
        prop_assert_eq!(out.relation(&profile), phi.relation(&profile));
        let mut cur = phi.clone();
        while let Some(next) = rewrite_step(&cur) {
            prop_assert!(weight(&next) < weight(&cur));
            cur = next;
        }
        let reparsed = MonoFormula::parse(&phi.to_string()).unwrap();
        prop_assert_eq!(reparsed.to_string(), phi.to_string());
    }
}
