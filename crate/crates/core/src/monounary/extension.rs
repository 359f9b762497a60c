use std::collections::HashMap;

use super::MonounaryProfile;
use crate::algebra::{Element, Tuple};

/// Whether the partial map `points[i] ↦ values[i]` on `A^m` extends to a
/// homomorphism `A^m → A`, decided without materializing the power.
///
/// The map extends iff it is consistent along forward orbits and every
/// forced value `h(b)` lies deep enough in the image chain to receive the
/// preimage trees that hang off `b` outside the forced part.
pub fn extends_to_power(
    profile: &MonounaryProfile,
    m: usize,
    points: &[Tuple],
    values: &[Element],
) -> bool {
    debug_assert_eq!(points.len(), values.len());
    if m == 0 && points.is_empty() {
        return profile.has_fixed_point();
    }
    let step = |x: &[Element]| -> Tuple { x.iter().map(|&a| profile.apply(a)).collect() };
    let mut forced: HashMap<Tuple, Element> = HashMap::new();
    for (d, &v) in points.iter().zip(values) {
        debug_assert_eq!(d.len(), m);
        let mut x = d.clone();
        let mut val = v;
        loop {
            match forced.get(&x) {
                Some(&old) if old != val => return false,
                Some(_) => break,
                None => {
                    let next = step(&x);
                    forced.insert(x, val);
                    x = next;
                    val = profile.apply(val);
                }
            }
        }
    }

    let n = profile.size();
    let depth_of = |x: &[Element]| -> Option<usize> {
        x.iter()
            .map(|&a| profile.preimage_depth(a))
            .fold(None, |acc: Option<usize>, d| match (acc, d) {
                (None, d) => d,
                (a, None) => a,
                (Some(a), Some(b)) => Some(a.min(b)),
            })
    };
    let mut inside: HashMap<&Tuple, Vec<Option<usize>>> = HashMap::new();
    let images: Vec<(Tuple, &Tuple)> = forced.keys().map(|z| (step(z), z)).collect();
    for (img, z) in &images {
        if let Some((key, _)) = forced.get_key_value(img) {
            inside.entry(key).or_default().push(depth_of(z));
        }
    }
    let mut pre: Vec<Vec<Element>> = vec![Vec::new(); n];
    for u in 0..n {
        pre[profile.apply(u)].push(u);
    }
    for (b, &hb) in &forced {
        if b.iter().any(|&c| pre[c].is_empty()) {
            continue;
        }
        let in_b = inside.get(b).map(Vec::as_slice).unwrap_or(&[]);
        for t in (0..=n).rev() {
            let deep = |d: &Option<usize>| d.is_none_or(|d| d >= t);
            let all = b.iter().fold(1u128, |acc, &c| {
                acc.saturating_mul(pre[c].iter().filter(|&&u| deep(&profile.preimage_depth(u))).count() as u128)
            });
            let known = in_b.iter().filter(|d| deep(d)).count() as u128;
            if all > known {
                if profile.preimage_depth(hb).is_some_and(|d| d < t + 1) {
                    return false;
                }
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{tuple_from_index, ResourceBounds};
    use crate::builtin;
    use crate::hom::{extend_partial, PartialOperation};
    use crate::pointset::PointSet;
    use crate::power::Power;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn generic(f: &[usize], m: usize, points: &[Tuple], values: &[Element]) -> Option<bool> {
        let alg = builtin::monounary(f).unwrap();
        let bounds = ResourceBounds {
            max_nodes: 200_000,
            ..Default::default()
        };
        let power = Power::new(&alg, m, &bounds).unwrap();
        let mut pairs = Vec::new();
        for (p, &v) in points.iter().zip(values) {
            pairs.push((power.index_of(p).unwrap(), v));
        }
        pairs.sort();
        pairs.dedup();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Some(false);
        }
        let h = PartialOperation::from_points(m, f.len(), pairs);
        extend_partial(&power, &h, &PointSet::full(power.len()), &bounds)
            .ok()
            .map(|e| e.is_some())
    }

    #[test]
    fn agrees_with_backtracking_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut outcomes = [0usize; 2];
        let mut skipped = 0;
        for _ in 0..3000 {
            let n = rng.gen_range(1..=4);
            let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let m = rng.gen_range(0..=3);
            let count = rng.gen_range(0..=3);
            let points: Vec<Tuple> = (0..count)
                .map(|_| tuple_from_index(n, m, rng.gen_range(0..n.pow(m as u32))))
                .collect();
            let values: Vec<Element> = (0..count).map(|_| rng.gen_range(0..n)).collect();
            let profile = MonounaryProfile::new(&f).unwrap();
            let fast = extends_to_power(&profile, m, &points, &values);
            let Some(slow) = generic(&f, m, &points, &values) else {
                skipped += 1;
                continue;
            };
            assert_eq!(
                fast,
                slow,
                "f={f:?} m={m} points={points:?} values={values:?}"
            );
            outcomes[fast as usize] += 1;
        }
        assert!(outcomes.iter().all(|&c| c > 300), "{outcomes:?}");
        assert!(skipped < 100, "{skipped} skipped");
    }

    #[test]
    fn image_needs_depth() {
        // f=(0,0,1,0): 1 has the preimage 2, so its image must have one too
        let profile = MonounaryProfile::new(&[0, 0, 1, 0]).unwrap();
        assert!(!extends_to_power(&profile, 1, &[vec![1]], &[3]));
        assert!(extends_to_power(&profile, 1, &[vec![1]], &[1]));
        assert!(extends_to_power(&profile, 1, &[vec![1]], &[0]));
        assert!(!extends_to_power(&profile, 2, &[vec![0, 1], vec![0, 1]], &[0, 1]));
    }
}
