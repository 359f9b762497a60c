//! Direct powers evaluated on the fly, subuniverse generation and
//! enumeration.

use std::collections::HashSet;

use crate::algebra::{tuple_index, Element, FiniteAlgebra, ResourceBounds, Tuple};
use crate::error::{bound_exceeded, Error, Result};
use crate::pointset::PointSet;

/// The direct power `A^k` without materialized operation tables. Points are
/// the indices `0..n^k` of `k`-tuples in lexicographic order. `k = 0` is
/// allowed and yields the one-point power.
#[derive(Debug, Clone)]
pub struct Power<'a> {
    alg: &'a FiniteAlgebra,
    k: usize,
    len: usize,
    digits: Vec<Element>,
}

impl<'a> Power<'a> {
    pub fn new(alg: &'a FiniteAlgebra, k: usize, bounds: &ResourceBounds) -> Result<Self> {
        let len = bounds.power_len(alg.size(), k)?;
        let mut digits = vec![0; len * k];
        for p in 0..len {
            let mut rest = p;
            for c in (0..k).rev() {
                digits[p * k + c] = rest % alg.size();
                rest /= alg.size();
            }
        }
        Ok(Power {
            alg,
            k,
            len,
            digits,
        })
    }

    pub fn alg(&self) -> &'a FiniteAlgebra {
        self.alg
    }

    pub fn exponent(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn coords(&self, p: usize) -> &[Element] {
        &self.digits[p * self.k..(p + 1) * self.k]
    }

    pub fn tuple(&self, p: usize) -> Tuple {
        self.coords(p).to_vec()
    }

    pub fn index_of(&self, tuple: &[Element]) -> Result<usize> {
        if tuple.len() != self.k {
            return Err(Error::InvalidArgument(format!(
                "expected a {}-tuple, got {:?}",
                self.k, tuple
            )));
        }
        if let Some(&v) = tuple.iter().find(|&&v| v >= self.alg.size()) {
            return Err(Error::OutOfRange {
                value: v,
                size: self.alg.size(),
            });
        }
        Ok(tuple_index(self.alg.size(), tuple))
    }

    /// The constant tuple `(c, …, c)`.
    pub fn diagonal(&self, c: Element) -> usize {
        let mut idx = 0;
        for _ in 0..self.k {
            idx = idx * self.alg.size() + c;
        }
        idx
    }

    /// Componentwise application of basic operation `op` to points.
    #[inline]
    pub fn apply(&self, op: usize, points: &[usize]) -> usize {
        let n = self.alg.size();
        let mut args = [0usize; 8];
        let mut heap;
        let args: &mut [usize] = if points.len() <= 8 {
            &mut args[..points.len()]
        } else {
            heap = vec![0; points.len()];
            &mut heap
        };
        let mut out = 0;
        for c in 0..self.k {
            for (a, &p) in args.iter_mut().zip(points) {
                *a = self.digits[p * self.k + c];
            }
            out = out * n + self.alg.apply(op, args);
        }
        out
    }

    /// Closes `set` under all operations; `order` lists the members of `set`
    /// and the first `head` of them are already known to be closed among
    /// themselves.
    pub(crate) fn saturate(&self, set: &mut PointSet, order: &mut Vec<usize>, mut head: usize) {
        let ops = self.alg.ops();
        let mut buf = Vec::new();
        while head < order.len() {
            for (oi, op) in ops.iter().enumerate() {
                if op.arity() == 0 {
                    continue;
                }
                let mut tuples = NewTuples::new(head, op.arity());
                buf.resize(op.arity(), 0);
                while tuples.next_into(&mut buf) {
                    let pts: Vec<usize> = buf.iter().map(|&i| order[i]).collect();
                    let z = self.apply(oi, &pts);
                    if set.insert(z) {
                        order.push(z);
                    }
                }
            }
            head += 1;
        }
    }

    /// Points forced into every subuniverse by the nullary operations.
    pub(crate) fn constants(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (oi, op) in self.alg.ops().iter().enumerate() {
            if op.arity() == 0 {
                out.push(self.apply(oi, &[]));
            }
        }
        out
    }

    /// The subuniverse generated by `seed`.
    pub fn generate(&self, seed: impl IntoIterator<Item = usize>) -> PointSet {
        let mut set = PointSet::empty(self.len);
        let mut order = Vec::new();
        for p in self.constants().into_iter().chain(seed) {
            if set.insert(p) {
                order.push(p);
            }
        }
        self.saturate(&mut set, &mut order, 0);
        set
    }

    /// `⟨closed ∪ {x}⟩` for a subuniverse `closed`.
    pub fn extend_closed(&self, closed: &PointSet, x: usize) -> PointSet {
        let mut set = closed.clone();
        let mut order: Vec<usize> = closed.iter().collect();
        let head = order.len();
        if set.insert(x) {
            order.push(x);
        }
        self.saturate(&mut set, &mut order, head);
        set
    }

    pub fn is_subuniverse(&self, set: &PointSet) -> bool {
        if self.constants().iter().any(|&c| !set.contains(c)) {
            return false;
        }
        let members = set.to_vec();
        for (oi, op) in self.alg.ops().iter().enumerate() {
            let r = op.arity();
            if r == 0 {
                continue;
            }
            let total = members.len().checked_pow(r as u32).unwrap_or(usize::MAX);
            let mut pts = vec![0; r];
            for idx in 0..total {
                let mut rest = idx;
                for slot in pts.iter_mut().rev() {
                    *slot = members[rest % members.len()];
                    rest /= members.len();
                }
                if !set.contains(self.apply(oi, &pts)) {
                    return false;
                }
            }
        }
        true
    }

    /// All subuniverses, each generated by adding points one at a time to a
    /// smaller subuniverse; sorted canonically.
    pub fn subuniverses(&self, bounds: &ResourceBounds) -> Result<Vec<PointSet>> {
        let start = self.generate(std::iter::empty());
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut queue = vec![start];
        let mut i = 0;
        let mut work: u64 = 0;
        while i < queue.len() {
            let current = queue[i].clone();
            i += 1;
            for x in 0..self.len {
                if current.contains(x) {
                    continue;
                }
                work += 1;
                if work > bounds.max_nodes {
                    return Err(bound_exceeded(format!(
                        "subuniverse enumeration of A^{} exceeded {} steps",
                        self.k, bounds.max_nodes
                    )));
                }
                let next = self.extend_closed(&current, x);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        queue.sort_by(|a, b| a.canonical_cmp(b));
        Ok(queue)
    }
}

/// Enumerates the index tuples of length `arity` over `0..=head` that
/// contain `head`, each exactly once: the first occurrence of `head` sits at
/// position `p`, earlier positions range over `0..head`, later ones over
/// `0..=head`.
pub(crate) struct NewTuples {
    head: usize,
    arity: usize,
    p: usize,
    idx: Vec<usize>,
    started: bool,
}

impl NewTuples {
    pub(crate) fn new(head: usize, arity: usize) -> Self {
        NewTuples {
            head,
            arity,
            p: 0,
            idx: vec![0; arity],
            started: false,
        }
    }

    fn reset_for(&mut self, p: usize) -> bool {
        if p >= self.arity || (p > 0 && self.head == 0) {
            return false;
        }
        self.p = p;
        for q in 0..self.arity {
            self.idx[q] = if q == p { self.head } else { 0 };
        }
        true
    }

    fn limit(&self, q: usize) -> usize {
        if q < self.p {
            self.head
        } else {
            self.head + 1
        }
    }

    pub(crate) fn next_into(&mut self, out: &mut [usize]) -> bool {
        if !self.started {
            self.started = true;
            if !self.reset_for(0) {
                return false;
            }
        } else {
            let mut advanced = false;
            for q in (0..self.arity).rev() {
                if q == self.p {
                    continue;
                }
                self.idx[q] += 1;
                if self.idx[q] < self.limit(q) {
                    advanced = true;
                    break;
                }
                self.idx[q] = 0;
            }
            if !advanced && !self.reset_for(self.p + 1) {
                return false;
            }
        }
        out.copy_from_slice(&self.idx);
        true
    }
}

/// A subuniverse of `A^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubuniverseSet {
    power_exponent: usize,
    size: usize,
    points: PointSet,
}

impl SubuniverseSet {
    pub(crate) fn from_points(power_exponent: usize, size: usize, points: PointSet) -> Self {
        SubuniverseSet {
            power_exponent,
            size,
            points,
        }
    }

    /// The whole power `A^k`.
    pub fn full(alg: &FiniteAlgebra, k: usize, bounds: &ResourceBounds) -> Result<Self> {
        let len = bounds.power_len(alg.size(), k)?;
        Ok(SubuniverseSet::from_points(k, alg.size(), PointSet::full(len)))
    }

    pub fn power_exponent(&self) -> usize {
        self.power_exponent
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.count()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, tuple: &[Element]) -> bool {
        tuple.len() == self.power_exponent
            && tuple.iter().all(|&a| a < self.size)
            && self.points.contains(tuple_index(self.size, tuple))
    }

    pub fn tuples(&self) -> Vec<Tuple> {
        self.points
            .iter()
            .map(|p| crate::algebra::tuple_from_index(self.size, self.power_exponent, p))
            .collect()
    }
}

/// Least subuniverse of `A^k` containing `seed`.
pub fn generate_subuniverse(
    alg: &FiniteAlgebra,
    k: usize,
    seed: &[Tuple],
    bounds: &ResourceBounds,
) -> Result<SubuniverseSet> {
    let power = Power::new(alg, k, bounds)?;
    let mut pts = Vec::with_capacity(seed.len());
    for t in seed {
        pts.push(power.index_of(t)?);
    }
    Ok(SubuniverseSet::from_points(k, alg.size(), power.generate(pts)))
}

/// All subuniverses of `A^k` (including `∅` exactly when it is closed),
/// sorted by size and then lexicographically.
pub fn enumerate_subuniverses(
    alg: &FiniteAlgebra,
    k: usize,
    bounds: &ResourceBounds,
) -> Result<Vec<SubuniverseSet>> {
    let power = Power::new(alg, k, bounds)?;
    Ok(power
        .subuniverses(bounds)?
        .into_iter()
        .map(|p| SubuniverseSet::from_points(k, alg.size(), p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn bounds() -> ResourceBounds {
        ResourceBounds::default()
    }

    #[test]
    fn new_tuples_cover_each_tuple_once() {
        for head in 0..4 {
            for arity in 1..4 {
                let mut it = NewTuples::new(head, arity);
                let mut buf = vec![0; arity];
                let mut got = Vec::new();
                while it.next_into(&mut buf) {
                    got.push(buf.clone());
                }
                let total = (head + 1).pow(arity as u32) - head.pow(arity as u32);
                assert_eq!(got.len(), total, "head {head} arity {arity}");
                let distinct: HashSet<_> = got.iter().cloned().collect();
                assert_eq!(distinct.len(), total);
                assert!(got.iter().all(|t| t.contains(&head) && t.iter().all(|&i| i <= head)));
            }
        }
    }

    #[test]
    fn generated_subuniverse_of_meet_square() {
        let m = builtin::chain_semilattice(2);
        let s = generate_subuniverse(&m, 2, &[vec![0, 1], vec![1, 0]], &bounds()).unwrap();
        assert_eq!(s.tuples(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn generated_subuniverse_is_orbit_for_monounary() {
        let f = builtin::monounary(&[1, 0, 0]).unwrap();
        let s = generate_subuniverse(&f, 1, &[vec![2]], &bounds()).unwrap();
        assert_eq!(s.tuples(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn generating_a_subuniverse_is_idempotent() {
        let m = builtin::chain_semilattice(2);
        let s = generate_subuniverse(&m, 2, &[vec![0, 1], vec![1, 0]], &bounds()).unwrap();
        let again = generate_subuniverse(&m, 2, &s.tuples(), &bounds()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn subuniverses_of_meet_semilattice() {
        let m = builtin::chain_semilattice(2);
        let subs = enumerate_subuniverses(&m, 1, &bounds()).unwrap();
        let lists: Vec<_> = subs.iter().map(|s| s.tuples()).collect();
        assert_eq!(
            lists,
            vec![vec![], vec![vec![0]], vec![vec![1]], vec![vec![0], vec![1]]]
        );
    }

    #[test]
    fn subuniverses_of_three_cycle() {
        let f = builtin::monounary(&[1, 2, 0]).unwrap();
        let subs = enumerate_subuniverses(&f, 1, &bounds()).unwrap();
        let sizes: Vec<_> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![0, 3]);
    }

    #[test]
    fn subuniverses_of_one_element_square() {
        let t = builtin::chain_semilattice(1);
        let subs = enumerate_subuniverses(&t, 2, &bounds()).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[1].tuples(), vec![vec![0, 0]]);
    }

    #[test]
    fn constants_make_empty_set_non_closed() {
        let z = builtin::cyclic(2);
        let subs = enumerate_subuniverses(&z, 1, &bounds()).unwrap();
        assert!(subs.iter().all(|s| !s.is_empty()));
        assert_eq!(subs[0].tuples(), vec![vec![0]]);
    }

    /// Canonical method: close every subset and deduplicate.
    fn subuniverses_by_closing_all_subsets(alg: &FiniteAlgebra, k: usize) -> Vec<PointSet> {
        let power = Power::new(alg, k, &bounds()).unwrap();
        let mut out: HashSet<PointSet> = HashSet::new();
        for mask in 0u64..(1u64 << power.len()) {
            let seed = (0..power.len()).filter(|&p| mask >> p & 1 == 1);
            out.insert(power.generate(seed));
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    }

    #[test]
    fn lattice_walk_matches_closing_all_subsets() {
        for alg in [
            builtin::chain_semilattice(2),
            builtin::fork_semilattice(),
            builtin::chain_lattice(3),
            builtin::cyclic(3),
            builtin::monounary(&[0, 0, 1]).unwrap(),
        ] {
            for k in 1..=2 {
                let power = Power::new(&alg, k, &bounds()).unwrap();
                if power.len() > 12 {
                    continue;
                }
                let fast = power.subuniverses(&bounds()).unwrap();
                assert_eq!(fast, subuniverses_by_closing_all_subsets(&alg, k), "{}", alg.name());
                assert!(fast.iter().all(|s| power.is_subuniverse(s)));
            }
        }
    }
}
