//! Term-operation fragments `C^(n)`, the relation families `C•` and `C∘`,
//! centralizer fragments and the two closure operators on relations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{tuple_from_index, Element, FiniteAlgebra, ResourceBounds};
use crate::error::{bound_exceeded, Error, Result, WellDefinednessFailure};
use crate::hom::{extend_partial, total_homomorphism_tables, PartialOperation};
use crate::monounary::{extends_to_power, MonounaryProfile};
use crate::pointset::PointSet;
use crate::power::{NewTuples, Power};
use crate::relation::Relation;
use crate::term::Term;

/// An `n`-ary term operation identified by its table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOperation {
    arity: usize,
    size: usize,
    table: Vec<Element>,
    witness_term: Option<Term>,
}

impl TermOperation {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn witness_term(&self) -> Option<&Term> {
        self.witness_term.as_ref()
    }

    pub fn eval(&self, args: &[Element]) -> Element {
        self.table[args.iter().fold(0, |acc, &a| acc * self.size + a)]
    }

    /// `f• = {(a̅, f(a̅))}`.
    pub fn graph(&self) -> Relation {
        let len = self.size.pow(self.arity as u32 + 1);
        let points = (0..self.table.len()).map(|i| i * self.size + self.table[i]);
        Relation::from_points(self.arity + 1, self.size, PointSet::from_points(len, points))
    }
}

/// `Sol(f, g)` for two tables of the same arity.
pub fn solution_set(arity: usize, size: usize, f: &[Element], g: &[Element]) -> Relation {
    let points = (0..f.len()).filter(|&i| f[i] == g[i]);
    Relation::from_points(arity, size, PointSet::from_points(f.len(), points))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneFragment {
    arity: usize,
    size: usize,
    members: Vec<TermOperation>,
}

impl CloneFragment {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Members sorted by table.
    pub fn members(&self) -> &[TermOperation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_table(&self, table: &[Element]) -> bool {
        self.members
            .binary_search_by(|m| m.table.as_slice().cmp(table))
            .is_ok()
    }
}

/// All `n`-ary term operations: the projections closed under the basic
/// operations. For `n = 0` only the constants generated by nullary
/// operations remain.
pub fn clone_fragment(alg: &FiniteAlgebra, n: usize, bounds: &ResourceBounds) -> Result<CloneFragment> {
    let len = bounds.power_len(alg.size(), n)?;
    let mut tables: Vec<Vec<Element>> = Vec::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut index: HashMap<Vec<Element>, usize> = HashMap::new();
    let mut push = |table: Vec<Element>, term: Term, tables: &mut Vec<Vec<Element>>, terms: &mut Vec<Term>| {
        if !index.contains_key(&table) {
            index.insert(table.clone(), tables.len());
            tables.push(table);
            terms.push(term);
        }
    };
    for i in 0..n {
        let table = (0..len).map(|p| tuple_from_index(alg.size(), n, p)[i]).collect();
        push(table, Term::Var(i), &mut tables, &mut terms);
    }
    for (oi, op) in alg.ops().iter().enumerate() {
        if op.arity() == 0 {
            push(vec![alg.apply(oi, &[]); len], Term::App(op.name().into(), vec![]), &mut tables, &mut terms);
        }
    }
    let mut head = 0;
    let mut buf = Vec::new();
    let mut args = Vec::new();
    while head < tables.len() {
        for (oi, op) in alg.ops().iter().enumerate() {
            let r = op.arity();
            if r == 0 {
                continue;
            }
            buf.resize(r, 0);
            args.resize(r, 0);
            let mut combos = NewTuples::new(head, r);
            while combos.next_into(&mut buf) {
                let table: Vec<Element> = (0..len)
                    .map(|c| {
                        for q in 0..r {
                            args[q] = tables[buf[q]][c];
                        }
                        alg.apply(oi, &args)
                    })
                    .collect();
                let term = Term::App(op.name().into(), buf.iter().map(|&i| terms[i].clone()).collect());
                push(table, term, &mut tables, &mut terms);
                if tables.len() as u64 > bounds.max_nodes {
                    return Err(bound_exceeded(format!(
                        "clone fragment of arity {n} exceeds {} members",
                        bounds.max_nodes
                    )));
                }
            }
        }
        head += 1;
    }
    let mut members: Vec<TermOperation> = tables
        .into_iter()
        .zip(terms)
        .map(|(table, term)| TermOperation {
            arity: n,
            size: alg.size(),
            table,
            witness_term: Some(term),
        })
        .collect();
    members.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(CloneFragment {
        arity: n,
        size: alg.size(),
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationMode {
    /// `{ f• : f ∈ C^(n−1) }`
    Graphs,
    /// `{ Sol(f, g) : f, g ∈ C^(n) }`
    SolutionSets,
}

/// The members of `C•` or `C∘` of arity `n`, deduplicated, in the order of
/// their defining operations (pairs `f ≤ g` by table for solution sets).
pub fn relation_fragment(
    alg: &FiniteAlgebra,
    n: usize,
    mode: RelationMode,
    bounds: &ResourceBounds,
) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    match mode {
        RelationMode::Graphs => {
            if n == 0 {
                return Err(Error::InvalidArgument("graphs have arity at least 1".into()));
            }
            bounds.power_len(alg.size(), n)?;
            for f in clone_fragment(alg, n - 1, bounds)?.members() {
                let g = f.graph();
                if seen.insert(g.clone()) {
                    out.push(g);
                }
            }
        }
        RelationMode::SolutionSets => {
            let frag = clone_fragment(alg, n, bounds)?;
            let ms = frag.members();
            for i in 0..ms.len() {
                for j in i..ms.len() {
                    let s = solution_set(n, alg.size(), &ms[i].table, &ms[j].table);
                    if seen.insert(s.clone()) {
                        out.push(s);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `C*^(k)`: all homomorphisms `A^k → A`, as tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerFragment {
    arity: usize,
    size: usize,
    members: Vec<Vec<Element>>,
}

impl CentralizerFragment {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[Vec<Element>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_operations(&self) -> Vec<PartialOperation> {
        self.members
            .iter()
            .map(|t| PartialOperation::total(self.arity, self.size, t))
            .collect()
    }
}

pub fn centralizer_fragment(
    alg: &FiniteAlgebra,
    k: usize,
    bounds: &ResourceBounds,
) -> Result<CentralizerFragment> {
    let power = Power::new(alg, k, bounds)?;
    Ok(CentralizerFragment {
        arity: k,
        size: alg.size(),
        members: total_homomorphism_tables(&power, bounds)?,
    })
}

/// Reusable algebraic-closure operator on `A^n`.
pub struct AlgebraicCloser {
    arity: usize,
    size: usize,
    tables: Vec<Vec<Element>>,
}

impl AlgebraicCloser {
    pub fn new(alg: &FiniteAlgebra, n: usize, bounds: &ResourceBounds) -> Result<Self> {
        let frag = clone_fragment(alg, n, bounds)?;
        Ok(AlgebraicCloser {
            arity: n,
            size: alg.size(),
            tables: frag.members.into_iter().map(|m| m.table).collect(),
        })
    }

    /// Tuples on which every pair of terms agreeing on `s` also agrees.
    pub fn close(&self, s: &PointSet) -> PointSet {
        let pts = s.to_vec();
        let len = self.size.pow(self.arity as u32);
        let mut out = PointSet::full(len);
        let mut reps: HashMap<Vec<Element>, usize> = HashMap::new();
        for (i, t) in self.tables.iter().enumerate() {
            let key: Vec<Element> = pts.iter().map(|&p| t[p]).collect();
            let r = *reps.entry(key).or_insert(i);
            if r != i {
                let rep = &self.tables[r];
                for p in 0..len {
                    if rep[p] != t[p] {
                        out.remove(p);
                    }
                }
            }
        }
        out
    }

    pub fn close_relation(&self, s: &Relation) -> Relation {
        Relation::from_points(self.arity, self.size, self.close(s.points()))
    }
}

/// Smallest algebraic set containing `s`.
pub fn algebraic_closure(alg: &FiniteAlgebra, s: &Relation, bounds: &ResourceBounds) -> Result<Relation> {
    check_relation(alg, s)?;
    Ok(AlgebraicCloser::new(alg, s.arity(), bounds)?.close_relation(s))
}

fn check_relation(alg: &FiniteAlgebra, s: &Relation) -> Result<()> {
    if s.universe_size() != alg.size() {
        return Err(Error::InvalidArgument(format!(
            "relation over {} elements used with an algebra of size {}",
            s.universe_size(),
            alg.size()
        )));
    }
    if s.arity() == 0 {
        return Err(Error::InvalidArgument("relations must have positive arity".into()));
    }
    Ok(())
}

enum Lower {
    /// Tables of binary centralizer members.
    Binary(Vec<Vec<Element>>),
    Unary(Vec<Vec<Element>>),
    Nothing,
}

enum Strategy {
    Monounary(MonounaryProfile),
    Generic {
        lower: Lower,
        memo: HashMap<(usize, usize), Vec<usize>>,
    },
}

/// Search budget for the small centralizer members used as a lower bound.
const LOWER_BOUND_NODES: u64 = 5_000;

/// Reusable centralizer-closure operator on `A^n`.
///
/// A point `a̅` belongs to the closure of `S` iff sending the column points
/// of `S` to the entries of `a̅` extends to a homomorphism `A^|S| → A`.
/// Images under small centralizer members give a lower bound and shrink
/// `S` to a generating subset before any exact check is run.
pub struct CentralizerCloser<'a> {
    alg: &'a FiniteAlgebra,
    power: Power<'a>,
    bounds: ResourceBounds,
    strategy: Strategy,
    empty_closure: PointSet,
    exact_checks: u64,
}

impl<'a> CentralizerCloser<'a> {
    pub fn new(alg: &'a FiniteAlgebra, n: usize, bounds: &ResourceBounds) -> Result<Self> {
        let power = Power::new(alg, n, bounds)?;
        let strategy = if alg.is_monounary() {
            Strategy::Monounary(MonounaryProfile::of(alg)?)
        } else {
            let small = ResourceBounds {
                max_nodes: bounds.max_nodes.min(LOWER_BOUND_NODES),
                ..*bounds
            };
            let lower = match centralizer_fragment(alg, 2, &small) {
                Ok(c2) => Lower::Binary(c2.members),
                Err(Error::ResourceBoundExceeded(_)) => match centralizer_fragment(alg, 1, &small) {
                    Ok(c1) => Lower::Unary(c1.members),
                    Err(Error::ResourceBoundExceeded(_)) => Lower::Nothing,
                    Err(e) => return Err(e),
                },
                Err(e) => return Err(e),
            };
            Strategy::Generic {
                lower,
                memo: HashMap::new(),
            }
        };
        let empty_closure = PointSet::from_points(
            power.len(),
            alg.idempotent_elements().into_iter().map(|c| power.diagonal(c)),
        );
        Ok(CentralizerCloser {
            alg,
            power,
            bounds: *bounds,
            strategy,
            empty_closure,
            exact_checks: 0,
        })
    }

    pub fn arity(&self) -> usize {
        self.power.exponent()
    }

    pub fn universe_len(&self) -> usize {
        self.power.len()
    }

    /// Number of exact extension checks run so far.
    pub fn exact_checks(&self) -> u64 {
        self.exact_checks
    }

    /// Closes `set` (which must already contain the closure of `∅`) under
    /// the lower-bound members, starting the scan at `order[head]`.
    fn lower_close(&mut self, set: &mut PointSet, order: &mut Vec<usize>, mut head: usize) {
        let Strategy::Generic { lower, memo } = &mut self.strategy else {
            return;
        };
        let lower: &Lower = lower;
        let power = &self.power;
        let size = self.alg.size();
        let images = |memo: &mut HashMap<(usize, usize), Vec<usize>>, u: usize, v: usize| -> Vec<usize> {
            memo.entry((u, v))
                .or_insert_with(|| {
                    let (cu, cv) = (power.coords(u), power.coords(v));
                    let Lower::Binary(tables) = lower else { unreachable!() };
                    let mut out: Vec<usize> = tables
                        .iter()
                        .map(|t| cu.iter().zip(cv).fold(0, |acc, (&a, &b)| acc * size + t[a * size + b]))
                        .collect();
                    out.sort_unstable();
                    out.dedup();
                    out
                })
                .clone()
        };
        while head < order.len() {
            let x = order[head];
            match lower {
                Lower::Binary(_) => {
                    for i in 0..=head {
                        let y = order[i];
                        for (u, v) in [(x, y), (y, x)] {
                            for z in images(memo, u, v) {
                                if set.insert(z) {
                                    order.push(z);
                                }
                            }
                        }
                    }
                }
                Lower::Unary(tables) => {
                    let cx = power.coords(x).to_vec();
                    for t in tables.iter() {
                        let z = cx.iter().fold(0, |acc, &a| acc * size + t[a]);
                        if set.insert(z) {
                            order.push(z);
                        }
                    }
                }
                Lower::Nothing => {}
            }
            head += 1;
        }
    }

    /// Exact membership test of `a` in the closure of `gens`.
    fn member(&mut self, gens: &[usize], big: Option<&Power<'_>>, a: usize) -> Result<bool> {
        self.exact_checks += 1;
        let n = self.power.exponent();
        let m = gens.len();
        let size = self.alg.size();
        let columns: Vec<Vec<Element>> = (0..n)
            .map(|j| gens.iter().map(|&g| self.power.coords(g)[j]).collect())
            .collect();
        let values = self.power.coords(a);
        match &self.strategy {
            Strategy::Monounary(profile) => Ok(extends_to_power(profile, m, &columns, values)),
            Strategy::Generic { .. } => {
                let big = big.expect("generic strategy materializes the power");
                let mut pairs: Vec<(usize, Element)> = Vec::with_capacity(n);
                for (col, &v) in columns.iter().zip(values) {
                    let idx = col.iter().fold(0, |acc, &c| acc * size + c);
                    pairs.push((idx, v));
                }
                pairs.sort_unstable();
                pairs.dedup();
                if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Ok(false);
                }
                let h = PartialOperation::from_points(m, size, pairs);
                Ok(extend_partial(big, &h, &PointSet::full(big.len()), &self.bounds)?.is_some())
            }
        }
    }

    /// Closure of `s` together with a generating subset `G ⊆ s`.
    pub fn close_with_generators(&mut self, s: &PointSet) -> Result<(PointSet, Vec<usize>)> {
        let mut set = self.empty_closure.clone();
        let mut order: Vec<usize> = set.to_vec();
        self.lower_close(&mut set, &mut order, 0);
        let mut gens = Vec::new();
        for p in s.iter() {
            if matches!(self.strategy, Strategy::Monounary(_)) {
                gens.push(p);
                set.insert(p);
            } else if set.insert(p) {
                gens.push(p);
                let head = order.len();
                order.push(p);
                self.lower_close(&mut set, &mut order, head);
            }
        }
        let big = match self.strategy {
            Strategy::Monounary(_) => None,
            Strategy::Generic { .. } => Some(Power::new(self.alg, gens.len(), &self.bounds)?),
        };
        for a in 0..self.power.len() {
            if set.contains(a) {
                continue;
            }
            if self.member(&gens, big.as_ref(), a)? {
                set.insert(a);
                let head = order.len();
                order.push(a);
                self.lower_close(&mut set, &mut order, head);
            }
        }
        Ok((set, gens))
    }

    pub fn close(&mut self, s: &PointSet) -> Result<PointSet> {
        Ok(self.close_with_generators(s)?.0)
    }

    /// Whether `s` is its own closure; stops at the first point that
    /// escapes.
    pub fn is_closed(&mut self, s: &PointSet) -> Result<bool> {
        if !self.empty_closure.is_subset(s) {
            return Ok(false);
        }
        let mut set = self.empty_closure.clone();
        let mut order: Vec<usize> = set.to_vec();
        self.lower_close(&mut set, &mut order, 0);
        let mut gens = Vec::new();
        for p in s.iter() {
            if matches!(self.strategy, Strategy::Monounary(_)) {
                gens.push(p);
                set.insert(p);
            } else if set.insert(p) {
                gens.push(p);
                let head = order.len();
                order.push(p);
                self.lower_close(&mut set, &mut order, head);
                if !set.is_subset(s) {
                    return Ok(false);
                }
            }
        }
        if !set.is_subset(s) {
            return Ok(false);
        }
        let big = match self.strategy {
            Strategy::Monounary(_) => None,
            Strategy::Generic { .. } => Some(Power::new(self.alg, gens.len(), &self.bounds)?),
        };
        for a in 0..self.power.len() {
            if !s.contains(a) && self.member(&gens, big.as_ref(), a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn close_relation(&mut self, s: &Relation) -> Result<Relation> {
        let n = self.arity();
        Ok(Relation::from_points(n, self.alg.size(), self.close(s.points())?))
    }
}

/// Smallest `C*`-invariant set containing `s`.
pub fn centralizer_closure(alg: &FiniteAlgebra, s: &Relation, bounds: &ResourceBounds) -> Result<Relation> {
    check_relation(alg, s)?;
    CentralizerCloser::new(alg, s.arity(), bounds)?.close_relation(s)
}

#[derive(Clone)]
enum Origin {
    Generator(usize),
    Constant(usize),
    App(usize, Vec<usize>),
}

/// Extends `h` to `⟨dom h⟩` by `h̃(t(d̅₁,…,d̅_m)) = t(h(d̅₁),…,h(d̅_m))`,
/// evaluating every term met while generating the subuniverse.
pub fn extend_to_generated(
    alg: &FiniteAlgebra,
    h: &PartialOperation,
    bounds: &ResourceBounds,
) -> Result<PartialOperation> {
    if h.universe_size() != alg.size() {
        return Err(Error::InvalidArgument("map and algebra have different universes".into()));
    }
    let power = Power::new(alg, h.arity(), bounds)?;
    let gens: Vec<(usize, Element)> = h.point_values().collect();
    let mut value: HashMap<usize, Element> = HashMap::new();
    let mut origin: HashMap<usize, Origin> = HashMap::new();
    let mut order: Vec<usize> = Vec::new();
    for (i, &(p, v)) in gens.iter().enumerate() {
        value.insert(p, v);
        origin.insert(p, Origin::Generator(i));
        order.push(p);
    }
    let conflict = |z: usize, old: Origin, new: Origin, origin: &HashMap<usize, Origin>| -> Error {
        let t1 = build_term(alg, &old, origin);
        let t2 = build_term(alg, &new, origin);
        let violated = bounds
            .power_len(alg.size(), gens.len())
            .ok()
            .and_then(|_| sol_of_terms(alg, gens.len(), &t1, &t2).ok());
        Error::WellDefinednessFailure(Box::new(WellDefinednessFailure {
            point: power.tuple(z),
            first_term: t1.to_string(),
            second_term: t2.to_string(),
            violated,
        }))
    };
    for (oi, op) in alg.ops().iter().enumerate() {
        if op.arity() != 0 {
            continue;
        }
        let z = power.apply(oi, &[]);
        let v = alg.apply(oi, &[]);
        match value.get(&z) {
            Some(&old) if old != v => {
                return Err(conflict(z, origin[&z].clone(), Origin::Constant(oi), &origin));
            }
            Some(_) => {}
            None => {
                value.insert(z, v);
                origin.insert(z, Origin::Constant(oi));
                order.push(z);
            }
        }
    }
    let mut head = 0;
    let mut buf = Vec::new();
    while head < order.len() {
        for (oi, op) in alg.ops().iter().enumerate() {
            let r = op.arity();
            if r == 0 {
                continue;
            }
            buf.resize(r, 0);
            let mut combos = NewTuples::new(head, r);
            while combos.next_into(&mut buf) {
                let pts: Vec<usize> = buf.iter().map(|&i| order[i]).collect();
                let vals: Vec<Element> = pts.iter().map(|p| value[p]).collect();
                let z = power.apply(oi, &pts);
                let v = alg.apply(oi, &vals);
                match value.get(&z) {
                    Some(&old) if old != v => {
                        return Err(conflict(z, origin[&z].clone(), Origin::App(oi, pts), &origin));
                    }
                    Some(_) => {}
                    None => {
                        value.insert(z, v);
                        origin.insert(z, Origin::App(oi, pts));
                        order.push(z);
                    }
                }
            }
        }
        head += 1;
    }
    Ok(PartialOperation::from_points(h.arity(), alg.size(), value))
}

fn build_term(alg: &FiniteAlgebra, o: &Origin, origin: &HashMap<usize, Origin>) -> Term {
    match o {
        Origin::Generator(i) => Term::Var(*i),
        Origin::Constant(oi) => Term::App(alg.ops()[*oi].name().into(), vec![]),
        Origin::App(oi, pts) => Term::App(
            alg.ops()[*oi].name().into(),
            pts.iter().map(|p| build_term(alg, &origin[p], origin)).collect(),
        ),
    }
}

fn sol_of_terms(alg: &FiniteAlgebra, m: usize, t1: &Term, t2: &Term) -> Result<Relation> {
    let len = alg.size().pow(m as u32);
    let mut pts = Vec::new();
    for p in 0..len {
        let args = tuple_from_index(alg.size(), m, p);
        if t1.eval(alg, &args)? == t2.eval(alg, &args)? {
            pts.push(p);
        }
    }
    Ok(Relation::from_points(m, alg.size(), PointSet::from_points(len, pts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::hom::is_homomorphism;

    fn b() -> ResourceBounds {
        ResourceBounds::default()
    }

    fn tables(f: &CloneFragment) -> Vec<Vec<Element>> {
        f.members().iter().map(|m| m.table().to_vec()).collect()
    }

    #[test]
    fn clone_of_meet() {
        let m = builtin::chain_semilattice(2);
        assert_eq!(tables(&clone_fragment(&m, 1, &b()).unwrap()), vec![vec![0, 1]]);
        assert_eq!(
            tables(&clone_fragment(&m, 2, &b()).unwrap()),
            vec![vec![0, 0, 0, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]]
        );
    }

    #[test]
    fn unary_clone_of_transposition() {
        let t = builtin::monounary(&[1, 0]).unwrap();
        assert_eq!(tables(&clone_fragment(&t, 1, &b()).unwrap()), vec![vec![0, 1], vec![1, 0]]);
        let f = builtin::monounary(&[1, 2, 3, 3]).unwrap();
        assert_eq!(clone_fragment(&f, 1, &b()).unwrap().len(), 4);
    }

    #[test]
    fn witness_terms_reproduce_tables() {
        for alg in [builtin::cyclic(3), builtin::chain_lattice(3), builtin::fork_semilattice()] {
            for n in 0..=2 {
                let frag = clone_fragment(&alg, n, &b()).unwrap();
                for m in frag.members() {
                    let t = m.witness_term().unwrap();
                    for p in 0..alg.size().pow(n as u32) {
                        let args = tuple_from_index(alg.size(), n, p);
                        assert_eq!(t.eval(&alg, &args).unwrap(), m.eval(&args));
                    }
                }
            }
        }
    }

    #[test]
    fn nullary_fragment_holds_constants() {
        assert_eq!(tables(&clone_fragment(&builtin::cyclic(4), 0, &b()).unwrap()), vec![vec![0]]);
        assert!(clone_fragment(&builtin::chain_lattice(2), 0, &b()).unwrap().is_empty());
    }

    #[test]
    fn graph_of_meet() {
        let m = builtin::chain_semilattice(2);
        let graphs = relation_fragment(&m, 3, RelationMode::Graphs, &b()).unwrap();
        let meet = Relation::parse_tuples(3, 2, "000,010,100,111").unwrap();
        assert!(graphs.contains(&meet));
    }

    #[test]
    fn semilattice_solution_set_missing_one_tuple() {
        let m = builtin::chain_semilattice(2);
        let sols = relation_fragment(&m, 3, RelationMode::SolutionSets, &b()).unwrap();
        let s = Relation::parse_tuples(3, 2, "000,001,010,011,100,101,111").unwrap();
        assert!(sols.contains(&s));
        let eq = Relation::equality(2, 3);
        assert!(relation_fragment(&builtin::cyclic(3), 2, RelationMode::SolutionSets, &b())
            .unwrap()
            .contains(&eq));
    }

    #[test]
    fn centralizer_of_meet() {
        let m = builtin::chain_semilattice(2);
        assert_eq!(
            centralizer_fragment(&m, 1, &b()).unwrap().members(),
            &[vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(centralizer_fragment(&m, 2, &b()).unwrap().len(), 5);
        let t = builtin::chain_semilattice(1);
        assert_eq!(centralizer_fragment(&t, 3, &b()).unwrap().len(), 1);
    }

    #[test]
    fn algebraic_closure_examples() {
        let z2 = builtin::cyclic(2);
        let empty = Relation::empty(1, 2);
        assert_eq!(algebraic_closure(&z2, &empty, &b()).unwrap().tuples(), vec![vec![0]]);
        let m = builtin::chain_semilattice(2);
        assert_eq!(algebraic_closure(&m, &Relation::empty(1, 2), &b()).unwrap().len(), 2);
        let le = Relation::parse_tuples(2, 2, "00,01,11").unwrap();
        assert_eq!(algebraic_closure(&m, &le, &b()).unwrap(), le);
    }

    #[test]
    fn centralizer_closure_examples() {
        let m = builtin::chain_semilattice(2);
        let s = Relation::parse_tuples(2, 2, "01,10").unwrap();
        assert_eq!(centralizer_closure(&m, &s, &b()).unwrap(), Relation::full(2, 2));
        let z2 = builtin::cyclic(2);
        let s = Relation::parse_tuples(2, 2, "01").unwrap();
        assert_eq!(centralizer_closure(&z2, &s, &b()).unwrap().render(), "{00,01}");
        let full = Relation::full(2, 3);
        assert_eq!(centralizer_closure(&builtin::fork_semilattice(), &full, &b()).unwrap(), full);
        // the nullary convention: constant tuples of one-element subalgebras
        assert_eq!(
            centralizer_closure(&m, &Relation::empty(2, 2), &b()).unwrap().render(),
            "{00,11}"
        );
        assert_eq!(centralizer_closure(&z2, &Relation::empty(1, 2), &b()).unwrap().render(), "{0}");
    }

    #[test]
    fn image_set_of_unequal_sources_is_invariant_but_not_algebraic() {
        let f = builtin::monounary(&[0, 0, 1, 0]).unwrap();
        let image = Relation::parse_tuples(1, 4, "0,1").unwrap();
        assert_eq!(centralizer_closure(&f, &image, &b()).unwrap(), image);
        let alg = algebraic_closure(&f, &image, &b()).unwrap();
        assert!(image.is_subset(&alg) && alg != image);
    }

    /// Direct definition: images of `S` under every member of `C*^(|S|)`.
    fn closure_by_enumeration(alg: &FiniteAlgebra, cent: &[CentralizerFragment], s: &Relation) -> Relation {
        let rows = s.tuples();
        let n = s.arity();
        let cm = &cent[rows.len()];
        let mut out = Vec::new();
        for h in cm.members() {
            let t: Vec<Element> = (0..n)
                .map(|j| h[rows.iter().fold(0, |acc, r| acc * alg.size() + r[j])])
                .collect();
            out.push(t);
        }
        Relation::new(n, alg.size(), &out).unwrap()
    }

    #[test]
    fn closure_matches_enumeration_of_centralizer() {
        for alg in [
            builtin::chain_semilattice(2),
            builtin::chain_lattice(3),
            builtin::fork_semilattice(),
            builtin::cyclic(3),
            builtin::monounary(&[1, 0, 0]).unwrap(),
            builtin::monounary(&[0, 0, 1]).unwrap(),
        ] {
            let len = alg.size().pow(2);
            let mut closer = CentralizerCloser::new(&alg, 2, &b()).unwrap();
            let largest = if alg.is_monounary() { 2 } else { 3 };
            let cent: Vec<_> = (0..=largest).map(|m| centralizer_fragment(&alg, m, &b()).unwrap()).collect();
            for mask in 0u32..(1 << len) {
                if mask.count_ones() as usize > largest {
                    continue;
                }
                let s = Relation::from_points(2, alg.size(), PointSet::from_points(len, (0..len).filter(|&p| mask >> p & 1 == 1)));
                assert_eq!(
                    closer.close_relation(&s).unwrap(),
                    closure_by_enumeration(&alg, &cent, &s),
                    "{} {s}",
                    alg.name()
                );
            }
        }
    }

    #[test]
    fn extension_to_generated_subalgebra() {
        let m = builtin::chain_semilattice(2);
        let h = PartialOperation::new(2, 2, [(vec![0, 1], 0), (vec![1, 0], 1)]).unwrap();
        let ext = extend_to_generated(&m, &h, &b()).unwrap();
        assert_eq!(ext.get(&[0, 0]), Some(0));
        assert!(ext.extends(&h) && is_homomorphism(&m, &ext));
        let h = PartialOperation::new(2, 2, [(vec![0, 1], 1), (vec![1, 0], 1)]).unwrap();
        let ext = extend_to_generated(&m, &h, &b()).unwrap();
        assert_eq!(ext.len(), 3);
        assert_eq!(ext.get(&[0, 0]), Some(1));
        let total = PartialOperation::total(1, 2, &[0, 1]);
        assert_eq!(extend_to_generated(&m, &total, &b()).unwrap(), total);
    }

    #[test]
    fn ill_defined_extension_reports_terms() {
        // sends 1 to 0 and 0 to 1: meet(x1,x2) hits (0) but the values disagree
        let m = builtin::chain_semilattice(2);
        let h = PartialOperation::new(1, 2, [(vec![0], 1), (vec![1], 0)]).unwrap();
        match extend_to_generated(&m, &h, &b()) {
            Err(Error::WellDefinednessFailure(w)) => {
                assert_eq!(w.point, vec![0]);
                let sol = w.violated.unwrap();
                assert_eq!(sol.arity(), 2);
                // the two terms agree on the generators (0,1) as a 2-tuple
                assert!(sol.contains(&[0, 1]) || sol.contains(&[1, 0]));
            }
            other => panic!("expected a well-definedness failure, got {other:?}"),
        }
    }
}
