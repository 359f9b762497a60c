//! Partial operations and backtracking search for homomorphisms from
//! subuniverses of a direct power into the base algebra.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::algebra::{tuple_from_index, tuple_index, Element, FiniteAlgebra, ResourceBounds, Tuple};
use crate::error::{bound_exceeded, Error, Result};
use crate::pointset::PointSet;
use crate::power::{NewTuples, Power, SubuniverseSet};
use crate::relation::Relation;

/// A map from a set of `arity`-tuples over `0..size` into `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialOperation {
    arity: usize,
    size: usize,
    values: BTreeMap<usize, Element>,
}

impl PartialOperation {
    pub fn new(
        arity: usize,
        size: usize,
        pairs: impl IntoIterator<Item = (Tuple, Element)>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (t, v) in pairs {
            if t.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "argument {t:?} does not have length {arity}"
                )));
            }
            if let Some(&bad) = t.iter().chain(std::iter::once(&v)).find(|&&a| a >= size) {
                return Err(Error::OutOfRange { value: bad, size });
            }
            if let Some(old) = values.insert(tuple_index(size, &t), v) {
                if old != v {
                    return Err(Error::InvalidArgument(format!(
                        "argument {t:?} is given two values"
                    )));
                }
            }
        }
        Ok(PartialOperation {
            arity,
            size,
            values,
        })
    }

    pub(crate) fn from_points(
        arity: usize,
        size: usize,
        values: impl IntoIterator<Item = (usize, Element)>,
    ) -> Self {
        PartialOperation {
            arity,
            size,
            values: values.into_iter().collect(),
        }
    }

    /// The total operation whose lexicographic table is `table`.
    pub fn total(arity: usize, size: usize, table: &[Element]) -> Self {
        PartialOperation::from_points(arity, size, table.iter().copied().enumerate())
    }

    pub fn empty(arity: usize, size: usize) -> Self {
        PartialOperation::from_points(arity, size, std::iter::empty())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.values.len() == self.size.pow(self.arity as u32)
    }

    pub fn get(&self, tuple: &[Element]) -> Option<Element> {
        if tuple.len() != self.arity || tuple.iter().any(|&a| a >= self.size) {
            return None;
        }
        self.values.get(&tuple_index(self.size, tuple)).copied()
    }

    pub(crate) fn get_point(&self, p: usize) -> Option<Element> {
        self.values.get(&p).copied()
    }

    pub(crate) fn point_values(&self) -> impl Iterator<Item = (usize, Element)> + '_ {
        self.values.iter().map(|(&p, &v)| (p, v))
    }

    pub fn domain(&self) -> PointSet {
        PointSet::from_points(self.size.pow(self.arity as u32), self.values.keys().copied())
    }

    pub fn domain_relation(&self) -> Relation {
        Relation::from_points(self.arity, self.size, self.domain())
    }

    /// `(argument, value)` pairs in lexicographic argument order.
    pub fn pairs(&self) -> Vec<(Tuple, Element)> {
        self.values
            .iter()
            .map(|(&p, &v)| (tuple_from_index(self.size, self.arity, p), v))
            .collect()
    }

    /// Values listed in lexicographic order of the arguments.
    pub fn value_vector(&self) -> Vec<Element> {
        self.values.values().copied().collect()
    }

    pub fn restrict(&self, domain: &PointSet) -> PartialOperation {
        PartialOperation::from_points(
            self.arity,
            self.size,
            self.point_values().filter(|&(p, _)| domain.contains(p)),
        )
    }

    pub fn extends(&self, other: &PartialOperation) -> bool {
        other
            .values
            .iter()
            .all(|(p, v)| self.values.get(p) == Some(v))
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self
            .pairs()
            .iter()
            .map(|(t, v)| {
                format!(
                    "{}↦{}",
                    Relation::render_tuple(self.size, t),
                    Relation::render_tuple(self.size, &[*v])
                )
            })
            .collect();
        format!("{{{}}}", items.join(","))
    }
}

impl std::fmt::Debug for PartialOperation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PartialOperation/{}{}", self.arity, self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct PartialOperationRepr {
    arity: usize,
    size: usize,
    map: Vec<(Tuple, Element)>,
}

impl Serialize for PartialOperation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartialOperationRepr {
            arity: self.arity,
            size: self.size,
            map: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialOperation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PartialOperationRepr::deserialize(d)?;
        PartialOperation::new(r.arity, r.size, r.map).map_err(serde::de::Error::custom)
    }
}

/// Whether `h` commutes with every basic operation wherever both sides are
/// defined inside `dom h`.
pub fn is_homomorphism(alg: &FiniteAlgebra, h: &PartialOperation) -> bool {
    if h.universe_size() != alg.size() {
        return false;
    }
    let Ok(power) = Power::new(alg, h.arity(), &ResourceBounds {
        max_cells: usize::MAX,
        ..Default::default()
    }) else {
        return false;
    };
    let dom: Vec<(usize, Element)> = h.point_values().collect();
    for (oi, op) in alg.ops().iter().enumerate() {
        let r = op.arity();
        if r == 0 {
            let c = power.apply(oi, &[]);
            if let Some(v) = h.get_point(c) {
                if v != alg.apply(oi, &[]) {
                    return false;
                }
            }
            continue;
        }
        if dom.is_empty() {
            continue;
        }
        let mut pts = vec![0usize; r];
        let mut vals = vec![0usize; r];
        for code in 0..dom.len().pow(r as u32) {
            let mut rest = code;
            for q in (0..r).rev() {
                (pts[q], vals[q]) = dom[rest % dom.len()];
                rest /= dom.len();
            }
            if let Some(v) = h.get_point(power.apply(oi, &pts)) {
                if v != alg.apply(oi, &vals) {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) const UNSET: Element = Element::MAX;

/// Assignment state for a homomorphism search on a subuniverse `target` of
/// a power. Every assignment is propagated through the operations; values
/// forced this way are recorded on a trail so the search can roll back.
pub(crate) struct HomSearch<'p, 'a> {
    power: &'p Power<'a>,
    target: Vec<usize>,
    value: Vec<Element>,
    order: Vec<usize>,
    head: usize,
    nodes: u64,
    max_nodes: u64,
    buf: Vec<usize>,
    pts: Vec<usize>,
    vals: Vec<Element>,
}

impl<'p, 'a> HomSearch<'p, 'a> {
    pub(crate) fn new(power: &'p Power<'a>, target: &PointSet, bounds: &ResourceBounds) -> Self {
        HomSearch {
            power,
            target: target.to_vec(),
            value: vec![UNSET; power.len()],
            order: Vec::new(),
            head: 0,
            nodes: 0,
            max_nodes: bounds.max_nodes,
            buf: Vec::new(),
            pts: Vec::new(),
            vals: Vec::new(),
        }
    }

    fn assign(&mut self, p: usize, v: Element) -> bool {
        match self.value[p] {
            UNSET => {
                self.value[p] = v;
                self.order.push(p);
                true
            }
            old => old == v,
        }
    }

    fn rollback(&mut self, len: usize) {
        for &p in &self.order[len..] {
            self.value[p] = UNSET;
        }
        self.order.truncate(len);
        self.head = len;
    }

    fn propagate(&mut self) -> bool {
        let alg = self.power.alg();
        while self.head < self.order.len() {
            for (oi, op) in alg.ops().iter().enumerate() {
                let r = op.arity();
                if r == 0 {
                    continue;
                }
                self.buf.resize(r, 0);
                self.pts.resize(r, 0);
                self.vals.resize(r, 0);
                let mut tuples = NewTuples::new(self.head, r);
                while tuples.next_into(&mut self.buf) {
                    for q in 0..r {
                        let p = self.order[self.buf[q]];
                        self.pts[q] = p;
                        self.vals[q] = self.value[p];
                    }
                    let z = self.power.apply(oi, &self.pts);
                    let v = alg.apply(oi, &self.vals);
                    if !self.assign(z, v) {
                        return false;
                    }
                }
            }
            self.head += 1;
        }
        true
    }

    /// Pins the images of the constants and the given point values, then
    /// propagates. Returns `false` on a conflict.
    pub(crate) fn seed(&mut self, fixed: impl IntoIterator<Item = (usize, Element)>) -> bool {
        let alg = self.power.alg();
        for (oi, op) in alg.ops().iter().enumerate() {
            if op.arity() == 0 && !self.assign(self.power.apply(oi, &[]), alg.apply(oi, &[])) {
                return false;
            }
        }
        for (p, v) in fixed {
            if !self.assign(p, v) {
                return false;
            }
        }
        self.propagate()
    }

    /// Depth-first completion over the unassigned target points in
    /// lexicographic order, values ascending. Solutions arrive in
    /// lexicographic order of their value vectors. Returns whether the
    /// visitor asked to stop.
    pub(crate) fn solve(
        &mut self,
        visit: &mut dyn FnMut(&[Element]) -> ControlFlow<()>,
    ) -> Result<bool> {
        self.solve_from(0, visit)
    }

    fn solve_from(
        &mut self,
        mut cursor: usize,
        visit: &mut dyn FnMut(&[Element]) -> ControlFlow<()>,
    ) -> Result<bool> {
        while cursor < self.target.len() && self.value[self.target[cursor]] != UNSET {
            cursor += 1;
        }
        if cursor == self.target.len() {
            return Ok(visit(&self.value).is_break());
        }
        let p = self.target[cursor];
        let len = self.order.len();
        for v in 0..self.power.alg().size() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(bound_exceeded(format!(
                    "homomorphism search exceeded {} nodes",
                    self.max_nodes
                )));
            }
            self.assign(p, v);
            let stop = self.propagate() && self.solve_from(cursor + 1, visit)?;
            self.rollback(len);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn collect_on(values: &[Element], target: &PointSet, arity: usize, size: usize) -> PartialOperation {
    PartialOperation::from_points(arity, size, target.iter().map(|p| (p, values[p])))
}

/// All homomorphisms from the subuniverse `dom` of `A^k` into `A`, in
/// lexicographic order of their value vectors.
pub fn enumerate_homomorphisms(
    alg: &FiniteAlgebra,
    dom: &SubuniverseSet,
    bounds: &ResourceBounds,
) -> Result<Vec<PartialOperation>> {
    let power = Power::new(alg, dom.power_exponent(), bounds)?;
    let mut out = Vec::new();
    for_each_homomorphism(&power, dom.points(), bounds, &mut |h| {
        out.push(h);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Streams the homomorphisms on `target` in lexicographic order.
pub(crate) fn for_each_homomorphism(
    power: &Power<'_>,
    target: &PointSet,
    bounds: &ResourceBounds,
    visit: &mut dyn FnMut(PartialOperation) -> ControlFlow<()>,
) -> Result<bool> {
    let mut search = HomSearch::new(power, target, bounds);
    if !search.seed(std::iter::empty()) {
        return Ok(false);
    }
    let (k, n) = (power.exponent(), power.alg().size());
    search.solve(&mut |values| visit(collect_on(values, target, k, n)))
}

/// All total homomorphisms `A^k → A` as value tables.
pub(crate) fn total_homomorphism_tables(
    power: &Power<'_>,
    bounds: &ResourceBounds,
) -> Result<Vec<Vec<Element>>> {
    let full = PointSet::full(power.len());
    let mut search = HomSearch::new(power, &full, bounds);
    let mut out = Vec::new();
    if search.seed(std::iter::empty()) {
        search.solve(&mut |values| {
            out.push(values.to_vec());
            ControlFlow::Continue(())
        })?;
    }
    Ok(out)
}

/// Extends the homomorphism `h` (defined on a subuniverse of `A^k`) to a
/// homomorphism on `target`; the first extension in lexicographic order.
pub fn extend_homomorphism(
    alg: &FiniteAlgebra,
    h: &PartialOperation,
    target: &SubuniverseSet,
    bounds: &ResourceBounds,
) -> Result<Option<PartialOperation>> {
    let k = target.power_exponent();
    if h.arity() != k || h.universe_size() != alg.size() {
        return Err(Error::NotAHomomorphism(
            "map and target live in different powers".into(),
        ));
    }
    let power = Power::new(alg, k, bounds)?;
    let dom = h.domain();
    if !dom.is_subset(target.points()) {
        return Err(Error::NotAHomomorphism(
            "domain is not contained in the target".into(),
        ));
    }
    if !power.is_subuniverse(&dom) || !power.is_subuniverse(target.points()) {
        return Err(Error::NotAHomomorphism(
            "domain and target must be subuniverses".into(),
        ));
    }
    if !is_homomorphism(alg, h) {
        return Err(Error::NotAHomomorphism(format!(
            "{} does not commute with the operations",
            h.render()
        )));
    }
    extend_partial(&power, h, target.points(), bounds)
}

/// Completes a partial map with arbitrary domain inside the subuniverse
/// `target`, or `None` when no homomorphism on `target` extends it.
pub(crate) fn extend_partial(
    power: &Power<'_>,
    h: &PartialOperation,
    target: &PointSet,
    bounds: &ResourceBounds,
) -> Result<Option<PartialOperation>> {
    let mut search = HomSearch::new(power, target, bounds);
    if !search.seed(h.point_values()) {
        return Ok(None);
    }
    let mut found = None;
    let (k, n) = (power.exponent(), power.alg().size());
    search.solve(&mut |values| {
        found = Some(collect_on(values, target, k, n));
        ControlFlow::Break(())
    })?;
    Ok(found)
}
