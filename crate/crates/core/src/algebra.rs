//! Finite algebras given by total operation tables.
//!
//! The universe of an algebra of size `n` is `{0, …, n-1}`. An operation of
//! arity `k` stores its `n^k` values indexed lexicographically by the
//! argument tuple, the first argument being the most significant digit.

use std::collections::HashSet;

use crate::error::{bound_exceeded, Error, Result};
use crate::power::Power;

pub type Element = usize;
pub type Tuple = Vec<Element>;

/// Explicit limits on the size of the objects a computation may build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceBounds {
    /// Maximal number of points of a direct power `A^k` that may be
    /// materialized or searched.
    pub max_cells: usize,
    /// Maximal number of search nodes (value assignments tried) per search.
    pub max_nodes: u64,
}

impl Default for ResourceBounds {
    fn default() -> Self {
        ResourceBounds {
            max_cells: 1 << 16,
            max_nodes: 10_000_000,
        }
    }
}

impl ResourceBounds {
    /// `size^k`, or an error when it exceeds `max_cells`.
    pub fn power_len(&self, size: usize, k: usize) -> Result<usize> {
        let mut len: usize = 1;
        for _ in 0..k {
            len = len
                .checked_mul(size)
                .filter(|&l| l <= self.max_cells)
                .ok_or_else(|| {
                    bound_exceeded(format!(
                        "{size}^{k} points exceed the cell bound {}",
                        self.max_cells
                    ))
                })?;
        }
        if len > self.max_cells {
            return Err(bound_exceeded(format!(
                "{size}^{k} points exceed the cell bound {}",
                self.max_cells
            )));
        }
        Ok(len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    name: String,
    arity: usize,
    values: Vec<Element>,
}

impl OperationTable {
    pub fn new(name: impl Into<String>, arity: usize, values: Vec<Element>) -> Self {
        OperationTable {
            name: name.into(),
            arity,
            values,
        }
    }

    /// Builds the table of `f` on a universe of the given size.
    pub fn from_fn(
        name: impl Into<String>,
        size: usize,
        arity: usize,
        f: impl Fn(&[Element]) -> Element,
    ) -> Self {
        let len = size.pow(arity as u32);
        let values = (0..len)
            .map(|i| f(&tuple_from_index(size, arity, i)))
            .collect();
        OperationTable::new(name, arity, values)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    #[inline]
    pub fn at(&self, index: usize) -> Element {
        self.values[index]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    ops: Vec<OperationTable>,
}

impl FiniteAlgebra {
    /// Validates table lengths, value ranges and operation-name uniqueness.
    pub fn new(name: impl Into<String>, size: usize, ops: Vec<OperationTable>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Validation("universe must be nonempty".into()));
        }
        let mut seen = HashSet::new();
        for op in &ops {
            if !seen.insert(op.name.as_str()) {
                return Err(Error::Validation(format!(
                    "duplicate operation name `{}`",
                    op.name
                )));
            }
            let expected = size
                .checked_pow(op.arity as u32)
                .ok_or_else(|| Error::Validation(format!("table of `{}` too large", op.name)))?;
            if op.values.len() != expected {
                return Err(Error::Validation(format!(
                    "operation `{}` of arity {} needs {} values, got {}",
                    op.name,
                    op.arity,
                    expected,
                    op.values.len()
                )));
            }
            if let Some(&v) = op.values.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { value: v, size });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            ops,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ops(&self) -> &[OperationTable] {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&OperationTable> {
        self.ops.iter().find(|o| o.name == name)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Applies the operation with index `op` to raw elements.
    #[inline]
    pub(crate) fn apply(&self, op: usize, args: &[Element]) -> Element {
        let table = &self.ops[op];
        let mut idx = 0;
        for &a in args {
            idx = idx * self.size + a;
        }
        table.values[idx]
    }

    pub fn evaluate(&self, op_name: &str, args: &[Element]) -> Result<Element> {
        let (i, op) = self
            .ops
            .iter()
            .enumerate()
            .find(|(_, o)| o.name == op_name)
            .ok_or_else(|| Error::UnknownOperation(op_name.to_string()))?;
        if args.len() != op.arity {
            return Err(Error::ArityMismatch {
                op: op_name.to_string(),
                expected: op.arity,
                got: args.len(),
            });
        }
        if let Some(&v) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::OutOfRange {
                value: v,
                size: self.size,
            });
        }
        Ok(self.apply(i, args))
    }

    /// True if every operation has arity at most one and there is exactly one
    /// unary operation.
    pub fn is_monounary(&self) -> bool {
        self.ops.len() == 1 && self.ops[0].arity == 1
    }

    /// Elements `c` with `{c}` a subuniverse.
    pub fn idempotent_elements(&self) -> Vec<Element> {
        (0..self.size)
            .filter(|&c| {
                self.ops.iter().enumerate().all(|(i, op)| {
                    let args = vec![c; op.arity];
                    self.apply(i, &args) == c
                })
            })
            .collect()
    }

    /// The `k`-th direct power with componentwise operations. Points of the
    /// power are `k`-tuples indexed lexicographically.
    pub fn power(&self, k: usize, bounds: &ResourceBounds) -> Result<FiniteAlgebra> {
        if k == 0 {
            return Err(Error::InvalidArgument("power exponent must be positive".into()));
        }
        let view = Power::new(self, k, bounds)?;
        let len = view.len();
        let mut ops = Vec::with_capacity(self.ops.len());
        for (oi, op) in self.ops.iter().enumerate() {
            let cells = len
                .checked_pow(op.arity as u32)
                .filter(|&c| c <= MAX_TABLE_CELLS)
                .ok_or_else(|| {
                    bound_exceeded(format!(
                        "table of `{}` on A^{k} is too large",
                        op.name
                    ))
                })?;
            let values = (0..cells)
                .map(|idx| view.apply(oi, &tuple_from_index(len, op.arity, idx)))
                .collect();
            ops.push(OperationTable::new(op.name.clone(), op.arity, values));
        }
        FiniteAlgebra::new(format!("{}^{}", self.name, k), len, ops)
    }
}

/// Largest operation table `power` is willing to materialize.
const MAX_TABLE_CELLS: usize = 1 << 24;

/// Lexicographic index of a tuple over `0..size`.
pub fn tuple_index(size: usize, tuple: &[Element]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * size + a)
}

pub fn tuple_from_index(size: usize, arity: usize, mut index: usize) -> Tuple {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn evaluate_tables() {
        let m = builtin::chain_semilattice(2);
        assert_eq!(m.evaluate("meet", &[1, 1]).unwrap(), 1);
        assert_eq!(m.evaluate("meet", &[1, 0]).unwrap(), 0);
        let f = builtin::monounary(&[1, 0, 0]).unwrap();
        assert_eq!(f.evaluate("f", &[2]).unwrap(), 0);
    }

    #[test]
    fn evaluate_errors() {
        let m = builtin::chain_semilattice(2);
        assert!(matches!(m.evaluate("join", &[0, 0]), Err(Error::UnknownOperation(_))));
        assert!(matches!(m.evaluate("meet", &[0]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(m.evaluate("meet", &[0, 2]), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let short = OperationTable::new("f", 2, vec![0, 1, 1]);
        assert!(matches!(FiniteAlgebra::new("a", 2, vec![short]), Err(Error::Validation(_))));
        let wild = OperationTable::new("f", 1, vec![0, 5]);
        assert!(matches!(FiniteAlgebra::new("a", 2, vec![wild]), Err(Error::OutOfRange { .. })));
        let f = OperationTable::new("f", 1, vec![0, 1]);
        assert!(matches!(
            FiniteAlgebra::new("a", 2, vec![f.clone(), f]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn power_is_componentwise() {
        let m = builtin::chain_semilattice(2);
        let sq = m.power(2, &ResourceBounds::default()).unwrap();
        assert_eq!(sq.size(), 4);
        let a = tuple_index(2, &[0, 1]);
        let b = tuple_index(2, &[1, 0]);
        assert_eq!(sq.evaluate("meet", &[a, b]).unwrap(), tuple_index(2, &[0, 0]));
        let one = m.power(1, &ResourceBounds::default()).unwrap();
        assert_eq!(one.ops(), m.ops());
    }

    #[test]
    fn power_of_transposition_has_two_two_cycles() {
        let t = builtin::monounary(&[1, 0]).unwrap();
        let sq = t.power(2, &ResourceBounds::default()).unwrap();
        let f = sq.op("f").unwrap();
        let mut seen = [false; 4];
        let mut cycles = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = f.at(x);
                len += 1;
            }
            assert_eq!(x, start);
            cycles.push(len);
        }
        assert_eq!(cycles, vec![2, 2]);
    }

    #[test]
    fn power_respects_cell_bound() {
        let m = builtin::chain_semilattice(6);
        let tight = ResourceBounds {
            max_cells: 100,
            ..Default::default()
        };
        assert!(matches!(m.power(3, &tight), Err(Error::ResourceBoundExceeded(_))));
    }
}
