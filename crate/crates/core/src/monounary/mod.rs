//! Unary algebras `⟨A; f⟩`: structural profile, an exact extension test for
//! partial maps on powers, and quantifier elimination.

mod extension;
pub mod formula;
pub mod qe;
pub mod random;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::{Error, Result};

pub use extension::extends_to_power;
pub use formula::{Atom, MonoFormula, Side, Var};
pub use qe::{eliminate_quantifier, eliminate_quantifiers, eliminate_traced, normalize, psi_k, rewrite_step, weight};

/// Heights, cycles and sources of a unary map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonounaryProfile {
    #[serde(skip)]
    f: Vec<Element>,
    pub heights: Vec<usize>,
    pub cyclic_set: Vec<Element>,
    pub sources: Vec<Element>,
    pub ell: usize,
    pub common_source_height: Option<usize>,
    /// `pd(a) = sup {d : a ∈ f^d(A)}`; `None` stands for infinity.
    #[serde(skip)]
    preimage_depth: Vec<Option<usize>>,
    #[serde(skip)]
    cycle_len: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl MonounaryProfile {
    pub fn new(f: &[Element]) -> Result<Self> {
        let n = f.len();
        if n == 0 || f.iter().any(|&v| v >= n) {
            return Err(Error::Validation("not a unary map on 0..n".into()));
        }
        // a is cyclic iff f^n(a) returns to a after at most n steps
        let mut cyclic = vec![false; n];
        let mut cycle_len = vec![0; n];
        for a in 0..n {
            let mut x = f[a];
            for steps in 1..=n {
                if x == a {
                    cyclic[a] = true;
                    cycle_len[a] = steps;
                    break;
                }
                x = f[x];
            }
        }
        let mut heights = vec![0; n];
        for a in 0..n {
            let mut x = a;
            while !cyclic[x] {
                x = f[x];
                heights[a] += 1;
            }
            cycle_len[a] = cycle_len[x];
        }
        let ell = (0..n)
            .filter(|&a| cyclic[a])
            .fold(1, |acc, a| acc / gcd(acc, cycle_len[a]) * cycle_len[a]);
        let mut has_pre = vec![false; n];
        for &v in f {
            has_pre[v] = true;
        }
        let sources: Vec<Element> = (0..n).filter(|&a| !has_pre[a]).collect();
        let common_source_height = match sources.split_first() {
            Some((&s, rest)) if rest.iter().all(|&t| heights[t] == heights[s]) => Some(heights[s]),
            _ => None,
        };
        let mut preimage_depth = vec![None; n];
        let mut layer: Vec<bool> = vec![true; n];
        for d in 0..=n {
            for a in 0..n {
                if !cyclic[a] && layer[a] {
                    preimage_depth[a] = Some(d);
                }
            }
            let mut next = vec![false; n];
            for a in 0..n {
                if layer[a] {
                    next[f[a]] = true;
                }
            }
            layer = next;
        }
        Ok(MonounaryProfile {
            f: f.to_vec(),
            heights,
            cyclic_set: (0..n).filter(|&a| cyclic[a]).collect(),
            sources,
            ell,
            common_source_height,
            preimage_depth,
            cycle_len,
        })
    }

    pub fn of(alg: &FiniteAlgebra) -> Result<Self> {
        if !alg.is_monounary() {
            return Err(Error::NotMonounary);
        }
        MonounaryProfile::new(alg.ops()[0].values())
    }

    pub fn size(&self) -> usize {
        self.f.len()
    }

    pub fn map(&self) -> &[Element] {
        &self.f
    }

    #[inline]
    pub fn apply(&self, a: Element) -> Element {
        self.f[a]
    }

    pub fn iterate(&self, mut a: Element, times: usize) -> Element {
        for _ in 0..times {
            a = self.f[a];
        }
        a
    }

    pub fn is_cyclic(&self, a: Element) -> bool {
        self.preimage_depth[a].is_none()
    }

    /// Length of the cycle `a` eventually enters.
    pub fn cycle_length(&self, a: Element) -> usize {
        self.cycle_len[a]
    }

    pub fn preimage_depth(&self, a: Element) -> Option<usize> {
        self.preimage_depth[a]
    }

    /// Condition (v): no sources, or all sources share one height.
    pub fn sources_share_height(&self) -> bool {
        self.sources.is_empty() || self.common_source_height.is_some()
    }

    pub fn is_bijective(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.f.iter().all(|&v| v == self.f[0])
    }

    pub fn has_fixed_point(&self) -> bool {
        (0..self.size()).any(|a| self.f[a] == a)
    }

    /// `f^k(A)`.
    pub fn image_of_iterate(&self, k: usize) -> Vec<Element> {
        let mut seen = vec![false; self.size()];
        for a in 0..self.size() {
            seen[self.iterate(a, k)] = true;
        }
        (0..self.size()).filter(|&a| seen[a]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_of_swap_with_tail() {
        let p = MonounaryProfile::new(&[1, 0, 0]).unwrap();
        assert_eq!(p.cyclic_set, vec![0, 1]);
        assert_eq!(p.ell, 2);
        assert_eq!(p.sources, vec![2]);
        assert_eq!(p.heights, vec![0, 0, 1]);
        assert_eq!(p.common_source_height, Some(1));
    }

    #[test]
    fn profile_with_unequal_sources() {
        let p = MonounaryProfile::new(&[0, 0, 1, 0]).unwrap();
        assert_eq!(p.cyclic_set, vec![0]);
        assert_eq!(p.ell, 1);
        assert_eq!(p.sources, vec![2, 3]);
        assert_eq!(p.heights, vec![0, 1, 2, 1]);
        assert_eq!(p.common_source_height, None);
        assert!(!p.sources_share_height());
        assert_eq!(p.preimage_depth(1), Some(1));
        assert_eq!(p.preimage_depth(2), Some(0));
        assert_eq!(p.preimage_depth(0), None);
    }

    #[test]
    fn profile_of_identity() {
        let p = MonounaryProfile::new(&[0, 1]).unwrap();
        assert!(p.sources.is_empty());
        assert_eq!(p.ell, 1);
        assert!(p.sources_share_height());
    }

    #[test]
    fn ell_is_lcm_of_cycles() {
        let p = MonounaryProfile::new(&[1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.ell, 6);
        assert_eq!(p.cycle_length(3), 3);
        for &c in &p.cyclic_set {
            assert_eq!(p.iterate(c, p.ell), c);
        }
    }
}
