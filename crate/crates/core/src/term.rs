//! Terms over the signature of an algebra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    /// Variable `x_{i+1}`.
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn eval(&self, alg: &FiniteAlgebra, args: &[Element]) -> Result<Element> {
        match self {
            Term::Var(i) => args.get(*i).copied().ok_or_else(|| {
                Error::InvalidArgument(format!("variable x{} has no value", i + 1))
            }),
            Term::App(name, subterms) => {
                let vals = subterms
                    .iter()
                    .map(|t| t.eval(alg, args))
                    .collect::<Result<Vec<_>>>()?;
                alg.evaluate(name, &vals)
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, ts) => 1 + ts.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::App(name, ts) if ts.is_empty() => f.write_str(name),
            Term::App(name, ts) => {
                write!(f, "{name}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn display_and_eval() {
        let m = builtin::chain_semilattice(3);
        let t = Term::App("meet".into(), vec![Term::Var(0), Term::Var(2)]);
        assert_eq!(t.to_string(), "meet(x1,x3)");
        assert_eq!(t.eval(&m, &[2, 0, 1]).unwrap(), 1);
        assert_eq!(t.depth(), 1);
        let z = builtin::cyclic(3);
        assert_eq!(Term::App("zero".into(), vec![]).to_string(), "zero");
        assert_eq!(Term::App("zero".into(), vec![]).eval(&z, &[]).unwrap(), 0);
    }
}
