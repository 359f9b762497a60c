//! Generators for the standard example algebras and the builtin spec
//! language (`chain-semilattice:3`, `product:cyclic:2,cyclic:4`, …).

use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};

/// `({0,…,n-1}, min)`.
pub fn chain_semilattice(n: usize) -> FiniteAlgebra {
    let meet = OperationTable::from_fn("meet", n, 2, |a| a[0].min(a[1]));
    FiniteAlgebra::new(format!("chain-semilattice:{n}"), n, vec![meet]).expect("valid table")
}

/// `({0,…,n-1}, min, max)`.
pub fn chain_lattice(n: usize) -> FiniteAlgebra {
    let meet = OperationTable::from_fn("meet", n, 2, |a| a[0].min(a[1]));
    let join = OperationTable::from_fn("join", n, 2, |a| a[0].max(a[1]));
    FiniteAlgebra::new(format!("chain-lattice:{n}"), n, vec![meet, join]).expect("valid table")
}

/// Subsets of a `k`-set as bitmasks with intersection and union.
pub fn boolean_lattice(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let meet = OperationTable::from_fn("meet", n, 2, |a| a[0] & a[1]);
    let join = OperationTable::from_fn("join", n, 2, |a| a[0] | a[1]);
    FiniteAlgebra::new(format!("boolean-lattice:{k}"), n, vec![meet, join]).expect("valid table")
}

/// `Z_n` with `add`, `neg` and `zero`.
pub fn cyclic(n: usize) -> FiniteAlgebra {
    let add = OperationTable::from_fn("add", n, 2, |a| (a[0] + a[1]) % n);
    let neg = OperationTable::from_fn("neg", n, 1, |a| (n - a[0]) % n);
    let zero = OperationTable::new("zero", 0, vec![0]);
    FiniteAlgebra::new(format!("cyclic:{n}"), n, vec![add, neg, zero]).expect("valid table")
}

/// The unary algebra `f(i) = image[i]`.
pub fn monounary(image: &[usize]) -> Result<FiniteAlgebra> {
    let name = format!(
        "monounary:{}",
        image.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    FiniteAlgebra::new(name, image.len(), vec![OperationTable::new("f", 1, image.to_vec())])
}

/// The meet semilattice `{0, a, b}` with `a ∧ b = 0`; `a = 1`, `b = 2`.
pub fn fork_semilattice() -> FiniteAlgebra {
    let meet = OperationTable::from_fn("meet", 3, 2, |a| if a[0] == a[1] { a[0] } else { 0 });
    FiniteAlgebra::new("fork-semilattice", 3, vec![meet]).expect("valid table")
}

/// Direct product with matching signatures; `(a, b)` is encoded as
/// `a·|B| + b`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if a.ops().len() != b.ops().len() {
        return Err(Error::InvalidArgument(format!(
            "signatures of `{}` and `{}` differ",
            a.name(),
            b.name()
        )));
    }
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let mut ops = Vec::new();
    for (oa, ob) in a.ops().iter().zip(b.ops()) {
        if oa.name() != ob.name() || oa.arity() != ob.arity() {
            return Err(Error::InvalidArgument(format!(
                "signatures of `{}` and `{}` differ",
                a.name(),
                b.name()
            )));
        }
        let r = oa.arity();
        ops.push(OperationTable::from_fn(oa.name(), n, r, |args| {
            let xs: Vec<usize> = args.iter().map(|&x| x / nb).collect();
            let ys: Vec<usize> = args.iter().map(|&x| x % nb).collect();
            let ia = xs.iter().fold(0, |acc, &x| acc * na + x);
            let ib = ys.iter().fold(0, |acc, &y| acc * nb + y);
            oa.at(ia) * nb + ob.at(ib)
        }));
    }
    FiniteAlgebra::new(format!("product:{},{}", a.name(), b.name()), n, ops)
}

/// Parses a builtin spec such as `cyclic:4` or `product:cyclic:2,cyclic:4`.
pub fn parse_builtin(spec: &str) -> Result<FiniteAlgebra> {
    let mut p = SpecParser { text: spec, pos: 0 };
    let alg = p.algebra()?;
    if p.pos != spec.len() {
        return Err(p.error("trailing input"));
    }
    Ok(alg)
}

const LIMIT: usize = 64;

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            line: 1,
            column: self.pos + 1,
            message: format!("{message} in builtin `{}`", self.text),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        self.pos += len;
        self.text[start..start + len]
            .parse()
            .map_err(|_| {
                self.pos = start;
                self.error("expected a number")
            })
    }

    fn param(&mut self, name: &str) -> Result<usize> {
        if !self.eat(':') {
            return Err(self.error(&format!("`{name}` needs a parameter")));
        }
        let n = self.number()?;
        if n == 0 || n > LIMIT {
            return Err(Error::InvalidArgument(format!(
                "parameter of `{name}` must lie in 1..={LIMIT}"
            )));
        }
        Ok(n)
    }

    fn algebra(&mut self) -> Result<FiniteAlgebra> {
        let start = self.pos;
        let name = self.word().to_string();
        match name.as_str() {
            "chain-semilattice" => Ok(chain_semilattice(self.param(&name)?)),
            "chain-lattice" => Ok(chain_lattice(self.param(&name)?)),
            "cyclic" => Ok(cyclic(self.param(&name)?)),
            "boolean-lattice" => {
                let k = self.param(&name)?;
                if k > 6 {
                    return Err(Error::InvalidArgument("boolean-lattice:k needs k ≤ 6".into()));
                }
                Ok(boolean_lattice(k))
            }
            "fork-semilattice" => Ok(fork_semilattice()),
            "monounary" => {
                if !self.eat(':') {
                    return Err(self.error("`monounary` needs an image list"));
                }
                let mut image = vec![self.number()?];
                while self.rest().starts_with(',')
                    && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit())
                {
                    self.pos += 1;
                    image.push(self.number()?);
                }
                if image.len() > LIMIT {
                    return Err(Error::InvalidArgument("monounary image list too long".into()));
                }
                monounary(&image)
            }
            "product" => {
                if !self.eat(':') {
                    return Err(self.error("`product` needs two factors"));
                }
                let a = self.algebra()?;
                if !self.eat(',') {
                    return Err(self.error("expected `,` between product factors"));
                }
                let b = self.algebra()?;
                product(&a, &b)
            }
            _ => {
                self.pos = start;
                Err(self.error(&format!("unknown builtin `{name}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        assert_eq!(parse_builtin("cyclic:4").unwrap(), cyclic(4));
        let f = parse_builtin("monounary:1,0,0").unwrap();
        assert_eq!(f.evaluate("f", &[0]).unwrap(), 1);
        assert_eq!(f.evaluate("f", &[2]).unwrap(), 0);
        assert_eq!(parse_builtin("boolean-lattice:2").unwrap().size(), 4);
        assert_eq!(parse_builtin("fork-semilattice").unwrap().size(), 3);
    }

    #[test]
    fn nested_products() {
        let p = parse_builtin("product:cyclic:2,cyclic:4").unwrap();
        assert_eq!(p.size(), 8);
        // (1,3) + (1,2) = (0,1)
        assert_eq!(p.evaluate("add", &[7, 6]).unwrap(), 1);
        let q = parse_builtin("product:product:cyclic:2,cyclic:2,cyclic:2").unwrap();
        assert_eq!(q.size(), 8);
        let m = parse_builtin("product:monounary:1,0,monounary:0,0").unwrap();
        assert_eq!(m.size(), 4);
    }

    #[test]
    fn bad_builtins() {
        assert!(matches!(parse_builtin("cyclc:4"), Err(Error::Syntax { .. })));
        assert!(parse_builtin("cyclic").is_err());
        assert!(parse_builtin("cyclic:0").is_err());
        assert!(parse_builtin("monounary:3").is_err());
        assert!(parse_builtin("product:cyclic:2,chain-lattice:2").is_err());
    }

    #[test]
    fn fork_is_meet_of_a_and_b() {
        let f = fork_semilattice();
        assert_eq!(f.evaluate("meet", &[1, 2]).unwrap(), 0);
        assert_eq!(f.evaluate("meet", &[2, 2]).unwrap(), 2);
    }
}
