//! Primitive positive formulas over a single unary operation: conjunctions
//! of atoms `f^r(u) = f^s(v)` under a prefix of existential quantifiers.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::MonounaryProfile;
use crate::algebra::{tuple_from_index, Element};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::relation::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Var {
    /// `x_{i+1}`
    Free(usize),
    /// The `j`-th quantified variable, outermost first.
    Bound(usize),
}

/// `f^exp(var)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub exp: usize,
    pub var: Var,
}

impl Side {
    pub fn new(exp: usize, var: Var) -> Self {
        Side { exp, var }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub left: Side,
    pub right: Side,
}

impl Atom {
    pub fn new(left: Side, right: Side) -> Self {
        Atom { left, right }
    }

    pub fn is_trivial(&self) -> bool {
        self.left == self.right
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.left.var == v || self.right.var == v
    }

    pub fn swapped(&self) -> Atom {
        Atom::new(self.right, self.left)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoFormula {
    pub free_vars: usize,
    /// Names of the quantified variables, outermost first.
    pub bound: Vec<String>,
    pub atoms: Vec<Atom>,
    /// Set when the formula stands for the empty relation of arity
    /// `free_vars` (its single atom may mention `x1` even if `free_vars`
    /// is zero).
    #[serde(default)]
    pub denotes_empty: bool,
}

impl MonoFormula {
    pub fn new(free_vars: usize, bound: Vec<String>, atoms: Vec<Atom>) -> Self {
        MonoFormula {
            free_vars,
            bound,
            atoms,
            denotes_empty: false,
        }
    }

    pub fn has_bound_y(&self) -> bool {
        !self.bound.is_empty()
    }

    /// The innermost quantified variable.
    pub fn innermost(&self) -> Option<Var> {
        self.bound.len().checked_sub(1).map(Var::Bound)
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.bound.is_empty()
    }

    fn value(profile: &MonounaryProfile, side: &Side, free: &[Element], bound: &[Element]) -> Element {
        let base = match side.var {
            Var::Free(i) => free[i],
            Var::Bound(j) => bound[j],
        };
        profile.iterate(base, side.exp)
    }

    fn holds(&self, profile: &MonounaryProfile, free: &[Element], bound: &[Element]) -> bool {
        self.atoms.iter().all(|a| {
            MonoFormula::value(profile, &a.left, free, bound)
                == MonoFormula::value(profile, &a.right, free, bound)
        })
    }

    /// Truth value at the assignment `free` of `x1..xn`.
    pub fn eval(&self, profile: &MonounaryProfile, free: &[Element]) -> bool {
        if self.denotes_empty {
            return false;
        }
        let n = profile.size();
        let m = self.bound.len();
        let mut bound = vec![0; m];
        for code in 0..n.pow(m as u32) {
            let mut rest = code;
            for slot in bound.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            if self.holds(profile, free, &bound) {
                return true;
            }
        }
        false
    }

    /// The relation defined over `A`.
    pub fn relation(&self, profile: &MonounaryProfile) -> Relation {
        let n = profile.size();
        let len = n.pow(self.free_vars as u32);
        let pts = (0..len).filter(|&p| self.eval(profile, &tuple_from_index(n, self.free_vars, p)));
        Relation::from_points(self.free_vars, n, PointSet::from_points(len, pts))
    }

    fn var_name(&self, v: Var) -> String {
        match v {
            Var::Free(i) => format!("x{}", i + 1),
            Var::Bound(j) => self.bound[j].clone(),
        }
    }

    fn side_text(&self, s: &Side) -> String {
        let v = self.var_name(s.var);
        match s.exp {
            0 => v,
            1 => format!("f({v})"),
            e => format!("f^{e}({v})"),
        }
    }

    pub fn parse(text: &str) -> Result<MonoFormula> {
        Parser::new(text).formula()
    }
}

impl fmt::Display for MonoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bound {
            write!(f, "E{b}. ")?;
        }
        if self.atoms.is_empty() {
            return f.write_str("true");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{}={}", self.side_text(&a.left), self.side_text(&a.right))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    bound: Vec<String>,
    free_vars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            pos: 0,
            bound: Vec::new(),
            free_vars: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let n = rest[..len]
            .parse()
            .map_err(|_| self.error("expected an exponent"))?;
        self.pos += len;
        Ok(n)
    }

    fn formula(mut self) -> Result<MonoFormula> {
        // quantifier prefix: `Ey.` repeated
        loop {
            let save = self.pos;
            match self.ident() {
                Some(id) if id.len() > 1 && id.starts_with('E') && self.peek() == Some('.') => {
                    let name = &id[1..];
                    if is_free_name(name).is_some() || name == "f" {
                        self.pos = save;
                        return Err(self.error(format!("`{name}` cannot be quantified")));
                    }
                    if self.bound.iter().any(|b| b == name) {
                        self.pos = save;
                        return Err(self.error(format!("`{name}` is quantified twice")));
                    }
                    self.bound.push(name.to_string());
                    self.expect('.')?;
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        let mut atoms = Vec::new();
        let save = self.pos;
        if self.ident() == Some("true") && self.peek().is_none() {
            return Ok(MonoFormula::new(self.free_vars, self.bound, atoms));
        }
        self.pos = save;
        loop {
            let left = self.side()?;
            self.expect('=')?;
            let right = self.side()?;
            atoms.push(Atom::new(left, right));
            if !self.eat('&') {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(MonoFormula::new(self.free_vars, self.bound, atoms))
    }

    fn side(&mut self) -> Result<Side> {
        let save = self.pos;
        let Some(id) = self.ident() else {
            return Err(self.error("expected a term"));
        };
        if id == "f" {
            let exp = if self.eat('^') { self.number()? } else { 1 };
            self.expect('(')?;
            let inner = self.side()?;
            self.expect(')')?;
            return Ok(Side::new(exp + inner.exp, inner.var));
        }
        if let Some(i) = is_free_name(id) {
            if i == 0 {
                self.pos = save;
                return Err(self.error("free variables are numbered from x1"));
            }
            self.free_vars = self.free_vars.max(i);
            return Ok(Side::new(0, Var::Free(i - 1)));
        }
        match self.bound.iter().position(|b| b == id) {
            Some(j) => Ok(Side::new(0, Var::Bound(j))),
            None => {
                self.pos = save;
                Err(self.error(format!("unknown variable `{id}`")))
            }
        }
    }
}

fn is_free_name(id: &str) -> Option<usize> {
    id.strip_prefix('x').and_then(|d| {
        if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) {
            d.parse().ok()
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let phi = MonoFormula::parse("Ey. f^2(y)=x1 & f(y) = x2").unwrap();
        assert_eq!(phi.free_vars, 2);
        assert_eq!(phi.bound, vec!["y".to_string()]);
        assert_eq!(phi.atoms.len(), 2);
        assert_eq!(phi.atoms[0].left, Side::new(2, Var::Bound(0)));
        assert_eq!(phi.to_string(), "Ey. f^2(y)=x1 & f(y)=x2");
        assert_eq!(MonoFormula::parse(&phi.to_string()).unwrap(), phi);
    }

    #[test]
    fn nested_applications_and_zero_exponent() {
        let phi = MonoFormula::parse("f(f(x1)) = f^0(x2)").unwrap();
        assert_eq!(phi.atoms[0].left, Side::new(2, Var::Free(0)));
        assert_eq!(phi.atoms[0].right, Side::new(0, Var::Free(1)));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match MonoFormula::parse("Ey. f(z)=x1") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(MonoFormula::parse("Ex1. x1=x1").is_err());
        assert!(MonoFormula::parse("x0=x1").is_err());
        assert!(MonoFormula::parse("x1=x2 &").is_err());
        assert!(MonoFormula::parse("x1=x2 x3").is_err());
    }

    #[test]
    fn evaluates_image_of_f() {
        let profile = MonounaryProfile::new(&[1, 0, 0]).unwrap();
        let phi = MonoFormula::parse("Ey. f(y)=x1").unwrap();
        assert_eq!(phi.relation(&profile).render(), "{0,1}");
        let t = MonoFormula::parse("true").unwrap();
        assert_eq!(t.relation(&profile).len(), 1);
    }
}
