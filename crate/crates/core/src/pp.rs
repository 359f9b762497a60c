//! Primitive positive formulas over relation families, preservation, and
//! the quantifier-free pp closure (weak relational clone) of a family.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{tuple_from_index, tuple_index, FiniteAlgebra, ResourceBounds};
use crate::clone::{clone_fragment, solution_set};
use crate::error::{bound_exceeded, Error, Result};
pub use crate::monounary::formula::Var;
use crate::hom::PartialOperation;
use crate::pointset::PointSet;
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRelation {
    pub name: String,
    pub relation: Relation,
}

/// A named, finite set of relations on one universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFamily {
    name: String,
    size: usize,
    members: Vec<NamedRelation>,
}

impl RelationFamily {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        RelationFamily {
            name: name.into(),
            size,
            members: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn push(&mut self, name: impl Into<String>, relation: Relation) -> Result<()> {
        let name = name.into();
        if relation.universe_size() != self.size {
            return Err(Error::InvalidArgument(format!(
                "relation `{name}` lives on {} elements, family on {}",
                relation.universe_size(),
                self.size
            )));
        }
        if self.get(&name).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate relation name `{name}`")));
        }
        self.members.push(NamedRelation { name, relation });
        Ok(())
    }

    pub fn members(&self) -> &[NamedRelation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.members.iter().find(|m| m.name == name).map(|m| &m.relation)
    }

    pub fn of_arity(&self, arity: usize) -> impl Iterator<Item = &NamedRelation> {
        self.members.iter().filter(move |m| m.relation.arity() == arity)
    }

    /// Graphs `f•` of the term operations, one arity per item of `arities`
    /// (a graph of arity `r` comes from `C^(r-1)`).
    pub fn cbullet(
        alg: &FiniteAlgebra,
        arities: impl IntoIterator<Item = usize>,
        bounds: &ResourceBounds,
    ) -> Result<Self> {
        let mut fam = RelationFamily::new("C•", alg.size());
        let mut seen = HashSet::new();
        for r in arities {
            if r == 0 {
                continue;
            }
            bounds.power_len(alg.size(), r)?;
            for (i, f) in clone_fragment(alg, r - 1, bounds)?.members().iter().enumerate() {
                let g = f.graph();
                if seen.insert(g.clone()) {
                    let name = match f.witness_term() {
                        Some(t) => format!("graph{r}[{t}]"),
                        None => format!("graph{r}#{i}"),
                    };
                    fam.push(name, g)?;
                }
            }
        }
        Ok(fam)
    }

    /// Solution sets `Sol(f, g)` of pairs of term operations.
    pub fn ccirc(
        alg: &FiniteAlgebra,
        arities: impl IntoIterator<Item = usize>,
        bounds: &ResourceBounds,
    ) -> Result<Self> {
        let mut fam = RelationFamily::new("C∘", alg.size());
        let mut seen = HashSet::new();
        for r in arities {
            if r == 0 {
                continue;
            }
            let frag = clone_fragment(alg, r, bounds)?;
            let ms = frag.members();
            for i in 0..ms.len() {
                for j in i..ms.len() {
                    let s = solution_set(r, alg.size(), ms[i].table(), ms[j].table());
                    if seen.insert(s.clone()) {
                        let name = match (ms[i].witness_term(), ms[j].witness_term()) {
                            (Some(a), Some(b)) => format!("sol{r}[{a},{b}]"),
                            _ => format!("sol{r}#{i}.{j}"),
                        };
                        fam.push(name, s)?;
                    }
                }
            }
        }
        Ok(fam)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPAtom {
    pub relation: String,
    pub args: Vec<Var>,
}

/// `∃ y₁..y_m (ρ₁(z̄₁) ∧ … ∧ ρ_s(z̄_s))` with free variables `x₁..x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPFormula {
    pub free_vars: usize,
    pub bound_vars: usize,
    pub atoms: Vec<PPAtom>,
}

impl PPFormula {
    pub fn new(free_vars: usize, bound_vars: usize, atoms: Vec<PPAtom>) -> Self {
        PPFormula {
            free_vars,
            bound_vars,
            atoms,
        }
    }
}

/// The relation of arity `n` defined by `formula` over `family`.
pub fn eval_pp(formula: &PPFormula, family: &RelationFamily, n: usize) -> Result<Relation> {
    if formula.free_vars != n {
        return Err(Error::InvalidArgument(format!(
            "formula has {} free variables, expected {n}",
            formula.free_vars
        )));
    }
    let mut resolved = Vec::with_capacity(formula.atoms.len());
    for atom in &formula.atoms {
        let rel = family
            .get(&atom.relation)
            .ok_or_else(|| Error::UnknownRelation(atom.relation.clone()))?;
        if rel.arity() != atom.args.len() {
            return Err(Error::ArityMismatch {
                op: atom.relation.clone(),
                expected: rel.arity(),
                got: atom.args.len(),
            });
        }
        for v in &atom.args {
            let ok = match *v {
                Var::Free(i) => i < formula.free_vars,
                Var::Bound(j) => j < formula.bound_vars,
            };
            if !ok {
                return Err(Error::InvalidArgument(format!("variable {v:?} out of range")));
            }
        }
        resolved.push((rel, &atom.args));
    }
    let size = family.universe_size();
    let m = formula.bound_vars;
    let len = size.pow(n as u32);
    let bound_len = size.pow(m as u32);
    let mut points = PointSet::empty(len);
    let mut args = Vec::new();
    for p in 0..len {
        let free = tuple_from_index(size, n, p);
        let hit = (0..bound_len).any(|q| {
            let bound = tuple_from_index(size, m, q);
            resolved.iter().all(|(rel, vars)| {
                args.clear();
                args.extend(vars.iter().map(|v| match *v {
                    Var::Free(i) => free[i],
                    Var::Bound(j) => bound[j],
                }));
                rel.contains(&args)
            })
        });
        if hit {
            points.insert(p);
        }
    }
    Ok(Relation::from_points(n, size, points))
}

/// Whether `h ⊲ ρ`: every matrix with columns in `ρ` and rows in `dom h`
/// is mapped row-wise into `ρ`.
pub fn preserves(h: &PartialOperation, rho: &Relation) -> bool {
    if h.universe_size() != rho.universe_size() {
        return false;
    }
    let k = h.arity();
    let n = rho.arity();
    let cols = rho.tuples();
    if cols.is_empty() && k > 0 {
        return true;
    }
    let mut pick = vec![0usize; k];
    let mut row = vec![0; k];
    let mut image = vec![0; n];
    loop {
        let mut defined = true;
        for i in 0..n {
            for (c, &j) in pick.iter().enumerate() {
                row[c] = cols[j][i];
            }
            match h.get(&row) {
                Some(v) => image[i] = v,
                None => {
                    defined = false;
                    break;
                }
            }
        }
        if defined && !rho.contains(&image) {
            return false;
        }
        // next k-tuple of column indices
        let mut c = k;
        loop {
            if c == 0 {
                return true;
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < cols.len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// `σ(ρ) = {a ∈ A^n : (a_σ(1), …, a_σ(r)) ∈ ρ}`.
pub fn substitution_instance(rho: &Relation, sigma: &[usize], n: usize) -> Relation {
    let size = rho.universe_size();
    let len = size.pow(n as u32);
    let mut proj = vec![0; sigma.len()];
    let points = (0..len).filter(|&p| {
        let a = tuple_from_index(size, n, p);
        for (c, &s) in sigma.iter().enumerate() {
            proj[c] = a[s];
        }
        rho.points().contains(tuple_index(size, &proj))
    });
    Relation::from_points(n, size, PointSet::from_points(len, points.collect::<Vec<_>>()))
}

/// The distinct atoms available to quantifier-free pp formulas in
/// `x₁..x_n`: `A^n` followed by every substitution instance of every
/// member, in member order and lexicographic order of the variable maps.
pub fn qfpp_generators(family: &RelationFamily, n: usize, bounds: &ResourceBounds) -> Result<Vec<Relation>> {
    let size = family.universe_size();
    bounds.power_len(size, n)?;
    let mut out = vec![Relation::full(n, size)];
    let mut seen: HashSet<Relation> = out.iter().cloned().collect();
    for m in family.members() {
        let r = m.relation.arity();
        if n == 0 && r > 0 {
            continue;
        }
        let maps = n.pow(r as u32);
        for code in 0..maps {
            let sigma = tuple_from_index(n.max(1), r, code);
            let inst = substitution_instance(&m.relation, &sigma, n);
            if seen.insert(inst.clone()) {
                out.push(inst);
                if out.len() > bounds.max_cells {
                    return Err(bound_exceeded(format!(
                        "more than {} qfpp atoms at arity {n}",
                        bounds.max_cells
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// Membership in the intersection closure of a generator list.
#[derive(Debug, Clone)]
pub struct QfppBasis {
    arity: usize,
    size: usize,
    generators: Vec<Relation>,
}

impl QfppBasis {
    pub fn new(family: &RelationFamily, n: usize, bounds: &ResourceBounds) -> Result<Self> {
        Ok(QfppBasis {
            arity: n,
            size: family.universe_size(),
            generators: qfpp_generators(family, n, bounds)?,
        })
    }

    pub fn generators(&self) -> &[Relation] {
        &self.generators
    }

    /// The least member of the closure containing `s`.
    pub fn hull(&self, s: &Relation) -> Relation {
        let mut acc = PointSet::full(self.size.pow(self.arity as u32));
        for g in &self.generators {
            if s.points().is_subset(g.points()) {
                acc.intersect_with(g.points());
            }
        }
        Relation::from_points(self.arity, self.size, acc)
    }

    pub fn contains(&self, s: &Relation) -> bool {
        s.arity() == self.arity && s.universe_size() == self.size && self.hull(s) == *s
    }
}

/// Every relation of arity `n` definable by a quantifier-free pp formula
/// over `family`, in canonical order.
pub fn qfpp_closure(family: &RelationFamily, n: usize, bounds: &ResourceBounds) -> Result<Vec<Relation>> {
    let gens = qfpp_generators(family, n, bounds)?;
    let mut all: Vec<PointSet> = Vec::new();
    let mut seen: HashSet<PointSet> = HashSet::new();
    for g in &gens {
        if seen.insert(g.points().clone()) {
            all.push(g.points().clone());
        }
    }
    let mut head = 0;
    while head < all.len() {
        let x = all[head].clone();
        for g in &gens {
            let y = x.intersection(g.points());
            if seen.insert(y.clone()) {
                all.push(y);
                if all.len() > bounds.max_cells {
                    return Err(bound_exceeded(format!(
                        "qfpp closure at arity {n} exceeds {} relations",
                        bounds.max_cells
                    )));
                }
            }
        }
        head += 1;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    let size = family.universe_size();
    Ok(all.into_iter().map(|p| Relation::from_points(n, size, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn rel(arity: usize, text: &str) -> Relation {
        Relation::parse_tuples(arity, 2, text).unwrap()
    }

    #[test]
    fn image_by_existential_graph() {
        let alg = builtin::monounary(&[1, 0, 0]).unwrap();
        let fam = RelationFamily::cbullet(&alg, [2], &ResourceBounds::default()).unwrap();
        let phi = PPFormula::new(
            1,
            1,
            vec![PPAtom {
                relation: "graph2[f(x1)]".into(),
                args: vec![Var::Bound(0), Var::Free(0)],
            }],
        );
        assert_eq!(eval_pp(&phi, &fam, 1).unwrap().render(), "{0,1}");
        let empty = PPFormula::new(2, 0, vec![]);
        assert_eq!(eval_pp(&empty, &fam, 2).unwrap().len(), 9);
        let bad = PPFormula::new(1, 0, vec![PPAtom { relation: "nope".into(), args: vec![] }]);
        assert_eq!(eval_pp(&bad, &fam, 1), Err(Error::UnknownRelation("nope".into())));
    }

    #[test]
    fn antisymmetry_gives_equality() {
        let mut fam = RelationFamily::new("order", 2);
        fam.push("le", rel(2, "00,01,11")).unwrap();
        let atom = |a, b| PPAtom {
            relation: "le".into(),
            args: vec![Var::Free(a), Var::Free(b)],
        };
        let phi = PPFormula::new(2, 0, vec![atom(0, 1), atom(1, 0)]);
        assert_eq!(eval_pp(&phi, &fam, 2).unwrap(), Relation::equality(2, 2));
        let short = PPFormula::new(2, 0, vec![PPAtom { relation: "le".into(), args: vec![Var::Free(0)] }]);
        assert!(matches!(eval_pp(&short, &fam, 2), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn preservation_basics() {
        let rho = rel(2, "01,10");
        let pi1 = PartialOperation::total(2, 2, &[0, 0, 1, 1]);
        assert!(preserves(&pi1, &rho));
        assert!(preserves(&PartialOperation::empty(3, 2), &rho));
        let meet = PartialOperation::total(2, 2, &[0, 0, 0, 1]);
        assert!(!preserves(&meet, &rho));
        let s = rel(4, "0000,0001,0010,0100,0101,0110,0111,1000,1001,1010,1011,1100,1101,1110,1111");
        let join = PartialOperation::total(2, 2, &[0, 1, 1, 1]);
        assert!(!preserves(&meet, &s));
        assert!(!preserves(&join, &s));
        assert!(preserves(&pi1, &s));
        assert!(preserves(&PartialOperation::total(1, 2, &[0, 0]), &s));
    }

    #[test]
    fn ccirc_of_meet_at_arity_two() {
        let alg = builtin::chain_semilattice(2);
        let b = ResourceBounds::default();
        let fam = RelationFamily::ccirc(&alg, [1, 2], &b).unwrap();
        let got: Vec<String> = qfpp_closure(&fam, 2, &b).unwrap().iter().map(Relation::render).collect();
        assert_eq!(got, vec!["{00,11}", "{00,01,11}", "{00,10,11}", "{00,01,10,11}"]);
    }

    #[test]
    fn cbullet_misses_the_semilattice_gap() {
        let alg = builtin::chain_semilattice(2);
        let b = ResourceBounds::default();
        let s = rel(3, "000,001,010,011,100,101,111");
        let cb = QfppBasis::new(&RelationFamily::cbullet(&alg, [4], &b).unwrap(), 3, &b).unwrap();
        let cc = QfppBasis::new(&RelationFamily::ccirc(&alg, [3], &b).unwrap(), 3, &b).unwrap();
        assert!(cc.contains(&s));
        assert!(!cb.contains(&s));
        assert!(cb.contains(&Relation::full(3, 2)));
    }

    #[test]
    fn closure_is_intersection_closed_and_contains_instances() {
        let alg = builtin::fork_semilattice();
        let b = ResourceBounds::default();
        let fam = RelationFamily::cbullet(&alg, [1, 2, 3], &b).unwrap();
        let closure = qfpp_closure(&fam, 2, &b).unwrap();
        let set: HashSet<&Relation> = closure.iter().collect();
        for x in &closure {
            for y in &closure {
                assert!(set.contains(&x.intersection(y)));
            }
        }
        for g in qfpp_generators(&fam, 2, &b).unwrap() {
            assert!(set.contains(&g));
        }
        assert!(set.contains(&Relation::full(2, 3)));
    }
}
