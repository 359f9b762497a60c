//! Recognizing semilattices, lattices, abelian groups and unary algebras,
//! and the exact classification verdicts available for each.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};
use crate::monounary::MonounaryProfile;
use crate::verdict::{Bounds, Certificate, Property, Verdict, VerdictValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarietyKind {
    Semilattice,
    Lattice,
    AbelianGroup,
    Monounary,
    Unrecognized,
}

/// The recognized variety and which operation plays which role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyTag {
    pub kind: VarietyKind,
    pub roles: BTreeMap<String, String>,
}

/// Verdicts for the three boxes: `{SDC, pol-hom, injective in SP_fin}`,
/// `C•` pol-hom, and injectivity in the generated variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub sdc_polhom_inj_spfin: Verdict,
    pub cbullet_polhom: Verdict,
    pub inj_hsp: Verdict,
}

impl ClassificationReport {
    /// The fast-path answer for one property.
    pub fn answer(&self, p: Property) -> (bool, &str) {
        let v = match p {
            Property::Cbullet => &self.cbullet_polhom,
            Property::InjHsp => &self.inj_hsp,
            _ => &self.sdc_polhom_inj_spfin,
        };
        let theorem = match &v.certificate {
            Certificate::Fastpath { theorem } => theorem.as_str(),
            Certificate::BruteForce => "",
        };
        (v.value == VerdictValue::ExactTrue, theorem)
    }
}

fn fast(property: Property, holds: bool, theorem: impl Into<String>) -> Verdict {
    Verdict {
        property,
        value: if holds {
            VerdictValue::ExactTrue
        } else {
            VerdictValue::ExactFalse
        },
        bounds: Bounds::default(),
        witness: None,
        certificate: Certificate::Fastpath {
            theorem: theorem.into(),
        },
        fastpath: Some(holds),
        notes: Vec::new(),
    }
}

fn report(box1: (bool, String), cbullet: (bool, String), hsp: (bool, String)) -> ClassificationReport {
    ClassificationReport {
        sdc_polhom_inj_spfin: fast(Property::Sdc, box1.0, box1.1),
        cbullet_polhom: fast(Property::Cbullet, cbullet.0, cbullet.1),
        inj_hsp: fast(Property::InjHsp, hsp.0, hsp.1),
    }
}

fn bin(op: &OperationTable, n: usize, a: Element, b: Element) -> Element {
    op.at(a * n + b)
}

fn is_semilattice_op(op: &OperationTable, n: usize) -> bool {
    op.arity() == 2
        && (0..n).all(|a| bin(op, n, a, a) == a)
        && (0..n).all(|a| (0..n).all(|b| bin(op, n, a, b) == bin(op, n, b, a)))
        && is_associative(op, n)
}

fn is_associative(op: &OperationTable, n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| bin(op, n, bin(op, n, a, b), c) == bin(op, n, a, bin(op, n, b, c)))
        })
    })
}

fn absorbs(meet: &OperationTable, join: &OperationTable, n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            bin(meet, n, a, bin(join, n, a, b)) == a && bin(join, n, a, bin(meet, n, a, b)) == a
        })
    })
}

/// Identity and inverse table of an abelian group operation.
fn group_structure(op: &OperationTable, n: usize) -> Option<(Element, Vec<Element>)> {
    if op.arity() != 2
        || !(0..n).all(|a| (0..n).all(|b| bin(op, n, a, b) == bin(op, n, b, a)))
        || !is_associative(op, n)
    {
        return None;
    }
    let e = (0..n).find(|&e| (0..n).all(|a| bin(op, n, e, a) == a))?;
    let inv = (0..n)
        .map(|a| (0..n).find(|&b| bin(op, n, a, b) == e))
        .collect::<Option<Vec<_>>>()?;
    Some((e, inv))
}

pub fn recognize(alg: &FiniteAlgebra) -> VarietyTag {
    let n = alg.size();
    let ops = alg.ops();
    let tag = |kind, roles: &[(&str, &str)]| VarietyTag {
        kind,
        roles: roles
            .iter()
            .map(|(r, o)| (r.to_string(), o.to_string()))
            .collect(),
    };
    if alg.is_monounary() {
        return tag(VarietyKind::Monounary, &[("f", ops[0].name())]);
    }
    if ops.len() == 1 && is_semilattice_op(&ops[0], n) {
        return tag(VarietyKind::Semilattice, &[("meet", ops[0].name())]);
    }
    if ops.len() == 2
        && is_semilattice_op(&ops[0], n)
        && is_semilattice_op(&ops[1], n)
        && absorbs(&ops[0], &ops[1], n)
    {
        return tag(
            VarietyKind::Lattice,
            &[("meet", ops[0].name()), ("join", ops[1].name())],
        );
    }
    let binaries: Vec<&OperationTable> = ops.iter().filter(|o| o.arity() == 2).collect();
    if binaries.len() == 1 && ops.len() <= 3 {
        if let Some((e, inv)) = group_structure(binaries[0], n) {
            let mut roles = vec![("add", binaries[0].name())];
            let mut ok = true;
            let (mut unary, mut nullary) = (0, 0);
            for o in ops {
                match o.arity() {
                    2 => {}
                    1 => {
                        unary += 1;
                        ok &= o.values() == inv.as_slice();
                        roles.push(("neg", o.name()));
                    }
                    0 => {
                        nullary += 1;
                        ok &= o.at(0) == e;
                        roles.push(("zero", o.name()));
                    }
                    _ => ok = false,
                }
            }
            if ok && unary <= 1 && nullary <= 1 {
                return tag(VarietyKind::AbelianGroup, &roles);
            }
        }
    }
    tag(VarietyKind::Unrecognized, &[])
}

/// Join table of the order `a ≤ b ⟺ a∧b = a`, if every pair has a join.
fn joins_of(meet: &OperationTable, n: usize) -> Option<Vec<Element>> {
    let le = |a: Element, b: Element| bin(meet, n, a, b) == a;
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let ups: Vec<Element> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
            let least = ups.iter().copied().find(|&u| ups.iter().all(|&v| le(u, v)))?;
            join[a * n + b] = least;
        }
    }
    Some(join)
}

fn distributive(meet: impl Fn(Element, Element) -> Element, join: impl Fn(Element, Element) -> Element, n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| meet(a, join(b, c)) == join(meet(a, b), meet(a, c))))
    })
}

pub fn classify_semilattice(alg: &FiniteAlgebra) -> Result<ClassificationReport> {
    let n = alg.size();
    if alg.ops().len() != 1 || !is_semilattice_op(&alg.ops()[0], n) {
        return Err(Error::NotASemilattice);
    }
    let meet = &alg.ops()[0];
    let good = match joins_of(meet, n) {
        Some(join) => distributive(|a, b| bin(meet, n, a, b), |a, b| join[a * n + b], n),
        None => false,
    };
    let box1 = if good {
        "semilattice whose order is a distributive lattice"
    } else {
        "semilattice whose order is not a distributive lattice"
    };
    Ok(report(
        (good, box1.into()),
        (n == 1, "a nontrivial semilattice is never C•-pol-hom".into()),
        (good, box1.into()),
    ))
}

pub fn classify_lattice(alg: &FiniteAlgebra) -> Result<ClassificationReport> {
    let n = alg.size();
    let ops = alg.ops();
    if ops.len() != 2
        || !is_semilattice_op(&ops[0], n)
        || !is_semilattice_op(&ops[1], n)
        || !absorbs(&ops[0], &ops[1], n)
    {
        return Err(Error::NotALattice);
    }
    let (m, j) = (&ops[0], &ops[1]);
    let meet = |a, b| bin(m, n, a, b);
    let join = |a, b| bin(j, n, a, b);
    let bottom = (0..n).fold(0, meet);
    let top = (0..n).fold(0, join);
    let complemented = (0..n).all(|a| (0..n).any(|b| meet(a, b) == bottom && join(a, b) == top));
    let boolean = distributive(meet, join, n) && complemented;
    let why = if boolean {
        "Boolean lattice"
    } else {
        "lattice that is not Boolean"
    };
    Ok(report(
        (boolean, why.into()),
        (n == 1, "a nontrivial lattice is never C•-pol-hom".into()),
        (boolean, why.into()),
    ))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether every Sylow subgroup is homocyclic, from the order census.
pub fn sylows_homocyclic(alg: &FiniteAlgebra) -> Result<bool> {
    let n = alg.size();
    let op = alg
        .ops()
        .iter()
        .find(|o| o.arity() == 2)
        .ok_or(Error::NotAbelianGroup)?;
    let (e, _) = group_structure(op, n).ok_or(Error::NotAbelianGroup)?;
    let order = |a: Element| {
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = bin(op, n, x, a);
            k += 1;
        }
        k
    };
    let orders: Vec<usize> = (0..n).map(order).collect();
    for p in prime_factors(n) {
        let count = |q: usize| orders.iter().filter(|&&o| q.is_multiple_of(o)).count();
        let mut top = 1;
        while orders.iter().any(|&o| o % (top * p) == 0) {
            top *= p;
        }
        let base = count(p);
        let (mut q, mut expected) = (p, base);
        while q <= top {
            if count(q) != expected {
                return Ok(false);
            }
            q *= p;
            expected *= base;
        }
    }
    Ok(true)
}

pub fn classify_abelian(alg: &FiniteAlgebra) -> Result<ClassificationReport> {
    if recognize(alg).kind != VarietyKind::AbelianGroup {
        return Err(Error::NotAbelianGroup);
    }
    let h = sylows_homocyclic(alg)?;
    let why = if h {
        "abelian group with homocyclic Sylow subgroups"
    } else {
        "abelian group with a Sylow subgroup that is not homocyclic"
    };
    Ok(report((h, why.into()), (h, why.into()), (h, why.into())))
}

pub fn classify_monounary(alg: &FiniteAlgebra) -> Result<ClassificationReport> {
    let p = MonounaryProfile::of(alg)?;
    let v = p.sources_share_height();
    let box1 = if v {
        "unary algebra whose sources share one height"
    } else {
        "unary algebra with sources of different heights"
    };
    let cb = p.is_bijective() || p.is_constant();
    let cb_why = if cb {
        "unary operation that is bijective or constant"
    } else {
        "unary operation that is neither bijective nor constant"
    };
    let fixed = p.has_fixed_point();
    let hsp_why = match (v, fixed) {
        (true, true) => "sources share one height and there is a fixed point",
        (false, _) => "sources of different heights",
        (true, false) => "no one-element subalgebra",
    };
    Ok(report((v, box1.into()), (cb, cb_why.into()), (v && fixed, hsp_why.into())))
}

/// Recognizes the variety and applies its classification, if any.
pub fn classify(alg: &FiniteAlgebra) -> (VarietyTag, Option<ClassificationReport>) {
    let tag = recognize(alg);
    let rep = if alg.size() == 1 {
        let t = "one-element algebra";
        Some(report((true, t.into()), (true, t.into()), (true, t.into())))
    } else {
        match tag.kind {
            VarietyKind::Semilattice => classify_semilattice(alg).ok(),
            VarietyKind::Lattice => classify_lattice(alg).ok(),
            VarietyKind::AbelianGroup => classify_abelian(alg).ok(),
            VarietyKind::Monounary => classify_monounary(alg).ok(),
            VarietyKind::Unrecognized => None,
        }
    };
    (tag, rep)
}
