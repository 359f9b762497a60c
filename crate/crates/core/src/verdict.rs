//! Verdicts, witnesses and the bounds they were obtained under.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hom::PartialOperation;
use crate::relation::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    HomHom,
    PolHom,
    Sdc,
    InjSpfin,
    InjHsp,
    Cbullet,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::HomHom,
        Property::PolHom,
        Property::Sdc,
        Property::InjSpfin,
        Property::InjHsp,
        Property::Cbullet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::HomHom => "hom-hom",
            Property::PolHom => "pol-hom",
            Property::Sdc => "sdc",
            Property::InjSpfin => "inj-spfin",
            Property::InjHsp => "inj-hsp",
            Property::Cbullet => "cbullet",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictValue {
    ExactTrue,
    ExactFalse,
    TrueUpToBound,
    Unknown,
}

impl VerdictValue {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictValue::ExactTrue => "exact-true",
            VerdictValue::ExactFalse => "exact-false",
            VerdictValue::TrueUpToBound => "true-up-to-bound",
            VerdictValue::Unknown => "unknown",
        }
    }

    /// `Some(false)` for exact-false, `Some(true)` for the two positive
    /// values.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            VerdictValue::ExactTrue | VerdictValue::TrueUpToBound => Some(true),
            VerdictValue::ExactFalse => Some(false),
            VerdictValue::Unknown => None,
        }
    }
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The power `K` and arity `N` a verdict was searched up to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Bounds {
    pub max_power: Option<usize>,
    pub max_arity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum Certificate {
    BruteForce,
    Fastpath { theorem: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    NonExtendableHomomorphism,
    NonAlgebraicInvariantSet,
    QfppGapRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A homomorphism from a subuniverse of `A^k` with no extension to
    /// `within` (the whole power when absent).
    NonExtendableHomomorphism {
        k: usize,
        domain: Relation,
        homomorphism: PartialOperation,
        within: Option<Relation>,
    },
    /// A centralizer-closed set of `n`-tuples that is not algebraic.
    NonAlgebraicInvariantSet {
        n: usize,
        set: Relation,
        algebraic_closure: Relation,
    },
    /// A member of the quantifier-free pp closure of `C∘` at arity `n`
    /// missing from that of `C•`.
    QfppGapRelation { n: usize, relation: Relation },
}

impl Witness {
    pub fn kind(&self) -> WitnessKind {
        match self {
            Witness::NonExtendableHomomorphism { .. } => WitnessKind::NonExtendableHomomorphism,
            Witness::NonAlgebraicInvariantSet { .. } => WitnessKind::NonAlgebraicInvariantSet,
            Witness::QfppGapRelation { .. } => WitnessKind::QfppGapRelation,
        }
    }

    /// The power or arity the witness lives at.
    pub fn level(&self) -> usize {
        match *self {
            Witness::NonExtendableHomomorphism { k, .. } => k,
            Witness::NonAlgebraicInvariantSet { n, .. } | Witness::QfppGapRelation { n, .. } => n,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Witness::NonExtendableHomomorphism {
                k,
                homomorphism,
                within,
                ..
            } => match within {
                None => format!("k={k}: h={} does not extend to A^{k}", homomorphism.render()),
                Some(c) => format!(
                    "k={k}: h={} does not extend to C={}",
                    homomorphism.render(),
                    c.render()
                ),
            },
            Witness::NonAlgebraicInvariantSet {
                n,
                set,
                algebraic_closure,
            } => format!(
                "n={n}: S={} is centralizer-closed, algebraic closure {}",
                set.render(),
                algebraic_closure.render()
            ),
            Witness::QfppGapRelation { n, relation } => {
                format!("n={n}: {} is qfpp over C∘ but not over C•", relation.render())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: Property,
    pub value: VerdictValue,
    pub bounds: Bounds,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
    /// The classification theorem's answer, when one applies.
    pub fastpath: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self.value, VerdictValue::ExactTrue | VerdictValue::ExactFalse)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}: {}", self.property, self.value);
        let mut b = Vec::new();
        if let Some(k) = self.bounds.max_power {
            b.push(format!("K={k}"));
        }
        if let Some(n) = self.bounds.max_arity {
            b.push(format!("N={n}"));
        }
        if !b.is_empty() {
            s += &format!(" [{}]", b.join(", "));
        }
        match &self.certificate {
            Certificate::BruteForce => s += " (brute force)",
            Certificate::Fastpath { theorem } => s += &format!(" (fast path: {theorem})"),
        }
        if let Some(w) = &self.witness {
            s += &format!("\n  witness: {}", w.render());
        }
        for n in &self.notes {
            s += &format!("\n  note: {n}");
        }
        s
    }
}
