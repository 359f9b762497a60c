//! Finite relations of fixed arity over a finite universe.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{tuple_from_index, tuple_index, Element, Tuple};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// A set of `arity`-tuples over `0..size`, stored as points of `A^arity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    size: usize,
    points: PointSet,
}

impl Relation {
    pub fn new(arity: usize, size: usize, tuples: &[Tuple]) -> Result<Self> {
        let len = size
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::InvalidArgument("relation arity too large".into()))?;
        let mut points = PointSet::empty(len);
        for t in tuples {
            if t.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "tuple {t:?} does not have length {arity}"
                )));
            }
            if let Some(&v) = t.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { value: v, size });
            }
            points.insert(tuple_index(size, t));
        }
        Ok(Relation {
            arity,
            size,
            points,
        })
    }

    /// Wraps a set of points of `A^arity`.
    pub fn from_points(arity: usize, size: usize, points: PointSet) -> Self {
        debug_assert_eq!(points.universe_len(), size.pow(arity as u32));
        Relation {
            arity,
            size,
            points,
        }
    }

    pub fn full(arity: usize, size: usize) -> Self {
        Relation::from_points(arity, size, PointSet::full(size.pow(arity as u32)))
    }

    pub fn empty(arity: usize, size: usize) -> Self {
        Relation::from_points(arity, size, PointSet::empty(size.pow(arity as u32)))
    }

    /// `{(a, …, a)}` of the given arity.
    pub fn equality(arity: usize, size: usize) -> Self {
        let tuples: Vec<Tuple> = (0..size).map(|a| vec![a; arity]).collect();
        Relation::new(arity, size, &tuples).expect("diagonal tuples are in range")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn into_points(self) -> PointSet {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.count()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, tuple: &[Element]) -> bool {
        tuple.len() == self.arity
            && tuple.iter().all(|&a| a < self.size)
            && self.points.contains(tuple_index(self.size, tuple))
    }

    pub fn tuples(&self) -> Vec<Tuple> {
        self.points
            .iter()
            .map(|p| tuple_from_index(self.size, self.arity, p))
            .collect()
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!((self.arity, self.size), (other.arity, other.size));
        Relation::from_points(self.arity, self.size, self.points.intersection(&other.points))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.points.is_subset(&other.points)
    }

    /// Tuples rendered compactly: `01` for small universes, `0.1` otherwise.
    pub fn render_tuple(size: usize, tuple: &[Element]) -> String {
        if size <= 10 {
            tuple.iter().map(|a| char::from(b'0' + *a as u8)).collect()
        } else {
            tuple
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Parses `01,10`-style tuple lists (the inverse of `render`).
    pub fn parse_tuples(arity: usize, size: usize, text: &str) -> Result<Relation> {
        let mut tuples = Vec::new();
        for chunk in text.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let t: Vec<Element> = if chunk.contains('.') {
                chunk
                    .split('.')
                    .map(|d| {
                        d.parse()
                            .map_err(|_| Error::InvalidArgument(format!("bad tuple `{chunk}`")))
                    })
                    .collect::<Result<_>>()?
            } else {
                chunk
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::InvalidArgument(format!("bad tuple `{chunk}`")))
                    })
                    .collect::<Result<_>>()?
            };
            tuples.push(t);
        }
        Relation::new(arity, size, &tuples)
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self
            .tuples()
            .iter()
            .map(|t| Relation::render_tuple(self.size, t))
            .collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation/{}{}", self.arity, self.render())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    arity: usize,
    size: usize,
    tuples: Vec<Tuple>,
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationRepr {
            arity: self.arity,
            size: self.size,
            tuples: self.tuples(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RelationRepr::deserialize(d)?;
        Relation::new(r.arity, r.size, &r.tuples).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_render() {
        let r = Relation::new(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(r.render(), "{01,10}");
        assert!(r.contains(&[0, 1]));
        assert!(!r.contains(&[1, 1]));
        assert_eq!(Relation::parse_tuples(2, 2, "01, 10").unwrap(), r);
    }

    #[test]
    fn rejects_bad_tuples() {
        assert!(Relation::new(2, 2, &[vec![0]]).is_err());
        assert!(matches!(
            Relation::new(1, 2, &[vec![2]]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn serde_round_trip() {
        let r = Relation::equality(3, 3);
        let text = serde_json::to_string(&r).unwrap();
        let back: Relation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
