//! Degree vectors in (ℕ ∪ {∞})^k.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Sentinel value for an infinite coordinate.
pub const INF: u32 = u32::MAX;

/// A degree vector. Coordinates equal to [`INF`] are infinite.
///
/// The derived ordering is lexicographic and only used for sorting; the
/// componentwise partial order is [`Degree::le`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn new(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    pub fn infinite(k: usize) -> Self {
        Degree(vec![INF; k])
    }

    /// The generator `e_i` (colors are 1-based).
    pub fn unit(k: usize, color: usize) -> Self {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Degree(d)
    }

    pub fn splat(k: usize, value: u32) -> Self {
        Degree(vec![value; k])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Coordinate for a 1-based color.
    pub fn get(&self, color: usize) -> u32 {
        self.0[color - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|&c| c != INF)
    }

    pub fn is_infinite_everywhere(&self) -> bool {
        self.0.iter().all(|&c| c == INF)
    }

    /// Sum of the coordinates; only meaningful for finite degrees.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    /// Addition with `INF + n = INF`.
    pub fn add(&self, other: &Degree) -> Degree {
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == INF || b == INF { INF } else { a + b })
                .collect(),
        )
    }

    /// `self − other`, defined when `other ≤ self` and `other` is finite.
    /// Infinite coordinates of `self` stay infinite.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.is_finite() || !other.le(self) {
            return None;
        }
        Some(Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == INF { INF } else { a - b })
                .collect(),
        ))
    }

    /// `(self − other)` clamped at zero in each coordinate; both finite.
    pub fn saturating_sub(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(&a, &b)| a.saturating_sub(b)).collect())
    }

    /// `t · self`, finite degrees only.
    pub fn scale(&self, t: u32) -> Degree {
        Degree(self.0.iter().map(|&a| a * t).collect())
    }

    /// Coordinates with value `> 0`, as 1-based colors.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| self.get(i) > 0).collect()
    }

    /// Every finite degree `n` with `0 ≤ n ≤ self`, in lexicographic order.
    /// `self` must be finite.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=c).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    /// Signed difference `self − other` of two finite degrees.
    pub fn diff(&self, other: &Degree) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    /// Replaces infinite coordinates with `cap`.
    pub fn clamp_infinite(&self, cap: &Degree) -> Degree {
        Degree(self.0.iter().zip(&cap.0).map(|(&a, &c)| if a == INF { c } else { a }).collect())
    }

    /// Parses `"1,2"`, `"(1,2)"` or `"inf,3"`.
    pub fn parse(text: &str) -> Option<Degree> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return None;
        }
        t.split(',')
            .map(|c| match c.trim() {
                "inf" | "INF" | "∞" => Some(INF),
                c => c.parse::<u32>().ok().filter(|&v| v != INF),
            })
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *c == INF {
                write!(f, "inf")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for &c in &self.0 {
            if c == INF {
                seq.serialize_element("inf")?;
            } else {
                seq.serialize_element(&c)?;
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Num(u32),
            Sym(String),
        }
        let raw = Vec::<Coord>::deserialize(d)?;
        raw.into_iter()
            .map(|c| match c {
                Coord::Num(n) if n != INF => Ok(n),
                Coord::Sym(s) if s == "inf" || s == "INF" => Ok(INF),
                _ => Err(serde::de::Error::custom("degree coordinate must be a natural number or \"inf\"")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Degree)
    }
}
