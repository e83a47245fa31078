// SPDX-License-Identifier: Apache-2.0

//! Eventually-constant functions on the ordinals with exact rational values.
//!
//! A [`StepFn`] is a tail value plus a finite map of deviations. Deviations
//! equal to the tail are always stripped, so two step functions agree at
//! every ordinal iff their representations are identical. With tail `0` a
//! step function is an element of the null-tail subspace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::ordinal::{self, Ordinal};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct StepFn {
    tail: Rational,
    deviations: BTreeMap<Ordinal, Rational>,
}

impl StepFn {
    /// Builds a normalized step function. Later duplicates of a key win.
    pub fn new<I>(tail: Rational, deviations: I) -> Self
    where
        I: IntoIterator<Item = (Ordinal, Rational)>,
    {
        let deviations = deviations.into_iter().filter(|(_, v)| *v != tail).collect();
        StepFn { tail, deviations }
    }

    pub fn constant(c: Rational) -> Self {
        StepFn {
            tail: c,
            deviations: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        StepFn::constant(Rational::zero())
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    pub fn deviations(&self) -> &BTreeMap<Ordinal, Rational> {
        &self.deviations
    }

    pub fn keys(&self) -> impl Iterator<Item = &Ordinal> + '_ {
        self.deviations.keys()
    }

    pub fn is_constant(&self) -> bool {
        self.deviations.is_empty()
    }

    pub fn eval(&self, at: &Ordinal) -> &Rational {
        self.deviations.get(at).unwrap_or(&self.tail)
    }

    /// An ordinal above every deviation key: the largest key plus `w`.
    pub fn fresh_ordinal(&self) -> Ordinal {
        fresh_beyond(self.deviations.keys())
    }

    pub fn map(&self, op: impl Fn(&Rational) -> Rational) -> StepFn {
        StepFn::new(
            op(&self.tail),
            self.deviations.iter().map(|(k, v)| (k.clone(), op(v))),
        )
    }

    /// Pointwise combination over the merged key set.
    pub fn zip_with(
        &self,
        other: &StepFn,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> StepFn {
        let keys: BTreeSet<&Ordinal> = self.keys().chain(other.keys()).collect();
        StepFn::new(
            op(&self.tail, &other.tail),
            keys.into_iter()
                .map(|k| (k.clone(), op(self.eval(k), other.eval(k)))),
        )
    }

    pub fn add(&self, other: &StepFn) -> StepFn {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFn) -> StepFn {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepFn) -> StepFn {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, factor: &Rational) -> StepFn {
        self.map(|v| v * factor)
    }

    pub fn neg(&self) -> StepFn {
        self.map(|v| -v)
    }

    pub fn abs(&self) -> StepFn {
        self.map(|v| v.abs())
    }

    pub fn min(&self, other: &StepFn) -> StepFn {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn max(&self, other: &StepFn) -> StepFn {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    pub fn clamp(&self, lo: &Rational, hi: &Rational) -> Result<StepFn> {
        if lo > hi {
            return Err(Error::Precondition(format!("clamp bounds {lo} > {hi}")));
        }
        Ok(self.map(|v| v.clamp(lo, hi).clone()))
    }

    /// Pointwise sign in `{-1, 0, 1}`; `sign(g) * |g| == g`.
    pub fn sign(&self) -> StepFn {
        self.map(|v| v.signum())
    }

    pub fn sup_norm(&self) -> Rational {
        self.deviations
            .values()
            .map(|v| v.abs())
            .fold(self.tail.abs(), |acc, v| acc.max(v))
    }

    pub fn dist(&self, other: &StepFn) -> Rational {
        self.sub(other).sup_norm()
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &StepFn) -> bool {
        let gap = other.sub(self);
        !gap.tail.is_negative() && gap.deviations.values().all(|v| !v.is_negative())
    }

    /// True when every value lies in `[lo, hi]`.
    pub fn bounded_by(&self, lo: &Rational, hi: &Rational) -> bool {
        std::iter::once(&self.tail)
            .chain(self.deviations.values())
            .all(|v| lo <= v && v <= hi)
    }

    pub fn in_ball(&self, ball: &Ball) -> bool {
        self.dist(&ball.center) <= ball.radius
    }
}

/// The largest ordinal among `keys` plus `w`, or `w` when `keys` is empty.
pub fn fresh_beyond<'a, I>(keys: I) -> Ordinal
where
    I: IntoIterator<Item = &'a Ordinal>,
{
    ordinal::sup_finite(keys)
        .unwrap_or_default()
        .add(&Ordinal::omega())
}

/// Pointwise supremum of a finite family.
pub fn family_sup(family: &[StepFn]) -> Result<StepFn> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.max(f)))
}

/// Pointwise infimum of a finite family.
pub fn family_inf(family: &[StepFn]) -> Result<StepFn> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.min(f)))
}

impl fmt::Display for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tail={}; [", self.tail)?;
        for (idx, (k, v)) in self.deviations.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for StepFn {
    type Err = ParseError;

    /// Parses `tail=<rational>; [<ordinal>:<rational>, ...]`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_stepfn(s, 0)
    }
}

fn parse_stepfn(s: &str, offset: usize) -> std::result::Result<StepFn, ParseError> {
    let lead = s.len() - s.trim_start().len();
    let body = &s[lead..];
    let Some(after) = body.strip_prefix("tail=") else {
        return Err(ParseError::new(offset + lead, "expected `tail=`"));
    };
    let base = offset + lead + "tail=".len();
    let semi = after
        .find(';')
        .ok_or_else(|| ParseError::new(base + after.len(), "expected `;`"))?;
    let tail = parse_rational(&after[..semi], base)?;

    let list = &after[semi + 1..];
    let list_base = base + semi + 1;
    let open = list.len() - list.trim_start().len();
    if !list[open..].starts_with('[') {
        return Err(ParseError::new(list_base + open, "expected `[`"));
    }
    let trimmed = list.trim_end();
    if !trimmed.ends_with(']') || trimmed.len() <= open {
        return Err(ParseError::new(list_base + trimmed.len(), "expected `]`"));
    }
    let inner = &trimmed[open + 1..trimmed.len() - 1];
    let inner_base = list_base + open + 1;

    let mut deviations = BTreeMap::new();
    if !inner.trim().is_empty() {
        let mut cursor = 0;
        for entry in inner.split(',') {
            let entry_base = inner_base + cursor;
            cursor += entry.len() + 1;
            let colon = entry
                .find(':')
                .ok_or_else(|| ParseError::new(entry_base, "expected `<ordinal>:<rational>`"))?;
            let key = ordinal::parse_at(&entry[..colon], entry_base)?;
            let value = parse_rational(&entry[colon + 1..], entry_base + colon + 1)?;
            if deviations.insert(key.clone(), value).is_some() {
                return Err(ParseError::new(entry_base, format!("duplicate key {key}")));
            }
        }
    }
    Ok(StepFn::new(tail, deviations))
}

#[derive(Serialize, Deserialize)]
struct DeviationJson {
    at: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct StepFnJson {
    tail: String,
    deviations: Vec<DeviationJson>,
}

impl Serialize for StepFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StepFnJson {
            tail: self.tail.to_string(),
            deviations: self
                .deviations
                .iter()
                .map(|(k, v)| DeviationJson {
                    at: k.to_string(),
                    value: v.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StepFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = StepFnJson::deserialize(deserializer)?;
        let tail = parse_rational(&raw.tail, 0).map_err(D::Error::custom)?;
        let mut deviations = Vec::with_capacity(raw.deviations.len());
        for d in raw.deviations {
            deviations.push((
                d.at.parse::<Ordinal>().map_err(D::Error::custom)?,
                parse_rational(&d.value, 0).map_err(D::Error::custom)?,
            ));
        }
        Ok(StepFn::new(tail, deviations))
    }
}

/// Closed ball in the sup norm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ball {
    center: StepFn,
    radius: Rational,
}

impl Ball {
    pub fn new(center: StepFn, radius: Rational) -> Result<Ball> {
        if radius.is_negative() {
            return Err(Error::Precondition(format!("negative radius {radius}")));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit() -> Ball {
        Ball {
            center: StepFn::zero(),
            radius: Rational::one(),
        }
    }

    pub fn center(&self) -> &StepFn {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn contains(&self, f: &StepFn) -> bool {
        f.in_ball(self)
    }

    /// `center - radius`, the lower end of the ball seen as an order interval.
    pub fn lower(&self) -> StepFn {
        self.center.map(|v| v - &self.radius)
    }

    pub fn upper(&self) -> StepFn {
        self.center.map(|v| v + &self.radius)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "center={}; r={}", self.center, self.radius)
    }
}

impl FromStr for Ball {
    type Err = ParseError;

    /// Parses `center=<stepfn>; r=<rational>`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let body = &s[lead..];
        let Some(after) = body.strip_prefix("center=") else {
            return Err(ParseError::new(lead, "expected `center=`"));
        };
        let base = lead + "center=".len();
        let semi = after
            .rfind(';')
            .ok_or_else(|| ParseError::new(base + after.len(), "expected `; r=`"))?;
        let center = parse_stepfn(&after[..semi], base)?;
        let radius_part = &after[semi + 1..];
        let pad = radius_part.len() - radius_part.trim_start().len();
        let Some(r) = radius_part.trim_start().strip_prefix("r=") else {
            return Err(ParseError::new(base + semi + 1 + pad, "expected `r=`"));
        };
        let radius = parse_rational(r, base + semi + 1 + pad + 2)?;
        Ball::new(center, radius).map_err(|e| ParseError::new(base + semi + 1, e.to_string()))
    }
}
