// SPDX-License-Identifier: Apache-2.0

//! Continuous piecewise-linear functions with rational breakpoints, the
//! clamp-shift on the unit ball of `C[-1, 1]`, and the sampling and
//! interpolation maps between `C_b[0, inf)` and eventually-constant
//! sequences.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Domain {
    /// Closed interval `[lo, hi]` with `lo < hi`.
    Interval { lo: Rational, hi: Rational },
    /// `[0, inf)`, constant beyond the last breakpoint.
    HalfLine,
}

impl Domain {
    pub fn unit_interval() -> Domain {
        Domain::Interval {
            lo: -Rational::one(),
            hi: Rational::one(),
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        match self {
            Domain::Interval { lo, hi } => lo <= t && t <= hi,
            Domain::HalfLine => !t.is_negative(),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
            Domain::HalfLine => f.write_str("halfline"),
        }
    }
}

/// A continuous piecewise-linear function, linear between consecutive
/// breakpoints. Interval domains have breakpoints at both endpoints;
/// half-line domains start at `0` and are constant after the last breakpoint.
///
/// Breakpoints are kept minimal (no interior collinear points, no flat
/// trailing points on a half-line), so equal functions have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PLFunction {
    domain: Domain,
    points: Vec<(Rational, Rational)>,
}

fn collinear(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> bool {
    (&b.1 - &a.1) * (&c.0 - &a.0) == (&c.1 - &a.1) * (&b.0 - &a.0)
}

impl PLFunction {
    pub fn new(domain: Domain, points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("no breakpoints".into()));
        }
        if let Some(pair) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::Precondition(format!(
                "breakpoints not strictly increasing at {} then {}",
                pair[0].0, pair[1].0
            )));
        }
        let first = &points[0].0;
        let last = &points[points.len() - 1].0;
        match &domain {
            Domain::Interval { lo, hi } => {
                if lo >= hi {
                    return Err(Error::Precondition(format!("empty interval {domain}")));
                }
                if first != lo || last != hi {
                    return Err(Error::Precondition(format!(
                        "breakpoints must start at {lo} and end at {hi}"
                    )));
                }
            }
            Domain::HalfLine => {
                if !first.is_zero() {
                    return Err(Error::Precondition(
                        "half-line breakpoints must start at 0".into(),
                    ));
                }
            }
        }
        Ok(PLFunction::normalized(domain, points))
    }

    fn normalized(domain: Domain, points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        if domain == Domain::HalfLine {
            while out.len() >= 2 && out[out.len() - 1].1 == out[out.len() - 2].1 {
                out.pop();
            }
        }
        PLFunction {
            domain,
            points: out,
        }
    }

    pub fn constant(domain: Domain, c: Rational) -> Self {
        let points = match &domain {
            Domain::Interval { lo, hi } => vec![(lo.clone(), c.clone()), (hi.clone(), c)],
            Domain::HalfLine => vec![(Rational::zero(), c)],
        };
        PLFunction::normalized(domain, points)
    }

    /// `t -> slope * t + intercept` on a bounded interval.
    pub fn linear(domain: Domain, slope: Rational, intercept: Rational) -> Result<Self> {
        PLFunction::constant(domain, Rational::zero()).add_affine(&slope, &intercept)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// The value at the last breakpoint, which is the constant value beyond
    /// it on a half-line.
    pub fn tail(&self) -> &Rational {
        &self.points[self.points.len() - 1].1
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if !self.domain.contains(t) {
            return Err(Error::OutOfDomain(t.to_string(), self.domain.to_string()));
        }
        let idx = self.points.partition_point(|(x, _)| x <= t);
        if idx == 0 {
            // Only reachable on a half-line before a breakpoint at 0, which
            // construction rules out.
            return Ok(self.points[0].1.clone());
        }
        if idx == self.points.len() {
            return Ok(self.tail().clone());
        }
        let (x0, y0) = &self.points[idx - 1];
        let (x1, y1) = &self.points[idx];
        Ok(y0 + (y1 - y0) * (t - x0) / (x1 - x0))
    }

    /// `t -> f(t) + slope * t + intercept`. On a half-line only `slope = 0`
    /// keeps the function bounded.
    pub fn add_affine(&self, slope: &Rational, intercept: &Rational) -> Result<Self> {
        if self.domain == Domain::HalfLine && !slope.is_zero() {
            return Err(Error::Precondition(
                "nonzero slope on a half-line is unbounded".into(),
            ));
        }
        let points = self
            .points
            .iter()
            .map(|(x, y)| (x.clone(), y + slope * x + intercept))
            .collect();
        Ok(PLFunction::normalized(self.domain.clone(), points))
    }

    /// `t -> min(hi, max(lo, f(t)))`, with the crossing points of `lo` and
    /// `hi` inserted as breakpoints.
    pub fn clamp(&self, lo: &Rational, hi: &Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("clamp bounds {lo} > {hi}")));
        }
        let mut refined = Vec::with_capacity(self.points.len() * 2);
        for seg in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (&seg[0], &seg[1]);
            refined.push((x0.clone(), y0.clone()));
            let mut crossings: Vec<Rational> = [lo, hi]
                .into_iter()
                .filter(|level| ((y0 - *level) * (y1 - *level)).is_negative())
                .map(|level| x0 + (level - y0) * (x1 - x0) / (y1 - y0))
                .collect();
            crossings.sort();
            crossings.dedup();
            refined.extend(crossings.into_iter().map(|x| {
                let y = self.eval(&x).expect("crossing lies inside the segment");
                (x, y)
            }));
        }
        refined.push(self.points[self.points.len() - 1].clone());
        let points = refined
            .into_iter()
            .map(|(x, y)| (x, y.clamp(lo.clone(), hi.clone())))
            .collect();
        Ok(PLFunction::normalized(self.domain.clone(), points))
    }

    pub fn sup_norm(&self) -> Rational {
        self.points
            .iter()
            .map(|(_, y)| y.abs())
            .max()
            .expect("at least one breakpoint")
    }

    fn same_domain(&self, other: &PLFunction) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(
                self.domain.to_string(),
                other.domain.to_string(),
            ));
        }
        Ok(())
    }

    /// Union of the breakpoint abscissae of both functions.
    pub fn refinement(&self, other: &PLFunction) -> Result<Vec<Rational>> {
        self.same_domain(other)?;
        let xs: BTreeSet<&Rational> = self
            .points
            .iter()
            .chain(&other.points)
            .map(|(x, _)| x)
            .collect();
        Ok(xs.into_iter().cloned().collect())
    }

    /// Exact sup of `|f - g|`, attained at a breakpoint of the refinement.
    pub fn dist(&self, other: &PLFunction) -> Result<Rational> {
        let xs = self.refinement(other)?;
        let mut best = Rational::zero();
        for x in &xs {
            best = best.max((self.eval(x)? - other.eval(x)?).abs());
        }
        Ok(best)
    }

    pub fn equals(&self, other: &PLFunction) -> Result<bool> {
        let xs = self.refinement(other)?;
        for x in &xs {
            if self.eval(x)? != other.eval(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain={}; points=", self.domain)?;
        for (idx, (x, y)) in self.points.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "; tail={}", self.tail())
    }
}

impl FromStr for PLFunction {
    type Err = ParseError;

    /// Parses `domain=[a,b]|halfline; points=(x1,y1),...; tail=<rational>`.
    /// The tail is optional and must match the last breakpoint value.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fields = split_fields(s);
        let mut domain = None;
        let mut points = None;
        let mut tail = None;
        for (offset, field) in fields {
            let (name, value) = field
                .split_once('=')
                .ok_or_else(|| ParseError::new(offset, "expected `name=value`"))?;
            let value_offset = offset + name.len() + 1;
            match name.trim() {
                "domain" => domain = Some(parse_domain(value, value_offset)?),
                "points" => points = Some(parse_points(value, value_offset)?),
                "tail" => tail = Some((value_offset, parse_rational(value, value_offset)?)),
                other => return Err(ParseError::new(offset, format!("unknown field `{other}`"))),
            }
        }
        let domain = domain.ok_or_else(|| ParseError::new(0, "missing `domain=`"))?;
        let points = points.ok_or_else(|| ParseError::new(0, "missing `points=`"))?;
        let f = PLFunction::new(domain, points).map_err(|e| ParseError::new(0, e.to_string()))?;
        if let Some((at, tail)) = tail {
            if tail != *f.tail() {
                return Err(ParseError::new(
                    at,
                    format!(
                        "tail {tail} differs from last breakpoint value {}",
                        f.tail()
                    ),
                ));
            }
        }
        Ok(f)
    }
}

/// Splits on `;`, returning each trimmed field with its byte offset.
fn split_fields(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in s.split(';') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead, part.trim()));
        start += part.len() + 1;
    }
    out
}

fn parse_domain(s: &str, offset: usize) -> std::result::Result<Domain, ParseError> {
    let t = s.trim();
    if t == "halfline" {
        return Ok(Domain::HalfLine);
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(offset, "expected `[a,b]` or `halfline`"))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| ParseError::new(offset, "expected `[a,b]`"))?;
    Ok(Domain::Interval {
        lo: parse_rational(lo, offset + 1)?,
        hi: parse_rational(hi, offset + 2 + lo.len())?,
    })
}

fn parse_points(
    s: &str,
    offset: usize,
) -> std::result::Result<Vec<(Rational, Rational)>, ParseError> {
    let bytes = s.as_bytes();
    let mut points = Vec::new();
    let mut pos = 0;
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() || bytes[pos] != b'(' {
            return Err(ParseError::new(offset + pos, "expected `(`"));
        }
        let close = s[pos..]
            .find(')')
            .map(|c| pos + c)
            .ok_or_else(|| ParseError::new(offset + pos, "expected `)`"))?;
        let inner = &s[pos + 1..close];
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::new(offset + pos + 1, "expected `x,y`"))?;
        points.push((
            parse_rational(x, offset + pos + 1)?,
            parse_rational(y, offset + pos + 2 + x.len())?,
        ));
        pos = close + 1;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            return Ok(points);
        }
        if bytes[pos] != b',' {
            return Err(ParseError::new(offset + pos, "expected `,`"));
        }
        pos += 1;
    }
}

/// `min(1, max(-1, f(t) + 2t))` on `[-1, 1]`, for `f` in the unit ball.
pub fn clamp_shift(f: &PLFunction) -> Result<PLFunction> {
    require_unit_ball(f)?;
    let one = Rational::one();
    f.add_affine(&Rational::from_integer(2.into()), &Rational::zero())?
        .clamp(&-one.clone(), &one)
}

fn require_unit_ball(f: &PLFunction) -> Result<()> {
    if *f.domain() != Domain::unit_interval() {
        return Err(Error::DomainMismatch(
            f.domain().to_string(),
            Domain::unit_interval().to_string(),
        ));
    }
    if f.sup_norm() > Rational::one() {
        return Err(Error::Precondition(format!("{f} is outside the unit ball")));
    }
    Ok(())
}

/// A point where the clamp-shift moves `f`.
///
/// A fixed point would equal `1` on `(0, 1]` and `-1` on `[-1, 0)`, which no
/// continuous function does; the two functions are linear between the
/// breakpoints of their common refinement, so one of those breakpoints
/// differs. They are scanned from the right.
pub fn pl_discrepancy(f: &PLFunction) -> Result<Rational> {
    let tf = clamp_shift(f)?;
    for x in tf.refinement(f)?.into_iter().rev() {
        if tf.eval(&x)? != f.eval(&x)? {
            return Ok(x);
        }
    }
    Err(Error::UnexpectedFixedPoint(format!(
        "clamp-shift fixes {f}"
    )))
}

/// An eventually-constant sequence `a_1, a_2, ...`: `a_n` is `prefix[n-1]`
/// for `n <= prefix.len()` and `tail` afterwards. Trailing prefix entries equal
/// to the tail are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SeqRep {
    prefix: Vec<Rational>,
    tail: Rational,
}

impl SeqRep {
    pub fn new(mut prefix: Vec<Rational>, tail: Rational) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        SeqRep { prefix, tail }
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    /// `a_n`, with `a_0 = 0`.
    pub fn get(&self, n: usize) -> Rational {
        match n {
            0 => Rational::zero(),
            n => self.prefix.get(n - 1).unwrap_or(&self.tail).clone(),
        }
    }

    /// `sup_{n >= 1} |a_n - b_n|`.
    pub fn dist(&self, other: &SeqRep) -> Rational {
        let len = self.prefix.len().max(other.prefix.len());
        (1..=len)
            .map(|n| (self.get(n) - other.get(n)).abs())
            .fold((&self.tail - &other.tail).abs(), |acc, d| acc.max(d))
    }

    /// Equality modulo null sequences: the tails agree.
    pub fn quotient_equal(&self, other: &SeqRep) -> bool {
        self.tail == other.tail
    }

    /// `limsup |a_n|`.
    pub fn quotient_seminorm(&self) -> Rational {
        self.tail.abs()
    }
}

impl fmt::Display for SeqRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("prefix=[")?;
        for (idx, v) in self.prefix.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]; tail={}", self.tail)
    }
}

impl FromStr for SeqRep {
    type Err = ParseError;

    /// Parses `prefix=[q1,...]; tail=<rational>`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fields = split_fields(s);
        let [(p_off, prefix), (t_off, tail)] = fields.as_slice() else {
            return Err(ParseError::new(
                0,
                "expected `prefix=[...]; tail=<rational>`",
            ));
        };
        let list = prefix
            .strip_prefix("prefix=")
            .ok_or_else(|| ParseError::new(*p_off, "expected `prefix=`"))?;
        let inner = list
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(p_off + 7, "expected `[...]`"))?;
        let mut values = Vec::new();
        if !inner.trim().is_empty() {
            let mut cursor = p_off + 8;
            for item in inner.split(',') {
                values.push(parse_rational(item, cursor)?);
                cursor += item.len() + 1;
            }
        }
        let tail = tail
            .strip_prefix("tail=")
            .ok_or_else(|| ParseError::new(*t_off, "expected `tail=`"))?;
        Ok(SeqRep::new(values, parse_rational(tail, t_off + 5)?))
    }
}

/// Samples a half-line function at `1, 2, ..., N` where `N` is the least
/// integer at or beyond the last breakpoint; the tail carries the rest.
pub fn sample_e(f: &PLFunction) -> Result<SeqRep> {
    if *f.domain() != Domain::HalfLine {
        return Err(Error::DomainMismatch(
            f.domain().to_string(),
            Domain::HalfLine.to_string(),
        ));
    }
    let last = &f.points()[f.points().len() - 1].0;
    let n = last.ceil().to_integer();
    let n = u64::try_from(n).map_err(|_| Error::Precondition("breakpoint too large".into()))?;
    let prefix = (1..=n)
        .map(|k| f.eval(&Rational::from_integer(k.into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeqRep::new(prefix, f.tail().clone()))
}

/// Linear interpolation of `0 = a_0, a_1, a_2, ...` at the integers,
/// constant `tail` from `prefix.len() + 1` on.
pub fn interpolate_r(a: &SeqRep) -> PLFunction {
    let len = a.prefix().len();
    let points = (0..=len + 1)
        .map(|n| (Rational::from_integer(n.into()), a.get(n)))
        .collect();
    PLFunction::normalized(Domain::HalfLine, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};
    use proptest::prelude::*;

    fn pl(s: &str) -> PLFunction {
        s.parse().unwrap()
    }

    #[test]
    fn eval_and_constants() {
        let zero = PLFunction::constant(Domain::unit_interval(), int(0));
        assert_eq!(zero.eval(&q(1, 3)).unwrap(), int(0));
        assert!(zero.eval(&int(2)).is_err());
        let h = pl("domain=halfline; points=(0,0),(2,1); tail=1");
        assert_eq!(h.eval(&int(1)).unwrap(), q(1, 2));
        assert_eq!(h.eval(&int(100)).unwrap(), int(1));
        assert!(h.eval(&int(-1)).is_err());
    }

    #[test]
    fn clamp_inserts_crossings() {
        let f = PLFunction::linear(Domain::unit_interval(), int(2), int(0)).unwrap();
        let c = f.clamp(&int(-1), &int(1)).unwrap();
        assert_eq!(
            c.points(),
            &[
                (int(-1), int(-1)),
                (q(-1, 2), int(-1)),
                (q(1, 2), int(1)),
                (int(1), int(1))
            ]
        );
        assert!(f.clamp(&int(1), &int(0)).is_err());
        assert_eq!(f.dist(&f).unwrap(), int(0));
    }

    #[test]
    fn clamp_shift_examples() {
        let zero = PLFunction::constant(Domain::unit_interval(), int(0));
        let t0 = clamp_shift(&zero).unwrap();
        assert_eq!(
            t0,
            pl("domain=[-1,1]; points=(-1,-1),(-1/2,-1),(1/2,1),(1,1)")
        );
        assert_eq!(t0.dist(&zero).unwrap(), int(1));

        let one = PLFunction::constant(Domain::unit_interval(), int(1));
        let t1 = clamp_shift(&one).unwrap();
        assert_eq!(t1, pl("domain=[-1,1]; points=(-1,-1),(0,1),(1,1)"));
        assert_eq!(t1.eval(&q(-1, 4)).unwrap(), q(1, 2));

        let big = PLFunction::constant(Domain::unit_interval(), int(2));
        assert!(clamp_shift(&big).is_err());
        let h = PLFunction::constant(Domain::HalfLine, int(0));
        assert!(clamp_shift(&h).is_err());
    }

    #[test]
    fn discrepancy_examples() {
        let zero = PLFunction::constant(Domain::unit_interval(), int(0));
        assert_eq!(pl_discrepancy(&zero).unwrap(), int(1));
        let one = PLFunction::constant(Domain::unit_interval(), int(1));
        assert_eq!(pl_discrepancy(&one).unwrap(), int(-1));
        let c = clamp_shift(&zero).unwrap();
        let t = pl_discrepancy(&c).unwrap();
        assert!(q(-1, 2) < t && t < q(1, 2));
        assert_ne!(
            clamp_shift(&c).unwrap().eval(&t).unwrap(),
            c.eval(&t).unwrap()
        );
    }

    #[test]
    fn normalization_and_validation() {
        let f = pl("domain=[0,3]; points=(0,0),(1,1),(2,2),(3,2)");
        assert_eq!(f.points().len(), 3);
        let h = pl("domain=halfline; points=(0,1),(1,2),(5,2)");
        assert_eq!(h.points(), &[(int(0), int(1)), (int(1), int(2))]);
        assert!("domain=[0,1]; points=(0,0),(1/2,1)"
            .parse::<PLFunction>()
            .is_err());
        assert!("domain=halfline; points=(1,0)"
            .parse::<PLFunction>()
            .is_err());
        assert!("domain=halfline; points=(0,0),(0,1)"
            .parse::<PLFunction>()
            .is_err());
        assert!("domain=halfline; points=(0,0),(1,1); tail=0"
            .parse::<PLFunction>()
            .is_err());
        assert!("domain=[1,0]; points=(1,0),(0,0)"
            .parse::<PLFunction>()
            .is_err());
        let err = "domain=halfline; points=(0,0) (1,1)"
            .parse::<PLFunction>()
            .unwrap_err();
        assert_eq!(err.position, 30);
        assert!(h.add_affine(&int(1), &int(0)).is_err());
    }

    #[test]
    fn dist_requires_same_domain() {
        let a = PLFunction::constant(Domain::unit_interval(), int(0));
        let b = PLFunction::constant(Domain::HalfLine, int(0));
        assert!(matches!(a.dist(&b), Err(Error::DomainMismatch(..))));
        assert!(a.equals(&b).is_err());
    }

    #[test]
    fn sampling_examples() {
        let c = PLFunction::constant(Domain::HalfLine, q(2, 3));
        assert_eq!(sample_e(&c).unwrap(), SeqRep::new(vec![q(2, 3)], q(2, 3)));
        assert!(sample_e(&c).unwrap().prefix().is_empty());
        let h = pl("domain=halfline; points=(0,0),(2,1); tail=1");
        let s = sample_e(&h).unwrap();
        assert_eq!((s.get(1), s.get(2), s.get(3)), (q(1, 2), int(1), int(1)));
        assert_eq!(s, SeqRep::new(vec![q(1, 2), int(1)], int(1)));
        let g = pl("domain=halfline; points=(0,0),(5/2,5); tail=5");
        assert_eq!(
            sample_e(&g).unwrap(),
            SeqRep::new(vec![int(2), int(4)], int(5))
        );
        assert!(sample_e(&PLFunction::constant(Domain::unit_interval(), int(0))).is_err());
    }

    #[test]
    fn interpolation_examples() {
        let a = SeqRep::new(vec![int(1)], int(0));
        let r = interpolate_r(&a);
        // (2 - 3/2) * a_1 + (3/2 - 1) * a_2
        assert_eq!(
            r.eval(&q(3, 2)).unwrap(),
            q(1, 2) * int(1) + q(1, 2) * int(0)
        );
        assert_eq!(r.eval(&q(1, 2)).unwrap(), q(1, 2));
        let zero = SeqRep::new(vec![], int(0));
        assert_eq!(
            interpolate_r(&zero),
            PLFunction::constant(Domain::HalfLine, int(0))
        );
        assert_eq!(sample_e(&interpolate_r(&a)).unwrap(), a);
    }

    #[test]
    fn quotient_examples() {
        let a = SeqRep::new(vec![int(5), int(7)], int(0));
        let b = SeqRep::new(vec![], int(0));
        assert!(a.quotient_equal(&b));
        assert!(!SeqRep::new(vec![], int(1)).quotient_equal(&b));
        assert_eq!(
            SeqRep::new(vec![int(100)], q(1, 2)).quotient_seminorm(),
            q(1, 2)
        );
        assert_eq!(SeqRep::new(vec![int(1), int(0)], int(0)).prefix().len(), 1);
    }

    #[test]
    fn text_forms() {
        let s: SeqRep = "prefix=[1/2, -3]; tail=1".parse().unwrap();
        assert_eq!(s, SeqRep::new(vec![q(1, 2), int(-3)], int(1)));
        assert_eq!(s.to_string(), "prefix=[1/2,-3]; tail=1");
        assert_eq!(
            "prefix=[]; tail=0".parse::<SeqRep>().unwrap(),
            SeqRep::default()
        );
        assert!("prefix=[1,x]; tail=0".parse::<SeqRep>().is_err());
        assert!("tail=0".parse::<SeqRep>().is_err());
        let f = pl("domain=[-1,1]; points=(-1,0),(1,1/2)");
        assert_eq!(
            f.to_string(),
            "domain=[-1,1]; points=(-1,0),(1,1/2); tail=1/2"
        );
    }

    fn value() -> impl Strategy<Value = Rational> {
        (-8i64..=8, 1i64..=4).prop_map(|(n, d)| q(n, d))
    }

    fn unit_value() -> impl Strategy<Value = Rational> {
        (1i64..=6).prop_flat_map(|d| (-d..=d).prop_map(move |n| q(n, d)))
    }

    fn seq() -> impl Strategy<Value = SeqRep> {
        (prop::collection::vec(value(), 0..8), value()).prop_map(|(p, t)| SeqRep::new(p, t))
    }

    fn unit_pl() -> impl Strategy<Value = PLFunction> {
        prop::collection::btree_set(-7i64..=7, 0..5).prop_flat_map(|inner| {
            let mut xs = vec![q(-1, 1)];
            xs.extend(inner.into_iter().map(|n| q(n, 8)));
            xs.push(q(1, 1));
            let n = xs.len();
            prop::collection::vec(unit_value(), n).prop_map(move |ys| {
                PLFunction::new(
                    Domain::unit_interval(),
                    xs.iter().cloned().zip(ys).collect(),
                )
                .unwrap()
            })
        })
    }

    fn sample_points() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-64i64..=64).prop_map(|n| q(n, 64)), 1..20)
    }

    proptest! {
        #[test]
        fn retraction_identity(a in seq()) {
            prop_assert_eq!(sample_e(&interpolate_r(&a)).unwrap(), a);
        }

        #[test]
        fn retraction_maps_are_nonexpansive(a in seq(), b in seq()) {
            let (ra, rb) = (interpolate_r(&a), interpolate_r(&b));
            prop_assert!(ra.dist(&rb).unwrap() <= a.dist(&b));
            let (ea, eb) = (sample_e(&ra).unwrap(), sample_e(&rb).unwrap());
            prop_assert!(ea.dist(&eb) <= ra.dist(&rb).unwrap());
        }

        #[test]
        fn clamp_shift_properties(f in unit_pl(), g in unit_pl()) {
            let (tf, tg) = (clamp_shift(&f).unwrap(), clamp_shift(&g).unwrap());
            prop_assert!(tf.dist(&tg).unwrap() <= f.dist(&g).unwrap());
            prop_assert!(tf.sup_norm() <= int(1));
            let t = pl_discrepancy(&f).unwrap();
            prop_assert_ne!(tf.eval(&t).unwrap(), f.eval(&t).unwrap());
        }

        #[test]
        fn pointwise_oracles(f in unit_pl(), p in value(), c in value(), ts in sample_points()) {
            let shifted = f.add_affine(&p, &c).unwrap();
            let clamped = f.clamp(&q(-1, 3), &q(1, 2)).unwrap();
            for t in &ts {
                let v = f.eval(t).unwrap();
                prop_assert_eq!(shifted.eval(t).unwrap(), &v + &p * t + &c);
                prop_assert_eq!(clamped.eval(t).unwrap(), v.clamp(q(-1, 3), q(1, 2)));
            }
        }

        #[test]
        fn text_round_trip(f in unit_pl(), a in seq()) {
            prop_assert_eq!(f.to_string().parse::<PLFunction>().unwrap(), f);
            prop_assert_eq!(a.to_string().parse::<SeqRep>().unwrap(), a);
        }
    }
}
