// SPDX-License-Identifier: Apache-2.0

//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An ordinal is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents `e1 > ... > ek` (themselves ordinals) and positive
//! integer coefficients. The empty sum is `0`. Every constructor keeps the
//! representation canonical, so structural equality is ordinal equality and
//! the derived `Hash` is consistent with it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: Ordinal::zero(),
                coefficient: n,
            }],
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::nat(1))
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: 1,
            }],
        }
    }

    /// `w^2*i + w*j + k`.
    pub fn from_triple(i: u64, j: u64, k: u64) -> Self {
        let parts = [
            (Ordinal::nat(2), i),
            (Ordinal::nat(1), j),
            (Ordinal::zero(), k),
        ];
        Ordinal {
            terms: parts
                .into_iter()
                .filter(|&(_, c)| c > 0)
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything not already in Cantor normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for (idx, (_, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::Precondition(format!("term {idx} has coefficient 0")));
            }
        }
        for pair in terms.windows(2) {
            if pair[0].0 <= pair[1].0 {
                return Err(Error::Precondition(format!(
                    "exponents not strictly decreasing: {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        })
    }

    /// The `(exponent, coefficient)` pairs, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Ordinal, u64)> + '_ {
        self.terms.iter().map(|t| (&t.exponent, t.coefficient))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn classify(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdinalKind::Limit
    }

    /// Ordinal sum `self + rhs`. Terms of `self` below the leading exponent
    /// of `rhs` are absorbed.
    ///
    /// Panics if a coefficient overflows `u64`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms.iter();
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    let coefficient = t
                        .coefficient
                        .checked_add(lead.coefficient)
                        .expect("ordinal coefficient overflow");
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient,
                    });
                    rest.next();
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    pub fn add_nat(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::nat(n))
    }

    pub fn succ(&self) -> Ordinal {
        self.add_nat(1)
    }

    /// Splits `self = limit_part + n` where `limit_part` is zero or a limit.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => {
                let limit = Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                };
                (limit, t.coefficient)
            }
            _ => (self.clone(), 0),
        }
    }

    /// The least limit ordinal strictly greater than `self`.
    pub fn next_limit(&self) -> Ordinal {
        self.split_finite().0.add(&Ordinal::omega())
    }
}

/// Supremum of a finite nonempty set, which is its maximum.
pub fn sup_finite<'a, I>(ordinals: I) -> Result<Ordinal>
where
    I: IntoIterator<Item = &'a Ordinal>,
{
    ordinals
        .into_iter()
        .max()
        .cloned()
        .ok_or(Error::EmptyFamily)
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.exponent.cmp(&b.exponent) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.coefficient.cmp(&b.coefficient) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            match t.exponent.as_nat() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None => write!(f, "^({})", t.exponent)?,
            }
            if t.coefficient != 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_at(s, 0)
    }
}

/// Parses an ordinal, reporting positions relative to `offset`.
pub(crate) fn parse_at(s: &str, offset: usize) -> std::result::Result<Ordinal, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        offset,
    };
    let ord = p.ordinal()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ord)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.offset + self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> std::result::Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(self.offset + start, "natural number too large"))
    }

    fn ordinal(&mut self) -> std::result::Result<Ordinal, ParseError> {
        let mut terms: Vec<(usize, Ordinal, u64)> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let (exponent, coefficient) = self.term()?;
            terms.push((start, exponent, coefficient));
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if let [(_, e, 0)] = terms.as_slice() {
            if e.is_zero() {
                return Ok(Ordinal::zero());
            }
        }
        for (start, _, c) in &terms {
            if *c == 0 {
                return Err(ParseError::new(
                    self.offset + start,
                    "zero term is not in normal form",
                ));
            }
        }
        for pair in terms.windows(2) {
            if pair[0].1 <= pair[1].1 {
                return Err(ParseError::new(
                    self.offset + pair[1].0,
                    "exponents must be strictly decreasing",
                ));
            }
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(_, exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        })
    }

    fn term(&mut self) -> std::result::Result<(Ordinal, u64), ParseError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let mut exponent = Ordinal::nat(1);
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        exponent = self.ordinal()?;
                        if self.peek() != Some(b')') {
                            return Err(self.error("expected `)`"));
                        }
                        self.pos += 1;
                    } else {
                        exponent = Ordinal::nat(self.nat()?);
                    }
                }
                let mut coefficient = 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    coefficient = self.nat()?;
                }
                Ok((exponent, coefficient))
            }
            Some(b) if b.is_ascii_digit() => Ok((Ordinal::zero(), self.nat()?)),
            Some(b) => Err(self.error(format!("unexpected `{}`", b as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    // Ordinals below w^3 as (i, j, k) = w^2*i + w*j + k, with arithmetic done
    // directly on the triples.
    type Triple = (u64, u64, u64);

    fn triple_add(a: Triple, b: Triple) -> Triple {
        if b.0 > 0 {
            (a.0 + b.0, b.1, b.2)
        } else if b.1 > 0 {
            (a.0, a.1 + b.1, b.2)
        } else {
            (a.0, a.1, a.2 + b.2)
        }
    }

    fn triple_kind(a: Triple) -> OrdinalKind {
        match a {
            (0, 0, 0) => OrdinalKind::Zero,
            (_, _, k) if k > 0 => OrdinalKind::Successor,
            _ => OrdinalKind::Limit,
        }
    }

    fn to_ord(t: Triple) -> Ordinal {
        Ordinal::from_triple(t.0, t.1, t.2)
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert_eq!(Ordinal::omega().cmp(&Ordinal::nat(5)), Ordering::Greater);
        assert_eq!(o("w^2*3+w").cmp(&o("w^2*3+5")), Ordering::Greater);
        assert_eq!((3, 1, 0).cmp(&(3, 0, 5)), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::nat(1).add(&Ordinal::omega()), Ordinal::omega());
        assert_eq!(Ordinal::omega().add(&Ordinal::nat(1)), o("w+1"));
        assert_eq!(o("w^2+w*2").add(&o("w*3+4")), o("w^2+w*5+4"));
        assert_eq!(triple_add((1, 2, 0), (0, 3, 4)), (1, 5, 4));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Ordinal::zero().classify(), OrdinalKind::Zero);
        assert_eq!(o("w*2").classify(), OrdinalKind::Limit);
        assert_eq!(o("w^2+3").classify(), OrdinalKind::Successor);
        assert_eq!(triple_kind((1, 0, 3)), OrdinalKind::Successor);
    }

    #[test]
    fn split_finite_examples() {
        assert_eq!(Ordinal::nat(7).split_finite(), (Ordinal::zero(), 7));
        assert_eq!(o("w*2+3").split_finite(), (o("w*2"), 3));
        assert_eq!(o("w^(w)").split_finite(), (o("w^(w)"), 0));
    }

    #[test]
    fn sup_finite_examples() {
        assert_eq!(sup_finite(&[Ordinal::nat(3)]).unwrap(), Ordinal::nat(3));
        assert_eq!(sup_finite(&[o("w"), o("w+1"), o("5")]).unwrap(), o("w+1"));
        assert_eq!(sup_finite(&[o("w*2"), o("w^2")]).unwrap(), o("w^2"));
        assert_eq!(sup_finite(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(o("0"), Ordinal::zero());
        assert_eq!(o("w^2*3+w+5"), Ordinal::from_triple(3, 1, 5));
        assert_eq!(Ordinal::omega().add_nat(2).to_string(), "w+2");
        assert_eq!(o("w^1*1").to_string(), "w");
        assert_eq!(o("w^(w+1)*2+w^(w)+w^3").to_string(), "w^(w+1)*2+w^(w)+w^3");
        assert_eq!(o("w^(w)"), Ordinal::omega_pow(Ordinal::omega()));
        assert_eq!(o(" w * 2 + 1 "), o("w*2+1"));
    }

    #[test]
    fn parse_rejects_non_normal_form() {
        for bad in [
            "w^w", "w+w^2", "3+4", "w+w", "w*0", "0+w", "w+0", "", "w^", "w^(w", "x", "w+",
        ] {
            assert!(bad.parse::<Ordinal>().is_err(), "{bad:?} accepted");
        }
        let err = "w+w^2".parse::<Ordinal>().unwrap_err();
        assert_eq!(err.position, 2);
        let err = "w^2+v".parse::<Ordinal>().unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn from_terms_validates() {
        assert!(Ordinal::from_terms(vec![(Ordinal::nat(1), 1), (Ordinal::nat(1), 2)]).is_err());
        assert!(Ordinal::from_terms(vec![(Ordinal::nat(1), 0)]).is_err());
        assert_eq!(
            Ordinal::from_terms(vec![(Ordinal::nat(1), 2), (Ordinal::zero(), 1)]).unwrap(),
            o("w*2+1")
        );
    }

    #[test]
    fn next_limit() {
        assert_eq!(Ordinal::zero().next_limit(), o("w"));
        assert_eq!(o("w").next_limit(), o("w*2"));
        assert_eq!(o("w^2+5").next_limit(), o("w^2+w"));
    }

    fn triple() -> impl Strategy<Value = Triple> {
        (0u64..6, 0u64..6, 0u64..6)
    }

    fn ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..4).prop_map(Ordinal::nat);
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop::collection::vec((inner, 1u64..4), 0..4).prop_map(|mut terms| {
                terms.sort_by(|a, b| b.0.cmp(&a.0));
                terms.dedup_by(|a, b| a.0 == b.0);
                Ordinal::from_terms(terms).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn triple_oracle_agrees(a in triple(), b in triple()) {
            prop_assert_eq!(to_ord(a).cmp(&to_ord(b)), a.cmp(&b));
            prop_assert_eq!(to_ord(a).add(&to_ord(b)), to_ord(triple_add(a, b)));
            prop_assert_eq!(to_ord(a).classify(), triple_kind(a));
        }

        #[test]
        fn add_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn zero_is_identity(a in ordinal()) {
            prop_assert_eq!(a.add(&Ordinal::zero()), a.clone());
            prop_assert_eq!(Ordinal::zero().add(&a), a);
        }

        #[test]
        fn right_strictly_monotone(a in ordinal(), b in ordinal(), c in ordinal()) {
            if b < c {
                prop_assert!(a.add(&b) < a.add(&c));
            }
        }

        #[test]
        fn split_reassembles(a in ordinal()) {
            let (limit, n) = a.split_finite();
            prop_assert!(limit.classify() != OrdinalKind::Successor);
            prop_assert_eq!(limit.add_nat(n), a);
        }

        #[test]
        fn format_round_trips(a in ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn cmp_is_total_order(a in triple(), b in triple(), c in triple()) {
            let (a, b, c) = (to_ord(a), to_ord(b), to_ord(c));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
