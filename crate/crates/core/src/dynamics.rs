// SPDX-License-Identifier: Apache-2.0

//! Nonexpansive operators on step functions and the checks around them.
//!
//! The shifts are total on [`StepFn`]; membership of inputs in the domain
//! ball is checked by the harness functions here, never by evaluation, so a
//! deliberately broken operator can be fed through the same checks.
//!
//! For a step function with finitely many deviations, the values below any
//! limit `b` are eventually equal to the tail. Both the inf-of-sups and the
//! sup-of-infs over the interval below `b` therefore equal the tail, which is
//! what [`double_shift`] and [`single_shift`] use. [`limit_value_oracle`]
//! evaluates the defining formula directly and is kept as the cross-check.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, OrdinalKind};
use crate::rational::Rational;
use crate::stepfn::{fresh_beyond, Ball, StepFn};

type Action = dyn Fn(&StepFn) -> StepFn + Send + Sync;

/// A named operator together with the ball it is meant to act on.
#[derive(Clone)]
pub struct OperatorDescriptor {
    pub name: String,
    pub domain_ball: Ball,
    /// Restricts the domain further to functions with zero tail.
    pub zero_tail: bool,
    pub metadata: String,
    evaluate: Arc<Action>,
}

impl OperatorDescriptor {
    pub fn new(
        name: impl Into<String>,
        domain_ball: Ball,
        metadata: impl Into<String>,
        evaluate: impl Fn(&StepFn) -> StepFn + Send + Sync + 'static,
    ) -> Self {
        OperatorDescriptor {
            name: name.into(),
            domain_ball,
            zero_tail: false,
            metadata: metadata.into(),
            evaluate: Arc::new(evaluate),
        }
    }

    pub fn double_shift() -> Self {
        OperatorDescriptor::new(
            "double-shift",
            Ball::unit(),
            "1 and -1 in the first two places, values moved two places right, \
             limit places filled by limsup and liminf",
            double_shift,
        )
    }

    /// The single shift on the zero-tail part of the unit ball.
    pub fn single_shift() -> Self {
        let mut op = OperatorDescriptor::new(
            "single-shift0",
            Ball::unit(),
            "1 in the first place, values moved one place right, limit places filled by limsup",
            single_shift,
        );
        op.zero_tail = true;
        op
    }

    /// `f -> (1 - |g|) f + g`. Fails if `||g|| > 1`.
    pub fn gap(g: StepFn) -> Result<Self> {
        check_gap_weight(&g)?;
        Ok(OperatorDescriptor::new(
            "gap",
            Ball::unit(),
            format!("(1 - |g|) f + g with g = {g}"),
            move |f| gap_map_unchecked(&g, f),
        ))
    }

    /// `f -> (1 - g) f + g`. Fails unless `0 <= g <= 1`.
    pub fn ppoint(g: StepFn) -> Result<Self> {
        check_ppoint_weight(&g)?;
        Ok(OperatorDescriptor::new(
            "ppoint",
            Ball::unit(),
            format!("(1 - g) f + g with g = {g}"),
            move |f| ppoint_map_unchecked(&g, f),
        ))
    }

    pub fn apply(&self, f: &StepFn) -> StepFn {
        (self.evaluate)(f)
    }

    pub fn in_domain(&self, f: &StepFn) -> bool {
        f.in_ball(&self.domain_ball) && (!self.zero_tail || f.tail().is_zero())
    }

    fn require_domain(&self, f: &StepFn) -> Result<()> {
        if self.in_domain(f) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{f} is outside the domain of {}",
                self.name
            )))
        }
    }
}

impl fmt::Debug for OperatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorDescriptor")
            .field("name", &self.name)
            .field("domain_ball", &self.domain_ball)
            .field("zero_tail", &self.zero_tail)
            .finish_non_exhaustive()
    }
}

/// The transfinite two-place shift.
///
/// `Tf(0) = 1`, `Tf(1) = -1`, `Tf(a+2) = f(a)`, and at a limit `b` and at
/// `b+1` the limsup and liminf of `f` below `b`, which are both the tail.
pub fn double_shift(f: &StepFn) -> StepFn {
    let shifted = f
        .deviations()
        .iter()
        .map(|(k, v)| (k.add_nat(2), v.clone()));
    let head = [
        (Ordinal::zero(), Rational::one()),
        (Ordinal::nat(1), -Rational::one()),
    ];
    StepFn::new(f.tail().clone(), head.into_iter().chain(shifted))
}

/// The transfinite one-place shift: `Sf(0) = 1`, `Sf(a+1) = f(a)`, and the
/// limsup of `f` below each limit.
pub fn single_shift(f: &StepFn) -> StepFn {
    let shifted = f.deviations().iter().map(|(k, v)| (k.succ(), v.clone()));
    StepFn::new(
        f.tail().clone(),
        std::iter::once((Ordinal::zero(), Rational::one())).chain(shifted),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitFormula {
    /// `inf_{a<b} sup_{a<c<b} f(c)`
    InfSup,
    /// `sup_{a<b} inf_{a<c<b} f(c)`
    SupInf,
}

/// Evaluates the limit-place formula at the limit ordinal `beta` by brute
/// force over the cut points where the inner extremum can change.
pub fn limit_value_oracle(f: &StepFn, beta: &Ordinal, which: LimitFormula) -> Result<Rational> {
    if beta.classify() != OrdinalKind::Limit {
        return Err(Error::NotLimit(beta.to_string()));
    }
    let below: Vec<(&Ordinal, &Rational)> = f.deviations().range(..beta).collect();
    let cuts = std::iter::once(Ordinal::zero()).chain(below.iter().map(|(k, _)| k.succ()));
    let inner = |cut: &Ordinal| {
        let values = below
            .iter()
            .filter(|(k, _)| *k > cut)
            .map(|(_, v)| *v)
            .chain(std::iter::once(f.tail()));
        match which {
            LimitFormula::InfSup => values.max(),
            LimitFormula::SupInf => values.min(),
        }
        .expect("tail always present")
        .clone()
    };
    let candidates = cuts.map(|c| inner(&c));
    let value = match which {
        LimitFormula::InfSup => candidates.min(),
        LimitFormula::SupInf => candidates.max(),
    };
    Ok(value.expect("cut 0 always present"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Ok,
    Violation(Violation),
}

impl Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Check::Ok)
    }
}

/// A failed property: the offending inputs and the ordinal where it shows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub inputs: Vec<StepFn>,
    pub witness: Ordinal,
    pub expected: String,
    pub actual: String,
}

/// Checks `dist(Tf, Tg) <= dist(f, g)` exactly.
pub fn check_nonexpansive(op: &OperatorDescriptor, f: &StepFn, g: &StepFn) -> Result<Check> {
    op.require_domain(f)?;
    op.require_domain(g)?;
    let input_dist = f.dist(g);
    let (tf, tg) = (op.apply(f), op.apply(g));
    if tf.dist(&tg) <= input_dist {
        return Ok(Check::Ok);
    }
    let keys: BTreeSet<&Ordinal> = tf.keys().chain(tg.keys()).collect();
    let fresh = fresh_beyond(keys.iter().copied());
    let witness = keys
        .into_iter()
        .cloned()
        .chain(std::iter::once(fresh))
        .find(|k| (tf.eval(k) - tg.eval(k)).abs() > input_dist)
        .expect("sup distance is attained on the merged keys or the tail");
    let gap = (tf.eval(&witness) - tg.eval(&witness)).abs();
    Ok(Check::Violation(Violation {
        inputs: vec![f.clone(), g.clone()],
        witness,
        expected: format!("output gap <= {input_dist}"),
        actual: gap.to_string(),
    }))
}

/// Checks that `op` maps `f` back into its domain ball.
pub fn check_ball_invariance(op: &OperatorDescriptor, f: &StepFn) -> Result<Check> {
    op.require_domain(f)?;
    let tf = op.apply(f);
    if op.in_domain(&tf) {
        return Ok(Check::Ok);
    }
    let center = op.domain_ball.center();
    let radius = op.domain_ball.radius();
    let witness = if op.zero_tail && !tf.tail().is_zero() {
        tf.fresh_ordinal()
    } else {
        let keys: BTreeSet<&Ordinal> = tf.keys().chain(center.keys()).collect();
        let fresh = fresh_beyond(keys.iter().copied());
        keys.into_iter()
            .cloned()
            .chain(std::iter::once(fresh))
            .find(|k| (tf.eval(k) - center.eval(k)).abs() > *radius)
            .expect("sup distance is attained on the merged keys or the tail")
    };
    Ok(Check::Violation(Violation {
        inputs: vec![f.clone()],
        actual: tf.eval(&witness).to_string(),
        witness,
        expected: format!("value within {radius} of the domain ball center"),
    }))
}

/// Finds an ordinal where `op(f)` and `f` differ.
///
/// The search covers the deviation keys of both, `0`, `1` and one ordinal
/// beyond all of them; two step functions equal on that set are equal. The
/// smallest differing ordinal is returned.
pub fn discrepancy_witness(op: &OperatorDescriptor, f: &StepFn) -> Result<Ordinal> {
    op.require_domain(f)?;
    let tf = op.apply(f);
    let mut keys: BTreeSet<Ordinal> = f.keys().chain(tf.keys()).cloned().collect();
    keys.insert(Ordinal::zero());
    keys.insert(Ordinal::nat(1));
    keys.insert(fresh_beyond(&keys));
    keys.into_iter()
        .find(|k| tf.eval(k) != f.eval(k))
        .ok_or_else(|| Error::UnexpectedFixedPoint(format!("{} fixes {f}", op.name)))
}

/// The least limit ordinal `m` with `(f(m), f(m+1)) != (1, -1)`.
///
/// Only limits at or next to a deviation key can carry the pair `(1, -1)`;
/// every other limit sees `(tail, tail)`. Starting from `w`, step to the next
/// limit while the current one carries the pair.
pub fn minimal_bad_limit(f: &StepFn) -> Ordinal {
    let one = Rational::one();
    let minus_one = -Rational::one();
    let mut limit = Ordinal::omega();
    while *f.eval(&limit) == one && *f.eval(&limit.succ()) == minus_one {
        limit = limit.next_limit();
    }
    limit
}

fn check_gap_weight(g: &StepFn) -> Result<()> {
    if g.sup_norm() > Rational::one() {
        return Err(Error::Precondition(format!("||g|| > 1 for g = {g}")));
    }
    Ok(())
}

fn gap_map_unchecked(g: &StepFn, f: &StepFn) -> StepFn {
    let weight = StepFn::constant(Rational::one()).sub(&g.abs());
    weight.mul(f).add(g)
}

/// `(1 - |g|) f + g`, for `||g|| <= 1`.
pub fn gap_map(g: &StepFn, f: &StepFn) -> Result<StepFn> {
    check_gap_weight(g)?;
    Ok(gap_map_unchecked(g, f))
}

/// The fixed point `sign(g)` of the gap map, checked exactly.
pub fn gap_fixed_point(g: &StepFn) -> Result<StepFn> {
    check_gap_weight(g)?;
    let s = g.sign();
    if gap_map_unchecked(g, &s) != s {
        return Err(Error::Verification(format!(
            "sign({g}) is not fixed by the gap map"
        )));
    }
    if g.mul(&s) != g.abs() {
        return Err(Error::Verification(format!(
            "g * sign(g) != |g| for g = {g}"
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-1",
            Sign::Zero => "0",
            Sign::Positive => "+1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedSigns {
    pub values: Vec<(String, Sign)>,
    /// The last two nonzero forced values disagree, so the samples admit no
    /// common limit value.
    pub obstruction: bool,
}

/// The sign any `f` with `g = f |g|` must take at each sample of `g`.
pub fn forced_sign_values(samples: &[(String, Rational)]) -> ForcedSigns {
    let values: Vec<(String, Sign)> = samples
        .iter()
        .map(|(label, v)| (label.clone(), Sign::of(v)))
        .collect();
    let nonzero: Vec<Sign> = values
        .iter()
        .map(|(_, s)| *s)
        .filter(|s| *s != Sign::Zero)
        .collect();
    let obstruction = matches!(nonzero.as_slice(), [.., a, b] if a != b);
    ForcedSigns {
        values,
        obstruction,
    }
}

/// Samples `g(x_n) = (-1)^n / n` for `n = 1..=count`, labelled `x1, x2, ...`.
pub fn alternating_samples(count: u64) -> Vec<(String, Rational)> {
    (1..=count)
        .map(|n| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let n = i64::try_from(n).expect("sample count fits in i64");
            (format!("x{n}"), crate::rational::q(sign, n))
        })
        .collect()
}

fn check_ppoint_weight(g: &StepFn) -> Result<()> {
    if !g.bounded_by(&Rational::zero(), &Rational::one()) {
        return Err(Error::Precondition(format!("g = {g} is not within [0, 1]")));
    }
    Ok(())
}

fn ppoint_map_unchecked(g: &StepFn, f: &StepFn) -> StepFn {
    StepFn::constant(Rational::one()).sub(g).mul(f).add(g)
}

/// `(1 - g) f + g`, for `0 <= g <= 1`.
pub fn ppoint_map(g: &StepFn, f: &StepFn) -> Result<StepFn> {
    check_ppoint_weight(g)?;
    Ok(ppoint_map_unchecked(g, f))
}

/// For `0 <= g <= 1` vanishing at the tail, the indicator of the support of
/// `g` is a fixed point of [`ppoint_map`], and `g (1 - f) = 0`.
pub fn ppoint_fixed_point(g: &StepFn) -> Result<StepFn> {
    check_ppoint_weight(g)?;
    if !g.tail().is_zero() {
        return Err(Error::Precondition(format!(
            "g = {g} does not vanish at the tail"
        )));
    }
    let f = StepFn::new(
        Rational::zero(),
        g.keys().map(|k| (k.clone(), Rational::one())),
    );
    if ppoint_map_unchecked(g, &f) != f {
        return Err(Error::Verification(format!("{f} is not fixed for g = {g}")));
    }
    if g.mul(&StepFn::constant(Rational::one()).sub(&f)) != StepFn::zero() {
        return Err(Error::Verification(format!("g (1 - f) != 0 for g = {g}")));
    }
    Ok(f)
}

/// Transfers a fixed point through a retraction pair.
///
/// `embed: Source -> Target` and `retract: Target -> Source` with
/// `embed . retract` the identity on `Target`. If `g` is fixed by
/// `retract . op . embed`, then `embed(g)` is fixed by `op`; that is checked
/// and returned.
pub fn transfer_fixed_point<Source, Target, E, R, T>(
    embed: E,
    retract: R,
    op: T,
    g: &Source,
) -> Result<Target>
where
    Source: PartialEq + fmt::Display,
    Target: PartialEq + fmt::Display,
    E: Fn(&Source) -> Target,
    R: Fn(&Target) -> Source,
    T: Fn(&Target) -> Target,
{
    let f = embed(g);
    let tf = op(&f);
    if retract(&tf) != *g {
        return Err(Error::Precondition(format!(
            "{g} is not fixed by the conjugated operator"
        )));
    }
    if tf != f {
        return Err(Error::Verification(format!(
            "transferred point {f} is moved to {tf}"
        )));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn sf(s: &str) -> StepFn {
        s.parse().unwrap()
    }

    /// Pointwise evaluation of the defining clauses of the double shift.
    fn double_shift_clause(f: &StepFn, at: &Ordinal) -> Rational {
        let (limit, n) = at.split_finite();
        match (limit.is_zero(), n) {
            (true, 0) => int(1),
            (true, 1) => int(-1),
            (false, 0) => limit_value_oracle(f, &limit, LimitFormula::InfSup).unwrap(),
            (false, 1) => limit_value_oracle(f, &limit, LimitFormula::SupInf).unwrap(),
            (_, n) => f.eval(&limit.add_nat(n - 2)).clone(),
        }
    }

    #[test]
    fn double_shift_examples() {
        assert_eq!(double_shift(&StepFn::zero()), sf("tail=0; [0:1, 1:-1]"));
        let f = sf("tail=0; [w:3]");
        let tf = double_shift(&f);
        assert_eq!(tf, sf("tail=0; [0:1, 1:-1, w+2:3]"));
        assert_eq!(*tf.eval(&o("w")), int(0));
        assert_eq!(*tf.eval(&o("w+1")), int(0));
        assert_eq!(
            double_shift(&sf("tail=1; [0:-1]")),
            sf("tail=1; [1:-1, 2:-1]")
        );
    }

    #[test]
    fn double_shift_matches_clauses() {
        let f = sf("tail=1/2; [0:-1, 3:1, w:1, w+1:-1, w+5:0, w^2:-1/3, w^2+w+1:1]");
        let tf = double_shift(&f);
        for at in [
            "0", "1", "2", "3", "5", "w", "w+1", "w+2", "w+3", "w+7", "w*2", "w*2+1", "w^2",
            "w^2+1", "w^2+2", "w^2+w+3", "w^3",
        ] {
            let at = o(at);
            assert_eq!(*tf.eval(&at), double_shift_clause(&f, &at), "at {at}");
        }
    }

    #[test]
    fn single_shift_examples() {
        assert_eq!(single_shift(&StepFn::zero()), sf("tail=0; [0:1]"));
        assert_eq!(single_shift(&sf("tail=0; [2:5]")), sf("tail=0; [0:1, 3:5]"));
        let one = StepFn::constant(int(1));
        assert_eq!(single_shift(&one), one);
    }

    #[test]
    fn limit_oracle_examples() {
        let c = StepFn::constant(q(2, 3));
        assert_eq!(
            limit_value_oracle(&c, &o("w"), LimitFormula::InfSup).unwrap(),
            q(2, 3)
        );
        let f = sf("tail=0; [3:7]");
        assert_eq!(
            limit_value_oracle(&f, &o("w"), LimitFormula::InfSup).unwrap(),
            int(0)
        );
        assert_eq!(
            limit_value_oracle(&f, &o("w"), LimitFormula::SupInf).unwrap(),
            int(0)
        );
        assert!(matches!(
            limit_value_oracle(&f, &o("w+1"), LimitFormula::InfSup),
            Err(Error::NotLimit(_))
        ));
        assert!(limit_value_oracle(&f, &Ordinal::zero(), LimitFormula::InfSup).is_err());
    }

    #[test]
    fn nonexpansive_checks() {
        let op = OperatorDescriptor::double_shift();
        let f = sf("tail=1/2; [w:-1]");
        assert_eq!(check_nonexpansive(&op, &f, &f).unwrap(), Check::Ok);
        let (a, b) = (StepFn::zero(), StepFn::constant(q(1, 2)));
        assert!(check_nonexpansive(&op, &a, &b).unwrap().is_ok());
        assert_eq!(double_shift(&a).dist(&double_shift(&b)), q(1, 2));

        let dilation = OperatorDescriptor::new("dilation", Ball::unit(), "", |f| f.scale(&int(2)));
        match check_nonexpansive(&dilation, &a, &b).unwrap() {
            Check::Violation(v) => {
                assert_eq!(v.inputs, vec![a.clone(), b.clone()]);
                assert_eq!(v.actual, "1");
            }
            Check::Ok => panic!("dilation passed"),
        }
        let outside = StepFn::constant(int(2));
        assert!(matches!(
            check_nonexpansive(&op, &outside, &a),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ball_invariance_checks() {
        let op = OperatorDescriptor::double_shift();
        assert!(check_ball_invariance(&op, &StepFn::zero()).unwrap().is_ok());
        let f = sf("tail=0; [w:1]");
        assert!(check_ball_invariance(&op, &f).unwrap().is_ok());
        let translate = OperatorDescriptor::new("translate", Ball::unit(), "", |f| {
            f.add(&StepFn::constant(int(1)))
        });
        assert!(
            !check_ball_invariance(&translate, &StepFn::constant(q(1, 2)))
                .unwrap()
                .is_ok()
        );
        assert!(check_ball_invariance(&op, &StepFn::constant(int(3))).is_err());
    }

    #[test]
    fn witness_examples() {
        let op = OperatorDescriptor::double_shift();
        assert_eq!(
            discrepancy_witness(&op, &StepFn::zero()).unwrap(),
            Ordinal::zero()
        );
        let f = sf("tail=0; [0:1, 1:-1]");
        assert_eq!(discrepancy_witness(&op, &f).unwrap(), Ordinal::nat(2));
        let f = sf("tail=1; [1:-1]");
        assert_eq!(discrepancy_witness(&op, &f).unwrap(), Ordinal::nat(3));
    }

    #[test]
    fn witness_reports_fixed_points() {
        let identity = OperatorDescriptor::new("identity", Ball::unit(), "", StepFn::clone);
        assert!(matches!(
            discrepancy_witness(&identity, &StepFn::zero()),
            Err(Error::UnexpectedFixedPoint(_))
        ));
        let s = OperatorDescriptor::single_shift();
        assert!(discrepancy_witness(&s, &StepFn::constant(int(1))).is_err());
        assert_eq!(
            discrepancy_witness(&s, &StepFn::zero()).unwrap(),
            Ordinal::zero()
        );
    }

    #[test]
    fn minimal_bad_limit_examples() {
        assert_eq!(minimal_bad_limit(&StepFn::zero()), o("w"));
        assert_eq!(minimal_bad_limit(&sf("tail=0; [w:1, w+1:-1]")), o("w*2"));
        assert_eq!(minimal_bad_limit(&StepFn::constant(int(1))), o("w"));
        let f = sf("tail=0; [w:1, w+1:-1, w*2:1, w*2+1:-1, w^2:1, w^2+1:-1]");
        assert_eq!(minimal_bad_limit(&f), o("w*3"));
    }

    #[test]
    fn gap_map_examples() {
        let f = sf("tail=1/2; [3:-1]");
        assert_eq!(gap_map(&StepFn::zero(), &f).unwrap(), f);
        assert_eq!(
            gap_map(&StepFn::constant(int(1)), &f).unwrap(),
            StepFn::constant(int(1))
        );
        let g = sf("tail=1/3; [5:-1/2, 7:0]");
        assert_eq!(gap_map(&g, &g.sign()).unwrap(), g.sign());
        assert!(gap_map(&StepFn::constant(int(2)), &f).is_err());
    }

    #[test]
    fn gap_fixed_point_examples() {
        assert_eq!(gap_fixed_point(&StepFn::zero()).unwrap(), StepFn::zero());
        assert_eq!(
            gap_fixed_point(&sf("tail=1/3; [5:-1/2]")).unwrap(),
            sf("tail=1; [5:-1]")
        );
        assert_eq!(
            gap_fixed_point(&sf("tail=0; [0:1]")).unwrap(),
            sf("tail=0; [0:1]")
        );
        assert!(gap_fixed_point(&sf("tail=0; [0:3/2]")).is_err());
    }

    #[test]
    fn forced_signs() {
        let samples = vec![
            ("x1".to_string(), int(-1)),
            ("x2".to_string(), q(1, 2)),
            ("x3".to_string(), q(-1, 3)),
        ];
        assert_eq!(alternating_samples(3), samples);
        let forced = forced_sign_values(&samples);
        let signs: Vec<i8> = forced.values.iter().map(|(_, s)| s.as_i8()).collect();
        assert_eq!(signs, vec![-1, 1, -1]);
        assert!(forced.obstruction);

        let zeros = vec![("a".to_string(), int(0)), ("b".to_string(), int(0))];
        let forced = forced_sign_values(&zeros);
        assert!(forced.values.iter().all(|(_, s)| *s == Sign::Zero));
        assert!(!forced.obstruction);

        let forced = forced_sign_values(&[("a".to_string(), int(2))]);
        assert_eq!(forced.values, vec![("a".to_string(), Sign::Positive)]);
        assert!(!forced.obstruction);
    }

    #[test]
    fn ppoint_examples() {
        let f = sf("tail=-1/2; [w:1]");
        assert_eq!(ppoint_map(&StepFn::zero(), &f).unwrap(), f);
        let g = sf("tail=0; [3:1/2]");
        let fixed = ppoint_fixed_point(&g).unwrap();
        assert_eq!(fixed, sf("tail=0; [3:1]"));
        assert_eq!(ppoint_map(&g, &fixed).unwrap(), fixed);
        assert_eq!(ppoint_fixed_point(&StepFn::zero()).unwrap(), StepFn::zero());
        assert!(ppoint_fixed_point(&sf("tail=1/2; []")).is_err());
        assert!(ppoint_map(&sf("tail=0; [1:-1/2]"), &f).is_err());
    }

    #[test]
    fn transfer_examples() {
        let g = sf("tail=1/2; [w:-1]");
        let out = transfer_fixed_point(StepFn::clone, StepFn::clone, StepFn::clone, &g).unwrap();
        assert_eq!(out, g);

        let g0 = sf("tail=-1/4; [0:1, w:0, w+3:1/2]");
        let out = transfer_fixed_point(
            StepFn::clone,
            StepFn::clone,
            |f: &StepFn| gap_map(&g0, f).unwrap(),
            &g0.sign(),
        )
        .unwrap();
        assert_eq!(out, gap_fixed_point(&g0).unwrap());

        let err = transfer_fixed_point(StepFn::clone, StepFn::clone, double_shift, &StepFn::zero());
        assert!(err.is_err());
    }

    #[test]
    fn shifts_agree_with_classical_sequences() {
        // Finite keys, tail 0: a sequence x_1, x_2, ... stored at 0, 1, ...
        let xs = [q(1, 2), int(-1), int(0), q(3, 4)];
        let f = StepFn::new(
            int(0),
            xs.iter()
                .enumerate()
                .map(|(i, v)| (Ordinal::nat(i as u64), v.clone())),
        );
        let mut c0 = vec![int(1)];
        c0.extend(xs.iter().cloned());
        let mut c = vec![int(1), int(-1)];
        c.extend(xs.iter().cloned());
        let (s, t) = (single_shift(&f), double_shift(&f));
        for n in 0..8u64 {
            let idx = n as usize;
            assert_eq!(
                *s.eval(&Ordinal::nat(n)),
                c0.get(idx).cloned().unwrap_or_default()
            );
            assert_eq!(
                *t.eval(&Ordinal::nat(n)),
                c.get(idx).cloned().unwrap_or_default()
            );
        }
    }
}
