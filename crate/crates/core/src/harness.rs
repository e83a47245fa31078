// SPDX-License-Identifier: Apache-2.0

//! Seeded randomized property suites.
//!
//! Each trial draws its inputs from its own ChaCha stream, selected by the
//! trial index from the master seed, so trials can run in parallel and the
//! report is the same for any thread count. Failures are reported in trial
//! order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    self, check_ball_invariance, check_nonexpansive, discrepancy_witness, double_shift,
    limit_value_oracle, minimal_bad_limit, Check, LimitFormula, OperatorDescriptor,
};
use crate::error::{Error, Result};
use crate::hyperconvex::{helly_witness, interval_hull, pairwise_intersect, PairwiseCheck};
use crate::ordinal::{Ordinal, OrdinalKind};
use crate::pl::{self, Domain, PLFunction, SeqRep};
use crate::rational::{int, q, Rational};
use crate::stepfn::{Ball, StepFn};

/// Counterexample of a single trial, rendered in the text grammars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    fn new(
        inputs: Vec<String>,
        witness: impl fmt::Display,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Failure {
            inputs,
            witness: witness.to_string(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub failures: Vec<Failure>,
    #[serde(rename = "elapsedMillis")]
    pub elapsed_millis: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonexpansiveOp {
    DoubleShift,
    SingleShift,
    Gap,
    PPoint,
    ClampShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointOp {
    DoubleShift,
    SingleShift0,
    ClampShift,
}

impl NonexpansiveOp {
    pub const ALL: [NonexpansiveOp; 5] = [
        NonexpansiveOp::DoubleShift,
        NonexpansiveOp::SingleShift,
        NonexpansiveOp::Gap,
        NonexpansiveOp::PPoint,
        NonexpansiveOp::ClampShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NonexpansiveOp::DoubleShift => "double-shift",
            NonexpansiveOp::SingleShift => "single-shift",
            NonexpansiveOp::Gap => "gap",
            NonexpansiveOp::PPoint => "ppoint",
            NonexpansiveOp::ClampShift => "clamp-shift",
        }
    }
}

impl FixedPointOp {
    pub const ALL: [FixedPointOp; 3] = [
        FixedPointOp::DoubleShift,
        FixedPointOp::SingleShift0,
        FixedPointOp::ClampShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixedPointOp::DoubleShift => "double-shift",
            FixedPointOp::SingleShift0 => "single-shift0",
            FixedPointOp::ClampShift => "clamp-shift",
        }
    }
}

impl FromStr for NonexpansiveOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        NonexpansiveOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

impl FromStr for FixedPointOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FixedPointOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    OrdinalLaws,
    Nonexpansive(NonexpansiveOp),
    NoFixedPoint(FixedPointOp),
    LimitOracle,
    GapFixedPoint,
    Helly,
    Retraction,
    PPointFixedPoint,
}

impl Suite {
    pub fn name(&self) -> String {
        match self {
            Suite::OrdinalLaws => "ordinal-laws".into(),
            Suite::Nonexpansive(op) => format!("nonexpansive/{}", op.name()),
            Suite::NoFixedPoint(op) => format!("no-fixed-point/{}", op.name()),
            Suite::LimitOracle => "limit-oracle".into(),
            Suite::GapFixedPoint => "gap-fixed-point".into(),
            Suite::Helly => "helly".into(),
            Suite::Retraction => "retraction".into(),
            Suite::PPointFixedPoint => "ppoint-fixed-point".into(),
        }
    }

    /// Every suite, in the order the full run reports them.
    pub fn all() -> Vec<Suite> {
        let mut suites = vec![Suite::OrdinalLaws];
        suites.extend(NonexpansiveOp::ALL.map(Suite::Nonexpansive));
        suites.extend(FixedPointOp::ALL.map(Suite::NoFixedPoint));
        suites.extend([
            Suite::LimitOracle,
            Suite::GapFixedPoint,
            Suite::Helly,
            Suite::Retraction,
            Suite::PPointFixedPoint,
        ]);
        suites
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub trials: u64,
    pub seed: u64,
    /// Draw keys from ordinals up to `w^(w+1)` instead of below `w^3`.
    pub wide: bool,
    /// Fixed weight for the gap and P-point maps; random per trial if unset.
    pub g: Option<StepFn>,
}

impl SuiteConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SuiteConfig {
            trials,
            seed,
            ..SuiteConfig::default()
        }
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

type Outcome = std::result::Result<(), Failure>;

fn run_trials<F>(name: String, config: &SuiteConfig, trial: F) -> Report
where
    F: Fn(&mut ChaCha8Rng) -> Outcome + Sync,
{
    let start = Instant::now();
    let failures = (0..config.trials)
        .into_par_iter()
        .filter_map(|i| trial(&mut trial_rng(config.seed, i)).err())
        .collect();
    Report {
        suite: name,
        trials: config.trials,
        seed: config.seed,
        failures,
        elapsed_millis: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
    }
}

/// Runs one suite. Fails only if a fixed `g` violates the suite's
/// precondition.
pub fn run(suite: Suite, config: &SuiteConfig) -> Result<Report> {
    let name = suite.name();
    let wide = config.wide;
    let report = match suite {
        Suite::OrdinalLaws => run_trials(name, config, |rng| ordinal_laws_trial(rng, wide)),
        Suite::Nonexpansive(NonexpansiveOp::ClampShift) => {
            run_trials(name, config, clamp_shift_nonexpansive_trial)
        }
        Suite::Nonexpansive(op) => {
            let fixed = fixed_operator(op, config.g.clone())?;
            run_trials(name, config, |rng| {
                let descriptor = match &fixed {
                    Some(d) => d.clone(),
                    None => random_operator(rng, op, wide),
                };
                stepfn_nonexpansive_trial(rng, &descriptor, wide)
            })
        }
        Suite::NoFixedPoint(FixedPointOp::ClampShift) => {
            run_trials(name, config, clamp_shift_witness_trial)
        }
        Suite::NoFixedPoint(FixedPointOp::DoubleShift) => {
            let op = OperatorDescriptor::double_shift();
            run_trials(name, config, |rng| {
                double_shift_witness_trial(rng, &op, wide)
            })
        }
        Suite::NoFixedPoint(FixedPointOp::SingleShift0) => {
            let op = OperatorDescriptor::single_shift();
            run_trials(name, config, |rng| {
                let f = random_unit_stepfn(rng, wide, true);
                verified_witness(&op, &f)
            })
        }
        Suite::LimitOracle => run_trials(name, config, |rng| limit_oracle_trial(rng, wide)),
        Suite::GapFixedPoint => {
            if let Some(g) = &config.g {
                OperatorDescriptor::gap(g.clone())?;
            }
            let fixed = config.g.clone();
            run_trials(name, config, |rng| {
                let g = fixed
                    .clone()
                    .unwrap_or_else(|| random_unit_stepfn(rng, wide, false));
                gap_fixed_point_trial(rng, &g, wide)
            })
        }
        Suite::Helly => run_trials(name, config, |rng| helly_trial(rng, wide)),
        Suite::Retraction => run_trials(name, config, retraction_trial),
        Suite::PPointFixedPoint => {
            if let Some(g) = &config.g {
                OperatorDescriptor::ppoint(g.clone())?;
                if !g.tail().is_zero() {
                    return Err(Error::Precondition(format!(
                        "g = {g} does not vanish at the tail"
                    )));
                }
            }
            let fixed = config.g.clone();
            run_trials(name, config, |rng| {
                let g = fixed
                    .clone()
                    .unwrap_or_else(|| random_ppoint_weight(rng, wide));
                ppoint_fixed_point_trial(&g)
            })
        }
    };
    Ok(report)
}

/// Runs every suite with the same configuration.
pub fn run_all(config: &SuiteConfig) -> Result<Vec<Report>> {
    let config = SuiteConfig {
        g: None,
        ..config.clone()
    };
    Suite::all().into_iter().map(|s| run(s, &config)).collect()
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 6, 8];

/// A rational in `[-1, 1]` with a small denominator, biased towards
/// `-1, 0, 1`.
pub fn random_unit_rational<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.3) {
        return int(rng.gen_range(-1..=1));
    }
    let d = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    q(rng.gen_range(-d..=d), d)
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let d = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    q(rng.gen_range(-bound * d..=bound * d), d)
}

/// A random ordinal: below `w^3` by default, otherwise with exponents up to
/// `w+1`.
pub fn random_ordinal<R: Rng>(rng: &mut R, wide: bool) -> Ordinal {
    if !wide || rng.gen_bool(0.5) {
        return Ordinal::from_triple(
            rng.gen_range(0..3),
            rng.gen_range(0..4),
            rng.gen_range(0..6),
        );
    }
    let omega = Ordinal::omega();
    let exponents = [
        omega.succ(),
        omega,
        Ordinal::nat(3),
        Ordinal::nat(2),
        Ordinal::nat(1),
        Ordinal::zero(),
    ];
    let terms = exponents
        .into_iter()
        .filter_map(|e| rng.gen_bool(0.4).then(|| (e, rng.gen_range(1..=3))))
        .collect();
    Ordinal::from_terms(terms).expect("exponents listed in decreasing order")
}

const MAX_KEYS: usize = 12;

/// A random element of the unit ball with at most 12 deviations. One in five
/// draws starts from the `1, -1, 1, -1, ...` pattern the double shift
/// writes, to exercise near-fixed points.
pub fn random_unit_stepfn<R: Rng>(rng: &mut R, wide: bool, zero_tail: bool) -> StepFn {
    let tail = if zero_tail {
        Rational::zero()
    } else {
        random_unit_rational(rng)
    };
    let mut devs: Vec<(Ordinal, Rational)> = Vec::new();
    if rng.gen_bool(0.2) {
        let starts = [
            Ordinal::zero(),
            Ordinal::omega(),
            Ordinal::from_triple(0, 2, 0),
            Ordinal::from_triple(1, 0, 0),
        ];
        let start = &starts[rng.gen_range(0..starts.len())];
        let len = rng.gen_range(1..=MAX_KEYS / 2) as u64;
        for n in 0..len {
            let v = if n % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            devs.push((start.add_nat(n), v));
        }
    }
    let extra = rng.gen_range(0..=MAX_KEYS - devs.len());
    for _ in 0..extra {
        devs.push((random_ordinal(rng, wide), random_unit_rational(rng)));
    }
    StepFn::new(tail, devs)
}

/// Values in `[0, 1]`, tail `0`.
pub fn random_ppoint_weight<R: Rng>(rng: &mut R, wide: bool) -> StepFn {
    random_unit_stepfn(rng, wide, true).abs()
}

/// Any weight for `op`, drawn to satisfy its precondition.
fn random_operator<R: Rng>(rng: &mut R, op: NonexpansiveOp, wide: bool) -> OperatorDescriptor {
    match op {
        NonexpansiveOp::DoubleShift => OperatorDescriptor::double_shift(),
        NonexpansiveOp::SingleShift => OperatorDescriptor::single_shift(),
        NonexpansiveOp::Gap => {
            OperatorDescriptor::gap(random_unit_stepfn(rng, wide, false)).expect("unit-ball weight")
        }
        NonexpansiveOp::PPoint => {
            let g = random_unit_stepfn(rng, wide, false).abs();
            OperatorDescriptor::ppoint(g).expect("weight in [0, 1]")
        }
        NonexpansiveOp::ClampShift => unreachable!("clamp-shift acts on PL functions"),
    }
}

fn fixed_operator(op: NonexpansiveOp, g: Option<StepFn>) -> Result<Option<OperatorDescriptor>> {
    match (op, g) {
        (NonexpansiveOp::Gap, Some(g)) => OperatorDescriptor::gap(g).map(Some),
        (NonexpansiveOp::PPoint, Some(g)) => OperatorDescriptor::ppoint(g).map(Some),
        (NonexpansiveOp::DoubleShift, _) => Ok(Some(OperatorDescriptor::double_shift())),
        (NonexpansiveOp::SingleShift, _) => Ok(Some(OperatorDescriptor::single_shift())),
        _ => Ok(None),
    }
}

/// A sequence with up to 8 prefix entries and values in `[-2, 2]`.
pub fn random_seq<R: Rng>(rng: &mut R) -> SeqRep {
    let len = rng.gen_range(0..=8);
    let prefix = (0..len).map(|_| random_rational(rng, 2)).collect();
    SeqRep::new(prefix, random_rational(rng, 2))
}

/// A PL function on `[-1, 1]` with values in `[-1, 1]` and up to five
/// interior breakpoints at multiples of `1/8`.
pub fn random_unit_pl<R: Rng>(rng: &mut R) -> PLFunction {
    let mut xs: Vec<i64> = (0..rng.gen_range(0..=5))
        .map(|_| rng.gen_range(-7..=7))
        .collect();
    xs.sort_unstable();
    xs.dedup();
    let abscissae = std::iter::once(int(-1))
        .chain(xs.into_iter().map(|n| q(n, 8)))
        .chain(std::iter::once(int(1)));
    let points = abscissae.map(|x| (x, random_unit_rational(rng))).collect();
    PLFunction::new(Domain::unit_interval(), points).expect("sorted breakpoints on [-1, 1]")
}

/// A half-line PL function with breakpoints at multiples of `1/4` up to 6.
pub fn random_halfline_pl<R: Rng>(rng: &mut R) -> PLFunction {
    let mut xs: Vec<i64> = (0..rng.gen_range(0..=6))
        .map(|_| rng.gen_range(1..=24))
        .collect();
    xs.sort_unstable();
    xs.dedup();
    let abscissae = std::iter::once(0).chain(xs).map(|n| q(n, 4));
    let points = abscissae.map(|x| (x, random_rational(rng, 2))).collect();
    PLFunction::new(Domain::HalfLine, points).expect("sorted breakpoints from 0")
}

/// A family of 2 to 8 balls that meet pairwise. Half the time the balls share
/// a planted point; otherwise each radius is half the largest distance from
/// its center to the others, which only guarantees pairwise intersection.
pub fn random_intersecting_family<R: Rng>(rng: &mut R, wide: bool) -> Vec<Ball> {
    let size = rng.gen_range(2..=8);
    let centers: Vec<StepFn> = (0..size)
        .map(|_| random_unit_stepfn(rng, wide, false).scale(&int(2)))
        .collect();
    if rng.gen_bool(0.5) {
        let common = random_unit_stepfn(rng, wide, false);
        centers
            .into_iter()
            .map(|c| {
                let slack = if rng.gen_bool(0.5) {
                    Rational::zero()
                } else {
                    q(rng.gen_range(0..4), 4)
                };
                let r = c.dist(&common) + slack;
                Ball::new(c, r).expect("nonnegative radius")
            })
            .collect()
    } else {
        let half = q(1, 2);
        centers
            .iter()
            .map(|c| {
                let r = centers
                    .iter()
                    .map(|d| c.dist(d))
                    .max()
                    .expect("nonempty family")
                    * &half;
                Ball::new(c.clone(), r).expect("nonnegative radius")
            })
            .collect()
    }
}

/// Adds a ball far from every other one.
pub fn make_disjoint(mut balls: Vec<Ball>) -> Vec<Ball> {
    let reach = balls
        .iter()
        .map(|b| b.center().sup_norm() + b.radius())
        .max()
        .unwrap_or_default();
    let far = StepFn::constant(reach + int(1));
    balls.push(Ball::new(far, Rational::zero()).expect("zero radius"));
    balls
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

fn texts<T: fmt::Display>(items: &[&T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn from_check(check: Check) -> Outcome {
    match check {
        Check::Ok => Ok(()),
        Check::Violation(v) => Err(Failure::new(
            v.inputs.iter().map(StepFn::to_string).collect(),
            v.witness,
            v.expected,
            v.actual,
        )),
    }
}

fn from_error(inputs: Vec<String>, err: Error) -> Failure {
    Failure::new(inputs, "", "no error", err.to_string())
}

fn stepfn_nonexpansive_trial(rng: &mut ChaCha8Rng, op: &OperatorDescriptor, wide: bool) -> Outcome {
    let f = random_unit_stepfn(rng, wide, op.zero_tail);
    let g = random_unit_stepfn(rng, wide, op.zero_tail);
    let inputs = texts(&[&f, &g]);
    let check = |c: Result<Check>| {
        c.map_err(|e| from_error(inputs.clone(), e))
            .and_then(from_check)
    };
    check(check_nonexpansive(op, &f, &g))?;
    check(check_ball_invariance(op, &f))?;
    check(check_ball_invariance(op, &g))
}

fn clamp_shift_nonexpansive_trial(rng: &mut ChaCha8Rng) -> Outcome {
    let f = random_unit_pl(rng);
    let g = random_unit_pl(rng);
    let inputs = texts(&[&f, &g]);
    let err = |e: Error| from_error(inputs.clone(), e);
    let tf = pl::clamp_shift(&f).map_err(err)?;
    let tg = pl::clamp_shift(&g).map_err(err)?;
    let before = f.dist(&g).map_err(err)?;
    let after = tf.dist(&tg).map_err(err)?;
    if after > before {
        return Err(Failure::new(
            inputs,
            "",
            format!("dist <= {before}"),
            after.to_string(),
        ));
    }
    for t in [&tf, &tg] {
        if t.sup_norm() > Rational::one() {
            return Err(Failure::new(
                inputs,
                "",
                "sup norm <= 1",
                t.sup_norm().to_string(),
            ));
        }
    }
    Ok(())
}

fn verified_witness(op: &OperatorDescriptor, f: &StepFn) -> Outcome {
    let inputs = vec![f.to_string()];
    let witness = discrepancy_witness(op, f).map_err(|e| from_error(inputs.clone(), e))?;
    let tf = op.apply(f);
    if tf.eval(&witness) == f.eval(&witness) {
        return Err(Failure::new(
            inputs,
            &witness,
            "values differ at witness",
            format!("both {}", f.eval(&witness)),
        ));
    }
    Ok(())
}

fn double_shift_witness_trial(
    rng: &mut ChaCha8Rng,
    op: &OperatorDescriptor,
    wide: bool,
) -> Outcome {
    let f = random_unit_stepfn(rng, wide, false);
    verified_witness(op, &f)?;

    let inputs = vec![f.to_string()];
    let one = Rational::one();
    let minus_one = -Rational::one();
    let mu = minimal_bad_limit(&f);
    if mu.classify() != OrdinalKind::Limit
        || (*f.eval(&mu) == one && *f.eval(&mu.succ()) == minus_one)
    {
        return Err(Failure::new(
            inputs,
            &mu,
            "limit without the (1, -1) pair",
            "pair present",
        ));
    }
    // Every limit below mu that differs from the tail pattern carries (1, -1).
    for key in f.keys().filter(|k| **k < mu) {
        let limit = key.split_finite().0;
        if !limit.is_zero()
            && limit < mu
            && (*f.eval(&limit) != one || *f.eval(&limit.succ()) != minus_one)
        {
            return Err(Failure::new(
                inputs,
                &limit,
                "(1, -1) below the minimum",
                "pair absent",
            ));
        }
    }
    // If f were fixed below mu, the limit formulas at mu would already
    // disagree with f there.
    let tf = double_shift(&f);
    let agrees_below = f
        .keys()
        .chain(tf.keys())
        .filter(|k| **k < mu)
        .all(|k| f.eval(k) == tf.eval(k));
    if agrees_below {
        let top = limit_value_oracle(&f, &mu, LimitFormula::InfSup).expect("mu is a limit");
        let bottom = limit_value_oracle(&f, &mu, LimitFormula::SupInf).expect("mu is a limit");
        if top == *f.eval(&mu) && bottom == *f.eval(&mu.succ()) {
            return Err(Failure::new(
                inputs,
                &mu,
                "contradiction at the minimal limit",
                "none",
            ));
        }
    }
    Ok(())
}

fn clamp_shift_witness_trial(rng: &mut ChaCha8Rng) -> Outcome {
    let f = random_unit_pl(rng);
    let inputs = vec![f.to_string()];
    let err = |e: Error| from_error(inputs.clone(), e);
    let t = pl::pl_discrepancy(&f).map_err(err)?;
    let tf = pl::clamp_shift(&f).map_err(err)?;
    let (a, b) = (tf.eval(&t).map_err(err)?, f.eval(&t).map_err(err)?);
    if a == b {
        return Err(Failure::new(
            inputs,
            &t,
            "values differ at witness",
            format!("both {a}"),
        ));
    }
    Ok(())
}

/// Limits whose neighbourhoods the default key pool covers.
pub fn oracle_limits() -> [Ordinal; 4] {
    [
        Ordinal::omega(),
        Ordinal::from_triple(0, 2, 0),
        Ordinal::from_triple(1, 0, 0),
        Ordinal::from_triple(1, 1, 0),
    ]
}

fn limit_oracle_trial(rng: &mut ChaCha8Rng, wide: bool) -> Outcome {
    for beta in oracle_limits() {
        let f = random_unit_stepfn(rng, wide, false);
        let tf = double_shift(&f);
        for (at, which) in [
            (beta.clone(), LimitFormula::InfSup),
            (beta.succ(), LimitFormula::SupInf),
        ] {
            let expected = limit_value_oracle(&f, &beta, which).expect("beta is a limit");
            if *tf.eval(&at) != expected {
                return Err(Failure::new(
                    vec![f.to_string()],
                    &at,
                    expected.to_string(),
                    tf.eval(&at).to_string(),
                ));
            }
        }
    }
    Ok(())
}

fn gap_fixed_point_trial(rng: &mut ChaCha8Rng, g: &StepFn, wide: bool) -> Outcome {
    let op = OperatorDescriptor::gap(g.clone()).map_err(|e| from_error(vec![g.to_string()], e))?;
    stepfn_nonexpansive_trial(rng, &op, wide)?;
    let inputs = vec![g.to_string()];
    let s = dynamics::gap_fixed_point(g).map_err(|e| from_error(inputs.clone(), e))?;
    let moved = dynamics::gap_map(g, &s).map_err(|e| from_error(inputs.clone(), e))?;
    if moved != s {
        return Err(Failure::new(inputs, "", s.to_string(), moved.to_string()));
    }
    let recombined = s.mul(&g.abs());
    if recombined != *g {
        return Err(Failure::new(
            inputs,
            "",
            g.to_string(),
            recombined.to_string(),
        ));
    }
    Ok(())
}

fn helly_trial(rng: &mut ChaCha8Rng, wide: bool) -> Outcome {
    let balls = random_intersecting_family(rng, wide);
    let inputs: Vec<String> = balls.iter().map(Ball::to_string).collect();
    if let PairwiseCheck::Violation(i, j) = pairwise_intersect(&balls) {
        return Err(Failure::new(
            inputs,
            format!("{i},{j}"),
            "pairwise intersecting",
            "disjoint pair",
        ));
    }
    let witness = helly_witness(&balls).map_err(|e| from_error(inputs.clone(), e))?;
    if let Some(i) = balls.iter().position(|b| !b.contains(&witness)) {
        return Err(Failure::new(
            inputs,
            &witness,
            format!("inside ball {i}"),
            "outside",
        ));
    }
    let hull = interval_hull(&balls).map_err(|e| from_error(inputs.clone(), e))?;
    if !hull.nonempty || hull.lower != witness {
        return Err(Failure::new(
            inputs,
            &witness,
            hull.lower.to_string(),
            format!("nonempty={}", hull.nonempty),
        ));
    }

    let disjoint = make_disjoint(balls);
    let inputs: Vec<String> = disjoint.iter().map(Ball::to_string).collect();
    if pairwise_intersect(&disjoint) == PairwiseCheck::Ok {
        return Err(Failure::new(inputs, "", "disjoint pair detected", "none"));
    }
    match helly_witness(&disjoint) {
        Err(Error::Precondition(_)) => {}
        other => {
            return Err(Failure::new(
                inputs,
                "",
                "precondition rejection",
                format!("{other:?}"),
            ));
        }
    }
    if interval_hull(&disjoint).map(|h| h.nonempty).unwrap_or(true) {
        return Err(Failure::new(inputs, "", "empty hull", "nonempty"));
    }
    Ok(())
}

fn retraction_trial(rng: &mut ChaCha8Rng) -> Outcome {
    let a = random_seq(rng);
    let b = random_seq(rng);
    let inputs = texts(&[&a, &b]);
    let err = |e: Error| from_error(inputs.clone(), e);
    let (ra, rb) = (pl::interpolate_r(&a), pl::interpolate_r(&b));
    let back = pl::sample_e(&ra).map_err(err)?;
    if back != a {
        return Err(Failure::new(inputs, "", a.to_string(), back.to_string()));
    }
    let r_dist = ra.dist(&rb).map_err(err)?;
    if r_dist > a.dist(&b) {
        return Err(Failure::new(
            inputs,
            "",
            format!("<= {}", a.dist(&b)),
            r_dist.to_string(),
        ));
    }

    let f = random_halfline_pl(rng);
    let g = random_halfline_pl(rng);
    let inputs = texts(&[&f, &g]);
    let err = |e: Error| from_error(inputs.clone(), e);
    let e_dist = pl::sample_e(&f)
        .map_err(err)?
        .dist(&pl::sample_e(&g).map_err(err)?);
    let pl_dist = f.dist(&g).map_err(err)?;
    if e_dist > pl_dist {
        return Err(Failure::new(
            inputs,
            "",
            format!("<= {pl_dist}"),
            e_dist.to_string(),
        ));
    }

    let inputs = vec![a.to_string()];
    let sample = |f: &PLFunction| pl::sample_e(f).expect("half-line function");
    let fixed = dynamics::transfer_fixed_point(sample, pl::interpolate_r, SeqRep::clone, &ra)
        .map_err(|e| from_error(inputs.clone(), e))?;
    if fixed != a {
        return Err(Failure::new(inputs, "", a.to_string(), fixed.to_string()));
    }
    Ok(())
}

fn ppoint_fixed_point_trial(g: &StepFn) -> Outcome {
    let inputs = vec![g.to_string()];
    let f = dynamics::ppoint_fixed_point(g).map_err(|e| from_error(inputs.clone(), e))?;
    let moved = dynamics::ppoint_map(g, &f).map_err(|e| from_error(inputs.clone(), e))?;
    if moved != f {
        return Err(Failure::new(inputs, "", f.to_string(), moved.to_string()));
    }
    let residual = g.mul(&StepFn::constant(Rational::one()).sub(&f));
    if residual != StepFn::zero() {
        return Err(Failure::new(
            inputs,
            "",
            "g (1 - f) = 0",
            residual.to_string(),
        ));
    }
    Ok(())
}

// Ordinals below w^3 as triples (i, j, k) = w^2*i + w*j + k, with arithmetic
// done directly on the triples.
type Triple = (u64, u64, u64);

fn triple_add(a: Triple, b: Triple) -> Triple {
    match b {
        (i, j, k) if i > 0 => (a.0 + i, j, k),
        (0, j, k) if j > 0 => (a.0, a.1 + j, k),
        (_, _, k) => (a.0, a.1, a.2 + k),
    }
}

fn triple_kind(a: Triple) -> OrdinalKind {
    match a {
        (0, 0, 0) => OrdinalKind::Zero,
        (_, _, k) if k > 0 => OrdinalKind::Successor,
        _ => OrdinalKind::Limit,
    }
}

fn ordinal_laws_trial(rng: &mut ChaCha8Rng, wide: bool) -> Outcome {
    let mut triple = || {
        (
            rng.gen_range(0..8),
            rng.gen_range(0..8),
            rng.gen_range(0..8),
        )
    };
    let (ta, tb, tc) = (triple(), triple(), triple());
    let [a, b, c] = [ta, tb, tc].map(|(i, j, k)| Ordinal::from_triple(i, j, k));
    check_laws(&a, &b, &c)?;

    let inputs = texts(&[&a, &b]);
    if a.cmp(&b) != ta.cmp(&tb) {
        return Err(Failure::new(
            inputs,
            "",
            format!("{:?}", ta.cmp(&tb)),
            format!("{:?}", a.cmp(&b)),
        ));
    }
    let sum = triple_add(ta, tb);
    if a.add(&b) != Ordinal::from_triple(sum.0, sum.1, sum.2) {
        return Err(Failure::new(
            inputs,
            "",
            format!("{sum:?}"),
            a.add(&b).to_string(),
        ));
    }
    if a.classify() != triple_kind(ta) {
        return Err(Failure::new(
            inputs,
            "",
            format!("{:?}", triple_kind(ta)),
            format!("{:?}", a.classify()),
        ));
    }
    if wide {
        let [a, b, c] = [0; 3].map(|_| random_ordinal(rng, true));
        check_laws(&a, &b, &c)?;
    }
    Ok(())
}

fn check_laws(a: &Ordinal, b: &Ordinal, c: &Ordinal) -> Outcome {
    let inputs = texts(&[a, b, c]);
    let fail = |law: &str, actual: String| Err(Failure::new(inputs.clone(), "", law, actual));
    if a.add(b).add(c) != a.add(&b.add(c)) {
        return fail(
            "associativity",
            format!("{} vs {}", a.add(b).add(c), a.add(&b.add(c))),
        );
    }
    let zero = Ordinal::zero();
    if a.add(&zero) != *a || zero.add(a) != *a {
        return fail("zero is an identity", a.add(&zero).to_string());
    }
    if b < c && a.add(b) >= a.add(c) {
        return fail(
            "right strict monotonicity",
            format!("{} >= {}", a.add(b), a.add(c)),
        );
    }
    let (limit, n) = a.split_finite();
    if limit.add_nat(n) != *a || limit.classify() == OrdinalKind::Successor {
        return fail("finite-part split", format!("{limit} + {n}"));
    }
    match a.to_string().parse::<Ordinal>() {
        Ok(back) if back == *a => Ok(()),
        other => fail("text round trip", format!("{other:?}")),
    }
}
