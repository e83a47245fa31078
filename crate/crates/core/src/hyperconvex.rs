// SPDX-License-Identifier: Apache-2.0

//! Intersections of closed sup-norm balls of step functions.
//!
//! A ball `B(f, r)` is the order interval `[f - r, f + r]`. Two such
//! intervals meet iff `f - r <= g + s` and `g - s <= f + r`, which for the
//! sup norm is `dist(f, g) <= r + s`. If every pair meets, the pointwise
//! supremum of the lower ends lies in all of them.

use crate::error::{Error, Result};
use crate::stepfn::{family_inf, family_sup, Ball, StepFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairwiseCheck {
    Ok,
    /// Indices of the first pair of disjoint balls.
    Violation(usize, usize),
}

pub fn pairwise_intersect(balls: &[Ball]) -> PairwiseCheck {
    for (i, a) in balls.iter().enumerate() {
        for (j, b) in balls.iter().enumerate().skip(i + 1) {
            if a.center().dist(b.center()) > a.radius() + b.radius() {
                return PairwiseCheck::Violation(i, j);
            }
        }
    }
    PairwiseCheck::Ok
}

/// `sup_i (f_i - r_i)`, checked to lie in every ball.
pub fn helly_witness(balls: &[Ball]) -> Result<StepFn> {
    if balls.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let PairwiseCheck::Violation(i, j) = pairwise_intersect(balls) {
        return Err(Error::Precondition(format!(
            "balls {i} and {j} do not intersect"
        )));
    }
    let lowers: Vec<StepFn> = balls.iter().map(Ball::lower).collect();
    let witness = family_sup(&lowers)?;
    if let Some(i) = balls.iter().position(|b| !b.contains(&witness)) {
        return Err(Error::Verification(format!(
            "{witness} lies outside ball {i}"
        )));
    }
    Ok(witness)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalHull {
    pub lower: StepFn,
    pub upper: StepFn,
    pub nonempty: bool,
}

impl IntervalHull {
    /// Whether `h` lies between the bounds.
    pub fn contains(&self, h: &StepFn) -> bool {
        self.lower.le(h) && h.le(&self.upper)
    }
}

/// The intersection of the balls as an order interval.
pub fn interval_hull(balls: &[Ball]) -> Result<IntervalHull> {
    let lowers: Vec<StepFn> = balls.iter().map(Ball::lower).collect();
    let uppers: Vec<StepFn> = balls.iter().map(Ball::upper).collect();
    let lower = family_sup(&lowers)?;
    let upper = family_inf(&uppers)?;
    let nonempty = lower.le(&upper);
    Ok(IntervalHull {
        lower,
        upper,
        nonempty,
    })
}
