// SPDX-License-Identifier: Apache-2.0

//! Fixed inputs shared by the criterion benchmarks.

use bfpp_core::harness::{self, trial_rng};
use bfpp_core::{Ball, PLFunction, SeqRep, StepFn};

pub const SEED: u64 = 0x5eed;

pub fn unit_stepfns(count: u64) -> Vec<StepFn> {
    (0..count)
        .map(|i| harness::random_unit_stepfn(&mut trial_rng(SEED, i), false, false))
        .collect()
}

pub fn unit_pls(count: u64) -> Vec<PLFunction> {
    (0..count)
        .map(|i| harness::random_unit_pl(&mut trial_rng(SEED, i)))
        .collect()
}

pub fn seqs(count: u64) -> Vec<SeqRep> {
    (0..count)
        .map(|i| harness::random_seq(&mut trial_rng(SEED, i)))
        .collect()
}

pub fn ball_families(count: u64) -> Vec<Vec<Ball>> {
    (0..count)
        .map(|i| harness::random_intersecting_family(&mut trial_rng(SEED, i), false))
        .collect()
}
