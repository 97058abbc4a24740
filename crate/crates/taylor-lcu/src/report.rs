//! Machine-readable run artifacts: gate tallies, bound checks, run reports.
//!
//! Reports serialize with a fixed field order and sorted per-term maps, so
//! identical inputs produce byte-identical JSON apart from the wall-time
//! field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::plan::SimulationPlan;

/// Controlled-term application counts under the cost model where one
/// multiplexed controlled-unitary stage costs one unit.
///
/// Segments cost `3 r K` (three select applications per amplification round),
/// the correction costs `Q`, and the outer amplification triples everything.
/// The per-term attribution spreads stages round-robin over term indices;
/// only the totals carry meaning, but the attribution is deterministic and
/// sums exactly to the stage totals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateTally {
    /// 1-based term index -> stage count.
    pub per_term: BTreeMap<usize, u64>,
    pub segment_total: u64,
    pub correction_total: u64,
    pub logical_total: u64,
    pub amplified_total: u64,
}

impl GateTally {
    /// Tally from the schedule formulas alone.
    pub fn analytic(segments: usize, order: usize, correction_order: usize, n_terms: usize) -> Self {
        let mut counter = TallyCounter::new(n_terms);
        counter.add_stages((3 * segments * order) as u64, Stage::Segment);
        counter.add_stages(correction_order as u64, Stage::Correction);
        counter.finish()
    }
}

/// Which pipeline stage a counted operation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Segment,
    Correction,
}

/// Incremental tally used by instrumented circuit runs. Stage attribution
/// follows the same global round-robin as [`GateTally::analytic`], so an
/// instrumented run over the same schedule produces an identical tally.
#[derive(Debug, Clone)]
pub struct TallyCounter {
    n_terms: usize,
    next_stage: u64,
    per_term: BTreeMap<usize, u64>,
    segment_total: u64,
    correction_total: u64,
}

impl TallyCounter {
    pub fn new(n_terms: usize) -> Self {
        assert!(n_terms >= 1);
        Self {
            n_terms,
            next_stage: 0,
            per_term: BTreeMap::new(),
            segment_total: 0,
            correction_total: 0,
        }
    }

    pub fn add_stages(&mut self, count: u64, stage: Stage) {
        for _ in 0..count {
            let term = (self.next_stage % self.n_terms as u64) as usize + 1;
            *self.per_term.entry(term).or_insert(0) += 1;
            self.next_stage += 1;
        }
        match stage {
            Stage::Segment => self.segment_total += count,
            Stage::Correction => self.correction_total += count,
        }
    }

    pub fn finish(self) -> GateTally {
        let logical = self.segment_total + self.correction_total;
        GateTally {
            per_term: self.per_term,
            segment_total: self.segment_total,
            correction_total: self.correction_total,
            logical_total: logical,
            amplified_total: 3 * logical,
        }
    }
}

/// One measured inequality: `measured <= bound` within the stated slack.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl BoundCheck {
    /// Absolute slack on majorant-style certificates.
    pub const SLACK: f64 = 1e-12;

    pub fn new(name: &str, measured: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            bound,
            pass: measured <= bound + Self::SLACK,
        }
    }
}

/// Plan echo inside a report, with the conventional short field names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanEcho {
    pub r: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "Q")]
    pub q: usize,
    pub s: f64,
    #[serde(rename = "s_C")]
    pub s_c: f64,
    pub delta: f64,
    pub epsilon: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "T")]
    pub t_scaled: f64,
}

impl From<&SimulationPlan> for PlanEcho {
    fn from(p: &SimulationPlan) -> Self {
        Self {
            r: p.segments,
            k: p.truncation_order,
            q: p.correction_order,
            s: p.segment_weight,
            s_c: p.correction_weight,
            delta: p.delta,
            epsilon: p.epsilon,
            a: p.strength,
            t_scaled: p.scaled_time,
        }
    }
}

/// Measured operator distances for the three pipeline stages.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorEcho {
    /// `‖(amplified segment)^r - U‖`
    pub segment: f64,
    /// `‖corrected - U‖` before the final amplification
    pub corrected: f64,
    /// `‖final - U‖`
    #[serde(rename = "final")]
    pub final_: f64,
}

impl ErrorEcho {
    pub fn new(segment: f64, corrected: f64, final_error: f64) -> Self {
        Self {
            segment,
            corrected,
            final_: final_error,
        }
    }
}

/// Tally echo pinned to the report schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TallyEcho {
    pub per_term: BTreeMap<usize, u64>,
    pub logical_total: u64,
    pub amplified_total: u64,
}

impl From<&GateTally> for TallyEcho {
    fn from(t: &GateTally) -> Self {
        Self {
            per_term: t.per_term.clone(),
            logical_total: t.logical_total,
            amplified_total: t.amplified_total,
        }
    }
}

/// Full machine-readable record of one simulation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub plan: PlanEcho,
    pub errors: ErrorEcho,
    pub bounds: Vec<BoundCheck>,
    pub tally: TallyEcho,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn all_bounds_pass(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

// Serialize "final_" as "final" to keep the schema clean.
impl Serialize for ErrorEchoSchema {
    fn serialize<S: serde::Serializer>(&self, _s: S) -> std::result::Result<S::Ok, S::Error> {
        unreachable!("marker type")
    }
}
#[doc(hidden)]
pub struct ErrorEchoSchema;
