//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use zetakit::checks::Check;
use zetakit::PrecisionContext;

use crate::format;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexText {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ContextEcho {
    pub target_digits: u32,
    pub working_bits: u32,
    pub lambda: f64,
    pub max_terms: usize,
}

impl From<&PrecisionContext> for ContextEcho {
    fn from(ctx: &PrecisionContext) -> Self {
        ContextEcho {
            target_digits: ctx.target_digits,
            working_bits: ctx.working_bits,
            lambda: ctx.lambda,
            max_terms: ctx.max_terms,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub identity_id: String,
    pub lhs: ComplexText,
    pub rhs: ComplexText,
    /// `None` when a side failed to evaluate.
    pub abs_delta: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub context_echo: ContextEcho,
}

impl VerificationReport {
    pub fn new(check: &Check, ctx: &PrecisionContext) -> Self {
        let digits = ctx.target_digits as usize;
        let text = |z: &rug::Complex| {
            let (re, im) = format::parts(z, digits);
            ComplexText { re, im }
        };
        let delta = check.abs_delta();
        VerificationReport {
            identity_id: check.id.clone(),
            lhs: text(&check.lhs),
            rhs: text(&check.rhs),
            abs_delta: delta.is_finite().then_some(delta),
            tolerance: check.tolerance,
            passed: check.passed(),
            runtime_ms: check.runtime_ms as u64,
            error: check.error.clone(),
            context_echo: ctx.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComputeReport {
    pub function: String,
    pub args: Vec<String>,
    pub lambda: f64,
    pub digits: u32,
    pub value_re: String,
    pub value_im: String,
    pub err: String,
    pub terms_used: usize,
    pub runtime_ms: u64,
}
