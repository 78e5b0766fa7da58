//! Report envelope, numeric fields with precision metadata, and the run manifest.

use std::time::{SystemTime, UNIX_EPOCH};

use hodgecor_core::correlator::convention_constants;
use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "hodgecor.report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// How a number was obtained, which fixes how to read its `abs_error`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    /// Exact up to floating-point rounding (symbolic delta collapse).
    Exact,
    /// Difference between the last two quadrature refinements.
    Quadrature,
    /// Standard error over independent sample batches.
    MonteCarlo,
    /// Derived from other reported quantities; `abs_error` bounds the propagated error.
    Derived,
}

/// A real number with its absolute error and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Real {
    pub value: f64,
    pub abs_error: f64,
    pub precision: Precision,
}

impl Real {
    pub fn new(value: f64, abs_error: f64, precision: Precision) -> Self {
        Real { value, abs_error, precision }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
    pub abs_error: f64,
    pub precision: Precision,
}

impl Complex {
    pub fn new(z: Complex64, abs_error: f64, precision: Precision) -> Self {
        Complex { re: z.re, im: z.im, abs_error, precision }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub convention_fingerprint: String,
    pub started_unix_ms: u128,
    pub wall_clock_seconds: f64,
    pub workers: usize,
}

/// Report file: `payload` depends on `command`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub payload: serde_json::Value,
    pub manifest: RunManifest,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash over the sign and normalization constants correlator values depend on.
pub fn convention_fingerprint() -> String {
    let mut text = String::new();
    for (k, v) in convention_constants() {
        text.push_str(k);
        text.push('=');
        text.push_str(&v);
        text.push('\n');
    }
    sha256_hex(text.as_bytes())
}

pub fn now_unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}
