//! Report assembly and rendering. Every subcommand that analyzes a state
//! fills the same [`Report`] shape; optional sections are present exactly
//! when the subcommand computed them. JSON output keeps full double
//! precision, the text rendering rounds to six significant digits.

use passent::{
    separability_label, EntanglementReport, EntanglerPlan, EntanglingPowerVerdict, ModePartition,
    SearchConfig, SqueezingReport, VerdictCheck,
};
use serde::Serialize;
use std::fmt::Write as _;

/// Everything a subcommand learned about its input state.
#[derive(Debug, Serialize)]
pub struct Report {
    /// `sha256:<hex>` digest of the input file bytes.
    pub input_digest: String,
    /// Number of optical modes.
    pub modes: usize,
    pub validity: ValiditySummary,
    pub squeezing: SqueezingSummary,
    pub verdict: VerdictSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved: Option<AchievedSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

/// Physical-validity check of the input. Commands refuse invalid matrices
/// before producing a report, so `valid` is true whenever one is printed;
/// the eigenvalue tells how far the state sits from the uncertainty
/// boundary.
#[derive(Debug, Serialize)]
pub struct ValiditySummary {
    pub valid: bool,
    /// Minimum eigenvalue of `gamma + i sigma` (non-negative when valid).
    pub min_uncertainty_eig: f64,
}

/// Ordinary spectrum of the covariance matrix and the two smallest
/// eigenvalues that drive everything else.
#[derive(Debug, Serialize)]
pub struct SqueezingSummary {
    pub eigenvalues: Vec<f64>,
    pub lambda1: f64,
    pub lambda2: f64,
    pub is_squeezed: bool,
}

impl From<&SqueezingReport> for SqueezingSummary {
    fn from(sq: &SqueezingReport) -> Self {
        SqueezingSummary {
            eigenvalues: sq.eigenvalues.clone(),
            lambda1: sq.lambda1,
            lambda2: sq.lambda2,
            is_squeezed: sq.is_squeezed,
        }
    }
}

/// The entangling-power verdict across the requested partition.
#[derive(Debug, Serialize)]
pub struct VerdictSummary {
    /// The partition as requested (`1|2` or the explicit mode lists).
    pub partition: String,
    pub lambda1: f64,
    pub lambda2: f64,
    pub product: f64,
    pub can_entangle: bool,
    pub lower_bound_bits: f64,
    pub attainable_two_mode_bits: f64,
}

impl VerdictSummary {
    pub fn new(v: &EntanglingPowerVerdict, label: &str) -> Self {
        VerdictSummary {
            partition: label.to_string(),
            lambda1: v.lambda1,
            lambda2: v.lambda2,
            product: v.product,
            can_entangle: v.can_entangle,
            lower_bound_bits: v.lower_bound_bits,
            attainable_two_mode_bits: v.attainable_two_mode_bits,
        }
    }
}

/// The optimal two-mode circuit: a phase shifter on the first mode
/// followed by a beam splitter.
#[derive(Debug, Serialize)]
pub struct PlanSummary {
    /// Phase-shifter angle (radians), in `[0, pi)`.
    pub alpha: f64,
    /// Beam-splitter mixing angle (radians); `gamma/2` is the rotation in
    /// the mode plane.
    pub gamma: f64,
    pub phase_first: bool,
    pub predicted_negativity_bits: f64,
    pub nothing_to_gain: bool,
    /// Real form of the core two-mode transform, row by row.
    pub k_real_form: Vec<Vec<f64>>,
}

impl From<&EntanglerPlan> for PlanSummary {
    fn from(plan: &EntanglerPlan) -> Self {
        let k = plan.k.real_form();
        PlanSummary {
            alpha: plan.alpha,
            gamma: plan.gamma,
            phase_first: plan.phase_first,
            predicted_negativity_bits: plan.predicted_negativity_bits,
            nothing_to_gain: plan.nothing_to_gain,
            k_real_form: (0..k.nrows())
                .map(|i| (0..k.ncols()).map(|j| k[(i, j)]).collect())
                .collect(),
        }
    }
}

/// Negativity of a concrete state across the partition.
#[derive(Debug, Serialize)]
pub struct AchievedSummary {
    /// Symplectic spectrum of the partially transposed state, ascending.
    pub spectrum: Vec<f64>,
    pub log_negativity: f64,
    pub is_nppt: bool,
    pub separability: String,
}

impl AchievedSummary {
    pub fn new(report: &EntanglementReport, part: ModePartition) -> Self {
        AchievedSummary {
            spectrum: report.spectrum.values.clone(),
            log_negativity: report.log_negativity,
            is_nppt: report.is_nppt,
            separability: separability_label(report, part).to_string(),
        }
    }
}

/// Outcome of the randomized search and its agreement with the criterion.
#[derive(Debug, Serialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub refine_iters: usize,
    pub seed: u64,
    pub best_negativity_bits: f64,
    pub product: f64,
    pub criterion_can_entangle: bool,
    pub soundness_ok: bool,
    pub completeness_ok: bool,
    pub pass: bool,
    pub discrepancy_bits: f64,
}

impl OracleSummary {
    pub fn new(cfg: &SearchConfig, check: &VerdictCheck) -> Self {
        OracleSummary {
            samples: cfg.samples,
            refine_iters: cfg.refine_iters,
            seed: cfg.seed,
            best_negativity_bits: check.oracle_best_bits,
            product: check.product,
            criterion_can_entangle: check.criterion_can_entangle,
            soundness_ok: check.soundness_ok,
            completeness_ok: check.completeness_ok,
            pass: check.pass,
            discrepancy_bits: check.discrepancy_bits,
        }
    }
}

/// Format `x` with six significant digits, switching to scientific
/// notation outside a comfortable magnitude window (like printf's `%g`).
pub fn sig6(x: f64) -> String {
    format_sig(x, 6)
}

fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if mag < -4 || mag >= digits as i32 {
        format!("{:.*e}", digits - 1, x)
    } else {
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

fn list6(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|&v| sig6(v)).collect();
    format!("[{}]", parts.join(", "))
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

/// Human rendering: one block per present section, six significant digits.
pub fn render_human(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input      {} ({} modes)", r.input_digest, r.modes);
    let _ = writeln!(
        out,
        "validity   physical covariance matrix; min eig(gamma + i*sigma) = {}",
        sig6(r.validity.min_uncertainty_eig)
    );
    let _ = writeln!(
        out,
        "squeezing  eigenvalues {}; squeezed below vacuum: {}",
        list6(&r.squeezing.eigenvalues),
        yes_no(r.squeezing.is_squeezed)
    );
    let _ = writeln!(
        out,
        "verdict    partition {}: lambda1*lambda2 = {}; entanglable by passive optics: {}",
        r.verdict.partition,
        sig6(r.verdict.product),
        yes_no(r.verdict.can_entangle)
    );
    let _ = writeln!(
        out,
        "           negativity guaranteed >= {} bits; two-mode attainable = {} bits",
        sig6(r.verdict.lower_bound_bits),
        sig6(r.verdict.attainable_two_mode_bits)
    );
    if let Some(plan) = &r.plan {
        if plan.nothing_to_gain {
            let _ = writeln!(out, "plan       nothing to gain: identity transform");
        } else {
            let _ = writeln!(
                out,
                "plan       alpha = {} rad, gamma = {} rad, phase shifter first: {}",
                sig6(plan.alpha),
                sig6(plan.gamma),
                yes_no(plan.phase_first)
            );
            let _ = writeln!(
                out,
                "           predicted negativity = {} bits",
                sig6(plan.predicted_negativity_bits)
            );
            let _ = writeln!(out, "           core two-mode transform (real form):");
            for row in &plan.k_real_form {
                let _ = writeln!(out, "             {}", list6(row));
            }
        }
    }
    if let Some(achieved) = &r.achieved {
        let _ = writeln!(
            out,
            "achieved   E_N = {} bits; {}",
            sig6(achieved.log_negativity),
            achieved.separability
        );
        let _ = writeln!(
            out,
            "           PT symplectic spectrum {}",
            list6(&achieved.spectrum)
        );
    }
    if let Some(oracle) = &r.oracle {
        let _ = writeln!(
            out,
            "oracle     best found = {} bits ({} samples, {} refinement steps, seed {})",
            sig6(oracle.best_negativity_bits),
            oracle.samples,
            oracle.refine_iters,
            oracle.seed
        );
        let _ = writeln!(
            out,
            "           criterion agreement: {} (discrepancy {} bits)",
            if oracle.pass { "PASS" } else { "FAIL" },
            sig6(oracle.discrepancy_bits)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.7213475204444817), "0.721348");
        assert_eq!(sig6(1.4426950408889634), "1.44270");
        assert_eq!(sig6(-0.5), "-0.500000");
        assert_eq!(sig6(123456.789), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(0.00001), "1.00000e-5");
        assert_eq!(sig6(0.001), "0.00100000");
    }
}
