use std::fmt::Write as _;

use darwin_core::attractor::{
    derived_max_dims, dimension_formula, numeric_attractor_basis, AttractorSpace, Regime, StructuredSpace,
};
use darwin_core::digraph::InteractionDigraph;
use darwin_core::qstate::RegisterLayout;

use crate::CliError;

/// Keeps `4^n` within `usize`.
const FORMULA_MAX_QUBITS: usize = 30;

/// Largest `k + n` for which `dims` runs the numeric solver.
pub const NUMERIC_DIMS_QUBITS: usize = 5;

pub fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::MaxKoenig => "max_koenig",
        Regime::MinStrong => "min_strong",
    }
}

/// Closed-form, block-counted and (for small registers) numeric attractor dimensions.
pub fn report(k: usize, n: usize, regime: Regime, phi: f64, max_qubits: usize) -> Result<String, CliError> {
    if k + n > FORMULA_MAX_QUBITS {
        return Err(CliError::Config(format!("invalid `n`: k+n = {} exceeds {FORMULA_MAX_QUBITS}", k + n)));
    }
    // Only the numeric side builds matrices, so the cap bounds that side alone.
    let layout = RegisterLayout::with_cap(k, n, k + n)?;
    let mut s = String::new();
    let _ = writeln!(s, "k={k} n={n} regime={} phi={phi}", regime_name(regime));
    let formula = dimension_formula(k, n, regime)?;
    let _ = writeln!(s, "formula    d+={} d-={}", formula.0, formula.1);
    if regime == Regime::MaxKoenig {
        let (p, m) = derived_max_dims(k, n)?;
        let _ = writeln!(s, "derived    d+={p} d-={m}");
    }
    match StructuredSpace::new(layout, regime, phi) {
        Ok(space) => {
            let (p, m) = space.dims();
            let _ = writeln!(s, "structured d+={p} d-={m}");
        }
        Err(e) => {
            let _ = writeln!(s, "structured skipped ({e})");
        }
    }
    let limit = NUMERIC_DIMS_QUBITS.min(max_qubits);
    if k + n > limit {
        let _ = writeln!(s, "numeric    skipped (k+n = {} exceeds {limit})", k + n);
    } else {
        let g = match regime {
            Regime::MaxKoenig => InteractionDigraph::koenig(layout)?,
            Regime::MinStrong => InteractionDigraph::complete_env(layout)?,
        };
        let num = numeric_attractor_basis(&g, phi)?;
        let got = num.bases.dims();
        let verdict = if got == formula { "MATCH" } else { "MISMATCH" };
        let _ = writeln!(s, "numeric    d+={} d-={} {verdict}", got.0, got.1);
        if !num.conditioning.is_clean() {
            let _ = writeln!(s, "numeric    warning: {} singular values in [1e-11, 1e-7]", num.conditioning.band_hits.len());
        }
    }
    Ok(s)
}
