//! Machine checks of the known inequalities for dot-product averaging
//! operators at desk scale: field upper bounds, witness lower bounds,
//! product factorization, radical amplification, solvability experiments,
//! and dot-product graph analysis.
//!
//! Every check returns a [`TheoremCheck`] with the claimed bound, the
//! observed quantity, and the margin; a failed check in the default suite
//! is an implementation defect, never acceptable output.

mod checks;
mod edot;
mod graph;
mod scan;

pub use checks::{
    check_boolean_exact, check_field_upper, check_ideal_bound_reading,
    check_jacobson_amplification, check_matrix_lower, check_odd_subsets,
    check_product_factorization, check_semisimple_lower, check_trivial_char,
    check_unit_independence, odd_subset_count, ProductCharacters,
};
pub use edot::{edot_check, edot_experiment, ideal_obstruction, EdotEReport};
pub use graph::{check_graph, graph_analysis, GraphReport};
pub use scan::{scan_salem, ScanRow};

use serde::Serialize;

/// Outcome of one verified inequality or identity.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    /// Stable kebab-case identifier of what was checked.
    pub id: &'static str,
    /// Human-readable instance: ring, dimension, t.
    pub instance: String,
    pub claimed_bound: f64,
    pub observed: f64,
    /// Positive margin means the inequality held with room to spare.
    pub margin: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremCheck {
    /// `observed >= bound` up to absolute tolerance.
    pub(crate) fn lower(
        id: &'static str,
        instance: String,
        bound: f64,
        observed: f64,
        tol: f64,
    ) -> Self {
        TheoremCheck {
            id,
            instance,
            claimed_bound: bound,
            observed,
            margin: observed - bound,
            passed: observed >= bound - tol,
            note: None,
        }
    }

    /// `observed <= bound` up to absolute tolerance.
    pub(crate) fn upper(
        id: &'static str,
        instance: String,
        bound: f64,
        observed: f64,
        tol: f64,
    ) -> Self {
        TheoremCheck {
            id,
            instance,
            claimed_bound: bound,
            observed,
            margin: bound - observed,
            passed: observed <= bound + tol,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    pub(crate) fn and(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.passed = false;
            let mut note = self.note.take().unwrap_or_default();
            if !note.is_empty() {
                note.push_str("; ");
            }
            note.push_str(why);
            self.note = Some(note);
        }
        self
    }

    /// One status line, as printed by the verify command.
    pub fn status_line(&self) -> String {
        format!(
            "[{}] {} :: {} (bound {:.9}, observed {:.9}, margin {:+.3e}){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.instance,
            self.claimed_bound,
            self.observed,
            self.margin,
            match &self.note {
                Some(n) => format!(" -- {n}"),
                None => String::new(),
            }
        )
    }
}

/// The default verification suite: every inequality and identity the crate
/// knows how to check, on the shipped golden family. Exit criterion for
/// the `verify` command.
pub fn default_suite(opts: &crate::incidence::SolveOptions) -> crate::Result<Vec<TheoremCheck>> {
    let mut out = Vec::new();

    // Field upper bounds at both dimensions within scale.
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for d in [2usize, 3] {
            if q.pow(d as u32) <= 1024 {
                out.push(check_field_upper(q, d, None, opts)?);
            }
        }
    }

    // Exact value of the trivial-character ratio over the two-element
    // field, dimensions 2..=6.
    for d in 2..=6 {
        out.push(check_boolean_exact(d)?);
    }

    // Trivial-character lower bounds.
    for spec in [
        "gf(2)",
        "gf(3)",
        "mat(2,gf(2))",
        "zmod(4)",
        "prod(gf(2),gf(3))",
    ] {
        out.push(check_trivial_char(spec, 2, opts)?);
    }
    out.push(check_trivial_char("gf(2)", 3, opts)?);

    // Norm independence of the chosen unit.
    for spec in ["gf(4)", "gf(5)", "zmod(4)", "mat(2,gf(2))"] {
        out.push(check_unit_independence(spec, 2, opts)?);
    }

    // Matrix-ring witness lower bounds (n = 1 reduces to the general
    // matrix-ring lower bound over a field).
    out.push(check_matrix_lower(2, 2, 2, opts)?);
    out.push(check_matrix_lower(2, 3, 2, opts)?);
    out.push(check_matrix_lower(1, 3, 2, opts)?);

    // Product factorization of character images.
    for combo in 0..4 {
        out.push(check_product_factorization(
            "gf(2)",
            "gf(3)",
            2,
            ProductCharacters::combo(combo),
            opts,
        )?);
        out.push(check_product_factorization(
            "gf(2)",
            "gf(2)",
            2,
            ProductCharacters::combo(combo),
            opts,
        )?);
    }

    // Semisimple witness achieving ratio 1/2.
    for spec in [
        "gf(3)",
        "gf(4)",
        "mat(2,gf(2))",
        "prod(gf(2),gf(3))",
        "prod(gf(2),gf(2))",
    ] {
        out.push(check_semisimple_lower(spec, 2, opts)?);
    }

    // Radical amplification with its kernel and lifting lemmas.
    for spec in ["zmod(4)", "zmod(9)", "trunc(gf(2),2)"] {
        out.push(check_jacobson_amplification(spec, 2, opts)?);
    }

    // Solvability threshold experiments and the ideal obstruction.
    out.push(edot_check("gf(5)", 2, 200, 42, opts)?);
    out.push(edot_check("gf(7)", 2, 200, 42, opts)?);
    out.push(ideal_obstruction("zmod(4)", 2, None)?);

    // Ideal size bound implied by the solvability threshold (with the
    // flagged reading of the modulus as |R|).
    for spec in ["zmod(4)", "mat(2,gf(2))"] {
        out.push(check_ideal_bound_reading(spec, 2, opts)?);
    }

    // Dot-product graph regularity, connectivity, and spectral gap.
    out.push(check_graph(3, 2, opts)?);
    out.push(check_graph(2, 3, opts)?);
    out.push(check_graph(2, 2, opts)?);

    // Odd-subset count identity used by the exact two-element-field value.
    out.push(check_odd_subsets(20)?);

    Ok(out)
}
