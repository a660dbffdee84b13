use anyhow::{Context, Result};
use ringsalem::incidence::SpectralReport;
use ringsalem::verify::ScanRow;

/// 12 significant digits for CSV and text; JSON keeps full round-trip
/// precision through serde.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    format!("{x:.11e}")
}

pub fn report_csv_header() -> &'static str {
    "ring,d,t_label,norm_W,norm_V,salem,method,iterations,residual,tolerance,converged"
}

pub fn report_csv_row(r: &SpectralReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        csv_field(&r.ring),
        r.d,
        csv_field(&r.t_label),
        sig12(r.norm_w),
        sig12(r.norm_v),
        sig12(r.salem),
        r.method,
        r.iterations,
        sig12(r.residual),
        sig12(r.tolerance),
        r.converged
    )
}

pub fn report_text(r: &SpectralReport) -> String {
    format!(
        "ring:       {}\nd:          {}\nt:          {}\nnorm_W:     {}\nnorm_V:     {}\nsalem:      {}\nmethod:     {}\niterations: {}\nresidual:   {}\ntolerance:  {}\nconverged:  {}\n",
        r.ring,
        r.d,
        r.t_label,
        sig12(r.norm_w),
        sig12(r.norm_v),
        sig12(r.salem),
        r.method,
        r.iterations,
        sig12(r.residual),
        sig12(r.tolerance),
        r.converged
    )
}

pub fn scan_csv_header() -> &'static str {
    "spec,size,radical_size,quotient_shape,d,t_label,salem,norm_W,method,residual,converged"
}

pub fn scan_csv_row(r: &ScanRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        csv_field(&r.spec),
        r.size,
        r.radical_size,
        csv_field(&r.quotient_shape),
        r.d,
        csv_field(&r.t_label),
        sig12(r.salem),
        sig12(r.norm_w),
        r.method,
        sig12(r.residual),
        r.converged
    )
}

/// Quote fields containing the delimiter (ring specs contain commas).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Write to the given path or standard output.
pub fn emit(output: Option<&str>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("cannot write {path}"))?
        }
        None => print!("{content}"),
    }
    Ok(())
}
