//! The averaging operator of the relation `y . x = t` on `R^d`: sparse
//! adjacency rows, application to grid functions, and operator norms on the
//! full space and on mean-zero functions.

mod spectral;

pub use spectral::{dense_norm, power_norm, NormOutcome, NormSpace, SolveMethod, SolveOptions};

use crate::harmonic::GridFunction;
use crate::ring::RingTable;
use crate::util::{checked_pow, decode_point, encode_point, par_fill};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Scale guards for operator construction.
pub const MAX_OPERATOR_POINTS: usize = 10_000_000;
pub const MAX_OPERATOR_ENTRIES: u64 = 100_000_000;

/// Sparse 0/1 matrix of the relation `y . x = t` over `R^d`, with the dot
/// product `y . x = y_1 x_1 + ... + y_d x_d` (the `y` factor multiplied on
/// the left). `rows[x]` lists the `y` with `y . x = t`; `transpose_rows[x]`
/// lists the `y` with `x . y = t`, which is the adjoint's row.
#[derive(Debug)]
pub struct IncidenceOperator {
    ring: Arc<RingTable>,
    d: usize,
    t: u16,
    workers: usize,
    rows: Vec<Vec<u32>>,
    transpose_rows: Vec<Vec<u32>>,
    entries: u64,
}

impl IncidenceOperator {
    /// Enumerate the relation. `t` must be a unit and `d >= 2`. When some
    /// coordinate of `x` is a unit the row is generated by freely varying
    /// the other coordinates and solving for that one; otherwise the full
    /// `y` grid is scanned.
    pub fn build(ring: Arc<RingTable>, d: usize, t: u16, workers: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::argument(format!("dimension must be >= 2, got {d}")));
        }
        if !ring.is_unit(t) {
            return Err(Error::argument(format!(
                "t = {} is not a unit of {}",
                ring.label(t),
                ring.name()
            )));
        }
        let m = ring.size();
        let points = checked_pow(m, d)
            .filter(|&p| p <= MAX_OPERATOR_POINTS)
            .ok_or_else(|| {
                Error::scale(format!(
                    "operator grid {m}^{d} exceeds {MAX_OPERATOR_POINTS} points"
                ))
            })?;

        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); points];
        par_fill(&mut rows, workers, |xi| {
            let mut x = vec![0u16; d];
            decode_point(xi, m, d, &mut x);
            row_for(&ring, t, &x)
        });

        let mut entries = 0u64;
        for row in &rows {
            entries += row.len() as u64;
            if entries > MAX_OPERATOR_ENTRIES {
                return Err(Error::scale(format!(
                    "operator has more than {MAX_OPERATOR_ENTRIES} incidences"
                )));
            }
        }

        // Invert rows to get the adjoint adjacency; pushing x in ascending
        // order keeps each transpose row sorted.
        let mut transpose_rows: Vec<Vec<u32>> = vec![Vec::new(); points];
        for (xi, row) in rows.iter().enumerate() {
            for &y in row {
                transpose_rows[y as usize].push(xi as u32);
            }
        }

        Ok(IncidenceOperator {
            ring,
            d,
            t,
            workers,
            rows,
            transpose_rows,
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> u16 {
        self.t
    }

    pub fn t_label(&self) -> &str {
        self.ring.label(self.t)
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Number of grid points `m^d`.
    pub fn points(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn transpose_rows(&self) -> &[Vec<u32>] {
        &self.transpose_rows
    }

    /// Total incidence count `N(R) = #{(x, y) : x . y = t}`.
    pub fn count_incidences(&self) -> u64 {
        self.entries
    }

    pub fn max_row_len(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_transpose_row_len(&self) -> usize {
        self.transpose_rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `out(x) = sum over y with y . x = t of f(y)`.
    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        self.apply_rows(f, &self.rows)
    }

    /// Adjoint application: `out(x) = sum over y with x . y = t of f(y)`.
    pub fn apply_transpose(&self, f: &GridFunction) -> Result<GridFunction> {
        self.apply_rows(f, &self.transpose_rows)
    }

    fn apply_rows(&self, f: &GridFunction, rows: &[Vec<u32>]) -> Result<GridFunction> {
        if !Arc::ptr_eq(f.ring(), &self.ring) || f.dimension() != self.d {
            return Err(Error::argument(
                "function does not live on this operator's grid".to_string(),
            ));
        }
        let vals = f.values();
        let mut out = vec![Complex64::ZERO; vals.len()];
        par_fill(&mut out, self.workers, |x| {
            rows[x].iter().map(|&y| vals[y as usize]).sum()
        });
        GridFunction::from_values(self.ring.clone(), self.d, out)
    }

    /// Real-vector application used by the iterative solver.
    pub(crate) fn apply_real(&self, input: &[f64], out: &mut [f64], transpose: bool) {
        let rows = if transpose {
            &self.transpose_rows
        } else {
            &self.rows
        };
        par_fill(out, self.workers, |x| {
            rows[x].iter().map(|&y| input[y as usize]).sum()
        });
    }

    /// Adjacency dump: one `x_index,y_index` line per incidence, rows in
    /// ascending x then y order.
    pub fn export_csv(&self) -> String {
        let mut out = String::with_capacity(self.entries as usize * 8);
        for (x, row) in self.rows.iter().enumerate() {
            for &y in row {
                out.push_str(&format!("{x},{y}\n"));
            }
        }
        out
    }

    /// JSON header describing the dumped operator.
    pub fn export_header(&self) -> ExportHeader {
        ExportHeader {
            ring: self.ring.name(),
            d: self.d,
            t_label: self.t_label().to_string(),
            incidences: self.entries,
        }
    }
}

/// Companion header for [`IncidenceOperator::export_csv`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportHeader {
    pub ring: String,
    pub d: usize,
    pub t_label: String,
    pub incidences: u64,
}

fn row_for(ring: &RingTable, t: u16, x: &[u16]) -> Vec<u32> {
    let m = ring.size();
    let d = x.len();
    let unit_pos = x.iter().position(|&c| ring.is_unit(c));
    let mut row = Vec::new();
    match unit_pos {
        Some(i) => {
            let inv = ring.inv(x[i]).expect("unit coordinate");
            let free = m.pow((d - 1) as u32);
            let mut partial = vec![0u16; d - 1];
            let mut y = vec![0u16; d];
            for combo in 0..free {
                decode_point(combo, m, d - 1, &mut partial);
                let mut acc = ring.zero();
                let mut k = 0;
                for (j, slot) in y.iter_mut().enumerate() {
                    if j == i {
                        continue;
                    }
                    *slot = partial[k];
                    acc = ring.add(acc, ring.mul(partial[k], x[j]));
                    k += 1;
                }
                // y_i * x_i = t - acc, solved by right-multiplying x_i^-1.
                y[i] = ring.mul(ring.sub(t, acc), inv);
                row.push(encode_point(&y, m) as u32);
            }
            row.sort_unstable();
        }
        None => {
            let points = m.pow(d as u32);
            let mut y = vec![0u16; d];
            for yi in 0..points {
                decode_point(yi, m, d, &mut y);
                let mut acc = ring.zero();
                for (a, b) in y.iter().zip(x) {
                    acc = ring.add(acc, ring.mul(*a, *b));
                }
                if acc == t {
                    row.push(yi as u32);
                }
            }
        }
    }
    row
}

/// Subtract the mean: the result is certified mean-zero and the operation
/// is idempotent.
pub fn mean_zero_project(f: &GridFunction) -> GridFunction {
    let mean = f.sum() / f.len() as f64;
    let mut out = f.clone();
    for v in out.values_mut() {
        *v -= mean;
    }
    debug_assert!(out.is_mean_zero());
    out
}

/// Norms and diagnostics of one operator instance: the norm on all
/// functions, the norm on mean-zero functions, and the latter normalized
/// by `|R|^((d-1)/2)` (the incidence-Salem number).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub ring: String,
    pub d: usize,
    pub t_label: String,
    pub norm_w: f64,
    pub norm_v: f64,
    pub salem: f64,
    pub method: SolveMethod,
    pub iterations: u64,
    pub residual: f64,
    pub tolerance: f64,
    pub converged: bool,
}

impl SpectralReport {
    /// Compute both norms. Grids of at most 512 points use exact dense
    /// SVD; larger ones use power iteration on the symmetrized operator.
    /// Solver diagnostics describe the mean-zero solve.
    pub fn compute(op: &IncidenceOperator, opts: &SolveOptions) -> SpectralReport {
        let w = spectral::operator_norm(op, NormSpace::MeanZero, opts);
        let v = spectral::operator_norm(op, NormSpace::All, opts);

        let m = op.ring().size() as f64;
        let d = op.dimension();
        let salem = w.value / m.powf((d as f64 - 1.0) / 2.0);

        // Mean-zero norms cannot exceed the full-space norm, and the
        // full-space norm obeys the row-size bound; allow solver slack.
        let slack = 1e-6 * v.value.max(1.0);
        assert!(w.value <= v.value + slack, "norm on W exceeds norm on V");
        let c_bound = op.max_row_len().max(op.max_transpose_row_len()) as f64;
        assert!(
            v.value <= c_bound + slack,
            "trivial row-size bound violated"
        );
        let envelope = m.powf((d as f64 - 1.0) / 2.0) * m.powf(d as f64 / 2.0);
        assert!(
            (0.0..=envelope).contains(&salem),
            "salem outside sanity envelope"
        );

        SpectralReport {
            ring: op.ring().name(),
            d,
            t_label: op.t_label().to_string(),
            norm_w: w.value,
            norm_v: v.value,
            salem,
            method: w.method,
            iterations: w.iterations,
            residual: w.residual,
            tolerance: opts.tol,
            converged: w.converged && v.converged,
        }
    }
}

impl IncidenceOperator {
    /// Operator norm on mean-zero functions (plus the full-space norm for
    /// the report invariants).
    pub fn norm_on_meanzero(&self, opts: &SolveOptions) -> SpectralReport {
        SpectralReport::compute(self, opts)
    }

    /// Same report; the full-space norm is the headline use.
    pub fn norm_on_all(&self, opts: &SolveOptions) -> SpectralReport {
        SpectralReport::compute(self, opts)
    }
}
