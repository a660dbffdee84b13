//! Largest-singular-value solvers for the incidence operator: exact dense
//! SVD at small scale, power iteration on the symmetrized operator above.

use super::IncidenceOperator;
use crate::util::{par_sum_f64, SplitMix64};
use nalgebra::DMatrix;

/// Dense SVD is exact to machine precision; it is used whenever the grid
/// has at most this many points.
pub const DENSE_CUTOFF: usize = 512;

const MAX_ITERATIONS: u64 = 100_000;
const RESTARTS: usize = 8;
/// Demand this many consecutive sub-tolerance Rayleigh steps before
/// declaring convergence.
const SETTLED_STEPS: u32 = 3;

/// Which domain the norm is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSpace {
    /// All functions on the grid.
    All,
    /// Mean-zero functions, realized as `A . P` with `P` the mean-zero
    /// projector (equivalent to restricting the domain).
    MeanZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SolveMethod {
    #[serde(rename = "dense-svd")]
    DenseSvd,
    #[serde(rename = "power-iteration")]
    PowerIteration,
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveMethod::DenseSvd => f.write_str("dense-svd"),
            SolveMethod::PowerIteration => f.write_str("power-iteration"),
        }
    }
}

/// Iterative-solver settings. The defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Relative Rayleigh-quotient change below which a restart settles.
    pub tol: f64,
    /// Seed for the deterministic start vectors.
    pub seed: u64,
    /// Worker threads for row-parallel application and reductions.
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            seed: 42,
            workers: 1,
        }
    }
}

/// Result of one norm computation.
#[derive(Debug, Clone, Copy)]
pub struct NormOutcome {
    pub value: f64,
    pub method: SolveMethod,
    pub iterations: u64,
    pub residual: f64,
    pub converged: bool,
}

/// Dispatch on scale: dense SVD up to [`DENSE_CUTOFF`] points, power
/// iteration beyond.
pub fn operator_norm(op: &IncidenceOperator, space: NormSpace, opts: &SolveOptions) -> NormOutcome {
    if op.points() <= DENSE_CUTOFF {
        dense_norm(op, space)
    } else {
        power_norm(op, space, opts)
    }
}

/// Exact path: materialize the (projected) matrix and take the largest
/// singular value.
pub fn dense_norm(op: &IncidenceOperator, space: NormSpace) -> NormOutcome {
    let n = op.points();
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for (x, row) in op.rows().iter().enumerate() {
        for &y in row {
            mat[(x, y as usize)] = 1.0;
        }
    }
    if space == NormSpace::MeanZero {
        // A . P = A - (row sums) x (all-ones)/n.
        let scale = 1.0 / n as f64;
        for x in 0..n {
            let row_sum: f64 = op.rows()[x].len() as f64;
            for y in 0..n {
                mat[(x, y)] -= row_sum * scale;
            }
        }
    }
    let svd = mat.svd(false, false);
    let value = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    NormOutcome {
        value,
        method: SolveMethod::DenseSvd,
        iterations: 0,
        residual: 0.0,
        converged: true,
    }
}

/// Iterative path: power iteration on `B = [P] A^T A [P]`, which is
/// symmetric positive semidefinite, so the Rayleigh quotient climbs
/// monotonically to the top eigenvalue (the squared singular value).
/// Eight deterministic seeded restarts guard against starts orthogonal to
/// the top eigenspace; the best value wins.
pub fn power_norm(op: &IncidenceOperator, space: NormSpace, opts: &SolveOptions) -> NormOutcome {
    let n = op.points();
    let workers = opts.workers.max(1);
    let tol = opts.tol.max(f64::EPSILON);

    let project = |v: &mut [f64]| {
        let mean = par_sum_f64(n, workers, |i| v[i]) / n as f64;
        for slot in v.iter_mut() {
            *slot -= mean;
        }
    };

    let mut best_value = 0.0f64;
    let mut best_residual = 0.0f64;
    let mut best_converged = true;
    let mut total_iterations = 0u64;

    let mut scratch = vec![0.0f64; n];
    let mut back = vec![0.0f64; n];

    for restart in 0..RESTARTS {
        let mut rng = SplitMix64::new(opts.seed.wrapping_add(restart as u64));
        let mut v: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        if space == NormSpace::MeanZero {
            project(&mut v);
        }
        let norm = par_sum_f64(n, workers, |i| v[i] * v[i]).sqrt();
        if norm == 0.0 {
            continue;
        }
        for slot in v.iter_mut() {
            *slot /= norm;
        }

        let mut rho_prev = 0.0f64;
        let mut residual = f64::INFINITY;
        let mut settled = 0u32;
        let mut converged = false;

        for _ in 0..MAX_ITERATIONS {
            total_iterations += 1;
            // w = B v, with the projector wrapped around A^T A as needed.
            if space == NormSpace::MeanZero {
                project(&mut v);
            }
            op.apply_real(&v, &mut scratch, false);
            op.apply_real(&scratch, &mut back, true);
            if space == NormSpace::MeanZero {
                project(&mut back);
            }

            let rho = par_sum_f64(n, workers, |i| v[i] * back[i]);
            if rho <= 0.0 {
                // The operator annihilates this direction.
                residual = 0.0;
                converged = true;
                rho_prev = 0.0;
                break;
            }
            residual = (rho - rho_prev).abs() / rho;
            rho_prev = rho;
            if residual < tol {
                settled += 1;
                if settled >= SETTLED_STEPS {
                    converged = true;
                    break;
                }
            } else {
                settled = 0;
            }

            let wnorm = par_sum_f64(n, workers, |i| back[i] * back[i]).sqrt();
            if wnorm == 0.0 {
                residual = 0.0;
                converged = true;
                rho_prev = 0.0;
                break;
            }
            for (slot, &w) in v.iter_mut().zip(back.iter()) {
                *slot = w / wnorm;
            }
        }

        let value = rho_prev.max(0.0).sqrt();
        if value > best_value {
            best_value = value;
            best_residual = residual;
            best_converged = converged;
        }
    }

    NormOutcome {
        value: best_value,
        method: SolveMethod::PowerIteration,
        iterations: total_iterations,
        residual: best_residual,
        converged: best_converged,
    }
}
