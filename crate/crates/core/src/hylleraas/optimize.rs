//! Nonlinear exponent optimization: a coarse logarithmic grid scan followed by
//! Nelder–Mead refinement in `(ln α, ln β)`.

use crate::numerics::{generalized_eigenvalues, NumericsError, PrecisionConfig, Real};

use super::{
    assemble_matrices, solve_state, BasisSpec, HylleraasError, SpinSymmetry, StateSolution,
};

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeOptions {
    /// Grid points per exponent axis in the initial scan.
    pub grid_points: usize,
    /// Force `α = β` and optimize a single exponent.
    pub tie_exponents: bool,
    pub max_iterations: usize,
    /// Stop once the simplex energy spread falls below this (hartree).
    pub energy_tol: f64,
    /// Stop once the simplex diameter in log-exponent space falls below this.
    pub step_tol: f64,
    /// Initial simplex edge in log-exponent space.
    pub initial_step: f64,
    /// Start the simplex here instead of at the best grid point; the grid scan
    /// is skipped. This pins the search to the local minimum around a seed.
    pub start: Option<(f64, f64)>,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            grid_points: 5,
            tie_exponents: false,
            max_iterations: 400,
            energy_tol: 1e-13,
            step_tol: 1e-7,
            initial_step: 0.08,
            start: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Optimized<R> {
    pub alpha: f64,
    pub beta: f64,
    pub solution: StateSolution<R>,
    /// Lowest energy found on the scan grid.
    pub grid_best: f64,
    /// Best simplex energy after each refinement iteration.
    pub history: Vec<f64>,
}

/// Optimize `(α, β)` for the `root_index`-th root with default options.
pub fn optimize_exponents<R: Real>(
    basis_template: &BasisSpec,
    root_index: usize,
    cfg: &PrecisionConfig,
) -> Result<(f64, f64, StateSolution<R>), HylleraasError> {
    let o = optimize_exponents_with(basis_template, root_index, cfg, &OptimizeOptions::default())?;
    Ok((o.alpha, o.beta, o.solution))
}

fn root_energy<R: Real>(basis: &BasisSpec, root: usize) -> f64 {
    let run = || -> Result<f64, HylleraasError> {
        let (h, s) = assemble_matrices::<R>(basis)?;
        let vals = generalized_eigenvalues(&h, &s, root)?;
        Ok(vals[root - 1].to_f64())
    };
    match run() {
        Ok(e) if e.is_finite() => e,
        _ => f64::INFINITY,
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![(lo * hi).sqrt()];
    }
    (0..n)
        .map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn optimize_exponents_with<R: Real>(
    basis_template: &BasisSpec,
    root_index: usize,
    cfg: &PrecisionConfig,
    opts: &OptimizeOptions,
) -> Result<Optimized<R>, HylleraasError> {
    cfg.validate()?;
    if root_index == 0 || root_index > basis_template.len() {
        return Err(HylleraasError::InvalidRoot {
            root: root_index,
            terms: basis_template.len(),
        });
    }
    let z = basis_template.z;
    let n_eff = match basis_template.spin {
        SpinSymmetry::Singlet => root_index,
        SpinSymmetry::Triplet => root_index + 1,
    } as f64;
    let energy = |x: &[f64]| -> f64 {
        let (a, b) = if opts.tie_exponents {
            (x[0].exp(), x[0].exp())
        } else {
            (x[0].exp(), x[1].exp())
        };
        root_energy::<R>(&basis_template.with_exponents(a, b), root_index)
    };

    let mut best = (f64::INFINITY, vec![]);
    if let Some((a, b)) = opts.start {
        if !(a > 0.0 && b > 0.0) {
            return Err(HylleraasError::InvalidBasis(format!(
                "start exponents must be positive, got ({a}, {b})"
            )));
        }
        let x = if opts.tie_exponents {
            vec![a.ln()]
        } else {
            vec![a.ln(), b.ln()]
        };
        best = (energy(&x), x);
    }
    // coarse scan
    let alphas = log_grid(0.5 * z, 1.5 * z, opts.grid_points);
    if opts.start.is_none() && opts.tie_exponents {
        for &a in &alphas {
            let x = vec![a.ln()];
            let e = energy(&x);
            if e < best.0 {
                best = (e, x);
            }
        }
    } else if opts.start.is_none() {
        let betas = log_grid(0.5 * z / n_eff, 2.0 * z, opts.grid_points);
        for &a in &alphas {
            for &b in &betas {
                let x = vec![a.ln(), b.ln()];
                let e = energy(&x);
                if e < best.0 {
                    best = (e, x);
                }
            }
        }
    }
    let grid_best = best.0;
    if !grid_best.is_finite() {
        return Err(NumericsError::NotPositiveDefinite { index: 0 }.into());
    }
    log::debug!("grid scan best E = {grid_best} at {:?}", best.1);

    let (x, history, converged) = nelder_mead(&energy, best.1, grid_best, opts);
    if !converged {
        return Err(NumericsError::NoConvergence {
            stage: "exponent simplex",
            iterations: opts.max_iterations,
        }
        .into());
    }
    let (alpha, beta) = if opts.tie_exponents {
        (x[0].exp(), x[0].exp())
    } else {
        (x[0].exp(), x[1].exp())
    };
    let solution = solve_state::<R>(&basis_template.with_exponents(alpha, beta), root_index, cfg)?;
    Ok(Optimized {
        alpha,
        beta,
        solution,
        grid_best,
        history,
    })
}

/// Minimize `f` from `x0`; returns the best vertex, the best value after each
/// iteration and whether a stopping tolerance was met.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    x0: Vec<f64>,
    f0: f64,
    opts: &OptimizeOptions,
) -> (Vec<f64>, Vec<f64>, bool) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.clone(), f0)];
    for i in 0..d {
        let mut x = x0.clone();
        x[i] += opts.initial_step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut history = Vec::new();
    let sort = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    sort(&mut simplex);
    for _ in 0..opts.max_iterations {
        let spread = simplex[d].1 - simplex[0].1;
        let diam = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread.is_finite() && (spread <= opts.energy_tol || diam <= opts.step_tol) {
            return (simplex[0].0.clone(), history, true);
        }
        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..d].iter().map(|(x, _)| x[j]).sum::<f64>() / d as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[d].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[d].1 {
                let x = along(0.5);
                let fx = f(&x);
                (x, fx)
            } else {
                let x = along(-0.5);
                let fx = f(&x);
                (x, fx)
            };
            if fc < simplex[d].1.min(fr) {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> =
                        v.0.iter()
                            .zip(&best)
                            .map(|(a, b)| b + 0.5 * (a - b))
                            .collect();
                    let fx = f(&x);
                    *v = (x, fx);
                }
            }
        }
        sort(&mut simplex);
        history.push(simplex[0].1);
    }
    (simplex[0].0.clone(), history, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Dd;

    #[test]
    fn single_term_optimum_is_27_over_16() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let b = BasisSpec::new(2.0, 0, SpinSymmetry::Singlet, 1.0, 1.0).unwrap();
        let opts = OptimizeOptions {
            tie_exponents: true,
            ..OptimizeOptions::default()
        };
        let o = optimize_exponents_with::<Dd>(&b, 1, &cfg, &opts).unwrap();
        assert!((o.alpha - 27.0 / 16.0).abs() < 1e-3, "alpha = {}", o.alpha);
        assert!(o.solution.energy.to_f64() <= o.grid_best + 1e-15);
        assert!(o.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = OptimizeOptions {
            energy_tol: 1e-20,
            step_tol: 1e-10,
            max_iterations: 2000,
            initial_step: 0.5,
            ..OptimizeOptions::default()
        };
        let (x, hist, ok) = nelder_mead(&f, vec![-1.2, 1.0], f(&[-1.2, 1.0]), &opts);
        assert!(ok);
        assert!(
            (x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4,
            "{x:?}"
        );
        assert!(hist.windows(2).all(|w| w[1] <= w[0]));
    }
}
