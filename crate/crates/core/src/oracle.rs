//! Grid-quadrature Schmidt and Slater spectra, used to cross-check the
//! Laguerre projection.
//!
//! The channel kernel is sampled on a uniform grid over `[0, r_max]` and the
//! weighted matrix `W^{1/2} F W^{1/2}` is diagonalized in double precision.
//! Its spectrum approximates the integral operator with kernel `f_l`.

use thiserror::Error;

use crate::numerics::{
    solve_antisymmetric_pairs, solve_symmetric, AntisymMatrix, NumericsError, PrecisionConfig,
    Real, SymMatrix,
};
use crate::partialwave::PartialWaveChannel;
use crate::rdm::{ChannelSpectrum, SpectrumKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("channel kernel at r_max is {ratio:e} of its peak; enlarge r_max")]
    BoundaryNotDecayed { ratio: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureRule {
    Trapezoid,
    Simpson,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub r_max: f64,
    /// Number of equal subintervals; even for Simpson.
    pub n_points: usize,
    pub rule: QuadratureRule,
}

/// Boundary samples must fall below this fraction of the kernel peak.
pub const BOUNDARY_RATIO: f64 = 1e-12;

impl GridSpec {
    pub fn new(r_max: f64, n_points: usize, rule: QuadratureRule) -> Result<Self, OracleError> {
        let g = GridSpec {
            r_max,
            n_points,
            rule,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(OracleError::InvalidGrid(format!(
                "r_max {} must be positive",
                self.r_max
            )));
        }
        if self.n_points < 2 {
            return Err(OracleError::InvalidGrid(
                "need at least 2 subintervals".into(),
            ));
        }
        if self.rule == QuadratureRule::Simpson && self.n_points % 2 == 1 {
            return Err(OracleError::InvalidGrid(format!(
                "Simpson needs an even number of subintervals, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Nodes `r_i = i h` and weights, `i = 0..=n_points`.
    pub fn nodes(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n_points;
        let h = self.r_max / n as f64;
        let r = (0..=n).map(|i| i as f64 * h).collect();
        let w = (0..=n)
            .map(|i| match self.rule {
                QuadratureRule::Trapezoid => {
                    if i == 0 || i == n {
                        h / 2.0
                    } else {
                        h
                    }
                }
                QuadratureRule::Simpson => {
                    if i == 0 || i == n {
                        h / 3.0
                    } else if i % 2 == 1 {
                        4.0 * h / 3.0
                    } else {
                        2.0 * h / 3.0
                    }
                }
            })
            .collect();
        (r, w)
    }
}

/// Kernel samples `F_ij = f_l(r_i, r_j)` for `i <= j`, row-major over the
/// full square.
fn sample_kernel<R: Real>(channel: &PartialWaveChannel<R>, r: &[f64]) -> Vec<f64> {
    let n = r.len();
    let max_p = channel.max_p().max(0) as usize;
    let (q_lo, q_hi) = channel.q_range();
    let nodes: Vec<R> = r.iter().map(|&x| R::from_f64(x)).collect();
    let pow_table = |lo: i64, hi: i64| -> Vec<Vec<R>> {
        nodes
            .iter()
            .map(|x| {
                if x.is_zero() {
                    return vec![R::zero(); (hi - lo + 1) as usize];
                }
                (lo..=hi).map(|k| x.powi(k as i32)).collect()
            })
            .collect()
    };
    let p_pow = pow_table(0, max_p as i64);
    let q_pow = pow_table(q_lo, q_hi);
    let exps: Vec<(Vec<R>, Vec<R>)> = channel
        .pieces
        .iter()
        .map(|pc| {
            let ea = nodes.iter().map(|x| (-(pc.a.clone() * x)).exp()).collect();
            let eb = nodes.iter().map(|x| (-(pc.b.clone() * x)).exp()).collect();
            (ea, eb)
        })
        .collect();
    let sign = channel.sign() as f64;
    let mut f = vec![0.0; n * n];
    for i in 1..n {
        for j in i..n {
            let mut total = R::zero();
            for (pc, (ea, eb)) in channel.pieces.iter().zip(&exps) {
                let mut acc = R::zero();
                for (p, q, c) in &pc.monomials {
                    acc += c.clone() * &p_pow[i][*p as usize] * &q_pow[j][(q - q_lo) as usize];
                }
                total += acc * &ea[i] * &eb[j];
            }
            let v = total.to_f64();
            f[i * n + j] = v;
            f[j * n + i] = sign * v;
        }
    }
    f
}

/// Spectrum of the discretized channel kernel.
pub fn grid_spectrum<R: Real>(
    channel: &PartialWaveChannel<R>,
    grid: &GridSpec,
) -> Result<ChannelSpectrum<f64>, OracleError> {
    grid.validate()?;
    let (r, w) = grid.nodes();
    let n = r.len();
    let f = sample_kernel(channel, &r);
    let peak = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let edge = (0..n).fold(0.0f64, |m, j| m.max(f[(n - 1) * n + j].abs()));
    if peak > 0.0 && edge > BOUNDARY_RATIO * peak {
        return Err(OracleError::BoundaryNotDecayed { ratio: edge / peak });
    }
    let sw: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let cfg = PrecisionConfig::with_digits(15)?;
    let entry = |i: usize, j: usize| sw[i] * f[i * n + j] * sw[j];
    // the r = 0 node carries a zero row and column; drop it
    let m = n - 1;
    let values = if channel.sign() > 0 {
        solve_symmetric(
            &SymMatrix::from_upper_fn(m, |i, j| entry(i + 1, j + 1)),
            &cfg,
        )?
    } else {
        solve_antisymmetric_pairs(
            &AntisymMatrix::from_upper_fn(m, |i, j| entry(i + 1, j + 1)),
            &cfg,
        )?
    };
    Ok(ChannelSpectrum {
        l: channel.l,
        kind: if channel.sign() > 0 {
            SpectrumKind::Schmidt
        } else {
            SpectrumKind::Slater
        },
        values,
    })
}

impl QuadratureRule {
    /// Leading power of `h` in the quadrature error for smooth integrands.
    pub fn order(self) -> i32 {
        match self {
            QuadratureRule::Trapezoid => 2,
            QuadratureRule::Simpson => 4,
        }
    }
}

/// Richardson combination of the spectra on `grid` and on a grid with twice
/// as many subintervals. Values are paired by rank; the result keeps the
/// coarse length.
pub fn extrapolated_spectrum<R: Real>(
    channel: &PartialWaveChannel<R>,
    grid: &GridSpec,
) -> Result<ChannelSpectrum<f64>, OracleError> {
    let coarse = grid_spectrum(channel, grid)?;
    let fine = grid_spectrum(
        channel,
        &GridSpec {
            n_points: 2 * grid.n_points,
            ..grid.clone()
        },
    )?;
    let k = 2f64.powi(grid.rule.order());
    let values = coarse
        .values
        .iter()
        .zip(&fine.values)
        .map(|(c, f)| (k * f - c) / (k - 1.0))
        .collect();
    Ok(ChannelSpectrum { values, ..coarse })
}
