//! One-particle reduced density matrix of a partial-wave channel.
//!
//! Each channel function is projected onto orthonormal Laguerre functions,
//! `B_ij = ∫∫ χ_i(r1) f_l(r1, r2) χ_j(r2) dr1 dr2`. Singlet channels give a
//! symmetric `B` whose eigenvalues are the Schmidt values; triplet channels
//! give an antisymmetric `B` whose `±iλ` pairs are the Slater values. Each
//! value maps to an occupancy `Λ = (4π λ / (2l+1))²` of multiplicity `2l+1`.
//!
//! The projection is done in closed form: with `χ_i = e^{-σr/2} Σ_p A_ip r^p`
//! and `f_l` stored as monomials on `r1 <= r2`, `B = A M Aᵀ + s (A M Aᵀ)ᵀ`
//! where `M` holds half-domain moments. Intermediate cancellation in
//! `A M Aᵀ` grows with the basis size (about 22 digits at 50 functions), so
//! run the projection at 60 or more digits.

use thiserror::Error;

use crate::numerics::{
    binomial, factorials, from_u128, solve_antisymmetric_pairs, solve_symmetric, symmetric_eigen,
    AntisymMatrix, EigenPair, NumericsError, PrecisionConfig, Real, SymMatrix,
};
use crate::partialwave::moments::HalfMoments;
use crate::partialwave::{channel_weight, PartialWaveChannel};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RdmError {
    #[error("occupancy trace {trace} exceeds 1 + 1e-6")]
    TraceOutOfRange { trace: f64 },
    #[error("invalid radial basis: {0}")]
    InvalidBasis(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Orthonormal radial functions
/// `χ_i(r) = sqrt(σ i!/(i+2)!) (σr) e^{-σr/2} L_i^{(2)}(σr)`, `i = 0..size`.
#[derive(Clone, Debug)]
pub struct RadialBasis<R> {
    pub size: usize,
    pub scale: R,
    /// `coeffs[i][p-1]` multiplies `r^p e^{-σr/2}`, `p = 1..=i+1`.
    coeffs: Vec<Vec<R>>,
    norms: Vec<R>,
}

pub fn build_radial_basis<R: Real>(la_max: usize, scale: &R) -> Result<RadialBasis<R>, RdmError> {
    if la_max == 0 {
        return Err(RdmError::InvalidBasis("la_max must be at least 1".into()));
    }
    if !(*scale > R::zero()) {
        return Err(RdmError::InvalidBasis("scale must be positive".into()));
    }
    let fact = factorials::<R>(la_max + 3);
    let mut coeffs = Vec::with_capacity(la_max);
    let mut norms = Vec::with_capacity(la_max);
    for i in 0..la_max {
        let norm = (scale.clone() * &fact[i] / &fact[i + 2]).sqrt();
        let mut row = Vec::with_capacity(i + 1);
        let mut sp = scale.clone();
        for p in 1..=i + 1 {
            let c = from_u128::<R>(binomial((i + 2) as u32, (i + 1 - p) as u32)) / &fact[p - 1];
            let signed = if (p - 1) % 2 == 0 { c } else { -c };
            row.push(norm.clone() * &sp * signed);
            sp *= scale;
        }
        coeffs.push(row);
        norms.push(norm);
    }
    Ok(RadialBasis {
        size: la_max,
        scale: scale.clone(),
        coeffs,
        norms,
    })
}

impl<R: Real> RadialBasis<R> {
    /// `χ_0(r) .. χ_{size-1}(r)` via the Laguerre three-term recurrence.
    pub fn evaluate_all(&self, r: &R) -> Vec<R> {
        let x = self.scale.clone() * r;
        let damp = x.clone() * (-(x.clone() / R::from_i64(2))).exp();
        let mut out = Vec::with_capacity(self.size);
        let (mut l0, mut l1) = (R::zero(), R::zero());
        for i in 0..self.size {
            let li = if i == 0 {
                R::one()
            } else {
                // i L_i = (2i + 1 - x) L_{i-1} - (i + 1) L_{i-2}   (α = 2)
                let v =
                    (R::from_i64(2 * i as i64 + 1) - &x) * &l1 - R::from_i64(i as i64 + 1) * &l0;
                v / R::from_i64(i as i64)
            };
            out.push(self.norms[i].clone() * &damp * &li);
            l0 = std::mem::replace(&mut l1, li);
        }
        out
    }

    /// `⟨χ_i|χ_j⟩` in closed form.
    pub fn gram(&self) -> SymMatrix<R> {
        let n = self.size;
        let fact = factorials::<R>(2 * n + 2);
        let inv = R::one() / &self.scale;
        let mut pw = vec![inv.clone()];
        for _ in 0..2 * n + 1 {
            let next = pw.last().unwrap().clone() * &inv;
            pw.push(next);
        }
        SymMatrix::from_upper_fn(n, |i, j| {
            let mut acc = R::zero();
            for (p, a) in self.coeffs[i].iter().enumerate() {
                for (q, b) in self.coeffs[j].iter().enumerate() {
                    let s = p + q + 2;
                    acc += a.clone() * b * &fact[s] * &pw[s];
                }
            }
            acc
        })
    }
}

/// Projected channel matrix.
#[derive(Clone, Debug)]
pub enum Projection<R> {
    Symmetric(SymMatrix<R>),
    Antisymmetric(AntisymMatrix<R>),
}

impl<R: Real> Projection<R> {
    pub fn dim(&self) -> usize {
        match self {
            Projection::Symmetric(m) => m.dim(),
            Projection::Antisymmetric(m) => m.dim(),
        }
    }

    /// Leading `k × k` block, i.e. the projection onto the first `k` basis
    /// functions.
    pub fn leading(&self, k: usize) -> Self {
        match self {
            Projection::Symmetric(m) => Projection::Symmetric(m.leading(k)),
            Projection::Antisymmetric(m) => Projection::Antisymmetric(m.leading(k)),
        }
    }

    pub fn frobenius_norm(&self) -> R {
        match self {
            Projection::Symmetric(m) => m.frobenius_norm(),
            Projection::Antisymmetric(m) => m.frobenius_norm(),
        }
    }
}

/// Projects every channel of one state onto one radial basis, sharing the
/// moment tables.
pub struct Projector<R> {
    basis: RadialBasis<R>,
    tables: Vec<HalfMoments<R>>,
}

impl<R: Real> Projector<R> {
    /// Tables sized for every channel in `channels`.
    pub fn new(channels: &[PartialWaveChannel<R>], basis: &RadialBasis<R>) -> Self {
        let n = basis.size as i64;
        let max_p = channels.iter().map(|c| c.max_p()).max().unwrap_or(0);
        let q_lo = channels.iter().map(|c| c.q_range().0).min().unwrap_or(0);
        let q_hi = channels.iter().map(|c| c.q_range().1).max().unwrap_or(0);
        let half = basis.scale.clone() / R::from_i64(2);
        let tables = match channels.first() {
            Some(ch) => ch
                .pieces
                .iter()
                .map(|pc| {
                    HalfMoments::new(
                        &(pc.a.clone() + &half),
                        &(pc.b.clone() + &half),
                        n + max_p,
                        1 + q_lo,
                        n + q_hi,
                    )
                })
                .collect(),
            None => Vec::new(),
        };
        Projector {
            basis: basis.clone(),
            tables,
        }
    }

    pub fn basis(&self) -> &RadialBasis<R> {
        &self.basis
    }

    pub fn project(&self, channel: &PartialWaveChannel<R>) -> Projection<R> {
        let n = self.basis.size;
        // M_pq = Σ c T(p+p', q+q'), p, q = 1..=n
        let mut m = vec![R::zero(); n * n];
        for (piece, table) in channel.pieces.iter().zip(&self.tables) {
            for (pp, qq, c) in &piece.monomials {
                for p in 0..n {
                    let row = &mut m[p * n..(p + 1) * n];
                    let pi = p as i64 + 1 + pp;
                    for (q, slot) in row.iter_mut().enumerate() {
                        slot.add_mul(c, table.get(pi, q as i64 + 1 + qq));
                    }
                }
            }
        }
        // B1 = A M Aᵀ, A lower-triangular in (i, p-1)
        let a = &self.basis.coeffs;
        let mut am = vec![R::zero(); n * n];
        for i in 0..n {
            for q in 0..n {
                let mut acc = R::zero();
                for (p, aip) in a[i].iter().enumerate() {
                    acc.add_mul(aip, &m[p * n + q]);
                }
                am[i * n + q] = acc;
            }
        }
        let mut b1 = vec![R::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = R::zero();
                for (q, ajq) in a[j].iter().enumerate() {
                    acc.add_mul(&am[i * n + q], ajq);
                }
                b1[i * n + j] = acc;
            }
        }
        if channel.sign() > 0 {
            Projection::Symmetric(SymMatrix::from_upper_fn(n, |i, j| {
                b1[i * n + j].clone() + &b1[j * n + i]
            }))
        } else {
            Projection::Antisymmetric(AntisymMatrix::from_upper_fn(n, |i, j| {
                b1[i * n + j].clone() - &b1[j * n + i]
            }))
        }
    }
}

/// Project one channel; builds its own moment tables.
pub fn project_channel<R: Real>(
    channel: &PartialWaveChannel<R>,
    basis: &RadialBasis<R>,
) -> Projection<R> {
    Projector::new(std::slice::from_ref(channel), basis).project(channel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Schmidt,
    Slater,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpectrum<R> {
    pub l: u32,
    pub kind: SpectrumKind,
    /// Descending by magnitude; Slater lists one nonnegative value per pair.
    pub values: Vec<R>,
}

pub fn channel_spectrum<R: Real>(
    l: u32,
    projection: &Projection<R>,
    cfg: &PrecisionConfig,
) -> Result<ChannelSpectrum<R>, RdmError> {
    Ok(match projection {
        Projection::Symmetric(b) => ChannelSpectrum {
            l,
            kind: SpectrumKind::Schmidt,
            values: solve_symmetric(b, cfg)?,
        },
        Projection::Antisymmetric(b) => ChannelSpectrum {
            l,
            kind: SpectrumKind::Slater,
            values: solve_antisymmetric_pairs(b, cfg)?,
        },
    })
}

/// Schmidt eigenpairs of a symmetric projection, vectors in basis coordinates.
pub fn schmidt_modes<R: Real>(
    b: &SymMatrix<R>,
    cfg: &PrecisionConfig,
) -> Result<Vec<EigenPair<R>>, RdmError> {
    Ok(symmetric_eigen(b, cfg)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Occupancy<R> {
    /// Index within the channel.
    pub n: usize,
    pub l: u32,
    pub occupancy: R,
    pub degeneracy: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OccupancySet<R> {
    pub entries: Vec<Occupancy<R>>,
    /// `Σ (2l+1) Λ`.
    pub trace: R,
}

/// Weighted occupancies below this are dropped.
pub const DROP_THRESHOLD: f64 = 1e-30;

/// Map spectra to occupancies `Λ = (4π λ/(2l+1))²`; Slater pairs contribute
/// both members.
pub fn occupancies<R: Real>(spectra: &[ChannelSpectrum<R>]) -> Result<OccupancySet<R>, RdmError> {
    let drop = R::from_f64(DROP_THRESHOLD);
    let mut entries = Vec::new();
    let mut trace = R::zero();
    for sp in spectra {
        let deg = 2 * sp.l + 1;
        let w = channel_weight::<R>(sp.l) / R::from_i64(deg as i64);
        let copies = match sp.kind {
            SpectrumKind::Schmidt => 1,
            SpectrumKind::Slater => 2,
        };
        let mut n = 0;
        for v in &sp.values {
            let occ = w.clone() * v * v;
            if occ.clone() * R::from_i64(deg as i64) < drop {
                continue;
            }
            for _ in 0..copies {
                trace += occ.clone() * R::from_i64(deg as i64);
                entries.push(Occupancy {
                    n,
                    l: sp.l,
                    occupancy: occ.clone(),
                    degeneracy: deg,
                });
                n += 1;
            }
        }
    }
    if trace.to_f64() > 1.0 + 1e-6 {
        return Err(RdmError::TraceOutOfRange {
            trace: trace.to_f64(),
        });
    }
    Ok(OccupancySet { entries, trace })
}

/// Trace contribution of one projected channel, `(4π)²/(2l+1) ‖B‖_F²`,
/// without diagonalizing.
pub fn projected_weight<R: Real>(l: u32, projection: &Projection<R>) -> R {
    let f = projection.frobenius_norm();
    channel_weight::<R>(l) * &f * &f
}

/// Default Laguerre scale `2Z/(1+n)` for a `1sns` state.
pub fn default_scale(z: f64, n: usize) -> f64 {
    2.0 * z / (1.0 + n as f64)
}

/// Scale maximizing the projected weight of channels `0..=l_probe` at fixed
/// basis size, by golden-section search on `ln σ` within a factor 3 of
/// `start`.
pub fn tune_scale<R: Real>(
    channels: &[PartialWaveChannel<R>],
    la_max: usize,
    start: f64,
    l_probe: u32,
) -> Result<f64, RdmError> {
    let probe: Vec<PartialWaveChannel<R>> = channels
        .iter()
        .filter(|c| c.l <= l_probe)
        .cloned()
        .collect();
    let weight = |ln_s: f64| -> Result<f64, RdmError> {
        let basis = build_radial_basis(la_max, &R::from_f64(ln_s.exp()))?;
        let proj = Projector::new(&probe, &basis);
        let mut acc = R::zero();
        for ch in &probe {
            acc += projected_weight(ch.l, &proj.project(ch));
        }
        Ok(acc.to_f64())
    };
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (start.ln() - 3f64.ln(), start.ln() + 3f64.ln());
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = weight(x1)?;
    let mut f2 = weight(x2)?;
    while hi - lo > 1e-3 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = weight(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = weight(x2)?;
        }
    }
    Ok(((lo + hi) / 2.0).exp())
}
