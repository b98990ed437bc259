//! Legendre partial-wave expansion of a solved S state.
//!
//! `Ψ(r1, r2, r12) = Σ_l F_l(r1, r2) P_l(cos θ)` and `f_l = r1 r2 F_l`.
//! With `Ψ` normalized over all six coordinates, channel `l` carries the
//! weight `(4π)² / (2l+1) ∫∫ f_l² dr1 dr2`, and the Schmidt values `λ` of
//! `f_l` map to occupancies `Λ = (4π λ / (2l+1))²`; see [`channel_weight`].
//!
//! Each `f_l` is piecewise: on `r1 <= r2` it is a finite sum of
//! `r1^p r2^q e^{-a r1 - b r2}` over two exponent pairs, and on `r1 > r2`
//! it follows from exchange symmetry. Everything downstream integrates these
//! pieces in closed form.

mod legendre;
pub(crate) mod moments;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::hylleraas::StateSolution;
use crate::numerics::Real;

pub(crate) use legendre::sack_coefficients;
pub use legendre::{
    gauss_legendre, r12_legendre_coeff, r12_legendre_coeff_polynomial,
    r12_legendre_coeff_quadrature,
};
use moments::HalfMoments;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartialWaveError {
    #[error("invalid expansion policy: {0}")]
    InvalidPolicy(String),
    #[error("channel l={l} exceeds l_max={l_max}")]
    ChannelOutOfRange { l: u32, l_max: u32 },
}

/// Channel truncation and the Gauss–Legendre order for the quadrature route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionPolicy {
    pub l_max: u32,
    pub gl_order: u32,
}

impl ExpansionPolicy {
    /// Smallest admissible quadrature order for a basis of size `omega`.
    pub fn new(l_max: u32, omega: u32) -> Self {
        ExpansionPolicy {
            l_max,
            gl_order: 2 * l_max + omega + 4,
        }
    }

    pub fn validate(&self, omega: u32) -> Result<(), PartialWaveError> {
        if self.gl_order < 2 * self.l_max + omega + 4 {
            return Err(PartialWaveError::InvalidPolicy(format!(
                "gl_order {} below 2*l_max + omega + 4 = {}",
                self.gl_order,
                2 * self.l_max + omega + 4
            )));
        }
        Ok(())
    }
}

impl Default for ExpansionPolicy {
    fn default() -> Self {
        ExpansionPolicy::new(40, 16)
    }
}

/// `(4π)² / (2l+1)`: the factor converting `∫∫ f_l²` into the weight of
/// channel `l` in `⟨Ψ|Ψ⟩`, and `λ²` into `(2l+1) Λ`.
pub fn channel_weight<R: Real>(l: u32) -> R {
    let four_pi = R::from_i64(4) * R::pi();
    four_pi.clone() * &four_pi / R::from_i64(2 * l as i64 + 1)
}

/// Monomials `coef · r1^p r2^q` sharing one exponential `e^{-a r1 - b r2}`.
#[derive(Clone, Debug)]
pub(crate) struct Piece<R> {
    pub(crate) a: R,
    pub(crate) b: R,
    pub(crate) monomials: Vec<(i64, i64, R)>,
}

/// One Legendre channel of a state.
#[derive(Clone, Debug)]
pub struct PartialWaveChannel<R> {
    pub l: u32,
    pub state: Arc<StateSolution<R>>,
    /// `f_l` on `r1 <= r2`.
    pub(crate) pieces: [Piece<R>; 2],
}

impl<R: Real> PartialWaveChannel<R> {
    /// `+1` singlet, `-1` triplet.
    pub fn sign(&self) -> i64 {
        self.state.basis.spin.sign()
    }

    /// `f_l(r1, r2) = r1 r2 F_l(r1, r2)`.
    pub fn evaluate(&self, r1: &R, r2: &R) -> R {
        if r1 > r2 {
            return R::from_i64(self.sign()) * self.evaluate(r2, r1);
        }
        if *r1 <= R::zero() {
            return R::zero();
        }
        let mut total = R::zero();
        for piece in &self.pieces {
            let mut acc = R::zero();
            for (p, q, c) in &piece.monomials {
                acc += c.clone() * r1.powi(*p as i32) * r2.powi(*q as i32);
            }
            total += acc * (-(piece.a.clone() * r1) - piece.b.clone() * r2).exp();
        }
        total
    }

    pub(crate) fn max_p(&self) -> i64 {
        self.pieces
            .iter()
            .flat_map(|p| p.monomials.iter().map(|m| m.0))
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn q_range(&self) -> (i64, i64) {
        let qs = self
            .pieces
            .iter()
            .flat_map(|p| p.monomials.iter().map(|m| m.1));
        let lo = qs.clone().min().unwrap_or(0);
        let hi = qs.max().unwrap_or(0);
        (lo, hi)
    }
}

/// Build channel `l` of a state. The state is used as given; normalize it
/// first for unit total weight.
pub fn build_channel<R: Real>(
    state: &StateSolution<R>,
    l: u32,
    policy: &ExpansionPolicy,
) -> Result<PartialWaveChannel<R>, PartialWaveError> {
    policy.validate(state.basis.omega)?;
    if l > policy.l_max {
        return Err(PartialWaveError::ChannelOutOfRange {
            l,
            l_max: policy.l_max,
        });
    }
    Ok(channel_from(Arc::new(state.clone()), l))
}

/// Channels `0..=policy.l_max` sharing one copy of the state.
pub fn build_channels<R: Real>(
    state: &StateSolution<R>,
    policy: &ExpansionPolicy,
) -> Result<Vec<PartialWaveChannel<R>>, PartialWaveError> {
    policy.validate(state.basis.omega)?;
    let shared = Arc::new(state.clone());
    Ok((0..=policy.l_max)
        .map(|l| channel_from(shared.clone(), l))
        .collect())
}

fn channel_from<R: Real>(state: Arc<StateSolution<R>>, l: u32) -> PartialWaveChannel<R> {
    let basis = &state.basis;
    let alpha = R::from_f64(basis.alpha);
    let beta = R::from_f64(basis.beta);
    let sign = R::from_i64(basis.spin.sign());
    let coeffs = state.scaled_coefficients();
    let max_k = basis.terms.iter().map(|t| t.k).max().unwrap_or(0);
    let sack: Vec<Vec<R>> = (0..=max_k).map(|k| sack_coefficients(k, l)).collect();

    let mut direct: BTreeMap<(i64, i64), R> = BTreeMap::new();
    let mut swapped: BTreeMap<(i64, i64), R> = BTreeMap::new();
    let l_i = l as i64;
    for (t, c) in basis.terms.iter().zip(&coeffs) {
        let (k, m, n) = (t.k as i64, t.m as i64, t.n as i64);
        for (s, cs) in sack[t.k as usize].iter().enumerate() {
            let s = s as i64;
            let lo = l_i + 2 * s;
            let hi = k - l_i - 2 * s;
            let w = c.clone() * cs;
            *direct
                .entry((m + 1 + lo, n + 1 + hi))
                .or_insert_with(R::zero) += &w;
            *swapped
                .entry((n + 1 + lo, m + 1 + hi))
                .or_insert_with(R::zero) += sign.clone() * &w;
        }
    }
    let collect = |map: BTreeMap<(i64, i64), R>| {
        map.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((p, q), c)| (p, q, c))
            .collect()
    };
    PartialWaveChannel {
        l,
        pieces: [
            Piece {
                a: alpha.clone(),
                b: beta.clone(),
                monomials: collect(direct),
            },
            Piece {
                a: beta,
                b: alpha,
                monomials: collect(swapped),
            },
        ],
        state,
    }
}

/// Weight of the channel in `⟨Ψ|Ψ⟩`: `(4π)²/(2l+1) ∫∫ f_l² dr1 dr2`, in closed
/// form.
pub fn channel_norm<R: Real>(channel: &PartialWaveChannel<R>) -> R {
    // ∫∫ f² = 2 ∫∫_{r1<r2} f², and on r1<r2 f is a sum over two pieces
    let p_max = 2 * channel.max_p() + 1;
    let (q_lo, q_hi) = channel.q_range();
    let mut total = R::zero();
    for (i, pi) in channel.pieces.iter().enumerate() {
        for pj in channel.pieces.iter().skip(i) {
            let a = pi.a.clone() + &pj.a;
            let b = pi.b.clone() + &pj.b;
            let table = HalfMoments::new(&a, &b, p_max, 2 * q_lo, 2 * q_hi + 1);
            let mut acc = R::zero();
            for (p1, q1, c1) in &pi.monomials {
                let mut inner = R::zero();
                for (p2, q2, c2) in &pj.monomials {
                    inner.add_mul(c2, table.get(p1 + p2, q1 + q2));
                }
                acc.add_mul(c1, &inner);
            }
            if std::ptr::eq(pi, pj) {
                total += acc;
            } else {
                total += acc.clone() + acc;
            }
        }
    }
    total * R::from_i64(2) * channel_weight::<R>(channel.l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hylleraas::{normalize, solve_state, BasisSpec, SpinSymmetry};
    use crate::numerics::{Dd, PrecisionConfig};

    fn state(spin: SpinSymmetry, omega: u32, a: f64, b: f64, rep: f64) -> StateSolution<Dd> {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let basis = BasisSpec::new(2.0, omega, spin, a, b)
            .unwrap()
            .with_repulsion(rep);
        normalize(&solve_state::<Dd>(&basis, 1, &cfg).unwrap()).unwrap()
    }

    #[test]
    fn exchange_symmetry_and_boundary() {
        for spin in [SpinSymmetry::Singlet, SpinSymmetry::Triplet] {
            let st = state(spin, 4, 2.1, 1.4, 1.0);
            let pol = ExpansionPolicy::new(6, 4);
            for l in 0..=3 {
                let ch = build_channel(&st, l, &pol).unwrap();
                let s = ch.sign() as f64;
                for &(x, y) in &[(0.3, 1.1), (2.0, 0.7), (1.5, 1.5)] {
                    let (x, y) = (Dd::from_f64(x), Dd::from_f64(y));
                    let f12 = ch.evaluate(&x, &y).to_f64();
                    let f21 = ch.evaluate(&y, &x).to_f64();
                    assert!((f12 - s * f21).abs() < 1e-14 * (1.0 + f12.abs()));
                }
                assert!(ch.evaluate(&Dd::zero(), &Dd::one()).is_zero());
                assert!(ch.evaluate(&Dd::one(), &Dd::zero()).is_zero());
            }
        }
    }

    #[test]
    fn triplet_vanishes_on_diagonal() {
        let st = state(SpinSymmetry::Triplet, 4, 2.1, 0.9, 1.0);
        let ch = build_channel(&st, 0, &ExpansionPolicy::new(2, 4)).unwrap();
        for r in [0.2, 1.0, 3.0] {
            let r = Dd::from_f64(r);
            assert!(ch.evaluate(&r, &r).abs().to_f64() < 1e-25);
        }
    }

    /// Direct evaluation of f_l from Ψ by quadrature over cos θ.
    #[test]
    fn channel_matches_angular_projection() {
        let st = state(SpinSymmetry::Singlet, 3, 1.9, 1.7, 1.0);
        let rule = gauss_legendre::<Dd>(80);
        let c = st.scaled_coefficients();
        let psi = |r1: f64, r2: f64, t: &Dd| -> Dd {
            let (x, y) = (Dd::from_f64(r1), Dd::from_f64(r2));
            let r12 = (x.clone() * &x + y.clone() * &y - Dd::from_f64(2.0) * &x * &y * t).sqrt();
            let (a, b) = (Dd::from_f64(st.basis.alpha), Dd::from_f64(st.basis.beta));
            let mut acc = Dd::zero();
            for (term, ci) in st.basis.terms.iter().zip(&c) {
                let d = x.powi(term.m as i32)
                    * y.powi(term.n as i32)
                    * (-(a.clone() * &x) - b.clone() * &y).exp();
                let e = x.powi(term.n as i32)
                    * y.powi(term.m as i32)
                    * (-(b.clone() * &x) - a.clone() * &y).exp();
                acc += ci.clone() * r12.powi(term.k as i32) * (d + e);
            }
            acc
        };
        for l in 0..=3u32 {
            let ch = build_channel(&st, l, &ExpansionPolicy::new(3, 3)).unwrap();
            for &(r1, r2) in &[(0.4, 1.2), (1.3, 0.8)] {
                let mut proj = Dd::zero();
                for (t, w) in &rule {
                    let (p, _) = legendre::legendre_p(l, t);
                    proj += w.clone() * psi(r1, r2, t) * p;
                }
                let f = proj * Dd::from_f64((2 * l + 1) as f64 / 2.0 * r1 * r2);
                let g = ch.evaluate(&Dd::from_f64(r1), &Dd::from_f64(r2));
                assert!((f.clone() - &g).abs().to_f64() < 1e-12, "l={l}: {f} vs {g}");
            }
        }
    }

    #[test]
    fn product_state_has_only_s_wave() {
        let st = state(SpinSymmetry::Singlet, 0, 2.0, 2.0, 0.0);
        let pol = ExpansionPolicy::new(3, 0);
        let chans = build_channels(&st, &pol).unwrap();
        assert!((channel_norm(&chans[0]).to_f64() - 1.0).abs() < 1e-25);
        for ch in &chans[1..] {
            assert!(channel_norm(ch).to_f64().abs() < 1e-12);
        }
    }

    #[test]
    fn norms_sum_toward_one() {
        let st = state(SpinSymmetry::Singlet, 5, 2.25, 2.07, 1.0);
        let pol = ExpansionPolicy::new(12, 5);
        let norms: Vec<f64> = build_channels(&st, &pol)
            .unwrap()
            .iter()
            .map(|c| channel_norm(c).to_f64())
            .collect();
        let total: f64 = norms.iter().sum();
        assert!(norms[0] > 0.99);
        assert!(total < 1.0 + 1e-12 && total > 0.9999, "total {total}");
        for w in norms[1..].windows(2) {
            assert!(w[1] < w[0], "{norms:?}");
        }
    }
}
