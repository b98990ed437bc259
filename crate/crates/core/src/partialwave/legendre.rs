//! Legendre coefficients of `r12^c`.
//!
//! `r12^c = Σ_l g_l^{(c)}(r1, r2) P_l(cos θ)` with
//! `g_l^{(c)} = (2l+1)/2 ∫ (r1² + r2² − 2 r1 r2 t)^{c/2} P_l(t) dt`.

use crate::numerics::{binomial, factorials, from_u128, Real};

/// Coefficients `c_s` such that `g_l^{(k)} = Σ_s c_s r<^{l+2s} r>^{k−l−2s}`.
///
/// Terminating hypergeometric form
/// `g_l^{(k)} = (−k/2)_l / (1/2)_l · r<^l r>^{k−l} ₂F₁(l − k/2, −(k+1)/2; l + 3/2; r<²/r>²)`.
/// The series stops after `(k+1)/2` steps for odd `k`; for even `k` it is
/// empty when `l > k/2`.
pub(crate) fn sack_coefficients<R: Real>(k: u32, l: u32) -> Vec<R> {
    let (k, l) = (k as i64, l as i64);
    let mut pre = R::one();
    for j in 0..l {
        let num = 2 * j - k;
        if num == 0 {
            return Vec::new();
        }
        pre *= R::from_i64(num) / R::from_i64(2 * j + 1);
    }
    let mut out = vec![pre.clone()];
    let mut cur = pre;
    let mut j = 0i64;
    loop {
        let n1 = 2 * l - k + 2 * j;
        let n2 = 2 * j - k - 1;
        if n1 == 0 || n2 == 0 {
            break;
        }
        cur *= R::from_i64(n1 * n2) / R::from_i64(2 * (2 * l + 3 + 2 * j) * (j + 1));
        out.push(cur.clone());
        j += 1;
    }
    out
}

fn ordered<R: Real>(r1: &R, r2: &R) -> (R, R) {
    if r1 <= r2 {
        (r1.clone(), r2.clone())
    } else {
        (r2.clone(), r1.clone())
    }
}

/// `g_l^{(c)}(r1, r2)` from the closed form.
pub fn r12_legendre_coeff<R: Real>(c: u32, l: u32, r1: &R, r2: &R) -> R {
    let (lo, hi) = ordered(r1, r2);
    let x = lo.clone() / &hi;
    let x2 = x.clone() * &x;
    let coeffs = sack_coefficients::<R>(c, l);
    let mut acc = R::zero();
    for cs in coeffs.iter().rev() {
        acc = acc * &x2 + cs;
    }
    acc * x.powi(l as i32) * hi.powi(c as i32)
}

/// `∫_{-1}^{1} t^s P_l(t) dt`.
fn monomial_moment<R: Real>(s: u32, l: u32, fact: &[R]) -> R {
    if s < l || (s - l) % 2 == 1 {
        return R::zero();
    }
    let (s, l) = (s as usize, l as usize);
    let two = R::from_i64(2);
    two.powi(l as i32 + 1) * &fact[s] * &fact[(s + l) / 2]
        / (fact[(s - l) / 2].clone() * &fact[s + l + 1])
}

/// `g_l^{(c)}` for even `c` from the exact polynomial expansion in `t`.
///
/// # Panics
/// If `c` is odd.
pub fn r12_legendre_coeff_polynomial<R: Real>(c: u32, l: u32, r1: &R, r2: &R) -> R {
    assert!(c % 2 == 0, "polynomial route needs an even power");
    let h = c / 2;
    let fact = factorials::<R>((2 * h + l + 2) as usize);
    let a = r1.clone() * r1 + r2.clone() * r2;
    let b = R::from_i64(-2) * r1 * r2;
    let mut acc = R::zero();
    for j in l..=h {
        let w = from_u128::<R>(binomial(h, j)) * a.powi((h - j) as i32) * b.powi(j as i32);
        acc += w * monomial_moment(j, l, &fact);
    }
    acc * R::from_i64(2 * l as i64 + 1) / R::from_i64(2)
}

/// Legendre polynomial `P_n(t)` and its derivative.
pub(crate) fn legendre_p<R: Real>(n: u32, t: &R) -> (R, R) {
    let mut p0 = R::one();
    if n == 0 {
        return (p0, R::zero());
    }
    let mut p1 = t.clone();
    for k in 2..=n as i64 {
        let p2 = (R::from_i64(2 * k - 1) * t * &p1 - R::from_i64(k - 1) * &p0) / R::from_i64(k);
        p0 = p1;
        p1 = p2;
    }
    // (1 - t²) P_n' = n (P_{n-1} - t P_n)
    let dp = R::from_i64(n as i64) * (p0 - t.clone() * &p1) / (R::one() - t.clone() * t);
    (p1, dp)
}

/// Gauss–Legendre nodes and weights of the given order on `[-1, 1]`.
pub fn gauss_legendre<R: Real>(order: usize) -> Vec<(R, R)> {
    let n = order as u32;
    let mut out = Vec::with_capacity(order);
    let tol = R::epsilon() * R::from_f64(16.0);
    for i in 0..order {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut t = R::from_f64(guess);
        for _ in 0..100 {
            let (p, dp) = legendre_p(n, &t);
            let step = p / &dp;
            t -= &step;
            if step.abs() <= tol {
                break;
            }
        }
        let (_, dp) = legendre_p(n, &t);
        let w = R::from_i64(2) / ((R::one() - t.clone() * &t) * &dp * &dp);
        out.push((t, w));
    }
    out
}

/// `g_l^{(c)}` by Gauss–Legendre quadrature in `t`.
pub fn r12_legendre_coeff_quadrature<R: Real>(
    c: u32,
    l: u32,
    r1: &R,
    r2: &R,
    rule: &[(R, R)],
) -> R {
    let a = r1.clone() * r1 + r2.clone() * r2;
    let b = R::from_i64(2) * r1 * r2;
    let half_c = c as i32;
    let mut acc = R::zero();
    for (t, w) in rule {
        let base = (a.clone() - b.clone() * t).sqrt();
        let (p, _) = legendre_p(l, t);
        acc += w.clone() * base.powi(half_c) * p;
    }
    acc * R::from_i64(2 * l as i64 + 1) / R::from_i64(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dd, Mp224};

    #[test]
    fn known_values() {
        let one = Dd::one();
        assert!(
            (r12_legendre_coeff(0, 0, &one, &one) - Dd::one())
                .abs()
                .to_f64()
                < 1e-30
        );
        assert!(r12_legendre_coeff(0, 3, &one, &one).is_zero());
        assert!(
            (r12_legendre_coeff(2, 1, &one, &one) + Dd::from_f64(2.0))
                .abs()
                .to_f64()
                < 1e-30
        );
        let v = r12_legendre_coeff(1, 0, &one, &one).to_f64();
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn low_order_closed_forms() {
        let (r1, r2) = (0.3f64, 1.7f64);
        let g10 = r12_legendre_coeff(1, 0, &r1, &r2);
        assert!((g10 - (r2 + r1 * r1 / (3.0 * r2))).abs() < 1e-15);
        let g11 = r12_legendre_coeff(1, 1, &r1, &r2);
        assert!((g11 - (-r1 + r1.powi(3) / (5.0 * r2 * r2))).abs() < 1e-15);
    }

    #[test]
    fn three_routes_agree() {
        let rule = gauss_legendre::<Mp224>(60);
        for &(r1, r2) in &[(0.4, 1.3), (2.2, 0.9), (1.0, 3.5)] {
            let (a, b) = (Mp224::from_f64(r1), Mp224::from_f64(r2));
            for c in 0..=8u32 {
                for l in 0..=6u32 {
                    let closed = r12_legendre_coeff(c, l, &a, &b);
                    let quad = r12_legendre_coeff_quadrature(c, l, &a, &b, &rule);
                    let scale = Mp224::max_of(closed.abs(), Mp224::one());
                    let tol = if c % 2 == 0 { 1e-50 } else { 1e-40 };
                    assert!(
                        ((closed.clone() - &quad) / &scale).abs().to_f64() < tol,
                        "c={c} l={l} ({r1},{r2}): {closed} vs {quad}"
                    );
                    if c % 2 == 0 {
                        let poly = r12_legendre_coeff_polynomial(c, l, &a, &b);
                        assert!(((closed - poly) / scale).abs().to_f64() < 1e-50);
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre::<Dd>(12);
        let wsum: Dd = rule.iter().fold(Dd::zero(), |a, (_, w)| a + w);
        assert!((wsum - Dd::from_f64(2.0)).abs().to_f64() < 1e-30);
        let m22: Dd = rule
            .iter()
            .fold(Dd::zero(), |a, (t, w)| a + w.clone() * t.powi(22));
        assert!(
            (m22 - Dd::from_f64(2.0) / Dd::from_f64(23.0))
                .abs()
                .to_f64()
                < 1e-30
        );
    }
}
