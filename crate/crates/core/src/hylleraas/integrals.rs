//! Three-body radial integrals over the triangle domain of `(r1, r2, r12)`.
//!
//! In perimetric coordinates `x = r2 + r12 - r1`, `y = r1 + r12 - r2`,
//! `z = r1 + r2 - r12` the domain becomes the positive octant, the exponential
//! factorises, and every monomial expands with positive binomial weights, so
//! the closed form is a sum of positive terms.

use crate::numerics::{binomial, factorials, from_u128, Real};

use super::HylleraasError;

/// `∫∫∫ r1^A r2^B r12^C e^{-a r1 - b r2} dr1 dr2 dr12` over `|r1 - r2| <= r12 <= r1 + r2`
/// for nonnegative integer powers, tabulated for one exponent pair.
pub(crate) struct TriangleIntegrals<R> {
    /// `Z_p = p! / ((a+b)/2)^{p+1}`
    z: Vec<R>,
    max_a: usize,
    max_b: usize,
    max_c: usize,
    /// `conv[c][j][i] = Σ_l C(c,l) X_{j+l} Y_{i+c-l}`
    conv: Vec<Vec<Vec<R>>>,
    cache: Vec<Option<R>>,
    binom: Vec<Vec<R>>,
    pow_half: Vec<R>,
}

impl<R: Real> TriangleIntegrals<R> {
    pub(crate) fn new(
        a: &R,
        b: &R,
        max_a: usize,
        max_b: usize,
        max_c: usize,
    ) -> Result<Self, HylleraasError> {
        if *a <= R::zero() || *b <= R::zero() {
            return Err(HylleraasError::DivergentIntegral(format!(
                "nonpositive exponents ({}, {})",
                a.to_f64(),
                b.to_f64()
            )));
        }
        let half = R::from_f64(0.5);
        let len = max_a + max_b + max_c + 2;
        let fact = factorials::<R>(len + 1);
        let series = |rate: R| -> Vec<R> {
            let inv = R::one() / rate;
            let mut pw = inv.clone();
            let mut out = Vec::with_capacity(len);
            for f in fact.iter().take(len) {
                out.push(f.clone() * &pw);
                pw *= &inv;
            }
            out
        };
        // X_p = p! / (b/2)^{p+1}, Y_p = p! / (a/2)^{p+1}
        let x = series(b.clone() * &half);
        let y = series(a.clone() * &half);
        let z = series((a.clone() + b) * &half);
        let nb = max_a.max(max_b).max(max_c) + 1;
        let binom: Vec<Vec<R>> = (0..nb)
            .map(|n| {
                (0..=n)
                    .map(|k| from_u128::<R>(binomial(n as u32, k as u32)))
                    .collect()
            })
            .collect();
        let mut pow_half = Vec::with_capacity(len + 2);
        let mut p = R::one();
        for _ in 0..len + 2 {
            pow_half.push(p.clone());
            p *= &half;
        }
        let mut conv = Vec::with_capacity(max_c + 1);
        for c in 0..=max_c {
            let mut by_j = Vec::with_capacity(max_b + 1);
            for j in 0..=max_b {
                let mut by_i = Vec::with_capacity(max_a + 1);
                for i in 0..=max_a {
                    let mut acc = R::zero();
                    for l in 0..=c {
                        let t = x[j + l].clone() * &y[i + c - l];
                        acc.add_mul(&binom_get(&binom, c, l), &t);
                    }
                    by_i.push(acc);
                }
                by_j.push(by_i);
            }
            conv.push(by_j);
        }
        Ok(TriangleIntegrals {
            z,
            max_a,
            max_b,
            max_c,
            conv,
            cache: vec![None; (max_a + 1) * (max_b + 1) * (max_c + 1)],
            binom,
            pow_half,
        })
    }

    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * (self.max_b + 1) + b) * (self.max_c + 1) + c
    }

    /// Integral with powers `(pa, pb, pc)` on `(r1, r2, r12)`.
    pub(crate) fn get(&mut self, pa: i64, pb: i64, pc: i64) -> R {
        assert!(
            pa >= 0 && pb >= 0 && pc >= 0,
            "negative power ({pa},{pb},{pc}) reached the integral table"
        );
        let (a, b, c) = (pa as usize, pb as usize, pc as usize);
        assert!(
            a <= self.max_a && b <= self.max_b && c <= self.max_c,
            "power ({a},{b},{c}) outside table bounds"
        );
        let idx = self.index(a, b, c);
        if let Some(v) = &self.cache[idx] {
            return v.clone();
        }
        let v = self.compute(a, b, c);
        self.cache[idx] = Some(v.clone());
        v
    }

    fn compute(&self, a: usize, b: usize, c: usize) -> R {
        let conv = &self.conv[c];
        let mut acc = R::zero();
        for i in 0..=a {
            let ci = binom_get(&self.binom, a, i);
            let mut inner = R::zero();
            for j in 0..=b {
                let t = conv[j][i].clone() * &self.z[a - i + b - j];
                inner.add_mul(&binom_get(&self.binom, b, j), &t);
            }
            acc.add_mul(&ci, &inner);
        }
        acc * &self.pow_half[a + b + c + 2]
    }
}

fn binom_get<R: Real>(table: &[Vec<R>], n: usize, k: usize) -> R {
    table[n][k].clone()
}

/// Volume-reduced Hylleraas integral
/// `Γ(a,b,c; α, β) = ∫∫∫ r1^{a+1} r2^{b+1} r12^{c+1} e^{-α r1 - β r2} dr1 dr2 dr12`.
///
/// The angular factor `8π²` of the full six-dimensional integral is not
/// included. Powers down to `-1` are accepted; anything lower diverges.
pub fn radial_integral<R: Real>(
    a: i64,
    b: i64,
    c: i64,
    alpha_s: &R,
    beta_s: &R,
) -> Result<R, HylleraasError> {
    if a < -1 || b < -1 || c < -1 {
        return Err(HylleraasError::DivergentIntegral(format!(
            "powers ({a},{b},{c}) below -1"
        )));
    }
    let (pa, pb, pc) = ((a + 1) as usize, (b + 1) as usize, (c + 1) as usize);
    let mut table = TriangleIntegrals::new(alpha_s, beta_s, pa, pb, pc)?;
    Ok(table.get(pa as i64, pb as i64, pc as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dd, Mp224};

    #[test]
    fn unit_value() {
        let v: Dd = radial_integral(0, 0, 0, &Dd::from_f64(2.0), &Dd::from_f64(2.0)).unwrap();
        assert!((v - Dd::from_f64(0.125)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn inverse_r12_is_finite_and_positive() {
        for (a, b) in [(0.3, 0.4), (2.0, 2.0), (5.0, 0.2)] {
            let v: f64 = radial_integral(0, 0, -1, &a, &b).unwrap();
            assert!(v.is_finite() && v > 0.0);
        }
    }

    #[test]
    fn exchange_symmetry() {
        let al = Mp224::from_f64(1.1);
        let be = Mp224::from_f64(0.7);
        let lhs = radial_integral(1, 2, 3, &al, &be).unwrap();
        let rhs = radial_integral(2, 1, 3, &be, &al).unwrap();
        assert!((lhs - rhs).abs().to_f64() < 1e-60);
    }

    #[test]
    fn repulsion_matches_screening_identity() {
        // <1/r12> = 5α/8 for e^{-α(r1+r2)}
        for al in [0.7, 1.0, 2.3] {
            let two = Dd::from_f64(2.0 * al);
            let num: Dd = radial_integral(0, 0, -1, &two, &two).unwrap();
            let den: Dd = radial_integral(0, 0, 0, &two, &two).unwrap();
            assert!(((num / den).to_f64() - 0.625 * al).abs() < 1e-15);
        }
    }

    #[test]
    fn divergent_inputs_rejected() {
        assert!(radial_integral::<f64>(0, 0, -2, &1.0, &1.0).is_err());
        assert!(radial_integral::<f64>(-2, 0, 0, &1.0, &1.0).is_err());
        assert!(radial_integral::<f64>(0, 0, 0, &-1.0, &1.0).is_err());
    }

    /// Independent route: integrate r12 analytically, then r1, r2 by nested
    /// Gauss–Laguerre-free composite Simpson on a truncated box.
    fn brute_force(a: i32, b: i32, c: i32, al: f64, be: f64) -> f64 {
        let n = 1600;
        let rmax = 40.0 / al.min(be);
        let h = rmax / n as f64;
        let w = |i: usize| {
            if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            }
        };
        let mut acc = 0.0;
        for i in 0..=n {
            let r1 = i as f64 * h;
            for j in 0..=n {
                let r2 = j as f64 * h;
                let cp = (c + 2) as f64;
                let inner = ((r1 + r2).powf(cp) - (r1 - r2).abs().powf(cp)) / cp;
                let f = r1.powi(a + 1) * r2.powi(b + 1) * inner * (-al * r1 - be * r2).exp();
                acc += w(i) * w(j) * f;
            }
        }
        acc * h * h / 9.0
    }

    #[test]
    fn agrees_with_brute_force_quadrature() {
        for &(a, b, c, al, be) in &[
            (0, 0, 0, 2.0, 2.0),
            (1, 0, 1, 1.5, 2.5),
            (2, 1, 3, 3.0, 1.2),
            (-1, 1, 0, 2.2, 1.7),
        ] {
            let exact: f64 = radial_integral(a, b, c, &al, &be).unwrap();
            let bf = brute_force(a as i32, b as i32, c as i32, al, be);
            assert!(
                ((exact - bf) / exact).abs() < 1e-7,
                "({a},{b},{c}) exact {exact} vs quadrature {bf}"
            );
        }
    }
}
