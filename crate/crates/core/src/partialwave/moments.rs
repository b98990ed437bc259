//! Moments over the half domain `0 <= x <= y`:
//! `T(P, Q; a, b) = ∫_0^∞ dy y^Q e^{-b y} ∫_0^y dx x^P e^{-a x}`.
//!
//! Expanding the incomplete gamma function gives
//! `T = P! / (a+b)^{P+Q+2} · U(P, Q)` with
//! `U(P, Q) = Σ_{i>P} (Q+i)!/i! ξ^{i−P−1}`, `ξ = a/(a+b)`,
//! which obeys `U(P−1, Q) = (Q+P)!/P! + ξ U(P, Q)`. Every term is positive.
//! `Q` may be negative as long as `P + Q >= -1`.

use crate::numerics::{factorials, Real};

pub(crate) struct HalfMoments<R> {
    p_max: i64,
    q_min: i64,
    q_max: i64,
    data: Vec<Option<R>>,
}

impl<R: Real> HalfMoments<R> {
    /// Table for `0 <= P <= p_max`, `q_min <= Q <= q_max`, `P + Q >= -1`.
    pub(crate) fn new(a: &R, b: &R, p_max: i64, q_min: i64, q_max: i64) -> Self {
        assert!(*a > R::zero() && *b > R::zero(), "nonpositive exponent");
        assert!(p_max >= 0 && q_min <= q_max);
        let s = a.clone() + b;
        let xi = a.clone() / &s;
        let inv_s = R::one() / &s;
        let top = (p_max + q_max.max(0) + 2) as usize;
        let fact = factorials::<R>(top + 1);
        let eps = R::epsilon();

        let width = (q_max - q_min + 1) as usize;
        let mut data: Vec<Option<R>> = vec![None; (p_max as usize + 1) * width];
        // inverse powers of (a+b)
        let mut inv_pow = Vec::with_capacity(top + 1);
        let mut pw = R::one();
        for _ in 0..=top {
            inv_pow.push(pw.clone());
            pw *= &inv_s;
        }
        // (Q+P)!/P! for Q possibly negative
        let ratio = |q: i64, p: i64| -> R {
            let num = (q + p) as usize;
            fact[num].clone() / &fact[p as usize]
        };

        for q in q_min..=q_max {
            let p_lo = (-q - 1).max(0);
            if p_lo > p_max {
                continue;
            }
            // series for U(p_max, q); ratio of consecutive terms is ξ (q+i+1)/(i+1)
            let mut i = p_max + 1;
            let mut term = ratio(q, i);
            let mut u = term.clone();
            loop {
                term *= xi.clone() * R::from_i64(q + i + 1) / R::from_i64(i + 1);
                u += &term;
                i += 1;
                let decreasing = xi.to_f64() * (q + i + 1) as f64 / (i + 1) as f64 <= 0.999;
                if decreasing && term <= u.clone() * &eps {
                    break;
                }
            }
            let mut p = p_max;
            loop {
                let t = fact[p as usize].clone() * &inv_pow[(p + q + 2) as usize] * &u;
                data[p as usize * width + (q - q_min) as usize] = Some(t);
                if p == p_lo {
                    break;
                }
                u = ratio(q, p) + xi.clone() * &u;
                p -= 1;
            }
        }
        HalfMoments {
            p_max,
            q_min,
            q_max,
            data,
        }
    }

    pub(crate) fn get(&self, p: i64, q: i64) -> &R {
        assert!(
            (0..=self.p_max).contains(&p) && (self.q_min..=self.q_max).contains(&q),
            "moment ({p},{q}) outside table"
        );
        let width = (self.q_max - self.q_min + 1) as usize;
        self.data[p as usize * width + (q - self.q_min) as usize]
            .as_ref()
            .unwrap_or_else(|| panic!("moment ({p},{q}) diverges"))
    }
}
