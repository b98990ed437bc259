//! Correlated Hylleraas bases for two-electron S states.
//!
//! A basis function is the exchange-symmetrized primitive
//!
//! ```text
//! Φ_kmn = r12^k (r1^m r2^n e^{-α r1 - β r2} ± r1^n r2^m e^{-β r1 - α r2})
//! ```
//!
//! with `k + m + n <= ω`. Matrix elements are six-dimensional integrals; the
//! angular integrations contribute the constant `8π²` and every remaining
//! integral is a [`radial_integral`].

mod integrals;
mod optimize;
mod presets;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::numerics::{
    solve_generalized_symmetric, NumericsError, PrecisionConfig, Real, SymMatrix,
};

pub use integrals::radial_integral;
pub(crate) use integrals::TriangleIntegrals;
pub use optimize::{optimize_exponents, optimize_exponents_with, OptimizeOptions, Optimized};
pub use presets::{preset_exponents, seed_exponents};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HylleraasError {
    #[error("divergent integral: {0}")]
    DivergentIntegral(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("root {root} requested from a basis of {terms} terms")]
    InvalidRoot { root: usize, terms: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Exchange symmetry of the spatial wave function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinSymmetry {
    /// Symmetric spatial part, `S = 0`.
    Singlet,
    /// Antisymmetric spatial part, `S = 1`.
    Triplet,
}

impl SpinSymmetry {
    /// `+1` for singlet, `-1` for triplet.
    pub fn sign(self) -> i64 {
        match self {
            SpinSymmetry::Singlet => 1,
            SpinSymmetry::Triplet => -1,
        }
    }
}

impl fmt::Display for SpinSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinSymmetry::Singlet => "singlet",
            SpinSymmetry::Triplet => "triplet",
        })
    }
}

impl FromStr for SpinSymmetry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "singlet" | "s" | "1" | "+" => Ok(SpinSymmetry::Singlet),
            "triplet" | "t" | "3" | "-" => Ok(SpinSymmetry::Triplet),
            other => Err(format!("unknown spin symmetry '{other}'")),
        }
    }
}

/// Powers `(k, m, n)` on `(r12, r1, r2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HylleraasTerm {
    pub k: u32,
    pub m: u32,
    pub n: u32,
}

/// Every canonical term with `k + m + n <= omega`, sorted lexicographically
/// by `(k, m, n)`. Singlets keep `m <= n`, triplets `m < n`.
pub fn enumerate_terms(omega: u32, spin: SpinSymmetry) -> Vec<HylleraasTerm> {
    let mut out = Vec::new();
    for k in 0..=omega {
        for m in 0..=omega - k {
            for n in m..=omega - k - m {
                if spin == SpinSymmetry::Triplet && m == n {
                    continue;
                }
                out.push(HylleraasTerm { k, m, n });
            }
        }
    }
    out
}

/// Closed-form term count, used as a cross-check on [`enumerate_terms`].
pub fn term_count(omega: u32, spin: SpinSymmetry) -> usize {
    let w = omega as usize;
    let total = (w + 1) * (w + 2) * (w + 3) / 6;
    let diag: usize = (0..=w).map(|k| (w - k) / 2 + 1).sum();
    match spin {
        SpinSymmetry::Singlet => (total + diag) / 2,
        SpinSymmetry::Triplet => (total - diag) / 2,
    }
}

/// A complete basis definition.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisSpec {
    /// Nuclear charge.
    pub z: f64,
    pub omega: u32,
    pub spin: SpinSymmetry,
    pub alpha: f64,
    pub beta: f64,
    pub terms: Vec<HylleraasTerm>,
    /// Scale on the electron repulsion `1/r12`; `0` gives the
    /// non-interacting Hamiltonian.
    pub repulsion: f64,
}

impl BasisSpec {
    pub fn new(
        z: f64,
        omega: u32,
        spin: SpinSymmetry,
        alpha: f64,
        beta: f64,
    ) -> Result<Self, HylleraasError> {
        let spec = BasisSpec {
            z,
            omega,
            spin,
            alpha,
            beta,
            terms: enumerate_terms(omega, spin),
            repulsion: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Helium-like default exponents `α = β = Z - 5/16` (singlet) or
    /// `(Z, Z - 1)` (triplet).
    pub fn helium(omega: u32, spin: SpinSymmetry) -> Result<Self, HylleraasError> {
        let (a, b) = match spin {
            SpinSymmetry::Singlet => (2.0 - 5.0 / 16.0, 2.0 - 5.0 / 16.0),
            SpinSymmetry::Triplet => (2.0, 1.0),
        };
        BasisSpec::new(2.0, omega, spin, a, b)
    }

    pub fn with_exponents(&self, alpha: f64, beta: f64) -> Self {
        BasisSpec {
            alpha,
            beta,
            ..self.clone()
        }
    }

    pub fn with_omega(&self, omega: u32) -> Self {
        BasisSpec {
            omega,
            terms: enumerate_terms(omega, self.spin),
            ..self.clone()
        }
    }

    pub fn with_repulsion(mut self, repulsion: f64) -> Self {
        self.repulsion = repulsion;
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn validate(&self) -> Result<(), HylleraasError> {
        let bad = |msg: String| Err(HylleraasError::InvalidBasis(msg));
        if !(self.z > 0.0 && self.z.is_finite()) {
            return bad(format!("nuclear charge must be positive, got {}", self.z));
        }
        if !(self.alpha > 0.0 && self.beta > 0.0 && self.alpha.is_finite() && self.beta.is_finite())
        {
            return bad(format!(
                "exponents must be positive, got ({}, {})",
                self.alpha, self.beta
            ));
        }
        if !self.repulsion.is_finite() {
            return bad("repulsion scale must be finite".into());
        }
        if self.terms != enumerate_terms(self.omega, self.spin) {
            return bad("term list is not the canonical enumeration".into());
        }
        Ok(())
    }
}

/// One unsymmetrized primitive `r1^m r2^n r12^k e^{-a r1 - b r2}`.
#[derive(Clone, Debug)]
struct Primitive<R> {
    m: i64,
    n: i64,
    k: i64,
    a: R,
    b: R,
}

impl<R: Real> Primitive<R> {
    fn direct(t: &HylleraasTerm, alpha: &R, beta: &R) -> Self {
        Primitive {
            m: t.m as i64,
            n: t.n as i64,
            k: t.k as i64,
            a: alpha.clone(),
            b: beta.clone(),
        }
    }

    fn exchanged(t: &HylleraasTerm, alpha: &R, beta: &R) -> Self {
        Primitive {
            m: t.n as i64,
            n: t.m as i64,
            k: t.k as i64,
            a: beta.clone(),
            b: alpha.clone(),
        }
    }
}

/// `(overlap, kinetic, nuclear attraction / Z, repulsion)` between two
/// primitives, without angular factor.
struct PairElements<R> {
    s: R,
    t: R,
    nuc: R,
    rep: R,
}

fn pair_elements<R: Real>(
    p: &Primitive<R>,
    q: &Primitive<R>,
    table: &mut TriangleIntegrals<R>,
) -> PairElements<R> {
    let (bm, bn, bk) = (p.m + q.m + 1, p.n + q.n + 1, p.k + q.k + 1);
    let mut g = |da: i64, db: i64, dc: i64| table.get(bm + da, bn + db, bk + dc);
    let r = |x: i64| R::from_i64(x);

    let s = g(0, 0, 0);
    let nuc = g(-1, 0, 0) + g(0, -1, 0);
    let rep = g(0, 0, -1);

    // ∇1φp·∇1φq + ∇2φp·∇2φq with φ,1 = (m/r1 - a)φ, φ,12 = (k/r12)φ and
    // r̂1·r̂12 = (r1² + r12² - r2²) / (2 r1 r12).
    let mut t = R::zero();
    let kk = p.k * q.k;
    for (mp, mq, ap, aq, side) in [
        (p.m, q.m, &p.a, &q.a, 0usize),
        (p.n, q.n, &p.b, &q.b, 1usize),
    ] {
        // shift along this electron's radius, the other radius, and r12
        let sh = |own: i64, other: i64, c: i64| {
            if side == 0 {
                (own, other, c)
            } else {
                (other, own, c)
            }
        };
        let mut acc = R::zero();
        if mp * mq != 0 {
            let (x, y, z) = sh(-2, 0, -0);
            acc += r(mp * mq) * g(x, y, z);
        }
        if mp != 0 || mq != 0 {
            let c = r(mp) * aq + r(mq) * ap;
            let (x, y, z) = sh(-1, 0, 0);
            acc -= c * g(x, y, z);
        }
        acc += ap.clone() * aq * &s;
        if kk != 0 {
            acc += r(kk) * g(0, 0, -2);
        }
        let c1 = mp * q.k + p.k * mq;
        if c1 != 0 {
            let (x1, y1, z1) = sh(-2, 0, 0);
            let (x2, y2, z2) = sh(-2, 2, -2);
            let v = g(0, 0, -2) + g(x1, y1, z1) - g(x2, y2, z2);
            acc += r(c1) * v / R::from_i64(2);
        }
        if p.k != 0 || q.k != 0 {
            let c2 = ap.clone() * R::from_i64(q.k) + aq.clone() * R::from_i64(p.k);
            let (x1, y1, z1) = sh(1, 0, -2);
            let (x2, y2, z2) = sh(-1, 0, 0);
            let (x3, y3, z3) = sh(-1, 2, -2);
            let v = g(x1, y1, z1) + g(x2, y2, z2) - g(x3, y3, z3);
            acc -= c2 * v / R::from_i64(2);
        }
        t += acc;
    }
    PairElements {
        s,
        t: t / R::from_i64(2),
        nuc,
        rep,
    }
}

/// Overlap, kinetic and potential matrices of a basis.
#[derive(Clone, Debug)]
pub struct Operators<R> {
    pub overlap: SymMatrix<R>,
    pub kinetic: SymMatrix<R>,
    /// Nuclear attraction plus (scaled) electron repulsion.
    pub potential: SymMatrix<R>,
}

impl<R: Real> Operators<R> {
    pub fn hamiltonian(&self) -> SymMatrix<R> {
        let n = self.overlap.dim();
        SymMatrix::from_upper_fn(n, |i, j| {
            self.kinetic.get(i, j).clone() + self.potential.get(i, j)
        })
    }
}

struct Tables<R> {
    direct: TriangleIntegrals<R>,
    exchange: TriangleIntegrals<R>,
    alpha: R,
    beta: R,
}

impl<R: Real> Tables<R> {
    fn new(basis: &BasisSpec) -> Result<Self, HylleraasError> {
        let alpha = R::from_f64(basis.alpha);
        let beta = R::from_f64(basis.beta);
        let w = basis.omega as usize;
        let (ma, mc) = (2 * w + 3, 2 * w + 1);
        let direct = TriangleIntegrals::new(
            &(alpha.clone() + &alpha),
            &(beta.clone() + &beta),
            ma,
            ma,
            mc,
        )?;
        let ab = alpha.clone() + &beta;
        let exchange = TriangleIntegrals::new(&ab, &ab, ma, ma, mc)?;
        Ok(Tables {
            direct,
            exchange,
            alpha,
            beta,
        })
    }
}

/// Assemble overlap, kinetic and potential matrices over the symmetrized
/// basis functions. Elements include the angular factor, so `cᵀ S c` is the
/// full six-dimensional norm.
pub fn assemble_operators<R: Real>(basis: &BasisSpec) -> Result<Operators<R>, HylleraasError> {
    basis.validate()?;
    let n = basis.len();
    let mut tabs = Tables::<R>::new(basis)?;
    let sign = R::from_i64(basis.spin.sign());
    let z = R::from_f64(basis.z);
    let lam = R::from_f64(basis.repulsion);
    let pi = R::pi();
    let pref = R::from_i64(16) * &pi * &pi;

    let direct: Vec<Primitive<R>> = basis
        .terms
        .iter()
        .map(|t| Primitive::direct(t, &tabs.alpha, &tabs.beta))
        .collect();
    let swapped: Vec<Primitive<R>> = basis
        .terms
        .iter()
        .map(|t| Primitive::exchanged(t, &tabs.alpha, &tabs.beta))
        .collect();

    let mut s = vec![R::zero(); n * n];
    let mut t = vec![R::zero(); n * n];
    let mut v = vec![R::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let d = pair_elements(&direct[i], &direct[j], &mut tabs.direct);
            let x = pair_elements(&direct[i], &swapped[j], &mut tabs.exchange);
            let comb = |a: R, b: R| (a + sign.clone() * b) * &pref;
            let sv = comb(d.s, x.s);
            let tv = comb(d.t, x.t);
            let vv = comb(
                lam.clone() * &d.rep - z.clone() * &d.nuc,
                lam.clone() * &x.rep - z.clone() * &x.nuc,
            );
            for (buf, val) in [(&mut s, sv), (&mut t, tv), (&mut v, vv)] {
                buf[j * n + i] = val.clone();
                buf[i * n + j] = val;
            }
        }
    }
    let wrap = |buf: Vec<R>| SymMatrix::from_upper_fn(n, |i, j| buf[i * n + j].clone());
    Ok(Operators {
        overlap: wrap(s),
        kinetic: wrap(t),
        potential: wrap(v),
    })
}

/// Hamiltonian and overlap matrices `(H, S)`.
pub fn assemble_matrices<R: Real>(
    basis: &BasisSpec,
) -> Result<(SymMatrix<R>, SymMatrix<R>), HylleraasError> {
    let ops = assemble_operators(basis)?;
    Ok((ops.hamiltonian(), ops.overlap))
}

/// A variationally solved bound state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSolution<R> {
    pub basis: BasisSpec,
    /// `1` is the lowest root of the symmetry.
    pub root_index: usize,
    /// Hartree.
    pub energy: R,
    /// Coefficients in `basis.terms` order.
    pub coefficients: Vec<R>,
    /// `Ψ = norm_constant · Σ c_i Φ_i` has unit norm.
    pub norm_constant: R,
}

impl<R: Real> StateSolution<R> {
    /// `norm_constant · c`.
    pub fn scaled_coefficients(&self) -> Vec<R> {
        self.coefficients
            .iter()
            .map(|c| c.clone() * &self.norm_constant)
            .collect()
    }

    /// Principal quantum number `n` of the `1sns` state this root targets.
    pub fn principal_n(&self) -> usize {
        match self.basis.spin {
            SpinSymmetry::Singlet => self.root_index,
            SpinSymmetry::Triplet => self.root_index + 1,
        }
    }

    /// Change the scalar type, rounding through a decimal string.
    pub fn convert<S: Real>(&self) -> StateSolution<S> {
        let conv =
            |x: &R| S::parse_decimal(&x.to_sci(R::DIGITS as usize + 3)).expect("finite decimal");
        StateSolution {
            basis: self.basis.clone(),
            root_index: self.root_index,
            energy: conv(&self.energy),
            coefficients: self.coefficients.iter().map(conv).collect(),
            norm_constant: conv(&self.norm_constant),
        }
    }
}

/// Solve for the `root_index`-th lowest state of the basis's symmetry.
pub fn solve_state<R: Real>(
    basis: &BasisSpec,
    root_index: usize,
    cfg: &PrecisionConfig,
) -> Result<StateSolution<R>, HylleraasError> {
    cfg.validate()?;
    if root_index == 0 || root_index > basis.len() {
        return Err(HylleraasError::InvalidRoot {
            root: root_index,
            terms: basis.len(),
        });
    }
    let (h, s) = assemble_matrices::<R>(basis)?;
    let mut pairs = solve_generalized_symmetric(&h, &s, root_index, cfg)?;
    let pair = pairs.pop().expect("root_index >= 1");
    log::debug!(
        "solved {} omega={} root {}: E = {}",
        basis.spin,
        basis.omega,
        root_index,
        pair.value.to_sci(20)
    );
    Ok(StateSolution {
        basis: basis.clone(),
        root_index,
        energy: pair.value,
        coefficients: pair.vector,
        norm_constant: R::one(),
    })
}

/// Set `norm_constant` so that `⟨Ψ|Ψ⟩ = 1`.
pub fn normalize<R: Real>(solution: &StateSolution<R>) -> Result<StateSolution<R>, HylleraasError> {
    let ops = assemble_operators::<R>(&solution.basis)?;
    let raw = ops
        .overlap
        .bilinear(&solution.coefficients, &solution.coefficients);
    if !(raw > R::zero()) || !raw.is_finite() {
        return Err(HylleraasError::ZeroNorm);
    }
    let mut out = solution.clone();
    out.norm_constant = R::one() / raw.sqrt();
    Ok(out)
}

/// `(⟨T⟩, ⟨V⟩)` of a state, each divided by `⟨Ψ|Ψ⟩`.
pub fn expectation_values<R: Real>(solution: &StateSolution<R>) -> Result<(R, R), HylleraasError> {
    let ops = assemble_operators::<R>(&solution.basis)?;
    let c = &solution.coefficients;
    let nrm = ops.overlap.bilinear(c, c);
    if !(nrm > R::zero()) {
        return Err(HylleraasError::ZeroNorm);
    }
    Ok((
        ops.kinetic.bilinear(c, c) / &nrm,
        ops.potential.bilinear(c, c) / &nrm,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dd, Mp224};

    #[test]
    fn term_counts() {
        assert_eq!(enumerate_terms(15, SpinSymmetry::Singlet).len(), 444);
        assert_eq!(enumerate_terms(16, SpinSymmetry::Triplet).len(), 444);
        assert_eq!(enumerate_terms(5, SpinSymmetry::Singlet).len(), 34);
        assert_eq!(enumerate_terms(6, SpinSymmetry::Triplet).len(), 34);
        assert!(enumerate_terms(0, SpinSymmetry::Triplet).is_empty());
        for w in 0..20 {
            for spin in [SpinSymmetry::Singlet, SpinSymmetry::Triplet] {
                assert_eq!(enumerate_terms(w, spin).len(), term_count(w, spin));
            }
        }
    }

    #[test]
    fn terms_sorted_and_canonical() {
        let t = enumerate_terms(7, SpinSymmetry::Triplet);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert!(t.iter().all(|x| x.m < x.n && x.k + x.m + x.n <= 7));
    }

    fn single(alpha: f64) -> BasisSpec {
        BasisSpec::new(2.0, 0, SpinSymmetry::Singlet, alpha, alpha).unwrap()
    }

    #[test]
    fn screening_energy() {
        for (a, e) in [(2.0, -2.75), (27.0 / 16.0, -(27.0f64 / 16.0).powi(2))] {
            let (h, s) = assemble_matrices::<Dd>(&single(a)).unwrap();
            let r = (h.get(0, 0).clone() / s.get(0, 0)).to_f64();
            assert!((r - e).abs() < 1e-15, "{r} vs {e}");
        }
    }

    #[test]
    fn solved_state_is_normalized() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let b = BasisSpec::helium(3, SpinSymmetry::Singlet).unwrap();
        let st = solve_state::<Dd>(&b, 1, &cfg).unwrap();
        let n = normalize(&st).unwrap();
        assert!((n.norm_constant.to_f64() - 1.0).abs() < 1e-20);
        let again = normalize(&n).unwrap();
        assert_eq!(again.norm_constant, n.norm_constant);
        let mut scaled = st.clone();
        for c in scaled.coefficients.iter_mut() {
            *c *= Dd::from_f64(7.0);
        }
        let ns = normalize(&scaled).unwrap();
        for (a, b) in ns.scaled_coefficients().iter().zip(n.scaled_coefficients()) {
            assert!((a.clone() - b).abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn variational_monotonicity() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        for spin in [SpinSymmetry::Singlet, SpinSymmetry::Triplet] {
            let base = BasisSpec::helium(5, spin).unwrap();
            let mut prev: Option<Vec<f64>> = None;
            for w in 5..=8 {
                let b = base.with_omega(w);
                let (h, s) = assemble_matrices::<Dd>(&b).unwrap();
                let vals: Vec<f64> = crate::numerics::generalized_eigenvalues(&h, &s, 3)
                    .unwrap()
                    .iter()
                    .map(|x| x.to_f64())
                    .collect();
                if let Some(p) = &prev {
                    for (a, b) in vals.iter().zip(p) {
                        assert!(*a <= *b + 1e-14, "{spin} omega={w}: {a} > {b}");
                    }
                }
                prev = Some(vals);
            }
            let _ = cfg.clone();
        }
    }

    /// Kinetic element from the Laplacian acting on the right primitive only.
    fn laplacian_kinetic<R: Real>(
        p: &Primitive<R>,
        q: &Primitive<R>,
        table: &mut TriangleIntegrals<R>,
    ) -> R {
        let (bm, bn, bk) = (p.m + q.m + 1, p.n + q.n + 1, p.k + q.k + 1);
        let mut g = |da: i64, db: i64, dc: i64| table.get(bm + da, bn + db, bk + dc);
        let r = |x: i64| R::from_i64(x);
        let k = q.k;
        let mut lap = R::zero();
        for (m, a, side) in [(q.m, &q.a, 0), (q.n, &q.b, 1)] {
            let sh = |own: i64, other: i64, c: i64| {
                if side == 0 {
                    (own, other, c)
                } else {
                    (other, own, c)
                }
            };
            let mut acc = R::zero();
            if m != 0 {
                let (x, y, z) = sh(-2, 0, 0);
                acc += r(m * (m + 1)) * g(x, y, z);
            }
            let (x, y, z) = sh(-1, 0, 0);
            acc -= r(2 * (m + 1)) * a * g(x, y, z);
            acc += a.clone() * a * g(0, 0, 0);
            if k != 0 {
                acc += r(k * (k + 1)) * g(0, 0, -2);
                if m != 0 {
                    let (x1, y1, z1) = sh(-2, 0, 0);
                    let (x2, y2, z2) = sh(-2, 2, -2);
                    acc += r(k * m) * (g(0, 0, -2) + g(x1, y1, z1) - g(x2, y2, z2));
                }
                let (x1, y1, z1) = sh(1, 0, -2);
                let (x2, y2, z2) = sh(-1, 0, 0);
                let (x3, y3, z3) = sh(-1, 2, -2);
                acc -= r(k) * a * (g(x1, y1, z1) + g(x2, y2, z2) - g(x3, y3, z3));
            }
            lap += acc;
        }
        -lap / R::from_i64(2)
    }

    #[test]
    fn kinetic_forms_agree_both_orders() {
        let al = Mp224::from_f64(1.7);
        let be = Mp224::from_f64(0.9);
        let mut table =
            TriangleIntegrals::new(&(al.clone() + &be), &(al.clone() + &be), 20, 20, 12).unwrap();
        let mut seed = 12345u64;
        let mut next = |hi: u64| {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % hi) as u32
        };
        for _ in 0..10 {
            let ti = HylleraasTerm {
                k: next(4),
                m: next(4),
                n: next(4),
            };
            let tj = HylleraasTerm {
                k: next(4),
                m: next(4),
                n: next(4),
            };
            let p = Primitive::direct(&ti, &al, &be);
            let q = Primitive::exchanged(&tj, &al, &be);
            let grad = pair_elements(&p, &q, &mut table).t;
            let lij = laplacian_kinetic(&p, &q, &mut table);
            let lji = laplacian_kinetic(&q, &p, &mut table);
            let scale = grad.abs().to_f64().max(1e-300);
            assert!(
                (lij.clone() - &lji).abs().to_f64() / scale < 1e-25,
                "{ti:?} {tj:?}"
            );
            assert!(
                (lij - &grad).abs().to_f64() / scale < 1e-25,
                "{ti:?} {tj:?}"
            );
        }
    }

    #[test]
    fn virial_ratio() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let b = BasisSpec::new(2.0, 6, SpinSymmetry::Singlet, 1.8, 1.8).unwrap();
        let opt = optimize_exponents_with::<Dd>(
            &b,
            1,
            &cfg,
            &OptimizeOptions {
                tie_exponents: true,
                grid_points: 3,
                ..OptimizeOptions::default()
            },
        )
        .unwrap();
        let (t, v) = expectation_values(&opt.solution).unwrap();
        let ratio = (v / t).to_f64();
        assert!((ratio + 2.0).abs() < 1e-6, "V/T = {ratio}");
    }
}
