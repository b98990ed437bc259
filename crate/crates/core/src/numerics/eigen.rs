//! Dense eigensolvers: Cholesky-reduced generalized symmetric problems,
//! full symmetric spectra, and pair magnitudes of antisymmetric matrices.

use std::cmp::Ordering;

use super::matrix::{dot, norm2};
use super::{AntisymMatrix, NumericsError, PrecisionConfig, Real, SymMatrix};

/// Maximum implicit QL sweeps per eigenvalue before giving up.
const QL_MAX_ITER: usize = 80;

/// One eigenpair.
#[derive(Clone, Debug)]
pub struct EigenPair<R> {
    pub value: R,
    pub vector: Vec<R>,
}

/// Householder reduction of a symmetric or antisymmetric matrix to
/// tridiagonal form, keeping the reflectors for back-transformation.
struct Tridiagonal<R> {
    diag: Vec<R>,
    /// `sub[k]` couples rows `k` and `k + 1`.
    sub: Vec<R>,
    reflectors: Vec<(R, Vec<R>)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    Symmetric,
    Antisymmetric,
}

fn tridiagonalize<R: Real>(mut a: Vec<R>, n: usize, sym: Symmetry) -> Tridiagonal<R> {
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut sub = vec![R::zero(); n.saturating_sub(1)];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let alpha = a[(k + 1) * n + k].clone();
        let mut xnorm2 = R::zero();
        for i in 1..m {
            let x = &a[(k + 1 + i) * n + k];
            xnorm2.add_mul(x, x);
        }
        if xnorm2.is_zero() {
            sub[k] = alpha;
            reflectors.push((R::zero(), Vec::new()));
            continue;
        }
        let norm = (alpha.clone() * &alpha + &xnorm2).sqrt();
        let beta = if alpha >= R::zero() { -norm } else { norm };
        let tau = (beta.clone() - &alpha) / &beta;
        let denom = alpha - &beta;
        let mut v = Vec::with_capacity(m);
        v.push(R::one());
        for i in 1..m {
            v.push(a[(k + 1 + i) * n + k].clone() / &denom);
        }
        sub[k] = beta;

        let off = k + 1;
        // p = B v over the trailing block
        let mut p = vec![R::zero(); m];
        match sym {
            Symmetry::Symmetric => {
                // lower triangle is authoritative
                for i in 0..m {
                    let row = (off + i) * n + off;
                    let vi = v[i].clone();
                    let mut acc = R::zero();
                    for j in 0..i {
                        acc.add_mul(&a[row + j], &v[j]);
                        p[j].add_mul(&a[row + j], &vi);
                    }
                    acc.add_mul(&a[row + i], &vi);
                    p[i] += acc;
                }
                for x in p.iter_mut() {
                    *x *= &tau;
                }
                let half_k = tau.clone() * dot(&p, &v) / R::from_f64(2.0);
                let w: Vec<R> = p
                    .iter()
                    .zip(&v)
                    .map(|(pi, vi)| pi.clone() - half_k.clone() * vi)
                    .collect();
                for i in 0..m {
                    let row = (off + i) * n + off;
                    for j in 0..=i {
                        let upd = v[i].clone() * &w[j] + w[i].clone() * &v[j];
                        a[row + j] -= upd;
                    }
                }
            }
            Symmetry::Antisymmetric => {
                for i in 0..m {
                    let row = (off + i) * n + off;
                    p[i] = dot(&a[row..row + m], &v);
                }
                for i in 0..m {
                    let row = (off + i) * n + off;
                    for j in 0..m {
                        let upd = v[i].clone() * &p[j] - p[i].clone() * &v[j];
                        a[row + j].add_mul(&tau, &upd);
                    }
                }
            }
        }
        reflectors.push((tau, v));
    }
    if n >= 2 {
        sub[n - 2] = a[(n - 1) * n + (n - 2)].clone();
    }
    let diag = match sym {
        Symmetry::Symmetric => (0..n).map(|i| a[i * n + i].clone()).collect(),
        Symmetry::Antisymmetric => vec![R::zero(); n],
    };
    Tridiagonal {
        diag,
        sub,
        reflectors,
    }
}

impl<R: Real> Tridiagonal<R> {
    /// `x ← Q x` where `A = Q T Qᵀ`.
    fn apply_q(&self, x: &mut [R]) {
        for (k, (tau, v)) in self.reflectors.iter().enumerate().rev() {
            if v.is_empty() {
                continue;
            }
            let seg = &mut x[k + 1..];
            let s = dot(v, seg) * tau;
            for (xi, vi) in seg.iter_mut().zip(v) {
                *xi -= s.clone() * vi;
            }
        }
    }

    /// Explicit `Q`, stored row-major.
    fn form_q(&self, n: usize) -> Vec<R> {
        let mut q = vec![R::zero(); n * n];
        let mut col = vec![R::zero(); n];
        for j in 0..n {
            for (i, c) in col.iter_mut().enumerate() {
                *c = if i == j { R::one() } else { R::zero() };
            }
            self.apply_q(&mut col);
            for i in 0..n {
                q[i * n + j] = col[i].clone();
            }
        }
        q
    }
}

fn hypot<R: Real>(a: &R, b: &R) -> R {
    let aa = a.abs();
    let bb = b.abs();
    if aa > bb {
        let r = bb / &aa;
        aa * (R::one() + r.clone() * &r).sqrt()
    } else if bb.is_zero() {
        R::zero()
    } else {
        let r = aa / &bb;
        bb * (R::one() + r.clone() * &r).sqrt()
    }
}

/// Implicit QL on a symmetric tridiagonal matrix. `z`, when given, is an
/// `n × n` row-major matrix whose columns are rotated along.
fn ql_implicit<R: Real>(
    d: &mut [R],
    sub: &[R],
    mut z: Option<&mut [R]>,
) -> Result<(), NumericsError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let eps = R::epsilon();
    let mut e: Vec<R> = sub.to_vec();
    e.push(R::zero());
    let two = R::from_f64(2.0);
    // absolute floor so that runs of roundoff-sized entries still split
    let norm = d.iter().chain(e.iter()).fold(R::zero(), |m, x| {
        let a = x.abs();
        if a > m {
            a
        } else {
            m
        }
    });
    let floor = eps.clone() * &norm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps.clone() * &dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(NumericsError::NoConvergence {
                    stage: "tridiagonal QL",
                    iterations: iter,
                });
            }
            let mut g = (d[l + 1].clone() - &d[l]) / (two.clone() * &e[l]);
            let mut r = hypot(&g, &R::one());
            let sg = if g >= R::zero() { r.abs() } else { -r.abs() };
            g = d[m].clone() - &d[l] + e[l].clone() / (g + sg);
            let mut s = R::one();
            let mut c = R::one();
            let mut p = R::zero();
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s.clone() * &e[i];
                let b = c.clone() * &e[i];
                r = hypot(&f, &g);
                e[i + 1] = r.clone();
                if r.is_zero() {
                    d[i + 1] -= &p;
                    e[m] = R::zero();
                    underflow = true;
                    break;
                }
                s = f / &r;
                c = g.clone() / &r;
                g = d[i + 1].clone() - &p;
                r = (d[i].clone() - &g) * &s + two.clone() * &c * &b;
                p = s.clone() * &r;
                d[i + 1] = g.clone() + &p;
                g = c.clone() * &r - &b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1].clone();
                        let zi = z[k * n + i].clone();
                        z[k * n + i + 1] = s.clone() * &zi + c.clone() * &f;
                        z[k * n + i] = c.clone() * &zi - s.clone() * &f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= &p;
            e[l] = g;
            e[m] = R::zero();
        }
    }
    Ok(())
}

/// Inverse iteration for one eigenvector of the tridiagonal `(d, sub)`.
fn tridiagonal_inverse_iteration<R: Real>(d: &[R], sub: &[R], lambda: &R) -> Vec<R> {
    let n = d.len();
    if n == 1 {
        return vec![R::one()];
    }
    let mut scale = R::zero();
    for x in d.iter().chain(sub) {
        scale = R::max_of(scale, x.abs());
    }
    let tiny = R::epsilon() * &scale;
    let shift = lambda.clone() + tiny.clone() * R::from_f64(4.0);

    // LU with partial pivoting of (T - shift I); U has two superdiagonals.
    let mut u0: Vec<R> = d.iter().map(|x| x.clone() - &shift).collect();
    let mut u1: Vec<R> = sub.to_vec();
    u1.push(R::zero());
    let mut u2 = vec![R::zero(); n];
    let mut mult = vec![R::zero(); n];
    let mut swapped = vec![false; n];
    let mut lower: Vec<R> = sub.to_vec();
    for k in 0..n - 1 {
        if lower[k].abs() > u0[k].abs() {
            // swap rows k and k+1
            swapped[k] = true;
            let a_k = u0[k].clone();
            let b_k = u1[k].clone();
            let c_k = u2[k].clone();
            u0[k] = lower[k].clone();
            u1[k] = u0[k + 1].clone();
            u2[k] = u1[k + 1].clone();
            let l = a_k / &u0[k];
            mult[k] = l.clone();
            u0[k + 1] = b_k - l.clone() * &u1[k];
            u1[k + 1] = c_k - l * &u2[k];
        } else {
            if u0[k].is_zero() {
                u0[k] = tiny.clone();
            }
            let l = lower[k].clone() / &u0[k];
            mult[k] = l.clone();
            u0[k + 1] -= l * &u1[k];
        }
        lower[k] = R::zero();
    }
    if u0[n - 1].is_zero() {
        u0[n - 1] = tiny.clone();
    }

    let mut y: Vec<R> = (0..n)
        .map(|i| R::one() + R::from_f64(((i * 7919) % 13) as f64 / 97.0))
        .collect();
    for _ in 0..3 {
        // forward: apply L^{-1} with pivoting
        for k in 0..n - 1 {
            if swapped[k] {
                y.swap(k, k + 1);
            }
            let t = mult[k].clone() * &y[k];
            y[k + 1] -= t;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut acc = y[i].clone();
            if i + 1 < n {
                acc -= u1[i].clone() * &y[i + 1];
            }
            if i + 2 < n {
                acc -= u2[i].clone() * &y[i + 2];
            }
            y[i] = acc / &u0[i];
        }
        let nrm = norm2(&y);
        for v in y.iter_mut() {
            *v /= &nrm;
        }
    }
    y
}

fn dominant_index<R: Real>(v: &[R]) -> usize {
    let mut best = 0;
    let mut best_abs = R::zero();
    for (i, x) in v.iter().enumerate() {
        let a = x.abs();
        if a > best_abs {
            best_abs = a;
            best = i;
        }
    }
    best
}

fn fix_sign<R: Real>(v: &mut [R]) {
    let k = dominant_index(v);
    if v[k] < R::zero() {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
}

struct Reduced<R> {
    dsc: Vec<R>,
    l: Vec<R>,
    tri: Tridiagonal<R>,
    values: Vec<R>,
}

/// Equilibrate, factor `S = L Lᵀ`, reduce `L⁻¹ H L⁻ᵀ` to tridiagonal form and
/// find its eigenvalues (ascending).
fn reduce_generalized<R: Real>(
    h: &SymMatrix<R>,
    s: &SymMatrix<R>,
    n_roots: usize,
) -> Result<Reduced<R>, NumericsError> {
    let n = h.dim();
    if s.dim() != n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            found: s.dim(),
        });
    }
    if n_roots == 0 || n_roots > n {
        return Err(NumericsError::InvalidRootCount {
            requested: n_roots,
            dimension: n,
        });
    }

    // diagonal equilibration
    let mut dsc = Vec::with_capacity(n);
    for i in 0..n {
        let sii = s.get(i, i).clone();
        if sii <= R::zero() {
            return Err(NumericsError::NotPositiveDefinite { index: i });
        }
        dsc.push(R::one() / sii.sqrt());
    }

    // Cholesky of the equilibrated S, lower triangle, row-major.
    let mut l = vec![R::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut acc = s.get(i, j).clone() * &dsc[i] * &dsc[j];
            for k in 0..j {
                acc -= l[i * n + k].clone() * &l[j * n + k];
            }
            if i == j {
                if acc <= R::zero() || !acc.is_finite() {
                    return Err(NumericsError::NotPositiveDefinite { index: i });
                }
                l[i * n + i] = acc.sqrt();
            } else {
                l[i * n + j] = acc / &l[j * n + j];
            }
        }
    }

    // W = L^{-1} H', column by column (stored row-major).
    let mut w = vec![R::zero(); n * n];
    for j in 0..n {
        for i in 0..n {
            let mut acc = h.get(i, j).clone() * &dsc[i] * &dsc[j];
            for k in 0..i {
                acc -= l[i * n + k].clone() * &w[k * n + j];
            }
            w[i * n + j] = acc / &l[i * n + i];
        }
    }
    // C = L^{-1} Wᵀ; lower triangle computed, upper filled by symmetry.
    let mut c = vec![R::zero(); n * n];
    for j in 0..n {
        for i in 0..n {
            if i < j {
                c[i * n + j] = c[j * n + i].clone();
                continue;
            }
            let mut acc = w[j * n + i].clone();
            for k in 0..i {
                acc -= l[i * n + k].clone() * &c[k * n + j];
            }
            c[i * n + j] = acc / &l[i * n + i];
        }
    }
    drop(w);

    let tri = tridiagonalize(c, n, Symmetry::Symmetric);
    let mut values = tri.diag.clone();
    ql_implicit(&mut values, &tri.sub, None)?;
    values.sort_by(|a, b| a.total_cmp(b));
    Ok(Reduced {
        dsc,
        l,
        tri,
        values,
    })
}

/// Lowest `n_roots` eigenvalues of `H c = E S c`, ascending, without vectors
/// or residual checks.
pub fn generalized_eigenvalues<R: Real>(
    h: &SymMatrix<R>,
    s: &SymMatrix<R>,
    n_roots: usize,
) -> Result<Vec<R>, NumericsError> {
    let mut values = reduce_generalized(h, s, n_roots)?.values;
    values.truncate(n_roots);
    Ok(values)
}

/// Lowest `n_roots` eigenpairs of `H c = E S c`, ascending, with `cᵀ S c = 1`.
pub fn solve_generalized_symmetric<R: Real>(
    h: &SymMatrix<R>,
    s: &SymMatrix<R>,
    n_roots: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<EigenPair<R>>, NumericsError> {
    let n = h.dim();
    let Reduced {
        dsc,
        l,
        tri,
        values,
    } = reduce_generalized(h, s, n_roots)?;

    let h_norm = h.frobenius_norm();
    let tol = R::from_f64(cfg.eig_residual_tol) * &h_norm;
    let mut out = Vec::with_capacity(n_roots);
    for value in values.into_iter().take(n_roots) {
        let mut y = tridiagonal_inverse_iteration(&tri.diag, &tri.sub, &value);
        tri.apply_q(&mut y);
        // back-substitute Lᵀ x = y
        for i in (0..n).rev() {
            let mut acc = y[i].clone();
            for k in i + 1..n {
                acc -= l[k * n + i].clone() * &y[k];
            }
            y[i] = acc / &l[i * n + i];
        }
        let mut vec: Vec<R> = y.into_iter().zip(&dsc).map(|(a, b)| a * b).collect();
        let nrm = s.bilinear(&vec, &vec).sqrt();
        for x in vec.iter_mut() {
            *x /= &nrm;
        }
        fix_sign(&mut vec);
        // residual ‖H c − E S c‖₂
        let hc = h.mul_vec(&vec);
        let sc = s.mul_vec(&vec);
        let r: Vec<R> = hc
            .into_iter()
            .zip(sc)
            .map(|(a, b)| a - value.clone() * b)
            .collect();
        let res = norm2(&r);
        if res > tol || !res.is_finite() {
            return Err(NumericsError::ResidualTooLarge {
                residual: res.to_f64(),
                tolerance: tol.to_f64(),
            });
        }
        out.push(EigenPair { value, vector: vec });
    }
    Ok(out)
}

/// Full eigendecomposition of a symmetric matrix, ordered by descending
/// `|value|` (ties: lower index of the dominant eigenvector component first).
pub fn symmetric_eigen<R: Real>(
    b: &SymMatrix<R>,
    cfg: &PrecisionConfig,
) -> Result<Vec<EigenPair<R>>, NumericsError> {
    let n = b.dim();
    let tri = tridiagonalize(b.as_slice().to_vec(), n, Symmetry::Symmetric);
    let mut z = tri.form_q(n);
    let mut d = tri.diag.clone();
    ql_implicit(&mut d, &tri.sub, Some(&mut z))?;
    let mut pairs: Vec<EigenPair<R>> = (0..n)
        .map(|k| {
            let mut v: Vec<R> = (0..n).map(|i| z[i * n + k].clone()).collect();
            fix_sign(&mut v);
            EigenPair {
                value: d[k].clone(),
                vector: v,
            }
        })
        .collect();
    sort_by_magnitude(&mut pairs);

    // reconstruction residual ‖B − V Λ Vᵀ‖_F
    let mut res = R::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = b.get(i, j).clone();
            for p in &pairs {
                acc -= p.value.clone() * &p.vector[i] * &p.vector[j];
            }
            res.add_mul(&acc, &acc);
        }
    }
    let res = res.sqrt();
    let tol = R::from_f64(cfg.eig_residual_tol) * b.frobenius_norm();
    if res > tol {
        return Err(NumericsError::ResidualTooLarge {
            residual: res.to_f64(),
            tolerance: tol.to_f64(),
        });
    }
    Ok(pairs)
}

fn sort_by_magnitude<R: Real>(pairs: &mut [EigenPair<R>]) {
    pairs.sort_by(|a, b| match b.value.abs().total_cmp(&a.value.abs()) {
        Ordering::Equal => dominant_index(&a.vector).cmp(&dominant_index(&b.vector)),
        o => o,
    });
}

/// All eigenvalues of a symmetric matrix, descending by absolute value.
pub fn solve_symmetric<R: Real>(
    b: &SymMatrix<R>,
    cfg: &PrecisionConfig,
) -> Result<Vec<R>, NumericsError> {
    Ok(symmetric_eigen(b, cfg)?
        .into_iter()
        .map(|p| p.value)
        .collect())
}

/// Pair magnitudes `λ_k` of an antisymmetric matrix (eigenvalues `±iλ_k`),
/// descending.
///
/// The singular values are those of the Householder-reduced antisymmetric
/// tridiagonal form, obtained as the moduli of the spectrum of the
/// zero-diagonal symmetric tridiagonal matrix sharing its off-diagonal. Each
/// magnitude occurs twice; the pairs are matched explicitly and any unpaired
/// value (odd dimension) must vanish to `cleanup_tol` relative to the largest.
pub fn solve_antisymmetric_pairs<R: Real>(
    b: &AntisymMatrix<R>,
    cfg: &PrecisionConfig,
) -> Result<Vec<R>, NumericsError> {
    let n = b.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let tri = tridiagonalize(b.as_slice().to_vec(), n, Symmetry::Antisymmetric);
    let mut d = vec![R::zero(); n];
    let sub: Vec<R> = tri.sub.iter().map(|x| x.abs()).collect();
    ql_implicit(&mut d, &sub, None)?;
    let mut sv: Vec<R> = d.into_iter().map(|x| x.abs()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));

    let largest = sv[0].clone();
    let tol = R::from_f64(cfg.cleanup_tol) * R::max_of(largest, R::from_f64(f64::MIN_POSITIVE));
    let mut out = Vec::with_capacity(n / 2);
    let mut i = 0;
    while i + 1 < n {
        let gap = (sv[i].clone() - &sv[i + 1]).abs();
        if gap > tol {
            return Err(NumericsError::PairingFailure {
                index: i,
                gap: gap.to_f64(),
            });
        }
        out.push((sv[i].clone() + &sv[i + 1]) / R::from_f64(2.0));
        i += 2;
    }
    if i < n && sv[i] > tol {
        return Err(NumericsError::PairingFailure {
            index: i,
            gap: sv[i].to_f64(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dd, Mp224};

    fn cfg(d: u32) -> PrecisionConfig {
        PrecisionConfig::with_digits(d).unwrap()
    }

    #[test]
    fn scalar_generalized() {
        let h = SymMatrix::from_upper_fn(1, |_, _| -2.75f64);
        let s = SymMatrix::identity(1);
        let out = solve_generalized_symmetric(&h, &s, 1, &cfg(15)).unwrap();
        assert_eq!(out[0].value, -2.75);
        assert_eq!(out[0].vector, vec![1.0]);
    }

    #[test]
    fn swap_matrix_generalized() {
        let h = SymMatrix::from_rows_upper(&[vec![0.0f64, 1.0], vec![1.0, 0.0]]);
        let s = SymMatrix::identity(2);
        let out = solve_generalized_symmetric(&h, &s, 2, &cfg(15)).unwrap();
        assert!((out[0].value + 1.0).abs() < 1e-15);
        assert!((out[1].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn not_positive_definite() {
        let h = SymMatrix::identity(2);
        let s = SymMatrix::from_rows_upper(&[vec![1.0f64, 2.0], vec![2.0, 1.0]]);
        let err = solve_generalized_symmetric(&h, &s, 1, &cfg(15)).unwrap_err();
        assert!(matches!(
            err,
            NumericsError::NotPositiveDefinite { index: 1 }
        ));
    }

    #[test]
    fn diagonal_spectrum() {
        let b = SymMatrix::diagonal(&[3.0f64, 1.0, 2.0]);
        let v = solve_symmetric(&b, &cfg(15)).unwrap();
        assert_eq!(v, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn off_diagonal_pair() {
        let a = Dd::from_f64(0.75);
        let b = SymMatrix::from_rows_upper(&[vec![Dd::zero(), a], vec![a, Dd::zero()]]);
        let v = solve_symmetric(&b, &cfg(30)).unwrap();
        assert!((v[0].abs() - a).abs().to_f64() < 1e-30);
        assert!((v[0] + v[1]).abs().to_f64() < 1e-30);
    }

    #[test]
    fn antisymmetric_two_by_two() {
        let b = AntisymMatrix::from_upper_fn(2, |_, _| 1.5f64);
        let v = solve_antisymmetric_pairs(&b, &cfg(15)).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn antisymmetric_three_by_three_discards_zero_mode() {
        // characteristic polynomial λ(λ² + 14) = 0
        let b = AntisymMatrix::from_rows_upper(&[
            vec![Mp224::zero(), Mp224::from_f64(1.0), Mp224::from_f64(2.0)],
            vec![Mp224::zero(), Mp224::zero(), Mp224::from_f64(3.0)],
            vec![Mp224::zero(), Mp224::zero(), Mp224::zero()],
        ]);
        let v = solve_antisymmetric_pairs(&b, &cfg(60)).unwrap();
        assert_eq!(v.len(), 1);
        let expect = Mp224::from_f64(14.0).sqrt();
        assert!((v[0].clone() - expect).abs().to_f64() < 1e-60);
    }

    #[test]
    fn generalized_matches_reference_at_high_precision() {
        // Hilbert-like S makes the Cholesky path work for its living.
        let n = 8;
        let s = SymMatrix::<Mp224>::from_upper_fn(n, |i, j| {
            Mp224::one() / Mp224::from_i64((i + j + 1) as i64)
        });
        let h = SymMatrix::<Mp224>::from_upper_fn(n, |i, j| {
            Mp224::from_i64((i as i64 - j as i64).abs() + 1) / Mp224::from_i64((i + j + 2) as i64)
        });
        let out = solve_generalized_symmetric(&h, &s, n, &cfg(60)).unwrap();
        for p in &out {
            let hc = h.mul_vec(&p.vector);
            let sc = s.mul_vec(&p.vector);
            for (a, b) in hc.iter().zip(&sc) {
                let r = a.clone() - p.value.clone() * b;
                assert!(r.abs().to_f64() < 1e-40);
            }
        }
        for w in out.windows(2) {
            assert!(w[0].value <= w[1].value);
        }
    }
}
