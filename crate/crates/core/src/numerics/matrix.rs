use super::Real;

/// Dense real symmetric matrix.
///
/// Only constructors that fill the upper triangle and mirror it are exposed,
/// so `a[i][j] == a[j][i]` holds bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Real> SymMatrix<R> {
    /// Builds the matrix from `f(i, j)` evaluated for `i <= j` only.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = vec![R::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if i != j {
                    data[j * n + i] = v.clone();
                }
                data[i * n + j] = v;
            }
        }
        SymMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_upper_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn diagonal(values: &[R]) -> Self {
        Self::from_upper_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                R::zero()
            }
        })
    }

    /// Builds from row-major data, using only the upper triangle.
    pub fn from_rows_upper(rows: &[Vec<R>]) -> Self {
        let n = rows.len();
        Self::from_upper_fn(n, |i, j| rows[i][j].clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[R] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> R {
        frobenius(&self.data)
    }

    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        mat_vec(&self.data, self.n, x)
    }

    /// `xᵀ A y`
    pub fn bilinear(&self, x: &[R], y: &[R]) -> R {
        let ay = self.mul_vec(y);
        dot(x, &ay)
    }

    pub fn map<S: Real>(&self, f: impl Fn(&R) -> S) -> SymMatrix<S> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Leading principal `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_upper_fn(k, |i, j| self.get(i, j).clone())
    }
}

/// Dense real antisymmetric matrix with an exactly zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymMatrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Real> AntisymMatrix<R> {
    /// Builds from `f(i, j)` evaluated for `i < j` only; the lower triangle is
    /// the negated mirror.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = vec![R::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                data[j * n + i] = -v.clone();
                data[i * n + j] = v;
            }
        }
        AntisymMatrix { n, data }
    }

    pub fn from_rows_upper(rows: &[Vec<R>]) -> Self {
        let n = rows.len();
        Self::from_upper_fn(n, |i, j| rows[i][j].clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[R] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> R {
        frobenius(&self.data)
    }

    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        mat_vec(&self.data, self.n, x)
    }

    /// `BᵀB`, which is symmetric positive semidefinite.
    pub fn gram(&self) -> SymMatrix<R> {
        let n = self.n;
        SymMatrix::from_upper_fn(n, |i, j| {
            let mut acc = R::zero();
            for k in 0..n {
                acc.add_mul(&self.data[k * n + i], &self.data[k * n + j]);
            }
            acc
        })
    }

    pub fn leading(&self, k: usize) -> Self {
        Self::from_upper_fn(k, |i, j| self.get(i, j).clone())
    }
}

pub(crate) fn frobenius<R: Real>(data: &[R]) -> R {
    let mut acc = R::zero();
    for v in data {
        acc.add_mul(v, v);
    }
    acc.sqrt()
}

pub(crate) fn mat_vec<R: Real>(data: &[R], n: usize, x: &[R]) -> Vec<R> {
    assert_eq!(x.len(), n);
    (0..n)
        .map(|i| {
            let row = &data[i * n..(i + 1) * n];
            dot(row, x)
        })
        .collect()
}

pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    let mut acc = R::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

pub fn norm2<R: Real>(a: &[R]) -> R {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_by_construction() {
        let m = SymMatrix::<f64>::from_upper_fn(4, |i, j| (i * 10 + j) as f64 + 0.1);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j).to_bits(), m.get(j, i).to_bits());
            }
        }
    }

    #[test]
    fn antisymmetric_by_construction() {
        let m = AntisymMatrix::<f64>::from_upper_fn(5, |i, j| (i as f64) - 2.5 * j as f64);
        for i in 0..5 {
            assert_eq!(*m.get(i, i), 0.0);
            for j in 0..5 {
                assert_eq!(*m.get(i, j), -*m.get(j, i));
            }
        }
        let g = m.gram();
        assert_eq!(g.dim(), 5);
    }
}
