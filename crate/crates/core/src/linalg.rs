//! Small dense linear algebra over the engine's scalar types.
//!
//! Everything here targets dimensions of a handful; the indefinite-metric
//! routines (signature, radical extraction, Gram–Schmidt with null pivots,
//! semi-orthogonality) are the workhorses of the frame constructions.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::scalar::{Dual, Field, Rational};

/// Dense row-major matrix over a generic field scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Field> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Columns interpreted as vectors.
    pub fn from_cols(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| s.clone() * self[(i, j)].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.approx().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = self[(i, j)].clone() - self[(j, i)].clone();
                if !d.is_negligible(tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Gauss–Jordan inverse with partial pivoting on the leading real value.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    a[(i, col)]
                        .approx()
                        .abs()
                        .total_cmp(&a[(j, col)].approx().abs())
                })
                .unwrap();
            if a[(pivot, col)].is_zero() || a[(pivot, col)].approx() == 0.0 {
                return Err(GeomError::Structural(format!(
                    "singular matrix at column {col}"
                )));
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Basis of the (right) null space, deterministic: reduced row echelon
    /// form with column-order pivoting, free variables set to one in
    /// ascending coordinate order.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let pivot = (r..rows)
                .max_by(|&i, &j| a[(i, c)].approx().abs().total_cmp(&a[(j, c)].approx().abs()))
                .unwrap();
            if a[(pivot, c)].is_negligible(tol) {
                continue;
            }
            if pivot != r {
                a.swap_rows(pivot, r);
            }
            let p = a[(r, c)].clone();
            for j in 0..cols {
                a[(r, j)] = a[(r, j)].clone() / p.clone();
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); cols];
            v[free] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Field> Matrix<S> {
    /// Entry-wise scalar conversion, e.g. constant `f64` data lifted into a
    /// dual-number evaluation.
    pub fn map_scalars<T: Field>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }
}

pub fn vec_add<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn vec_sub<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn vec_scale<S: Field>(s: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn vec_neg<S: Field>(v: &[S]) -> Vec<S> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn vec_max_abs<S: Field>(v: &[S]) -> f64 {
    v.iter().map(|x| x.approx().abs()).fold(0.0, f64::max)
}

/// Bilinear pairing `u^T G v`.
pub fn pair<S: Field>(gram: &Matrix<S>, u: &[S], v: &[S]) -> S {
    let gv = gram.mul_vec(v);
    u.iter()
        .zip(gv)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
}

/// Symmetric bilinear form with its Gram matrix in a fixed basis.
#[derive(Clone, Debug)]
pub struct BilinearForm<S> {
    pub gram: Matrix<S>,
}

impl<S: Field> BilinearForm<S> {
    pub fn new(gram: Matrix<S>, tol: f64) -> Result<Self> {
        if gram.rows != gram.cols {
            return Err(GeomError::Structural("Gram matrix not square".into()));
        }
        if !gram.is_symmetric(tol) {
            return Err(GeomError::Structural("Gram matrix not symmetric".into()));
        }
        Ok(BilinearForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn eval(&self, u: &[S], v: &[S]) -> S {
        pair(&self.gram, u, v)
    }
}

/// Counts of positive, negative and null eigendirections of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureResult {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
}

impl SignatureResult {
    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.null
    }
}

/// Signature by exact symmetric Gaussian reduction (congruence
/// diagonalization); no rounding at any step.
pub fn signature_exact(form: &BilinearForm<Rational>) -> SignatureResult {
    let n = form.dim();
    let mut a = form.gram.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut plus = 0;
    let mut minus = 0;
    let mut null = 0;
    while let Some(&_first) = active.first() {
        // Prefer a non-zero diagonal pivot among the active block.
        let diag = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                // All active diagonal entries vanish. If an active
                // off-diagonal entry is non-zero, the congruence
                // row_i += row_j (and col_i += col_j) creates 2*a_ij on
                // the diagonal; otherwise the block is the radical.
                let off = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i < j && !a[(i, j)].is_zero());
                match off {
                    None => {
                        null += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[(j, k)].clone();
                            a[(i, k)] = a[(i, k)].clone() + v;
                        }
                        for k in 0..n {
                            let v = a[(k, j)].clone();
                            a[(k, i)] = a[(k, i)].clone() + v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[(p, p)].clone();
        if d.approx() > 0.0 {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&i| i != p);
        for &i in active.clone().iter() {
            let f = a[(i, p)].clone() / d.clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = f.clone() * a[(p, k)].clone();
                a[(i, k)] = a[(i, k)].clone() - v;
            }
            for k in 0..n {
                let v = f.clone() * a[(k, p)].clone();
                a[(k, i)] = a[(k, i)].clone() - v;
            }
        }
    }
    SignatureResult { plus, minus, null }
}

/// Signature by symmetric eigenvalue thresholding at `tol`.
pub fn signature_float(form: &BilinearForm<f64>, tol: f64) -> Result<SignatureResult> {
    if tol <= 0.0 {
        return Err(GeomError::Parameter("tolerance must be positive".into()));
    }
    let n = form.dim();
    let m = DMatrix::from_fn(n, n, |i, j| form.gram[(i, j)]);
    let eig = m.symmetric_eigenvalues();
    let mut plus = 0;
    let mut minus = 0;
    let mut null = 0;
    for ev in eig.iter() {
        if ev.abs() <= tol {
            null += 1;
        } else if *ev > 0.0 {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    Ok(SignatureResult { plus, minus, null })
}

fn normalize_leading<S: Field>(v: &mut [S], tol: f64) {
    if let Some(k) = v.iter().position(|x| !x.is_negligible(tol)) {
        let lead = v[k].clone();
        for x in v.iter_mut() {
            *x = x.clone() / lead.clone();
        }
    }
}

/// Basis of the radical `{v : form(v, .) = 0}`, each vector scaled so its
/// first non-negligible coordinate is one.
pub fn radical_basis<S: Field>(form: &BilinearForm<S>, tol: f64) -> Result<Vec<Vec<S>>> {
    if !S::EXACT && tol <= 0.0 {
        return Err(GeomError::Parameter("tolerance must be positive".into()));
    }
    let mut basis = form.gram.nullspace(tol);
    for v in basis.iter_mut() {
        normalize_leading(v, tol);
    }
    basis.sort_by(|a, b| {
        a.iter()
            .map(Field::approx)
            .partial_cmp(b.iter().map(Field::approx))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(basis)
}

/// Max-abs entry of `W^T diag(eps) W - diag(eps)`; zero iff `W` preserves
/// the indefinite inner product with signature `eps`.
pub fn semi_orthogonal_check<S: Field>(w: &Matrix<S>, eps: &[i8]) -> Result<f64> {
    if w.rows != w.cols || w.rows != eps.len() {
        return Err(GeomError::Structural(format!(
            "dimension mismatch: {}x{} matrix vs signature of length {}",
            w.rows,
            w.cols,
            eps.len()
        )));
    }
    let e = Matrix::from_fn(w.rows, w.rows, |i, j| {
        if i == j {
            S::from_int(eps[i] as i64)
        } else {
            S::zero()
        }
    });
    let res = w.transpose().mat_mul(&e).mat_mul(w).sub(&e);
    Ok(res.max_abs())
}

/// Exact forward-mode directional derivative `df_x(v)`.
pub fn directional_derivative(
    f: impl Fn(&[Dual<f64>]) -> Dual<f64>,
    x: &[f64],
    v: &[f64],
) -> f64 {
    let seeded: Vec<Dual<f64>> = x
        .iter()
        .zip(v)
        .map(|(&xi, &vi)| Dual::new(xi, vi))
        .collect();
    f(&seeded).du
}

/// Indefinite Gram–Schmidt with deterministic pivoting.
///
/// Picks, at each step, the candidate whose orthogonalized residual has the
/// largest |norm|; null residuals are skipped, and when every remaining
/// candidate is null the pairwise sums are tried before giving up. Returns
/// `want` unit vectors together with their signs.
pub fn gram_schmidt<S: Field>(
    gram: &Matrix<S>,
    candidates: &[Vec<S>],
    want: usize,
    tol: f64,
) -> Result<(Vec<Vec<S>>, Vec<i8>)> {
    let mut pool: Vec<Vec<S>> = candidates.to_vec();
    let mut out: Vec<Vec<S>> = Vec::new();
    let mut eps: Vec<i8> = Vec::new();
    let mut augmented = false;
    while out.len() < want {
        let mut best: Option<(usize, Vec<S>, S)> = None;
        for (idx, cand) in pool.iter().enumerate() {
            let mut r = cand.clone();
            for (w, &e) in out.iter().zip(&eps) {
                let c = pair(gram, &r, w);
                let proj = vec_scale(&(S::from_int(e as i64) * c), w);
                r = vec_sub(&r, &proj);
            }
            let norm = pair(gram, &r, &r);
            let better = match &best {
                None => true,
                Some((_, _, bn)) => norm.approx().abs() > bn.approx().abs(),
            };
            if better {
                best = Some((idx, r, norm));
            }
        }
        match best {
            Some((idx, r, norm)) if !norm.is_negligible(tol) => {
                pool.remove(idx);
                let sign: i8 = if norm.approx() > 0.0 { 1 } else { -1 };
                let len = (S::from_int(sign as i64) * norm).sqrt_checked()?;
                let unit: Vec<S> = r.iter().map(|x| x.clone() / len.clone()).collect();
                out.push(unit);
                eps.push(sign);
            }
            _ => {
                if !augmented && pool.len() >= 2 {
                    // All residuals null: a sum of two null candidates can
                    // still carry a non-null direction of the same span.
                    augmented = true;
                    let sums: Vec<Vec<S>> = pool
                        .iter()
                        .enumerate()
                        .flat_map(|(i, a)| {
                            pool[i + 1..].iter().map(move |b| vec_add(a, b))
                        })
                        .collect();
                    pool.extend(sums);
                } else {
                    return Err(GeomError::Degenerate(format!(
                        "Gram-Schmidt null pivot after {} of {} vectors",
                        out.len(),
                        want
                    )));
                }
            }
        }
    }
    Ok((out, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn diag_f(entries: &[f64]) -> BilinearForm<f64> {
        let n = entries.len();
        BilinearForm::new(
            Matrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { 0.0 }),
            1e-12,
        )
        .unwrap()
    }

    fn diag_q(entries: &[i64]) -> BilinearForm<Rational> {
        let n = entries.len();
        BilinearForm::new(
            Matrix::from_fn(n, n, |i, j| if i == j { rat(entries[i]) } else { rat(0) }),
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn signature_of_neutral_diagonal() {
        let f = diag_f(&[-1.0, 1.0, -1.0, 1.0]);
        let s = signature_float(&f, 1e-9).unwrap();
        assert_eq!(
            s,
            SignatureResult {
                plus: 2,
                minus: 2,
                null: 0
            }
        );
    }

    #[test]
    fn signature_fully_degenerate_1x1() {
        let f = diag_q(&[0]);
        assert_eq!(
            signature_exact(&f),
            SignatureResult {
                plus: 0,
                minus: 0,
                null: 1
            }
        );
    }

    #[test]
    fn signature_exact_induced_sl2() {
        // Induced Norden metric on sl(2,R) in basis {X1-X4, X2, X3}:
        // Gram = [[0,0,0],[0,1,0],[0,0,-1]] -> (1,1,1).
        let gram = Matrix::from_rows(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(-1)],
        ]);
        let f = BilinearForm::new(gram, 0.0).unwrap();
        assert_eq!(
            signature_exact(&f),
            SignatureResult {
                plus: 1,
                minus: 1,
                null: 1
            }
        );
    }

    #[test]
    fn signature_exact_offdiagonal_block() {
        // [[0,1],[1,0]] has eigenvalues +1, -1.
        let gram = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        let f = BilinearForm::new(gram, 0.0).unwrap();
        assert_eq!(
            signature_exact(&f),
            SignatureResult {
                plus: 1,
                minus: 1,
                null: 0
            }
        );
    }

    #[test]
    fn radical_basis_cases() {
        let f = diag_q(&[1, -1]);
        assert!(radical_basis(&f, 0.0).unwrap().is_empty());

        let f = diag_q(&[0, 0]);
        let basis = radical_basis(&f, 0.0).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(basis.contains(&vec![rat(1), rat(0)]));
        assert!(basis.contains(&vec![rat(0), rat(1)]));

        let gram = Matrix::from_rows(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(-1)],
        ]);
        let f = BilinearForm::new(gram, 0.0).unwrap();
        let basis = radical_basis(&f, 0.0).unwrap();
        assert_eq!(basis, vec![vec![rat(1), rat(0), rat(0)]]);
    }

    #[test]
    fn non_symmetric_rejected() {
        let gram = Matrix::from_rows(vec![vec![0.0, 1.0], vec![0.5, 0.0]]);
        assert!(BilinearForm::new(gram, 1e-12).is_err());
    }

    #[test]
    fn non_positive_tolerance_rejected() {
        let f = diag_f(&[1.0]);
        assert!(signature_float(&f, 0.0).is_err());
    }

    #[test]
    fn semi_orthogonal_hyperbolic_rotation() {
        let id = Matrix::<f64>::identity(3);
        assert_eq!(semi_orthogonal_check(&id, &[1, -1, 1]).unwrap(), 0.0);

        let s: f64 = 0.7;
        let w = Matrix::from_rows(vec![
            vec![s.cosh(), s.sinh()],
            vec![s.sinh(), s.cosh()],
        ]);
        assert!(semi_orthogonal_check(&w, &[1, -1]).unwrap() < 1e-15);

        let r = std::f64::consts::FRAC_PI_4;
        let rot = Matrix::from_rows(vec![
            vec![r.cos(), -r.sin()],
            vec![r.sin(), r.cos()],
        ]);
        assert!(semi_orthogonal_check(&rot, &[1, -1]).unwrap() > 0.9);

        assert!(semi_orthogonal_check(&rot, &[1, -1, 1]).is_err());
    }

    #[test]
    fn directional_derivative_quadratic_form() {
        // f(x) = <x,x> with Gram diag(-1,-1,1,1); df_x(v) = 2 G(x,v).
        let g = [-1.0, -1.0, 1.0, 1.0];
        let f = |x: &[Dual<f64>]| {
            let mut acc = Dual::constant(0.0);
            for (i, xi) in x.iter().enumerate() {
                acc = acc + Dual::constant(g[i]) * xi.clone() * xi.clone();
            }
            acc
        };
        let x = [1.0, 2.0, 3.0, 4.0];
        let v = [0.5, -1.0, 2.0, 0.0];
        let expect = 2.0 * (-1.0 * 1.0 * 0.5 + -1.0 * 2.0 * -1.0 + 3.0 * 2.0 + 0.0);
        assert!((directional_derivative(f, &x, &v) - expect).abs() < 1e-12);

        let c = |_: &[Dual<f64>]| Dual::constant(7.0);
        assert_eq!(directional_derivative(c, &x, &v), 0.0);
    }

    #[test]
    fn gram_schmidt_null_pivot_fallback() {
        // span{(1,1),(1,-1)} under diag(1,-1): both candidates are null but
        // their sum is not; the fallback must recover an orthonormal pair.
        let gram = Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]);
        let cands = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let (w, eps) = gram_schmidt(&gram, &cands, 2, 0.0).unwrap();
        assert_eq!(w.len(), 2);
        let m = Matrix::from_cols(&w);
        let resid = m.transpose().mat_mul(&gram).mat_mul(&m);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { rat(eps[i] as i64) } else { rat(0) };
                assert_eq!(resid[(i, j)], want);
            }
        }
    }

    #[test]
    fn nullspace_of_gradient_row() {
        // Row (4,0,0,0): kernel is the last three coordinates.
        let m = Matrix::from_rows(vec![vec![4.0, 0.0, 0.0, 0.0]]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert!(v[0].abs() < 1e-15);
        }
    }

    #[test]
    fn inverse_roundtrip_exact() {
        let m = Matrix::from_rows(vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(3)],
            vec![rat(1), rat(0), rat(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mat_mul(&inv), Matrix::identity(3));
    }
}
