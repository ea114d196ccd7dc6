//! Ambient almost complex manifolds with Norden metric.
//!
//! Two scene families share this representation: flat charts (constant
//! metric and constant complex structure on R^m, trivial brackets) and
//! left-invariant structures on Lie groups (constant structure data with
//! non-trivial brackets, evaluated at the identity). All tensors are stored
//! in a fixed global frame; the metric and `J` are constant in that frame.

use crate::error::{GeomError, Result};
use crate::linalg::{pair, vec_add, vec_scale, vec_sub, BilinearForm, Matrix};
use crate::scalar::Field;

/// Structure-constant table: `brackets[i][j]` holds `[e_i, e_j]` as
/// coefficients in the global frame.
pub type Brackets<S> = Vec<Vec<Vec<S>>>;

/// Frame Christoffel table: `gamma[i][j]` holds the coefficient vector of
/// the covariant derivative of `e_j` along `e_i`.
pub type Christoffels<S> = Vec<Vec<Vec<S>>>;

#[derive(Clone, Debug)]
pub struct Ambient<S> {
    pub dim: usize,
    pub metric: BilinearForm<S>,
    /// Complex structure as a matrix acting on frame coefficients.
    pub j: Matrix<S>,
    /// `None` for flat charts (all brackets vanish).
    pub brackets: Option<Brackets<S>>,
}

impl<S: Field> Ambient<S> {
    pub fn new(
        metric: BilinearForm<S>,
        j: Matrix<S>,
        brackets: Option<Brackets<S>>,
    ) -> Result<Self> {
        let dim = metric.dim();
        if j.rows != dim || j.cols != dim {
            return Err(GeomError::Structural(format!(
                "complex structure is {}x{} but the metric has dimension {dim}",
                j.rows, j.cols
            )));
        }
        let mut jj = j.mat_mul(&j);
        for i in 0..dim {
            jj[(i, i)] = jj[(i, i)].clone() + S::one();
        }
        if jj.max_abs() != 0.0 {
            return Err(GeomError::Structural(
                "J^2 + I != 0: not an almost complex structure".into(),
            ));
        }
        if let Some(b) = &brackets {
            validate_brackets(b, dim)?;
        }
        Ok(Ambient {
            dim,
            metric,
            j,
            brackets,
        })
    }

    pub fn g(&self, u: &[S], v: &[S]) -> S {
        self.metric.eval(u, v)
    }

    pub fn j_apply(&self, v: &[S]) -> Vec<S> {
        self.j.mul_vec(v)
    }

    /// Bracket of constant-coefficient frame fields.
    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        let Some(b) = &self.brackets else {
            return out;
        };
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = u[i].clone() * v[j].clone();
                out = vec_add(&out, &vec_scale(&c, &b[i][j]));
            }
        }
        out
    }

    /// Max-abs residual of the Norden compatibility `g(JX, JY) = -g(X, Y)`,
    /// i.e. of `J^T G J + G`.
    pub fn norden_residual(&self) -> f64 {
        let g = &self.metric.gram;
        let mut r = self.j.transpose().mat_mul(g).mat_mul(&self.j);
        for i in 0..self.dim {
            for k in 0..self.dim {
                r[(i, k)] = r[(i, k)].clone() + g[(i, k)].clone();
            }
        }
        r.max_abs()
    }

    /// Associated metric `g~(X, Y) = g(JX, Y)`; its Gram matrix is `J^T G`.
    pub fn associated_form(&self, tol: f64) -> Result<BilinearForm<S>> {
        BilinearForm::new(self.j.transpose().mat_mul(&self.metric.gram), tol)
    }

    /// Left-invariant Levi-Civita Christoffels of `form` via the Koszul
    /// formula `2 g(D_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
    pub fn levi_civita(&self, form: &BilinearForm<S>) -> Result<Christoffels<S>> {
        let n = self.dim;
        let ginv = form.gram.inverse()?;
        let basis: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        let two = S::from_int(2);
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                // Covector of values 2 g(D_{e_i} e_j, e_k).
                let mut rhs = Vec::with_capacity(n);
                for k in 0..n {
                    let t1 = form.eval(&self.bracket(&basis[i], &basis[j]), &basis[k]);
                    let t2 = form.eval(&self.bracket(&basis[j], &basis[k]), &basis[i]);
                    let t3 = form.eval(&self.bracket(&basis[k], &basis[i]), &basis[j]);
                    rhs.push((t1 - t2 + t3) / two.clone());
                }
                table[i][j] = ginv.mul_vec(&rhs);
            }
        }
        Ok(table)
    }

    /// Covariant derivative of the constant field `v` along the constant
    /// field `u`, given a Christoffel table.
    pub fn nabla_const(&self, gamma: &Christoffels<S>, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = u[i].clone() * v[j].clone();
                out = vec_add(&out, &vec_scale(&c, &gamma[i][j]));
            }
        }
        out
    }

    /// `(D_X J) Y = D_X (JY) - J (D_X Y)` for constant fields.
    pub fn covariant_j(&self, gamma: &Christoffels<S>, u: &[S], v: &[S]) -> Vec<S> {
        let a = self.nabla_const(gamma, u, &self.j_apply(v));
        let b = self.j_apply(&self.nabla_const(gamma, u, v));
        vec_sub(&a, &b)
    }

    /// Fundamental tensor `F(X, Y, Z) = g((D_X J) Y, Z)` for constant fields.
    pub fn fundamental_f(&self, gamma: &Christoffels<S>, u: &[S], v: &[S], w: &[S]) -> S {
        self.g(&self.covariant_j(gamma, u, v), w)
    }

    /// Max-abs of `(D_{e_i} J) e_j` over all frame pairs; zero exactly when
    /// the structure is Kaehler with Norden metric.
    pub fn kaehler_residual(&self, gamma: &Christoffels<S>) -> f64 {
        let n = self.dim;
        let basis: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let r = self.covariant_j(gamma, &basis[i], &basis[j]);
                worst = worst.max(crate::linalg::vec_max_abs(&r));
            }
        }
        worst
    }

    /// Nijenhuis tensor `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]`
    /// (using `J^2 = -I`), for constant fields.
    pub fn nijenhuis(&self, u: &[S], v: &[S]) -> Vec<S> {
        let ju = self.j_apply(u);
        let jv = self.j_apply(v);
        let t1 = self.bracket(&ju, &jv);
        let t2 = self.j_apply(&self.bracket(&ju, v));
        let t3 = self.j_apply(&self.bracket(u, &jv));
        let t4 = self.bracket(u, v);
        vec_sub(&vec_sub(&vec_sub(&t1, &t2), &t3), &t4)
    }

    /// Max-abs of the Nijenhuis tensor over all frame pairs.
    pub fn nijenhuis_residual(&self) -> f64 {
        let n = self.dim;
        let basis: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max(crate::linalg::vec_max_abs(
                    &self.nijenhuis(&basis[i], &basis[j]),
                ));
            }
        }
        worst
    }

    /// Entry-wise scalar conversion (e.g. lifting constant `f64` data into a
    /// dual-number evaluation).
    pub fn map_scalars<T: Field>(&self, f: impl Fn(&S) -> T + Copy) -> Ambient<T> {
        Ambient {
            dim: self.dim,
            metric: BilinearForm {
                gram: self.metric.gram.map_scalars(f),
            },
            j: self.j.map_scalars(f),
            brackets: self.brackets.as_ref().map(|b| {
                b.iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| v.iter().map(|x| f(x)).collect())
                            .collect()
                    })
                    .collect()
            }),
        }
    }
}

/// Antisymmetry and Jacobi identity for a structure-constant table.
fn validate_brackets<S: Field>(b: &Brackets<S>, dim: usize) -> Result<()> {
    if b.len() != dim || b.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
        return Err(GeomError::Structural(
            "bracket table has wrong dimensions".into(),
        ));
    }
    for i in 0..dim {
        for j in 0..dim {
            let anti = vec_add(&b[i][j], &b[j][i]);
            if crate::linalg::vec_max_abs(&anti) != 0.0 {
                return Err(GeomError::Structural(format!(
                    "bracket table not antisymmetric at ({i},{j})"
                )));
            }
        }
    }
    let bracket = |u: &[S], v: &[S]| -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for i in 0..dim {
            for j in 0..dim {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let c = u[i].clone() * v[j].clone();
                out = vec_add(&out, &vec_scale(&c, &b[i][j]));
            }
        }
        out
    };
    let basis: Vec<Vec<S>> = (0..dim)
        .map(|i| {
            let mut v = vec![S::zero(); dim];
            v[i] = S::one();
            v
        })
        .collect();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let c1 = bracket(&basis[i], &bracket(&basis[j], &basis[k]));
                let c2 = bracket(&basis[j], &bracket(&basis[k], &basis[i]));
                let c3 = bracket(&basis[k], &bracket(&basis[i], &basis[j]));
                let jac = vec_add(&vec_add(&c1, &c2), &c3);
                if crate::linalg::vec_max_abs(&jac) != 0.0 {
                    return Err(GeomError::Structural(format!(
                        "Jacobi identity fails on ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Metric-compatibility residual `X g(Y,Z) - g(D_X Y, Z) - g(Y, D_X Z)` for
/// constant fields and constant metric (the first term vanishes).
pub fn metric_compat_residual<S: Field>(amb: &Ambient<S>, gamma: &Christoffels<S>) -> f64 {
    let n = amb.dim;
    let basis: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut v = vec![S::zero(); n];
            v[i] = S::one();
            v
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = amb.g(&amb.nabla_const(gamma, &basis[i], &basis[j]), &basis[k]);
                let b = amb.g(&basis[j], &amb.nabla_const(gamma, &basis[i], &basis[k]));
                worst = worst.max((a + b).approx().abs());
            }
        }
    }
    worst
}

/// Torsion residual `D_X Y - D_Y X - [X, Y]` for constant frame fields.
pub fn torsion_residual<S: Field>(amb: &Ambient<S>, gamma: &Christoffels<S>) -> f64 {
    let n = amb.dim;
    let basis: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut v = vec![S::zero(); n];
            v[i] = S::one();
            v
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let t = vec_sub(
                &vec_sub(
                    &amb.nabla_const(gamma, &basis[i], &basis[j]),
                    &amb.nabla_const(gamma, &basis[j], &basis[i]),
                ),
                &amb.bracket(&basis[i], &basis[j]),
            );
            worst = worst.max(crate::linalg::vec_max_abs(&t));
        }
    }
    worst
}

/// Totally symmetric pairing `u^T G v` shortcut re-exported for callers that
/// hold an [`Ambient`].
pub fn ambient_pair<S: Field>(amb: &Ambient<S>, u: &[S], v: &[S]) -> S {
    pair(&amb.metric.gram, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn half() -> Rational {
        Rational::from_int(1) / Rational::from_int(2)
    }

    /// Left-invariant structure on the 4-dimensional matrix-unit Lie
    /// algebra used by the exact scene.
    fn lie_ambient() -> Ambient<Rational> {
        let dim = 4;
        let mut b = vec![vec![vec![rat(0); dim]; dim]; dim];
        let mut set = |i: usize, j: usize, v: Vec<i64>| {
            b[i][j] = v.iter().map(|&n| rat(n)).collect();
            b[j][i] = v.iter().map(|&n| rat(-n)).collect();
        };
        set(0, 1, vec![0, 1, 0, 0]); // [X1,X2] = X2
        set(0, 2, vec![0, 0, -1, 0]); // [X1,X3] = -X3
        set(1, 2, vec![1, 0, 0, -1]); // [X2,X3] = X1 - X4
        set(1, 3, vec![0, 1, 0, 0]); // [X2,X4] = X2
        set(2, 3, vec![0, 0, -1, 0]); // [X3,X4] = -X3
        let gram = Matrix::from_fn(dim, dim, |i, j| {
            if i == j {
                rat(if i % 2 == 0 { -1 } else { 1 })
            } else {
                rat(0)
            }
        });
        // J X1 = X4, J X2 = X3, J X3 = -X2, J X4 = -X1.
        let j = Matrix::from_cols(&[
            vec![rat(0), rat(0), rat(0), rat(1)],
            vec![rat(0), rat(0), rat(1), rat(0)],
            vec![rat(0), rat(-1), rat(0), rat(0)],
            vec![rat(-1), rat(0), rat(0), rat(0)],
        ]);
        Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, Some(b)).unwrap()
    }

    /// Flat chart ambient of the model hypersurface scene (dimension 4).
    fn flat_ambient() -> Ambient<f64> {
        let gram = Matrix::from_fn(4, 4, |i, j| {
            if i == j {
                if i < 2 {
                    -1.0
                } else {
                    1.0
                }
            } else {
                0.0
            }
        });
        // J (u, v) = (-v, u) on R^2 x R^2.
        let j = Matrix::from_cols(&[
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![-1.0, 0.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0, 0.0],
        ]);
        Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, None).unwrap()
    }

    #[test]
    fn norden_compatibility_holds() {
        assert_eq!(lie_ambient().norden_residual(), 0.0);
        assert_eq!(flat_ambient().norden_residual(), 0.0);
    }

    #[test]
    fn j_square_validation() {
        let gram = Matrix::<f64>::identity(2);
        let j = Matrix::<f64>::identity(2);
        assert!(Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, None).is_err());
    }

    #[test]
    fn associated_gram_is_antidiagonal() {
        let amb = lie_ambient();
        let assoc = amb.associated_form(0.0).unwrap();
        let want = [
            [0, 0, 0, 1],
            [0, 0, -1, 0],
            [0, -1, 0, 0],
            [1, 0, 0, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(assoc.gram[(i, j)], rat(want[i][j]));
            }
        }
    }

    #[test]
    fn koszul_connection_values() {
        let amb = lie_ambient();
        let gamma = amb.levi_civita(&amb.metric).unwrap();
        let x2 = vec![rat(0), rat(1), rat(0), rat(0)];
        let x3 = vec![rat(0), rat(0), rat(1), rat(0)];
        // D_{X2} X3 = (X1 - X4)/2
        assert_eq!(
            amb.nabla_const(&gamma, &x2, &x3),
            vec![half(), rat(0), rat(0), -half()]
        );
        // D_{X2} X2 = -X1 - X4
        assert_eq!(
            amb.nabla_const(&gamma, &x2, &x2),
            vec![rat(-1), rat(0), rat(0), rat(-1)]
        );
        assert_eq!(metric_compat_residual(&amb, &gamma), 0.0);
        assert_eq!(torsion_residual(&amb, &gamma), 0.0);
    }

    #[test]
    fn flat_chart_connection_vanishes() {
        let amb = flat_ambient();
        let gamma = amb.levi_civita(&amb.metric).unwrap();
        for row in &gamma {
            for entry in row {
                assert_eq!(crate::linalg::vec_max_abs(entry), 0.0);
            }
        }
        assert_eq!(amb.kaehler_residual(&gamma), 0.0);
        assert_eq!(amb.nijenhuis_residual(), 0.0);
    }

    #[test]
    fn lie_scene_is_not_kaehler() {
        let amb = lie_ambient();
        let gamma = amb.levi_civita(&amb.metric).unwrap();
        let x2 = vec![rat(0), rat(1), rat(0), rat(0)];
        let x3 = vec![rat(0), rat(0), rat(1), rat(0)];
        // (D_{X2} J) X3 = (X1 + X4)/2
        assert_eq!(
            amb.covariant_j(&gamma, &x2, &x3),
            vec![half(), rat(0), rat(0), half()]
        );
        assert!(amb.kaehler_residual(&gamma) > 0.0);
        // Independent obstruction: the ambient structure is not integrable.
        let x1 = vec![rat(1), rat(0), rat(0), rat(0)];
        assert_eq!(
            amb.nijenhuis(&x1, &x2),
            vec![rat(0), rat(-2), rat(2), rat(0)]
        );
    }

    #[test]
    fn bracket_table_validation() {
        // Non-antisymmetric table must be rejected.
        let dim = 2;
        let mut b = vec![vec![vec![rat(0); dim]; dim]; dim];
        b[0][1] = vec![rat(1), rat(0)];
        let gram = Matrix::from_fn(dim, dim, |i, j| if i == j { rat(1) } else { rat(0) });
        // Need a valid J on dim 2: J e1 = e2, J e2 = -e1 (not Norden, but
        // bracket validation runs first only after J^2 check).
        let j = Matrix::from_cols(&[vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]);
        assert!(Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, Some(b)).is_err());
    }
}
