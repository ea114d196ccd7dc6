//! Hypersurface frames and the Gauss–Weingarten decomposition.
//!
//! Two engines share the per-point data layout: the chart engine works on
//! implicit quadric level sets in a flat ambient and differentiates the
//! frame fields with dual numbers; the Lie engine works on a fixed tangent
//! subspace with constant left-invariant fields and the Koszul connection.
//! All structural decisions (pivots, leading-entry normalization, screen
//! candidate ordering) key off the leading real value of each scalar, so a
//! dual-perturbed evaluation follows exactly the branch of its base point
//! and the dual parts are honest derivatives of the constructed fields.

use crate::ambient::{Ambient, Christoffels};
use crate::error::{GeomError, Result};
use crate::linalg::{
    gram_schmidt, pair, radical_basis, vec_add, vec_scale, vec_sub, BilinearForm,
    Matrix,
};
use crate::scalar::{Dual, Field};

/// Quadric constraint `c(x) = x^T Q x + l.x - offset` (Q symmetric; linear
/// hyperplanes have Q = 0).
#[derive(Clone, Debug)]
pub struct Quadric {
    pub q: Matrix<f64>,
    pub l: Vec<f64>,
    pub offset: f64,
}

impl Quadric {
    pub fn value<R: Field>(&self, x: &[R]) -> R {
        let m = x.len();
        let mut acc = -R::from_f64(self.offset);
        for i in 0..m {
            let li = self.l[i];
            if li != 0.0 {
                acc = acc + R::from_f64(li) * x[i].clone();
            }
            for j in 0..m {
                let qij = self.q[(i, j)];
                if qij != 0.0 {
                    acc = acc + R::from_f64(qij) * x[i].clone() * x[j].clone();
                }
            }
        }
        acc
    }

    /// Differential as a covector row: `2 Q x + l`.
    pub fn grad<R: Field>(&self, x: &[R]) -> Vec<R> {
        let m = x.len();
        (0..m)
            .map(|i| {
                let mut acc = R::from_f64(self.l[i]);
                for j in 0..m {
                    let qij = self.q[(i, j)];
                    if qij != 0.0 {
                        acc = acc + R::from_f64(2.0 * qij) * x[j].clone();
                    }
                }
                acc
            })
            .collect()
    }
}

/// Point-admission rule for sampling on a chart scene.
#[derive(Clone, Debug)]
pub enum DomainRule {
    /// Require base-metric `g(x,x) >= bound`.
    MinBaseNorm(f64),
    /// Require `|g(x, Jx)| >= bound` (keeps negative controls away from
    /// the locus where the failure they exhibit would vanish).
    MinAssocAbs(f64),
    /// Require every component of the constructed frame to stay within the
    /// bound. Near points where the screen plane degenerates toward the
    /// light cone the normalized frame blows up and so does floating-point
    /// amplification; such points are outside the verification domain.
    MaxFrameComponent(f64),
}

/// Implicit-hypersurface scene on a flat chart. `view` is the metric under
/// which the hypersurface is lightlike (it may coincide with `base`).
#[derive(Clone, Debug)]
pub struct ChartScene {
    pub base: Ambient<f64>,
    pub view: Ambient<f64>,
    pub con: Quadric,
    pub domain: Vec<DomainRule>,
    /// Half-width of the sampling box.
    pub box_half: f64,
}

impl ChartScene {
    pub fn admits(&self, x: &[f64]) -> bool {
        self.domain.iter().all(|r| match r {
            DomainRule::MinBaseNorm(b) => self.base.g(x, x) >= *b,
            DomainRule::MinAssocAbs(b) => self.base.g(x, &self.base.j_apply(x)).abs() >= *b,
            DomainRule::MaxFrameComponent(bound) => {
                let Ok(tangent) = chart_tangent_basis::<f64>(&self.con, x, 1e-9) else {
                    return false;
                };
                let Ok(fd) = frame_core(&self.view, &tangent, None, 1e-9) else {
                    return false;
                };
                let mut mx: f64 = 0.0;
                for v in fd.w.iter().chain([&fd.xi, &fd.n]) {
                    for c in v {
                        mx = mx.max(c.abs());
                    }
                }
                mx <= *bound
            }
        })
    }
}

/// Fixed-subspace scene inside a Lie-algebra ambient; everything constant.
#[derive(Clone, Debug)]
pub struct LieScene {
    pub amb: Ambient<crate::scalar::Rational>,
    pub tangent: Vec<Vec<crate::scalar::Rational>>,
    /// Replaces the canonical screen candidates (negative-control scenes).
    pub screen_override: Option<Vec<Vec<crate::scalar::Rational>>>,
}

/// Quasi-orthonormal frame `{xi, W_1..W_{m-2}, N}` at a point, satisfying
/// the transversal-section conditions under the view metric.
#[derive(Clone, Debug)]
pub struct FrameData<S> {
    pub m: usize,
    pub tangent: Vec<Vec<S>>,
    pub xi: Vec<S>,
    pub w: Vec<Vec<S>>,
    pub eps: Vec<i8>,
    pub n: Vec<S>,
    /// `b = g(J xi, xi)`.
    pub b: S,
    /// Columns `[xi, W.., N]`.
    pub frame: Matrix<S>,
    pub frame_inv: Matrix<S>,
}

impl<S: Field> FrameData<S> {
    /// Tangent frame field `E_i` (`E_0 = xi`, `E_i = W_i`).
    pub fn e(&self, i: usize) -> Vec<S> {
        if i == 0 {
            self.xi.clone()
        } else {
            self.w[i - 1].clone()
        }
    }

    /// Frame coefficients `[xi, W.., N]` of an ambient vector.
    pub fn to_frame(&self, v: &[S]) -> Vec<S> {
        self.frame_inv.mul_vec(v)
    }

    /// Ambient vector from tangent-frame coefficients (length m-1).
    pub fn from_tangent(&self, c: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.m];
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                v = vec_add(&v, &vec_scale(ci, &self.e(i)));
            }
        }
        v
    }

    /// Max-abs residual of the five frame conditions:
    /// `g(xi,xi)`, `g(xi,W_i)`, `g(N,xi)-1`, `g(N,N)`, `g(N,W_i)`, and
    /// `g(W_i,W_j) - eps_i delta_ij`.
    pub fn frame_residual(&self, gram: &Matrix<S>) -> f64 {
        let mut r = pair(gram, &self.xi, &self.xi).approx().abs();
        r = r.max((pair(gram, &self.n, &self.xi) - S::one()).approx().abs());
        r = r.max(pair(gram, &self.n, &self.n).approx().abs());
        for (i, wi) in self.w.iter().enumerate() {
            r = r.max(pair(gram, &self.xi, wi).approx().abs());
            r = r.max(pair(gram, &self.n, wi).approx().abs());
            for (j, wj) in self.w.iter().enumerate() {
                let want = if i == j {
                    S::from_int(self.eps[i] as i64)
                } else {
                    S::zero()
                };
                r = r.max((pair(gram, wi, wj) - want).approx().abs());
            }
        }
        r
    }
}

/// Signature verdict of the induced metric plus the radical direction when
/// the point is lightlike.
#[derive(Clone, Debug)]
pub struct LightlikeVerdict<S> {
    pub null: usize,
    pub xi: Option<Vec<S>>,
}

/// Signature of the induced metric on a tangent basis; a hypersurface
/// admits radical dimension 0 (non-degenerate) or 1 only.
pub fn lightlike_detect<S: Field>(
    view: &Ambient<S>,
    tangent: &[Vec<S>],
    tol: f64,
) -> Result<LightlikeVerdict<S>> {
    let t = tangent.len();
    let gram_t = Matrix::from_fn(t, t, |i, j| view.g(&tangent[i], &tangent[j]));
    let form = BilinearForm::new(gram_t, if S::EXACT { 0.0 } else { tol })?;
    let rad = radical_basis(&form, tol)?;
    match rad.len() {
        0 => Ok(LightlikeVerdict { null: 0, xi: None }),
        1 => {
            let mut xi = vec![S::zero(); view.dim];
            for (k, c) in rad[0].iter().enumerate() {
                xi = vec_add(&xi, &vec_scale(c, &tangent[k]));
            }
            normalize_leading(&mut xi, tol);
            Ok(LightlikeVerdict {
                null: 1,
                xi: Some(xi),
            })
        }
        n => Err(GeomError::Structural(format!(
            "radical dimension {n} impossible for a hypersurface"
        ))),
    }
}

/// Scales so the largest-magnitude component is 1 (ties: lowest index).
/// Normalizing by the dominant component keeps the section well scaled;
/// dividing by a near-zero pivot would blow up the gauge scalar and turn
/// relative rounding error into large absolute residuals.
fn normalize_leading<S: Field>(v: &mut [S], tol: f64) {
    let mut k = None;
    let mut best = tol;
    for (i, x) in v.iter().enumerate() {
        let mag = x.approx().abs();
        if mag > best {
            best = mag;
            k = Some(i);
        }
    }
    if let Some(k) = k {
        let lead = v[k].clone();
        for x in v.iter_mut() {
            *x = x.clone() / lead.clone();
        }
    }
}

/// Unique transversal section for a given radical and screen: the ambient
/// basis vector whose screen-orthogonal projection has the largest pairing
/// with `xi` seeds the null section with `g(N,xi)=1`, `g(N,N)=0`,
/// `g(N,W)=0`. Taking the dominant pairing (ties: lowest index) keeps the
/// section well conditioned; a merely nonzero pairing could be tiny and
/// blow the section up.
pub fn transversal_section<S: Field>(
    view: &Ambient<S>,
    xi: &[S],
    w: &[Vec<S>],
    eps: &[i8],
    tol: f64,
) -> Result<Vec<S>> {
    let m = view.dim;
    let mut best: Option<(Vec<S>, S)> = None;
    let mut best_mag = tol;
    for a in 0..m {
        let mut v = vec![S::zero(); m];
        v[a] = S::one();
        for (wi, &e) in w.iter().zip(eps) {
            let c = S::from_int(e as i64) * view.g(&v, wi);
            v = vec_sub(&v, &vec_scale(&c, wi));
        }
        let s = view.g(&v, xi);
        let mag = s.approx().abs();
        if mag > best_mag {
            best_mag = mag;
            best = Some((v, s));
        }
    }
    let (v, s) = best.ok_or_else(|| {
        GeomError::Degenerate("no transversal direction pairs with the radical".into())
    })?;
    let half_norm = view.g(&v, &v) / (S::from_int(2) * s.clone());
    Ok(vec_scale(
        &(S::one() / s),
        &vec_sub(&v, &vec_scale(&half_norm, xi)),
    ))
}

/// Builds the full quasi-orthonormal frame at a point from a tangent basis.
///
/// Screen: when `b = g(J xi, xi)` is nonzero the candidates are the tangent
/// basis projected into the g-orthocomplement of `J xi` inside the tangent
/// space (`v - (g(v, J xi)/b) xi`), which is the canonical holomorphic
/// screen on radical transversal scenes; when `b` vanishes the raw tangent
/// basis is used and Gram–Schmidt skips the null radical direction. The
/// transversal section is the unique `N` with `g(N,xi)=1`, `g(N,N)=0`,
/// `g(N,W)=0`.
pub fn frame_core<S: Field>(
    view: &Ambient<S>,
    tangent: &[Vec<S>],
    screen_override: Option<&[Vec<S>]>,
    tol: f64,
) -> Result<FrameData<S>> {
    let m = view.dim;
    if tangent.len() != m - 1 {
        return Err(GeomError::Structural(format!(
            "tangent basis has {} vectors, expected {}",
            tangent.len(),
            m - 1
        )));
    }
    let verdict = lightlike_detect(view, tangent, tol)?;
    let xi = verdict.xi.ok_or_else(|| {
        GeomError::Degenerate("induced metric non-degenerate: no lightlike frame".into())
    })?;
    let jxi = view.j_apply(&xi);
    let b = view.g(&jxi, &xi);

    let candidates: Vec<Vec<S>> = match screen_override {
        Some(ov) => ov.to_vec(),
        None => {
            if b.is_negligible(tol) {
                tangent.to_vec()
            } else {
                tangent
                    .iter()
                    .map(|t| {
                        let c = view.g(t, &jxi) / b.clone();
                        vec_sub(t, &vec_scale(&c, &xi))
                    })
                    .collect()
            }
        }
    };
    let (w, eps) = gram_schmidt(&view.metric.gram, &candidates, m - 2, tol)?;

    let n_vec: Option<Vec<S>> = transversal_section(view, &xi, &w, &eps, tol).ok();
    let n = n_vec.ok_or_else(|| {
        GeomError::Degenerate("no transversal direction pairs with the radical".into())
    })?;

    let mut cols = vec![xi.clone()];
    cols.extend(w.iter().cloned());
    cols.push(n.clone());
    let frame = Matrix::from_cols(&cols);
    let frame_inv = frame.inverse()?;
    Ok(FrameData {
        m,
        tangent: tangent.to_vec(),
        xi,
        w,
        eps,
        n,
        b,
        frame,
        frame_inv,
    })
}

/// First-order derivative data of the connection and Weingarten objects
/// along the tangent frame; absent on left-invariant scenes where every
/// frame-expressed coefficient is constant.
#[derive(Clone, Debug)]
pub struct SecondOrder<S> {
    /// `dgamma[i][j][k][l] = e_i(Gamma^l_{jk})`.
    pub dgamma: Vec<Vec<Vec<Vec<S>>>>,
    /// `dtau[i][j] = e_i(tau(E_j))`.
    pub dtau: Vec<Vec<S>>,
}

/// Full Gauss–Weingarten data at a point, in tangent-frame coordinates
/// (index 0 is `xi`, 1..m-1 the screen, the final frame slot `N`).
#[derive(Clone, Debug)]
pub struct PointData<S> {
    pub fd: FrameData<S>,
    /// `dbar[i][a]` = ambient covariant derivative of frame field `F_a`
    /// along `E_i`, in ambient coordinates.
    pub dbar: Vec<Vec<Vec<S>>>,
    /// `djfr[i][a]` = ambient covariant derivative of `J F_a` along `E_i`.
    pub djfr: Vec<Vec<Vec<S>>>,
    /// Induced connection `Gamma^._{i j}` as tangent coefficient vectors.
    pub gamma: Vec<Vec<Vec<S>>>,
    /// Second fundamental form `B(E_i, E_j)`.
    pub bform: Matrix<S>,
    /// Screen fundamental form `C(E_i, E_j)` (column 0 zero: P kills xi).
    pub cform: Matrix<S>,
    pub tau: Vec<S>,
    /// `A_N E_i` in tangent coefficients.
    pub a_n: Vec<Vec<S>>,
    /// `A*_xi E_i` in tangent coefficients.
    pub a_star: Vec<Vec<S>>,
    /// `[E_i, E_j]` in tangent coefficients.
    pub cstr: Vec<Vec<Vec<S>>>,
    /// `e_i(b)`.
    pub db: Vec<S>,
    /// Induced metric on the tangent frame.
    pub tgram: Matrix<S>,
    pub second: Option<SecondOrder<S>>,
}

impl<S: Field> PointData<S> {
    pub fn m(&self) -> usize {
        self.fd.m
    }

    /// `e_i(Gamma^l_{jk})`; zero when no second-order data is stored
    /// (left-invariant coefficients).
    pub fn dgamma(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        match &self.second {
            Some(so) => so.dgamma[i][j][k][l].clone(),
            None => S::zero(),
        }
    }

    pub fn dtau(&self, i: usize, j: usize) -> S {
        match &self.second {
            Some(so) => so.dtau[i][j].clone(),
            None => S::zero(),
        }
    }

    /// Induced metric value on tangent-coefficient vectors.
    pub fn g_t(&self, u: &[S], v: &[S]) -> S {
        pair(&self.tgram, u, v)
    }

    /// `J` applied to a tangent-coefficient vector, returned as full frame
    /// coefficients (length m: tangent part + N component).
    pub fn j_frame(&self, view: &Ambient<S>, c: &[S]) -> Vec<S> {
        let amb = self.fd.from_tangent(c);
        self.fd.to_frame(&view.j_apply(&amb))
    }
}

fn induced_from<S: Field>(
    view: &Ambient<S>,
    fd: &FrameData<S>,
    dbar: Vec<Vec<Vec<S>>>,
    djfr: Vec<Vec<Vec<S>>>,
    db: Vec<S>,
    second: Option<SecondOrder<S>>,
) -> PointData<S> {
    let m = fd.m;
    let t = m - 1;
    let dec: Vec<Vec<Vec<S>>> = dbar
        .iter()
        .map(|row| row.iter().map(|v| fd.to_frame(v)).collect())
        .collect();
    let mut gamma = vec![vec![Vec::new(); t]; t];
    let mut bform = Matrix::zeros(t, t);
    let mut cform = Matrix::zeros(t, t);
    let mut tau = Vec::with_capacity(t);
    let mut a_n = Vec::with_capacity(t);
    let mut a_star = Vec::with_capacity(t);
    for i in 0..t {
        for j in 0..t {
            gamma[i][j] = dec[i][j][..t].to_vec();
            bform[(i, j)] = dec[i][j][t].clone();
            if j >= 1 {
                cform[(i, j)] = dec[i][j][0].clone();
            }
        }
        let dn = &dec[i][t];
        tau.push(dn[t].clone());
        a_n.push(dn[..t].iter().map(|x| -x.clone()).collect());
    }
    for i in 0..t {
        // (2.5): nabla_X xi = -A*_xi X - tau(X) xi.
        let mut v: Vec<S> = gamma[i][0].iter().map(|x| -x.clone()).collect();
        v[0] = v[0].clone() - tau[i].clone();
        a_star.push(v);
    }
    let mut cstr = vec![vec![Vec::new(); t]; t];
    for i in 0..t {
        for j in 0..t {
            let d = vec_sub(&dec[i][j][..t].to_vec(), &dec[j][i][..t].to_vec());
            cstr[i][j] = d;
        }
    }
    let tgram = Matrix::from_fn(t, t, |i, j| view.g(&fd.e(i), &fd.e(j)));
    PointData {
        fd: fd.clone(),
        dbar,
        djfr,
        gamma,
        bform,
        cform,
        tau,
        a_n,
        a_star,
        cstr,
        db,
        tgram,
        second,
    }
}

/// Tangent basis of an implicit chart hypersurface: kernel of the
/// constraint differential, deterministic free-variable ordering.
pub fn chart_tangent_basis<R: Field>(con: &Quadric, x: &[R], tol: f64) -> Result<Vec<Vec<R>>> {
    let g = con.grad(x);
    if g.iter().all(|c| c.is_negligible(tol)) {
        return Err(GeomError::OffSurface(
            "constraint differential vanishes".into(),
        ));
    }
    let row = Matrix::from_rows(vec![g]);
    let basis = row.nullspace(tol);
    if basis.len() != x.len() - 1 {
        return Err(GeomError::Internal(format!(
            "tangent space dimension {} at a regular point",
            basis.len()
        )));
    }
    Ok(basis)
}

fn lift_ambient<R: Field>(a: &Ambient<f64>) -> Ambient<R> {
    a.map_scalars(|v| R::from_f64(*v))
}

/// Frame construction on a chart at scalar type `R`.
fn chart_frame<R: Field>(sc: &ChartScene, x: &[R], tol: f64) -> Result<FrameData<R>> {
    let view = lift_ambient::<R>(&sc.view);
    let tangent = chart_tangent_basis(&sc.con, x, tol)?;
    frame_core(&view, &tangent, None, tol)
}

/// First-order point data on a chart scene: the frame plus ambient
/// derivatives of all frame fields, obtained by dual-seeded re-evaluation
/// of the frame construction along each tangent frame direction. Running
/// this at `R = Dual<f64>` yields derivatives of every induced object.
pub fn chart_point_data<R: Field>(
    sc: &ChartScene,
    x: &[R],
    tol: f64,
    on_surface_tol: f64,
) -> Result<PointData<R>> {
    let c = sc.con.value(x);
    if !c.is_negligible(on_surface_tol) {
        return Err(GeomError::OffSurface(format!(
            "constraint residual {:e}",
            c.approx()
        )));
    }
    let view = lift_ambient::<R>(&sc.view);
    let fd = chart_frame(sc, x, tol)?;
    let m = fd.m;
    let t = m - 1;
    let mut dbar = vec![vec![Vec::new(); m]; t];
    let mut djfr = vec![vec![Vec::new(); m]; t];
    let mut db = Vec::with_capacity(t);
    for i in 0..t {
        let dir = fd.e(i);
        let fd_eps = seeded_frame(sc, x, &dir, tol)?;
        for a in 0..m {
            let col: Vec<Dual<R>> = fd_eps.frame.col(a);
            dbar[i][a] = col.iter().map(|d| d.du.clone()).collect();
            // Flat chart, constant J: covariant derivative of J F_a is
            // J applied to the derivative of F_a.
            djfr[i][a] = view.j_apply(&dbar[i][a]);
        }
        db.push(fd_eps.b.du.clone());
    }
    Ok(induced_from(&view, &fd, dbar, djfr, db, None))
}

/// Frame construction at `x + eps*dir` over dual scalars.
fn seeded_frame<R: Field>(
    sc: &ChartScene,
    x: &[R],
    dir: &[R],
    tol: f64,
) -> Result<FrameData<Dual<R>>> {
    let xd: Vec<Dual<R>> = x
        .iter()
        .zip(dir)
        .map(|(xi, di)| Dual::new(xi.clone(), di.clone()))
        .collect();
    chart_frame(sc, &xd, tol)
}

/// Directional derivative (along `dir`, ambient coords) of an arbitrary
/// chart field defined through the frame construction.
pub fn chart_field_derivative<R: Field>(
    sc: &ChartScene,
    x: &[R],
    dir: &[R],
    tol: f64,
    field: impl Fn(&FrameData<Dual<R>>) -> Vec<Dual<R>>,
) -> Result<Vec<R>> {
    let fd = seeded_frame(sc, x, dir, tol)?;
    Ok(field(&fd).iter().map(|d| d.du.clone()).collect())
}

/// Full point data on a chart scene with second-order (connection
/// derivative) information, at plain `f64` precision.
pub fn chart_point_full(
    sc: &ChartScene,
    x: &[f64],
    tol: f64,
    on_surface_tol: f64,
) -> Result<PointData<f64>> {
    let mut pd = chart_point_data::<f64>(sc, x, tol, on_surface_tol)?;
    let t = pd.m() - 1;
    let mut dgamma = vec![vec![vec![vec![0.0; t]; t]; t]; t];
    let mut dtau = vec![vec![0.0; t]; t];
    for i in 0..t {
        let dir = pd.fd.e(i);
        let xd: Vec<Dual<f64>> = x
            .iter()
            .zip(&dir)
            .map(|(&xi, &di)| Dual::new(xi, di))
            .collect();
        let pdd = chart_point_data::<Dual<f64>>(sc, &xd, tol, f64::INFINITY)?;
        for j in 0..t {
            dtau[i][j] = pdd.tau[j].du;
            for k in 0..t {
                for l in 0..t {
                    dgamma[i][j][k][l] = pdd.gamma[j][k][l].du;
                }
            }
        }
    }
    pd.second = Some(SecondOrder { dgamma, dtau });
    Ok(pd)
}

/// Point data on a Lie scene; every frame field is constant, so `dbar`
/// comes straight from the Koszul connection and all frame-expressed
/// coefficients have vanishing derivatives.
pub fn lie_point_data(sc: &LieScene, tol: f64) -> Result<PointData<crate::scalar::Rational>> {
    let view = &sc.amb;
    let fd = frame_core(
        view,
        &sc.tangent,
        sc.screen_override.as_deref(),
        tol,
    )?;
    let gamma_amb = view.levi_civita(&view.metric)?;
    let m = fd.m;
    let t = m - 1;
    let mut dbar = vec![vec![Vec::new(); m]; t];
    let mut djfr = vec![vec![Vec::new(); m]; t];
    for i in 0..t {
        let ei = fd.e(i);
        for a in 0..m {
            let fa = fd.frame.col(a);
            dbar[i][a] = view.nabla_const(&gamma_amb, &ei, &fa);
            djfr[i][a] = view.nabla_const(&gamma_amb, &ei, &view.j_apply(&fa));
        }
    }
    let db = vec![crate::scalar::Rational::from_int(0); t];
    Ok(induced_from(view, &fd, dbar, djfr, db, None))
}

/// Ambient brackets of the four fields needed by the CR conditions on a
/// chart: `[A, B]` for `A, B` drawn from the screen fields and their
/// `J`-images, computed as derivative differences of the actual fields.
pub fn chart_bracket(
    sc: &ChartScene,
    x: &[f64],
    tol: f64,
    field_a: impl Fn(&FrameData<Dual<f64>>) -> Vec<Dual<f64>> + Copy,
    field_b: impl Fn(&FrameData<Dual<f64>>) -> Vec<Dual<f64>> + Copy,
    a_at: &[f64],
    b_at: &[f64],
) -> Result<Vec<f64>> {
    let da_along_b = chart_field_derivative(sc, x, b_at, tol, field_a)?;
    let db_along_a = chart_field_derivative(sc, x, a_at, tol, field_b)?;
    Ok(vec_sub(&db_along_a, &da_along_b))
}

/// Screen/transversal transform of eq-style frame changes: given screen
/// rotation `wmat` (semi-orthogonal for `eps`) and functions `f`, produces
/// `W'_i = sum_j wmat[j][i] (W_j - eps_j f_j xi)` and
/// `N' = N - (1/2)(sum eps_i f_i^2) xi + sum f_i W_i`.
pub fn screen_transform<S: Field>(
    fd: &FrameData<S>,
    f: &[S],
    wmat: &Matrix<S>,
    view: &Ambient<S>,
    tol: f64,
) -> Result<FrameData<S>> {
    let k = fd.w.len();
    if f.len() != k || wmat.rows != k || wmat.cols != k {
        return Err(GeomError::Structural("transform dimension mismatch".into()));
    }
    let res = crate::linalg::semi_orthogonal_check(wmat, &fd.eps)?;
    if res > tol {
        return Err(GeomError::Parameter(format!(
            "screen matrix not semi-orthogonal (residual {res:e})"
        )));
    }
    let shifted: Vec<Vec<S>> = (0..k)
        .map(|j| {
            let c = S::from_int(fd.eps[j] as i64) * f[j].clone();
            vec_sub(&fd.w[j], &vec_scale(&c, &fd.xi))
        })
        .collect();
    let w_new: Vec<Vec<S>> = (0..k)
        .map(|i| {
            let mut v = vec![S::zero(); fd.m];
            for j in 0..k {
                v = vec_add(&v, &vec_scale(&wmat[(j, i)], &shifted[j]));
            }
            v
        })
        .collect();
    let mut sum = S::zero();
    for i in 0..k {
        sum = sum + S::from_int(fd.eps[i] as i64) * f[i].clone() * f[i].clone();
    }
    let mut n_new = vec_sub(
        &fd.n,
        &vec_scale(&(sum / S::from_int(2)), &fd.xi),
    );
    for i in 0..k {
        n_new = vec_add(&n_new, &vec_scale(&f[i], &fd.w[i]));
    }
    let mut cols = vec![fd.xi.clone()];
    cols.extend(w_new.iter().cloned());
    cols.push(n_new.clone());
    let frame = Matrix::from_cols(&cols);
    let frame_inv = frame.inverse()?;
    let jxi = view.j_apply(&fd.xi);
    let b = view.g(&jxi, &fd.xi);
    Ok(FrameData {
        m: fd.m,
        tangent: fd.tangent.clone(),
        xi: fd.xi.clone(),
        w: w_new,
        eps: fd.eps.clone(),
        n: n_new,
        b,
        frame,
        frame_inv,
    })
}

/// Connection-coefficient table of the ambient's Levi-Civita connection on
/// a Lie scene, re-exported for suites needing ambient covariant data.
pub fn lie_ambient_connection(sc: &LieScene) -> Result<Christoffels<crate::scalar::Rational>> {
    sc.amb.levi_civita(&sc.amb.metric)
}
