//! Check suites for radical transversal lightlike hypersurfaces.
//!
//! Every suite folds per-point residuals into a [`CheckSet`]; the caller
//! accumulates over sample points and turns the set into report lines.
//! Tangent-frame coefficient conventions: index 0 is the radical direction
//! `xi`, indices `1..t` the screen, and frame slot `t = m-1` is `N`.

use crate::ambient::Ambient;
use crate::error::{GeomError, Result};
use crate::hypersurface::{
    chart_bracket, frame_core, ChartScene, FrameData, PointData,
};
use crate::linalg::{semi_orthogonal_check, vec_add, vec_scale, vec_sub, Matrix};
use crate::report::{CheckSet, Res};
use crate::scalar::{Dual, Field};

fn unit<S: Field>(len: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); len];
    v[i] = S::one();
    v
}

fn pad<S: Field>(c: &[S]) -> Vec<S> {
    let mut v = c.to_vec();
    v.push(S::zero());
    v
}

/// `B(E_i, V)` for a tangent-coefficient vector `V`.
fn b_eval<S: Field>(pd: &PointData<S>, i: usize, v: &[S]) -> S {
    let t = pd.m() - 1;
    let mut acc = S::zero();
    for k in 0..t {
        if !v[k].is_zero() {
            acc = acc + v[k].clone() * pd.bform[(i, k)].clone();
        }
    }
    acc
}

/// `C(E_i, PV)` for a tangent-coefficient vector `V` (screen components).
fn c_eval<S: Field>(pd: &PointData<S>, i: usize, v: &[S]) -> S {
    let t = pd.m() - 1;
    let mut acc = S::zero();
    for k in 1..t {
        if !v[k].is_zero() {
            acc = acc + v[k].clone() * pd.cform[(i, k)].clone();
        }
    }
    acc
}

/// `A_N` applied to a tangent-coefficient vector.
fn a_n_eval<S: Field>(pd: &PointData<S>, v: &[S]) -> Vec<S> {
    let t = pd.m() - 1;
    let mut acc = vec![S::zero(); t];
    for k in 0..t {
        if !v[k].is_zero() {
            acc = vec_add(&acc, &vec_scale(&v[k], &pd.a_n[k]));
        }
    }
    acc
}

/// `(nabla_{E_i} eta)(E_j)`; eta is constant in frame coordinates, so this
/// is minus the xi-coefficient of `nabla_{E_i} E_j`.
fn nabla_eta<S: Field>(pd: &PointData<S>, i: usize, j: usize) -> S {
    -pd.gamma[i][j][0].clone()
}

/// Frame and Gauss–Weingarten structural checks.
pub fn frame_suite<S: Field>(view: &Ambient<S>, pd: &PointData<S>, cs: &mut CheckSet) {
    let fd = &pd.fd;
    let t = pd.m() - 1;
    let gram = &view.metric.gram;
    // Quasi-orthonormal frame conditions.
    cs.add_val("eq_2_2", &view.g(&fd.xi, &fd.xi));
    cs.add_val("eq_2_2", &(view.g(&fd.n, &fd.xi) - S::one()));
    cs.add_val("eq_2_2", &view.g(&fd.n, &fd.n));
    for (i, wi) in fd.w.iter().enumerate() {
        cs.add_val("eq_2_2", &view.g(&fd.xi, wi));
        cs.add_val("eq_2_2", &view.g(&fd.n, wi));
        for (j, wj) in fd.w.iter().enumerate() {
            let want = if i == j {
                S::from_int(fd.eps[i] as i64)
            } else {
                S::zero()
            };
            cs.add_val("eq_2_2", &(crate::linalg::pair(gram, wi, wj) - want));
        }
    }
    // A_N xi = 0 and B(., xi) = 0.
    cs.add_vec("eq_2_4", &pd.a_n[0]);
    for i in 0..t {
        cs.add_val("eq_2_4", &pd.bform[(i, 0)]);
        cs.add_val("eq_2_4", &pd.bform[(0, i)]);
    }
    // B(X,Y) = g(A*_xi X, Y) and C(X,PY) = g(A_N X, PY).
    for i in 0..t {
        for j in 0..t {
            let ej = unit::<S>(t, j);
            cs.add_val(
                "eq_2_6",
                &(pd.bform[(i, j)].clone() - pd.g_t(&pd.a_star[i], &ej)),
            );
            if j >= 1 {
                cs.add_val(
                    "eq_2_6",
                    &(pd.cform[(i, j)].clone() - pd.g_t(&pd.a_n[i], &ej)),
                );
            }
        }
    }
    // A*_xi xi = 0 and h*(xi, PY) = 0.
    cs.add_vec("eq_2_7", &pd.a_star[0]);
    for j in 1..t {
        cs.add_val("eq_2_7", &pd.cform[(0, j)]);
    }
    for i in 0..t {
        for j in 0..t {
            cs.add_val(
                "b_symmetric",
                &(pd.bform[(i, j)].clone() - pd.bform[(j, i)].clone()),
            );
            // Torsion: asymmetry of the induced connection matches the
            // structure functions (N-components cancel via B symmetry).
            let d = vec_sub(&pd.gamma[i][j], &pd.gamma[j][i]);
            cs.add_vec("torsion_free", &vec_sub(&d, &pd.cstr[i][j]));
            // Known non-metricity: (nabla_X g)(Y,Z) =
            // B(X,Y) eta(Z) + B(X,Z) eta(Y); the frame gram is constant.
            for k in 0..t {
                let ek = unit::<S>(t, k);
                let ej = unit::<S>(t, j);
                let lhs = -pd.g_t(&pd.gamma[i][j], &ek) - pd.g_t(&ej, &pd.gamma[i][k]);
                let eta_k = if k == 0 { S::one() } else { S::zero() };
                let eta_j = if j == 0 { S::one() } else { S::zero() };
                let rhs = pd.bform[(i, j)].clone() * eta_k + pd.bform[(i, k)].clone() * eta_j;
                cs.add_val("non_metricity", &(lhs - rhs));
            }
        }
    }
}

/// Residual of `J xi` lying in the transversal line (all frame components
/// except the `N` slot), plus the verdict that `b` is nonzero.
pub fn rtl_detect<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    tol: f64,
) -> (bool, Res) {
    let t = pd.m() - 1;
    let jxi = pd.j_frame(view, &unit::<S>(t, 0));
    let mut span = Res::zero(S::EXACT);
    for a in 0..t {
        span = span.join(Res::of(&jxi[a]));
    }
    let b_nonzero = !pd.fd.b.is_negligible(tol);
    (span.passes(tol) && b_nonzero, span)
}

/// Residual of screen holomorphy: xi- and N-components of `J W_j`.
pub fn holomorphy_residual<S: Field>(view: &Ambient<S>, pd: &PointData<S>) -> Res {
    let t = pd.m() - 1;
    let mut r = Res::zero(S::EXACT);
    for j in 1..t {
        let jw = pd.j_frame(view, &unit::<S>(t, j));
        r = r.join(Res::of(&jw[0]));
        r = r.join(Res::of(&jw[t]));
    }
    r
}

/// Radical transversal detection and its equivalence with holomorphy of
/// the screen distribution.
pub fn rtl_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    expect_rtl: bool,
    tol: f64,
    cs: &mut CheckSet,
) {
    let t = pd.m() - 1;
    let (is_rtl, span) = rtl_detect(view, pd, tol);
    if expect_rtl {
        cs.add("def_3_1", span);
        cs.add("def_3_1", Res::verdict(!pd.fd.b.is_negligible(tol)));
    } else {
        cs.add("def_3_1", Res::verdict(!is_rtl));
    }
    // J xi = xi_1 + a xi + b N: the N-coefficient is b.
    let jxi = pd.j_frame(view, &unit::<S>(t, 0));
    cs.add_val("eq_3_1", &(jxi[t].clone() - pd.fd.b.clone()));
    let holo = holomorphy_residual(view, pd);
    // Holomorphy of the screen is only asserted where radical transversality
    // is expected; the biconditional with detection is checked regardless.
    if expect_rtl {
        cs.add("thm_3_1_holo", holo);
    }
    cs.add("thm_3_1", Res::verdict(is_rtl == holo.passes(tol)));
}

/// Identity suite valid on radical transversal hypersurfaces of Kaehler
/// ambients; the caller gates on the ambient parallel-J residual.
pub fn kaehler_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    tol: f64,
    cs: &mut CheckSet,
) -> Result<()> {
    let t = pd.m() - 1;
    let m = pd.m();
    let b = pd.fd.b.clone();
    if b.is_negligible(tol) {
        return Err(GeomError::Degenerate(
            "identity suite needs nonzero b".into(),
        ));
    }
    let two = S::from_int(2);
    for i in 0..t {
        let jan = pd.j_frame(view, &pd.a_n[i]);
        // (nabla-bar J) N expansion must vanish.
        let mut v41 = vec![S::zero(); m];
        let astar = pad(&pd.a_star[i]);
        for a in 0..m {
            v41[a] = astar[a].clone() / b.clone() + jan[a].clone();
        }
        v41[0] = v41[0].clone()
            + (two.clone() * pd.tau[i].clone() + pd.db[i].clone() / b.clone()) / b.clone();
        cs.add_vec("eq_4_1", &v41);
        // A*_xi X = -b J(A_N X).
        for a in 0..m {
            cs.add_val("eq_4_2", &(astar[a].clone() + b.clone() * jan[a].clone()));
        }
        // tau(X) = -(1/2b)(X . b).
        cs.add_val(
            "eq_4_3",
            &(pd.tau[i].clone() + pd.db[i].clone() / (two.clone() * b.clone())),
        );
        // nabla_X xi = b J(A_N X) + (1/2b)(X . b) xi.
        let mut vxi = pad(&pd.gamma[i][0]);
        for a in 0..m {
            vxi[a] = vxi[a].clone() - b.clone() * jan[a].clone();
        }
        vxi[0] = vxi[0].clone() - pd.db[i].clone() / (two.clone() * b.clone());
        cs.add_vec("eq_4_11", &vxi);
    }
    // J Y = J(PY) + eta(Y) b N, evaluated on Y = xi.
    let jxi = pd.j_frame(view, &unit::<S>(t, 0));
    for a in 0..m {
        let want = if a == t { b.clone() } else { S::zero() };
        cs.add_val("eq_4_4", &(jxi[a].clone() - want));
    }
    for i in 0..t {
        for j in 0..t {
            let eta_j = if j == 0 { S::one() } else { S::zero() };
            let jpy: Vec<S> = if j >= 1 {
                pd.j_frame(view, &unit::<S>(t, j))
            } else {
                vec![S::zero(); m]
            };
            // C(X, J(PY)) = -(1/b) B(X, Y).
            if j >= 1 {
                cs.add_val(
                    "eq_4_7",
                    &(c_eval(pd, i, &jpy) + pd.bform[(i, j)].clone() / b.clone()),
                );
            }
            // B(X, J(PY)) = -(1/2) eta(Y)(X.b) - b (nabla_X eta) Y.
            let bterm = b_eval(pd, i, &jpy[..t]);
            cs.add_val(
                "eq_4_8",
                &(bterm
                    + eta_j.clone() * pd.db[i].clone() / two.clone()
                    + b.clone() * nabla_eta(pd, i, j)),
            );
            // C(X, PY) = -(1/2b) eta(Y)(X.b) - (nabla_X eta) Y.
            let c_lhs = if j >= 1 {
                pd.cform[(i, j)].clone()
            } else {
                S::zero()
            };
            cs.add_val(
                "eq_4_10",
                &(c_lhs.clone()
                    + eta_j.clone() * pd.db[i].clone() / (two.clone() * b.clone())
                    + nabla_eta(pd, i, j)),
            );
            if j >= 1 {
                // nabla_X (J(PY)) in frame coefficients, with the screen
                // projection P applied to its tangent part.
                let dec_jf = pd.fd.to_frame(&pd.djfr[i][j]);
                let mut pdec = dec_jf[..t].to_vec();
                pdec[0] = S::zero();
                let jpdec = pd.j_frame(view, &pdec);
                // (4.9): nabla*_X PY = -J(P(nabla_X J(PY))).
                for a in 0..m {
                    let lhs = if (1..t).contains(&a) {
                        pd.gamma[i][j][a].clone()
                    } else {
                        S::zero()
                    };
                    cs.add_val("eq_4_9", &(lhs + jpdec[a].clone()));
                }
                // (4.11): nabla_X PY adds the xi-component correction.
                let lhs = pad(&pd.gamma[i][j]);
                for a in 0..m {
                    let mut rhs = -jpdec[a].clone();
                    if a == 0 {
                        rhs = rhs - nabla_eta(pd, i, j);
                    }
                    cs.add_val("eq_4_11", &(lhs[a].clone() - rhs));
                }
                // (4.12): nabla*_X (J PY) = J(nabla*_X PY) on the screen.
                let mut screen_gamma = pd.gamma[i][j].clone();
                screen_gamma[0] = S::zero();
                let j_screen = pd.j_frame(view, &screen_gamma);
                for a in 1..t {
                    cs.add_val("eq_4_12", &(dec_jf[a].clone() - j_screen[a].clone()));
                }
            } else {
                // (4.11) on Y = xi: nabla_X (P xi) = 0 forces
                // (1/2b)(X.b) + (nabla_X eta) xi = 0.
                cs.add_val(
                    "eq_4_11",
                    &(pd.db[i].clone() / (two.clone() * b.clone()) + nabla_eta(pd, i, 0)),
                );
            }
        }
    }
    Ok(())
}

/// Self-conjugacy of the transversal shape operator relative to J.
pub fn selfconjugacy_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    tol: f64,
    cs: &mut CheckSet,
) {
    let t = pd.m() - 1;
    let mut sym = Res::zero(S::EXACT);
    let mut comm = Res::zero(S::EXACT);
    for i in 1..t {
        let jan_i = pd.j_frame(view, &pd.a_n[i]);
        for j in 1..t {
            let ei = unit::<S>(t, i);
            let ej = unit::<S>(t, j);
            let jan_j = pd.j_frame(view, &pd.a_n[j]);
            // g(J A_N X, Y) = g(X, J A_N Y).
            cs.add_val(
                "eq_4_13",
                &(pd.g_t(&jan_i[..t].to_vec(), &ej) - pd.g_t(&ei, &jan_j[..t].to_vec())),
            );
            sym = sym.join(Res::of(
                &(pd.g_t(&pd.a_n[i], &ej) - pd.g_t(&ei, &pd.a_n[j])),
            ));
        }
        // A_N(J X) - J(A_N X) on the screen.
        let jx = pd.j_frame(view, &unit::<S>(t, i));
        let anjx = a_n_eval(pd, &jx[..t]);
        for a in 0..t {
            comm = comm.join(Res::of(&(anjx[a].clone() - jan_i[a].clone())));
        }
    }
    cs.add("thm_4_1b", Res::verdict(sym.passes(tol) == comm.passes(tol)));
    cs.add("thm_4_1b_sym", sym);
    cs.add("thm_4_1b_comm", comm);
}

/// Three-way equivalence: screen integrability, symmetry of the screen
/// second fundamental form, and J-commutation of the shape operator.
pub fn integrability_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    tol: f64,
    cs: &mut CheckSet,
) {
    let t = pd.m() - 1;
    let mut screen = Res::zero(S::EXACT);
    let mut hstar = Res::zero(S::EXACT);
    let mut comm = Res::zero(S::EXACT);
    for i in 1..t {
        let jan_i = pd.j_frame(view, &pd.a_n[i]);
        let jx = pd.j_frame(view, &unit::<S>(t, i));
        let anjx = a_n_eval(pd, &jx[..t]);
        for a in 0..t {
            comm = comm.join(Res::of(&(anjx[a].clone() - jan_i[a].clone())));
        }
        for j in 1..t {
            // [W_i, W_j] has no radical component iff S(TM) integrable.
            screen = screen.join(Res::of(&pd.cstr[i][j][0]));
            hstar = hstar.join(Res::of(
                &(pd.cform[(i, j)].clone() - pd.cform[(j, i)].clone()),
            ));
        }
    }
    let verdicts = [screen.passes(tol), hstar.passes(tol), comm.passes(tol)];
    cs.add(
        "cor_4_1",
        Res::verdict(verdicts.iter().all(|&v| v == verdicts[0])),
    );
    cs.add("cor_4_1_screen", screen);
    cs.add("cor_4_1_hstar", hstar);
    cs.add("cor_4_1_commute", comm);
}

/// Scene-level findings of the geodesic / umbilical characterizations;
/// the equivalence verdicts go into the check set, these booleans only
/// describe which side of each equivalence the scene is on.
#[derive(Clone, Copy, Debug)]
pub struct GeoUmbSummary {
    pub geodesic: bool,
    pub umb_m: bool,
    pub umb_s: bool,
}

/// Totally geodesic / totally umbilical characterizations.
pub fn geodesic_umbilical_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    tol: f64,
    cs: &mut CheckSet,
) -> Result<GeoUmbSummary> {
    let t = pd.m() - 1;
    let m = pd.m();
    let b = pd.fd.b.clone();
    if b.is_negligible(tol) {
        return Err(GeomError::Degenerate(
            "umbilical suite needs nonzero b".into(),
        ));
    }
    let mut res_b = Res::zero(S::EXACT);
    let mut res_c = Res::zero(S::EXACT);
    let mut res_eta = Res::zero(S::EXACT);
    for i in 0..t {
        for j in 0..t {
            res_b = res_b.join(Res::of(&pd.bform[(i, j)]));
            if j >= 1 {
                res_c = res_c.join(Res::of(&pd.cform[(i, j)]));
            }
            let eta_j = if j == 0 { S::one() } else { S::zero() };
            res_eta = res_eta.join(Res::of(
                &(nabla_eta(pd, i, j) - eta_j * pd.tau[i].clone()),
            ));
        }
    }
    let geo = [res_b.passes(tol), res_c.passes(tol), res_eta.passes(tol)];
    cs.add("thm_4_2", Res::verdict(geo.iter().all(|&v| v == geo[0])));

    // Umbilical factor of B from the largest screen diagonal entry.
    let mut rho = S::zero();
    let mut best = -1.0;
    for k in 1..t {
        let mag = pd.bform[(k, k)].approx().abs();
        if mag > best {
            best = mag;
            let ek = unit::<S>(t, k);
            rho = pd.bform[(k, k)].clone() / pd.g_t(&ek, &ek);
        }
    }
    let mut umb_m = Res::zero(S::EXACT);
    for i in 0..t {
        for j in 0..t {
            let ei = unit::<S>(t, i);
            let ej = unit::<S>(t, j);
            umb_m = umb_m.join(Res::of(
                &(pd.bform[(i, j)].clone() - rho.clone() * pd.g_t(&ei, &ej)),
            ));
        }
    }
    let mut cond_i = Res::zero(S::EXACT);
    for i in 1..t {
        // A_N(PX) = (rho / b) J(PX).
        let jpx = pd.j_frame(view, &unit::<S>(t, i));
        let an = pad(&pd.a_n[i]);
        for a in 0..m {
            cond_i = cond_i.join(Res::of(
                &(an[a].clone() - rho.clone() / b.clone() * jpx[a].clone()),
            ));
        }
    }
    cs.add(
        "thm_4_3",
        Res::verdict(umb_m.passes(tol) == cond_i.passes(tol)),
    );

    // Screen umbilical factor of C.
    let mut kfac = S::zero();
    let mut best = -1.0;
    for k in 1..t {
        let mag = pd.cform[(k, k)].approx().abs();
        if mag > best {
            best = mag;
            let ek = unit::<S>(t, k);
            kfac = pd.cform[(k, k)].clone() / pd.g_t(&ek, &ek);
        }
    }
    let mut umb_s = Res::zero(S::EXACT);
    for i in 0..t {
        for j in 1..t {
            let ei = unit::<S>(t, i);
            let ej = unit::<S>(t, j);
            umb_s = umb_s.join(Res::of(
                &(pd.cform[(i, j)].clone() - kfac.clone() * pd.g_t(&ei, &ej)),
            ));
        }
    }
    let mut cond_ii = Res::zero(S::EXACT);
    for i in 1..t {
        // A*_xi(PX) = -b k J(PX).
        let jpx = pd.j_frame(view, &unit::<S>(t, i));
        let astar = pad(&pd.a_star[i]);
        for a in 0..m {
            cond_ii = cond_ii.join(Res::of(
                &(astar[a].clone() + b.clone() * kfac.clone() * jpx[a].clone()),
            ));
        }
    }
    cs.add(
        "thm_4_3",
        Res::verdict(umb_s.passes(tol) == cond_ii.passes(tol)),
    );
    Ok(GeoUmbSummary {
        geodesic: res_b.passes(tol),
        umb_m: umb_m.passes(tol),
        umb_s: umb_s.passes(tol),
    })
}

/// Curvature vector `R(E_i, E_j) E_k` in tangent coefficients.
fn curvature<S: Field>(pd: &PointData<S>, i: usize, j: usize, k: usize) -> Vec<S> {
    let t = pd.m() - 1;
    (0..t)
        .map(|l| {
            let mut v = pd.dgamma(i, j, k, l) - pd.dgamma(j, i, k, l);
            for mm in 0..t {
                v = v + pd.gamma[j][k][mm].clone() * pd.gamma[i][mm][l].clone()
                    - pd.gamma[i][k][mm].clone() * pd.gamma[j][mm][l].clone()
                    - pd.cstr[i][j][mm].clone() * pd.gamma[mm][k][l].clone();
            }
            v
        })
        .collect()
}

/// Ricci symmetry of the induced connection and its equivalence with the
/// closedness of the transversal 1-form tau.
pub fn ricci_suite<S: Field>(pd: &PointData<S>, tol_ric: f64, tol_dtau: f64, cs: &mut CheckSet) {
    let t = pd.m() - 1;
    let mut ric = Matrix::<S>::zeros(t, t);
    for a in 0..t {
        for b in 0..t {
            let mut acc = S::zero();
            for i in 0..t {
                acc = acc + curvature(pd, a, i, b)[i].clone();
            }
            ric[(a, b)] = acc;
        }
    }
    let mut sym = Res::zero(S::EXACT);
    let mut dtau = Res::zero(S::EXACT);
    for i in 0..t {
        for j in 0..t {
            sym = sym.join(Res::of(&(ric[(i, j)].clone() - ric[(j, i)].clone())));
            let mut d = pd.dtau(i, j) - pd.dtau(j, i);
            for mm in 0..t {
                d = d - pd.cstr[i][j][mm].clone() * pd.tau[mm].clone();
            }
            dtau = dtau.join(Res::of(&d));
        }
    }
    cs.add(
        "prop_4_1",
        Res::verdict(sym.passes(tol_ric) == dtau.passes(tol_dtau)),
    );
    cs.add("prop_4_1_ric", sym);
    cs.add("prop_4_1_dtau", dtau);
}

/// Reorders screen vectors so the sign pattern matches `want`.
fn match_eps<S: Field>(w: Vec<Vec<S>>, eps: Vec<i8>, want: &[i8]) -> Result<Vec<Vec<S>>> {
    let mut used = vec![false; eps.len()];
    let mut out = Vec::with_capacity(eps.len());
    for &target in want {
        let k = (0..eps.len())
            .find(|&k| !used[k] && eps[k] == target)
            .ok_or_else(|| GeomError::Structural("screen signature mismatch".into()))?;
        used[k] = true;
        out.push(w[k].clone());
    }
    Ok(out)
}

/// Semi-orthogonal mixing matrix for the given sign pattern: rational
/// rotations inside same-sign pairs, rational boosts across mixed pairs.
fn mixing_matrix<S: Field>(eps: &[i8], p: usize) -> Matrix<S> {
    let k = eps.len();
    let mut m = Matrix::<S>::identity(k);
    let q = S::from_int(p as i64 + 1) / S::from_int(p as i64 + 3);
    let q2 = q.clone() * q.clone();
    let mut a = 0;
    while a + 1 < k {
        if eps[a] == eps[a + 1] {
            let den = S::one() + q2.clone();
            let c = (S::one() - q2.clone()) / den.clone();
            let s = S::from_int(2) * q.clone() / den;
            m[(a, a)] = c.clone();
            m[(a + 1, a + 1)] = c;
            m[(a, a + 1)] = -s.clone();
            m[(a + 1, a)] = s;
        } else {
            let den = q2.clone() - S::one();
            let c = (q2.clone() + S::one()) / den.clone();
            let s = S::from_int(2) * q.clone() / den;
            m[(a, a)] = c.clone();
            m[(a + 1, a + 1)] = c;
            m[(a, a + 1)] = s.clone();
            m[(a + 1, a)] = s;
        }
        a += 2;
    }
    m
}

/// Transversal section for a given screen, mirroring the frame builder.
fn transversal_for<S: Field>(
    view: &Ambient<S>,
    xi: &[S],
    w: &[Vec<S>],
    eps: &[i8],
    tol: f64,
) -> Result<Vec<S>> {
    crate::hypersurface::transversal_section(view, xi, w, eps, tol)
}

/// Given a second screen (same radical), solves the frame-change relations
/// for the shift functions and checks screen uniqueness: the shifts must
/// vanish, the mixing matrix must be semi-orthogonal, and the recomputed
/// transversal must coincide with the original.
fn probe_decompose<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    w2: &[Vec<S>],
    eps2: &[i8],
    tol: f64,
    cs: &mut CheckSet,
) -> Result<()> {
    let fd = &pd.fd;
    let k = fd.w.len();
    let t = pd.m() - 1;
    let w2 = match_eps(w2.to_vec(), eps2.to_vec(), &fd.eps)?;
    let mut wmat = Matrix::<S>::zeros(k, k);
    let mut shift = Vec::with_capacity(k);
    for (i, wv) in w2.iter().enumerate() {
        let coeffs = fd.to_frame(wv);
        cs.add_val("thm_4_1a_w", &coeffs[t]); // no transversal component
        for j in 0..k {
            wmat[(j, i)] = coeffs[1 + j].clone();
        }
        shift.push(coeffs[0].clone());
    }
    // (2.8): the xi-coefficient of W'_i is -sum_j W^j_i eps_j f_j.
    let sys = Matrix::from_fn(k, k, |i, j| {
        S::from_int(fd.eps[j] as i64) * wmat[(j, i)].clone()
    });
    let f = sys.inverse()?.mul_vec(&shift.iter().map(|s| -s.clone()).collect::<Vec<_>>());
    cs.add_vec("thm_4_1a_f", &f);
    let so = semi_orthogonal_check(&wmat, &fd.eps)?;
    cs.add(
        "thm_4_1a_w",
        Res {
            value: so,
            structural_zero: so == 0.0,
            exact: S::EXACT,
        },
    );
    let n2 = transversal_for(view, &fd.xi, &w2, &fd.eps, tol)?;
    cs.add_vec("thm_4_1a_n", &vec_sub(&n2, &fd.n));
    Ok(())
}

/// Screen-uniqueness probes: independently constructed holomorphic screens
/// must reduce to semi-orthogonal mixes of the canonical one with zero
/// shift and an unchanged transversal.
pub fn uniqueness_suite<S: Field>(
    view: &Ambient<S>,
    pd: &PointData<S>,
    probes: usize,
    tol: f64,
    cs: &mut CheckSet,
) -> Result<()> {
    let fd = &pd.fd;
    let t = pd.m() - 1;
    // A probe screen whose components blow past this bound is too badly
    // conditioned for meaningful float residuals; such probe indices are
    // skipped (deterministically) and further indices drawn instead.
    let bound = 8.0
        * fd.w
            .iter()
            .flatten()
            .fold(1.0f64, |a, c| a.max(c.approx().abs()));
    let well_conditioned =
        |w: &[Vec<S>]| w.iter().flatten().all(|c| c.approx().abs() <= bound);
    let mut accepted = 0usize;
    let mut p = 0usize;
    while accepted < probes && p < probes * 4 {
        if p % 2 == 0 {
            // Rebuild the frame from a sheared tangent basis; the
            // canonical-screen construction then runs from scratch.
            let q = S::from_int(p as i64 + 1) / S::from_int(4);
            let tangent: Vec<Vec<S>> = (0..t)
                .map(|i| {
                    let nxt = &fd.tangent[(i + 1) % t];
                    vec_add(&fd.tangent[i], &vec_scale(&q, nxt))
                })
                .collect();
            let fd2 = frame_core(view, &tangent, None, tol)?;
            if well_conditioned(&fd2.w) {
                cs.add_vec("thm_4_1a_n", &vec_sub(&fd2.xi, &fd.xi));
                probe_decompose(view, pd, &fd2.w, &fd2.eps, tol, cs)?;
                accepted += 1;
            }
        } else {
            // Explicit semi-orthogonal mix of the canonical screen.
            let mix = mixing_matrix::<S>(&fd.eps, p);
            let w2: Vec<Vec<S>> = (0..fd.w.len())
                .map(|i| {
                    let mut v = vec![S::zero(); pd.m()];
                    for j in 0..fd.w.len() {
                        v = vec_add(&v, &vec_scale(&mix[(j, i)], &fd.w[j]));
                    }
                    v
                })
                .collect();
            if well_conditioned(&w2) {
                probe_decompose(view, pd, &w2, &fd.eps, tol, cs)?;
                accepted += 1;
            }
        }
        p += 1;
    }
    if accepted < probes {
        return Err(GeomError::Degenerate(
            "too few well-conditioned screen probes".into(),
        ));
    }
    Ok(())
}

/// CR conditions on a chart scene with complex ambient: for screen fields
/// X, Y the bracket combination `[JX, JY] - [X, Y]` stays in the screen
/// and the Nijenhuis combination of the restricted structure vanishes.
pub fn cr_suite_chart(
    sc: &ChartScene,
    x: &[f64],
    pd: &PointData<f64>,
    tol: f64,
    cs: &mut CheckSet,
) -> Result<()> {
    let t = pd.m() - 1;
    let jmat = sc.view.j.clone();
    let apply_j = move |v: &[Dual<f64>]| -> Vec<Dual<f64>> {
        (0..v.len())
            .map(|r| {
                let mut acc = Dual::constant(0.0);
                for c in 0..v.len() {
                    let e = jmat[(r, c)];
                    if e != 0.0 {
                        acc = acc + Dual::from_f64(e) * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    };
    let mut ok_33 = Res::zero(false);
    let mut ok_34 = Res::zero(false);
    for i in 1..t {
        for j in (i + 1)..t {
            let wi = pd.fd.w[i - 1].clone();
            let wj = pd.fd.w[j - 1].clone();
            let jwi = sc.view.j_apply(&wi);
            let jwj = sc.view.j_apply(&wj);
            let f_wi = |fd: &FrameData<Dual<f64>>| fd.w[i - 1].clone();
            let f_wj = |fd: &FrameData<Dual<f64>>| fd.w[j - 1].clone();
            let aj = &apply_j;
            let f_jwi = move |fd: &FrameData<Dual<f64>>| aj(&fd.w[i - 1]);
            let f_jwj = move |fd: &FrameData<Dual<f64>>| aj(&fd.w[j - 1]);
            let br_xy = chart_bracket(sc, x, tol, f_wi, f_wj, &wi, &wj)?;
            let br_jxjy = chart_bracket(sc, x, tol, f_jwi, f_jwj, &jwi, &jwj)?;
            let br_jxy = chart_bracket(sc, x, tol, f_jwi, f_wj, &jwi, &wj)?;
            let br_xjy = chart_bracket(sc, x, tol, f_wi, f_jwj, &wi, &jwj)?;
            // (3.3): [JX, JY] - [X, Y] in D (no xi or N component).
            let d = pd.fd.to_frame(&vec_sub(&br_jxjy, &br_xy));
            ok_33 = ok_33.join(Res::of(&d[0])).join(Res::of(&d[t]));
            // (3.4): Nijenhuis combination of the induced structure.
            let mut nj = vec_sub(&br_jxjy, &br_xy);
            nj = vec_sub(&nj, &sc.view.j_apply(&br_jxy));
            nj = vec_sub(&nj, &sc.view.j_apply(&br_xjy));
            for v in &nj {
                ok_34 = ok_34.join(Res::of(v));
            }
        }
    }
    cs.add("eq_3_3", ok_33);
    cs.add("eq_3_4", ok_34);
    cs.add(
        "thm_3_3",
        Res::verdict(ok_33.passes(tol) && ok_34.passes(tol)),
    );
    Ok(())
}

/// Gauge covariance of the detection verdict: rescaling the radical
/// section scales b quadratically but leaves every verdict unchanged.
pub fn gauge_scaled_point<S: Field>(pd: &PointData<S>, factor: i64) -> FrameData<S> {
    let fd = &pd.fd;
    let c = S::from_int(factor);
    let xi = vec_scale(&c, &fd.xi);
    let n = vec_scale(&(S::one() / c.clone()), &fd.n);
    let mut cols = vec![xi.clone()];
    cols.extend(fd.w.iter().cloned());
    cols.push(n.clone());
    let frame = Matrix::from_cols(&cols);
    let frame_inv = frame.inverse().expect("scaled frame invertible");
    FrameData {
        m: fd.m,
        tangent: fd.tangent.clone(),
        xi,
        w: fd.w.clone(),
        eps: fd.eps.clone(),
        n,
        b: c.clone() * c * fd.b.clone(),
        frame,
        frame_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::chart_point_data;
    use crate::hypersurface::{chart_point_full, lie_point_data};
    use crate::scenarios::{control_a, control_d, example_61, example_62, sample_points, SceneData};

    fn lie_setup(sc: &crate::scenarios::Scene) -> (Ambient<crate::scalar::Rational>, PointData<crate::scalar::Rational>) {
        let ls = match &sc.data {
            SceneData::Lie(l) => l.clone(),
            _ => unreachable!(),
        };
        let pd = lie_point_data(&ls, 0.0).unwrap();
        (ls.amb, pd)
    }

    fn chart_setup(
        sc: &crate::scenarios::Scene,
        count: usize,
        seed: u64,
    ) -> (ChartScene, Vec<Vec<f64>>) {
        let cs = match &sc.data {
            SceneData::Chart(c) => c.clone(),
            _ => unreachable!(),
        };
        let pts = sample_points(&cs, count, seed).unwrap();
        (cs, pts)
    }

    #[test]
    fn example_62_frame_and_rtl_exact() {
        let (amb, pd) = lie_setup(&example_62());
        let mut cs = CheckSet::new();
        frame_suite(&amb, &pd, &mut cs);
        rtl_suite(&amb, &pd, true, 0.0, &mut cs);
        for (id, r) in cs.iter() {
            assert!(r.passes(0.0), "{id} failed: {r:?}");
        }
        let (is_rtl, _) = rtl_detect(&amb, &pd, 0.0);
        assert!(is_rtl);
    }

    #[test]
    fn control_a_fails_both_sides_of_thm_3_1() {
        let (amb, pd) = lie_setup(&control_a());
        let (is_rtl, span) = rtl_detect(&amb, &pd, 0.0);
        assert!(!is_rtl);
        assert!(!span.passes(0.0), "J xi must leave the transversal line");
        let holo = holomorphy_residual(&amb, &pd);
        assert!(!holo.passes(0.0), "override screen must be non-holomorphic");
        let mut cs = CheckSet::new();
        rtl_suite(&amb, &pd, false, 0.0, &mut cs);
        assert!(cs.get("thm_3_1").unwrap().passes(0.0), "equivalence holds");
        assert!(cs.get("def_3_1").unwrap().passes(0.0));
    }

    #[test]
    fn example_61_kaehler_identities() {
        let sc = example_61(1);
        let (cscene, pts) = chart_setup(&sc, 8, 42);
        let mut cs = CheckSet::new();
        for x in &pts {
            let pd = chart_point_data::<f64>(&cscene, x, 1e-9, 1e-9).unwrap();
            frame_suite(&cscene.view, &pd, &mut cs);
            rtl_suite(&cscene.view, &pd, true, 1e-9, &mut cs);
            kaehler_suite(&cscene.view, &pd, 1e-9, &mut cs).unwrap();
        }
        for (id, r) in cs.iter() {
            assert!(r.passes(1e-9), "{id} residual {:.3e}", r.value);
        }
    }

    #[test]
    fn example_61_ricci_symmetry() {
        let sc = example_61(1);
        let (cscene, pts) = chart_setup(&sc, 5, 42);
        let mut cs = CheckSet::new();
        for x in &pts {
            let pd = chart_point_full(&cscene, x, 1e-9, 1e-9).unwrap();
            ricci_suite(&pd, 1e-8, 1e-9, &mut cs);
        }
        assert!(cs.get("prop_4_1_ric").unwrap().passes(1e-8));
        assert!(cs.get("prop_4_1_dtau").unwrap().passes(1e-9));
        assert!(cs.get("prop_4_1").unwrap().passes(0.0));
    }

    #[test]
    fn uniqueness_probes_exact_and_float() {
        let (amb, pd) = lie_setup(&example_62());
        let mut cs = CheckSet::new();
        uniqueness_suite(&amb, &pd, 10, 0.0, &mut cs).unwrap();
        for id in ["thm_4_1a_f", "thm_4_1a_n", "thm_4_1a_w"] {
            assert!(cs.get(id).unwrap().passes(0.0), "{id}");
        }

        let sc = example_61(1);
        let (cscene, pts) = chart_setup(&sc, 3, 7);
        let mut cs = CheckSet::new();
        for x in &pts {
            let pd = chart_point_data::<f64>(&cscene, x, 1e-9, 1e-9).unwrap();
            uniqueness_suite(&cscene.view, &pd, 10, 1e-9, &mut cs).unwrap();
        }
        for id in ["thm_4_1a_f", "thm_4_1a_n", "thm_4_1a_w"] {
            assert!(
                cs.get(id).unwrap().passes(1e-9),
                "{id} residual {:.3e}",
                cs.get(id).unwrap().value
            );
        }
    }

    #[test]
    fn example_61_equivalence_suites() {
        let sc = example_61(1);
        let (cscene, pts) = chart_setup(&sc, 5, 42);
        let mut cs = CheckSet::new();
        let mut summaries = Vec::new();
        for x in &pts {
            let pd = chart_point_data::<f64>(&cscene, x, 1e-9, 1e-9).unwrap();
            selfconjugacy_suite(&cscene.view, &pd, 1e-9, &mut cs);
            integrability_suite(&cscene.view, &pd, 1e-9, &mut cs);
            summaries.push(geodesic_umbilical_suite(&cscene.view, &pd, 1e-9, &mut cs).unwrap());
        }
        assert!(cs.get("eq_4_13").unwrap().passes(1e-9));
        assert!(cs.get("thm_4_1b").unwrap().passes(0.0));
        assert!(cs.get("cor_4_1").unwrap().passes(0.0));
        // Screen of the quadric scene is integrable (class F5 partner).
        assert!(cs.get("cor_4_1_screen").unwrap().passes(1e-9));
        assert!(cs.get("thm_4_2").unwrap().passes(0.0));
        assert!(cs.get("thm_4_3").unwrap().passes(0.0));
        // The quadric scene is totally umbilical but not totally geodesic.
        for s in &summaries {
            assert!(s.umb_m);
            assert!(!s.geodesic);
            assert!(!s.umb_s);
        }
    }

    #[test]
    fn example_61_cr_conditions() {
        let sc = example_61(1);
        let (cscene, pts) = chart_setup(&sc, 5, 42);
        let mut cs = CheckSet::new();
        for x in &pts {
            let pd = chart_point_data::<f64>(&cscene, x, 1e-9, 1e-9).unwrap();
            cr_suite_chart(&cscene, x, &pd, 1e-9, &mut cs).unwrap();
        }
        assert!(cs.get("eq_3_3").unwrap().passes(1e-9));
        assert!(cs.get("eq_3_4").unwrap().passes(1e-9));
        assert!(cs.get("thm_3_3").unwrap().passes(0.0));
    }

    #[test]
    fn control_d_flat_scene_suites() {
        let sc = control_d();
        let (cscene, pts) = chart_setup(&sc, 5, 9);
        let mut cs = CheckSet::new();
        let mut summaries = Vec::new();
        for x in &pts {
            let pd = chart_point_full(&cscene, x, 1e-9, 1e-9).unwrap();
            frame_suite(&cscene.view, &pd, &mut cs);
            rtl_suite(&cscene.view, &pd, true, 1e-9, &mut cs);
            summaries.push(geodesic_umbilical_suite(&cscene.view, &pd, 1e-9, &mut cs).unwrap());
            ricci_suite(&pd, 1e-8, 1e-9, &mut cs);
        }
        assert!(cs.get("def_3_1").unwrap().passes(1e-9));
        // Flat hyperplane: totally geodesic, so all verdicts hold.
        assert!(summaries.iter().all(|s| s.geodesic));
        assert!(cs.get("thm_4_2").unwrap().passes(0.0));
        assert!(cs.get("prop_4_1_ric").unwrap().passes(1e-8));
    }

    #[test]
    fn gauge_rescaling_scales_b_quadratically() {
        let (amb, pd) = lie_setup(&example_62());
        let fd2 = gauge_scaled_point(&pd, 2);
        assert_eq!(fd2.b, crate::scalar::Rational::from_int(-8));
        assert_eq!(fd2.frame_residual(&amb.metric.gram), 0.0);
        // Detection is gauge covariant: J xi' = b' N' still holds.
        let jxi = amb.j_apply(&fd2.xi);
        let want = vec_scale(&fd2.b, &fd2.n);
        assert_eq!(jxi, want);
    }
}
