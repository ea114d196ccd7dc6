//! Built-in verification scenes and the deterministic point sampler.
//!
//! Scenes come in two flavours: exact Lie-algebra scenes evaluated on
//! rationals at their single symbolic point, and float chart scenes whose
//! evaluation points are drawn by a seeded sampler with Newton projection
//! onto the constraint surface.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::ambient::Ambient;
use crate::error::{GeomError, Result};
use crate::hypersurface::{ChartScene, DomainRule, LieScene, Quadric};
use crate::linalg::{BilinearForm, Matrix};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug)]
pub enum SceneData {
    Chart(ChartScene),
    Lie(LieScene),
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub data: SceneData,
    pub ambient_dim: usize,
    /// Whether the scene is expected to be radical transversal lightlike.
    pub expect_rtl: bool,
    /// Ambient parallel-J residual is (structurally / numerically) zero.
    pub ambient_kaehler: bool,
    /// Ambient Nijenhuis tensor vanishes (precondition of the CR checks).
    pub ambient_complex: bool,
    /// Ambient Norden compatibility holds (false on the Hermitian control).
    pub norden_ok: bool,
    /// Causal character of the unit normal on correspondence scenes.
    pub epsilon: Option<i8>,
}

/// Flat Norden ambient on R^{2n+2}: coordinates (u^1..u^{n+1}, v^1..v^{n+1}),
/// metric -du^2 + dv^2, canonical complex structure J du_i = dv_i.
pub fn flat_norden_ambient(n: usize) -> Ambient<f64> {
    let half = n + 1;
    let dim = 2 * half;
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            if i < half {
                -1.0
            } else {
                1.0
            }
        } else {
            0.0
        }
    });
    let mut j = Matrix::zeros(dim, dim);
    for i in 0..half {
        j[(half + i, i)] = 1.0;
        j[(i, half + i)] = -1.0;
    }
    Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, None).unwrap()
}

/// Quadric hypersurface `g(Z, JZ) = 0` in the flat Norden ambient, viewed
/// under the associated metric (where it is lightlike), restricted to the
/// region `g(Z,Z) >= 1.1` where the unit normal construction is regular.
pub fn example_61(n: usize) -> Scene {
    let base = flat_norden_ambient(n);
    let assoc = base.associated_form(0.0).unwrap();
    let view = Ambient::new(assoc, base.j.clone(), None).unwrap();
    // x^T (J^T G) x = g(x, Jx) since J^T G = G J is symmetric.
    let q = base.j.transpose().mat_mul(&base.metric.gram);
    let dim = base.dim;
    let chart = ChartScene {
        base,
        view,
        con: Quadric {
            q,
            l: vec![0.0; dim],
            offset: 0.0,
        },
        domain: vec![
            DomainRule::MinBaseNorm(1.1),
            DomainRule::MaxFrameComponent(8.0),
        ],
        box_half: 3.0,
    };
    Scene {
        name: format!("example_61_n{n}"),
        data: SceneData::Chart(chart),
        ambient_dim: dim,
        expect_rtl: true,
        ambient_kaehler: true,
        ambient_complex: true,
        norden_ok: true,
        epsilon: Some(-1),
    }
}

fn gl2_ambient() -> Ambient<Rational> {
    let r = |n: i64| Rational::from_int(n);
    let dim = 4;
    let mut b = vec![vec![vec![r(0); dim]; dim]; dim];
    let mut set = |i: usize, j: usize, v: [i64; 4]| {
        b[i][j] = v.iter().map(|&n| r(n)).collect();
        b[j][i] = v.iter().map(|&n| r(-n)).collect();
    };
    // Left-invariant bracket table of the matrix basis
    // X1 = E11, X2 = E12, X3 = E21, X4 = E22.
    set(0, 1, [0, 1, 0, 0]);
    set(0, 2, [0, 0, -1, 0]);
    set(1, 2, [1, 0, 0, -1]);
    set(1, 3, [0, 1, 0, 0]);
    set(2, 3, [0, 0, -1, 0]);
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            r(if i % 2 == 0 { -1 } else { 1 })
        } else {
            r(0)
        }
    });
    let j = Matrix::from_cols(&[
        vec![r(0), r(0), r(0), r(1)],
        vec![r(0), r(0), r(1), r(0)],
        vec![r(0), r(-1), r(0), r(0)],
        vec![r(-1), r(0), r(0), r(0)],
    ]);
    Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, Some(b)).unwrap()
}

fn sl2_tangent() -> Vec<Vec<Rational>> {
    let r = |n: i64| Rational::from_int(n);
    vec![
        vec![r(1), r(0), r(0), r(-1)],
        vec![r(0), r(1), r(0), r(0)],
        vec![r(0), r(0), r(1), r(0)],
    ]
}

/// Traceless subalgebra inside the invariant-metric ambient on 2x2
/// matrices; exact-arithmetic scene with one symbolic point. The ambient
/// here is Norden but not Kaehler (and not complex): the parallel-J and
/// Nijenhuis residuals are structurally nonzero, so those suites gate off.
pub fn example_62() -> Scene {
    let amb = gl2_ambient();
    Scene {
        name: "example_62".to_string(),
        data: SceneData::Lie(LieScene {
            amb,
            tangent: sl2_tangent(),
            screen_override: None,
        }),
        ambient_dim: 4,
        expect_rtl: true,
        ambient_kaehler: false,
        ambient_complex: false,
        norden_ok: true,
        epsilon: Some(1),
    }
}

/// Negative control: same subalgebra scene with a deliberately
/// non-holomorphic screen `{X2, X3 + xi}` forced onto the frame builder.
pub fn control_a() -> Scene {
    let r = |n: i64| Rational::from_int(n);
    let amb = gl2_ambient();
    let screen = vec![
        vec![r(0), r(1), r(0), r(0)],
        vec![r(1), r(0), r(1), r(-1)],
    ];
    Scene {
        name: "control_a".to_string(),
        data: SceneData::Lie(LieScene {
            amb,
            tangent: sl2_tangent(),
            screen_override: Some(screen),
        }),
        ambient_dim: 4,
        expect_rtl: true,
        ambient_kaehler: false,
        ambient_complex: false,
        norden_ok: true,
        epsilon: Some(1),
    }
}

/// Negative control: pseudosphere `g(Z,Z) = 4` in the flat Norden ambient.
/// Its unit normal is radial, so `g(N, JN)` is proportional to `g(Z, JZ)`,
/// which the sampler keeps bounded away from zero: the normal-section
/// condition fails at every admitted point.
pub fn control_b() -> Scene {
    let base = flat_norden_ambient(1);
    let dim = base.dim;
    let q = base.metric.gram.clone();
    let chart = ChartScene {
        view: base.clone(),
        base,
        con: Quadric {
            q,
            l: vec![0.0; dim],
            offset: 4.0,
        },
        domain: vec![DomainRule::MinAssocAbs(1.0)],
        box_half: 4.0,
    };
    Scene {
        name: "control_b".to_string(),
        data: SceneData::Chart(chart),
        ambient_dim: dim,
        expect_rtl: false,
        ambient_kaehler: true,
        ambient_complex: true,
        norden_ok: true,
        epsilon: None,
    }
}

/// Negative control: Hermitian ambient (J is an isometry, not an
/// anti-isometry) with the lightlike hyperplane `x1 = x3`. The radical
/// pairs to zero with its J-image: `b` vanishes identically and the
/// radical transversal condition can never hold.
pub fn control_c() -> Scene {
    let dim = 4;
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            if i < 2 {
                1.0
            } else {
                -1.0
            }
        } else {
            0.0
        }
    });
    let mut j = Matrix::zeros(dim, dim);
    // e1 -> e2 -> -e1, e3 -> e4 -> -e3: isometric complex structure.
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    let base = Ambient::new(BilinearForm::new(gram, 0.0).unwrap(), j, None).unwrap();
    let chart = ChartScene {
        view: base.clone(),
        base,
        con: Quadric {
            q: Matrix::zeros(dim, dim),
            l: vec![1.0, 0.0, -1.0, 0.0],
            offset: 0.0,
        },
        domain: vec![],
        box_half: 3.0,
    };
    Scene {
        name: "control_c".to_string(),
        data: SceneData::Chart(chart),
        ambient_dim: dim,
        expect_rtl: false,
        ambient_kaehler: true,
        ambient_complex: true,
        norden_ok: false,
        epsilon: None,
    }
}

/// Flat positive control: the hyperplane `u1 = 0` in the flat Norden
/// ambient, lightlike under the associated metric, with a constant unit
/// normal on the base side — shape operator identically zero.
pub fn control_d() -> Scene {
    let base = flat_norden_ambient(1);
    let assoc = base.associated_form(0.0).unwrap();
    let view = Ambient::new(assoc, base.j.clone(), None).unwrap();
    let dim = base.dim;
    let chart = ChartScene {
        base,
        view,
        con: Quadric {
            q: Matrix::zeros(dim, dim),
            l: vec![1.0, 0.0, 0.0, 0.0],
            offset: 0.0,
        },
        domain: vec![],
        box_half: 3.0,
    };
    Scene {
        name: "control_d".to_string(),
        data: SceneData::Chart(chart),
        ambient_dim: dim,
        expect_rtl: true,
        ambient_kaehler: true,
        ambient_complex: true,
        norden_ok: true,
        epsilon: Some(-1),
    }
}

/// Scene lookup by manifest name. `example_61` takes the complex dimension
/// parameter; everything else ignores it.
pub fn by_name(name: &str, n: usize) -> Result<Scene> {
    match name {
        "example_61" => {
            if n == 0 {
                return Err(GeomError::Parameter(
                    "example_61 requires n >= 1".to_string(),
                ));
            }
            Ok(example_61(n))
        }
        "example_62" => Ok(example_62()),
        "control_a" => Ok(control_a()),
        "control_b" => Ok(control_b()),
        "control_c" => Ok(control_c()),
        "control_d" => Ok(control_d()),
        other => Err(GeomError::Parameter(format!(
            "unknown scene '{other}' (expected example_61, example_62, control_a..control_d)"
        ))),
    }
}

/// Newton projection of a point onto the constraint surface along the
/// Euclidean gradient, with step damping. Returns None when it stalls.
fn project(con: &Quadric, x0: &[f64]) -> Option<Vec<f64>> {
    let mut x = x0.to_vec();
    let mut c = con.value(&x);
    for _ in 0..80 {
        if c.abs() < 1e-13 {
            return Some(x);
        }
        let g = con.grad(&x);
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if gg < 1e-20 {
            return None;
        }
        let mut step = 1.0;
        loop {
            let xn: Vec<f64> = x
                .iter()
                .zip(&g)
                .map(|(xi, gi)| xi - step * c * gi / gg)
                .collect();
            let cn = con.value(&xn);
            if cn.abs() < c.abs() || step < 1e-6 {
                x = xn;
                c = cn;
                break;
            }
            step *= 0.5;
        }
    }
    None
}

/// Deterministic sampler: each index derives its own stream from the seed,
/// so point k is independent of how many rejections earlier indices took.
pub fn sample_points(cs: &ChartScene, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let dim = cs.base.dim;
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0usize;
    for k in 0..count {
        let stream = seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha20Rng::seed_from_u64(stream);
        let mut found = None;
        for _attempt in 0..200 {
            let x0: Vec<f64> = (0..dim)
                .map(|_| rng.gen_range(-cs.box_half..cs.box_half))
                .collect();
            if let Some(x) = project(&cs.con, &x0) {
                if cs.admits(&x) {
                    found = Some(x);
                    break;
                }
            }
            rejected += 1;
        }
        match found {
            Some(x) => out.push(x),
            None => {
                return Err(GeomError::Parameter(format!(
                    "sampler exhausted 200 attempts for point {k} ({rejected} rejections); \
                     check the domain rules against the constraint"
                )))
            }
        }
    }
    Ok(out)
}

/// The single exact evaluation point of a Lie scene (the identity of the
/// group; all left-invariant data is position-independent).
pub fn lie_symbolic_point() -> Vec<Rational> {
    Vec::new()
}
