//! Independent numeric re-solvers used as oracles by the test suites.
//!
//! Nothing here touches the main library: the solvers below re-derive the
//! quantities the library hard-codes (the trigonal parameter, the neighbor
//! vertices and covectors, the generators and bendings) directly from their
//! defining equations, in plain high-precision floating point. Agreement is
//! asserted by the tests, not assumed.

use astro_float::{BigFloat, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits for the high-precision solvers.
pub const PREC: usize = 384;

/// Thin wrapper over a plain (non-validated) big float at [`PREC`] bits.
#[derive(Clone, Debug)]
pub struct F(pub BigFloat);

impl F {
    pub fn from_f64(x: f64) -> F {
        F(BigFloat::from_f64(x, PREC))
    }

    pub fn from_i64(x: i64) -> F {
        F(BigFloat::from_i64(x, PREC))
    }

    pub fn zero() -> F {
        F::from_i64(0)
    }

    pub fn one() -> F {
        F::from_i64(1)
    }

    pub fn add(&self, o: &F) -> F {
        F(self.0.add(&o.0, PREC, RM))
    }

    pub fn sub(&self, o: &F) -> F {
        F(self.0.sub(&o.0, PREC, RM))
    }

    pub fn mul(&self, o: &F) -> F {
        F(self.0.mul(&o.0, PREC, RM))
    }

    pub fn div(&self, o: &F) -> F {
        F(self.0.div(&o.0, PREC, RM))
    }

    pub fn neg(&self) -> F {
        F(self.0.neg())
    }

    pub fn cube(&self) -> F {
        self.mul(self).mul(self)
    }

    /// Real (sign-preserving) cube root.
    pub fn cbrt(&self) -> F {
        F(self.0.cbrt(PREC, RM))
    }

    pub fn abs(&self) -> F {
        let mut v = self.0.clone();
        v.set_sign(astro_float::Sign::Pos);
        F(v)
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.0)
    }

    pub fn lt(&self, o: &F) -> bool {
        matches!(self.0.cmp(&o.0), Some(c) if c < 0)
    }
}

fn big_to_f64(v: &BigFloat) -> f64 {
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_zero() {
        return 0.0;
    }
    if v.is_inf_pos() {
        return f64::INFINITY;
    }
    if v.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (words, _, sign, e, _) = v.as_raw_parts().expect("finite");
    let mut m = 0f64;
    let top = words.len();
    for (i, w) in words.iter().enumerate().skip(top.saturating_sub(2)) {
        m += (*w as f64) * 2f64.powi(-(((top - i) * 64) as i32));
    }
    let s = if sign == astro_float::Sign::Neg { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

// ---------------------------------------------------------------------------
// Small dense helpers (f64 and F)
// ---------------------------------------------------------------------------

pub type M3 = [[f64; 3]; 3];

pub fn mat_mul(a: &M3, b: &M3) -> M3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat_vec(a: &M3, v: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

pub fn mat_det(m: &M3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_inv(m: &M3) -> M3 {
    let d = mat_det(m);
    let c = |r1: usize, c1: usize, r2: usize, c2: usize| {
        (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) / d
    };
    [
        [c(1, 1, 2, 2), c(0, 2, 2, 1), c(0, 1, 1, 2)],
        [c(1, 2, 2, 0), c(0, 0, 2, 2), c(0, 2, 1, 0)],
        [c(1, 0, 2, 1), c(0, 1, 2, 0), c(0, 0, 1, 1)],
    ]
}

type MF = [[F; 3]; 3];

fn fmat_mul(a: &MF, b: &MF) -> MF {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = F::zero();
            for k in 0..3 {
                acc = acc.add(&a[i][k].mul(&b[k][j]));
            }
            acc
        })
    })
}

fn fmat_vec(a: &MF, v: &[F; 3]) -> [F; 3] {
    std::array::from_fn(|i| {
        let mut acc = F::zero();
        for k in 0..3 {
            acc = acc.add(&a[i][k].mul(&v[k]));
        }
        acc
    })
}

fn fvec_mat(v: &[F; 3], a: &MF) -> [F; 3] {
    std::array::from_fn(|j| {
        let mut acc = F::zero();
        for k in 0..3 {
            acc = acc.add(&v[k].mul(&a[k][j]));
        }
        acc
    })
}

fn fmat_det(m: &MF) -> F {
    let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t1.sub(&t2).add(&t3)
}

fn fmat_inv(m: &MF) -> MF {
    let d = fmat_det(m);
    let c = |r1: usize, c1: usize, r2: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1])).div(&d)
    };
    [
        [c(1, 1, 2, 2), c(0, 2, 2, 1), c(0, 1, 1, 2)],
        [c(1, 2, 2, 0), c(0, 0, 2, 2), c(0, 2, 1, 0)],
        [c(1, 0, 2, 1), c(0, 1, 2, 0), c(0, 0, 1, 1)],
    ]
}

fn fcross(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn fdot(a: &[F; 3], b: &[F; 3]) -> F {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// `R3` of a trilateral (rows) against a triangle (columns).
fn f_r3(rows: &[[F; 3]; 3], cols: &[[F; 3]; 3]) -> F {
    let pair = |i: usize, j: usize| fdot(&rows[i], &cols[j]);
    pair(0, 1)
        .mul(&pair(1, 2))
        .mul(&pair(2, 0))
        .div(&pair(0, 2).mul(&pair(1, 0)).mul(&pair(2, 1)))
}

// ---------------------------------------------------------------------------
// Trigonal system solver
// ---------------------------------------------------------------------------

/// Solves `C . P . D = C3^f` for diagonal `C`, `D` and `f` by eliminating the
/// multiplicative system equation by equation (gauge `C0 = 1`). Returns
/// `(f, C, D)` and the largest entrywise residual of the solved equation.
pub fn solve_trigonal_system(p: &M3) -> (f64, [f64; 3], [f64; 3], f64) {
    // Unknowns: C0=1, D1, D2, C1, D0, C2, and f; the last equation closes on
    // f^3.
    let c0 = 1.0;
    let d2 = 1.0 / (c0 * p[0][2]); // C0 P02 D2 = 1
    // C1 P12 D2 = f        => C1 = f / (P12 D2)          = f * a1
    let a1 = 1.0 / (p[1][2] * d2);
    // C1 P10 D0 = 1        => D0 = 1 / (C1 P10)          = b0 / f
    let b0 = 1.0 / (a1 * p[1][0]);
    // C2 P20 D0 = f        => C2 = f / (P20 D0)          = f^2 * c2
    let c2 = 1.0 / (p[2][0] * b0);
    // C2 P21 D1 = 1        => D1 = 1 / (C2 P21)          = d1 / f^2
    let d1 = 1.0 / (c2 * p[2][1]);
    // C0 P01 D1 = f        => P01 d1 = f^3
    let f = (p[0][1] * d1).cbrt();
    let cc = [c0, f * a1, f * f * c2];
    let dd = [b0 / f, d1 / (f * f), d2];
    let goal = [[0.0, f, 1.0], [1.0, 0.0, f], [f, 1.0, 0.0]];
    let mut res = 0f64;
    for i in 0..3 {
        for j in 0..3 {
            let got = cc[i] * p[i][j] * dd[j];
            res = res.max((got - goal[i][j]).abs());
        }
    }
    (f, cc, dd, res)
}

// ---------------------------------------------------------------------------
// Re-solving the neighbor configuration from its defining equations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub t012: f64,
    pub t210: f64,
    pub e01: f64,
    pub e10: f64,
    pub e02: f64,
    pub e20: f64,
    pub e12: f64,
    pub e21: f64,
}

impl Params {
    pub fn from_array(a: &[f64; 8]) -> Params {
        Params {
            t012: a[0],
            t210: a[1],
            e01: a[2],
            e10: a[3],
            e02: a[4],
            e20: a[5],
            e12: a[6],
            e21: a[7],
        }
    }
}

/// Residual of the two Listing-style triple-ratio equations defining the
/// vertex across the distinguished edge, at `U = (a, b, -1)`:
///
/// `e01^3 = tr((V0,v0), (U, line(U,V1)), (V2, line(V2,V1)))`,
/// `e10^3 = tr((V1,v1), (V2, line(V2,V0)), (U, line(U,V0)))`.
fn u2_residual_f64(t012: f64, e01: f64, e10: f64, a: f64, b: f64) -> [f64; 2] {
    let u = [a, b, -1.0];
    let v0 = [1.0, 0.0, 0.0];
    let v1 = [0.0, 1.0, 0.0];
    let v2 = [0.0, 0.0, 1.0];
    let c0 = [0.0, t012, 1.0];
    let c1 = [1.0, 0.0, t012];
    let cross = |x: &[f64; 3], y: &[f64; 3]| {
        [
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        ]
    };
    let dot = |x: &[f64; 3], y: &[f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let r3 = |rows: [[f64; 3]; 3], cols: [[f64; 3]; 3]| {
        let p = |i: usize, j: usize| dot(&rows[i], &cols[j]);
        p(0, 1) * p(1, 2) * p(2, 0) / (p(0, 2) * p(1, 0) * p(2, 1))
    };
    let tr_e01 = r3([c0, cross(&u, &v1), cross(&v2, &v1)], [v0, u, v2]);
    let tr_e10 = r3([c1, cross(&v2, &v0), cross(&u, &v0)], [v1, v2, u]);
    [tr_e01 - e01.powi(3), tr_e10 - e10.powi(3)]
}

fn u2_newton_f64(t012: f64, e01: f64, e10: f64, seed: (f64, f64)) -> Option<(f64, f64)> {
    let (mut a, mut b) = seed;
    for _ in 0..60 {
        let r = u2_residual_f64(t012, e01, e10, a, b);
        if r[0].abs() + r[1].abs() < 1e-12 * (1.0 + e01.powi(3) + e10.powi(3)) {
            return Some((a, b));
        }
        let h = 1e-7 * (a.abs() + b.abs() + 1.0);
        let ra = u2_residual_f64(t012, e01, e10, a + h, b);
        let rb = u2_residual_f64(t012, e01, e10, a, b + h);
        let j = [
            [(ra[0] - r[0]) / h, (rb[0] - r[0]) / h],
            [(ra[1] - r[1]) / h, (rb[1] - r[1]) / h],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let da = (r[0] * j[1][1] - r[1] * j[0][1]) / det;
        let db = (r[1] * j[0][0] - r[0] * j[1][0]) / det;
        a -= da;
        b -= db;
        if !(a.is_finite() && b.is_finite()) {
            return None;
        }
    }
    None
}

fn u2_residual_big(t012: &F, e01: &F, e10: &F, a: &F, b: &F) -> [F; 2] {
    let u = [a.clone(), b.clone(), F::from_i64(-1)];
    let v0 = [F::one(), F::zero(), F::zero()];
    let v1 = [F::zero(), F::one(), F::zero()];
    let v2 = [F::zero(), F::zero(), F::one()];
    let c0 = [F::zero(), t012.clone(), F::one()];
    let c1 = [F::one(), F::zero(), t012.clone()];
    let tr_e01 = f_r3(
        &[c0, fcross(&u, &v1), fcross(&v2, &v1)],
        &[v0.clone(), u.clone(), v2.clone()],
    );
    let tr_e10 = f_r3(&[c1, fcross(&v2, &v0), fcross(&u, &v0)], &[v1, v2, u]);
    [tr_e01.sub(&e01.cube()), tr_e10.sub(&e10.cube())]
}

/// Re-solves the across-edge vertex from the triple-ratio equations: a
/// homotopy from the symmetric point in `f64`, then high-precision Newton.
/// Returns the representative `(a, b, -1)`.
pub fn resolve_u2(par: &Params) -> Option<[F; 3]> {
    // Homotopy path par^t from the all-ones point, which seeds (a,b) = (2,2).
    let mut seed = (2.0, 2.0);
    let steps = 24;
    for s in 1..=steps {
        let t = s as f64 / steps as f64;
        let at = |x: f64| x.powf(t);
        seed = u2_newton_f64(at(par.t012), at(par.e01), at(par.e10), seed)?;
    }
    // High-precision polish.
    let t012 = F::from_f64(par.t012);
    let e01 = F::from_f64(par.e01);
    let e10 = F::from_f64(par.e10);
    let mut a = F::from_f64(seed.0);
    let mut b = F::from_f64(seed.1);
    let h = F::from_f64(2f64.powi(-100));
    for _ in 0..24 {
        let r = u2_residual_big(&t012, &e01, &e10, &a, &b);
        let ra = u2_residual_big(&t012, &e01, &e10, &a.add(&h), &b);
        let rb = u2_residual_big(&t012, &e01, &e10, &a, &b.add(&h));
        let j00 = ra[0].sub(&r[0]).div(&h);
        let j01 = rb[0].sub(&r[0]).div(&h);
        let j10 = ra[1].sub(&r[1]).div(&h);
        let j11 = rb[1].sub(&r[1]).div(&h);
        let det = j00.mul(&j11).sub(&j01.mul(&j10));
        let da = r[0].mul(&j11).sub(&r[1].mul(&j01)).div(&det);
        let db = r[1].mul(&j00).sub(&r[0].mul(&j10)).div(&det);
        a = a.sub(&da);
        b = b.sub(&db);
        if da.abs().to_f64() < 1e-80 && db.abs().to_f64() < 1e-80 {
            break;
        }
    }
    Some([a, b, F::from_i64(-1)])
}

/// Re-solves the covector of the line through the across-edge vertex from
/// `R3((uu, v1, v0), (U2, V1, V0)) = t210^3` and `uu . U2 = 0`. Both
/// constraints are linear in `uu`, so the solution is a cross product.
pub fn resolve_u2_covector(par: &Params, u2: &[F; 3]) -> [F; 3] {
    let t012 = F::from_f64(par.t012);
    let t210 = F::from_f64(par.t210);
    let v0 = [F::one(), F::zero(), F::zero()];
    let v1 = [F::zero(), F::one(), F::zero()];
    let c0 = [F::zero(), t012.clone(), F::one()];
    let c1 = [F::one(), F::zero(), t012.clone()];
    // R3 reduces to (uu.V1) A = t210^3 (uu.V0) B with
    // A = (v1.V0)(v0.U2), B = (v1.U2)(v0.V1).
    let a = fdot(&c1, &v0).mul(&fdot(&c0, u2));
    let b = fdot(&c1, u2).mul(&fdot(&c0, &v1));
    let rhs = t210.cube().mul(&b);
    // Constraint covector: uu . (A V1 - t210^3 B V0) = 0.
    let w = [rhs.neg(), a, F::zero()];
    fcross(u2, &w)
}

/// The full re-solved neighbor data, rotated out to all three triangles via
/// the configuration's order-three symmetry, as the construction defines
/// them.
pub struct ResolvedNeighbors {
    pub u: [[F; 3]; 3],
    pub u_cov: [[F; 3]; 3],
}

pub fn resolve_neighbors(par: &Params) -> Option<ResolvedNeighbors> {
    let smat: MF = [
        [F::zero(), F::zero(), F::one()],
        [F::one(), F::zero(), F::zero()],
        [F::zero(), F::one(), F::zero()],
    ];
    // Right multiplication by sigma = smat^-1's inverse permutation.
    let sigma: MF = [
        [F::zero(), F::one(), F::zero()],
        [F::zero(), F::zero(), F::one()],
        [F::one(), F::zero(), F::zero()],
    ];
    let sub0 = Params { e01: par.e12, e10: par.e21, ..*par };
    let sub1 = Params { e01: par.e20, e10: par.e02, ..*par };

    let u2 = resolve_u2(par)?;
    let uu2 = resolve_u2_covector(par, &u2);

    let u0_raw = resolve_u2(&sub0)?;
    let u0 = fmat_vec(&smat, &u0_raw);
    let uu0 = fvec_mat(&resolve_u2_covector(&sub0, &u0_raw), &sigma);

    let u1_raw = resolve_u2(&sub1)?;
    let u1 = fmat_vec(&smat, &fmat_vec(&smat, &u1_raw));
    let uu1 = fvec_mat(&fvec_mat(&resolve_u2_covector(&sub1, &u1_raw), &sigma), &sigma);

    Some(ResolvedNeighbors { u: [u0, u1, u2], u_cov: [uu0, uu1, uu2] })
}

/// Projective distance between two representatives: the sup-norm of the
/// difference after scaling both to the largest-magnitude entry `+1`.
pub fn projective_distance(a: &[F; 3], b: &[F; 3]) -> f64 {
    let norm = |v: &[F; 3]| -> Option<[F; 3]> {
        let mut k = 0;
        for i in 1..3 {
            if v[i].abs().to_f64() > v[k].abs().to_f64() {
                k = i;
            }
        }
        if v[k].to_f64() == 0.0 {
            return None;
        }
        Some(std::array::from_fn(|i| v[i].div(&v[k])))
    };
    match (norm(a), norm(b)) {
        (Some(x), Some(y)) => (0..3)
            .map(|i| x[i].sub(&y[i]).abs().to_f64())
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    }
}

// ---------------------------------------------------------------------------
// Literal float pipeline for the generators and bendings
// ---------------------------------------------------------------------------

/// `mapToStdTrigon` exactly as listed: cube roots taken entry by entry, the
/// result rescaled by `det^(-1/3)`.
fn map_to_std_trigon_literal(points: &MF, lines: &MF) -> MF {
    let vv = fmat_mul(lines, points);
    let l0 = vv[1][2].mul(&vv[2][1]).div(&vv[1][0].mul(&vv[2][0])).cbrt();
    let l1 = vv[2][0].mul(&vv[0][2]).div(&vv[2][1].mul(&vv[0][1])).cbrt();
    let l2 = vv[0][1].mul(&vv[1][0]).div(&vv[0][2].mul(&vv[1][2])).cbrt();
    let vd: MF = std::array::from_fn(|i| {
        [
            points[i][0].mul(&l0),
            points[i][1].mul(&l1),
            points[i][2].mul(&l2),
        ]
    });
    let m = fmat_inv(&vd);
    let scale = fmat_det(&m).cbrt();
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].div(&scale)))
}

fn proj_from_to_literal(src_pts: &MF, src_lines: &MF, dst_pts: &MF, dst_lines: &MF) -> MF {
    let ms = map_to_std_trigon_literal(src_pts, src_lines);
    let md = map_to_std_trigon_literal(dst_pts, dst_lines);
    fmat_mul(&fmat_inv(&md), &ms)
}

pub struct LiteralHolonomy {
    pub r: MF,
    pub g: MF,
    pub b: MF,
}

/// Builds the three generators by following the construction listings
/// verbatim in floats (hard-coded closed forms for the neighbor flags, then
/// `projFromTo` with literal cube roots).
pub fn literal_holonomy(par: &Params) -> LiteralHolonomy {
    let f = F::from_f64;
    let t = f(par.t012);
    let (e01, e10) = (f(par.e01), f(par.e10));
    let (e02, e20) = (f(par.e02), f(par.e20));
    let (e12, e21) = (f(par.e12), f(par.e21));
    let t210 = f(par.t210);
    let one = F::one();
    let z = F::zero;

    let v0 = [F::one(), z(), z()];
    let v1 = [z(), F::one(), z()];
    let v2 = [z(), z(), F::one()];
    let c0 = [z(), t.clone(), one.clone()];
    let c1 = [one.clone(), z(), t.clone()];
    let c2 = [t.clone(), one.clone(), z()];

    let u2 = [
        e10.cube().add(&one).mul(&t.mul(&t)),
        e01.cube().add(&one).mul(&e10.cube()),
        e10.cube().mul(&t).neg(),
    ];
    let u0 = [
        e21.cube().mul(&t).neg(),
        e21.cube().add(&one).mul(&t.mul(&t)),
        e12.cube().add(&one).mul(&e21.cube()),
    ];
    let u1 = [
        e20.cube().add(&one).mul(&e02.cube()),
        e02.cube().mul(&t).neg(),
        e02.cube().add(&one).mul(&t.mul(&t)),
    ];
    let s3 = t210.cube();
    let uu2 = [
        e01.cube().mul(&e10.cube()),
        t.mul(&t).mul(&s3),
        t.mul(&e01.cube().mul(&s3).add(&s3).add(&e01.cube().mul(&e10.cube())).add(&e01.cube())),
    ];
    let uu0 = [
        t.mul(&e12.cube().mul(&s3).add(&s3).add(&e12.cube().mul(&e21.cube())).add(&e12.cube())),
        e12.cube().mul(&e21.cube()),
        t.mul(&t).mul(&s3),
    ];
    let uu1 = [
        t.mul(&t).mul(&s3),
        t.mul(&e20.cube().mul(&s3).add(&s3).add(&e20.cube().mul(&e02.cube())).add(&e20.cube())),
        e20.cube().mul(&e02.cube()),
    ];

    let cols = |a: &[F; 3], b: &[F; 3], c: &[F; 3]| -> MF {
        std::array::from_fn(|i| [a[i].clone(), b[i].clone(), c[i].clone()])
    };
    let rows = |a: &[F; 3], b: &[F; 3], c: &[F; 3]| -> MF { [a.clone(), b.clone(), c.clone()] };

    let (y_pts, y_lines) = (cols(&u2, &v1, &v0), rows(&uu2, &c1, &c0));
    let (c_pts, c_lines) = (cols(&v1, &u0, &v2), rows(&c1, &uu0, &c2));
    let (m_pts, m_lines) = (cols(&v0, &v2, &u1), rows(&c0, &c2, &uu1));

    LiteralHolonomy {
        r: proj_from_to_literal(&m_pts, &m_lines, &y_pts, &y_lines),
        g: proj_from_to_literal(&y_pts, &y_lines, &c_pts, &c_lines),
        b: proj_from_to_literal(&c_pts, &c_lines, &m_pts, &m_lines),
    }
}

/// Bendings through the literal pipeline: `omega . (r S0)` and friends.
pub fn literal_bendings(par: &Params) -> [f64; 3] {
    let h = literal_holonomy(par);
    let f = F::from_f64;
    let s0 = [f(par.e20).mul(&f(par.e02)).mul(&f(par.e21)), F::zero(), F::zero()];
    let s1 = [F::zero(), f(par.e01).mul(&f(par.e10)).mul(&f(par.e02)), F::zero()];
    let s2 = [F::zero(), F::zero(), f(par.e12).mul(&f(par.e21)).mul(&f(par.e10))];
    let om = [
        f(par.e01).mul(&f(par.e10)).mul(&f(par.e12)),
        f(par.e12).mul(&f(par.e21)).mul(&f(par.e20)),
        f(par.e20).mul(&f(par.e02)).mul(&f(par.e01)),
    ];
    [
        fdot(&om, &fmat_vec(&h.r, &s0)).to_f64(),
        fdot(&om, &fmat_vec(&h.g, &s1)).to_f64(),
        fdot(&om, &fmat_vec(&h.b, &s2)).to_f64(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigonal_solver_examples() {
        let p = [[0.0, 8.0, 1.0], [1.0, 0.0, 8.0], [8.0, 1.0, 0.0]];
        let (f, _, _, res) = solve_trigonal_system(&p);
        assert!((f - 8.0).abs() < 1e-12);
        assert!(res < 1e-12);

        let p = [[0.0, 2.0, 7.0], [11.0, 0.0, 3.0], [5.0, 13.0, 0.0]];
        let (f, _, _, res) = solve_trigonal_system(&p);
        assert!((f - (30f64 / 1001f64).powf(1.0 / 3.0)).abs() < 1e-12);
        assert!(res < 1e-12);
    }

    #[test]
    fn u2_resolve_all_ones() {
        let par = Params::from_array(&[1.0; 8]);
        let u2 = resolve_u2(&par).unwrap();
        // (2, 2, -1) after normalizing the last coordinate to -1.
        assert!((u2[0].to_f64() - 2.0).abs() < 1e-60);
        assert!((u2[1].to_f64() - 2.0).abs() < 1e-60);
        let uu2 = resolve_u2_covector(&par, &u2);
        let d = projective_distance(&uu2, &[F::one(), F::one(), F::from_i64(4)]);
        assert!(d < 1e-60, "uu2 distance {d}");
    }

    #[test]
    fn literal_bendings_all_ones() {
        let par = Params::from_array(&[1.0; 8]);
        let b = literal_bendings(&par);
        for x in b {
            assert!((x - 3.0).abs() < 1e-50);
        }
    }
}
