//! The standard developing configuration, its three neighboring triangles,
//! the generators `r`, `g`, `b`, and the peripheral parabolicity test.
//!
//! Everything here is rational in the parameters: the closed forms for the
//! neighbor vertices `U_i` and covectors `u_i` are hard-coded, and the
//! generators come out of [`proj_from_to`] whose cube roots cancel for these
//! configurations. An independent numeric re-solve of the defining
//! triple-ratio equations lives in the test oracle.

use crate::error::Result;
use crate::projlin::{Covec3, Mat3, Vec3};
use crate::scalar::{Scalar, Sign};
use crate::structure::FgParamsT11;
use crate::trigonal::{proj_from_to, FlagTriple};

/// The standard developing triangle: basis points and the tangent covectors
/// `v0 = (0, t, 1)`, `v1 = (1, 0, t)`, `v2 = (t, 1, 0)` with `t = t012`.
#[derive(Debug, Clone)]
pub struct DevConfig<S> {
    pub verts: [Vec3<S>; 3],
    pub tangents: [Covec3<S>; 3],
}

impl<S: Scalar> DevConfig<S> {
    pub fn new(p: &FgParamsT11<S>) -> Self {
        let t = || p.t012.clone();
        let o = S::one;
        let z = S::zero;
        DevConfig {
            verts: [
                Vec3([o(), z(), z()]),
                Vec3([z(), o(), z()]),
                Vec3([z(), z(), o()]),
            ],
            tangents: [
                Covec3([z(), t(), o()]),
                Covec3([o(), z(), t()]),
                Covec3([t(), o(), z()]),
            ],
        }
    }
}

/// The developed triangles adjacent to the standard one, with their flags.
///
/// `y` is across the edge `{V0, V1}`, `c` across `{V1, V2}`, `m` across
/// `{V0, V2}`. Triangles are column matrices, trilaterals row matrices, in
/// the order that makes the holonomy come out without extraneous rotation:
/// `Y = (U2, V1, V0)`, `C = (V1, U0, V2)`, `M = (V0, V2, U1)`.
#[derive(Debug, Clone)]
pub struct NeighborConfigs<S> {
    pub u: [Vec3<S>; 3],
    pub u_cov: [Covec3<S>; 3],
    pub y: FlagTriple<S>,
    pub c: FlagTriple<S>,
    pub m: FlagTriple<S>,
}

/// Closed form for the vertex of the neighbor triangle across `{V0, V1}`:
/// `U2 = ((e10^3 + 1) t^2, (e01^3 + 1) e10^3, -e10^3 t)`.
pub fn u2_vertex<S: Scalar>(p: &FgParamsT11<S>) -> Vec3<S> {
    let t = p.t012.clone();
    let a = p.e01.cube();
    let b = p.e10.cube();
    Vec3([
        (b.clone() + S::one()) * t.square(),
        (a + S::one()) * b.clone(),
        -(b * t),
    ])
}

/// `U0 = (-e21^3 t, (e21^3 + 1) t^2, (e12^3 + 1) e21^3)`.
pub fn u0_vertex<S: Scalar>(p: &FgParamsT11<S>) -> Vec3<S> {
    let t = p.t012.clone();
    let a = p.e12.cube();
    let b = p.e21.cube();
    Vec3([
        -(b.clone() * t.clone()),
        (b.clone() + S::one()) * t.square(),
        (a + S::one()) * b,
    ])
}

/// `U1 = ((e20^3 + 1) e02^3, -e02^3 t, (e02^3 + 1) t^2)`.
pub fn u1_vertex<S: Scalar>(p: &FgParamsT11<S>) -> Vec3<S> {
    let t = p.t012.clone();
    let a = p.e20.cube();
    let b = p.e02.cube();
    Vec3([
        (a + S::one()) * b.clone(),
        -(b.clone() * t.clone()),
        (b + S::one()) * t.square(),
    ])
}

/// `u2 = (e01^3 e10^3, t^2 t210^3, t (e01^3 t210^3 + t210^3 + e01^3 e10^3 + e01^3))`.
pub fn u2_covector<S: Scalar>(p: &FgParamsT11<S>) -> Covec3<S> {
    let t = p.t012.clone();
    let s = p.t210.cube();
    let a = p.e01.cube();
    let b = p.e10.cube();
    Covec3([
        a.clone() * b.clone(),
        t.square() * s.clone(),
        t * (a.clone() * s.clone() + s + a.clone() * b + a),
    ])
}

/// `u0 = (t (e12^3 t210^3 + t210^3 + e12^3 e21^3 + e12^3), e12^3 e21^3, t^2 t210^3)`.
pub fn u0_covector<S: Scalar>(p: &FgParamsT11<S>) -> Covec3<S> {
    let t = p.t012.clone();
    let s = p.t210.cube();
    let a = p.e12.cube();
    let b = p.e21.cube();
    Covec3([
        t.clone() * (a.clone() * s.clone() + s.clone() + a.clone() * b.clone() + a.clone()),
        a * b,
        t.square() * s,
    ])
}

/// `u1 = (t^2 t210^3, t (e20^3 t210^3 + t210^3 + e20^3 e02^3 + e20^3), e20^3 e02^3)`.
pub fn u1_covector<S: Scalar>(p: &FgParamsT11<S>) -> Covec3<S> {
    let t = p.t012.clone();
    let s = p.t210.cube();
    let a = p.e20.cube();
    let b = p.e02.cube();
    Covec3([
        t.square() * s.clone(),
        t * (a.clone() * s.clone() + s + a.clone() * b.clone() + a.clone()),
        a * b,
    ])
}

/// Evaluates the closed forms and assembles the three neighbor
/// configurations. Valid on the whole positive orthant.
pub fn neighbor_configs<S: Scalar>(p: &FgParamsT11<S>) -> Result<NeighborConfigs<S>> {
    let dev = DevConfig::new(p);
    let [v0, v1, v2] = dev.verts;
    let [t0, t1, t2] = dev.tangents;
    let u = [u0_vertex(p), u1_vertex(p), u2_vertex(p)];
    let u_cov = [u0_covector(p), u1_covector(p), u2_covector(p)];
    let y = FlagTriple::new(
        Mat3::from_cols(&u[2], &v1, &v0),
        Mat3::from_covec_rows(&u_cov[2], &t1, &t0),
    )?;
    let c = FlagTriple::new(
        Mat3::from_cols(&v1, &u[0], &v2),
        Mat3::from_covec_rows(&t1, &u_cov[0], &t2),
    )?;
    let m = FlagTriple::new(
        Mat3::from_cols(&v0, &v2, &u[1]),
        Mat3::from_covec_rows(&t0, &t2, &u_cov[1]),
    )?;
    Ok(NeighborConfigs { u, u_cov, y, c, m })
}

/// The generators and the peripheral element, all with determinant one.
///
/// `r` takes `m` to `y`, `g` takes `y` to `c`, `b` takes `c` to `m`; the
/// group relation `b.g.r ~ I` holds by construction, and `peripheral =
/// r.g.b` represents a loop around the cusp.
///
/// Determinant-one scaling is what makes the light-cone transport equalities
/// (`S1 = b^-1 S0`, `S2 = g S0`) exact; serialization uses
/// [`crate::projlin::projective_normal_form`] instead.
#[derive(Debug, Clone)]
pub struct HolonomySet<S> {
    pub r: Mat3<S>,
    pub g: Mat3<S>,
    pub b: Mat3<S>,
    pub peripheral: Mat3<S>,
}

pub fn generators<S: Scalar>(p: &FgParamsT11<S>) -> Result<HolonomySet<S>> {
    let cfg = neighbor_configs(p)?;
    let r = proj_from_to(&cfg.m, &cfg.y)?;
    let g = proj_from_to(&cfg.y, &cfg.c)?;
    let b = proj_from_to(&cfg.c, &cfg.m)?;
    let peripheral = r.mul(&g).mul(&b);
    Ok(HolonomySet { r, g, b, peripheral })
}

/// The projective eigenvalues of the peripheral element in terms of the face
/// product `T` and edge product `E`: `{T^3, T^3/E^3, E^3/T^6}`.
#[derive(Debug, Clone)]
pub struct ParabolicityReport<S> {
    pub parabolic: bool,
    pub eigenvalues: [S; 3],
    /// Set when validated comparisons could not separate the products
    /// from 1; `parabolic` then reports the within-tolerance answer.
    pub indeterminate: bool,
}

/// Decides parabolicity via `T = E = 1` (no root-finding); the eigenvalue
/// report comes from the factored characteristic polynomial.
pub fn is_parabolic_peripheral<S: Scalar>(
    p: &FgParamsT11<S>,
    tol: &S,
) -> Result<ParabolicityReport<S>> {
    let t3 = p.face_product().cube();
    let e3 = p.edge_product().cube();
    let eigenvalues = [
        t3.clone(),
        t3.clone() / e3.clone(),
        e3.clone() / t3.square(),
    ];
    let one = S::one();
    let mut parabolic = true;
    let mut indeterminate = false;
    for q in [&t3, &e3] {
        match (q.clone() - one.clone()).sign() {
            Ok(Sign::Zero) => {}
            Ok(_) => parabolic = false,
            Err(_) => match q.cmp3(&one, tol)? {
                crate::scalar::Trichotomy::Within => indeterminate = true,
                _ => parabolic = false,
            },
        }
    }
    Ok(ParabolicityReport { parabolic, eigenvalues, indeterminate })
}

/// Expanded monic characteristic polynomial of the peripheral element as
/// predicted by the factorization `(x - T^3)(E^3 x - T^3)(T^6 x - E^3)` (the
/// determinant-one normalization makes it monic with these roots).
pub fn predicted_peripheral_char_poly<S: Scalar>(p: &FgParamsT11<S>) -> [S; 4] {
    let t3 = p.face_product().cube();
    let e3 = p.edge_product().cube();
    let a = t3.clone();
    let b = t3.clone() / e3.clone();
    let c = e3 / t3.square();
    let s1 = a.clone() + b.clone() + c.clone();
    let s2 = a.clone() * b.clone() + a.clone() * c.clone() + b.clone() * c.clone();
    let s3 = a * b * c;
    [-s3, s2, -s1, S::one()]
}

/// The sigma-relabelling of the parameters realizing the order-three
/// symmetry of the configuration: `e01 <- e20 <- e12 <- e01`,
/// `e10 <- e02 <- e21 <- e10`, faces fixed. Under it the generators rotate
/// `r -> b -> g -> r` up to sigma-conjugation and the bendings rotate
/// `(YB, CB, MB) -> (MB, YB, CB)`.
pub fn rotate_params<S: Scalar>(p: &FgParamsT11<S>) -> FgParamsT11<S> {
    FgParamsT11 {
        t012: p.t012.clone(),
        t210: p.t210.clone(),
        e01: p.e20.clone(),
        e10: p.e02.clone(),
        e02: p.e21.clone(),
        e20: p.e12.clone(),
        e12: p.e01.clone(),
        e21: p.e10.clone(),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::projlin::{
        cols_pos_proportional, mats_proportional, projective_normal_form, sigma, sigma_inv,
        ProjPoint,
    };
    use crate::scalar::Rat;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    /// A deterministic family of rational points on the finite-volume locus.
    pub(crate) fn locus_point(k: i64) -> FgParamsT11<Rat> {
        let t = rat(2 + (k % 5), 3 + (k % 3));
        let e01 = rat(1 + (k % 4), 2);
        let e10 = rat(3, 2 + (k % 4));
        let e02 = rat(2, 1 + (k % 3));
        let e20 = rat(5 + (k % 2), 4);
        let e12 = rat(1, 1 + (k % 5));
        let e21 = (e01.clone() * e10.clone() * e02.clone() * e20.clone() * e12.clone()).recip();
        FgParamsT11::new([t.clone(), t.recip(), e01, e10, e02, e20, e12, e21]).unwrap()
    }

    #[test]
    fn all_ones_closed_forms() {
        let p = FgParamsT11::<Rat>::all_ones();
        let cfg = neighbor_configs(&p).unwrap();
        let u2 = ProjPoint(cfg.u[2].clone());
        assert!(u2.pos_proj_eq(&ProjPoint(Vec3::from_i64([2, 2, -1]))).unwrap());
        let u0 = ProjPoint(cfg.u[0].clone());
        assert!(u0.pos_proj_eq(&ProjPoint(Vec3::from_i64([-1, 2, 2]))).unwrap());
        // u2 ~ (1, 1, 4)
        assert_eq!(cfg.u_cov[2].0, [rat(1, 1), rat(1, 1), rat(4, 1)]);
    }

    #[test]
    fn incidence_u_dot_u_is_zero() {
        for k in 0..8 {
            let p = locus_point(k);
            let cfg = neighbor_configs(&p).unwrap();
            for i in 0..3 {
                assert_eq!(cfg.u_cov[i].pair(&cfg.u[i]), Rat::zero());
            }
        }
    }

    #[test]
    fn relation_and_mapping() {
        for k in 0..8 {
            let p = locus_point(k);
            let cfg = neighbor_configs(&p).unwrap();
            let h = generators(&p).unwrap();
            // b.g.r is a scalar multiple of the identity.
            let bgr = h.b.mul(&h.g).mul(&h.r);
            assert!(mats_proportional(&bgr, &Mat3::identity()).unwrap());
            // r maps the ordered columns of M to positive multiples of the
            // ordered columns of Y (no extraneous rotation).
            assert!(
                cols_pos_proportional(&h.r.mul(cfg.m.points()), cfg.y.points()).unwrap()
            );
            assert!(
                cols_pos_proportional(&h.g.mul(cfg.y.points()), cfg.c.points()).unwrap()
            );
            assert!(
                cols_pos_proportional(&h.b.mul(cfg.c.points()), cfg.m.points()).unwrap()
            );
            // Determinant-one scaling.
            assert!(h.r.det().is_one());
            assert!(h.g.det().is_one());
            assert!(h.b.det().is_one());
        }
    }

    #[test]
    fn peripheral_char_poly_on_locus() {
        for k in 0..8 {
            let p = locus_point(k);
            let h = generators(&p).unwrap();
            let cp = h.peripheral.char_poly();
            assert_eq!(
                cp,
                [Rat::from_int(-1), Rat::from_int(3), Rat::from_int(-3), Rat::from_int(1)]
            );
        }
    }

    #[test]
    fn parabolicity_examples() {
        let tol = Rat::zero();
        let rep = is_parabolic_peripheral(&FgParamsT11::<Rat>::all_ones(), &tol).unwrap();
        assert!(rep.parabolic);
        assert!(rep.eigenvalues.iter().all(|x| x.is_one()));

        let mut p = FgParamsT11::<Rat>::all_ones();
        p.e01 = rat(2, 1);
        let rep = is_parabolic_peripheral(&p, &tol).unwrap();
        assert!(!rep.parabolic);
        assert_eq!(
            rep.eigenvalues,
            [Rat::from_int(1), rat(1, 8), rat(8, 1)]
        );

        let mut p = FgParamsT11::<Rat>::all_ones();
        p.t012 = rat(2, 1);
        p.t210 = rat(1, 2);
        assert!(is_parabolic_peripheral(&p, &tol).unwrap().parabolic);
    }

    #[test]
    fn off_locus_char_poly_matches_factored_form() {
        let mut p = FgParamsT11::<Rat>::all_ones();
        p.e01 = rat(3, 2);
        p.t012 = rat(5, 4);
        p.e12 = rat(2, 3);
        let h = generators(&p).unwrap();
        assert_eq!(h.peripheral.char_poly(), predicted_peripheral_char_poly(&p));
    }

    #[test]
    fn sigma_conjugation_at_symmetric_point() {
        let p = FgParamsT11::<Rat>::all_ones();
        let h = generators(&p).unwrap();
        let s = sigma::<Rat>();
        let si = sigma_inv::<Rat>();
        assert_eq!(s.mul(&h.r).mul(&si), h.b);
        assert_eq!(si.mul(&h.r).mul(&s), h.g);
    }

    #[test]
    fn generator_rotation_under_param_rotation() {
        let p = locus_point(3);
        let h = generators(&p).unwrap();
        let h2 = generators(&rotate_params(&p)).unwrap();
        let s = sigma::<Rat>();
        let si = sigma_inv::<Rat>();
        // Conjugating by sigma turns the rotated tuple's generators into the
        // original ones, rotated (r', g', b') -> (b, r, g).
        assert_eq!(s.mul(&h2.r).mul(&si), h.b);
        assert_eq!(s.mul(&h2.g).mul(&si), h.r);
        assert_eq!(s.mul(&h2.b).mul(&si), h.g);
    }

    #[test]
    fn normal_form_is_deterministic() {
        let p = locus_point(1);
        let h = generators(&p).unwrap();
        let n1 = projective_normal_form(&h.r).unwrap();
        let n2 = projective_normal_form(&h.r.scale(&rat(7, 3))).unwrap();
        assert_eq!(n1, n2);
    }
}
