//! Normalization of mutually inscribed/circumscribed triangle-trilateral
//! configurations to standard trigonal form, and the projectivity between two
//! such configurations.
//!
//! A configuration is a pair `(V, v)`: the columns of `V` represent the
//! triangle's vertices, the rows of `v` the trilateral's lines, and the
//! pairing `v.V` is positive counter-diagonal. The standard trigonal matrix
//!
//! ```text
//!         ( 0  f  1 )
//! C3^f =  ( 1  0  f )
//!         ( f  1  0 )
//! ```
//!
//! is the canonical form; `f` is the one modulus of the configuration.
//!
//! The key computational fact, exploited throughout the holonomy pipeline:
//! the normalizing map of a single configuration needs cube roots, but the
//! projectivity *between* two configurations only needs cube roots of
//! lambda-ratios and a determinant ratio, and for the developing-map
//! configurations those are perfect cubes. Exact mode therefore composes
//! through [`proj_from_to`] without ever leaving the rationals.

use crate::error::{Error, Result};
use crate::projlin::{is_positive_counter_diagonal, Mat3};
use crate::scalar::{Scalar, Sign};

/// An admissible triangle-trilateral pair: `pairing() = lines * points` is
/// positive counter-diagonal. Representatives are canonicalized so that
/// `det(points) > 0` (negating both matrices when needed, which leaves every
/// flag unchanged).
#[derive(Debug, Clone)]
pub struct FlagTriple<S> {
    points: Mat3<S>,
    lines: Mat3<S>,
}

impl<S: Scalar> FlagTriple<S> {
    pub fn new(points: Mat3<S>, lines: Mat3<S>) -> Result<Self> {
        let pairing = lines.mul(&points);
        if !is_positive_counter_diagonal(&pairing)? {
            return Err(Error::Domain(
                "lines * points is not positive counter-diagonal".into(),
            ));
        }
        let (points, lines) = match points.det().sign()? {
            Sign::Pos => (points, lines),
            Sign::Neg => (points.scale(&-S::one()), lines.scale(&-S::one())),
            Sign::Zero => return Err(Error::Degenerate("degenerate point triple".into())),
        };
        Ok(FlagTriple { points, lines })
    }

    pub fn points(&self) -> &Mat3<S> {
        &self.points
    }

    pub fn lines(&self) -> &Mat3<S> {
        &self.lines
    }

    pub fn pairing(&self) -> Mat3<S> {
        self.lines.mul(&self.points)
    }
}

/// The standard trigonal form with parameter `f`.
#[derive(Debug, Clone)]
pub struct StdTrigonal<S> {
    pub f: S,
}

impl<S: Scalar> StdTrigonal<S> {
    pub fn new(f: S) -> Result<Self> {
        if f.sign()? != Sign::Pos {
            return Err(Error::Domain("trigonal parameter must be positive".into()));
        }
        Ok(StdTrigonal { f })
    }

    /// The matrix `C3^f`.
    pub fn matrix(&self) -> Mat3<S> {
        let z = S::zero;
        let o = S::one;
        let f = || self.f.clone();
        Mat3::from_rows([z(), f(), o()], [o(), z(), f()], [f(), o(), z()])
    }
}

/// `f^3` for a positive counter-diagonal `P`: the rational invariant
/// `P01 P12 P20 / (P02 P10 P21)`.
pub fn trigonal_parameter_cubed<S: Scalar>(p: &Mat3<S>) -> Result<S> {
    if !is_positive_counter_diagonal(p)? {
        return Err(Error::Domain("matrix is not positive counter-diagonal".into()));
    }
    let num = p.at(0, 1).clone() * p.at(1, 2).clone() * p.at(2, 0).clone();
    let den = p.at(0, 2).clone() * p.at(1, 0).clone() * p.at(2, 1).clone();
    Ok(num / den)
}

/// The trigonal parameter `f` itself; exact mode requires a perfect cube.
pub fn trigonal_parameter<S: Scalar>(p: &Mat3<S>) -> Result<S> {
    trigonal_parameter_cubed(p)?.cbrt()
}

/// The cubes of the three normalizing diagonal entries for a positive
/// counter-diagonal pairing `P`:
///
/// ```text
/// lambda0^3 = P12 P21 / (P10 P20),
/// lambda1^3 = P20 P02 / (P21 P01),
/// lambda2^3 = P01 P10 / (P02 P12).
/// ```
pub fn lambda_cubes<S: Scalar>(p: &Mat3<S>) -> [S; 3] {
    let e = |i: usize, j: usize| p.at(i, j).clone();
    [
        e(1, 2) * e(2, 1) / (e(1, 0) * e(2, 0)),
        e(2, 0) * e(0, 2) / (e(2, 1) * e(0, 1)),
        e(0, 1) * e(1, 0) / (e(0, 2) * e(1, 2)),
    ]
}

/// The normalizing projectivity `m` with `m.points` diagonal-positive and
/// `lines.m^-1` a positive row scaling of `C3^f`:
/// `m = det(V)^(1/3) (V D)^(-1)` with `D = diag(lambda_i)`.
///
/// Exact mode succeeds only when all three `lambda_i^3` and `det(V)` are
/// perfect cubes.
pub fn map_to_std_trigon<S: Scalar>(t: &FlagTriple<S>) -> Result<Mat3<S>> {
    let pairing = t.pairing();
    if !is_positive_counter_diagonal(&pairing)? {
        return Err(Error::Domain("pairing is not positive counter-diagonal".into()));
    }
    let l3 = lambda_cubes(&pairing);
    let lam = [l3[0].cbrt()?, l3[1].cbrt()?, l3[2].cbrt()?];
    let vd = scale_cols(t.points(), &lam);
    let s = t.points().det().cbrt()?;
    Ok(vd.inverse()?.scale(&s))
}

fn scale_cols<S: Scalar>(m: &Mat3<S>, d: &[S; 3]) -> Mat3<S> {
    let mut out = m.clone();
    for row in out.0.iter_mut() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = x.clone() * d[j].clone();
        }
    }
    out
}

/// The projectivity taking `src` onto `dst` (columns to positive multiples of
/// columns, rows of the trilateral correspondingly), normalized to
/// determinant one:
///
/// `g = cbrt(det V_src / det V_dst) . V_dst . diag(lambda_dst/lambda_src) . V_src^-1`.
///
/// This is `map_to_std_trigon(dst)^-1 . map_to_std_trigon(src)` with the cube
/// roots cancelled pairwise, so exact mode only needs the *ratios* to be
/// perfect cubes.
pub fn proj_from_to<S: Scalar>(src: &FlagTriple<S>, dst: &FlagTriple<S>) -> Result<Mat3<S>> {
    let fs = trigonal_parameter_cubed(&src.pairing())?;
    let fd = trigonal_parameter_cubed(&dst.pairing())?;
    match (fs.clone() - fd.clone()).sign() {
        Ok(Sign::Zero) => {}
        Ok(_) => {
            return Err(Error::MismatchedTrigonalParameter(
                fs.to_string(),
                fd.to_string(),
            ))
        }
        // Overlapping enclosures: proceed (equality is not refuted).
        Err(_) => {}
    }
    let ls = lambda_cubes(&src.pairing());
    let ld = lambda_cubes(&dst.pairing());
    let ratio = [
        (ld[0].clone() / ls[0].clone()).cbrt()?,
        (ld[1].clone() / ls[1].clone()).cbrt()?,
        (ld[2].clone() / ls[2].clone()).cbrt()?,
    ];
    let s = (src.points().det() / dst.points().det()).cbrt()?;
    let wd = scale_cols(dst.points(), &ratio);
    Ok(wd.mul(&src.points().inverse()?).scale(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projlin::{cols_pos_proportional, mats_proportional, rows_pos_proportional, Mat3};
    use crate::scalar::{Iv256, Rat};

    fn identity_triple_f(f: i64, den: i64) -> FlagTriple<Rat> {
        let c3 = StdTrigonal::new(Rat::from_ratio(f, den)).unwrap().matrix();
        FlagTriple::new(Mat3::identity(), c3).unwrap()
    }

    #[test]
    fn parameter_symmetric_cases() {
        let ones = Mat3::<Rat>::from_i64([[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        assert_eq!(trigonal_parameter(&ones).unwrap(), Rat::from_int(1));
        let eights = Mat3::<Rat>::from_i64([[0, 8, 1], [1, 0, 8], [8, 1, 0]]);
        assert_eq!(trigonal_parameter(&eights).unwrap(), Rat::from_int(8));
    }

    #[test]
    fn parameter_generic_case_matches_formula() {
        // P01=2, P12=3, P20=5, P02=7, P10=11, P21=13 -> f^3 = 30/1001.
        let p = Mat3::<Rat>::from_i64([[0, 2, 7], [11, 0, 3], [5, 13, 0]]);
        assert_eq!(trigonal_parameter_cubed(&p).unwrap(), Rat::from_ratio(30, 1001));
        // f itself is irrational, so exact extraction must refuse...
        assert!(matches!(trigonal_parameter(&p), Err(Error::CubeRootNotExact(_))));
        // ...while validated mode encloses the real root.
        let p = Mat3::<Iv256>::from_i64([[0, 2, 7], [11, 0, 3], [5, 13, 0]]);
        let f = trigonal_parameter(&p).unwrap();
        assert!((f.to_f64() - (30f64 / 1001f64).powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn parameter_rejects_non_counter_diagonal() {
        let id = Mat3::<Rat>::identity();
        assert!(matches!(trigonal_parameter_cubed(&id), Err(Error::Domain(_))));
    }

    #[test]
    fn map_to_std_trigon_fixes_standard_forms() {
        for (f, den) in [(1, 1), (7, 3)] {
            let t = identity_triple_f(f, den);
            let m = map_to_std_trigon(&t).unwrap();
            // m is the identity up to positive scale: lambda_i^3 = 1 here.
            assert!(mats_proportional(&m, &Mat3::identity()).unwrap());
        }
    }

    #[test]
    fn map_to_std_trigon_postcondition_validated() {
        type S = Iv256;
        // A random-ish admissible triple: V generic, v = P V^-1.
        let v_pts = Mat3::<S>::from_i64([[2, 1, 0], [1, 3, 1], [1, 1, 4]]);
        let p = Mat3::<S>::from_i64([[0, 2, 5], [3, 0, 7], [1, 4, 0]]);
        let lines = p.mul(&v_pts.inverse().unwrap());
        let t = FlagTriple::new(v_pts, lines).unwrap();
        let m = map_to_std_trigon(&t).unwrap();
        // m.V is diagonal with positive diagonal.
        let mv = m.mul(t.points());
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(mv.at(i, j).sign().unwrap(), crate::scalar::Sign::Pos);
                } else {
                    assert!(mv.at(i, j).to_f64().abs() < 1e-60);
                }
            }
        }
        // v.m^-1 matches C3^f up to positive row scale.
        let f = trigonal_parameter(&t.pairing()).unwrap();
        let c3 = StdTrigonal::new(f).unwrap().matrix();
        let vmi = t.lines().mul(&m.inverse().unwrap());
        assert!(rows_pos_proportional(&vmi, &c3).unwrap());
    }

    #[test]
    fn proj_from_to_identity_and_round_trip() {
        let t = identity_triple_f(5, 2);
        let g = proj_from_to(&t, &t).unwrap();
        assert!(mats_proportional(&g, &Mat3::identity()).unwrap());

        // Transport by a known projectivity comes back projectively equal.
        let g0 = Mat3::<Rat>::from_i64([[1, 1, 0], [0, 1, 0], [1, 0, 2]]);
        let g0i = g0.inverse().unwrap();
        let dst = FlagTriple::new(g0.mul(t.points()), t.lines().mul(&g0i)).unwrap();
        let g = proj_from_to(&t, &dst).unwrap();
        assert!(mats_proportional(&g, &g0).unwrap());
        assert!(cols_pos_proportional(&g.mul(t.points()), dst.points()).unwrap());
    }

    #[test]
    fn proj_from_to_mismatch_detected() {
        let a = identity_triple_f(2, 1);
        let b = identity_triple_f(3, 1);
        assert!(matches!(
            proj_from_to(&a, &b),
            Err(Error::MismatchedTrigonalParameter(_, _))
        ));
    }

    #[test]
    fn sigma_rotation_gives_order_three_map() {
        use crate::projlin::{sigma, sigma_inv};
        let t = identity_triple_f(3, 2);
        let rot = FlagTriple::new(
            sigma::<Rat>().mul(t.points()),
            t.lines().mul(&sigma_inv::<Rat>()),
        )
        .unwrap();
        let g = proj_from_to(&t, &rot).unwrap();
        let g3 = g.mul(&g).mul(&g);
        assert!(mats_proportional(&g3, &Mat3::identity()).unwrap());
    }

    #[test]
    fn flag_triple_canonicalizes_orientation() {
        // (-I, -C3) is admissible and represents the same flags as (I, C3).
        let c3 = StdTrigonal::new(Rat::from_int(2)).unwrap().matrix();
        let t = FlagTriple::new(
            Mat3::identity().scale(&Rat::from_int(-1)),
            c3.scale(&Rat::from_int(-1)),
        )
        .unwrap();
        assert_eq!(t.points().det().sign().unwrap(), crate::scalar::Sign::Pos);
    }
}
