//! Coordinate tuples for the moduli spaces, finite-volume validation, and the
//! triple-ratio primitive.

use crate::error::{Error, Result};
use crate::projlin::Mat3;
use crate::scalar::{Scalar, Sign, Trichotomy};

/// Coordinates of a framed structure on the once-punctured torus: two face
/// parameters and six edge parameters, all positive. The finite-volume locus
/// is `t012 t210 = 1` and `e01 e10 e02 e20 e12 e21 = 1`.
///
/// The field order is fixed; all serialization uses it.
#[derive(Debug, Clone, PartialEq)]
pub struct FgParamsT11<S> {
    pub t012: S,
    pub t210: S,
    pub e01: S,
    pub e10: S,
    pub e02: S,
    pub e20: S,
    pub e12: S,
    pub e21: S,
}

/// Coordinates of a framed structure on the thrice-punctured sphere. The
/// remaining six parameters of the 8-tuple are implied:
/// `t210 = 1/t012`, `e10 = e21 = e02 = 1/e01`, `e12 = e20 = e01`.
#[derive(Debug, Clone, PartialEq)]
pub struct FgParamsS03<S> {
    pub t012: S,
    pub e01: S,
}

/// The two products checked by the finite-volume constraint.
#[derive(Debug, Clone)]
pub struct HolonomySummary<S> {
    /// Product of the face parameters.
    pub t: S,
    /// Product of the edge parameters.
    pub e: S,
    pub verdict: LocusVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusVerdict {
    /// Both products are (certifiedly) 1.
    Satisfied,
    /// At least one product is (certifiedly) not 1.
    Violated,
    /// Validated mode could not separate a product from 1; accepted with a
    /// warning.
    WithinTolerance,
}

impl<S: Scalar> FgParamsT11<S> {
    /// Builds a tuple, requiring every entry (certifiedly) positive.
    pub fn new(entries: [S; 8]) -> Result<Self> {
        for (x, name) in entries.iter().zip(FIELD_NAMES) {
            match x.sign() {
                Ok(Sign::Pos) => {}
                Ok(_) => return Err(Error::Domain(format!("parameter {name} must be positive"))),
                Err(_) => {
                    return Err(Error::Indeterminate(format!(
                        "parameter {name} cannot be certified positive"
                    )))
                }
            }
        }
        let [t012, t210, e01, e10, e02, e20, e12, e21] = entries;
        Ok(FgParamsT11 { t012, t210, e01, e10, e02, e20, e12, e21 })
    }

    pub fn all_ones() -> Self {
        let o = S::one;
        FgParamsT11 {
            t012: o(),
            t210: o(),
            e01: o(),
            e10: o(),
            e02: o(),
            e20: o(),
            e12: o(),
            e21: o(),
        }
    }

    /// Completes a 5-tuple projection point `(t012, e01, e10, e12, e21)` plus
    /// a chosen `e20` to the finite-volume locus:
    /// `t210 = 1/t012`, `e02 = 1/(e01 e10 e12 e21 e20)`.
    pub fn complete_to_locus(t012: S, e01: S, e10: S, e12: S, e21: S, e20: S) -> Result<Self> {
        let t210 = t012.recip();
        let e02 = (e01.clone() * e10.clone() * e12.clone() * e21.clone() * e20.clone()).recip();
        Self::new([t012, t210, e01, e10, e02, e20, e12, e21])
    }

    pub fn entries(&self) -> [S; 8] {
        [
            self.t012.clone(),
            self.t210.clone(),
            self.e01.clone(),
            self.e10.clone(),
            self.e02.clone(),
            self.e20.clone(),
            self.e12.clone(),
            self.e21.clone(),
        ]
    }

    pub fn face_product(&self) -> S {
        self.t012.clone() * self.t210.clone()
    }

    pub fn edge_product(&self) -> S {
        self.e01.clone()
            * self.e10.clone()
            * self.e02.clone()
            * self.e20.clone()
            * self.e12.clone()
            * self.e21.clone()
    }
}

pub const FIELD_NAMES: [&str; 8] = ["t012", "t210", "e01", "e10", "e02", "e20", "e12", "e21"];

/// Checks the finite-volume constraints `T = 1`, `E = 1`.
pub fn validate_t11<S: Scalar>(p: &FgParamsT11<S>, tol: &S) -> Result<HolonomySummary<S>> {
    let t = p.face_product();
    let e = p.edge_product();
    let one = S::one();
    let mut verdict = LocusVerdict::Satisfied;
    for prod in [&t, &e] {
        match (prod.clone() - one.clone()).sign() {
            Ok(Sign::Zero) => {}
            Ok(_) => {
                verdict = LocusVerdict::Violated;
            }
            Err(_) => match prod.cmp3(&one, tol)? {
                Trichotomy::Within => {
                    if verdict == LocusVerdict::Satisfied {
                        verdict = LocusVerdict::WithinTolerance;
                    }
                }
                _ => verdict = LocusVerdict::Violated,
            },
        }
    }
    Ok(HolonomySummary { t, e, verdict })
}

impl<S: Scalar> FgParamsS03<S> {
    pub fn new(t012: S, e01: S) -> Result<Self> {
        for (x, name) in [(&t012, "t012"), (&e01, "e01")] {
            if x.sign().map_err(|_| {
                Error::Indeterminate(format!("parameter {name} cannot be certified positive"))
            })? != Sign::Pos
            {
                return Err(Error::Domain(format!("parameter {name} must be positive")));
            }
        }
        Ok(FgParamsS03 { t012, e01 })
    }

    /// The implied 8-tuple on the once-punctured-torus parameter layout.
    pub fn implied_t11(&self) -> FgParamsT11<S> {
        let inv = self.e01.recip();
        FgParamsT11 {
            t012: self.t012.clone(),
            t210: self.t012.recip(),
            e01: self.e01.clone(),
            e10: inv.clone(),
            e02: inv.clone(),
            e20: self.e01.clone(),
            e12: self.e01.clone(),
            e21: inv,
        }
    }
}

/// The triple ratio of a trilateral/triangle pair:
/// `(vV)01 (vV)12 (vV)20 / ((vV)02 (vV)10 (vV)21)`.
pub fn triple_ratio<S: Scalar>(lines: &Mat3<S>, points: &Mat3<S>) -> Result<S> {
    let p = lines.mul(points);
    let den = p.at(0, 2).clone() * p.at(1, 0).clone() * p.at(2, 1).clone();
    match den.sign() {
        Ok(Sign::Zero) => {
            return Err(Error::Degenerate("zero pairing in triple-ratio denominator".into()))
        }
        Ok(_) => {}
        Err(e) => return Err(e),
    }
    let num = p.at(0, 1).clone() * p.at(1, 2).clone() * p.at(2, 0).clone();
    Ok(num / den)
}

/// The one-parameter degenerating family used for the rendered sweep:
/// `(2^{-1/3}, 2^{1/3}, 1, 2^{2/3}, 1, 1, 2^mu, 2^{-mu-2/3})`.
///
/// Exact mode refuses (the entries are irrational for every `mu`).
pub fn fig5_sweep<S: Scalar>(mu: f64) -> Result<FgParamsT11<S>> {
    let two = S::from_int(2);
    let cbrt2 = two.cbrt()?;
    let cbrt4 = S::from_int(4).cbrt()?;
    let mu_s = S::parse(&format!("{mu:.17e}"))?;
    let e12 = S::exp2(&mu_s)?;
    let e21 = S::exp2(&(-mu_s))? / cbrt4.clone();
    FgParamsT11::new([
        cbrt2.recip(),
        cbrt2,
        S::one(),
        cbrt4,
        S::one(),
        S::one(),
        e12,
        e21,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Iv256, Rat};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn validate_examples() {
        let tol = Rat::zero();
        let ok = validate_t11(&FgParamsT11::<Rat>::all_ones(), &tol).unwrap();
        assert_eq!(ok.verdict, LocusVerdict::Satisfied);
        assert!(ok.t.is_one() && ok.e.is_one());

        let mut p = FgParamsT11::<Rat>::all_ones();
        p.t012 = rat(2, 1);
        p.t210 = rat(1, 2);
        assert_eq!(validate_t11(&p, &tol).unwrap().verdict, LocusVerdict::Satisfied);

        let mut p = FgParamsT11::<Rat>::all_ones();
        p.e01 = rat(2, 1);
        let rep = validate_t11(&p, &tol).unwrap();
        assert_eq!(rep.verdict, LocusVerdict::Violated);
        assert_eq!(rep.e, rat(2, 1));
    }

    #[test]
    fn positivity_enforced() {
        let mut e = FgParamsT11::<Rat>::all_ones().entries();
        e[3] = rat(-1, 2);
        assert!(matches!(FgParamsT11::new(e), Err(Error::Domain(_))));
    }

    #[test]
    fn triple_ratio_standard_form_is_f_cubed() {
        use crate::trigonal::StdTrigonal;
        let f = rat(5, 3);
        let c3 = StdTrigonal::new(f.clone()).unwrap().matrix();
        let r = triple_ratio(&c3, &Mat3::identity()).unwrap();
        assert_eq!(r, f.clone() * f.clone() * f);
    }

    #[test]
    fn triple_ratio_symmetric_is_one() {
        let m = Mat3::<Rat>::from_i64([[0, 7, 7], [7, 0, 7], [7, 7, 0]]);
        assert!(triple_ratio(&m, &Mat3::identity()).unwrap().is_one());
    }

    #[test]
    fn triple_ratio_degenerate_pairing() {
        // Line 0 passes through point 2: pairing (0,2) vanishes.
        let lines = Mat3::<Rat>::from_i64([[1, 1, 0], [1, 0, 1], [1, 1, 1]]);
        assert!(matches!(
            triple_ratio(&lines, &Mat3::identity()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn triple_ratio_scaling_invariance() {
        let lines = Mat3::<Rat>::from_i64([[0, 2, 3], [5, 0, 7], [11, 13, 0]]);
        let pts = Mat3::<Rat>::identity();
        let r0 = triple_ratio(&lines, &pts).unwrap();
        // Rescale row 1 and column 2.
        let mut l2 = lines.clone();
        for x in l2.0[1].iter_mut() {
            *x = x.clone() * rat(9, 4);
        }
        let mut p2 = pts.clone();
        for i in 0..3 {
            p2.0[i][2] = p2.0[i][2].clone() * rat(7, 5);
        }
        assert_eq!(triple_ratio(&l2, &p2).unwrap(), r0);
    }

    #[test]
    fn s03_implied_tuple_is_on_locus() {
        let p = FgParamsS03::new(rat(3, 2), rat(5, 7)).unwrap();
        let full = p.implied_t11();
        let rep = validate_t11(&full, &Rat::zero()).unwrap();
        assert_eq!(rep.verdict, LocusVerdict::Satisfied);
    }

    #[test]
    fn fig5_sweep_values_and_locus() {
        type S = Iv256;
        let p = fig5_sweep::<S>(0.0).unwrap();
        assert!((p.t012.to_f64() - 0.5f64.powf(1.0 / 3.0)).abs() < 1e-14);
        assert!((p.e10.to_f64() - 4f64.powf(1.0 / 3.0)).abs() < 1e-14);
        assert!((p.e12.to_f64() - 1.0).abs() < 1e-14);
        assert!((p.e21.to_f64() - 0.25f64.powf(1.0 / 3.0)).abs() < 1e-14);

        // mu = -2/3 sends e12 to 2^(-2/3) and e21 to 1.
        let p = fig5_sweep::<S>(-2.0 / 3.0).unwrap();
        assert!((p.e12.to_f64() - 0.25f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((p.e21.to_f64() - 1.0).abs() < 1e-12);

        for mu in [-3.0, -1.25, 0.4, 3.0] {
            let p = fig5_sweep::<S>(mu).unwrap();
            let tol = S::parse("1e-30").unwrap();
            let rep = validate_t11(&p, &tol).unwrap();
            // The entries are irrational: enclosures straddle the exact
            // products, so the verdict is the tolerance-accepted one.
            assert_ne!(rep.verdict, LocusVerdict::Violated);
            assert!((rep.t.to_f64() - 1.0).abs() < 1e-30);
            assert!((rep.e.to_f64() - 1.0).abs() < 1e-30);
        }

        assert!(fig5_sweep::<Rat>(0.5).is_err());
    }
}
