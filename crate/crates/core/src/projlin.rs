//! Fixed-size 3-dimensional (projective) linear algebra over a [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Sign};

/// Column vector (a point representative).
#[derive(Debug, Clone, PartialEq)]
pub struct Vec3<S>(pub [S; 3]);

/// Row covector (a line representative).
#[derive(Debug, Clone, PartialEq)]
pub struct Covec3<S>(pub [S; 3]);

/// 3x3 matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat3<S>(pub [[S; 3]; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn from_i64(v: [i64; 3]) -> Self {
        Vec3(v.map(S::from_int))
    }

    pub fn scale(&self, s: &S) -> Self {
        Vec3([
            self.0[0].clone() * s.clone(),
            self.0[1].clone() * s.clone(),
            self.0[2].clone() * s.clone(),
        ])
    }

    /// Line through two points (cross product, as a covector).
    pub fn join(&self, other: &Self) -> Covec3<S> {
        let a = &self.0;
        let b = &other.0;
        Covec3([
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ])
    }
}

impl<S: Scalar> Covec3<S> {
    pub fn from_i64(v: [i64; 3]) -> Self {
        Covec3(v.map(S::from_int))
    }

    pub fn scale(&self, s: &S) -> Self {
        Covec3([
            self.0[0].clone() * s.clone(),
            self.0[1].clone() * s.clone(),
            self.0[2].clone() * s.clone(),
        ])
    }

    /// Pairing `v.V`.
    pub fn pair(&self, v: &Vec3<S>) -> S {
        self.0[0].clone() * v.0[0].clone()
            + self.0[1].clone() * v.0[1].clone()
            + self.0[2].clone() * v.0[2].clone()
    }
}

impl<S: Scalar> Mat3<S> {
    pub fn from_rows(r0: [S; 3], r1: [S; 3], r2: [S; 3]) -> Self {
        Mat3([r0, r1, r2])
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Self {
        Mat3(m.map(|r| r.map(S::from_int)))
    }

    pub fn identity() -> Self {
        Mat3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn zero() -> Self {
        Mat3::from_i64([[0; 3]; 3])
    }

    /// Columns are vertex representatives.
    pub fn from_cols(c0: &Vec3<S>, c1: &Vec3<S>, c2: &Vec3<S>) -> Self {
        let g = |c: &Vec3<S>, i: usize| c.0[i].clone();
        Mat3([
            [g(c0, 0), g(c1, 0), g(c2, 0)],
            [g(c0, 1), g(c1, 1), g(c2, 1)],
            [g(c0, 2), g(c1, 2), g(c2, 2)],
        ])
    }

    pub fn from_covec_rows(r0: &Covec3<S>, r1: &Covec3<S>, r2: &Covec3<S>) -> Self {
        Mat3([r0.0.clone(), r1.0.clone(), r2.0.clone()])
    }

    pub fn col(&self, j: usize) -> Vec3<S> {
        Vec3([self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone()])
    }

    pub fn row(&self, i: usize) -> Covec3<S> {
        Covec3(self.0[i].clone())
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.0[i][j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = S::zero();
                for k in 0..3 {
                    acc = acc + self.0[i][k].clone() * rhs.0[k][j].clone();
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vec3<S>) -> Vec3<S> {
        let mut out = [S::zero(), S::zero(), S::zero()];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = S::zero();
            for k in 0..3 {
                acc = acc + self.0[i][k].clone() * v.0[k].clone();
            }
            *o = acc;
        }
        Vec3(out)
    }

    /// Covector acting from the left: `w = v . M`.
    pub fn vec_mul(&self, v: &Covec3<S>) -> Covec3<S> {
        let mut out = [S::zero(), S::zero(), S::zero()];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = S::zero();
            for k in 0..3 {
                acc = acc + v.0[k].clone() * self.0[k][j].clone();
            }
            *o = acc;
        }
        Covec3(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat3(self.0.clone().map(|r| r.map(|x| x * s.clone())))
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0].clone(), m[1][0].clone(), m[2][0].clone()],
            [m[0][1].clone(), m[1][1].clone(), m[2][1].clone()],
            [m[0][2].clone(), m[1][2].clone(), m[2][2].clone()],
        ])
    }

    pub fn det(&self) -> S {
        let m = &self.0;
        m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            - m[0][1].clone()
                * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
            + m[0][2].clone()
                * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
    }

    /// Inverse via the adjugate. The determinant must be (certifiedly)
    /// nonzero; otherwise the entries come back poisoned.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        match d.sign() {
            Ok(Sign::Zero) => return Err(Error::Degenerate("singular matrix".into())),
            Ok(_) => {}
            Err(e) => return Err(e),
        }
        let m = &self.0;
        let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
            m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
        };
        let adj = Mat3([
            [cof(1, 1, 2, 2), cof(0, 2, 2, 1), cof(0, 1, 1, 2)],
            [cof(1, 2, 2, 0), cof(0, 0, 2, 2), cof(0, 2, 1, 0)],
            [cof(1, 0, 2, 1), cof(0, 1, 2, 0), cof(0, 0, 1, 1)],
        ]);
        let mut out = adj;
        for r in out.0.iter_mut() {
            for x in r.iter_mut() {
                *x = x.clone() / d.clone();
            }
        }
        Ok(out)
    }

    /// Coefficients of `det(lambda I - M)` in ascending powers of lambda
    /// (monic cubic: `[c0, c1, c2, 1]`).
    pub fn char_poly(&self) -> [S; 4] {
        let m = &self.0;
        let tr = m[0][0].clone() + m[1][1].clone() + m[2][2].clone();
        let m2 = (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            + (m[0][0].clone() * m[2][2].clone() - m[0][2].clone() * m[2][0].clone())
            + (m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone());
        [-self.det(), m2, -tr, S::one()]
    }
}

/// The order-3 permutation matrix of the standard configuration.
pub fn sigma<S: Scalar>() -> Mat3<S> {
    Mat3::from_i64([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
}

pub fn sigma_inv<S: Scalar>() -> Mat3<S> {
    Mat3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
}

/// True iff the diagonal is zero and every off-diagonal entry is
/// (certifiedly) positive.
pub fn is_positive_counter_diagonal<S: Scalar>(m: &Mat3<S>) -> Result<bool> {
    for i in 0..3 {
        for j in 0..3 {
            let s = m.0[i][j].sign().map_err(|_| {
                Error::Indeterminate(format!("entry ({i},{j}) cannot be certified against zero"))
            })?;
            if i == j {
                if s != Sign::Zero {
                    return Ok(false);
                }
            } else if s != Sign::Pos {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Point of the projective plane, stored as a nonzero representative.
#[derive(Debug, Clone)]
pub struct ProjPoint<S>(pub Vec3<S>);

/// Line of the projective plane, stored as a nonzero representative.
#[derive(Debug, Clone)]
pub struct ProjLine<S>(pub Covec3<S>);

fn rep_proj_eq<S: Scalar>(a: &[S; 3], b: &[S; 3], positive_only: bool) -> Result<bool> {
    // Find a coordinate where b is certifiedly nonzero.
    let mut k = None;
    for (i, x) in b.iter().enumerate() {
        match x.sign() {
            Ok(Sign::Zero) => continue,
            Ok(_) => {
                k = Some(i);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let k = k.ok_or_else(|| Error::Degenerate("zero projective representative".into()))?;
    match a[k].sign()? {
        Sign::Zero => return Ok(false),
        _ => {}
    }
    let s = a[k].clone() / b[k].clone();
    if positive_only && s.sign()? != Sign::Pos {
        return Ok(false);
    }
    for i in 0..3 {
        let d = a[i].clone() - s.clone() * b[i].clone();
        match d.sign() {
            Ok(Sign::Zero) => {}
            Ok(_) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

impl<S: Scalar> ProjPoint<S> {
    /// Equality up to a nonzero scalar multiple.
    pub fn proj_eq(&self, other: &Self) -> Result<bool> {
        rep_proj_eq(&self.0 .0, &other.0 .0, false)
    }

    /// Equality up to a positive scalar multiple.
    pub fn pos_proj_eq(&self, other: &Self) -> Result<bool> {
        rep_proj_eq(&self.0 .0, &other.0 .0, true)
    }
}

impl<S: Scalar> ProjLine<S> {
    pub fn proj_eq(&self, other: &Self) -> Result<bool> {
        rep_proj_eq(&self.0 .0, &other.0 .0, false)
    }

    pub fn pos_proj_eq(&self, other: &Self) -> Result<bool> {
        rep_proj_eq(&self.0 .0, &other.0 .0, true)
    }
}

/// True iff the columns of `a` are positive multiples of the columns of `b`,
/// in order.
pub fn cols_pos_proportional<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Result<bool> {
    for j in 0..3 {
        if !ProjPoint(a.col(j)).pos_proj_eq(&ProjPoint(b.col(j)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the rows of `a` are positive multiples of the rows of `b`.
pub fn rows_pos_proportional<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Result<bool> {
    for i in 0..3 {
        if !ProjLine(a.row(i)).pos_proj_eq(&ProjLine(b.row(i)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `a = s b` for some (certifiedly) nonzero scalar.
pub fn mats_proportional<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Result<bool> {
    let flat_a: Vec<&S> = a.0.iter().flatten().collect();
    let flat_b: Vec<&S> = b.0.iter().flatten().collect();
    let mut k = None;
    for (i, x) in flat_b.iter().enumerate() {
        if x.sign()? != Sign::Zero {
            k = Some(i);
            break;
        }
    }
    let k = k.ok_or_else(|| Error::Degenerate("zero matrix".into()))?;
    if flat_a[k].sign()? == Sign::Zero {
        return Ok(false);
    }
    let s = flat_a[k].clone() / flat_b[k].clone();
    for i in 0..9 {
        let d = flat_a[i].clone() - s.clone() * flat_b[i].clone();
        if d.sign()? != Sign::Zero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic projective normal form: divide by the entry of largest
/// midpoint magnitude (ties: first in row-major order), making it `+1`.
pub fn projective_normal_form<S: Scalar>(m: &Mat3<S>) -> Result<Mat3<S>> {
    let mut best = (0usize, 0usize);
    let mut best_mag = f64::NEG_INFINITY;
    for i in 0..3 {
        for j in 0..3 {
            let mag = m.0[i][j].to_f64().abs();
            if mag > best_mag {
                best_mag = mag;
                best = (i, j);
            }
        }
    }
    let pivot = m.0[best.0][best.1].clone();
    if pivot.sign()? == Sign::Zero {
        return Err(Error::Degenerate("zero matrix has no normal form".into()));
    }
    let mut out = m.clone();
    for r in out.0.iter_mut() {
        for x in r.iter_mut() {
            *x = x.clone() / pivot.clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type M = Mat3<Rat>;

    #[test]
    fn det_examples() {
        assert_eq!(M::identity().det(), Rat::from_int(1));
        assert_eq!(sigma::<Rat>().det(), Rat::from_int(1));
        let d = M::from_i64([[2, 0, 0], [0, 3, 0], [0, 0, 5]]);
        assert_eq!(d.det(), Rat::from_int(30));
    }

    #[test]
    fn sigma_has_order_three() {
        let s = sigma::<Rat>();
        assert_eq!(s.mul(&s).mul(&s), M::identity());
        assert_eq!(s.mul(&sigma_inv::<Rat>()), M::identity());
    }

    #[test]
    fn char_poly_examples() {
        // (lambda - 1)^3 ascending: [-1, 3, -3, 1]
        let cp = M::identity().char_poly();
        assert_eq!(
            cp,
            [Rat::from_int(-1), Rat::from_int(3), Rat::from_int(-3), Rat::from_int(1)]
        );
        // diag(1,2,3): roots 1, 2, 3.
        let d = M::from_i64([[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let cp = d.char_poly();
        for r in [1i64, 2, 3] {
            let x = Rat::from_int(r);
            let val = cp[0].clone()
                + cp[1].clone() * x.clone()
                + cp[2].clone() * x.clone() * x.clone()
                + cp[3].clone() * x.clone() * x.clone() * x.clone();
            assert_eq!(val, Rat::from_int(0));
        }
        // Standard parabolic: (lambda - 1)^3.
        let p = M::from_i64([[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        assert_eq!(
            p.char_poly(),
            [Rat::from_int(-1), Rat::from_int(3), Rat::from_int(-3), Rat::from_int(1)]
        );
    }

    #[test]
    fn counter_diagonal_detection() {
        let ones = M::from_i64([[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        assert!(is_positive_counter_diagonal(&ones).unwrap());
        assert!(!is_positive_counter_diagonal(&M::identity()).unwrap());
        // sigma-conjugation preserves the property.
        let m = M::from_i64([[0, 2, 3], [5, 0, 7], [11, 13, 0]]);
        let c = sigma::<Rat>().mul(&m).mul(&sigma_inv::<Rat>());
        assert!(is_positive_counter_diagonal(&c).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let m = M::from_i64([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi), M::identity());
        let sing = M::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(matches!(sing.inverse(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn char_poly_conjugation_invariant() {
        let m = M::from_i64([[3, 1, 4], [1, 5, 9], [2, 6, 5]]);
        let g = M::from_i64([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let conj = g.mul(&m).mul(&g.inverse().unwrap());
        assert_eq!(m.char_poly(), conj.char_poly());
    }

    #[test]
    fn proj_eq_scaling() {
        let p = ProjPoint(Vec3::<Rat>::from_i64([2, -4, 6]));
        let q = ProjPoint(Vec3::<Rat>::from_i64([1, -2, 3]));
        let r = ProjPoint(Vec3::<Rat>::from_i64([-1, 2, -3]));
        assert!(p.proj_eq(&q).unwrap());
        assert!(p.pos_proj_eq(&q).unwrap());
        assert!(p.proj_eq(&r).unwrap());
        assert!(!p.pos_proj_eq(&r).unwrap());
    }

    #[test]
    fn join_is_incident() {
        let a = Vec3::<Rat>::from_i64([1, 2, 3]);
        let b = Vec3::<Rat>::from_i64([4, 5, 6]);
        let l = a.join(&b);
        assert_eq!(l.pair(&a), Rat::from_int(0));
        assert_eq!(l.pair(&b), Rat::from_int(0));
    }
}
