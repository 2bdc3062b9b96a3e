//! Edge flips on parameter tuples, canonicalization to the cell containing a
//! point, and the Farey-tessellation addressing of triangulations.
//!
//! The flip recomputes all eight triple ratios from the developed flags of
//! the quadrilateral across the flipped edge, then re-reads them off a fixed
//! marking of the new triangulation. The marking conventions are frozen so
//! that each edge color stays on its arc (the new edge inherits the flipped
//! color) and flipping the same color twice is the identity on parameters;
//! see the unit tests for the checked consequences (involution, locus
//! preservation, bending transport across the wall).

use crate::cells::{classify_bendings, bendings_with, EdgeColor, EdgeStatus};
use crate::error::{Error, Result};
use crate::holonomy::{generators, neighbor_configs};
use crate::projlin::{Covec3, Mat3, Vec3};
use crate::scalar::{Scalar, Sign};
use crate::structure::{triple_ratio, validate_t11, FgParamsT11, LocusVerdict};

// ---------------------------------------------------------------------------
// Farey slopes and triangles
// ---------------------------------------------------------------------------

/// A slope `p/q` of an ideal arc: coprime integers with `q >= 0`, and
/// `1/0` for the vertical arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareySlope {
    pub p: i64,
    pub q: i64,
}

impl FareySlope {
    pub const INFINITY: FareySlope = FareySlope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        let (mut p, mut q) = (p, q);
        if q < 0 {
            p = -p;
            q = -q;
        }
        if q == 0 {
            if p == 0 {
                return Err(Error::Domain("0/0 is not a slope".into()));
            }
            p = 1;
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs());
        if g != 1 {
            return Err(Error::Domain(format!("{p}/{q} is not reduced")));
        }
        Ok(FareySlope { p, q })
    }

    fn normalized(p: i64, q: i64) -> Self {
        let (mut p, mut q) = (p, q);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        FareySlope { p, q }
    }

    /// `ps - rq` for slopes `p/q` and `r/s`.
    pub fn det(self, other: FareySlope) -> i64 {
        self.p * other.q - other.p * self.q
    }
}

impl std::fmt::Display for FareySlope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An ideal triangle of the Farey tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyTriangle(pub [FareySlope; 3]);

impl FareyTriangle {
    /// Validates both Farey invariants: every pair has `ps - rq = +-1`, and
    /// one vertex is the mediant of the other two (up to sign).
    pub fn new(slopes: [FareySlope; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = slopes[i].det(slopes[j]);
                if d.abs() != 1 {
                    return Err(Error::Domain(format!(
                        "slopes {} and {} have determinant {d}",
                        slopes[i], slopes[j]
                    )));
                }
            }
        }
        let is_mediant = |a: FareySlope, b: FareySlope, c: FareySlope| {
            FareySlope::normalized(a.p + b.p, a.q + b.q) == c
                || FareySlope::normalized(a.p - b.p, a.q - b.q) == c
        };
        let [a, b, c] = slopes;
        if !(is_mediant(a, b, c) || is_mediant(b, c, a) || is_mediant(a, c, b)) {
            return Err(Error::Domain("vertices are not in mediant form".into()));
        }
        Ok(FareyTriangle(slopes))
    }

    pub fn base() -> Self {
        FareyTriangle([
            FareySlope::new(0, 1).unwrap(),
            FareySlope::INFINITY,
            FareySlope::new(1, 1).unwrap(),
        ])
    }

    /// Set equality regardless of vertex order.
    pub fn same_triangle(&self, other: &FareyTriangle) -> bool {
        let mut a = self.0;
        let mut b = other.0;
        a.sort();
        b.sort();
        a == b
    }

    pub fn contains(&self, s: FareySlope) -> bool {
        self.0.contains(&s)
    }
}

/// Replaces the vertex opposite `across` by its reflection: the other
/// completion of the edge to a Farey triangle.
pub fn farey_neighbor(t: &FareyTriangle, across: (FareySlope, FareySlope)) -> Result<FareyTriangle> {
    let (a, b) = across;
    if !t.contains(a) || !t.contains(b) || a == b {
        return Err(Error::Domain(format!("({a}, {b}) is not an edge of the triangle")));
    }
    let u = *t
        .0
        .iter()
        .find(|s| **s != a && **s != b)
        .ok_or_else(|| Error::Domain("degenerate triangle".into()))?;
    let sum = FareySlope::normalized(a.p + b.p, a.q + b.q);
    let diff = FareySlope::normalized(a.p - b.p, a.q - b.q);
    let reflected = if u == sum {
        diff
    } else if u == diff {
        sum
    } else {
        return Err(Error::InternalInvariant(format!(
            "vertex {u} is neither mediant nor anti-mediant of ({a}, {b})"
        )));
    };
    FareyTriangle::new([a, b, reflected])
}

/// A triangulation of the surface, addressed by the slopes its three
/// colored edges carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangulationAddress {
    pub yellow: FareySlope,
    pub cyan: FareySlope,
    pub magenta: FareySlope,
}

impl TriangulationAddress {
    /// The base marking: yellow on `1/0`, cyan on `0/1`, magenta on `1/1`.
    pub fn base() -> Self {
        TriangulationAddress {
            yellow: FareySlope::INFINITY,
            cyan: FareySlope::new(0, 1).unwrap(),
            magenta: FareySlope::new(1, 1).unwrap(),
        }
    }

    pub fn triangle(&self) -> FareyTriangle {
        FareyTriangle([self.yellow, self.cyan, self.magenta])
    }

    pub fn slope(&self, c: EdgeColor) -> FareySlope {
        match c {
            EdgeColor::Yellow => self.yellow,
            EdgeColor::Cyan => self.cyan,
            EdgeColor::Magenta => self.magenta,
        }
    }

    /// Address after flipping the given edge: that color's slope is
    /// reflected across the other two, which keep their slopes.
    pub fn flip(&self, c: EdgeColor) -> Result<Self> {
        let t = self.triangle();
        let (keep1, keep2) = match c {
            EdgeColor::Yellow => (self.cyan, self.magenta),
            EdgeColor::Cyan => (self.yellow, self.magenta),
            EdgeColor::Magenta => (self.yellow, self.cyan),
        };
        let flipped = farey_neighbor(&t, (keep1, keep2))?;
        let new_slope = *flipped
            .0
            .iter()
            .find(|s| **s != keep1 && **s != keep2)
            .ok_or_else(|| Error::InternalInvariant("reflection lost".into()))?;
        let mut out = *self;
        match c {
            EdgeColor::Yellow => out.yellow = new_slope,
            EdgeColor::Cyan => out.cyan = new_slope,
            EdgeColor::Magenta => out.magenta = new_slope,
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// The coordinate flip
// ---------------------------------------------------------------------------

/// Flags of the re-marked triangulation, ready for triple-ratio extraction:
/// the new marked triangle's three flags, the full flag of the apex across
/// the new distinguished edge, and the apex points across the other two
/// edges.
struct Marking<S> {
    pts: [Vec3<S>; 3],
    cov: [Covec3<S>; 3],
    w01: Vec3<S>,
    w01_cov: Covec3<S>,
    w12: Vec3<S>,
    w02: Vec3<S>,
}

fn marking_after_flip<S: Scalar>(p: &FgParamsT11<S>, color: EdgeColor) -> Result<Marking<S>> {
    let cfg = neighbor_configs(p)?;
    let h = generators(p)?;
    let dev = crate::holonomy::DevConfig::new(p);
    let v = &dev.verts;
    let c = &dev.tangents;
    let u = &cfg.u;
    let w = &cfg.u_cov;
    Ok(match color {
        EdgeColor::Yellow => Marking {
            pts: [v[2].clone(), u[2].clone(), v[0].clone()],
            cov: [c[2].clone(), w[2].clone(), c[0].clone()],
            w01: v[1].clone(),
            w01_cov: c[1].clone(),
            w12: h.g.inverse()?.mul_vec(&u[2]),
            w02: h.r.inverse()?.mul_vec(&v[2]),
        },
        EdgeColor::Cyan => Marking {
            pts: [v[1].clone(), v[0].clone(), u[0].clone()],
            cov: [c[1].clone(), c[0].clone(), w[0].clone()],
            w01: h.g.inverse()?.mul_vec(&v[0]),
            w01_cov: h.g.vec_mul(&c[0]),
            w12: v[2].clone(),
            w02: h.b.inverse()?.mul_vec(&u[0]),
        },
        EdgeColor::Magenta => Marking {
            pts: [v[1].clone(), v[0].clone(), u[1].clone()],
            cov: [c[1].clone(), c[0].clone(), w[1].clone()],
            w01: h.r.mul_vec(&v[1]),
            w01_cov: h.r.inverse()?.vec_mul(&c[1]),
            w12: h.b.mul_vec(&u[1]),
            w02: v[2].clone(),
        },
    })
}

/// Triple ratio of three point-line flags assembled in order.
fn tr6<S: Scalar>(
    a: (&Vec3<S>, &Covec3<S>),
    b: (&Vec3<S>, &Covec3<S>),
    c: (&Vec3<S>, &Covec3<S>),
) -> Result<S> {
    let lines = Mat3::from_covec_rows(a.1, b.1, c.1);
    let points = Mat3::from_cols(a.0, b.0, c.0);
    triple_ratio(&lines, &points)
}

/// The cubes of the eight parameters of the flipped marking, in tuple order
/// `(t012, t210, e01, e10, e02, e20, e12, e21)`. Exact for rational input.
pub fn flip_parameter_cubes<S: Scalar>(
    p: &FgParamsT11<S>,
    color: EdgeColor,
) -> Result<[S; 8]> {
    let mk = marking_after_flip(p, color)?;
    let [p0, p1, p2] = &mk.pts;
    let [q0, q1, q2] = &mk.cov;
    let line = |a: &Vec3<S>, b: &Vec3<S>| a.join(b);

    let t012_c = triple_ratio(
        &Mat3::from_covec_rows(q0, q1, q2),
        &Mat3::from_cols(p0, p1, p2),
    )?;
    let t210_c = triple_ratio(
        &Mat3::from_covec_rows(&mk.w01_cov, q1, q0),
        &Mat3::from_cols(&mk.w01, p1, p0),
    )?;
    let e01_c = tr6(
        (p0, q0),
        (&mk.w01, &line(&mk.w01, p1)),
        (p2, &line(p2, p1)),
    )?;
    let e10_c = tr6(
        (p1, q1),
        (p2, &line(p2, p0)),
        (&mk.w01, &line(&mk.w01, p0)),
    )?;
    let e12_c = tr6(
        (p1, q1),
        (&mk.w12, &line(&mk.w12, p2)),
        (p0, &line(p0, p2)),
    )?;
    let e21_c = tr6(
        (p2, q2),
        (p0, &line(p0, p1)),
        (&mk.w12, &line(&mk.w12, p1)),
    )?;
    let e20_c = tr6(
        (p2, q2),
        (&mk.w02, &line(&mk.w02, p0)),
        (p1, &line(p1, p0)),
    )?;
    let e02_c = tr6(
        (p0, q0),
        (p1, &line(p1, p2)),
        (&mk.w02, &line(&mk.w02, p2)),
    )?;
    Ok([t012_c, t210_c, e01_c, e10_c, e02_c, e20_c, e12_c, e21_c])
}

/// Flips one edge of the marked triangulation, returning the tuple of the
/// re-marked structure. Requires the finite-volume locus.
///
/// The parameter cubes transform rationally, but the parameters themselves
/// are cube roots: exact mode fails with [`Error::CubeRootNotExact`] whenever
/// a cube is not a perfect cube (the generic situation), in which case the
/// caller should convert to validated floats and retry.
pub fn flip<S: Scalar>(p: &FgParamsT11<S>, color: EdgeColor, tol: &S) -> Result<FgParamsT11<S>> {
    if validate_t11(p, tol)?.verdict == LocusVerdict::Violated {
        return Err(Error::Constraint("flip requires the finite-volume locus".into()));
    }
    let cubes = flip_parameter_cubes(p, color)?;
    let mut entries: Vec<S> = Vec::with_capacity(8);
    for c in cubes {
        if c.sign().map_err(|_| {
            Error::Indeterminate("flipped parameter cube cannot be certified positive".into())
        })? != Sign::Pos
        {
            return Err(Error::Degenerate("flipped parameter cube is not positive".into()));
        }
        entries.push(c.cbrt()?);
    }
    FgParamsT11::new(entries.try_into().map_err(|_| Error::InternalInvariant("arity".into()))?)
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

/// Which cell of the tessellated moduli space a point occupies.
#[derive(Debug, Clone, PartialEq)]
pub struct CellDescriptor {
    pub address: TriangulationAddress,
    /// Edges on which the hull is flat; empty means the open top cell.
    pub flat_edges: Vec<EdgeColor>,
    /// Flat decisions that relied on the tolerance band.
    pub tolerance_warnings: Vec<EdgeColor>,
}

/// Repeatedly flips edges with bending `< 1` (colorwise-smallest first)
/// until every bending is `>= 1`. Returns the cell descriptor and the flip
/// trace from the base triangulation.
pub fn canonicalize<S: Scalar>(
    p: &FgParamsT11<S>,
    max_flips: u32,
    tol: &S,
) -> Result<(CellDescriptor, Vec<EdgeColor>)> {
    if validate_t11(p, tol)?.verdict == LocusVerdict::Violated {
        return Err(Error::Constraint(
            "canonicalization requires the finite-volume locus".into(),
        ));
    }
    let mut current = p.clone();
    let mut address = TriangulationAddress::base();
    let mut trace: Vec<EdgeColor> = Vec::new();
    loop {
        let h = generators(&current)?;
        let b = bendings_with(&current, &h)?;
        let d = classify_bendings(&b, tol)?;
        let violated = EdgeColor::ALL
            .into_iter()
            .find(|&c| d.get(c) == EdgeStatus::Violated);
        match violated {
            None => {
                return Ok((
                    CellDescriptor {
                        address,
                        flat_edges: d.flat_edges(),
                        tolerance_warnings: d.tolerance_warnings,
                    },
                    trace,
                ));
            }
            Some(c) => {
                if trace.len() as u32 >= max_flips {
                    return Err(Error::NonTermination { max_flips });
                }
                current = flip(&current, c, tol)?;
                address = address.flip(c)?;
                trace.push(c);
            }
        }
    }
}
