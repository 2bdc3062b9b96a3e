//! Cloverleaf-patch normalization, boundary approximation of the developed
//! domain, containment certification, and SVG rendering.
//!
//! The patch is the affine chart `{v : omega.v = 1}`. The chart map `alpha`
//! sends the marked triangle's vertices to the cube roots of unity
//! (`V2 -> 1`, `V0 -> e^{2 pi i/3}`, `V1 -> e^{-2 pi i/3}`; the distinguished
//! edge's endpoints go to the primitive roots). In these coordinates the
//! whole domain sits inside the three unit discs centered at the cube roots
//! of `-1`, which is what [`certify_containment`] checks on the sampled
//! boundary.
//!
//! This is the rendering layer: holonomy matrices are computed in the
//! caller's scalar mode and then everything runs in `f64`, whose error is
//! orders of magnitude below the certification tolerances used here.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::cells::support_covector;
use crate::error::{Error, Result};
use crate::holonomy::generators;
use crate::scalar::Scalar;
use crate::structure::FgParamsT11;

/// Hard ceiling on the word-length budget.
pub const MAX_DEPTH: u32 = 10;

/// Rendering viewport, a centered square.
pub const VIEWPORT_HALF: f64 = 2.2;

const SQRT3_2: f64 = 0.8660254037844386;

/// The cube roots of unity in the frozen vertex assignment order
/// `(alpha(V0), alpha(V1), alpha(V2))`.
pub const UNITY_ROOTS: [(f64, f64); 3] = [(-0.5, SQRT3_2), (-0.5, -SQRT3_2), (1.0, 0.0)];

/// The cube roots of `-1` (centers of the guard discs).
pub const GUARD_CENTERS: [(f64, f64); 3] = [(0.5, SQRT3_2), (0.5, -SQRT3_2), (-1.0, 0.0)];

/// The affine chart of a structure.
#[derive(Debug, Clone)]
pub struct CloverPatch {
    pub omega: [f64; 3],
    /// 2x3 linear map; `alpha([v]) = (a . v) / (omega . v)`.
    a: [[f64; 3]; 2],
    /// 3x3 affine section: `(x, y, 1) -> v` with `omega . v = 1`.
    section: [[f64; 3]; 3],
}

fn mat3_inv(m: &[[f64; 3]; 3]) -> Result<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-300 {
        return Err(Error::Degenerate("singular chart matrix".into()));
    }
    let c = |r1: usize, c1: usize, r2: usize, c2: usize| {
        m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
    };
    Ok([
        [c(1, 1, 2, 2) / det, c(0, 2, 2, 1) / det, c(0, 1, 1, 2) / det],
        [c(1, 2, 2, 0) / det, c(0, 0, 2, 2) / det, c(0, 2, 1, 0) / det],
        [c(1, 0, 2, 1) / det, c(0, 1, 2, 0) / det, c(0, 0, 1, 1) / det],
    ])
}

fn mat3_mul_vec(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

impl CloverPatch {
    pub fn new(omega: [f64; 3]) -> Result<Self> {
        if omega.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Domain("support covector must be positive".into()));
        }
        // alpha = T . diag(omega) where T's columns are the target images of
        // the basis directions.
        let t = [
            [UNITY_ROOTS[0].0, UNITY_ROOTS[1].0, UNITY_ROOTS[2].0],
            [UNITY_ROOTS[0].1, UNITY_ROOTS[1].1, UNITY_ROOTS[2].1],
        ];
        let mut a = [[0.0; 3]; 2];
        for i in 0..2 {
            for j in 0..3 {
                a[i][j] = t[i][j] * omega[j];
            }
        }
        // Section: solve S (x_k, y_k, 1)^t = e_k / omega_k.
        let p = [
            [UNITY_ROOTS[0].0, UNITY_ROOTS[1].0, UNITY_ROOTS[2].0],
            [UNITY_ROOTS[0].1, UNITY_ROOTS[1].1, UNITY_ROOTS[2].1],
            [1.0, 1.0, 1.0],
        ];
        let vmat = [
            [1.0 / omega[0], 0.0, 0.0],
            [0.0, 1.0 / omega[1], 0.0],
            [0.0, 0.0, 1.0 / omega[2]],
        ];
        let section = mat3_mul(&vmat, &mat3_inv(&p)?);
        Ok(CloverPatch { omega, a, section })
    }

    /// Chart coordinates of a projective point.
    pub fn map_point(&self, v: &[f64; 3]) -> Result<(f64, f64)> {
        let w = self.omega[0] * v[0] + self.omega[1] * v[1] + self.omega[2] * v[2];
        let n = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if !w.is_finite() || w.abs() <= 1e-14 * n {
            return Err(Error::Degenerate("point on the chart's line at infinity".into()));
        }
        let x = (self.a[0][0] * v[0] + self.a[0][1] * v[1] + self.a[0][2] * v[2]) / w;
        let y = (self.a[1][0] * v[0] + self.a[1][1] * v[1] + self.a[1][2] * v[2]) / w;
        Ok((x, y))
    }

    /// Chart-coordinate coefficients `(a, b, c)` of a projective line:
    /// the image is `{(x, y) : a x + b y + c = 0}`.
    pub fn map_line(&self, cov: &[f64; 3]) -> [f64; 3] {
        let s = &self.section;
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = cov[0] * s[0][j] + cov[1] * s[1][j] + cov[2] * s[2][j];
        }
        out
    }
}

/// Builds the chart of a finite-volume point.
pub fn clover_patch<S: Scalar>(p: &FgParamsT11<S>) -> Result<CloverPatch> {
    let om = support_covector(p);
    CloverPatch::new([om.0[0].to_f64(), om.0[1].to_f64(), om.0[2].to_f64()])
}

/// The diagonal matrix whose product with the vertex rotation preserves the
/// patch exactly; its chart conjugate is the order-three rotation.
pub fn rho_matrix<S: Scalar>(p: &FgParamsT11<S>) -> [[f64; 3]; 3] {
    let f = |x: &S| x.to_f64();
    let r0 = f(&p.e20) * f(&p.e02) / (f(&p.e12) * f(&p.e10));
    let r1 = f(&p.e01) * f(&p.e10) / (f(&p.e20) * f(&p.e21));
    let r2 = f(&p.e12) * f(&p.e21) / (f(&p.e01) * f(&p.e02));
    [[r0, 0.0, 0.0], [0.0, r1, 0.0], [0.0, 0.0, r2]]
}

/// The order-three symmetry of the chart picture.
#[derive(Debug, Clone)]
pub struct RhoSymmetry {
    pub rho: [[f64; 3]; 3],
    /// Plane map `z -> B z + t`.
    pub linear: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl RhoSymmetry {
    pub fn apply(&self, z: (f64, f64)) -> (f64, f64) {
        (
            self.linear[0][0] * z.0 + self.linear[0][1] * z.1 + self.offset[0],
            self.linear[1][0] * z.0 + self.linear[1][1] * z.1 + self.offset[1],
        )
    }
}

/// Conjugates the patch-preserving matrix `rho . sigma^-1` into chart
/// coordinates. The result is the rotation by `2 pi / 3` about the origin;
/// the rotation property is asserted by the test suite, not assumed.
pub fn rho_symmetry<S: Scalar>(p: &FgParamsT11<S>) -> Result<RhoSymmetry> {
    let patch = clover_patch(p)?;
    let rho = rho_matrix(p);
    let sigma_inv = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
    let m = mat3_mul(&rho, &sigma_inv);
    // Images of (0,0), (1,0), (0,1) determine the affine map.
    let img = |x: f64, y: f64| -> Result<(f64, f64)> {
        let v = mat3_mul_vec(&patch.section, &[x, y, 1.0]);
        patch.map_point(&mat3_mul_vec(&m, &v))
    };
    let o = img(0.0, 0.0)?;
    let ex = img(1.0, 0.0)?;
    let ey = img(0.0, 1.0)?;
    Ok(RhoSymmetry {
        rho,
        linear: [[ex.0 - o.0, ey.0 - o.0], [ex.1 - o.1, ey.1 - o.1]],
        offset: [o.0, o.1],
    })
}

/// Sampled boundary data of the developed domain.
#[derive(Debug, Clone)]
pub struct DomainApproximation {
    pub boundary_points: Vec<(f64, f64)>,
    pub tangent_segments: Vec<((f64, f64), (f64, f64))>,
    pub depth: u32,
}

fn round_key(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

/// Clips the line `a x + b y + c = 0` to the viewport square; returns the
/// chord if the line crosses it.
fn clip_line_to_viewport(l: [f64; 3]) -> Option<((f64, f64), (f64, f64))> {
    let h = VIEWPORT_HALF;
    let [a, b, c] = l;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let push = |x: f64, y: f64, pts: &mut Vec<(f64, f64)>| {
        let inside = x >= -h - 1e-12 && x <= h + 1e-12 && y >= -h - 1e-12 && y <= h + 1e-12;
        let dup = pts
            .iter()
            .any(|(px, py)| (px - x).abs() < 1e-9 && (py - y).abs() < 1e-9);
        if inside && !dup {
            pts.push((x, y));
        }
    };
    if b.abs() > 1e-300 {
        for x in [-h, h] {
            push(x, (-c - a * x) / b, &mut pts);
        }
    }
    if a.abs() > 1e-300 {
        for y in [-h, h] {
            push((-c - b * y) / a, y, &mut pts);
        }
    }
    if pts.len() >= 2 {
        Some((pts[0], pts[1]))
    } else {
        None
    }
}

/// Enumerates the reduced words of length at most `depth` in the free group
/// on two of the generators (the third is their consequence) and maps the
/// orbit of the triangle's vertex flags through the chart.
pub fn approximate_domain<S: Scalar>(
    p: &FgParamsT11<S>,
    depth: u32,
) -> Result<DomainApproximation> {
    if depth > MAX_DEPTH {
        return Err(Error::Budget(format!("depth {depth} exceeds the maximum {MAX_DEPTH}")));
    }
    let patch = clover_patch(p)?;
    let h = generators(p)?;
    let to_f = |m: &crate::projlin::Mat3<S>| -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = m.at(i, j).to_f64();
            }
        }
        out
    };
    let r = to_f(&h.r);
    let g = to_f(&h.g);
    let ri = mat3_inv(&r)?;
    let gi = mat3_inv(&g)?;
    let alphabet = [r, ri, g, gi];
    let inverse_of = [1usize, 0, 3, 2];

    // Base flags in f64.
    let t012 = p.t012.to_f64();
    let verts: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let tangents: [[f64; 3]; 3] = [
        [0.0, t012, 1.0],
        [1.0, 0.0, t012],
        [t012, 1.0, 0.0],
    ];

    let mut point_keys: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut seg_keys: BTreeSet<(i64, i64, i64)> = BTreeSet::new();
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();

    let mut emit = |word: &[[f64; 3]; 3],
                    word_inv: &[[f64; 3]; 3]|
     -> Result<()> {
        for v in &verts {
            let (x, y) = patch.map_point(&mat3_mul_vec(word, v))?;
            if point_keys.insert((round_key(x), round_key(y))) {
                points.push((x, y));
            }
        }
        for cov in &tangents {
            // Lines transform by the inverse on the right.
            let img = [
                cov[0] * word_inv[0][0] + cov[1] * word_inv[1][0] + cov[2] * word_inv[2][0],
                cov[0] * word_inv[0][1] + cov[1] * word_inv[1][1] + cov[2] * word_inv[2][1],
                cov[0] * word_inv[0][2] + cov[1] * word_inv[1][2] + cov[2] * word_inv[2][2],
            ];
            let l = patch.map_line(&img);
            let norm = (l[0] * l[0] + l[1] * l[1]).sqrt();
            if norm < 1e-300 {
                continue;
            }
            let sgn = if l[0] < 0.0 || (l[0] == 0.0 && l[1] < 0.0) { -1.0 } else { 1.0 };
            let key = (
                round_key(sgn * l[0] / norm),
                round_key(sgn * l[1] / norm),
                round_key(sgn * l[2] / norm),
            );
            if seg_keys.insert(key) {
                if let Some(seg) = clip_line_to_viewport(l) {
                    segments.push(seg);
                }
            }
        }
        Ok(())
    };

    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    emit(&id, &id)?;
    // BFS over reduced words: (matrix, inverse matrix, last letter).
    let mut frontier: Vec<([[f64; 3]; 3], [[f64; 3]; 3], usize)> = Vec::new();
    for (i, m) in alphabet.iter().enumerate() {
        let mi = alphabet[inverse_of[i]];
        emit(m, &mi)?;
        frontier.push((*m, mi, i));
    }
    for _ in 2..=depth {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for (w, wi, last) in &frontier {
            for (i, m) in alphabet.iter().enumerate() {
                if i == inverse_of[*last] {
                    continue;
                }
                let nw = mat3_mul(w, m);
                let nwi = mat3_mul(&alphabet[inverse_of[i]], wi);
                emit(&nw, &nwi)?;
                next.push((nw, nwi, i));
            }
        }
        frontier = next;
    }
    Ok(DomainApproximation {
        boundary_points: points,
        tangent_segments: segments,
        depth,
    })
}

/// Containment check against the guard-disc region and the inscribed
/// triangle.
#[derive(Debug, Clone)]
pub struct ContainmentReport {
    /// `max over points (distance to nearest cube root of -1) - 1`; the
    /// region containment passes iff this is `<= tolerance`.
    pub max_margin: f64,
    pub region_pass: bool,
    /// Convex hull of the boundary points contains the cube roots of unity.
    pub triangle_pass: bool,
    pub tolerance: f64,
}

impl ContainmentReport {
    pub fn pass(&self) -> bool {
        self.region_pass && self.triangle_pass
    }
}

fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len() * 2);
    for &p in pts.iter().chain(pts.iter().rev()) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn point_in_convex_hull(hull: &[(f64, f64)], q: (f64, f64), tol: f64) -> bool {
    if hull.len() < 3 {
        return false;
    }
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
        if cross < -tol {
            return false;
        }
    }
    true
}

pub fn certify_containment(d: &DomainApproximation, tolerance: f64) -> ContainmentReport {
    let mut max_margin = f64::NEG_INFINITY;
    for &(x, y) in &d.boundary_points {
        let dist = GUARD_CENTERS
            .iter()
            .map(|&(cx, cy)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        max_margin = max_margin.max(dist - 1.0);
    }
    if d.boundary_points.is_empty() {
        max_margin = 0.0;
    }
    let hull = convex_hull(&d.boundary_points);
    let triangle_pass = UNITY_ROOTS
        .iter()
        .all(|&r| point_in_convex_hull(&hull, r, 1e-9));
    ContainmentReport {
        max_margin,
        region_pass: max_margin <= tolerance,
        triangle_pass,
        tolerance,
    }
}

/// Rendering options.
#[derive(Debug, Clone)]
pub struct SvgStyle {
    pub size_px: u32,
    pub draw_tangents: bool,
    pub stroke_width: f64,
    pub point_radius: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            size_px: 600,
            draw_tangents: true,
            stroke_width: 0.008,
            point_radius: 0.012,
        }
    }
}

fn fmt_coord(x: f64) -> String {
    // Fixed-point formatting keeps output byte-identical across runs.
    format!("{:.6}", x + 0.0) // normalize -0.0
}

/// Renders the approximation: guard discs, inscribed triangle, tangent
/// chords, boundary points. Deterministic byte-for-byte for equal input.
pub fn render_svg(d: &DomainApproximation, style: &SvgStyle) -> String {
    let h = VIEWPORT_HALF;
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="{1} {1} {2} {2}">"#,
        style.size_px,
        fmt_coord(-h),
        fmt_coord(2.0 * h)
    );
    out.push('\n');
    // Flip the y axis so the picture has the usual orientation.
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    let _ = writeln!(
        out,
        r#"<rect x="{0}" y="{0}" width="{1}" height="{1}" fill="white"/>"#,
        fmt_coord(-h),
        fmt_coord(2.0 * h)
    );
    for &(cx, cy) in &GUARD_CENTERS {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="1" fill="none" stroke="#bbbbbb" stroke-width="{}"/>"##,
            fmt_coord(cx),
            fmt_coord(cy),
            fmt_coord(style.stroke_width)
        );
    }
    let tri: Vec<String> = UNITY_ROOTS
        .iter()
        .map(|&(x, y)| format!("{},{}", fmt_coord(x), fmt_coord(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="none" stroke="#2a7fff" stroke-width="{}"/>"##,
        tri.join(" "),
        fmt_coord(style.stroke_width)
    );
    if style.draw_tangents {
        for &((x1, y1), (x2, y2)) in &d.tangent_segments {
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#88cc88" stroke-width="{}"/>"##,
                fmt_coord(x1),
                fmt_coord(y1),
                fmt_coord(x2),
                fmt_coord(y2),
                fmt_coord(style.stroke_width * 0.75)
            );
        }
    }
    for &(x, y) in &d.boundary_points {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#222222"/>"##,
            fmt_coord(x),
            fmt_coord(y),
            fmt_coord(style.point_radius)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
