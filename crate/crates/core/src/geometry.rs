//! Numeric embedding of the N = 5 Adinkra in the curve
//! x1² + x2² + x3² = φx1² + x2² + x4² = (φ+1)x1² + x2² + x5² = 0 in CP⁴,
//! the five maps to the elliptic factors, and a complex chord-tangent group law.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypercube::{faces, Color, Face, Rainbow, Vertex};
use crate::jacobian::point_image;
use crate::morse::DivisorPoint;

pub const TOL: f64 = 1e-9;
/// Squared denominators below this send ν_k to the point at infinity.
pub const INFINITY_TOL: f64 = 1e-12;
/// |x1 − x2| in (TOL, this) is too close to call for the group law.
pub const CONDITION_TOL: f64 = 1e-6;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// ζ = e^{2πi/10}, φ the golden ratio, and the Legendre parameters r_k of E_k.
#[derive(Clone, Copy, Debug)]
pub struct Constants {
    pub zeta: C,
    pub phi: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    pub r: [f64; 5],
}

impl Constants {
    pub fn new() -> Self {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        Constants {
            zeta: C::from_polar(1.0, 2.0 * PI / 10.0),
            phi,
            alpha3: phi,
            alpha4: phi + 1.0,
            r: [phi + 1.0, phi, -phi, phi + 1.0, phi],
        }
    }

    pub fn zeta_pow(&self, m: i32) -> C {
        C::from_polar(1.0, 2.0 * PI * f64::from(m.rem_euclid(10)) / 10.0)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::new()
    }
}

fn consts() -> Constants {
    Constants::new()
}

/// A projective point [x1 : ... : x5].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint(pub [C; 5]);

impl CurvePoint {
    /// Divide by x1 when it is not small, otherwise by the largest coordinate.
    pub fn normalized(&self) -> CurvePoint {
        let max = self.0.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = if self.0[0].norm() > 0.5 * max {
            self.0[0]
        } else {
            *self.0.iter().find(|z| z.norm() == max).expect("nonempty")
        };
        CurvePoint(self.0.map(|z| z / pivot))
    }

    /// Max coordinate distance after normalizing both sides.
    pub fn distance(&self, other: &CurvePoint) -> f64 {
        let (a, b) = (self.normalized(), other.normalized());
        a.0.iter().zip(&b.0).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<[f64; 2]> = self.0.iter().map(|z| [z.re, z.im]).collect();
        coords.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ECPoint {
    Infinity,
    Affine { x: C, y: C },
}

impl ECPoint {
    pub fn distance(&self, other: &ECPoint) -> f64 {
        match (self, other) {
            (ECPoint::Infinity, ECPoint::Infinity) => 0.0,
            (ECPoint::Affine { x, y }, ECPoint::Affine { x: x2, y: y2 }) => {
                (x - x2).norm().max((y - y2).norm())
            }
            _ => f64::INFINITY,
        }
    }

    pub fn approx_eq(&self, other: &ECPoint) -> bool {
        self.distance(other) < TOL
    }
}

impl Serialize for ECPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ECPoint::Infinity => s.serialize_str("infinity"),
            ECPoint::Affine { x, y } => [[x.re, x.im], [y.re, y.im]].serialize(s),
        }
    }
}

/// y² = x(x − 1)(x − r), written y² = x³ + a2·x² + a4·x.
#[derive(Clone, Copy, Debug)]
pub struct EllipticCurve {
    pub r: f64,
}

impl EllipticCurve {
    /// E_k for k = 1..5.
    pub fn factor(k: Color) -> Self {
        EllipticCurve { r: consts().r[k.index()] }
    }

    fn a2(&self) -> f64 {
        -(1.0 + self.r)
    }

    fn a4(&self) -> f64 {
        self.r
    }

    pub fn rhs(&self, x: C) -> C {
        x * (x - 1.0) * (x - self.r)
    }

    pub fn residual(&self, p: &ECPoint) -> f64 {
        match *p {
            ECPoint::Infinity => 0.0,
            ECPoint::Affine { x, y } => (y * y - self.rhs(x)).norm(),
        }
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match *p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::Affine { x, y: -y },
        }
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (ECPoint::Infinity, _) => return Ok(*q),
            (_, ECPoint::Infinity) => return Ok(*p),
            (ECPoint::Affine { x, y }, ECPoint::Affine { x: x2, y: y2 }) => (x, y, x2, y2),
        };
        let dx = (x2 - x1).norm();
        let slope = if dx < TOL {
            if (y1 + y2).norm() < TOL {
                return Ok(ECPoint::Infinity);
            }
            if (y1 - y2).norm() >= TOL {
                return Err(Error::IllConditioned(format!("equal x but y {y1} vs {y2}")));
            }
            (3.0 * x1 * x1 + 2.0 * self.a2() * x1 + self.a4()) / (2.0 * y1)
        } else if dx < CONDITION_TOL {
            return Err(Error::IllConditioned(format!("x coordinates {x1} and {x2} nearly coincide")));
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = slope * slope - self.a2() - x1 - x2;
        let y3 = -(y1 + slope * (x3 - x1));
        Ok(ECPoint::Affine { x: x3, y: y3 })
    }

    /// m·P by double-and-add; negative m negates.
    pub fn mul(&self, m: i64, p: &ECPoint) -> Result<ECPoint> {
        let mut base = if m < 0 { self.neg(p) } else { *p };
        let mut k = m.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Smallest m in 1..=max with m·P = O.
    pub fn order(&self, p: &ECPoint, max: u32) -> Result<Option<u32>> {
        let mut acc = *p;
        for m in 1..=max {
            if acc == ECPoint::Infinity {
                return Ok(Some(m));
            }
            acc = self.add(&acc, p)?;
        }
        Ok(None)
    }

    /// Legendre j-invariant 256(λ² − λ + 1)³ / (λ²(λ − 1)²).
    pub fn j_invariant(&self) -> f64 {
        let l = self.r;
        256.0 * (l * l - l + 1.0).powi(3) / (l * l * (l - 1.0).powi(2))
    }
}

pub fn ec_add(p: &ECPoint, q: &ECPoint, k: Color) -> Result<ECPoint> {
    EllipticCurve::factor(k).add(p, q)
}

pub fn ec_neg(p: &ECPoint) -> ECPoint {
    match *p {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => ECPoint::Affine { x, y: -y },
    }
}

pub fn ec_mul(m: i64, p: &ECPoint, k: Color) -> Result<ECPoint> {
    EllipticCurve::factor(k).mul(m, p)
}

pub fn j_invariant(k: Color) -> f64 {
    EllipticCurve::factor(k).j_invariant()
}

/// Sign applied to coordinate `i` (zero-based) after conjugating across an edge of color `j`.
const EDGE_SIGNS: [[f64; 5]; 5] = [
    [1.0, -1.0, -1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, 1.0, -1.0],
    [1.0, -1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0, -1.0],
];

/// The image of (1,1,1,1,1): [1 : ζ²√φ : ζ⁹ : iζ⁶ : ζ⁸√φ].
pub fn base_point() -> CurvePoint {
    let c = consts();
    let sp = c.phi.sqrt();
    CurvePoint([C::new(1.0, 0.0), c.zeta_pow(2) * sp, c.zeta_pow(9), I * c.zeta_pow(6), c.zeta_pow(8) * sp])
}

/// Move across one edge of color `j`.
pub fn cross_edge(p: &CurvePoint, j: Color) -> CurvePoint {
    let signs = EDGE_SIGNS[j.index()];
    let mut out = p.0;
    for (z, s) in out.iter_mut().zip(signs) {
        *z = z.conj() * s;
    }
    CurvePoint(out)
}

/// Walk from the base point across the given colors in order.
pub fn embed_along(path: &[Color]) -> CurvePoint {
    path.iter().fold(base_point(), |p, &j| cross_edge(&p, j))
}

fn check_five(v: Vertex) -> Result<()> {
    if v.n() == 5 {
        Ok(())
    } else {
        Err(Error::NeedsFive(v.n()))
    }
}

pub fn embed_vertex(v: Vertex) -> Result<CurvePoint> {
    check_five(v)?;
    let path: Vec<Color> = Rainbow::new(5)?.colors().filter(|&j| v.coord(j) == 0).collect();
    Ok(embed_along(&path))
}

/// Real and imaginary parts of a face-center coordinate; sign is fixed by the adjacent vertex.
#[derive(Clone, Copy)]
enum Slot {
    One,
    Zero,
    Real(f64),
    Imag(f64),
}

fn fiber(first_color: u8) -> [Slot; 5] {
    use Slot::*;
    let p = consts().phi;
    match first_color {
        5 => [One, Zero, Imag(1.0), Imag(p.sqrt()), Imag((p + 1.0).sqrt())],
        1 => [One, Imag(1.0), Zero, Imag((p - 1.0).sqrt()), Imag(p.sqrt())],
        2 => [One, Imag(p.sqrt()), Real((p - 1.0).sqrt()), Zero, Imag(1.0)],
        3 => [One, Imag((p + 1.0).sqrt()), Real(p.sqrt()), Real(1.0), Zero],
        _ => [Zero, One, Imag(1.0), Imag(1.0), Imag(1.0)],
    }
}

/// Center of `face`, with each ± chosen to match the sign of the same part of `adjacent`.
pub fn embed_face_center(face: &Face, adjacent: Vertex) -> Result<CurvePoint> {
    check_five(adjacent)?;
    if !face.contains(adjacent) {
        return Err(Error::NotOnFace { vertex: adjacent, face: face.to_string() });
    }
    let slots = fiber(face.colors.0.get());
    let raw = embed_vertex(adjacent)?;
    // the (4,5) fiber lives in the chart x2 = 1
    let pivot = if matches!(slots[0], Slot::Zero) { raw.0[1] } else { raw.0[0] };
    let vert = raw.0.map(|z| z / pivot);
    let mut out = [C::new(0.0, 0.0); 5];
    for (i, slot) in slots.iter().enumerate() {
        out[i] = match *slot {
            Slot::One => C::new(1.0, 0.0),
            Slot::Zero => C::new(0.0, 0.0),
            Slot::Real(m) => C::new(forced_sign(vert[i].re, i)? * m, 0.0),
            Slot::Imag(m) => C::new(0.0, forced_sign(vert[i].im, i)? * m),
        };
    }
    Ok(CurvePoint(out))
}

fn forced_sign(part: f64, coord: usize) -> Result<f64> {
    if part.abs() < 1e-6 {
        return Err(Error::UnforcedSign(coord + 1));
    }
    Ok(part.signum())
}

/// |x1²+x2²+x3²|, |φx1²+x2²+x4²|, |(φ+1)x1²+x2²+x5²| on the normalized point.
pub fn curve_residual(p: &CurvePoint) -> [f64; 3] {
    let phi = consts().phi;
    let x = p.normalized().0.map(|z| z * z);
    [
        (x[0] + x[1] + x[2]).norm(),
        (phi * x[0] + x[1] + x[3]).norm(),
        ((phi + 1.0) * x[0] + x[1] + x[4]).norm(),
    ]
}

/// The rational map X → E_k.
pub fn nu(p: &CurvePoint, k: Color) -> ECPoint {
    let c = consts();
    let phi = c.phi;
    let wide = 2.0 * phi + 1.0;
    let x = p.normalized().0;
    let (den, nx, ny) = match k.get() {
        1 => (x[4], -wide * x[0] * x[0], wide * x[1] * x[2] * x[3]),
        2 => (x[0], x[1] * x[1], I * x[2] * x[3] * x[4]),
        3 => (x[1], wide * x[2] * x[2], I * wide * x[0] * x[3] * x[4]),
        4 => (x[2], (phi + 1.0) * x[3] * x[3], I * phi * x[0] * x[1] * x[4]),
        _ => (x[3], -x[4] * x[4], I * x[0] * x[1] * x[2]),
    };
    let den2 = den * den;
    if den2.norm() < INFINITY_TOL {
        return ECPoint::Infinity;
    }
    let shift = match k.get() {
        1 => -phi,
        4 => -phi,
        _ => phi + 1.0,
    };
    ECPoint::Affine { x: nx / den2 + shift, y: ny / (den2 * den) }
}

fn colors() -> impl Iterator<Item = Color> {
    Rainbow::new(5).expect("n = 5").colors()
}

fn step(k: Color, by: i32) -> Color {
    Rainbow::new(5).expect("n = 5").step(k, by)
}

/// The 72 points: 32 vertices and 40 face centers (embedded from their base vertex).
pub fn all_points() -> Result<Vec<(DivisorPoint, CurvePoint)>> {
    let mut out = Vec::with_capacity(72);
    for v in Vertex::all(5)? {
        out.push((DivisorPoint::Vertex(v), embed_vertex(v)?));
    }
    for f in faces(5)? {
        out.push((DivisorPoint::FaceCenter(f), embed_face_center(&f, f.base)?));
    }
    Ok(out)
}

/// E∞, E4, E2 on curve k: images of w0, of f_{k−2,k−1}(w0) and of f_{k,k+1}(w0).
pub fn generators(k: Color) -> Result<[ECPoint; 3]> {
    let w0 = Vertex::ones(5)?;
    let face = |j: Color| Face::through(w0, (j, step(j, 1)));
    Ok([
        nu(&embed_vertex(w0)?, k),
        nu(&embed_face_center(&face(step(k, -2)), w0)?, k),
        nu(&embed_face_center(&face(k), w0)?, k),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub point: String,
    pub k: u8,
    pub expected: ECPoint,
    pub actual: ECPoint,
    pub error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub checks: Vec<PointCheck>,
    pub passed: usize,
    pub total: usize,
    pub worst_error: f64,
}

/// Numeric ν_k(p) against the combinatorial image expanded on the numeric generators.
pub fn cross_validate() -> Result<CrossValidation> {
    let points = all_points()?;
    let mut checks = Vec::with_capacity(360);
    for k in colors() {
        let curve = EllipticCurve::factor(k);
        let [e_inf, e4, e2] = generators(k)?;
        for (p, cp) in &points {
            let g = point_image(p, k)?;
            let expected = [
                curve.mul(g.a, &e_inf)?,
                curve.mul(i64::from(g.b()), &e4)?,
                curve.mul(i64::from(g.c()), &e2)?,
            ]
            .iter()
            .try_fold(ECPoint::Infinity, |acc, q| curve.add(&acc, q))?;
            let actual = nu(cp, k);
            let error = expected.distance(&actual);
            checks.push(PointCheck {
                point: p.to_string(),
                k: k.get(),
                expected,
                actual,
                error,
                passed: error < TOL,
            });
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let worst_error = checks.iter().map(|c| c.error).fold(0.0, f64::max);
    Ok(CrossValidation { total: checks.len(), passed, worst_error, checks })
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub value: f64,
    pub passed: bool,
}

/// Everything the geometry suite checks, in one report.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub worst_curve_residual: f64,
    pub worst_weierstrass_residual: f64,
    pub checks: Vec<NamedCheck>,
    pub cross_validation: CrossValidation,
    pub passed: bool,
}

fn check(checks: &mut Vec<NamedCheck>, name: String, value: f64, passed: bool) {
    checks.push(NamedCheck { name, value, passed });
}

pub fn geometry_report() -> Result<GeometryReport> {
    let points = all_points()?;
    let mut checks = Vec::new();

    let worst_curve_residual = points
        .iter()
        .flat_map(|(_, p)| curve_residual(p))
        .fold(0.0, f64::max);
    check(&mut checks, "curve residuals of 72 points".into(), worst_curve_residual, worst_curve_residual < TOL);

    let mut edge_err: f64 = 0.0;
    for v in Vertex::all(5)? {
        for (j, w) in v.neighbors() {
            edge_err = edge_err.max(cross_edge(&embed_vertex(v)?, j).distance(&embed_vertex(w)?));
        }
    }
    check(&mut checks, "edge sign table holds on all 80 edges".into(), edge_err, edge_err < TOL);

    let mut face_err: f64 = 0.0;
    for f in faces(5)? {
        let first = embed_face_center(&f, f.base)?;
        for m in f.members() {
            face_err = face_err.max(first.distance(&embed_face_center(&f, m)?));
        }
    }
    check(&mut checks, "face centers agree from all four vertices".into(), face_err, face_err < TOL);

    let mut worst_weierstrass_residual: f64 = 0.0;
    for k in colors() {
        let curve = EllipticCurve::factor(k);
        for (_, p) in &points {
            worst_weierstrass_residual = worst_weierstrass_residual.max(curve.residual(&nu(p, k)));
        }
    }
    check(
        &mut checks,
        "images satisfy the Weierstrass equations".into(),
        worst_weierstrass_residual,
        worst_weierstrass_residual < TOL,
    );

    for k in colors() {
        let j = j_invariant(k);
        check(&mut checks, format!("j-invariant of E{k}"), j, (j - 2048.0).abs() < 1e-6);
    }

    let w0 = Vertex::ones(5)?;
    let b0 = Vertex::zero(5)?;
    for k in colors() {
        let curve = EllipticCurve::factor(k);
        let sum = curve.add(&nu(&embed_vertex(b0)?, k), &nu(&embed_vertex(w0)?, k))?;
        let pair = (step(k, -1), k);
        let target = nu(&embed_face_center(&Face::through(w0, pair), w0)?, k);
        let err = sum.distance(&target);
        check(&mut checks, format!("B+ + W+ = F({},{}) on E{k}", pair.0, pair.1), err, err < TOL);
    }

    for k in colors() {
        let curve = EllipticCurve::factor(k);
        let mut ok = true;
        for f in faces(5)? {
            let want = match (i32::from(f.colors.0.get()) - i32::from(k.get())).rem_euclid(5) {
                3 => Some(4),
                4 | 0 | 1 => Some(2),
                _ => Some(1),
            };
            let got = curve.order(&nu(&embed_face_center(&f, f.base)?, k), 8)?;
            ok &= got == want;
        }
        check(&mut checks, format!("face center torsion orders on E{k}"), 0.0, ok);
    }

    for k in colors() {
        let curve = EllipticCurve::factor(k);
        let [_, e4, e2] = generators(k)?;
        let mut torsion = Vec::new();
        for b in 0..4 {
            for c in 0..2 {
                torsion.push(curve.add(&curve.mul(b, &e4)?, &curve.mul(c, &e2)?)?);
            }
        }
        let mut nearest = f64::INFINITY;
        for v in Vertex::all(5)? {
            let doubled = curve.mul(2, &nu(&embed_vertex(v)?, k))?;
            for t in &torsion {
                nearest = nearest.min(doubled.distance(t));
            }
        }
        check(&mut checks, format!("doubled vertex images avoid the small torsion on E{k}"), nearest, nearest > 1e-3);
    }

    let cross_validation = cross_validate()?;
    let passed = checks.iter().all(|c| c.passed) && cross_validation.passed == cross_validation.total;
    Ok(GeometryReport { worst_curve_residual, worst_weierstrass_residual, checks, cross_validation, passed })
}
