//! Color splittings, the group Z × Z/4 × Z/2 on each elliptic factor, and the
//! combinatorial image of a Morse divisor in E_1 × ... × E_5.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heights::HeightFn;
use crate::hypercube::{faces, Color, Face, Rainbow, Vertex};
use crate::morse::{classify_face, vertex_kappa, DivisorPoint, FaceKind, MorseDivisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SplitLabel {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SplitLabel {
    pub fn sign(self) -> i64 {
        match self {
            SplitLabel::Plus => 1,
            SplitLabel::Minus => -1,
        }
    }

    fn from_parity(odd: bool) -> Self {
        if odd {
            SplitLabel::Minus
        } else {
            SplitLabel::Plus
        }
    }
}

impl fmt::Display for SplitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitLabel::Plus => "+",
            SplitLabel::Minus => "-",
        })
    }
}

/// Label of `u` in the `k`-splitting based at `base`: (−1)^{(u_k + u_{k+2}) + (base_k + base_{k+2})}.
pub fn color_split(k: Color, base: Vertex, u: Vertex) -> Result<SplitLabel> {
    let x = base.xor(u)?;
    let far = Rainbow::new(u.n())?.step(k, 2);
    Ok(SplitLabel::from_parity((x.coord(k) + x.coord(far)) % 2 == 1))
}

pub fn total_split(base: Vertex, u: Vertex) -> Result<Vec<SplitLabel>> {
    Rainbow::new(u.n())?.colors().map(|k| color_split(k, base, u)).collect()
}

/// a·e∞ + b·e4 + c·e2 with b mod 4 and c mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElt {
    pub a: i64,
    b: u8,
    c: u8,
}

impl GroupElt {
    pub const IDENTITY: GroupElt = GroupElt { a: 0, b: 0, c: 0 };
    pub const E_INF: GroupElt = GroupElt { a: 1, b: 0, c: 0 };
    pub const E4: GroupElt = GroupElt { a: 0, b: 1, c: 0 };
    pub const E2: GroupElt = GroupElt { a: 0, b: 0, c: 1 };

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        GroupElt { a, b: b.rem_euclid(4) as u8, c: c.rem_euclid(2) as u8 }
    }

    pub fn b(self) -> u8 {
        self.b
    }

    pub fn c(self) -> u8 {
        self.c
    }

    pub fn is_identity(self) -> bool {
        self == GroupElt::IDENTITY
    }
}

impl Add for GroupElt {
    type Output = GroupElt;
    fn add(self, o: GroupElt) -> GroupElt {
        GroupElt { a: self.a + o.a, b: (self.b + o.b) % 4, c: (self.c + o.c) % 2 }
    }
}

impl AddAssign for GroupElt {
    fn add_assign(&mut self, o: GroupElt) {
        *self = *self + o;
    }
}

impl Neg for GroupElt {
    type Output = GroupElt;
    fn neg(self) -> GroupElt {
        GroupElt { a: -self.a, b: (4 - self.b) % 4, c: self.c }
    }
}

impl Sub for GroupElt {
    type Output = GroupElt;
    fn sub(self, o: GroupElt) -> GroupElt {
        self + (-o)
    }
}

impl Mul<GroupElt> for i64 {
    type Output = GroupElt;
    fn mul(self, x: GroupElt) -> GroupElt {
        GroupElt::new(self * x.a, self * i64::from(x.b), self * i64::from(x.c))
    }
}

impl Sum for GroupElt {
    fn sum<I: Iterator<Item = GroupElt>>(iter: I) -> GroupElt {
        iter.fold(GroupElt::IDENTITY, Add::add)
    }
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

pub fn group_add(x: GroupElt, y: GroupElt) -> GroupElt {
    x + y
}

pub fn group_neg(x: GroupElt) -> GroupElt {
    -x
}

pub fn group_scale(m: i64, x: GroupElt) -> GroupElt {
    m * x
}

/// One group element per elliptic factor, k = 1..5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct JacobianImage(pub [GroupElt; 5]);

impl JacobianImage {
    pub fn curve(&self, k: Color) -> GroupElt {
        self.0[k.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|x| x.is_identity())
    }

    /// c = 0, b ≡ −a (mod 4) and |a| ≤ 8 on every factor.
    pub fn satisfies_bound(&self) -> bool {
        self.0.iter().all(|x| x.c == 0 && (x.a + i64::from(x.b)).rem_euclid(4) == 0 && x.a.abs() <= 8)
    }
}

impl Serialize for JacobianImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Curve {
            k: u8,
            a: i64,
            b4: u8,
            c2: u8,
        }
        let curves: Vec<Curve> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, x)| Curve { k: i as u8 + 1, a: x.a, b4: x.b, c2: x.c })
            .collect();
        let mut m = s.serialize_struct("JacobianImage", 1)?;
        m.serialize_field("curves", &curves)?;
        m.end()
    }
}

fn base_white() -> Vertex {
    Vertex::ones(5).expect("n = 5")
}

fn base_black() -> Vertex {
    Vertex::zero(5).expect("n = 5")
}

fn point_dim(p: &DivisorPoint) -> u8 {
    match p {
        DivisorPoint::Vertex(v) => v.n(),
        DivisorPoint::FaceCenter(f) => f.base.n(),
    }
}

/// Image of a single vertex or face center on E_k, based at w0 = (1,1,1,1,1) and b0 = 0.
pub fn point_image(p: &DivisorPoint, k: Color) -> Result<GroupElt> {
    let n = point_dim(p);
    if n != 5 {
        return Err(Error::NeedsFive(n));
    }
    let rainbow = Rainbow::new(5)?;
    Ok(match *p {
        DivisorPoint::Vertex(v) if v.is_white() => {
            color_split(k, base_white(), v)?.sign() * GroupElt::E_INF
        }
        DivisorPoint::Vertex(v) => {
            let s = color_split(k, base_black(), v)?.sign();
            GroupElt::new(-s, 2, 0)
        }
        DivisorPoint::FaceCenter(face) => {
            let j = face.colors.0;
            match (i32::from(j.get()) - i32::from(k.get())).rem_euclid(5) {
                3 => {
                    let labels: Vec<SplitLabel> = face
                        .members()
                        .iter()
                        .map(|&u| color_split(k, base_white(), u))
                        .collect::<Result<_>>()?;
                    debug_assert!(labels.iter().all(|&l| l == labels[0]));
                    debug_assert_eq!(rainbow.step(k, -2), j);
                    labels[0].sign() * GroupElt::E4
                }
                4 => GroupElt::new(0, 2, 0),
                0 => GroupElt::E2,
                1 => GroupElt::new(0, 2, 1),
                _ => GroupElt::IDENTITY,
            }
        }
    })
}

pub fn divisor_image(d: &MorseDivisor) -> Result<JacobianImage> {
    if d.n != 5 {
        return Err(Error::NeedsFive(d.n));
    }
    let mut out = [GroupElt::IDENTITY; 5];
    for (p, &kappa) in &d.coeffs {
        for k in Rainbow::new(5)?.colors() {
            out[k.index()] += i64::from(kappa) * point_image(p, k)?;
        }
    }
    Ok(JacobianImage(out))
}

struct PointTables {
    faces: Vec<Face>,
    face_images: Vec<[GroupElt; 5]>,
    vertex_images: Vec<[GroupElt; 5]>,
}

fn tables() -> &'static PointTables {
    static TABLES: OnceLock<PointTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let images = |p: DivisorPoint| -> [GroupElt; 5] {
            let mut out = [GroupElt::IDENTITY; 5];
            for k in Rainbow::new(5).expect("n = 5").colors() {
                out[k.index()] = point_image(&p, k).expect("n = 5");
            }
            out
        };
        let faces = faces(5).expect("n = 5");
        let face_images = faces.iter().map(|&f| images(DivisorPoint::FaceCenter(f))).collect();
        let vertex_images = Vertex::all(5)
            .expect("n = 5")
            .map(|v| images(DivisorPoint::Vertex(v)))
            .collect();
        PointTables { faces, face_images, vertex_images }
    })
}

/// ν(D_h) without materializing the divisor.
pub fn height_image(h: &HeightFn) -> Result<JacobianImage> {
    if h.n() != 5 {
        return Err(Error::NeedsFive(h.n()));
    }
    let t = tables();
    let mut out = [GroupElt::IDENTITY; 5];
    for v in h.vertices() {
        let kappa = i64::from(vertex_kappa(h, v));
        if kappa != 0 {
            for (acc, &x) in out.iter_mut().zip(&t.vertex_images[v.index()]) {
                *acc += kappa * x;
            }
        }
    }
    for (face, imgs) in t.faces.iter().zip(&t.face_images) {
        if classify_face(h, face) == FaceKind::BowTie {
            for (acc, &x) in out.iter_mut().zip(imgs) {
                *acc += x;
            }
        }
    }
    Ok(JacobianImage(out))
}

/// Images of many heights, in input order.
pub fn height_images(heights: &[HeightFn]) -> Result<Vec<JacobianImage>> {
    heights.par_iter().map(height_image).collect()
}

/// Frequency of each `a` on one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub k: u8,
    pub bins: BTreeMap<i64, u64>,
    /// Images whose coordinate is not of the form (a, −a mod 4, 0).
    pub off_pattern: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }
}

pub fn census(images: &[JacobianImage], k: Color) -> Census {
    let (bins, off_pattern) = images
        .par_iter()
        .fold(
            || (BTreeMap::new(), 0u64),
            |(mut bins, mut off), img| {
                let x = img.curve(k);
                if x.c != 0 || (x.a + i64::from(x.b)).rem_euclid(4) != 0 {
                    off += 1;
                }
                *bins.entry(x.a).or_insert(0u64) += 1;
                (bins, off)
            },
        )
        .reduce(
            || (BTreeMap::new(), 0),
            |(mut a, oa), (b, ob)| {
                for (key, c) in b {
                    *a.entry(key).or_insert(0) += c;
                }
                (a, oa + ob)
            },
        );
    Census { k: k.get(), bins, off_pattern }
}

/// Sign of the unit step ±(1,3,0) on curve `k` between heights joined by one move.
pub fn verify_step(from: &HeightFn, to: &HeightFn, k: Color) -> Result<i64> {
    let adjacent = from
        .lowering_targets()
        .into_iter()
        .map(|v| from.lower(v))
        .chain(from.raising_targets().into_iter().map(|v| from.raise(v)))
        .any(|x| x.as_ref() == Ok(to));
    if !adjacent {
        return Err(Error::NotAdjacent);
    }
    step_sign(height_image(from)?.curve(k), height_image(to)?.curve(k), k)
}

pub(crate) fn step_sign(before: GroupElt, after: GroupElt, k: Color) -> Result<i64> {
    let unit = GroupElt::new(1, 3, 0);
    match after - before {
        d if d == unit => Ok(1),
        d if d == -unit => Ok(-1),
        d => Err(Error::NotUnitStep { k: k.get(), diff: d.to_string() }),
    }
}

/// Sign relating ν_k(D_{sh_u h}) to ν_k(D_h): (−1)^{u_k + u_{k+2}}, negated for odd u.
pub fn shift_sign(u: Vertex, k: Color) -> i64 {
    let far = Rainbow::new(u.n()).expect("valid dimension").step(k, 2);
    let s = if (u.coord(k) + u.coord(far)).is_multiple_of(2) { 1 } else { -1 };
    if u.is_white() {
        -s
    } else {
        s
    }
}

/// Outcome of the shift and rotation laws for one height and one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub shift_ok: bool,
    pub rotation_ok: bool,
    pub witnesses: Vec<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.shift_ok && self.rotation_ok
    }
}

/// Checks ν_k(D_{sh_u h}) = ±s_k(u)·ν_k(D_h) and ν_k(D_{rot_u h}) = ν_{k+1}(D_h) with
/// the sign factors of the shift law applied to the rotation's conjugating translation.
pub fn verify_equivariance(h: &HeightFn, u: Vertex) -> Result<EquivarianceReport> {
    let rainbow = Rainbow::new(5)?;
    let base = height_image(h)?;
    let shifted = height_image(&h.shift(u)?)?;
    let rotated = height_image(&h.rainbow_rotate(u)?)?;
    let mut witnesses = Vec::new();
    let mut shift_ok = true;
    let mut rotation_ok = true;
    for k in rainbow.colors() {
        let want = shift_sign(u, k) * base.curve(k);
        if shifted.curve(k) != want {
            shift_ok = false;
            witnesses.push(format!("shift by {u} on curve {k}: got {}, want {want}", shifted.curve(k)));
        }
        let want = rotation_sign(u, k) * base.curve(rainbow.step(k, 1));
        if rotated.curve(k) != want {
            rotation_ok = false;
            witnesses.push(format!("rotation from {u} on curve {k}: got {}, want {want}", rotated.curve(k)));
        }
    }
    Ok(EquivarianceReport { shift_ok, rotation_ok, witnesses })
}

/// rot_u = sh_u ∘ σ ∘ sh_u, so its sign on curve k combines the shift signs on k and k+1.
pub fn rotation_sign(u: Vertex, k: Color) -> i64 {
    let next = Rainbow::new(u.n()).expect("valid dimension").step(k, 1);
    shift_sign(u, k) * shift_sign(u, next)
}
