//! Diamonds, bow-ties and the discrete Morse divisor of a height.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::heights::HeightFn;
use crate::hypercube::{faces, Face, Rainbow, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// Three distinct heights around the square.
    Diamond,
    /// Two heights, alternating: a saddle at the face center.
    BowTie,
}

pub fn classify_face(h: &HeightFn, face: &Face) -> FaceKind {
    let m = face.members().map(|v| h.at(v));
    // parity alternates around the square, so only 2 or 3 values occur
    if m[0] == m[2] && m[1] == m[3] {
        FaceKind::BowTie
    } else {
        FaceKind::Diamond
    }
}

pub fn classify_faces(h: &HeightFn) -> Vec<(Face, FaceKind)> {
    if h.n() < 2 {
        return Vec::new();
    }
    faces(h.n())
        .expect("n >= 2")
        .into_iter()
        .map(|f| {
            let kind = classify_face(h, &f);
            (f, kind)
        })
        .collect()
}

/// Cyclic sign changes of the differences to the neighbors, taken in rainbow order.
pub fn sign_changes(h: &HeightFn, v: Vertex) -> u32 {
    let here = i32::from(h.at(v));
    let d: Vec<bool> = v.neighbors().iter().map(|&(_, w)| i32::from(h.at(w)) > here).collect();
    (0..d.len()).filter(|&i| d[i] != d[(i + 1) % d.len()]).count() as u32
}

/// −1 at extrema, 0 at regular points, μ at a saddle with λ = 2 + 2μ changes.
pub fn vertex_kappa(h: &HeightFn, v: Vertex) -> i32 {
    match sign_changes(h, v) {
        0 => -1,
        lambda => (lambda as i32 - 2) / 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorPoint {
    Vertex(Vertex),
    FaceCenter(Face),
}

impl fmt::Display for DivisorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorPoint::Vertex(v) => write!(f, "{v}"),
            DivisorPoint::FaceCenter(face) => write!(f, "{face}"),
        }
    }
}

impl Serialize for DivisorPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DivisorPoint::Vertex(v) => {
                let mut m = s.serialize_struct("Point", 2)?;
                m.serialize_field("type", "vertex")?;
                m.serialize_field("id", &v.bits())?;
                m.end()
            }
            DivisorPoint::FaceCenter(face) => {
                let mut m = s.serialize_struct("Point", 2)?;
                m.serialize_field("type", "face")?;
                m.serialize_field("id", &FaceId(face))?;
                m.end()
            }
        }
    }
}

struct FaceId<'a>(&'a Face);

impl Serialize for FaceId<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("colors", &[self.0.colors.0.get(), self.0.colors.1.get()])?;
        m.serialize_entry("base", &self.0.base.bits())?;
        m.end()
    }
}

/// Sparse formal sum of vertices and face centers with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseDivisor {
    pub n: u8,
    pub coeffs: BTreeMap<DivisorPoint, i32>,
}

impl MorseDivisor {
    pub fn degree(&self) -> i32 {
        self.coeffs.values().sum()
    }

    pub fn coeff(&self, p: &DivisorPoint) -> i32 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }
}

impl Serialize for MorseDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            #[serde(flatten)]
            point: &'a DivisorPoint,
            kappa: i32,
        }
        let points: Vec<Entry> =
            self.coeffs.iter().map(|(point, &kappa)| Entry { point, kappa }).collect();
        let mut m = s.serialize_struct("MorseDivisor", 2)?;
        m.serialize_field("points", &points)?;
        m.serialize_field("degree", &self.degree())?;
        m.end()
    }
}

pub fn morse_divisor(h: &HeightFn) -> MorseDivisor {
    let mut coeffs = BTreeMap::new();
    for v in h.vertices() {
        let k = vertex_kappa(h, v);
        if k != 0 {
            coeffs.insert(DivisorPoint::Vertex(v), k);
        }
    }
    for (face, kind) in classify_faces(h) {
        if kind == FaceKind::BowTie {
            coeffs.insert(DivisorPoint::FaceCenter(face), 1);
        }
    }
    MorseDivisor { n: h.n(), coeffs }
}

/// Degree of a divisor given as a sum; kept for symmetry with the other ops.
pub fn degree(d: &MorseDivisor) -> i32 {
    d.degree()
}

/// Face of colors `(j, j+1)` through `v`, for j given as a plain color number.
pub fn face_through(v: Vertex, j: u8) -> Result<Face> {
    let r = Rainbow::new(v.n())?;
    let a = crate::hypercube::Color::new(v.n(), j)?;
    Ok(Face::through(v, (a, r.step(a, 1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[u8]) -> Vertex {
        Vertex::from_coords(coords).unwrap()
    }

    #[test]
    fn face_kinds_on_named_heights() {
        let valise = HeightFn::valise(5).unwrap();
        assert!(classify_faces(&valise).iter().all(|(_, k)| *k == FaceKind::BowTie));
        let fe = HeightFn::fully_extended(5).unwrap();
        assert!(classify_faces(&fe).iter().all(|(_, k)| *k == FaceKind::Diamond));
        let top = Vertex::ones(5).unwrap();
        let h1 = fe.lower(top).unwrap();
        let bows: Vec<Face> = classify_faces(&h1)
            .into_iter()
            .filter(|(_, k)| *k == FaceKind::BowTie)
            .map(|(f, _)| f)
            .collect();
        assert_eq!(bows.len(), 5);
        assert!(bows.iter().all(|f| f.contains(top)));
    }

    #[test]
    fn kappa_examples() {
        let valise = HeightFn::valise(5).unwrap();
        assert!(valise.vertices().all(|x| vertex_kappa(&valise, x) == -1));
        let fe = HeightFn::fully_extended(5).unwrap();
        assert_eq!(vertex_kappa(&fe, v(&[1, 0, 1, 0, 1])), 1);
        assert_eq!(vertex_kappa(&fe, v(&[1, 0, 0, 0, 0])), 0);
    }

    #[test]
    fn divisors_of_named_heights() {
        let valise = HeightFn::valise(5).unwrap();
        let dv = morse_divisor(&valise);
        assert_eq!(dv.coeffs.len(), 72);
        assert_eq!(dv.degree(), 8);

        let fe = HeightFn::fully_extended(5).unwrap();
        let dfe = morse_divisor(&fe);
        // rotations of 10100 and 10101
        let saddles = [
            [1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1], [1, 0, 0, 1, 0], [0, 1, 0, 0, 1],
            [1, 0, 1, 0, 1], [1, 1, 0, 1, 0], [0, 1, 1, 0, 1], [1, 0, 1, 1, 0], [0, 1, 0, 1, 1],
        ];
        assert_eq!(dfe.coeffs.len(), 12);
        for s in saddles {
            assert_eq!(dfe.coeff(&DivisorPoint::Vertex(v(&s))), 1);
        }
        assert_eq!(dfe.coeff(&DivisorPoint::Vertex(Vertex::ones(5).unwrap())), -1);
        assert_eq!(dfe.coeff(&DivisorPoint::Vertex(Vertex::zero(5).unwrap())), -1);
        assert_eq!(dfe.degree(), 8);

        let h1 = fe.lower(Vertex::ones(5).unwrap()).unwrap();
        assert_eq!(degree(&morse_divisor(&h1)), 8);
    }

    #[test]
    fn h2_divisor_shape() {
        let fe = HeightFn::fully_extended(5).unwrap();
        let h2 = fe.lower(Vertex::ones(5).unwrap()).unwrap().lower(v(&[0, 1, 1, 1, 1])).unwrap();
        let d = morse_divisor(&h2);
        let count = |f: &dyn Fn(&DivisorPoint, i32) -> bool| d.coeffs.iter().filter(|(p, &k)| f(p, k)).count();
        assert_eq!(count(&|p, k| matches!(p, DivisorPoint::Vertex(_)) && k == 1), 8);
        assert_eq!(count(&|p, _| matches!(p, DivisorPoint::FaceCenter(_))), 6);
        assert_eq!(count(&|p, k| matches!(p, DivisorPoint::Vertex(_)) && k == -1), 6);
        assert_eq!(d.coeff(&DivisorPoint::Vertex(Vertex::zero(5).unwrap())), -1);
        // four maxima survive, the lowered vertex becomes a minimum
        let maxima = h2.lowering_targets();
        assert_eq!(maxima.len(), 4);
        assert!(maxima.iter().all(|m| d.coeff(&DivisorPoint::Vertex(*m)) == -1));
        assert_eq!(h2.raising_targets(), vec![Vertex::zero(5).unwrap(), v(&[0, 1, 1, 1, 1])]);
    }

    #[test]
    fn divisor_json_shape() {
        let d = morse_divisor(&HeightFn::fully_extended(5).unwrap());
        let s = serde_json::to_value(&d).unwrap();
        assert_eq!(s["degree"], 8);
        assert_eq!(s["points"][0]["type"], "vertex");
        let fc = morse_divisor(&HeightFn::valise(5).unwrap());
        let s = serde_json::to_value(&fc).unwrap();
        let face = s["points"].as_array().unwrap().iter().find(|p| p["type"] == "face").unwrap();
        assert_eq!(face["kappa"], 1);
        assert!(face["id"]["colors"].is_array());
        let _ = face_through(Vertex::ones(5).unwrap(), 5).unwrap();
    }
}
