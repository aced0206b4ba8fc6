//! The hypercube H^N with its rainbow coloring, faces and signed-permutation automorphisms.
//!
//! Vertices are bitmasks: bit `j - 1` holds coordinate `x_j`. Colors are 1-indexed.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: u8 = 6;

pub fn check_dim(n: u8) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(n))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Color(u8);

impl Color {
    pub fn new(n: u8, color: u8) -> Result<Self> {
        if color == 0 || color > n {
            return Err(Error::ColorOutOfRange { n, color });
        }
        Ok(Color(color))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based bit position.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn mask(self) -> u8 {
        1 << (self.0 - 1)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The canonical cyclic order 1, 2, ..., N on colors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rainbow {
    n: u8,
}

impl Rainbow {
    pub fn new(n: u8) -> Result<Self> {
        check_dim(n)?;
        Ok(Rainbow { n })
    }

    pub fn n(self) -> u8 {
        self.n
    }

    pub fn colors(self) -> impl Iterator<Item = Color> {
        (1..=self.n).map(Color)
    }

    /// `color + by`, wrapping around the cycle. `step(k, 2)` is k+2.
    pub fn step(self, color: Color, by: i32) -> Color {
        let n = i32::from(self.n);
        let zero_based = (i32::from(color.0) - 1 + by).rem_euclid(n);
        Color(zero_based as u8 + 1)
    }

    /// Color pairs `(j, j+1)` spanning faces. For n = 2 the two cyclic pairs coincide.
    pub fn face_pairs(self) -> Vec<(Color, Color)> {
        match self.n {
            1 => vec![],
            2 => vec![(Color(1), Color(2))],
            _ => self.colors().map(|c| (c, self.step(c, 1))).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex {
    n: u8,
    bits: u8,
}

impl Vertex {
    pub fn new(n: u8, bits: u32) -> Result<Self> {
        check_dim(n)?;
        if bits >> n != 0 {
            return Err(Error::VertexOutOfRange { n, bits });
        }
        Ok(Vertex { n, bits: bits as u8 })
    }

    /// Build from coordinates `(x_1, ..., x_N)`, each 0 or 1.
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let n = u8::try_from(coords.len()).map_err(|_| Error::Dimension(u8::MAX))?;
        check_dim(n)?;
        let mut bits = 0u32;
        for (i, &x) in coords.iter().enumerate() {
            match x {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::VertexOutOfRange { n, bits: u32::from(x) }),
            }
        }
        Vertex::new(n, bits)
    }

    pub(crate) fn raw(n: u8, bits: u8) -> Self {
        debug_assert!(u32::from(bits) >> n == 0);
        Vertex { n, bits }
    }

    pub fn zero(n: u8) -> Result<Self> {
        Vertex::new(n, 0)
    }

    pub fn ones(n: u8) -> Result<Self> {
        check_dim(n)?;
        Ok(Vertex { n, bits: ((1u16 << n) - 1) as u8 })
    }

    pub fn all(n: u8) -> Result<impl Iterator<Item = Vertex>> {
        check_dim(n)?;
        Ok((0..1u16 << n).map(move |b| Vertex { n, bits: b as u8 }))
    }

    pub fn n(self) -> u8 {
        self.n
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn index(self) -> usize {
        usize::from(self.bits)
    }

    pub fn coord(self, color: Color) -> u8 {
        (self.bits >> color.index()) & 1
    }

    pub fn coords(self) -> Vec<u8> {
        (0..self.n).map(|i| (self.bits >> i) & 1).collect()
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Odd popcount. (1,1,1,1,1) is white and the origin is black on H^5.
    pub fn is_white(self) -> bool {
        self.weight() % 2 == 1
    }

    pub fn flip(self, color: Color) -> Vertex {
        debug_assert!(color.0 <= self.n);
        Vertex { n: self.n, bits: self.bits ^ color.mask() }
    }

    pub fn xor(self, other: Vertex) -> Result<Vertex> {
        same_dim(self, other)?;
        Ok(Vertex { n: self.n, bits: self.bits ^ other.bits })
    }

    pub fn neighbors(self) -> Vec<(Color, Vertex)> {
        (1..=self.n).map(|j| (Color(j), self.flip(Color(j)))).collect()
    }

    pub fn hamming(self, other: Vertex) -> Result<u32> {
        same_dim(self, other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }
}

fn same_dim(u: Vertex, v: Vertex) -> Result<()> {
    if u.n == v.n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(u.n, v.n))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords().iter().join(","))
    }
}

/// A 4-cycle spanned by two rainbow-adjacent colors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Face {
    pub colors: (Color, Color),
    /// The member with both face coordinates zero.
    pub base: Vertex,
}

impl Face {
    /// The face of colors `(j, j+1)` through `v`.
    pub fn through(v: Vertex, colors: (Color, Color)) -> Face {
        let mask = colors.0.mask() | colors.1.mask();
        Face { colors, base: Vertex { n: v.n, bits: v.bits & !mask } }
    }

    /// Members in cyclic order around the 4-cycle.
    pub fn members(&self) -> [Vertex; 4] {
        let (a, b) = self.colors;
        let v = self.base;
        [v, v.flip(a), v.flip(a).flip(b), v.flip(b)]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.n == self.base.n && Face::through(v, self.colors) == *self
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({},{}){}", self.colors.0, self.colors.1, self.base)
    }
}

pub fn faces(n: u8) -> Result<Vec<Face>> {
    let rainbow = Rainbow::new(n)?;
    if n < 2 {
        return Err(Error::TooFewColors(n));
    }
    let mut out = Vec::with_capacity(usize::from(n) << (n - 2));
    for pair in rainbow.face_pairs() {
        let mask = pair.0.mask() | pair.1.mask();
        for v in Vertex::all(n)? {
            if v.bits & mask == 0 {
                out.push(Face { colors: pair, base: v });
            }
        }
    }
    Ok(out)
}

/// Permute coordinates, then XOR by `flips`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutation {
    n: u8,
    /// Coordinate `i` (zero-based) moves to `perm[i]`.
    perm: [u8; MAX_DIM as usize],
    flips: u8,
}

impl SignedPermutation {
    pub fn identity(n: u8) -> Result<Self> {
        check_dim(n)?;
        Ok(SignedPermutation { n, perm: [0, 1, 2, 3, 4, 5], flips: 0 })
    }

    pub fn new(perm: &[u8], flips: u8) -> Result<Self> {
        let n = perm.len() as u8;
        check_dim(n)?;
        let mut seen = 0u8;
        for &p in perm {
            if p >= n || seen & (1 << p) != 0 {
                return Err(Error::Dimension(n));
            }
            seen |= 1 << p;
        }
        if u32::from(flips) >> n != 0 {
            return Err(Error::VertexOutOfRange { n, bits: u32::from(flips) });
        }
        let mut out = SignedPermutation::identity(n)?;
        out.perm[..perm.len()].copy_from_slice(perm);
        out.flips = flips;
        Ok(out)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    fn permute_bits(&self, bits: u8) -> u8 {
        let mut out = 0;
        for i in 0..self.n {
            out |= ((bits >> i) & 1) << self.perm[usize::from(i)];
        }
        out
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        debug_assert_eq!(v.n, self.n);
        Vertex { n: self.n, bits: self.permute_bits(v.bits) ^ self.flips }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let mut perm = [0, 1, 2, 3, 4, 5];
        for (slot, &j) in perm.iter_mut().zip(&other.perm).take(usize::from(self.n)) {
            *slot = self.perm[usize::from(j)];
        }
        SignedPermutation {
            n: self.n,
            perm,
            flips: self.permute_bits(other.flips) ^ self.flips,
        }
    }

    /// Vertex images indexed by source bits.
    pub fn table(&self) -> Vec<u8> {
        (0..1u16 << self.n).map(|b| self.permute_bits(b as u8) ^ self.flips).collect()
    }
}

/// All 2^n · n! signed permutations.
pub fn automorphisms(n: u8) -> Result<impl Iterator<Item = SignedPermutation>> {
    check_dim(n)?;
    Ok((0..n).permutations(usize::from(n)).flat_map(move |p| {
        (0..1u16 << n).map(move |flips| {
            SignedPermutation::new(&p, flips as u8).expect("valid permutation")
        })
    }))
}

/// Adjacent transpositions plus one coordinate flip: they generate the whole group.
pub fn generators(n: u8) -> Result<Vec<SignedPermutation>> {
    check_dim(n)?;
    let mut gens = vec![SignedPermutation::new(&(0..n).collect::<Vec<_>>(), 1)?];
    for i in 0..n.saturating_sub(1) {
        let mut p: Vec<u8> = (0..n).collect();
        p.swap(usize::from(i), usize::from(i) + 1);
        gens.push(SignedPermutation::new(&p, 0)?);
    }
    Ok(gens)
}
