//! Height functions on H^N: validation, enumeration by gluing, raising and lowering,
//! the digraphs Γ_N and Γ̃_N, symmetries, and hanging gardens from pinned vertices.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::{automorphisms, check_dim, Vertex};

/// Why a candidate value array is not a normalized height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeightViolation {
    Length { expected: usize, found: usize },
    Edge { u: Vertex, v: Vertex, hu: i64, hv: i64 },
    Min(i64),
}

impl fmt::Display for HeightViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightViolation::Length { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            HeightViolation::Edge { u, v, hu, hv } => {
                write!(f, "edge {u}-{v} has heights {hu} and {hv}")
            }
            HeightViolation::Min(m) => write!(f, "minimum is {m}, not 0"),
        }
    }
}

/// Checks every edge difference is exactly 1 and the minimum is 0.
pub fn validate(n: u8, values: &[i64]) -> Result<(), HeightViolation> {
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(HeightViolation::Length { expected, found: values.len() });
    }
    for bits in 0..expected {
        for j in 0..n {
            let other = bits ^ (1 << j);
            if other > bits && (values[bits] - values[other]).abs() != 1 {
                return Err(HeightViolation::Edge {
                    u: Vertex::raw(n, bits as u8),
                    v: Vertex::raw(n, other as u8),
                    hu: values[bits],
                    hv: values[other],
                });
            }
        }
    }
    let min = values.iter().copied().min().unwrap_or(0);
    if min != 0 {
        return Err(HeightViolation::Min(min));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "HeightWire", into = "HeightWire")]
pub struct HeightFn {
    n: u8,
    values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct HeightWire {
    n: u8,
    values: Vec<i64>,
}

impl TryFrom<HeightWire> for HeightFn {
    type Error = Error;
    fn try_from(w: HeightWire) -> Result<Self> {
        HeightFn::new(w.n, w.values)
    }
}

impl From<HeightFn> for HeightWire {
    fn from(h: HeightFn) -> Self {
        HeightWire { n: h.n, values: h.values.iter().map(|&x| i64::from(x)).collect() }
    }
}

impl HeightFn {
    pub fn new(n: u8, values: Vec<i64>) -> Result<Self> {
        check_dim(n)?;
        validate(n, &values).map_err(Error::InvalidHeight)?;
        Ok(HeightFn { n, values: values.into_iter().map(|x| x as u8).collect() })
    }

    /// Shift so the minimum is 0, then validate.
    pub fn normalized(n: u8, mut values: Vec<i64>) -> Result<Self> {
        let min = values.iter().copied().min().unwrap_or(0);
        values.iter_mut().for_each(|x| *x -= min);
        HeightFn::new(n, values)
    }

    /// Caller guarantees validity.
    fn from_raw(n: u8, values: Vec<u8>) -> Self {
        debug_assert!(validate(n, &values.iter().map(|&x| i64::from(x)).collect::<Vec<_>>()).is_ok());
        HeightFn { n, values }
    }

    fn renormalize(n: u8, values: &[i32]) -> Self {
        let min = values.iter().copied().min().unwrap_or(0);
        HeightFn::from_raw(n, values.iter().map(|&x| (x - min) as u8).collect())
    }

    /// h(v) = weight(v); a single pinned vertex at the top.
    pub fn fully_extended(n: u8) -> Result<Self> {
        let values = Vertex::all(n)?.map(|v| i64::from(v.weight())).collect();
        HeightFn::new(n, values)
    }

    /// Whites (odd weight) at 1, blacks at 0.
    pub fn valise(n: u8) -> Result<Self> {
        let values = Vertex::all(n)?.map(|v| i64::from(v.is_white())).collect();
        HeightFn::new(n, values)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn at(&self, v: Vertex) -> u8 {
        self.values[v.index()]
    }

    pub fn max_height(&self) -> u8 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices on each level, bottom first.
    pub fn layer_profile(&self) -> Vec<usize> {
        let mut out = vec![0; usize::from(self.max_height()) + 1];
        for &x in &self.values {
            out[usize::from(x)] += 1;
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.values.len()).map(move |b| Vertex::raw(self.n, b as u8))
    }

    fn is_peak(&self, bits: usize) -> bool {
        let h = self.values[bits];
        h > 0 && (0..self.n).all(|j| self.values[bits ^ (1 << j)] + 1 == h)
    }

    fn is_pit(&self, bits: usize) -> bool {
        let h = self.values[bits];
        (0..self.n).all(|j| self.values[bits ^ (1 << j)] == h + 1)
    }

    /// Strict local maxima.
    pub fn lowering_targets(&self) -> Vec<Vertex> {
        self.vertices().filter(|v| self.is_peak(v.index())).collect()
    }

    /// Strict local minima.
    pub fn raising_targets(&self) -> Vec<Vertex> {
        self.vertices().filter(|v| self.is_pit(v.index())).collect()
    }

    fn moved(&self, v: Vertex, by: i32) -> HeightFn {
        let mut vals: Vec<i32> = self.values.iter().map(|&x| i32::from(x)).collect();
        vals[v.index()] += by;
        HeightFn::renormalize(self.n, &vals)
    }

    pub fn lower(&self, v: Vertex) -> Result<HeightFn> {
        self.check_vertex(v)?;
        if !self.is_peak(v.index()) {
            return Err(Error::NotLocalMax(v));
        }
        Ok(self.moved(v, -2))
    }

    pub fn raise(&self, v: Vertex) -> Result<HeightFn> {
        self.check_vertex(v)?;
        if !self.is_pit(v.index()) {
            return Err(Error::NotLocalMin(v));
        }
        Ok(self.moved(v, 2))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch(self.n, v.n()));
        }
        Ok(())
    }

    /// v ↦ m_h − h(v).
    pub fn invert(&self) -> HeightFn {
        let top = self.max_height();
        HeightFn::from_raw(self.n, self.values.iter().map(|&x| top - x).collect())
    }

    /// v ↦ h(u ⊕ v).
    pub fn shift(&self, u: Vertex) -> Result<HeightFn> {
        self.check_vertex(u)?;
        let values = (0..self.values.len()).map(|b| self.values[b ^ u.index()]).collect();
        Ok(HeightFn::from_raw(self.n, values))
    }

    /// v ↦ h(rot_u(v)), where rot_u(v) = u ⊕ σ(u ⊕ v) and σ moves coordinate j to j+1.
    pub fn rainbow_rotate(&self, u: Vertex) -> Result<HeightFn> {
        self.check_vertex(u)?;
        let values = (0..self.values.len())
            .map(|b| self.values[rotate_from(self.n, u.index(), b)])
            .collect();
        Ok(HeightFn::from_raw(self.n, values))
    }

    /// `h ∘ g` for a vertex table of an automorphism.
    pub fn compose_table(&self, table: &[u8]) -> HeightFn {
        HeightFn::from_raw(self.n, table.iter().map(|&b| self.values[usize::from(b)]).collect())
    }
}

/// rot_u(v) on raw bits.
pub fn rotate_from(n: u8, u: usize, v: usize) -> usize {
    let x = u ^ v;
    let mask = (1usize << n) - 1;
    let rotated = ((x << 1) | (x >> (n - 1))) & mask;
    u ^ rotated
}

impl fmt::Display for HeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        for (i, x) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{x}")?;
        }
        f.write_char(']')
    }
}

/// Pinned vertices with their heights; the remaining vertices hang from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinSet {
    n: u8,
    pins: Vec<(Vertex, u32)>,
}

impl PinSet {
    pub fn new(pins: Vec<(Vertex, u32)>) -> Result<Self> {
        let (first, first_h) = *pins.first().ok_or(Error::NoPins)?;
        let n = first.n();
        for &(p, h) in &pins {
            if p.n() != n {
                return Err(Error::DimensionMismatch(n, p.n()));
            }
            if (h + p.weight()) % 2 != (first_h + first.weight()) % 2 {
                return Err(Error::PinParity(first, p));
            }
        }
        Ok(PinSet { n, pins })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn pins(&self) -> &[(Vertex, u32)] {
        &self.pins
    }
}

/// h(v) = max over pins of (h_p − d(p, v)), normalized.
pub fn from_pins(pins: &PinSet) -> Result<HeightFn> {
    let n = pins.n;
    let values: Vec<i64> = Vertex::all(n)?
        .map(|v| {
            pins.pins
                .iter()
                .map(|&(p, h)| i64::from(h) - i64::from(p.hamming(v).expect("same dimension")))
                .max()
                .expect("non-empty")
        })
        .collect();
    for &(p, h) in &pins.pins {
        if values[p.index()] != i64::from(h) {
            return Err(Error::PinDominated(p));
        }
    }
    HeightFn::normalized(n, values)
}

fn glue_pair(bottom: &[u8], top: &[u8], shift: i32) -> bool {
    bottom.iter().zip(top).all(|(&b, &t)| (i32::from(b) - i32::from(t) - shift).abs() == 1)
}

/// Shifts of `top` that can sit over `bottom`: fixed up to ±1 by the origin.
fn shift_candidates(bottom: &[u8], top: &[u8]) -> [i32; 2] {
    let d = i32::from(bottom[0]) - i32::from(top[0]);
    [d - 1, d + 1]
}

/// Heights on H^n from heights on H^{n-1}: stack two copies, shift the top.
fn glue(prev: &[HeightFn], n: u8) -> Vec<HeightFn> {
    let mut out: Vec<HeightFn> = prev
        .par_iter()
        .flat_map_iter(|bottom| {
            prev.iter().flat_map(move |top| {
                shift_candidates(&bottom.values, &top.values)
                    .into_iter()
                    .filter(|&s| glue_pair(&bottom.values, &top.values, s))
                    .map(move |s| {
                        let vals: Vec<i32> = bottom
                            .values
                            .iter()
                            .map(|&x| i32::from(x))
                            .chain(top.values.iter().map(|&x| i32::from(x) + s))
                            .collect();
                        HeightFn::renormalize(n, &vals)
                    })
            })
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Every normalized height on H^n, sorted. Materialization stops at n = 5.
pub fn enumerate(n: u8) -> Result<Vec<HeightFn>> {
    check_dim(n)?;
    if n > 5 {
        return Err(Error::TooLarge(n));
    }
    let mut level = vec![
        HeightFn::from_raw(1, vec![0, 1]),
        HeightFn::from_raw(1, vec![1, 0]),
    ];
    for m in 2..=n {
        level = glue(&level, m);
    }
    Ok(level)
}

/// Count heights on H^n without storing them. For n = 6 this glues all pairs of
/// H^5 heights and takes a long time; `progress` is called with (done, total) bottoms.
pub fn count_heights(n: u8, progress: impl Fn(usize, usize) + Sync) -> Result<u64> {
    check_dim(n)?;
    if n == 1 {
        return Ok(enumerate(n)?.len() as u64);
    }
    let prev = enumerate(n - 1)?;
    let total = prev.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let count = prev
        .par_iter()
        .map(|bottom| {
            let c = prev
                .iter()
                .map(|top| {
                    shift_candidates(&bottom.values, &top.values)
                        .into_iter()
                        .filter(|&s| glue_pair(&bottom.values, &top.values, s))
                        .count() as u64
                })
                .sum::<u64>();
            let k = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if k.is_multiple_of(1000) || k == total {
                progress(k, total);
            }
            c
        })
        .sum();
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// Backtracking over colorings, no heights involved.
    Independent,
    /// Three times the height count.
    FromHeights,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringCount {
    pub n: u8,
    pub count: u64,
    pub method: CountMethod,
}

/// Proper 3-colorings of H^n.
pub fn count_three_colorings(n: u8) -> Result<ColoringCount> {
    check_dim(n)?;
    if n <= 4 {
        let mut colors = vec![0u8; 1 << n];
        let count = color_dfs(n, 0, &mut colors);
        return Ok(ColoringCount { n, count, method: CountMethod::Independent });
    }
    let heights = if n == 5 { enumerate(5)?.len() as u64 } else { crate::reference::HEIGHT_COUNTS[5] };
    Ok(ColoringCount { n, count: 3 * heights, method: CountMethod::FromHeights })
}

fn color_dfs(n: u8, bits: usize, colors: &mut [u8]) -> u64 {
    if bits == colors.len() {
        return 1;
    }
    let mut total = 0;
    for c in 0..3 {
        let clash = (0..n).any(|j| {
            let other = bits ^ (1 << j);
            other < bits && colors[other] == c
        });
        if !clash {
            colors[bits] = c;
            total += color_dfs(n, bits + 1, colors);
        }
    }
    total
}

/// Lower every vertex ⌊h_fe(v)/2⌋ times, always taking the smallest available vertex.
/// Ends at the valise.
pub fn extended_to_valise_schedule(n: u8) -> Result<Vec<Vertex>> {
    let mut h = HeightFn::fully_extended(n)?;
    let mut budget: Vec<u32> = h.vertices().map(|v| v.weight() / 2).collect();
    let mut moves = Vec::new();
    while let Some(v) = h.lowering_targets().into_iter().find(|v| budget[v.index()] > 0) {
        budget[v.index()] -= 1;
        h = h.lower(v)?;
        moves.push(v);
    }
    Ok(moves)
}

/// Γ_N: one node per height, an edge for each single-vertex lowering.
#[derive(Clone, Debug, Serialize)]
pub struct HeightDigraph {
    pub n: u8,
    pub nodes: Vec<HeightFn>,
    pub edges: Vec<GammaEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GammaEdge {
    pub from: u32,
    pub to: u32,
    /// Bitmask of the lowered vertex.
    pub vertex: u8,
}

fn index_in(sorted: &[HeightFn], h: &HeightFn) -> u32 {
    sorted.binary_search(h).expect("closed under lowering") as u32
}

pub fn gamma(n: u8) -> Result<HeightDigraph> {
    let nodes = enumerate(n)?;
    let edges = nodes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, h)| {
            let nodes = &nodes;
            h.lowering_targets().into_iter().map(move |v| GammaEdge {
                from: i as u32,
                to: index_in(nodes, &h.lower(v).expect("target is a peak")),
                vertex: v.bits(),
            })
        })
        .collect();
    Ok(HeightDigraph { n, nodes, edges })
}

impl HeightDigraph {
    pub fn index_of(&self, h: &HeightFn) -> Option<usize> {
        self.nodes.binary_search(h).ok()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.from as usize == node).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph gamma{} {{\n", self.n);
        for (i, h) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{h}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.vertex);
        }
        s.push_str("}\n");
        s
    }
}

/// Orbits of the signed-permutation group on heights.
#[derive(Clone, Debug)]
pub struct Classes {
    pub n: u8,
    pub heights: Vec<HeightFn>,
    /// Class index of each height.
    pub class_of: Vec<u32>,
    /// Members of each class by height index; the first member is the smallest.
    pub members: Vec<Vec<u32>>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self, class: usize) -> &HeightFn {
        &self.heights[self.members[class][0] as usize]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn class_of_height(&self, h: &HeightFn) -> Option<usize> {
        let i = self.heights.binary_search(h).ok()?;
        Some(self.class_of[i] as usize)
    }
}

/// All images h ∘ g, sorted and deduplicated.
pub fn orbit(h: &HeightFn) -> Result<Vec<HeightFn>> {
    let mut out: Vec<HeightFn> = automorphisms(h.n())?.map(|g| h.compose_table(&g.table())).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn comb_classes(n: u8) -> Result<Classes> {
    let heights = enumerate(n)?;
    let tables: Vec<Vec<u8>> = automorphisms(n)?.map(|g| g.table()).collect();
    let mut class_of = vec![u32::MAX; heights.len()];
    let mut members = Vec::new();
    for i in 0..heights.len() {
        if class_of[i] != u32::MAX {
            continue;
        }
        let id = members.len() as u32;
        let mut orbit: Vec<u32> = tables
            .par_iter()
            .map(|t| index_in(&heights, &heights[i].compose_table(t)))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            class_of[j as usize] = id;
        }
        members.push(orbit);
    }
    Ok(Classes { n, heights, class_of, members })
}

/// Γ̃_N: classes with an edge [h] → [h'] whenever some lowering joins them.
#[derive(Clone, Debug)]
pub struct ReducedGamma {
    pub classes: Classes,
    pub edges: BTreeSet<(u32, u32)>,
}

pub fn reduced_gamma(n: u8) -> Result<ReducedGamma> {
    let classes = comb_classes(n)?;
    let edges = classes
        .heights
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, h)| {
            let classes = &classes;
            h.lowering_targets().into_iter().map(move |v| {
                let j = index_in(&classes.heights, &h.lower(v).expect("peak"));
                (classes.class_of[i], classes.class_of[j as usize])
            })
        })
        .collect::<BTreeSet<_>>();
    Ok(ReducedGamma { classes, edges })
}

impl ReducedGamma {
    /// Every member of a source class reaches the target class by one lowering.
    pub fn is_well_defined(&self) -> bool {
        let c = &self.classes;
        self.edges.iter().all(|&(a, b)| {
            c.members[a as usize].iter().all(|&i| {
                let h = &c.heights[i as usize];
                h.lowering_targets()
                    .into_iter()
                    .any(|v| c.class_of_height(&h.lower(v).expect("peak")) == Some(b as usize))
            })
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph reduced_gamma{} {{\n", self.classes.n);
        for (i, m) in self.classes.members.iter().enumerate() {
            let rep = self.classes.representative(i);
            let _ = writeln!(s, "  c{i} [label=\"{rep}\\nsize {}\"];", m.len());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }
}
