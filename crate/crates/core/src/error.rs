use thiserror::Error;

use crate::heights::HeightViolation;
use crate::hypercube::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is out of range (1..=6)")]
    Dimension(u8),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("vertex bits {bits} do not fit in dimension {n}")]
    VertexOutOfRange { n: u8, bits: u32 },
    #[error("color {color} is not in 1..={n}")]
    ColorOutOfRange { n: u8, color: u8 },
    #[error("faces need at least two colors, got n = {0}")]
    TooFewColors(u8),
    #[error("invalid height: {0}")]
    InvalidHeight(HeightViolation),
    #[error("vertex {0} is not a strict local maximum")]
    NotLocalMax(Vertex),
    #[error("vertex {0} is not a strict local minimum")]
    NotLocalMin(Vertex),
    #[error("pin set is empty")]
    NoPins,
    #[error("pins {0} and {1} have inconsistent parity")]
    PinParity(Vertex, Vertex),
    #[error("pin {0} cannot reach its height; another pin forces it higher")]
    PinDominated(Vertex),
    #[error("refusing to materialize all heights for n = {0} (limit is 5)")]
    TooLarge(u8),
    #[error("the image map is defined for n = 5 only, got n = {0}")]
    NeedsFive(u8),
    #[error("heights are not joined by a single raise or lower")]
    NotAdjacent,
    #[error("curve {k} moved by {diff}, not by a unit step")]
    NotUnitStep { k: u8, diff: String },
    #[error("ill-conditioned group law: {0}")]
    IllConditioned(String),
    #[error("face center sign at coordinate {0} is not forced by the adjacent vertex")]
    UnforcedSign(usize),
    #[error("vertex {vertex} is not on face {face}")]
    NotOnFace { vertex: Vertex, face: String },
}
