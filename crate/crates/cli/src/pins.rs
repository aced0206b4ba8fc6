//! Pin specs for `image --pins`.
//!
//! A spec is a comma separated list of `VERTEX@H` items. A vertex is a bitmask
//! (bit j-1 = x_j, so `31` is the all-ones vertex) or `b` followed by the coordinates
//! x_1..x_N, e.g. `b10100`. `all-white@H` and `all-black@H` pin a whole color class.

use adinkra::heights::from_pins;
use adinkra::{HeightFn, PinSet, Vertex};
use anyhow::{anyhow, bail, Context, Result};

fn parse_vertex(n: u8, s: &str) -> Result<Vertex> {
    if let Some(coords) = s.strip_prefix('b') {
        if coords.len() != usize::from(n) {
            bail!("vertex {s:?} needs {n} coordinates");
        }
        let coords: Vec<u8> = coords
            .bytes()
            .map(|c| match c {
                b'0' | b'1' => Ok(c - b'0'),
                _ => Err(anyhow!("bad coordinate in {s:?}")),
            })
            .collect::<Result<_>>()?;
        return Ok(Vertex::from_coords(&coords)?);
    }
    let bits: u32 = s.parse().with_context(|| format!("bad vertex {s:?}"))?;
    Ok(Vertex::new(n, bits)?)
}

pub fn parse_pins(n: u8, spec: &str) -> Result<PinSet> {
    let mut pins = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (vertex, height) = item.split_once('@').with_context(|| format!("pin {item:?} is missing '@'"))?;
        let height: u32 = height.trim().parse().with_context(|| format!("bad height in {item:?}"))?;
        match vertex.trim() {
            "all-white" | "all-black" => {
                let white = vertex.trim() == "all-white";
                pins.extend(Vertex::all(n)?.filter(|v| v.is_white() == white).map(|v| (v, height)));
            }
            v => pins.push((parse_vertex(n, v)?, height)),
        }
    }
    Ok(PinSet::new(pins)?)
}

/// Hanging garden of a pin spec.
pub fn height_from_spec(n: u8, spec: &str) -> Result<HeightFn> {
    Ok(from_pins(&parse_pins(n, spec)?)?)
}
