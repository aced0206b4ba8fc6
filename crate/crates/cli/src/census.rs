//! Shared census of all heights on H^5 and its histogram rows.

use std::sync::OnceLock;

use adinkra::heights::enumerate;
use adinkra::jacobian::{census, height_images};
use adinkra::{Color, JacobianImage, Rainbow};
use serde::Serialize;

static IMAGES: OnceLock<Vec<JacobianImage>> = OnceLock::new();

/// Images of every height on H^5, computed on first use.
pub fn images() -> &'static [JacobianImage] {
    IMAGES.get_or_init(|| {
        eprintln!("enumerating heights on H^5 ...");
        let heights = enumerate(5).expect("n = 5 is supported");
        eprintln!("computing {} images ...", heights.len());
        height_images(&heights).expect("n = 5")
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bin {
    pub a: i64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub k: u8,
    pub total: u64,
    pub off_pattern: u64,
    pub bins: Vec<Bin>,
}

/// The 17 bins a = -8..=8 on curve `k`, empty bins included.
pub fn histogram(images: &[JacobianImage], k: Color) -> Histogram {
    let c = census(images, k);
    let bins = (-8..=8).map(|a| Bin { a, count: c.bins.get(&a).copied().unwrap_or(0) }).collect();
    Histogram { k: k.get(), total: c.total(), off_pattern: c.off_pattern, bins }
}

pub fn curve(k: u8) -> adinkra::Result<Color> {
    Color::new(5, k)
}

pub fn all_curves() -> impl Iterator<Item = Color> {
    Rainbow::new(5).expect("n = 5").colors()
}
