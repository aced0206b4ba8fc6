//! Invariant suites over the full N = 5 census, with machine-readable reports.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::geometry_report;
use crate::heights::{count_three_colorings, enumerate, extended_to_valise_schedule, HeightFn};
use crate::hypercube::{Rainbow, Vertex};
use crate::jacobian::{census, height_images, shift_sign, step_sign, JacobianImage};
use crate::morse::{morse_divisor, vertex_kappa};
use crate::reference::{schedule_length, E1_CENSUS, HEIGHT_COUNTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Counts,
    Morse,
    Steps,
    Theorem,
    Geometry,
    Equivariance,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Counts, Suite::Morse, Suite::Steps, Suite::Theorem, Suite::Geometry, Suite::Equivariance];

    /// Whether the suite needs every height on H^5.
    pub fn needs_census(self) -> bool {
        !matches!(self, Suite::Counts | Suite::Geometry)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    /// Wall time; left out of the JSON so reports are byte-stable.
    #[serde(skip)]
    pub seconds: f64,
    pub checks: Vec<SuiteCheck>,
}

/// All heights on H^5 with their images, sorted by height.
pub struct FullCensus {
    pub heights: Vec<HeightFn>,
    pub images: Vec<JacobianImage>,
}

impl FullCensus {
    pub fn compute() -> Result<Self> {
        let heights = enumerate(5)?;
        let images = height_images(&heights)?;
        Ok(FullCensus { heights, images })
    }

    pub fn index_of(&self, h: &HeightFn) -> usize {
        self.heights.binary_search(h).expect("every height is enumerated")
    }

    pub fn image_of(&self, h: &HeightFn) -> JacobianImage {
        self.images[self.index_of(h)]
    }
}

fn push(checks: &mut Vec<SuiteCheck>, name: &str, passed: bool, detail: String) {
    checks.push(SuiteCheck { name: name.to_string(), passed, detail });
}

pub fn run(suite: Suite, full: Option<&FullCensus>) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    match suite {
        Suite::Counts => counts(&mut checks)?,
        Suite::Geometry => {
            let report = geometry_report()?;
            for c in &report.checks {
                push(&mut checks, &c.name, c.passed, format!("{:e}", c.value));
            }
            let cv = &report.cross_validation;
            push(
                &mut checks,
                "cross validation",
                cv.passed == cv.total,
                format!("{}/{} (worst error {:e})", cv.passed, cv.total, cv.worst_error),
            );
        }
        _ => {
            let owned;
            let full = match full {
                Some(f) => f,
                None => {
                    owned = FullCensus::compute()?;
                    &owned
                }
            };
            match suite {
                Suite::Morse => morse(&mut checks, full),
                Suite::Steps => steps(&mut checks, full)?,
                Suite::Theorem => theorem(&mut checks, full),
                _ => equivariance(&mut checks, full)?,
            }
        }
    }
    Ok(SuiteReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks,
    })
}

fn counts(checks: &mut Vec<SuiteCheck>) -> Result<()> {
    let got: Vec<u64> = (1..=5).map(|n| enumerate(n).map(|v| v.len() as u64)).collect::<Result<_>>()?;
    push(checks, "height counts n = 1..5", got == HEIGHT_COUNTS[..5], format!("{got:?}"));
    for n in 1..=4u8 {
        let c = count_three_colorings(n)?;
        let want = 3 * got[usize::from(n) - 1];
        push(
            checks,
            &format!("3-colorings of H^{n} = 3 x heights"),
            c.count == want,
            format!("{} colorings, {:?}", c.count, c.method),
        );
    }
    Ok(())
}

fn morse(checks: &mut Vec<SuiteCheck>, full: &FullCensus) {
    let bad_degree = full.heights.par_iter().filter(|h| morse_divisor(h).degree() != 8).count();
    push(checks, "every divisor on H^5 has degree 8", bad_degree == 0, format!("{bad_degree} exceptions"));
    let bad_kappa = full
        .heights
        .par_iter()
        .filter(|h| h.vertices().any(|v| !(-1..=1).contains(&vertex_kappa(h, v))))
        .count();
    push(checks, "vertex coefficients lie in {-1, 0, 1}", bad_kappa == 0, format!("{bad_kappa} exceptions"));
    let bad_invert = full
        .heights
        .par_iter()
        .filter(|h| morse_divisor(h) != morse_divisor(&h.invert()))
        .count();
    push(checks, "inverting a height keeps its divisor", bad_invert == 0, format!("{bad_invert} exceptions"));
}

fn steps(checks: &mut Vec<SuiteCheck>, full: &FullCensus) -> Result<()> {
    let rainbow = Rainbow::new(5)?;
    let (edges, violations) = full
        .heights
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut edges = 0u64;
            let mut bad = 0u64;
            for v in h.lowering_targets() {
                let j = full.index_of(&h.lower(v).expect("peak"));
                edges += 1;
                for k in rainbow.colors() {
                    if step_sign(full.images[i].curve(k), full.images[j].curve(k), k).is_err() {
                        bad += 1;
                    }
                }
            }
            (edges, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    push(
        checks,
        "every edge of Gamma_5 moves each coordinate by a unit step",
        violations == 0,
        format!("{edges} edges, {violations} violations"),
    );
    for n in 3..=5u8 {
        let len = extended_to_valise_schedule(n)?.len() as u64;
        push(
            checks,
            &format!("schedule on H^{n} reaches the valise"),
            len == schedule_length(n),
            format!("{len} steps, bound {}", schedule_length(n)),
        );
    }
    Ok(())
}

fn theorem(checks: &mut Vec<SuiteCheck>, full: &FullCensus) {
    let bad = full.images.iter().filter(|img| !img.satisfies_bound()).count();
    push(checks, "c = 0, b = -a mod 4, |a| <= 8 everywhere", bad == 0, format!("{bad} exceptions"));
    let rainbow = Rainbow::new(5).expect("n = 5");
    let first = census(&full.images, rainbow.colors().next().expect("five colors"));
    let want: Vec<(i64, u64)> = (-8..=8).map(|a: i64| (a, E1_CENSUS[a.unsigned_abs() as usize])).collect();
    let got: Vec<(i64, u64)> = first.bins.iter().map(|(&a, &c)| (a, c)).collect();
    push(checks, "E1 histogram matches the reference counts", got == want, format!("{got:?}"));
    let max_a = full.images.iter().flat_map(|img| img.0.iter().map(|x| x.a.abs())).max().unwrap_or(0);
    let top = first.bins.get(&8).copied().unwrap_or(0);
    let bottom = first.bins.get(&-8).copied().unwrap_or(0);
    push(
        checks,
        "max |a| = 8, attained by 24 + 24 heights on E1",
        max_a == 8 && top == 24 && bottom == 24,
        format!("max |a| {max_a}, a = 8: {top}, a = -8: {bottom}"),
    );
    for k in rainbow.colors().skip(1) {
        let c = census(&full.images, k);
        push(
            checks,
            &format!("E{k} histogram equals E1"),
            c.bins == first.bins && c.off_pattern == 0,
            format!("{} off-pattern", c.off_pattern),
        );
    }
}

fn equivariance(checks: &mut Vec<SuiteCheck>, full: &FullCensus) -> Result<()> {
    let rainbow = Rainbow::new(5)?;
    let origin = Vertex::zero(5)?;
    let bad_rotation = full
        .heights
        .par_iter()
        .zip(&full.images)
        .filter(|(h, img)| {
            let rotated = full.image_of(&h.rainbow_rotate(origin).expect("n = 5"));
            rainbow.colors().any(|k| rotated.curve(k) != img.curve(rainbow.step(k, 1)))
        })
        .count();
    push(
        checks,
        "rotation from the origin permutes coordinates (all heights)",
        bad_rotation == 0,
        format!("{bad_rotation} violations"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sample: Vec<usize> = (0..full.heights.len()).collect::<Vec<_>>().choose_multiple(&mut rng, 1000).copied().collect();
    let mut bad_shift = 0;
    for &i in &sample {
        for u in Vertex::all(5)? {
            let shifted = full.image_of(&full.heights[i].shift(u)?);
            if rainbow.colors().any(|k| shifted.curve(k) != shift_sign(u, k) * full.images[i].curve(k)) {
                bad_shift += 1;
            }
        }
    }
    push(
        checks,
        "shift law on 1000 sampled heights x 32 shifts",
        bad_shift == 0,
        format!("{bad_shift} violations"),
    );
    Ok(())
}
