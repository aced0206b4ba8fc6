//! Subcommand bodies. Each writes its result to `out`; progress goes to stderr.

use std::io::Write;
use std::path::Path;

use adinkra::heights::{comb_classes, count_heights, enumerate, gamma, reduced_gamma};
use adinkra::jacobian::height_image;
use adinkra::morse::morse_divisor;
use adinkra::suites::{self, FullCensus, Suite, SuiteReport};
use adinkra::{GroupElt, HeightFn};
use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use crate::census::{all_curves, curve, histogram, images, Histogram};

pub fn enumerate_cmd(n: u8, count_only: bool, out_file: Option<&Path>, force: bool, out: &mut impl Write) -> Result<()> {
    if n == 0 || n > 6 {
        bail!("n = {n} is not supported (1..=5, or 6 with --count-only --force)");
    }
    if n == 6 {
        if !force {
            bail!("n = 6 has 33433683534 heights; pass --count-only --force to count them anyway");
        }
        if !count_only || out_file.is_some() {
            bail!("n = 6 can only be counted, not written out");
        }
        let count = count_heights(6, |done, total| eprintln!("glued {done}/{total}"))?;
        writeln!(out, "{count}")?;
        return Ok(());
    }
    let heights = enumerate(n)?;
    if let Some(path) = out_file {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path).with_context(|| format!("creating {path:?}"))?);
        for h in &heights {
            serde_json::to_writer(&mut w, h)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    writeln!(out, "{}", heights.len())?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

pub fn census_cmd(k: Option<u8>, format: TableFormat, out: &mut impl Write) -> Result<()> {
    let curves = match k {
        Some(k) => vec![curve(k)?],
        None => all_curves().collect(),
    };
    let images = images();
    let tables: Vec<Histogram> = curves.into_iter().map(|k| histogram(images, k)).collect();
    match format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &tables)?;
            writeln!(out)?;
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["k", "a", "count"])?;
            for t in &tables {
                for b in &t.bins {
                    w.write_record([t.k.to_string(), b.a.to_string(), b.count.to_string()])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// `a e∞ + b e4 + c e2` with b written in -1..=2 and zero terms dropped.
pub fn describe(g: GroupElt) -> String {
    let b = match g.b() {
        3 => -1,
        b => i64::from(b),
    };
    let terms = [(g.a, "e∞"), (b, "e4"), (i64::from(g.c()), "e2")];
    let mut s = String::new();
    for (coef, name) in terms.into_iter().filter(|(c, _)| *c != 0) {
        let sign = if coef < 0 { "-" } else { "+" };
        if s.is_empty() {
            if coef < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if coef.abs() != 1 {
            s.push_str(&coef.abs().to_string());
        }
        s.push_str(name);
    }
    if s.is_empty() {
        "O".into()
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

pub fn image_cmd(h: &HeightFn, format: TextFormat, out: &mut impl Write) -> Result<()> {
    let divisor = morse_divisor(h);
    let image = height_image(h)?;
    match format {
        TextFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &json!({ "height": h, "divisor": divisor, "image": image }))?;
            writeln!(out)?;
        }
        TextFormat::Text => {
            writeln!(out, "height {h}")?;
            writeln!(out, "divisor, degree {}:", divisor.degree())?;
            for (p, kappa) in &divisor.coeffs {
                writeln!(out, "  {kappa:+} {p}")?;
            }
            writeln!(out, "image:")?;
            for (k, g) in image.0.iter().enumerate() {
                writeln!(out, "  E{}: {}  {g}", k + 1, describe(*g))?;
            }
        }
    }
    Ok(())
}

pub fn read_height(path: &Path) -> Result<HeightFn> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    // a bare array of 32 values is read as a height on H^5
    let (n, values) = match value {
        serde_json::Value::Array(_) => (5, value),
        serde_json::Value::Object(ref m) => (
            m.get("n").and_then(|x| x.as_u64()).context("height file needs \"n\"")? as u8,
            m.get("values").cloned().context("height file needs \"values\"")?,
        ),
        _ => bail!("height file must hold an object or an array"),
    };
    let values: Vec<i64> = serde_json::from_value(values)?;
    Ok(HeightFn::new(n, values)?)
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    size: usize,
    profile: Vec<usize>,
    representative: HeightFn,
}

pub fn classes_cmd(n: u8, format: TableFormat, out: &mut impl Write) -> Result<()> {
    let classes = comb_classes(n)?;
    let rows: Vec<ClassRow> = (0..classes.len())
        .map(|i| {
            let rep = classes.representative(i).clone();
            ClassRow { class: i, size: classes.members[i].len(), profile: rep.layer_profile(), representative: rep }
        })
        .collect();
    match format {
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["class", "size", "profile", "representative"])?;
            for r in rows {
                let profile: Vec<String> = r.profile.iter().map(ToString::to_string).collect();
                w.write_record([r.class.to_string(), r.size.to_string(), profile.join(" "), r.representative.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

pub fn gamma_cmd(n: u8, reduced: bool, format: GraphFormat, out: &mut impl Write) -> Result<()> {
    if reduced {
        let rg = reduced_gamma(n)?;
        match format {
            GraphFormat::Dot => out.write_all(rg.to_dot().as_bytes())?,
            GraphFormat::Json => {
                let classes: Vec<_> = (0..rg.classes.len())
                    .map(|i| json!({ "id": i, "size": rg.classes.members[i].len(), "representative": rg.classes.representative(i) }))
                    .collect();
                let edges: Vec<[u32; 2]> = rg.edges.iter().map(|&(a, b)| [a, b]).collect();
                serde_json::to_writer(&mut *out, &json!({ "n": n, "classes": classes, "edges": edges }))?;
                writeln!(out)?;
            }
        }
    } else {
        let g = gamma(n)?;
        match format {
            GraphFormat::Dot => out.write_all(g.to_dot().as_bytes())?,
            GraphFormat::Json => {
                serde_json::to_writer(&mut *out, &g)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteArg {
    Counts,
    Morse,
    Steps,
    Theorem,
    Geometry,
    Equivariance,
    All,
}

/// Runs the suites and prints the JSON reports; returns whether all passed.
pub fn verify_cmd(which: SuiteArg, out: &mut impl Write) -> Result<bool> {
    let chosen: Vec<Suite> = match which {
        SuiteArg::Counts => vec![Suite::Counts],
        SuiteArg::Morse => vec![Suite::Morse],
        SuiteArg::Steps => vec![Suite::Steps],
        SuiteArg::Theorem => vec![Suite::Theorem],
        SuiteArg::Geometry => vec![Suite::Geometry],
        SuiteArg::Equivariance => vec![Suite::Equivariance],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let full = if chosen.iter().any(|s| s.needs_census()) {
        eprintln!("enumerating heights on H^5 ...");
        Some(FullCensus::compute()?)
    } else {
        None
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in chosen {
        let r = suites::run(s, full.as_ref())?;
        eprintln!("{:?}: {} in {:.2}s", s, if r.passed { "pass" } else { "FAIL" }, r.seconds);
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    serde_json::to_writer_pretty(&mut *out, &json!({ "passed": passed, "suites": reports }))?;
    writeln!(out)?;
    Ok(passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_elements() {
        assert_eq!(describe(GroupElt::IDENTITY), "O");
        assert_eq!(describe(GroupElt::new(1, 3, 0)), "e∞ - e4");
        assert_eq!(describe(GroupElt::new(-2, 2, 1)), "-2e∞ + 2e4 + e2");
        assert_eq!(describe(GroupElt::new(0, 1, 0)), "e4");
    }

    #[test]
    fn enumerate_prints_counts() {
        for (n, want) in [(1, "2\n"), (4, "990\n")] {
            let mut out = Vec::new();
            enumerate_cmd(n, true, None, false, &mut out).unwrap();
            assert_eq!(String::from_utf8(out).unwrap(), want);
        }
        let mut out = Vec::new();
        assert!(enumerate_cmd(7, true, None, false, &mut out).is_err());
        assert!(enumerate_cmd(6, true, None, false, &mut out).is_err());
        assert!(enumerate_cmd(6, false, None, true, &mut out).is_err());
    }
}
