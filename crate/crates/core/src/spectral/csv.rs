//! Two-column spectrum CSV: header `frequency_thz,power`, then one row per
//! node with ascending, uniformly spaced frequencies.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{FrequencyGrid, Spectrum};
use crate::format::{sig, SIGNIFICANT_DIGITS};
use crate::{Error, Result};

const HEADER: &str = "frequency_thz,power";

/// Allowed departure of a node from the ideal uniform position, relative to
/// the spacing.
const UNIFORMITY_TOLERANCE: f64 = 1e-6;

pub fn write_spectrum<W: Write>(s: &Spectrum, mut out: W) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    for (nu, p) in s.grid().nodes().zip(s.samples()) {
        writeln!(out, "{},{}", sig(nu), sig(*p))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_spectrum_csv(s: &Spectrum, path: impl AsRef<Path>) -> Result<()> {
    write_spectrum(s, BufWriter::new(File::create(path)?))
}

pub fn read_spectrum_csv(path: impl AsRef<Path>) -> Result<Spectrum> {
    read_spectrum(File::open(path)?)
}

pub fn read_spectrum<R: Read>(input: R) -> Result<Spectrum> {
    let mut freqs = Vec::new();
    let mut powers = Vec::new();
    let mut lines = BufReader::new(input).lines();

    let header = lines.next().transpose()?;
    match header {
        Some(h) if h.trim() == HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{HEADER}`"),
            })
        }
    }

    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut fields = line.split(',');
        let (Some(f), Some(p), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected 2 fields, got `{line}`")));
        };
        let nu: f64 = f
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad frequency `{f}`")))?;
        let power: f64 = p
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad power `{p}`")))?;
        if !nu.is_finite() || nu <= 0.0 {
            return Err(parse_err(format!("frequency {nu} must be positive")));
        }
        if !power.is_finite() || power < 0.0 {
            return Err(parse_err(format!(
                "power {power} must be finite and non-negative"
            )));
        }
        if let Some(&prev) = freqs.last() {
            if nu <= prev {
                return Err(parse_err(format!("frequency {nu} does not increase")));
            }
        }
        freqs.push(nu);
        powers.push(power);
    }

    if freqs.len() < 2 {
        return Err(Error::Parse {
            line: freqs.len() + 2,
            message: "need at least two rows".into(),
        });
    }

    let first = freqs[0];
    let last = *freqs.last().unwrap();
    let n = freqs.len();
    let spacing = (last - first) / (n - 1) as f64;
    for (i, &nu) in freqs.iter().enumerate() {
        let expected = first + i as f64 * spacing;
        // Printed values carry SIGNIFICANT_DIGITS digits; allow for that too.
        let print_resolution =
            10f64.powi(nu.log10().floor() as i32 + 1 - SIGNIFICANT_DIGITS as i32);
        if (nu - expected).abs() > UNIFORMITY_TOLERANCE * spacing + print_resolution {
            return Err(Error::Parse {
                line: i + 2,
                message: format!("frequency {nu} breaks uniform spacing {spacing}"),
            });
        }
    }

    let grid =
        FrequencyGrid::new(0.5 * (first + last), last - first, n).map_err(|e| Error::Parse {
            line: 2,
            message: e.to_string(),
        })?;
    Spectrum::new(grid, powers)
}
