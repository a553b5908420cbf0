//! Spectrum files.
//!
//! JSON carries every float at full precision, so reading a file back gives
//! the same bits. CSV rows are rounded to 9 significant digits; a CSV file
//! read and rewritten reproduces itself byte for byte.

use grassfock_core::physics::{Dispersion, DispersionPoint, PhysicalParams, UnitSystem};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: [&str; 4] = ["k", "E_k", "eps_k", "gapless"];

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 9;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsRecord {
    hbar: f64,
    m: f64,
    a: f64,
    rho: f64,
    units: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    k: f64,
    #[serde(rename = "E_k")]
    free_energy: f64,
    #[serde(rename = "eps_k")]
    quasi_energy: f64,
    gapless: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumRecord {
    params: ParamsRecord,
    g: f64,
    gap: f64,
    points: Vec<PointRecord>,
}

pub fn spectrum_to_json(d: &Dispersion) -> Result<String, FormatError> {
    let all_finite = [d.coupling, d.gap].into_iter().chain(d.points.iter().flat_map(|p| [p.k, p.free_energy, p.quasi_energy]));
    if let Some(x) = all_finite.into_iter().find(|x| !x.is_finite()) {
        return Err(FormatError::Invalid(format!("non-finite value {x} cannot be written as JSON")));
    }
    let record = SpectrumRecord {
        params: ParamsRecord {
            hbar: d.params.hbar,
            m: d.params.mass,
            a: d.params.scattering_length,
            rho: d.params.density,
            units: d.params.units.as_str().to_string(),
        },
        g: d.coupling,
        gap: d.gap,
        points: d
            .points
            .iter()
            .map(|p| PointRecord { k: p.k, free_energy: p.free_energy, quasi_energy: p.quasi_energy, gapless: p.gapless })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&record)?;
    s.push('\n');
    Ok(s)
}

pub fn spectrum_from_json(text: &str) -> Result<Dispersion, FormatError> {
    let r: SpectrumRecord = serde_json::from_str(text)?;
    let units = UnitSystem::parse(&r.params.units)
        .ok_or_else(|| FormatError::Invalid(format!("unknown unit system `{}`", r.params.units)))?;
    let params = PhysicalParams::new(r.params.hbar, r.params.m, r.params.a, r.params.rho, units)
        .map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(Dispersion {
        params,
        coupling: r.g,
        gap: r.gap,
        points: r
            .points
            .into_iter()
            .map(|p| DispersionPoint { k: p.k, free_energy: p.free_energy, quasi_energy: p.quasi_energy, gapless: p.gapless })
            .collect(),
    })
}

pub fn spectrum_to_csv(points: &[DispersionPoint]) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for p in points {
        let gapless = if p.gapless { "true" } else { "false" };
        w.write_record([significant(p.k), significant(p.free_energy), significant(p.quasi_energy), gapless.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn spectrum_from_csv(text: &str) -> Result<Vec<DispersionPoint>, FormatError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(FormatError::Invalid(format!("expected header {}", CSV_HEADER.join(","))));
    }
    let mut points = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        let num = |i: usize| -> Result<f64, FormatError> {
            record[i].parse().map_err(|_| FormatError::Invalid(format!("row {}: `{}` is not a number", row + 1, &record[i])))
        };
        let gapless = match &record[3] {
            "true" => true,
            "false" => false,
            other => return Err(FormatError::Invalid(format!("row {}: gapless flag `{other}`", row + 1))),
        };
        points.push(DispersionPoint { k: num(0)?, free_energy: num(1)?, quasi_energy: num(2)?, gapless });
    }
    Ok(points)
}

/// Decimal with [`CSV_DIGITS`] significant digits; scientific notation
/// outside `1e-5 ≤ |x| < 1e15`.
pub fn significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        // -0 prints as 0
        return if x == 0.0 { "0".to_string() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", CSV_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let out = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{out}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant(0.0), "0");
        assert_eq!(significant(-0.0), "0");
        assert_eq!(significant(0.5), "0.500000000");
        assert_eq!(significant(1.0), "1.00000000");
        assert_eq!(significant(0.751_327_412_287_183_4), "0.751327412");
        assert_eq!(significant(-0.25), "-0.250000000");
        assert_eq!(significant(123_456_789_012.0), "123456789000");
        assert_eq!(significant(2.0e-30), "2.00000000e-30");
        assert_eq!(significant(0.000_012_345_678_91), "0.0000123456789");
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(spectrum_from_csv("k,E,eps,gapless\n").is_err());
        assert!(spectrum_from_csv("k,E_k,eps_k,gapless\n1,2,3,maybe\n").is_err());
        assert!(spectrum_from_csv("k,E_k,eps_k,gapless\n1,x,3,true\n").is_err());
        assert!(spectrum_from_csv("k,E_k,eps_k,gapless\n").unwrap().is_empty());
    }
}
