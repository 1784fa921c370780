//! One CSV row per analyzed sentence. Integers and integral rationals are
//! written exactly; other values are rounded to two significant digits.
//! Missing values are empty cells.

use super::ParseError;
use crate::analysis::SentenceAnalysis;
use crate::{to_f64, Rational};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

pub const CSV_COLUMNS: [&str; 22] = [
    "sentence_id", "n", "mean_k2", "C", "D", "C_max", "D_min", "D_max", "E0_C", "eps0", "E1_C", "eps1",
    "E_C_given_D", "eps_cond", "pL_C", "pR_C", "pL_dev", "pR_dev", "R", "method", "seed", "SE",
];

/// Rounds to two significant digits, keeping every integer digit, and
/// drops trailing zeros: `0.0625 -> "0.062"`, `24/7 -> "3.4"`, `123.4 -> "123"`.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // rounding may carry into a new digit, e.g. 0.0996 -> 0.100
    let carried: f64 = s.parse().unwrap_or(x);
    if carried != 0.0 && (carried.abs().log10().floor() as i32) > magnitude && decimals > 0 {
        let decimals = decimals - 1;
        s = format!("{x:.decimals$}");
    }
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn format_rational(r: Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format_decimal(to_f64(r))
    }
}

/// A row as it appears in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub sentence_id: String,
    pub n: usize,
    pub mean_k2: f64,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "C_max")]
    pub c_max: u64,
    #[serde(rename = "D_min")]
    pub d_min: Option<u64>,
    #[serde(rename = "D_max")]
    pub d_max: Option<u64>,
    #[serde(rename = "E0_C")]
    pub e0_c: f64,
    pub eps0: Option<f64>,
    #[serde(rename = "E1_C")]
    pub e1_c: f64,
    pub eps1: Option<f64>,
    #[serde(rename = "E_C_given_D")]
    pub e_c_given_d: Option<f64>,
    pub eps_cond: Option<f64>,
    #[serde(rename = "pL_C")]
    pub p_left_c: Option<f64>,
    #[serde(rename = "pR_C")]
    pub p_right_c: Option<f64>,
    #[serde(rename = "pL_dev")]
    pub p_left_dev: Option<f64>,
    #[serde(rename = "pR_dev")]
    pub p_right_dev: Option<f64>,
    #[serde(rename = "R")]
    pub r: u64,
    pub method: String,
    pub seed: Option<u64>,
    #[serde(rename = "SE")]
    pub se: Option<f64>,
}

fn cells(a: &SentenceAnalysis) -> Vec<String> {
    let opt_int = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let opt_rat = |v: Option<Rational>| v.map(format_rational).unwrap_or_default();
    vec![
        a.sentence_id.clone(),
        a.n.to_string(),
        format_rational(a.mean_k2),
        a.c.to_string(),
        a.d.to_string(),
        a.c_max.to_string(),
        opt_int(a.d_min),
        opt_int(a.d_max),
        format_rational(a.e0_c),
        opt_rat(a.eps0),
        format_rational(a.e1_c),
        opt_rat(a.eps1),
        opt_rat(a.e_c_given_d),
        opt_rat(a.eps_cond),
        opt_rat(a.p_left_c),
        opt_rat(a.p_right_c),
        opt_rat(a.p_left_dev),
        opt_rat(a.p_right_dev),
        a.r.to_string(),
        a.method.as_str().to_string(),
        opt_int(a.seed),
        a.e_c_given_d_se.map(format_decimal).unwrap_or_default(),
    ]
}

impl From<&SentenceAnalysis> for TableRow {
    /// The row as it reads back from a written file.
    fn from(a: &SentenceAnalysis) -> TableRow {
        let c = cells(a);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        w.write_record(&c).expect("in-memory write");
        let bytes = w.into_inner().expect("in-memory flush");
        read_csv(bytes.as_slice()).expect("a row we wrote").remove(0)
    }
}

/// Writes a header and one row per analysis; returns the number of rows.
pub fn write_csv<'a, W, I>(records: I, sink: W) -> Result<usize, ParseError>
where
    W: Write,
    I: IntoIterator<Item = &'a SentenceAnalysis>,
{
    let mut w = csv::Writer::from_writer(sink);
    let io = |e: csv::Error| ParseError::Io(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    let mut count = 0;
    for a in records {
        w.write_record(cells(a)).map_err(io)?;
        count += 1;
    }
    w.flush()?;
    Ok(count)
}

/// Reads rows written by [`write_csv`]. Lines starting with `#` are skipped.
pub fn read_csv<R: Read>(source: R) -> Result<Vec<TableRow>, ParseError> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(source);
    r.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| ParseError::MalformedRow { file: "<csv>".into(), line: i + 2, reason: e.to_string() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(format_decimal(0.0625), "0.062");
        assert_eq!(format_decimal(24.0 / 7.0), "3.4");
        assert_eq!(format_decimal(1.0 / 102.0), "0.0098");
        assert_eq!(format_decimal(0.0996), "0.1");
        assert_eq!(format_decimal(9.96), "10");
        assert_eq!(format_decimal(123.4), "123");
        assert_eq!(format_decimal(2.0), "2");
        assert_eq!(format_decimal(-0.0001), "-0.0001");
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_rational(Rational::new(21, 5)), "4.2");
        assert_eq!(format_rational(Rational::from_integer(6)), "6");
    }

    #[test]
    fn empty_stream_is_header_only() {
        let mut out = Vec::new();
        assert_eq!(write_csv(std::iter::empty(), &mut out).unwrap(), 0);
        assert_eq!(String::from_utf8(out).unwrap(), CSV_COLUMNS.join(",") + "\n");
    }
}
