use std::io::{self, Write};

use besselsum_core::{CheckReport, Route};
use serde::Serialize;

/// C's `%.17g`: 17 significant digits, trailing zeros removed, exponent form
/// when the decimal exponent is below -4 or at least 17.
pub fn g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let digits = (16 - exp) as usize;
        strip_zeros(&format!("{v:.digits$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One evaluated grid point.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub mu: i32,
    pub x: f64,
    pub method: Route,
    pub value: Option<f64>,
    pub err_bound: Option<f64>,
    pub work_units: usize,
    pub elapsed_us: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub const ROW_HEADER: [&str; 7] = [
    "mu",
    "x",
    "method",
    "value",
    "err_bound",
    "work_units",
    "elapsed_us",
];

fn opt(v: Option<f64>) -> String {
    v.map(g17).unwrap_or_else(|| "nan".into())
}

pub fn write_rows<W: Write>(out: W, rows: &[Row], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(ROW_HEADER)?;
            for r in rows {
                w.write_record([
                    r.mu.to_string(),
                    g17(r.x),
                    r.method.to_string(),
                    opt(r.value),
                    opt(r.err_bound),
                    r.work_units.to_string(),
                    r.elapsed_us.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Json => write_json_lines(out, rows),
    }
}

pub const CHECK_HEADER: [&str; 10] = [
    "check_id",
    "mu",
    "nu",
    "x",
    "observed",
    "expected",
    "tolerance",
    "passed",
    "elapsed_us",
    "error",
];

pub fn write_checks<W: Write>(out: W, checks: &[CheckReport], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CHECK_HEADER)?;
            let int = |v: Option<i32>| v.map(|v| v.to_string()).unwrap_or_default();
            for c in checks {
                w.write_record([
                    c.check_id.clone(),
                    int(c.mu),
                    int(c.nu),
                    c.x.map(g17).unwrap_or_default(),
                    g17(c.observed),
                    g17(c.expected),
                    g17(c.tolerance),
                    c.passed.to_string(),
                    c.elapsed_us.to_string(),
                    c.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()
        }
        Format::Json => write_json_lines(out, checks),
    }
}

fn write_json_lines<W: Write, T: Serialize>(mut out: W, items: &[T]) -> io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_printf() {
        // expected strings from printf("%.17g", v)
        let cases = [
            (0.1, "0.10000000000000001"),
            (1.0, "1"),
            (1.5, "1.5"),
            (-0.4339154182045726, "-0.43391541820457258"),
            (1e-5, "1.0000000000000001e-05"),
            (1e-4, "0.0001"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (2.0f64.powi(-1074), "4.9406564584124654e-324"),
            (f64::MAX, "1.7976931348623157e+308"),
            (1e100, "1e+100"),
            (-1e-300, "-1e-300"),
            (0.0, "0"),
        ];
        for (v, s) in cases {
            assert_eq!(g17(v), s, "{v:e}");
        }
    }

    #[test]
    fn round_trips() {
        for v in [0.1, 2.0 / 3.0, -1e-300, 6.02214076e23, 0.7233826446207924] {
            assert_eq!(g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(g17(f64::NAN), "nan");
        assert_eq!(g17(f64::NEG_INFINITY), "-inf");
        assert_eq!(g17(-0.0), "-0");
    }
}
