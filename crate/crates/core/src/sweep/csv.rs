use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::SweepRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "phi_z,eta,g,gamma,delta_a,delta_c,cutoff,n1,n2,R,regime,g2,quantumness,semiclassical_intensity,residual";

/// C-style `%.{digits}g`: fixed notation for decimal exponents in
/// `[-4, digits)`, scientific otherwise, trailing zeros stripped.
pub fn format_general(value: f64, digits: usize) -> String {
    if value.is_nan() {
        return "nan".into();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.into();
    }
    if value == 0.0 {
        return if value.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let digits = digits.max(1);
    // the exponent after rounding to `digits` significant figures
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.unsigned_abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{value:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(v: f64) -> String {
    format_general(v, 12)
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// One CSV line (without newline) for `row`.
pub fn csv_line(row: &SweepRow) -> String {
    let axes = [row.phi_z, row.eta, row.g, row.gamma, row.delta_a, row.delta_c].map(num);
    let fields: Vec<String> = match &row.outcome {
        Ok(o) => vec![
            o.cutoff.to_string(),
            num(o.n1),
            num(o.n2),
            num(o.r),
            o.regime.token().to_string(),
            opt(o.g2),
            opt(o.quantumness),
            opt(o.semiclassical_intensity),
            num(o.residual),
        ],
        Err(label) => {
            let mut f = vec![String::new(); 9];
            f[4] = format!("error:{label}");
            f
        }
    };
    let mut line = axes.join(",");
    for f in fields {
        line.push(',');
        line.push_str(&f);
    }
    line
}

/// Writes the header and one line per row.
pub fn emit_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    if rows.is_empty() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "refusing to write a CSV without rows",
        ));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", csv_line(row))?;
    }
    out.flush()
}

pub fn write_csv_file(rows: &[SweepRow], path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    emit_csv(rows, BufWriter::new(file)).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format_matches_printf() {
        // reference strings from C printf("%.12g")
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-0.5, "-0.5"),
            (std::f64::consts::PI, "3.14159265359"),
            (6.283185307179586, "6.28318530718"),
            (1e-5, "1e-05"),
            (1.5e-4, "0.00015"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.1 + 0.2, "0.3"),
            (9.9999999999999e-5, "0.0001"),
            (24.41234567891234, "24.4123456789"),
            (999999999999.5, "1e+12"),
            (2.5e-300, "2.5e-300"),
        ];
        for (v, want) in cases {
            assert_eq!(format_general(v, 12), want, "{v:e}");
        }
    }

    #[test]
    fn empty_rows_are_refused() {
        assert!(emit_csv(&[], Vec::new()).is_err());
    }
}
