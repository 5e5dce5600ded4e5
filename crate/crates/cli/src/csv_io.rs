//! Sample tables: `t,x,y,alpha,kappa,k`.

use legendre_core::curve::ParamCurve;
use legendre_core::Vec2;
use std::io;
use std::path::Path;

pub const HEADER: [&str; 6] = ["t", "x", "y", "alpha", "kappa", "k"];

/// One output row; `None` cells are written empty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub alpha: Option<f64>,
    pub kappa: Option<f64>,
    pub k: Option<f64>,
}

/// Shortest decimal form with 17 significant digits, like C's `%.17g`.
pub fn g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let strip = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        strip(&format!("{v:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            strip(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(g17).unwrap_or_default()
}

pub fn write_rows(rows: &[Row], out: impl io::Write) -> io::Result<()> {
    if rows.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "refusing to write an empty curve",
        ));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            g17(r.t),
            g17(r.x),
            g17(r.y),
            cell(r.alpha),
            cell(r.kappa),
            cell(r.k),
        ])?;
    }
    w.flush()
}

/// Writes the table; an empty table is refused before the file is touched.
pub fn emit_csv(rows: &[Row], path: &Path) -> io::Result<()> {
    if rows.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "refusing to write an empty curve",
        ));
    }
    let mut buf = Vec::new();
    write_rows(rows, &mut buf)?;
    std::fs::write(path, buf)
}

#[derive(Debug, thiserror::Error)]
pub enum CsvInputError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Format(String),
}

/// Reads `t`, `x`, `y` columns (any further columns are ignored).
pub fn read_samples(input: impl io::Read) -> Result<(Vec<f64>, Vec<Vec2<f64>>), CsvInputError> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CsvInputError::Format(format!("missing column `{name}`")))
    };
    let (it, ix, iy) = (col("t")?, col("x")?, col("y")?);
    let (mut ts, mut pts) = (Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64, CsvInputError> {
            let s = rec.get(i).unwrap_or("");
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CsvInputError::Format(format!("row {}: bad number `{s}`", line + 2)))
        };
        ts.push(num(it)?);
        pts.push(Vec2::new(num(ix)?, num(iy)?));
    }
    Ok((ts, pts))
}

pub fn load_curve(path: &Path, closed: bool) -> Result<ParamCurve<f64>, CsvLoadError> {
    let file = std::fs::File::open(path)?;
    let (ts, pts) = read_samples(io::BufReader::new(file))?;
    if ts.is_empty() {
        return Err(CsvLoadError::Input(CsvInputError::Format(
            "no samples".into(),
        )));
    }
    Ok(ParamCurve::from_samples(ts, pts, closed)?)
}

#[derive(Debug, thiserror::Error)]
pub enum CsvLoadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Input(#[from] CsvInputError),
    #[error(transparent)]
    Core(#[from] legendre_core::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(std::f64::consts::PI), "3.1415926535897931");
        assert_eq!(g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(1e20), "1e+20");
        for v in [0.1, 1.0 / 3.0, -7.25e-9, 6.02e23, std::f64::consts::E] {
            assert_eq!(g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn round_trip_and_masking() {
        let rows = vec![
            Row {
                t: 0.0,
                x: 1.0,
                y: 0.0,
                alpha: Some(1.0),
                kappa: Some(1.0),
                k: Some(1.0),
            },
            Row {
                t: 0.5,
                x: 0.5,
                y: 0.25,
                alpha: Some(0.0),
                kappa: Some(2.0),
                k: None,
            },
        ];
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "t,x,y,alpha,kappa,k\n0,1,0,1,1,1\n0.5,0.5,0.25,0,2,\n"
        );
        let (ts, pts) = read_samples(&buf[..]).unwrap();
        assert_eq!(ts, vec![0.0, 0.5]);
        assert_eq!(pts[1], Vec2::new(0.5, 0.25));
    }

    #[test]
    fn empty_tables_are_refused() {
        let dir = std::env::temp_dir().join("legendre-empty-csv-test.csv");
        let _ = std::fs::remove_file(&dir);
        assert!(emit_csv(&[], &dir).is_err());
        assert!(!dir.exists());
    }
}
