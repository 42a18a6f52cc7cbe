//! CSV traces and key=value certificate files.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use crate::bounds::BoundCertificate;
use crate::error::{Error, Result};
use crate::iteration::IterationTrace;

pub const FIXED_COLUMNS: [&str; 7] = ["k", "err_total", "err_tangent", "err_normal", "p", "q", "bound_p"];

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFileRow {
    pub k: usize,
    pub err_total: f64,
    pub err_tangent: f64,
    pub err_normal: f64,
    pub p: f64,
    pub q: f64,
    pub bound_p: Option<f64>,
    pub sin2_r: Vec<f64>,
}

/// Rows of `trace`, with `bound_p` filled from `cert` when it holds.
pub fn trace_rows(trace: &IterationTrace, cert: Option<&BoundCertificate>) -> Vec<TraceFileRow> {
    trace
        .records
        .iter()
        .map(|r| TraceFileRow {
            k: r.k,
            err_total: r.err_total,
            err_tangent: r.err_tangent,
            err_normal: r.err_normal,
            p: r.p,
            q: r.q,
            bound_p: cert.and_then(|c| c.bound_p(r.k)),
            sin2_r: r.sin2_r.clone(),
        })
        .collect()
}

pub fn csv_header(directions: usize) -> Vec<String> {
    FIXED_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain((1..=directions).map(|j| format!("sin2R_{j}")))
        .collect()
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!("checked is_io_error"),
        }
    } else {
        Error::Parse(e.to_string())
    }
}

pub fn write_csv<W: Write>(rows: &[TraceFileRow], out: W) -> Result<()> {
    let directions = rows.first().map_or(0, |r| r.sin2_r.len());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(directions)).map_err(csv_error)?;
    for row in rows {
        let mut rec = vec![
            row.k.to_string(),
            format_value(row.err_total),
            format_value(row.err_tangent),
            format_value(row.err_normal),
            format_value(row.p),
            format_value(row.q),
            row.bound_p.map(format_value).unwrap_or_default(),
        ];
        rec.extend(row.sin2_r.iter().map(|&x| format_value(x)));
        w.write_record(&rec).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(trace: &IterationTrace, cert: Option<&BoundCertificate>, path: &Path) -> Result<()> {
    write_csv(&trace_rows(trace, cert), BufWriter::new(File::create(path)?))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TraceFileRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(csv_error)?.clone();
    let directions = header.len().saturating_sub(FIXED_COLUMNS.len());
    let expected = csv_header(directions);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let num = |s: &str| -> Result<f64> { s.parse().map_err(|_| Error::Parse(format!("bad number '{s}'"))) };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let k = rec[0].parse().map_err(|_| Error::Parse(format!("bad step index '{}'", &rec[0])))?;
        rows.push(TraceFileRow {
            k,
            err_total: num(&rec[1])?,
            err_tangent: num(&rec[2])?,
            err_normal: num(&rec[3])?,
            p: num(&rec[4])?,
            q: num(&rec[5])?,
            bound_p: if rec[6].is_empty() { None } else { Some(num(&rec[6])?) },
            sin2_r: (FIXED_COLUMNS.len()..rec.len()).map(|j| num(&rec[j])).collect::<Result<_>>()?,
        });
    }
    Ok(rows)
}

pub fn parse_csv(path: &Path) -> Result<Vec<TraceFileRow>> {
    read_csv(File::open(path)?)
}

/// `condition_value`, `c_star`, `corollary_c` and `holds` as `key=value`
/// lines; absent constants are written as empty values.
pub fn write_certificate<W: Write>(cert: &BoundCertificate, mut out: W) -> io::Result<()> {
    let opt = |x: Option<f64>| x.map(format_value).unwrap_or_default();
    writeln!(out, "condition_value={}", format_value(cert.condition_value))?;
    writeln!(out, "c_star={}", opt(cert.c_star))?;
    writeln!(out, "corollary_c={}", opt(cert.corollary_c))?;
    writeln!(out, "holds={}", cert.holds)?;
    out.flush()
}

pub fn emit_certificate(cert: &BoundCertificate, path: &Path) -> Result<()> {
    Ok(write_certificate(cert, BufWriter::new(File::create(path)?))?)
}

/// Parses `key=value` lines into ordered pairs, skipping blank lines.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("line '{l}' is not key=value")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::certify;

    fn row(k: usize, bound: Option<f64>) -> TraceFileRow {
        TraceFileRow {
            k,
            err_total: 0.1 / (k + 1) as f64,
            err_tangent: 1.0 / 3.0,
            err_normal: 1e-300,
            p: 2.5,
            q: 0.0,
            bound_p: bound,
            sin2_r: vec![0.25, std::f64::consts::PI],
        }
    }

    #[test]
    fn header_and_empty_bound_field() {
        let mut buf = Vec::new();
        write_csv(&[row(0, None)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,err_total,err_tangent,err_normal,p,q,bound_p,sin2R_1,sin2R_2"
        );
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[6], "");
        assert_eq!(fields[2], "3.3333333333333331e-1");
    }

    #[test]
    fn values_round_trip_exactly() {
        let rows = vec![row(0, Some(4.0)), row(1, None), row(2, Some(1e-17))];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn certificate_lines() {
        let mut buf = Vec::new();
        write_certificate(&certify(0.25, 0.1, 0.0).unwrap(), &mut buf).unwrap();
        let kv = parse_key_values(std::str::from_utf8(&buf).unwrap()).unwrap();
        let keys: Vec<&str> = kv.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["condition_value", "c_star", "corollary_c", "holds"]);
        assert_eq!(kv[3].1, "true");

        let mut buf = Vec::new();
        write_certificate(&certify(0.5, 0.3, 0.0).unwrap(), &mut buf).unwrap();
        let kv = parse_key_values(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(kv[1].1, "");
        assert_eq!(kv[3].1, "false");
    }
}
