use std::io::{Read, Write};
use std::path::Path;

use super::series::MeasureSeries;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 7] = ["t", "bmax", "tsr", "f", "rate_bmax", "rate_tsr", "rate_f"];

fn fmt(v: f64) -> String {
    format!("{v:.15e}")
}

pub fn write_csv<W: Write>(s: &MeasureSeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (r, rate) in s.records().iter().zip(s.rates()) {
        let row = [r.time, r.bmax, r.tsr, r.f, rate[0], rate[1], rate[2]].map(fmt);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the series as CSV with 16 significant digits per value.
pub fn emit_csv(s: &MeasureSeries, path: &Path) -> Result<()> {
    if s.len() < MeasureSeries::MIN_LEN {
        return Err(Error::SeriesTooShort {
            len: s.len(),
            min: MeasureSeries::MIN_LEN,
        });
    }
    let file = std::fs::File::create(path)?;
    write_csv(s, std::io::BufWriter::new(file))
}

/// Rows of a file written by [`emit_csv`], in column order of [`CSV_HEADER`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<[f64; 7]>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header {:?}",
            header.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let mut row = [0.0; 7];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("row {}: '{field}' is not a number", i + 2))
            })?;
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::series::Record;

    fn series(n: usize) -> MeasureSeries {
        let records = (0..n)
            .map(|k| {
                let t = k as f64 / 3.0;
                let v = (-t).exp();
                Record {
                    time: t,
                    bmax: v,
                    tsr: v / 2.0,
                    f: v / 3.0,
                    bmax_raw: v,
                    f_raw: v / 3.0,
                    tsr_flagged: false,
                }
            })
            .collect();
        MeasureSeries::new(records).unwrap()
    }

    #[test]
    fn two_points_three_lines() {
        let mut buf = Vec::new();
        write_csv(&series(2), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().next().unwrap(), "t,bmax,tsr,f,rate_bmax,rate_tsr,rate_f");
    }

    #[test]
    fn round_trip_keeps_precision() {
        let s = series(7);
        let mut buf = Vec::new();
        write_csv(&s, &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        for (row, r) in rows.iter().zip(s.records()) {
            assert!((row[0] - r.time).abs() <= 1e-15 * r.time.abs().max(1.0));
            assert!((row[1] - r.bmax).abs() <= 1e-15);
        }
    }

    #[test]
    fn file_output_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        emit_csv(&series(5), &a).unwrap();
        emit_csv(&series(5), &b).unwrap();
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }

    #[test]
    fn bad_header_rejected() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
