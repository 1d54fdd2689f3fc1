//! CSV and gnuplot output for correlation records.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::scenario::CorrelationRecord;

pub const CSV_HEADER: &str =
    "key,pop00,pop01,pop10,pop11,survival,purity,concurrence,mid,discord,work_deficit,degeneracy_flag,optimizer_flag";

/// Values of the `optimizer_flag` column.
pub const FLAG_CONVERGED: u8 = 0;
pub const FLAG_UNCONVERGED: u8 = 1;
pub const FLAG_FAILED: u8 = 2;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("no records to write")]
    Empty,
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> OutputError + '_ {
    move |source| OutputError::Io {
        path: path.display().to_string(),
        source,
    }
}

impl CorrelationRecord {
    pub fn optimizer_flag(&self) -> u8 {
        match (&self.failure, self.optimizer_converged) {
            (Some(_), _) => FLAG_FAILED,
            (None, true) => FLAG_CONVERGED,
            (None, false) => FLAG_UNCONVERGED,
        }
    }

    /// One CSV row. `{:e}` prints the shortest exact representation, so
    /// every value reads back bit-for-bit.
    pub fn to_csv_row(&self) -> String {
        let mut row = String::new();
        let values = [self.key].into_iter().chain(self.populations).chain([
            self.survival,
            self.purity,
            self.concurrence,
            self.mid,
            self.discord,
            self.work_deficit,
        ]);
        for v in values {
            write!(row, "{v:e},").unwrap();
        }
        write!(row, "{},{}", u8::from(self.degenerate), self.optimizer_flag()).unwrap();
        row
    }

    /// Inverse of [`to_csv_row`](Self::to_csv_row). A failed row comes back
    /// with a generic failure reason.
    pub fn from_csv_row(row: &str) -> Result<Self, String> {
        let fields: Vec<&str> = row.trim_end().split(',').collect();
        if fields.len() != 13 {
            return Err(format!("expected 13 fields, found {}", fields.len()));
        }
        let num = |i: usize| fields[i].parse::<f64>().map_err(|e| format!("field {}: {e}", i + 1));
        let flag = |i: usize| fields[i].parse::<u8>().map_err(|e| format!("field {}: {e}", i + 1));
        let optimizer = flag(12)?;
        if optimizer > FLAG_FAILED {
            return Err(format!("unknown optimizer flag {optimizer}"));
        }
        Ok(Self {
            key: num(0)?,
            populations: [num(1)?, num(2)?, num(3)?, num(4)?],
            survival: num(5)?,
            purity: num(6)?,
            concurrence: num(7)?,
            mid: num(8)?,
            discord: num(9)?,
            work_deficit: num(10)?,
            degenerate: flag(11)? == 1,
            optimizer_converged: optimizer == FLAG_CONVERGED,
            failure: (optimizer == FLAG_FAILED).then(|| "failed point".to_string()),
        })
    }
}

pub fn write_csv(records: &[CorrelationRecord], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.to_csv_row())?;
    }
    out.flush()
}

/// Writes the header and one row per record to `destination`.
pub fn emit_csv(records: &[CorrelationRecord], destination: &Path) -> Result<(), OutputError> {
    if records.is_empty() {
        return Err(OutputError::Empty);
    }
    let file = fs::File::create(destination).map_err(io_error(destination))?;
    write_csv(records, io::BufWriter::new(file)).map_err(io_error(destination))
}

pub fn read_csv(text: &str) -> Result<Vec<CorrelationRecord>, OutputError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        _ => {
            return Err(OutputError::Parse {
                line: 1,
                message: "missing or unexpected header".into(),
            })
        }
    }
    lines
        .enumerate()
        .map(|(i, row)| {
            CorrelationRecord::from_csv_row(row).map_err(|message| OutputError::Parse { line: i + 2, message })
        })
        .collect()
}

/// Gnuplot script drawing the correlations (top) and the populations and
/// purity (bottom) from `csv_path`. Rendering goes to a PNG next to the script.
pub fn plot_script(
    records: &[CorrelationRecord],
    key_label: &str,
    csv_path: &Path,
    png_path: &Path,
) -> Result<String, OutputError> {
    if records.is_empty() {
        return Err(OutputError::Empty);
    }
    let csv = quote(csv_path);
    let png = quote(png_path);
    let style = if records.len() < 100 { "linespoints" } else { "lines" };
    Ok(format!(
        "# tricorr plot script, render with gnuplot\n\
         set datafile separator ','\n\
         set datafile missing 'NaN'\n\
         set terminal pngcairo size 900,1000\n\
         set output '{png}'\n\
         set multiplot layout 2,1\n\
         set xlabel '{key_label}'\n\
         set ylabel 'correlation'\n\
         set key top right\n\
         plot '{csv}' skip 1 using 1:8 with {style} dt 2 lc rgb 'black' title 'concurrence', \\\n\
         \x20    '' skip 1 using 1:9 with {style} lc rgb 'red' title 'MID', \\\n\
         \x20    '' skip 1 using 1:10 with {style} lc rgb 'blue' title 'discord', \\\n\
         \x20    '' skip 1 using 1:11 with {style} dt 3 lc rgb 'dark-green' title 'work deficit'\n\
         set ylabel 'population'\n\
         plot '{csv}' skip 1 using 1:2 with {style} title '|00>', \\\n\
         \x20    '' skip 1 using 1:3 with {style} title '|01>', \\\n\
         \x20    '' skip 1 using 1:5 with {style} title '|11>', \\\n\
         \x20    '' skip 1 using 1:7 with {style} dt 2 lc rgb 'black' title 'purity'\n\
         unset multiplot\n"
    ))
}

fn quote(path: &Path) -> String {
    path.display().to_string().replace('\'', "''")
}

/// Writes [`plot_script`] to `destination`; the PNG gets the same stem.
pub fn emit_plot_script(
    records: &[CorrelationRecord],
    key_label: &str,
    csv_path: &Path,
    destination: &Path,
) -> Result<(), OutputError> {
    let png = destination.with_extension("png");
    let script = plot_script(records, key_label, csv_path, &png)?;
    fs::write(destination, script).map_err(io_error(destination))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(key: f64) -> CorrelationRecord {
        CorrelationRecord {
            key,
            populations: [0.5, 0.25, 0.0, 0.25],
            survival: 0.9,
            purity: 1.0 / 3.0,
            concurrence: 0.1,
            mid: 0.2,
            discord: 0.15,
            work_deficit: 0.17,
            degenerate: true,
            optimizer_converged: false,
            failure: None,
        }
    }

    #[test]
    fn header_is_exact() {
        let mut buf = Vec::new();
        write_csv(&[record(0.0)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn rows_round_trip_exactly() {
        let records = vec![
            record(0.01),
            record(1.0 / 7.0),
            CorrelationRecord::failed(2.5, "boom".into()),
        ];
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let back = read_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back[..2], records[..2]);
        assert_eq!(back[2].key, 2.5);
        assert!(back[2].is_failed() && back[2].mid.is_nan());
        assert_eq!(back[2].optimizer_flag(), FLAG_FAILED);
    }

    #[test]
    fn flags() {
        let row = record(0.0).to_csv_row();
        assert!(row.ends_with(",1,1"));
        let ok = CorrelationRecord {
            degenerate: false,
            optimizer_converged: true,
            ..record(0.0)
        };
        assert!(ok.to_csv_row().ends_with(",0,0"));
    }

    #[test]
    fn rejects_empty_and_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            emit_csv(&[], &dir.path().join("x.csv")),
            Err(OutputError::Empty)
        ));
        assert!(matches!(
            emit_plot_script(&[], "t", Path::new("x.csv"), &dir.path().join("x.gp")),
            Err(OutputError::Empty)
        ));
        assert!(read_csv("key,pop00\n").is_err());
        let bad = format!("{CSV_HEADER}\n1,2,3\n");
        assert!(matches!(read_csv(&bad), Err(OutputError::Parse { line: 2, .. })));
    }

    #[test]
    fn plot_script_mentions_axis_and_data() {
        let dir = tempfile::tempdir().unwrap();
        let gp = dir.path().join("run.gp");
        emit_plot_script(&[record(0.0)], "omega2", Path::new("run.csv"), &gp).unwrap();
        let script = std::fs::read_to_string(&gp).unwrap();
        assert!(script.contains("set xlabel 'omega2'"));
        assert!(script.contains("plot 'run.csv' skip 1 using 1:8"));
        assert!(script.contains("run.png"));
    }
}
