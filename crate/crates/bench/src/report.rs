//! CSV output for [`RunRecord`]s, and the parser that reads it back.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use crate::run::RunRecord;
use crate::BenchError;

pub const HEADER: [&str; 6] = ["policy", "size", "sample", "constructors", "nanos", "outcome"];

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record([
            r.policy.to_string(),
            r.size.to_string(),
            r.sample.to_string(),
            r.constructors.to_string(),
            r.nanos.to_string(),
            r.outcome.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `records` to `path`, header first.
pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<(), BenchError> {
    let io = |source| BenchError::Io {
        path: path.to_owned(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    write_csv(records, file).map_err(|e| BenchError::Csv {
        path: path.to_owned(),
        source: e,
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<RunRecord>, BenchError> {
    let file = File::open(path).map_err(|source| BenchError::Io {
        path: path.to_owned(),
        source,
    })?;
    let csv_err = |e| BenchError::Csv {
        path: path.to_owned(),
        source: e,
    };
    let mut reader = csv::Reader::from_reader(BufReader::new(file));
    if reader.headers().map_err(csv_err)? != HEADER.as_slice() {
        return Err(BenchError::Parse(format!("{}: unexpected header", path.display())));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err)?;
        let field = |i: usize| row.get(i).ok_or_else(|| BenchError::Parse(format!("short row {row:?}")));
        let num = |i: usize| -> Result<u64, BenchError> {
            field(i)?
                .parse()
                .map_err(|e| BenchError::Parse(format!("column {}: {e}", HEADER[i])))
        };
        records.push(RunRecord {
            policy: field(0)?.parse()?,
            size: num(1)?,
            sample: num(2)?
                .try_into()
                .map_err(|_| BenchError::Parse("sample index out of range".into()))?,
            constructors: num(3)?,
            nanos: num(4)?,
            outcome: field(5)?.parse()?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::Policy;
    use crate::run::Outcome;

    fn records() -> Vec<RunRecord> {
        vec![
            RunRecord {
                policy: Policy::Naive,
                size: 25,
                sample: 0,
                constructors: 1_000_000,
                nanos: 123,
                outcome: Outcome::StepCapped,
            },
            RunRecord {
                policy: Policy::SizeDivision(3),
                size: 20,
                sample: 1,
                constructors: 7,
                nanos: 9,
                outcome: Outcome::Completed,
            },
            RunRecord {
                policy: Policy::Budgeted,
                size: 0,
                sample: 2,
                constructors: 0,
                nanos: 1,
                outcome: Outcome::Failed,
            },
        ]
    }

    #[test]
    fn empty_list_writes_only_the_header() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "policy,size,sample,constructors,nanos,outcome\n");
    }

    #[test]
    fn one_line_per_record() {
        let mut buf = Vec::new();
        write_csv(&records(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().nth(2), Some("sizediv:3,20,1,7,9,completed"));
    }

    #[test]
    fn round_trip_through_a_file() {
        let dir = std::env::temp_dir().join(format!("costgen-bench-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("runs.csv");
        emit_csv(&records(), &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), records());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn io_errors_name_the_path() {
        let path = Path::new("/nonexistent-dir/runs.csv");
        let err = emit_csv(&records(), path).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/runs.csv"), "{err}");
    }
}
