//! Text formats: CSV point clouds, barcodes and number rendering.

use std::io::{Read, Write};

use georecon::geometry::PointCloud;
use georecon::homology::PersistenceDiagram;

use crate::CliError;

/// Shortest decimal that parses back to the same `f64`; infinities print
/// as `inf` / `-inf`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Reads a headerless CSV cloud, one point per line.
pub fn read_cloud<R: Read>(reader: R) -> Result<PointCloud, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Invalid(format!("CSV record {}: {e}", line + 1)),
        })?;
        let row = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Invalid(format!("CSV record {}: bad coordinate {f:?}", line + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(PointCloud::from_rows(&rows)?)
}

pub fn write_cloud<W: Write>(writer: W, cloud: &PointCloud) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for p in cloud.iter() {
        w.write_record(p.iter().map(|&x| num(x))).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Square matrix as CSV rows.
pub fn write_matrix<W: Write>(writer: W, n: usize, data: &[f64]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for row in data.chunks(n.max(1)) {
        w.write_record(row.iter().map(|&x| num(x))).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// `dim birth death` per interval.
pub fn write_barcode<W: Write>(mut w: W, d: &PersistenceDiagram) -> Result<(), CliError> {
    for i in d.intervals() {
        writeln!(w, "{} {} {}", i.dim, num(i.birth), num(i.death)).map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}
