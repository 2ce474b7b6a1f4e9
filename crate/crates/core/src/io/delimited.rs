//! Delimited-text ingestion and export of datasets.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::{CharacterColumn, Dataset};
use crate::error::{Error, Result};
use crate::vector::NumericVector;

/// Code substituted for empty cells under [`MissingPolicy::AsCategory`].
pub const MISSING_CODE: &str = "(missing)";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MissingPolicy {
    /// Empty character cells are an error.
    #[default]
    Reject,
    /// Empty character cells become the code [`MISSING_CODE`].
    AsCategory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub missing: MissingPolicy,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            missing: MissingPolicy::Reject,
        }
    }
}

/// Loads a dataset from a delimited file with a header row.
///
/// `characters` selects and orders the character columns; when `None`,
/// every non-target column is used in file order.
pub fn load_csv(
    path: impl AsRef<Path>,
    target_column: &str,
    characters: Option<&[String]>,
    options: LoadOptions,
) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    read_dataset(file, target_column, characters, options)
}

pub fn read_dataset<R: Read>(
    reader: R,
    target_column: &str,
    characters: Option<&[String]>,
    options: LoadOptions,
) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(Error::MissingHeader);
    }
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_owned()))
    };
    let target_idx = column(target_column)?;
    let char_idx: Vec<usize> = match characters {
        Some(names) => names.iter().map(|n| column(n)).collect::<Result<_>>()?,
        None => (0..header.len()).filter(|&i| i != target_idx).collect(),
    };

    let mut target = Vec::new();
    let mut codes: Vec<Vec<String>> = vec![Vec::new(); char_idx.len()];
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let raw = &record[target_idx];
        let value = raw
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::NonNumericTarget {
                row: line,
                column: target_column.to_owned(),
                value: raw.to_owned(),
            })?;
        target.push(value);
        for (slot, &i) in codes.iter_mut().zip(&char_idx) {
            let cell = &record[i];
            let code = match (cell.is_empty(), options.missing) {
                (false, _) => cell.to_owned(),
                (true, MissingPolicy::AsCategory) => MISSING_CODE.to_owned(),
                (true, MissingPolicy::Reject) => {
                    return Err(Error::MissingCell {
                        row: line,
                        column: header[i].clone(),
                    })
                }
            };
            slot.push(code);
        }
    }
    let target = NumericVector::new(target)?;
    let columns = char_idx
        .iter()
        .zip(codes)
        .map(|(&i, codes)| CharacterColumn::new(header[i].clone(), codes))
        .collect::<Result<_>>()?;
    Dataset::new(target, columns)
}

/// Writes the target (first column, named `target_name`) and all characters.
/// Targets use the shortest representation that parses back to the same value.
pub fn write_dataset<W: Write>(d: &Dataset, target_name: &str, writer: W, delimiter: u8) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().delimiter(delimiter).from_writer(writer);
    let mut header = vec![target_name.to_owned()];
    header.extend(d.names().iter().map(|s| s.to_string()));
    wtr.write_record(&header)?;
    for i in 0..d.len() {
        let mut row = vec![d.target().values()[i].to_string()];
        row.extend(d.characters().iter().map(|c| c.codes()[i].clone()));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Keeps the rows whose target is at most `max_value`.
pub fn filter_target_max(d: &Dataset, max_value: f64) -> Result<Dataset> {
    let rows: Vec<usize> = d
        .target()
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= max_value)
        .map(|(i, _)| i)
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptyFilter);
    }
    d.select_rows(&rows)
}
