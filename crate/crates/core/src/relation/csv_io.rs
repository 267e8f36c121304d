use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::{Relation, RelationBuilder, Schema};

/// CSV ingestion options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub has_header: bool,
    /// Cells equal to this token are NULL. Empty cells are always NULL.
    pub null_token: String,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            has_header: true,
            null_token: String::new(),
        }
    }
}

/// Reads delimited text into a dictionary-encoded [`Relation`].
///
/// Quoting follows RFC 4180. Rows are numbered from 1 in errors, counting
/// the header line.
pub fn load_csv<R: Read>(source: R, options: &LoadOptions) -> Result<Relation> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(source);

    let mut record = csv::ByteRecord::new();
    let mut line: u64 = 0;

    let mut next = |record: &mut csv::ByteRecord, line: &mut u64| -> Result<bool> {
        *line += 1;
        reader.read_byte_record(record).map_err(|e| Error::Malformed {
            row: e.position().map_or(*line, |p| p.line()),
            message: e.to_string(),
        })
    };

    if !next(&mut record, &mut line)? {
        return Err(Error::EmptyInput);
    }
    let width = record.len();

    let mut builder;
    if options.has_header {
        let names = decode_fields(&record, line)?;
        builder = RelationBuilder::new(Schema::new(names));
        if !next(&mut record, &mut line)? {
            return Ok(builder.finish());
        }
    } else {
        builder = RelationBuilder::new(Schema::synthesized(width));
    }

    loop {
        if record.len() != width {
            return Err(Error::RaggedRow {
                row: record.position().map_or(line, |p| p.line()),
                expected: width,
                found: record.len(),
            });
        }
        let fields = decode_fields(&record, line)?;
        builder.push_row(fields.iter().map(|f| {
            if f.is_empty() || *f == options.null_token {
                None
            } else {
                Some(f.as_str())
            }
        }))?;
        if !next(&mut record, &mut line)? {
            break;
        }
    }
    Ok(builder.finish())
}

fn decode_fields(record: &csv::ByteRecord, fallback_line: u64) -> Result<Vec<String>> {
    record
        .iter()
        .map(|field| {
            std::str::from_utf8(field).map(str::to_owned).map_err(|e| Error::Malformed {
                row: record.position().map_or(fallback_line, |p| p.line()),
                message: format!("invalid UTF-8: {e}"),
            })
        })
        .collect()
}

pub fn load_csv_path(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Relation> {
    let file = File::open(path)?;
    load_csv(BufReader::new(file), options)
}

/// Writes the relation with a header row; NULL cells become empty fields.
pub fn write_csv<W: Write>(relation: &Relation, sink: W, delimiter: u8) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().delimiter(delimiter).from_writer(sink);
    let io = |e: csv::Error| Error::Io(e.into());
    writer.write_record(relation.schema().names()).map_err(io)?;
    let m = relation.attribute_count();
    for row in 0..relation.row_count() {
        writer
            .write_record((0..m).map(|a| relation.value(a, row).unwrap_or("")))
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}
