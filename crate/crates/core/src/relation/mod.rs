//! Dictionary-encoded relation instances with ignore-NULL semantics.
//!
//! Every column is stored as a dense array of `u32` codes. Codes index the
//! column's dictionary in first-occurrence order; [`NULL_CODE`] marks a
//! missing cell. All equality tests during the search are integer
//! comparisons on these codes.

mod csv_io;
mod frequency;
mod grouping;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub use csv_io::{load_csv, load_csv_path, write_csv, LoadOptions};
pub use frequency::{group_frequencies, validity_mask, GroupFrequency, GroupedFrequencies, ValidityMask};
pub use grouping::{group_lhs, Grouper, LhsGrouping};

/// Code stored for a NULL cell.
pub const NULL_CODE: u32 = u32::MAX;

/// Ordered, uniquely named attributes. Index `i` is the canonical position of
/// an attribute in prefixes, bit vectors and output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    names: Vec<String>,
}

impl Schema {
    /// Builds a schema, renaming duplicates to `name_<position>` until every
    /// name is unique.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let raw: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen: FxHashMap<String, ()> = FxHashMap::default();
        let mut names = Vec::with_capacity(raw.len());
        for (pos, name) in raw.iter().enumerate() {
            let mut candidate = name.clone();
            if seen.contains_key(&candidate) {
                candidate = format!("{name}_{pos}");
                let mut bump = 1;
                while seen.contains_key(&candidate) || raw[pos + 1..].contains(&candidate) {
                    candidate = format!("{name}_{pos}_{bump}");
                    bump += 1;
                }
            }
            seen.insert(candidate.clone(), ());
            names.push(candidate);
        }
        Schema { names }
    }

    /// `col0 .. col(m-1)`.
    pub fn synthesized(m: usize) -> Self {
        Schema::new((0..m).map(|i| format!("col{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An immutable relation instance `r` over a [`Schema`].
#[derive(Debug, Clone)]
pub struct Relation {
    schema: Schema,
    rows: usize,
    columns: Vec<Vec<u32>>,
    dictionaries: Vec<Vec<String>>,
}

impl Relation {
    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    /// `n`, the number of tuples.
    pub fn row_count(&self) -> usize {
        self.rows
    }

    /// `m`, the number of attributes.
    pub fn attribute_count(&self) -> usize {
        self.schema.len()
    }

    pub fn column(&self, attr: usize) -> &[u32] {
        &self.columns[attr]
    }

    pub fn dictionary(&self, attr: usize) -> &[String] {
        &self.dictionaries[attr]
    }

    /// Number of distinct non-NULL values in a column.
    pub fn cardinality(&self, attr: usize) -> usize {
        self.dictionaries[attr].len()
    }

    pub fn code(&self, attr: usize, row: usize) -> u32 {
        self.columns[attr][row]
    }

    pub fn is_null(&self, attr: usize, row: usize) -> bool {
        self.columns[attr][row] == NULL_CODE
    }

    /// Original string of a cell, `None` for NULL.
    pub fn value(&self, attr: usize, row: usize) -> Option<&str> {
        self.decode(attr, self.columns[attr][row])
    }

    pub fn decode(&self, attr: usize, code: u32) -> Option<&str> {
        if code == NULL_CODE {
            None
        } else {
            self.dictionaries[attr].get(code as usize).map(String::as_str)
        }
    }

    /// Code of `value` in column `attr`, if the value occurs there.
    pub fn encode(&self, attr: usize, value: &str) -> Option<u32> {
        self.dictionaries[attr]
            .iter()
            .position(|v| v == value)
            .map(|p| p as u32)
    }

    pub fn has_nulls(&self) -> bool {
        self.columns.iter().any(|c| c.contains(&NULL_CODE))
    }

    /// Relation restricted to the given attributes, in the given order.
    /// Dictionaries are re-derived so codes stay in first-occurrence order.
    pub fn project(&self, attrs: &[usize]) -> Result<Relation> {
        if let Some(&bad) = attrs.iter().find(|&&a| a >= self.attribute_count()) {
            return Err(Error::InvalidArgument(format!("attribute index {bad} out of range")));
        }
        let mut builder = RelationBuilder::new(Schema::new(attrs.iter().map(|&a| self.schema.name(a))));
        for row in 0..self.rows {
            builder.push_row(attrs.iter().map(|&a| self.value(a, row)))?;
        }
        Ok(builder.finish())
    }
}

/// Incrementally dictionary-encodes rows into a [`Relation`].
#[derive(Debug)]
pub struct RelationBuilder {
    schema: Schema,
    rows: usize,
    columns: Vec<Vec<u32>>,
    dictionaries: Vec<Vec<String>>,
    lookup: Vec<FxHashMap<String, u32>>,
}

impl RelationBuilder {
    pub fn new(schema: Schema) -> Self {
        let m = schema.len();
        RelationBuilder {
            schema,
            rows: 0,
            columns: vec![Vec::new(); m],
            dictionaries: vec![Vec::new(); m],
            lookup: vec![FxHashMap::default(); m],
        }
    }

    /// Appends one tuple; `None` cells are NULL.
    pub fn push_row<'a, I>(&mut self, cells: I) -> Result<()>
    where
        I: IntoIterator<Item = Option<&'a str>>,
    {
        let m = self.schema.len();
        let mut count = 0;
        for (attr, cell) in cells.into_iter().enumerate() {
            if attr >= m {
                count = attr + 1;
                continue;
            }
            let code = match cell {
                None => NULL_CODE,
                Some(value) => self.intern(attr, value)?,
            };
            self.columns[attr].push(code);
            count = attr + 1;
        }
        if count != m {
            // roll back the partially written row
            for col in &mut self.columns {
                col.truncate(self.rows);
            }
            return Err(Error::RaggedRow {
                row: self.rows as u64,
                expected: m,
                found: count,
            });
        }
        self.rows += 1;
        Ok(())
    }

    fn intern(&mut self, attr: usize, value: &str) -> Result<u32> {
        if let Some(&code) = self.lookup[attr].get(value) {
            return Ok(code);
        }
        let code = self.dictionaries[attr].len();
        if code >= NULL_CODE as usize {
            return Err(Error::InvalidArgument(format!(
                "column {} exceeds {} distinct values",
                self.schema.name(attr),
                NULL_CODE
            )));
        }
        self.dictionaries[attr].push(value.to_owned());
        self.lookup[attr].insert(value.to_owned(), code as u32);
        Ok(code as u32)
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn finish(self) -> Relation {
        Relation {
            schema: self.schema,
            rows: self.rows,
            columns: self.columns,
            dictionaries: self.dictionaries,
        }
    }
}

impl Relation {
    /// Convenience constructor from string rows; `None` is NULL.
    pub fn from_rows<S: Into<String>>(names: Vec<S>, rows: &[Vec<Option<&str>>]) -> Result<Relation> {
        let mut builder = RelationBuilder::new(Schema::new(names));
        for row in rows {
            builder.push_row(row.iter().copied())?;
        }
        Ok(builder.finish())
    }

    /// Builds a relation directly from per-column codes (NULL = [`NULL_CODE`]).
    /// Values are named after their code. Mostly useful in tests.
    pub fn from_codes(columns: Vec<Vec<u32>>) -> Result<Relation> {
        let m = columns.len();
        let n = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().position(|c| c.len() != n) {
            return Err(Error::RaggedRow {
                row: bad as u64,
                expected: n,
                found: columns[bad].len(),
            });
        }
        let mut builder = RelationBuilder::new(Schema::synthesized(m));
        let mut cells: Vec<Option<String>> = vec![None; m];
        for row in 0..n {
            for (attr, col) in columns.iter().enumerate() {
                cells[attr] = (col[row] != NULL_CODE).then(|| col[row].to_string());
            }
            builder.push_row(cells.iter().map(|c| c.as_deref()))?;
        }
        Ok(builder.finish())
    }
}
