//! JSON input formats and the fixed-precision number encoding used in
//! reports.

use std::fs;
use std::io::Read;

use moment_schur::{Complex64, Matrix, Sequence};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::CliError;

/// A matrix entry: `[re, im]` or a bare real number.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl Entry {
    fn value(self) -> Complex64 {
        match self {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// A matrix as a list of rows.
pub type RowsJson = Vec<Vec<Entry>>;

/// A matrix file or the `--last` argument: rows, or a single entry for `q = 1`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(RowsJson),
    Scalar(Entry),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub q: usize,
    pub blocks: Vec<RowsJson>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurFile {
    pub a: RowsJson,
    pub v: RowsJson,
}

pub fn rows_to_matrix(rows: &RowsJson) -> Result<Matrix, CliError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().position(|row| row.len() != c) {
        return Err(CliError::Parse(format!(
            "ragged matrix: row {bad} has {} entries, row 0 has {c}",
            rows[bad].len()
        )));
    }
    let data = rows.iter().flatten().map(|e| e.value()).collect();
    Ok(Matrix::from_vec(r, c, data)?)
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        match self {
            MatrixJson::Rows(rows) => rows_to_matrix(rows),
            MatrixJson::Scalar(e) => Ok(Matrix::from_vec(1, 1, vec![e.value()])?),
        }
    }
}

impl SequenceFile {
    pub fn to_sequence(&self) -> Result<Sequence, CliError> {
        if self.blocks.is_empty() {
            return Err(CliError::Parse("sequence file has no blocks".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, rows)| {
                let m = rows_to_matrix(rows)?;
                if m.shape() != (self.q, self.q) {
                    return Err(CliError::Core(moment_schur::Error::DimensionMismatch(
                        format!(
                            "block {j} is {}x{}, file declares q = {}",
                            m.rows(),
                            m.cols(),
                            self.q
                        ),
                    )));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Sequence::new(blocks)?)
    }
}

/// Reads a path, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Parse(format!("reading {path}: {e}")))
    }
}

pub fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

/// A real number printed with 17 significant digits.
pub fn num(x: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{x:.16e}")).expect("scientific notation is valid JSON")
}

/// `[re, im]`, kept on one line by pretty printers.
fn pair(z: Complex64) -> Box<RawValue> {
    RawValue::from_string(format!("[{}, {}]", num(z.re).get(), num(z.im).get()))
        .expect("valid JSON pair")
}

/// A matrix as rows of `[re, im]` pairs.
#[derive(Debug, Serialize)]
#[serde(transparent)]
pub struct MatrixOut(Vec<Vec<Box<RawValue>>>);

impl MatrixOut {
    pub fn new(m: &Matrix) -> Self {
        Self(
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| pair(m[(i, j)])).collect())
                .collect(),
        )
    }
}

/// A sequence in the same layout as [`SequenceFile`].
#[derive(Debug, Serialize)]
pub struct SequenceOut {
    pub q: usize,
    pub blocks: Vec<MatrixOut>,
}

impl SequenceOut {
    pub fn new(s: &Sequence) -> Self {
        Self {
            q: s.q(),
            blocks: s.blocks().iter().map(MatrixOut::new).collect(),
        }
    }
}
