//! Text formats for representations (`.rep`) and homomorphism candidates
//! (`.hom`).
//!
//! ```text
//! presentation: 4_1        # optional
//! prime: 7
//! x1 = 1 1 ; 0 1           # rows separated by `;`
//! ```
//!
//! ```text
//! source: 9_37
//! target: 4_1
//! y1 -> x2
//! y3 -> x1 x4 x1^-1
//! ```

use crate::error::{Error, Location, Result};
use crate::matrix::Matrix;
use crate::presentation::{Presentation, Word};
use crate::ring::{PrimeField, Ring};
use crate::twisted::Representation;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { at: Location { line, column }, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn indent(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

/// A parsed `.rep` file. Image entries are integers, reduced mod `prime` when
/// the representation is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFile {
    pub presentation: Option<String>,
    pub prime: u64,
    pub images: Vec<(String, Vec<Vec<i64>>)>,
}

impl RepFile {
    pub fn parse(text: &str) -> Result<RepFile> {
        let mut presentation = None;
        let mut prime = None;
        let mut images: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = strip_comment(raw);
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let col = indent(line);
            if let Some((name, body)) = t.split_once('=') {
                let name = name.trim();
                if name.is_empty() {
                    return Err(syntax(line_no, col, "missing generator name before `=`"));
                }
                if images.iter().any(|(n, _)| n == name) {
                    return Err(Error::DuplicateGenerator(name.to_string()));
                }
                let mut rows = Vec::new();
                for row in body.split(';') {
                    let entries = row
                        .split_whitespace()
                        .map(|v| v.parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| syntax(line_no, col, "matrix entries must be integers"))?;
                    rows.push(entries);
                }
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(syntax(line_no, col, format!("image of `{name}` is not a square matrix")));
                }
                images.push((name.to_string(), rows));
            } else if let Some((key, value)) = t.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "presentation" => presentation = Some(value.to_string()),
                    "prime" => {
                        let p = value
                            .parse::<u64>()
                            .map_err(|_| syntax(line_no, col, "prime must be a positive integer"))?;
                        prime = Some(p);
                    }
                    other => return Err(syntax(line_no, col, format!("unknown header `{other}`"))),
                }
            } else {
                return Err(syntax(line_no, col, "expected `name = matrix` or `key: value`"));
            }
        }
        let prime = prime.ok_or_else(|| Error::Format("representation file has no `prime:` header".into()))?;
        Ok(RepFile { presentation, prime, images })
    }

    /// Builds the representation, ordering images by the presentation's
    /// generators and checking every relator.
    pub fn to_representation(&self, p: &Presentation) -> Result<Representation<PrimeField>> {
        let field = PrimeField::new(self.prime)?;
        let mut ordered = Vec::with_capacity(p.generator_count());
        for name in p.generator_names() {
            let (_, rows) = self
                .images
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::Format(format!("no image given for generator `{name}`")))?;
            let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
            ordered.push(Matrix::from_rows(&field, rows).expect("rows checked square"));
        }
        if let Some((name, _)) = self.images.iter().find(|(n, _)| p.generator_index(n).is_none()) {
            return Err(Error::Format(format!("image given for unknown generator `{name}`")));
        }
        Representation::new(&field, p, ordered)
    }

    /// Serializes a representation in this format.
    pub fn render(presentation_id: Option<&str>, p: &Presentation, rep: &Representation<PrimeField>) -> String {
        let mut out = String::new();
        if let Some(id) = presentation_id {
            out.push_str(&format!("presentation: {id}\n"));
        }
        out.push_str(&format!("prime: {}\n", rep.ring().modulus()));
        for (name, m) in p.generator_names().iter().zip(rep.images()) {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!("{name} = {}\n", rows.join(" ; ")));
        }
        out
    }
}

/// A parsed `.hom` file; image words are kept as text until the target
/// presentation is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFile {
    pub source: Option<String>,
    pub target: Option<String>,
    pub images: Vec<(String, String)>,
}

impl HomFile {
    pub fn parse(text: &str) -> Result<HomFile> {
        let mut source = None;
        let mut target = None;
        let mut images: Vec<(String, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = strip_comment(raw);
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let col = indent(line);
            if let Some((name, word)) = t.split_once("->") {
                let name = name.trim();
                if name.is_empty() {
                    return Err(syntax(line_no, col, "missing generator name before `->`"));
                }
                if images.iter().any(|(n, _)| n == name) {
                    return Err(Error::DuplicateGenerator(name.to_string()));
                }
                images.push((name.to_string(), word.trim().to_string()));
            } else if let Some((key, value)) = t.split_once(':') {
                let value = value.trim().to_string();
                match key.trim() {
                    "source" => source = Some(value),
                    "target" => target = Some(value),
                    other => return Err(syntax(line_no, col, format!("unknown header `{other}`"))),
                }
            } else {
                return Err(syntax(line_no, col, "expected `generator -> word` or `key: value`"));
            }
        }
        Ok(HomFile { source, target, images })
    }
}

/// Images of the source generators as words in the target generators, listed
/// in source generator order.
pub fn resolve_images(file: &HomFile, source: &Presentation, target: &Presentation) -> Result<Vec<Word>> {
    if let Some((name, _)) = file.images.iter().find(|(n, _)| source.generator_index(n).is_none()) {
        return Err(Error::Format(format!("image given for unknown source generator `{name}`")));
    }
    source
        .generator_names()
        .iter()
        .map(|name| {
            let (_, text) = file
                .images
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::Format(format!("no image given for source generator `{name}`")))?;
            target.parse_word(text)
        })
        .collect()
}
