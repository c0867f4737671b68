//! Text and JSON forms of an H-representation.
//!
//! JSON rows are `[c_1, …, c_n, offset]`. Text blocks are headed
//! `EQ m n+1` / `INEQ m n+1` with one row `offset c_1 … c_n` per line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Functional, HRepresentation};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonForm {
    #[serde(with = "crate::serde_num::int_rows")]
    equalities: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_num::int_rows")]
    inequalities: Vec<Vec<BigInt>>,
}

fn offset_last(f: &Functional) -> Vec<BigInt> {
    let mut v = f.coeffs().to_vec();
    v.push(f.offset().clone());
    v
}

fn from_offset_last(mut v: Vec<BigInt>) -> Functional {
    let offset = v.pop().expect("nonempty row");
    Functional::new(offset, v)
}

impl HRepresentation {
    pub fn to_json(&self) -> String {
        let form = JsonForm {
            equalities: self.equalities.iter().map(offset_last).collect(),
            inequalities: self.inequalities.iter().map(offset_last).collect(),
        };
        serde_json::to_string(&form).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        let form: JsonForm = serde_json::from_str(s).map_err(|e| err(e.line(), e.to_string()))?;
        let width = form
            .equalities
            .iter()
            .chain(&form.inequalities)
            .map(Vec::len)
            .next()
            .ok_or_else(|| err(1, "no rows, ambient dimension unknown"))?;
        if width == 0 || form.equalities.iter().chain(&form.inequalities).any(|r| r.len() != width) {
            return Err(err(1, "rows must be nonempty and of equal length"));
        }
        Ok(HRepresentation {
            ambient_dim: width - 1,
            equalities: form.equalities.into_iter().map(from_offset_last).collect(),
            inequalities: form.inequalities.into_iter().map(from_offset_last).collect(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (tag, rows) in [("EQ", &self.equalities), ("INEQ", &self.inequalities)] {
            writeln!(out, "{tag} {} {}", rows.len(), self.ambient_dim + 1).unwrap();
            for f in rows {
                let line: Vec<String> = f.homogeneous().iter().map(ToString::to_string).collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self, FormatError> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let mut blocks: Vec<Vec<Functional>> = Vec::new();
        let mut width = None;
        for tag in ["EQ", "INEQ"] {
            let (no, header) = lines.next().ok_or_else(|| err(0, format!("missing {tag} header")))?;
            let parts: Vec<&str> = header.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != tag {
                return Err(err(no, format!("expected `{tag} <rows> <columns>`")));
            }
            let rows: usize = parts[1].parse().map_err(|_| err(no, "bad row count"))?;
            let cols: usize = parts[2].parse().map_err(|_| err(no, "bad column count"))?;
            if cols == 0 || width.is_some_and(|w| w != cols) {
                return Err(err(no, "inconsistent column count"));
            }
            width = Some(cols);
            let mut block = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (no, line) = lines.next().ok_or_else(|| err(no, "missing row"))?;
                let row: Vec<BigInt> = line
                    .split_whitespace()
                    .map(|x| x.parse::<BigInt>().map_err(|_| err(no, format!("not an integer: {x}"))))
                    .collect::<Result<_, _>>()?;
                if row.len() != cols {
                    return Err(err(no, format!("expected {cols} entries, found {}", row.len())));
                }
                block.push(Functional::from_homogeneous(row));
            }
            blocks.push(block);
        }
        if let Some((no, _)) = lines.next() {
            return Err(err(no, "trailing content"));
        }
        let inequalities = blocks.pop().expect("two blocks");
        let equalities = blocks.pop().expect("two blocks");
        Ok(HRepresentation {
            ambient_dim: width.expect("header read") - 1,
            equalities,
            inequalities,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{HullBudget, PointConfiguration};
    use super::*;
    use crate::group::tests::ct;

    #[test]
    fn round_trips() {
        let h = PointConfiguration::from_cycle_type(&ct(&[2, 3]))
            .unwrap()
            .facets(&HullBudget::default())
            .unwrap();
        assert_eq!(HRepresentation::from_json(&h.to_json()).unwrap(), h);
        assert_eq!(HRepresentation::from_text(&h.to_text()).unwrap(), h);
        assert!(h.to_text().starts_with("EQ 2 6\n"));
    }

    #[test]
    fn rejects_malformed_text() {
        assert_eq!(HRepresentation::from_text("EQ 0 3\nINEQ 1 3\n1 2\n").unwrap_err().line, 3);
        assert!(HRepresentation::from_text("INEQ 0 3\n").is_err());
    }
}
