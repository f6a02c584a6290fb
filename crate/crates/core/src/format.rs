//! The `bits|bits` text format for check matrices and coset representative
//! lists. One vector per line, `#` starts a comment, blank lines are skipped.

use crate::error::{Error, Result};
use crate::gf2::SympVector;

/// Parses a check-matrix (or Ω) file body into vectors in file order.
pub fn parse_check_matrix(text: &str) -> Result<Vec<SympVector>> {
    let mut out: Vec<SympVector> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let v = parse_line(body, line_no)?;
        match width {
            None => width = Some(v.n()),
            Some(w) if w != v.n() => {
                return Err(Error::InconsistentLength {
                    line: line_no,
                    expected: w,
                    found: v.n(),
                })
            }
            Some(_) => {}
        }
        out.push(v);
    }
    Ok(out)
}

fn parse_line(body: &str, line: usize) -> Result<SympVector> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut bar = false;
    for (i, ch) in body.chars().enumerate() {
        let col = i + 1;
        match ch {
            '0' | '1' => {
                let bit = ch == '1';
                if bar {
                    b.push(bit)
                } else {
                    a.push(bit)
                }
            }
            '|' if !bar => bar = true,
            '|' => {
                return Err(Error::Syntax {
                    line,
                    col,
                    message: "second '|' separator".into(),
                })
            }
            c if c.is_whitespace() => {}
            c => {
                return Err(Error::Syntax {
                    line,
                    col,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    if !bar {
        return Err(Error::Syntax {
            line,
            col: body.chars().count() + 1,
            message: "missing '|' separator".into(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::InconsistentLength {
            line,
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Syntax {
            line,
            col: 1,
            message: "empty vector".into(),
        });
    }
    SympVector::from_bits(&a, &b)
}

/// Writes vectors back out, one per line.
pub fn write_check_matrix(vectors: &[SympVector]) -> String {
    let mut s = String::new();
    for v in vectors {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}
