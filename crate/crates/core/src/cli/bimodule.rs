//! Bimodule description files.
//!
//! ```text
//! # a (B, A)-bimodule: B acts on the left, A on the right
//! bimodule M
//! regular                     # the regular bimodule (needs B = A)
//! projective 1 2              # B e_1 ⊗ e_2 A
//! space 1 1 2                 # e_1 M e_1 has dimension 2
//! left x at 1 : 0 0 ; 1 0     # x acting on e_· M e_1, rows separated by ';'
//! right x at 1 : 0 0 ; 1 0    # x acting on e_1 M e_·
//! ```
//!
//! The bimodule is the direct sum of every `regular` and `projective` line
//! and of the explicit part given by `space`, `left` and `right`. Maps that
//! are not listed are zero.

use std::str::FromStr;

use num_rational::BigRational;

use crate::cli::parse::coerce;
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::morita::Bimodule;
use crate::rep::Alg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionLine {
    pub side: Side,
    pub arrow: String,
    pub at: String,
    pub rows: Vec<Vec<BigRational>>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BimoduleFile {
    pub name: String,
    pub regular: usize,
    pub projectives: Vec<(String, String)>,
    pub spaces: Vec<(String, String, usize)>,
    pub actions: Vec<ActionLine>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((sc, si))) => {
                out.push((sc, &line[si..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, si)) = start {
        out.push((sc, &line[si..]));
    }
    out
}

pub fn parse_bimodule(text: &str) -> Result<BimoduleFile> {
    let mut file = BimoduleFile::default();
    let mut named = false;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let w = words(line);
        let Some(&(col, key)) = w.first() else { continue };
        let end = line.chars().count() + 1;
        let at = |i: usize| w.get(i).map(|x| x.0).unwrap_or(end);
        let need = |n: usize, what: &str| -> Result<()> {
            if w.len() < n {
                Err(perr(ln, at(w.len()), format!("expected {what}")))
            } else if w.len() > n && !matches!(key, "left" | "right") {
                Err(perr(ln, at(n), "unexpected trailing input"))
            } else {
                Ok(())
            }
        };
        match key {
            "bimodule" => {
                need(2, "a name")?;
                file.name = w[1].1.to_string();
                named = true;
            }
            "regular" => {
                need(1, "")?;
                file.regular += 1;
            }
            "projective" => {
                need(3, "two vertex labels")?;
                file.projectives.push((w[1].1.into(), w[2].1.into()));
            }
            "space" => {
                need(4, "two vertex labels and a dimension")?;
                let d = w[3].1.parse().map_err(|_| perr(ln, w[3].0, "expected a dimension"))?;
                file.spaces.push((w[1].1.into(), w[2].1.into(), d));
            }
            "left" | "right" => {
                need(5, "'<arrow> at <vertex> :'")?;
                if w[2].1 != "at" {
                    return Err(perr(ln, w[2].0, "expected 'at'"));
                }
                if w[4].1 != ":" {
                    return Err(perr(ln, w[4].0, "expected ':'"));
                }
                let mut rows = vec![Vec::new()];
                for &(c, tok) in &w[5..] {
                    for (k, piece) in tok.split(';').enumerate() {
                        if k > 0 {
                            rows.push(Vec::new());
                        }
                        if !piece.is_empty() {
                            let v = BigRational::from_str(piece)
                                .map_err(|_| perr(ln, c, format!("bad matrix entry '{piece}'")))?;
                            rows.last_mut().expect("a row").push(v);
                        }
                    }
                }
                if rows.iter().all(Vec::is_empty) {
                    rows.clear();
                }
                if rows.iter().any(|r| r.len() != rows[0].len()) {
                    return Err(perr(ln, w[5].0, "rows of different lengths"));
                }
                let side = if key == "left" { Side::Left } else { Side::Right };
                file.actions.push(ActionLine { side, arrow: w[1].1.into(), at: w[3].1.into(), rows, line: ln });
            }
            other => return Err(perr(ln, col, format!("unknown keyword '{other}'"))),
        }
    }
    if !named {
        return Err(perr(1, 1, "missing 'bimodule <name>' line"));
    }
    Ok(file)
}

impl BimoduleFile {
    /// The bimodule over `(left, right)`.
    pub fn build<F: Field>(&self, left: &Alg<F>, right: &Alg<F>) -> Result<Bimodule<F>> {
        let field = left.field();
        let vertex = |alg: &Alg<F>, label: &str| {
            alg.quiver()
                .vertex_index(label)
                .ok_or_else(|| Error::InvalidRepresentation(format!("{}: no vertex '{label}' in {}", self.name, alg.name())))
        };
        let arrow = |alg: &Alg<F>, label: &str| {
            alg.quiver()
                .arrow_index(label)
                .ok_or_else(|| Error::InvalidRepresentation(format!("{}: no arrow '{label}' in {}", self.name, alg.name())))
        };
        let (nl, nr) = (left.vertex_count(), right.vertex_count());
        let mut dims = vec![vec![0usize; nr]; nl];
        for (u, v, d) in &self.spaces {
            dims[vertex(left, u)?][vertex(right, v)?] = *d;
        }
        let ql = left.quiver();
        let qr = right.quiver();
        let mut lmaps: Vec<Vec<Mat<F>>> = ql
            .arrows()
            .iter()
            .map(|a| (0..nr).map(|v| Mat::zeros(field, dims[a.target][v], dims[a.source][v])).collect())
            .collect();
        let mut rmaps: Vec<Vec<Mat<F>>> = qr
            .arrows()
            .iter()
            .map(|a| (0..nl).map(|c| Mat::zeros(field, dims[c][a.source], dims[c][a.target])).collect())
            .collect();
        for act in &self.actions {
            let (slot, alg) = match act.side {
                Side::Left => {
                    let (x, v) = (arrow(left, &act.arrow)?, vertex(right, &act.at)?);
                    (&mut lmaps[x][v], left)
                }
                Side::Right => {
                    let (x, c) = (arrow(right, &act.arrow)?, vertex(left, &act.at)?);
                    (&mut rmaps[x][c], right)
                }
            };
            let shape = slot.shape();
            let cols = act.rows.first().map(Vec::len).unwrap_or(0);
            if (act.rows.len(), cols) != shape && shape.0 * shape.1 > 0 {
                return Err(Error::InvalidRepresentation(format!(
                    "{} line {}: arrow {} of {} needs a {}x{} matrix",
                    self.name,
                    act.line,
                    act.arrow,
                    alg.name(),
                    shape.0,
                    shape.1
                )));
            }
            let mut rows = Vec::with_capacity(act.rows.len());
            for r in &act.rows {
                rows.push(r.iter().map(|x| coerce(field, x)).collect::<Result<Vec<_>>>()?);
            }
            if shape.0 * shape.1 > 0 {
                *slot = Mat::from_rows(field, rows, shape.1);
            }
        }
        let mut out = Bimodule::from_actions(left, right, dims, lmaps, rmaps)?;
        if self.regular > 0 || !self.projectives.is_empty() {
            if self.regular > 0 && **left != **right {
                return Err(Error::AlgebraMismatch);
            }
            for _ in 0..self.regular {
                out = out.direct_sum(&Bimodule::regular(left))?;
            }
            for (u, v) in &self.projectives {
                let p = Bimodule::projective(left, right, vertex(left, u)?, vertex(right, v)?);
                out = out.direct_sum(&p)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_have_columns() {
        assert_eq!(words("  ab c"), vec![(3, "ab"), (6, "c")]);
    }

    #[test]
    fn parses_and_reports_errors() {
        let f = parse_bimodule("bimodule M\nregular\nspace 1 1 2\nleft x at 1 : 0 0 ; 1 0\n").unwrap();
        assert_eq!(f.regular, 1);
        assert_eq!(f.actions[0].rows.len(), 2);
        match parse_bimodule("bimodule M\nspace 1 1 two\n") {
            Err(Error::Parse { line: 2, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_bimodule("regular\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bimodule("bimodule M\nfoo\n"), Err(Error::Parse { line: 2, column: 1, .. })));
    }
}
