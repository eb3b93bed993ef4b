//! MacKay's alist text format for sparse binary matrices.
//!
//! ```text
//! n m
//! max_col_weight max_row_weight
//! <n column weights>
//! <m row weights>
//! <n lines: 1-based row indices of each column, zero padded>
//! <m lines: 1-based column indices of each row, zero padded>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

fn join(items: impl Iterator<Item = usize>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(idx: &[usize], width: usize) -> String {
    join(idx.iter().map(|&i| i + 1).chain(std::iter::repeat_n(0, width - idx.len())))
}

pub fn write_alist(h: &SparseMatrix) -> String {
    let cw = h.col_weights();
    let rw = h.row_weights();
    let max_c = cw.iter().copied().max().unwrap_or(0);
    let max_r = rw.iter().copied().max().unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", h.cols(), h.rows());
    let _ = writeln!(s, "{max_c} {max_r}");
    let _ = writeln!(s, "{}", join(cw.iter().copied()));
    let _ = writeln!(s, "{}", join(rw.iter().copied()));
    for c in 0..h.cols() {
        let _ = writeln!(s, "{}", padded(h.col(c), max_c));
    }
    for r in 0..h.rows() {
        let _ = writeln!(s, "{}", padded(h.row(r), max_r));
    }
    s
}

struct Tokens<'a> {
    it: std::str::SplitAsciiWhitespace<'a>,
}

impl Tokens<'_> {
    fn next(&mut self, what: &str) -> Result<usize> {
        let tok = self
            .it
            .next()
            .ok_or_else(|| Error::Alist(format!("unexpected end of input reading {what}")))?;
        tok.parse()
            .map_err(|_| Error::Alist(format!("expected a non-negative integer for {what}, got {tok:?}")))
    }

    fn list(&mut self, len: usize, what: &str) -> Result<Vec<usize>> {
        (0..len).map(|_| self.next(what)).collect()
    }
}

/// Reads `width` entries, drops zero padding and converts to 0-based indices
/// below `bound`. Padding zeros may only trail the real entries.
fn index_line(t: &mut Tokens, width: usize, weight: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
    let raw = t.list(width, what)?;
    let (real, pad) = raw.split_at(weight.min(width));
    if weight > width || real.contains(&0) || pad.iter().any(|&x| x != 0) {
        return Err(Error::Alist(format!("{what} does not match its declared weight {weight}")));
    }
    real.iter()
        .map(|&i| {
            if i > bound {
                Err(Error::Alist(format!("{what} index {i} exceeds {bound}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

/// Parses an alist and checks the column and row lists describe the same
/// matrix.
pub fn parse_alist(text: &str) -> Result<SparseMatrix> {
    let mut t = Tokens {
        it: text.split_ascii_whitespace(),
    };
    let n = t.next("n")?;
    let m = t.next("m")?;
    let max_c = t.next("max column weight")?;
    let max_r = t.next("max row weight")?;
    let cw = t.list(n, "column weights")?;
    let rw = t.list(m, "row weights")?;
    if cw.iter().copied().max().unwrap_or(0) != max_c || rw.iter().copied().max().unwrap_or(0) != max_r {
        return Err(Error::Alist("maximum weights disagree with the weight lists".into()));
    }
    let cols = (0..n)
        .map(|c| index_line(&mut t, max_c, cw[c], m, "column"))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..m)
        .map(|r| index_line(&mut t, max_r, rw[r], n, "row"))
        .collect::<Result<Vec<_>>>()?;
    if t.it.next().is_some() {
        return Err(Error::Alist("trailing data after the row lists".into()));
    }
    let h = SparseMatrix::from_rows(n, rows)?;
    if h.row_weights() != rw {
        return Err(Error::Alist("duplicate index within a row".into()));
    }
    for (c, mut list) in cols.into_iter().enumerate() {
        list.sort_unstable();
        if list != h.col(c) {
            return Err(Error::Alist(format!("column {} disagrees with the row lists", c + 1)));
        }
    }
    Ok(h)
}
