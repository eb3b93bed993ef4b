//! Cyclic codes defined by a parity-check polynomial `u(x)`: generator and
//! check polynomials, circulant parity-check matrix, BCH bound, 4-cycle test
//! and exact minimum distance for small dimensions.

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::matrix::{BitMatrix, SparseMatrix};
use crate::par::{map_indexed, Execution};
use crate::poly::{max_cyclic_run, poly_divide_exact, poly_gcd, BinaryPoly};

/// Largest message-space size [`min_distance_exact`] will enumerate by default.
pub const DEFAULT_DMIN_BUDGET: u128 = 1 << 28;

/// The cyclic code whose parity-check matrix is the circulant of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    pub n: usize,
    pub k: usize,
    /// Generator, degree `n - k`.
    pub g: BinaryPoly,
    /// Check polynomial `gcd(x^n + 1, u)`, degree `k`.
    pub h: BinaryPoly,
    pub u: BinaryPoly,
}

impl CyclicCode {
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator_matrix(&self) -> BitMatrix {
        generator_matrix(self)
    }
}

/// `h = gcd(x^n + 1, u)`, `g = (x^n + 1) / h`, `k = deg h`.
pub fn build_code(u: &BinaryPoly, n: usize) -> Result<CyclicCode> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !u.is_reduced(n) {
        return Err(Error::LengthMismatch(u.degree().unwrap() + 1, n));
    }
    let modulus = BinaryPoly::cyclic_modulus(n);
    let h = poly_gcd(&modulus, u)?;
    let k = h.degree().unwrap_or(0);
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let g = poly_divide_exact(&modulus, &h)?;
    Ok(CyclicCode {
        n,
        k,
        g,
        h,
        u: u.clone(),
    })
}

/// Classical BCH lower bound from the spectrum: a run of `r` consecutive
/// nonzero coefficients of `theta` gives `dmin >= r + 1`.
pub fn bch_bound(theta: &BinaryPoly, n: usize) -> usize {
    max_cyclic_run(theta, n) + 1
}

/// Longest cyclic run of consecutive `j` with `u(alpha^j) != 0`, i.e. of
/// consecutive powers of `alpha` that are roots of `g`. Works for any `u`,
/// idempotent or not; equals `max_cyclic_run(Phi(u))` for idempotents.
pub fn bch_run_from_roots(u: &BinaryPoly, ctx: &FieldContext) -> usize {
    let n = ctx.n();
    let nonroot: Vec<usize> = (0..n)
        .filter(|&j| !ctx.eval_at_alpha_power(u, j).is_zero())
        .collect();
    max_cyclic_run(&BinaryPoly::from_exponents(nonroot), n)
}

/// `n x n` circulant parity-check matrix of `u`.
///
/// Row `r` holds `x^r * u(x^-1)` (columns are the cyclic shifts of `u`), so
/// the null space is exactly the code generated by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantMatrix {
    n: usize,
    u: BinaryPoly,
}

impl CirculantMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &BinaryPoly {
        &self.u
    }

    pub fn first_row(&self) -> Vec<usize> {
        self.row(0)
    }

    /// Column support of row `r`, ascending.
    pub fn row(&self, r: usize) -> Vec<usize> {
        let n = self.n;
        let mut v: Vec<usize> = self.u.support().iter().map(|&e| (r + n - e) % n).collect();
        v.sort_unstable();
        v
    }

    pub fn row_weight(&self) -> usize {
        self.u.weight()
    }

    /// First `rows` rows as a sparse matrix.
    pub fn truncated(&self, rows: usize) -> SparseMatrix {
        SparseMatrix::from_rows(self.n, (0..rows).map(|r| self.row(r)).collect())
            .expect("circulant entries are below n")
    }

    /// Full `n`-row matrix.
    pub fn to_sparse(&self) -> SparseMatrix {
        self.truncated(self.n)
    }

    /// The first `n - k` rows, which are linearly independent.
    pub fn reduced(&self, code: &CyclicCode) -> SparseMatrix {
        self.truncated(code.n - code.k)
    }

    pub fn to_dense(&self) -> BitMatrix {
        self.to_sparse().to_dense()
    }
}

pub fn parity_check_matrix(u: &BinaryPoly, n: usize) -> Result<CirculantMatrix> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(CirculantMatrix {
        n,
        u: u.reduce_mod(n),
    })
}

/// `k x n` matrix with rows `x^i g(x)`, `i = 0..k`.
pub fn generator_matrix(code: &CyclicCode) -> BitMatrix {
    let rows: Vec<Vec<usize>> = (0..code.k)
        .map(|i| code.g.support().iter().map(|&e| e + i).collect())
        .collect();
    BitMatrix::from_row_supports(code.n, &rows)
}

/// True iff all differences `a - b mod n` over ordered pairs of distinct
/// support elements are distinct: no two checks of the circulant share two
/// bits, so its factor graph has no 4-cycles.
pub fn is_orthogonal(u: &BinaryPoly, n: usize) -> bool {
    let s = u.support();
    let mut seen = vec![false; n];
    for &a in s {
        for &b in s {
            if a == b {
                continue;
            }
            let d = (a + n - b) % n;
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
    }
    true
}

/// Minimum Hamming weight over all nonzero codewords, by Gray-code stepping
/// through the `2^k` messages.
pub fn min_distance_exact(code: &CyclicCode, budget: u128) -> Result<usize> {
    min_distance_exact_with(code, budget, Execution::default())
}

pub fn min_distance_exact_with(code: &CyclicCode, budget: u128, exec: Execution) -> Result<usize> {
    let k = code.k;
    let needed = if k >= 127 { u128::MAX } else { 1u128 << k };
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let g = generator_matrix(code);
    let words = code.n.div_ceil(64);
    let rows: Vec<u64> = (0..k).flat_map(|i| g.row_words(i)[..words].to_vec()).collect();

    let chunk_bits = k.min(16);
    let chunks = 1usize << (k - chunk_bits);
    let minima = map_indexed(exec, chunks, |c| {
        gray_chunk_min(&rows, words, c << chunk_bits, 1 << chunk_bits)
    });
    Ok(minima.into_iter().min().unwrap_or(code.n))
}

/// Minimum weight over Gray indices `start..start+len`, skipping index 0.
fn gray_chunk_min(rows: &[u64], words: usize, start: usize, len: usize) -> usize {
    let gray = start ^ (start >> 1);
    let mut word = vec![0u64; words];
    let mut bits = gray;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        for (w, r) in word.iter_mut().zip(&rows[b * words..(b + 1) * words]) {
            *w ^= r;
        }
        bits &= bits - 1;
    }
    let weight = |w: &[u64]| w.iter().map(|x| x.count_ones() as usize).sum::<usize>();
    let mut best = if start == 0 { usize::MAX } else { weight(&word) };
    if words == 1 {
        let mut w0 = word[0];
        for i in start + 1..start + len {
            w0 ^= rows[i.trailing_zeros() as usize];
            best = best.min(w0.count_ones() as usize);
        }
    } else {
        for i in start + 1..start + len {
            let b = i.trailing_zeros() as usize;
            for (w, r) in word.iter_mut().zip(&rows[b * words..(b + 1) * words]) {
                *w ^= r;
            }
            best = best.min(weight(&word));
        }
    }
    best
}
