//! Cyclotomic cosets modulo `n` and the factorisation of `z^n + 1` into
//! binary irreducibles, one minimal polynomial per coset.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::msdomain;
use crate::par::{map_indexed, Execution};
use crate::poly::{poly_mul, BinaryPoly};

/// An orbit `{s * 2^j mod n}`; `members` is sorted so `leader == members[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicCoset {
    leader: usize,
    members: Vec<usize>,
}

impl CyclotomicCoset {
    pub fn leader(&self) -> usize {
        self.leader
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `sum_{c in coset} x^c`, the idempotent whose spectrum is the coset's
    /// primitive idempotent.
    pub fn indicator(&self) -> BinaryPoly {
        BinaryPoly::from_exponents(self.members.iter().copied())
    }
}

/// Partition of `0..n` into doubling orbits, sorted by `(size, leader)`.
pub fn cosets(n: usize) -> Result<Vec<CyclotomicCoset>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut members = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            members.push(x);
            x = (2 * x) % n;
        }
        members.sort_unstable();
        out.push(CyclotomicCoset {
            leader: members[0],
            members,
        });
    }
    out.sort_by_key(|c| (c.size(), c.leader));
    Ok(out)
}

/// `prod_{j in coset} (z - alpha^j)`, checked to have binary coefficients.
pub fn minimal_polynomial(c: &CyclotomicCoset, ctx: &FieldContext) -> Result<BinaryPoly> {
    // coefficients in GF(2^m), index = power of z
    let mut coeffs = vec![FieldElement::ONE];
    for &j in c.members() {
        let root = ctx.alpha_pow(j);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (i, &a) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], a);
            next[i] = ctx.add(next[i], ctx.mul(a, root));
        }
        coeffs = next;
    }
    let mut exps = Vec::new();
    for (i, a) in coeffs.iter().enumerate() {
        match a.bits() {
            0 => {}
            1 => exps.push(i),
            _ => return Err(Error::NonBinaryCoefficient { leader: c.leader }),
        }
    }
    Ok(BinaryPoly::from_exponents(exps))
}

/// One row of the factor table: coset, irreducible factor, primitive
/// idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub coset: CyclotomicCoset,
    pub poly: BinaryPoly,
    pub theta: BinaryPoly,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.coset.size()
    }
}

/// `z^n + 1 = f_1 ... f_t`, sorted by ascending degree then coset leader.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    n: usize,
    factors: Vec<Factor>,
}

impl FactorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of irreducible factors, `t`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn get(&self, i: usize) -> Result<&Factor> {
        self.factors.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            t: self.factors.len(),
        })
    }

    pub fn degree(&self, i: usize) -> usize {
        self.factors[i].degree()
    }

    pub fn theta(&self, i: usize) -> &BinaryPoly {
        &self.factors[i].theta
    }

    /// Position of `f` among the factors.
    pub fn index_of(&self, f: &BinaryPoly) -> Option<usize> {
        self.factors.iter().position(|x| &x.poly == f)
    }

    /// Exact product of all factors.
    pub fn product(&self) -> BinaryPoly {
        self.factors
            .iter()
            .fold(BinaryPoly::one(), |acc, f| poly_mul(&acc, &f.poly))
    }

    /// Text dump, one line per factor: `i, leader, degree, f_i(z)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            let _ = writeln!(
                s,
                "{i}, {}, {}, {}",
                f.coset.leader,
                f.degree(),
                f.poly.to_text('z')
            );
        }
        s
    }
}

/// Factorises `z^n + 1` and attaches each factor's primitive idempotent.
pub fn factorize(ctx: &FieldContext) -> Result<FactorSet> {
    factorize_with(ctx, Execution::default())
}

pub fn factorize_with(ctx: &FieldContext, exec: Execution) -> Result<FactorSet> {
    let n = ctx.n();
    let cs = cosets(n)?;
    let polys = map_indexed(exec, cs.len(), |i| minimal_polynomial(&cs[i], ctx))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let placeholder: Vec<Factor> = cs
        .into_iter()
        .zip(polys)
        .map(|(coset, poly)| Factor {
            coset,
            poly,
            theta: BinaryPoly::zero(),
        })
        .collect();
    let mut fs = FactorSet {
        n,
        factors: placeholder,
    };
    debug_assert!(fs.factors.windows(2).all(|w| (w[0].degree(), w[0].coset.leader)
        < (w[1].degree(), w[1].coset.leader)));
    if fs.product() != BinaryPoly::cyclic_modulus(n) {
        return Err(Error::Inconsistent(format!(
            "product of minimal polynomials is not z^{n}+1"
        )));
    }

    let thetas = map_indexed(exec, fs.len(), |i| {
        msdomain::primitive_idempotent(&fs.factors[i].poly, &fs, ctx)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    for (f, theta) in fs.factors.iter_mut().zip(thetas) {
        f.theta = theta;
    }
    Ok(fs)
}
