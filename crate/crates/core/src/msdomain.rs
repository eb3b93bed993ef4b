//! Mattson-Solomon machinery for binary idempotents.
//!
//! For a binary idempotent `u(x)`, the spectrum
//! `theta(z) = sum_{j=1..n} u(alpha^j) z^(n-j)` is again a binary idempotent,
//! and `u_i = theta(alpha^i)` inverts it (`1/n = 1` for odd `n`). The weight of
//! `u`, its number of zeros among the `n`-th roots of unity, and its BCH run
//! are all readable from `theta` and the factors of `z^n + 1`.

use crate::cyclotomic::FactorSet;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::poly::{
    is_idempotent, poly_divide_exact, poly_inverse_mod, poly_mul, poly_rem, BinaryPoly,
};

/// A binary idempotent together with its Mattson-Solomon image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPair {
    pub n: usize,
    pub u: BinaryPoly,
    pub theta: BinaryPoly,
}

impl SpectralPair {
    pub fn from_u(u: BinaryPoly, ctx: &FieldContext) -> Result<Self> {
        let theta = ms_transform(&u, ctx)?;
        Ok(Self { n: ctx.n(), u, theta })
    }

    pub fn from_theta(theta: BinaryPoly, ctx: &FieldContext) -> Result<Self> {
        let u = ms_inverse(&theta, ctx)?;
        Ok(Self { n: ctx.n(), u, theta })
    }
}

/// Primitive idempotent of the factor `f`: the unique `theta` with
/// `theta = 1 (mod f)` and `theta = 0 (mod (z^n+1)/f)`, built by CRT.
pub fn primitive_idempotent(
    f: &BinaryPoly,
    fs: &FactorSet,
    ctx: &FieldContext,
) -> Result<BinaryPoly> {
    let n = fs.n();
    if fs.index_of(f).is_none() {
        return Err(Error::NotAFactor(n));
    }
    let modulus = BinaryPoly::cyclic_modulus(n);
    let cofactor = poly_divide_exact(&modulus, f).map_err(|_| Error::NotAFactor(n))?;
    let inv = poly_inverse_mod(&cofactor, f).ok_or(Error::NotAFactor(n))?;
    let theta = poly_rem(&poly_mul(&cofactor, &inv), &modulus)?;

    if !is_idempotent(&theta, n) || poly_rem(&theta, f)? != BinaryPoly::one() {
        return Err(Error::Inconsistent(format!(
            "CRT idempotent for {f} fails its congruences"
        )));
    }
    for j in 0..n {
        let t = ctx.eval_at_alpha_power(&theta, j).bits();
        let root = ctx.eval_at_alpha_power(f, j).is_zero();
        if t != root as u32 {
            return Err(Error::Inconsistent(format!(
                "theta for {f} evaluates to {t} at alpha^{j}"
            )));
        }
    }
    Ok(theta)
}

fn require_idempotent(p: &BinaryPoly, n: usize) -> Result<()> {
    if !p.is_reduced(n) || !is_idempotent(p, n) {
        return Err(Error::NotIdempotent(n));
    }
    Ok(())
}

/// `Phi(u)`: coefficient of `z^((n-j) mod n)` is `u(alpha^j)`.
pub fn ms_transform(u: &BinaryPoly, ctx: &FieldContext) -> Result<BinaryPoly> {
    let n = ctx.n();
    require_idempotent(u, n)?;
    let mut coeffs = vec![false; n];
    for j in 0..n {
        match ctx.eval_at_alpha_power(u, j).bits() {
            0 => {}
            1 => coeffs[(n - j) % n] = true,
            _ => return Err(Error::NotIdempotent(n)),
        }
    }
    Ok(BinaryPoly::from_coefficients(coeffs))
}

/// `Phi^-1(theta)`: `u_i = theta(alpha^i)`.
pub fn ms_inverse(theta: &BinaryPoly, ctx: &FieldContext) -> Result<BinaryPoly> {
    let n = ctx.n();
    require_idempotent(theta, n)?;
    let mut coeffs = vec![false; n];
    for (i, c) in coeffs.iter_mut().enumerate() {
        match ctx.eval_at_alpha_power(theta, i).bits() {
            0 => {}
            1 => *c = true,
            _ => return Err(Error::NotIdempotent(n)),
        }
    }
    Ok(BinaryPoly::from_coefficients(coeffs))
}

/// `sum_{i in I} theta_i`.
pub fn subset_theta(subset: &[usize], fs: &FactorSet) -> Result<BinaryPoly> {
    subset.iter().try_fold(BinaryPoly::zero(), |acc, &i| {
        Ok(acc.add(&fs.get(i)?.theta))
    })
}

/// `prod_{i in I} f_i`.
pub fn subset_factor_product(subset: &[usize], fs: &FactorSet) -> Result<BinaryPoly> {
    subset.iter().try_fold(BinaryPoly::one(), |acc, &i| {
        Ok(poly_mul(&acc, &fs.get(i)?.poly))
    })
}

/// Weight and zero count of `u = Phi^-1(sum_{i in I} theta_i)`, read from the
/// factor degrees and the spectrum alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralLaw {
    /// `wt(u) = sum_{i in I} deg f_i`.
    pub weight: usize,
    /// Number of `n`-th roots of unity that are zeros of `u`, `n - wt(theta)`.
    pub unity_roots: usize,
}

/// Applies the weight and zeros laws to a subset of factor indices and
/// cross-checks them against a direct measurement of `u`.
pub fn spectral_weight_law(
    subset: &[usize],
    fs: &FactorSet,
    ctx: &FieldContext,
) -> Result<SpectralLaw> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = fs.n();
    let mut degrees = 0;
    for &i in subset {
        degrees += fs.get(i)?.degree();
    }
    let theta = subset_theta(subset, fs)?;
    let law = SpectralLaw {
        weight: degrees,
        unity_roots: n - theta.weight(),
    };

    let u = ms_inverse(&theta, ctx)?;
    let zeros = (0..n)
        .filter(|&i| ctx.eval_at_alpha_power(&u, i).is_zero())
        .count();
    if u.weight() != law.weight || zeros != law.unity_roots {
        return Err(Error::Inconsistent(format!(
            "spectral laws predict {law:?}, measured weight {} and {zeros} zeros",
            u.weight()
        )));
    }
    Ok(law)
}
