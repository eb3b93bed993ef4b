//! GF(2^m) as the splitting field of `z^n - 1` over GF(2).
//!
//! The field is represented modulo the lexicographically smallest
//! irreducible polynomial of degree `m = ord_n(2)`, with log/antilog tables
//! built from the smallest primitive element `gamma`. The fixed primitive
//! `n`-th root of unity is `alpha = gamma^((2^m - 1) / n)`, so the same `n`
//! always yields the same context.

use crate::error::{Error, Result};
use crate::poly::BinaryPoly;

/// Largest extension degree accepted by [`build_field`].
pub const DEFAULT_MAX_DEGREE: u32 = 24;

/// An element of GF(2^m): coordinates over the polynomial basis, packed into
/// the low `m` bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Multiplicative order of 2 modulo an odd `n > 1`.
pub fn order_of_two(n: usize) -> u32 {
    let mut m = 1;
    let mut x = 2 % n;
    while x != 1 {
        x = (x * 2) % n;
        m += 1;
    }
    m
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

fn deg64(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn rem64(mut a: u64, p: u64) -> u64 {
    let dp = deg64(p);
    while a != 0 && deg64(a) >= dp {
        a ^= p << (deg64(a) - dp);
    }
    a
}

fn mulmod64(mut a: u64, mut b: u64, p: u64, m: u32) -> u64 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= p;
        }
    }
    r
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem64(a, b);
        a = b;
        b = r;
    }
    a
}

/// `x^(2^k) mod p`.
fn frobenius_power(k: u32, p: u64, m: u32) -> u64 {
    let mut x = rem64(2, p);
    for _ in 0..k {
        x = mulmod64(x, x, p, m);
    }
    x
}

/// Rabin's irreducibility test for a degree-`m` binary polynomial.
fn is_irreducible(p: u64, m: u32) -> bool {
    if frobenius_power(m, p, m) != rem64(2, p) {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|q| {
        let h = frobenius_power(m / q as u32, p, m) ^ 2;
        gcd64(p, rem64(h, p)) == 1
    })
}

fn pow64(mut base: u64, mut e: u64, p: u64, m: u32) -> u64 {
    let mut r = 1;
    while e != 0 {
        if e & 1 == 1 {
            r = mulmod64(r, base, p, m);
        }
        base = mulmod64(base, base, p, m);
        e >>= 1;
    }
    r
}

/// The splitting field of `z^n - 1` with a fixed primitive `n`-th root of
/// unity. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldContext {
    n: usize,
    m: u32,
    modulus: u64,
    order: usize,
    gamma: FieldElement,
    alpha: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    alpha_pows: Vec<FieldElement>,
}

/// Builds the field context for code length `n` with the default degree cap.
pub fn build_field(n: usize) -> Result<FieldContext> {
    FieldContext::with_max_degree(n, DEFAULT_MAX_DEGREE)
}

impl FieldContext {
    pub fn new(n: usize) -> Result<Self> {
        build_field(n)
    }

    pub fn with_max_degree(n: usize, max_degree: u32) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::EvenLength(n));
        }
        if n < 3 {
            return Err(Error::LengthTooSmall(n));
        }
        let m = order_of_two(n);
        if m > max_degree || m > 31 {
            return Err(Error::FieldTooLarge {
                n,
                m,
                limit: max_degree,
            });
        }
        let modulus = ((1u64 << m) + 1..1u64 << (m + 1))
            .step_by(2)
            .find(|&p| is_irreducible(p, m))
            .expect("an irreducible polynomial exists in every degree");
        let order = (1usize << m) - 1;
        let order_factors = prime_factors(order as u64);
        let gamma = (2u64..1 << m)
            .find(|&g| {
                order_factors
                    .iter()
                    .all(|&q| pow64(g, order as u64 / q, modulus, m) != 1)
            })
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u32; order];
        let mut log = vec![0u32; 1 << m];
        let mut x = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = i as u32;
            x = mulmod64(x, gamma, modulus, m);
        }

        let step = order / n;
        let alpha_pows = (0..n).map(|i| FieldElement(exp[i * step])).collect();
        Ok(Self {
            n,
            m,
            modulus,
            order,
            gamma: FieldElement(gamma as u32),
            alpha: FieldElement(exp[step]),
            exp,
            log,
            alpha_pows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Extension degree, `ord_n(2)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Defining irreducible polynomial of degree `m`.
    pub fn modulus(&self) -> BinaryPoly {
        BinaryPoly::from_exponents((0..=self.m as usize).filter(|&i| (self.modulus >> i) & 1 == 1))
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.gamma
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// Size of the multiplicative group, `2^m - 1`.
    pub fn group_order(&self) -> usize {
        self.order
    }

    /// Wraps raw coordinates, rejecting values outside GF(2^m).
    pub fn element(&self, bits: u32) -> Option<FieldElement> {
        ((bits as u64) < (1u64 << self.m)).then_some(FieldElement(bits))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[l % self.order])
    }

    /// `a^e`; negative exponents invert first. `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let l = self.log[a.0 as usize] as i128 * e as i128;
        let l = l.rem_euclid(self.order as i128) as usize;
        Ok(FieldElement(self.exp[l]))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(self.order - l) % self.order]))
    }

    /// `alpha^i`, exponent taken modulo `n`.
    pub fn alpha_pow(&self, i: usize) -> FieldElement {
        self.alpha_pows[i % self.n]
    }

    /// Evaluates a binary polynomial at an arbitrary field element.
    pub fn eval_poly(&self, p: &BinaryPoly, e: FieldElement) -> FieldElement {
        if e.is_zero() {
            return FieldElement(p.contains(0) as u32);
        }
        let le = self.log[e.0 as usize] as usize;
        let acc = p
            .support()
            .iter()
            .fold(0u32, |acc, &k| acc ^ self.exp[(le * (k % self.order)) % self.order]);
        FieldElement(acc)
    }

    /// Evaluates `p(alpha^j)` using the cached powers of `alpha`.
    pub fn eval_at_alpha_power(&self, p: &BinaryPoly, j: usize) -> FieldElement {
        let j = j % self.n;
        let acc = p
            .support()
            .iter()
            .fold(0u32, |acc, &k| acc ^ self.alpha_pows[(k % self.n) * j % self.n].0);
        FieldElement(acc)
    }
}
