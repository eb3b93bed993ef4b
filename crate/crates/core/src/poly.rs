//! Binary polynomials: exact arithmetic in GF(2)[x] and cyclic arithmetic in
//! GF(2)[x]/(x^n + 1).
//!
//! [`BinaryPoly`] stores the support (the exponents with coefficient one),
//! which suits the very sparse idempotents handled by the search. Products,
//! division and gcd convert to a packed dense form internally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial over GF(2), stored as its strictly ascending support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPoly {
    support: Vec<usize>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(e: usize) -> Self {
        Self { support: vec![e] }
    }

    /// `x^n + 1`.
    pub fn cyclic_modulus(n: usize) -> Self {
        Self::from_exponents([0, n])
    }

    /// `1 + x + ... + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        Self {
            support: (0..n).collect(),
        }
    }

    /// Builds a polynomial from exponents; repeated exponents cancel in pairs.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut v: Vec<usize> = exponents.into_iter().collect();
        v.sort_unstable();
        let mut support = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                support.push(v[i]);
            }
            i = j;
        }
        Self { support }
    }

    /// Builds a polynomial from coefficient flags, index = exponent.
    pub fn from_coefficients<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        Self {
            support: coeffs
                .into_iter()
                .enumerate()
                .filter_map(|(i, c)| c.then_some(i))
                .collect(),
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.support.last().copied()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.support.binary_search(&e).is_ok()
    }

    /// True when every exponent is below `n`.
    pub fn is_reduced(&self, n: usize) -> bool {
        self.degree().is_none_or(|d| d < n)
    }

    /// Folds exponents modulo `n` (reduction modulo `x^n + 1`).
    pub fn reduce_mod(&self, n: usize) -> Self {
        Self::from_exponents(self.support.iter().map(|&e| e % n))
    }

    /// Sum over GF(2), the symmetric difference of the supports.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { support: out }
    }

    /// `x^s * p(x) mod (x^n + 1)`.
    pub fn cyclic_shift(&self, s: usize, n: usize) -> Self {
        Self::from_exponents(self.support.iter().map(|&e| (e + s) % n))
    }

    /// `p(x^-1) mod (x^n + 1)`: exponent `e` goes to `-e mod n`.
    pub fn cyclic_reverse(&self, n: usize) -> Self {
        Self::from_exponents(self.support.iter().map(|&e| (n - e % n) % n))
    }

    /// Canonical text with the given variable name, ascending exponents,
    /// e.g. `1+x+x^3`. The zero polynomial prints as `0`.
    pub fn to_text(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        terms.join("+")
    }

    pub(crate) fn to_dense(&self) -> DensePoly {
        let mut d = DensePoly::zero();
        for &e in &self.support {
            d.flip(e);
        }
        d
    }

    pub(crate) fn from_dense(d: &DensePoly) -> Self {
        Self {
            support: d.support(),
        }
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('x'))
    }
}

impl FromStr for BinaryPoly {
    type Err = Error;

    /// Parses `1+x^2+x^8`, `x^{12}+z`, ... Either `x` or `z` may be used as
    /// the variable; whitespace is ignored and repeated terms cancel.
    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty input"));
        }
        if cleaned == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in cleaned.split('+') {
            let e = match term {
                "" => return Err(err("empty term")),
                "1" => 0,
                "x" | "z" => 1,
                t if t.starts_with("x^") || t.starts_with("z^") => {
                    let raw = &t[2..];
                    let raw = raw
                        .strip_prefix('{')
                        .and_then(|r| r.strip_suffix('}'))
                        .unwrap_or(raw);
                    raw.parse::<usize>()
                        .map_err(|_| err(&format!("bad exponent in term {t:?}")))?
                }
                t => return Err(err(&format!("unrecognised term {t:?}"))),
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

impl Serialize for BinaryPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_reduced(p: &BinaryPoly, n: usize) -> Result<()> {
    match p.degree() {
        Some(d) if d >= n => Err(Error::LengthMismatch(d + 1, n)),
        _ => Ok(()),
    }
}

/// Product modulo `x^n + 1`; both operands must already be reduced.
pub fn poly_mul_mod(a: &BinaryPoly, b: &BinaryPoly, n: usize) -> Result<BinaryPoly> {
    check_reduced(a, n)?;
    check_reduced(b, n)?;
    let mut acc = vec![false; n];
    for &i in a.support() {
        for &j in b.support() {
            let e = (i + j) % n;
            acc[e] = !acc[e];
        }
    }
    Ok(BinaryPoly::from_coefficients(acc))
}

/// Exact product in GF(2)[x].
pub fn poly_mul(a: &BinaryPoly, b: &BinaryPoly) -> BinaryPoly {
    BinaryPoly::from_dense(&a.to_dense().mul(&b.to_dense()))
}

/// Remainder of `a` modulo a nonzero `b` in GF(2)[x].
pub fn poly_rem(a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(BinaryPoly::from_dense(&a.to_dense().rem(&b.to_dense())))
}

/// Monic gcd in GF(2)[x] (every nonzero binary polynomial is monic).
pub fn poly_gcd(a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(BinaryPoly::from_dense(&DensePoly::gcd(
        &a.to_dense(),
        &b.to_dense(),
    )))
}

/// Exact quotient `num / den`; fails unless `den` divides `num`.
pub fn poly_divide_exact(num: &BinaryPoly, den: &BinaryPoly) -> Result<BinaryPoly> {
    if den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, r) = num.to_dense().divmod(&den.to_dense());
    if !r.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    Ok(BinaryPoly::from_dense(&q))
}

/// Inverse of `a` modulo `m` in GF(2)[x], when `gcd(a, m) = 1`.
pub(crate) fn poly_inverse_mod(a: &BinaryPoly, m: &BinaryPoly) -> Option<BinaryPoly> {
    DensePoly::inverse_mod(&a.to_dense(), &m.to_dense()).map(|d| BinaryPoly::from_dense(&d))
}

/// True iff `p o p = p` modulo `x^n + 1`, i.e. the support is closed under
/// doubling modulo `n`.
pub fn is_idempotent(p: &BinaryPoly, n: usize) -> bool {
    p.support().iter().all(|&e| p.contains((2 * e) % n))
}

/// Longest run of cyclically consecutive exponents present in the support.
pub fn max_cyclic_run(p: &BinaryPoly, n: usize) -> usize {
    let s = p.support();
    if s.is_empty() {
        return 0;
    }
    if s.len() >= n {
        return n;
    }
    let mut runs = Vec::new();
    let mut run = 1;
    for w in s.windows(2) {
        if w[1] == w[0] + 1 {
            run += 1;
        } else {
            runs.push(run);
            run = 1;
        }
    }
    runs.push(run);
    let mut best = runs.iter().copied().max().unwrap_or(0);
    // a run ending at n-1 continues into the one starting at 0
    if runs.len() > 1 && s[0] == 0 && s[s.len() - 1] == n - 1 {
        best = best.max(runs[0] + runs[runs.len() - 1]);
    }
    best
}

/// Packed dense polynomial over GF(2); bit `i` of the word vector is the
/// coefficient of `x^i`. Kept normalised (no trailing zero words).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct DensePoly {
    w: Vec<u64>,
}

impl DensePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { w: vec![1] }
    }

    fn normalize(&mut self) {
        while self.w.last() == Some(&0) {
            self.w.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.w.last()?;
        Some((self.w.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn flip(&mut self, e: usize) {
        let wi = e / 64;
        if self.w.len() <= wi {
            self.w.resize(wi + 1, 0);
        }
        self.w[wi] ^= 1 << (e % 64);
        self.normalize();
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &word) in self.w.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                x &= x - 1;
            }
        }
        out
    }

    /// `self ^= other * x^shift`.
    fn add_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.w.len() + ws + 1;
        if self.w.len() < need {
            self.w.resize(need, 0);
        }
        for (i, &word) in other.w.iter().enumerate() {
            self.w[i + ws] ^= word << bs;
            if bs != 0 {
                self.w[i + ws + 1] ^= word >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_shifted(other, 0);
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, large) = if self.w.len() <= other.w.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut r = Self::zero();
        for e in small.support() {
            r.add_shifted(large, e);
        }
        r
    }

    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            q.flip(s);
            r.add_shifted(d, s);
        }
        (q, r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Extended Euclid: returns `s` with `s * a = 1 (mod m)`.
    pub fn inverse_mod(a: &Self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), a.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.add(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        (r0 == Self::one()).then(|| s0.rem(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPoly {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip_and_notation() {
        let u = p("1+x^2+x^8+x^31+x^32+x^35+x^47");
        assert_eq!(u.to_string(), "1+x^2+x^8+x^31+x^32+x^35+x^47");
        assert_eq!(p("x^{12} + 1 + x").support(), &[0, 1, 12]);
        assert_eq!(p("1+z^3").to_text('z'), "1+z^3");
        assert_eq!(p("x+x+1"), BinaryPoly::one());
        assert_eq!(p("0"), BinaryPoly::zero());
        assert!("1+y".parse::<BinaryPoly>().is_err());
        assert!("1++x".parse::<BinaryPoly>().is_err());
        assert!("".parse::<BinaryPoly>().is_err());
    }

    #[test]
    fn mul_mod_examples() {
        let a = p("1+x+x^2+x^4");
        assert_eq!(poly_mul_mod(&a, &BinaryPoly::one(), 7).unwrap(), a);
        assert_eq!(poly_mul_mod(&a, &a, 7).unwrap(), a);
        assert_eq!(
            poly_mul_mod(&p("x+1"), &p("x^3+x^2+1"), 7).unwrap(),
            p("x^4+x^2+x+1")
        );
        assert_eq!(
            poly_mul_mod(&p("x^7"), &a, 7),
            Err(Error::LengthMismatch(8, 7))
        );
    }

    #[test]
    fn gcd_examples() {
        let a = p("1+x+x^3");
        assert_eq!(poly_gcd(&a, &BinaryPoly::zero()).unwrap(), a);
        let m7 = BinaryPoly::cyclic_modulus(7);
        assert_eq!(
            poly_gcd(&m7, &p("1+x+x^2+x^4")).unwrap(),
            p("x^4+x^2+x+1")
        );
        assert_eq!(poly_gcd(&m7, &p("x+x^2+x^4")).unwrap(), p("x^3+x+1"));
        assert_eq!(
            poly_gcd(&BinaryPoly::zero(), &BinaryPoly::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn divide_exact_examples() {
        let m7 = BinaryPoly::cyclic_modulus(7);
        assert_eq!(
            poly_divide_exact(&m7, &p("x^4+x^2+x+1")).unwrap(),
            p("x^3+x+1")
        );
        let a = p("1+x^5+x^9");
        assert_eq!(poly_divide_exact(&a, &a).unwrap(), BinaryPoly::one());
        assert_eq!(
            poly_divide_exact(&m7, &p("x+1")).unwrap(),
            p("x^6+x^5+x^4+x^3+x^2+x+1")
        );
        assert_eq!(
            poly_divide_exact(&m7, &p("x^2+1")),
            Err(Error::NonzeroRemainder)
        );
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_idempotent(&p("1+x+x^2+x^4"), 7));
        assert!(!is_idempotent(&p("1+x^2+x^8+x^31+x^32+x^35+x^47"), 93));
        assert!(is_idempotent(&BinaryPoly::zero(), 7));
    }

    #[test]
    fn cyclic_run_examples() {
        assert_eq!(max_cyclic_run(&BinaryPoly::all_ones(7), 7), 7);
        assert_eq!(max_cyclic_run(&p("x^3+x^5+x^6"), 7), 2);
        assert_eq!(max_cyclic_run(&p("1+x+x^2+x^4"), 7), 3);
        assert_eq!(max_cyclic_run(&p("1+x^3+x^5+x^6"), 7), 3);
        assert_eq!(max_cyclic_run(&BinaryPoly::zero(), 7), 0);
        assert_eq!(max_cyclic_run(&p("1+x^6"), 7), 2);
        assert_eq!(max_cyclic_run(&p("x^6"), 7), 1);
    }

    #[test]
    fn inverse_mod_works() {
        let f = p("1+x+x^3");
        let a = p("x^2+1");
        let inv = poly_inverse_mod(&a, &f).unwrap();
        assert_eq!(poly_rem(&poly_mul(&a, &inv), &f).unwrap(), BinaryPoly::one());
        assert!(poly_inverse_mod(&p("x+1"), &p("x^2+1")).is_none());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn arb_poly(n: usize) -> impl Strategy<Value = BinaryPoly> {
            proptest::collection::vec(any::<bool>(), n).prop_map(BinaryPoly::from_coefficients)
        }

        fn naive_run(p: &BinaryPoly, n: usize) -> usize {
            if p.weight() == n {
                return n;
            }
            (0..n)
                .map(|s| (0..n).take_while(|&k| p.contains((s + k) % n)).count())
                .max()
                .unwrap_or(0)
        }

        proptest! {
            #[test]
            fn squaring_doubles_exponents(a in arb_poly(31)) {
                let sq = poly_mul_mod(&a, &a, 31).unwrap();
                let doubled = BinaryPoly::from_exponents(a.support().iter().map(|&e| 2 * e % 31));
                prop_assert_eq!(sq, doubled);
            }

            #[test]
            fn gcd_divides_both(a in arb_poly(40), b in arb_poly(25)) {
                prop_assume!(!a.is_zero() || !b.is_zero());
                let g = poly_gcd(&a, &b).unwrap();
                prop_assert!(poly_divide_exact(&a, &g).is_ok());
                prop_assert!(poly_divide_exact(&b, &g).is_ok());
            }

            #[test]
            fn run_matches_naive_and_is_shift_invariant(a in arb_poly(23), s in 0usize..23) {
                let r = max_cyclic_run(&a, 23);
                prop_assert_eq!(r, naive_run(&a, 23));
                prop_assert_eq!(max_cyclic_run(&a.cyclic_shift(s, 23), 23), r);
            }

            #[test]
            fn text_round_trip(a in arb_poly(70)) {
                prop_assert_eq!(a.to_string().parse::<BinaryPoly>().unwrap(), a);
            }

            #[test]
            fn exact_product_then_divide(a in arb_poly(50), b in arb_poly(30)) {
                prop_assume!(!b.is_zero());
                let prod = poly_mul(&a, &b);
                prop_assert_eq!(poly_divide_exact(&prod, &b).unwrap(), a);
            }
        }
    }
}
