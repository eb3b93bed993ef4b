//! Bounded exhaustive search for low-weight binary idempotents.
//!
//! Subsets `I` of the degree-sorted factors of `z^n + 1` are enumerated depth
//! first. A branch grows only while `sum_{i in I} deg f_i <= sqrt(n) + delta`
//! (that sum is `wt(u)`), and a subset is a candidate when its spectrum
//! `theta = sum theta_i` satisfies `wt(theta) <= (1 - r_min) n` (rate) and
//! has a cyclic run of nonzero coefficients `r_theta > d` (BCH bound). Only
//! then is `u = Phi^-1(theta)` materialised and the code built.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::code::{build_code, is_orthogonal};
use crate::cyclotomic::FactorSet;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::msdomain::ms_inverse;
use crate::par::{map_indexed, Execution};
use crate::poly::{poly_divide_exact, poly_gcd, BinaryPoly};

/// Absolute slack on the real-valued bound comparisons, so that ties such as
/// `wt(theta) = (1 - 0.6) * 10` are not lost to rounding.
const TIE_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    /// Minimum code rate of interest, in `[0, 1)`.
    pub r_min: f64,
    /// Lowest expected minimum distance; candidates need `r_theta > d`.
    pub d: usize,
    /// Slack on the weight bound `sqrt(n)`.
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_results: Option<usize>,
    /// Limit on visited search-tree nodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: usize, r_min: f64, d: usize, delta: usize) -> Self {
        Self {
            n,
            r_min,
            d,
            delta,
            max_results: None,
            budget: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.r_min) {
            return Err(Error::InvalidConfig(format!(
                "r_min = {} outside [0, 1)",
                self.r_min
            )));
        }
        if self.d < 1 {
            return Err(Error::InvalidConfig("d must be at least 1".into()));
        }
        Ok(())
    }

    /// `sqrt(n) + delta`.
    pub fn weight_limit(&self) -> f64 {
        (self.n as f64).sqrt() + self.delta as f64
    }

    pub fn admits_weight(&self, weight: usize) -> bool {
        weight as f64 <= self.weight_limit() + TIE_EPS
    }

    /// `wt(theta) <= (1 - r_min) n`.
    pub fn admits_rate(&self, theta_weight: usize) -> bool {
        theta_weight as f64 <= (1.0 - self.r_min) * self.n as f64 + TIE_EPS
    }

    /// `r_theta > d`.
    pub fn admits_run(&self, r_theta: usize) -> bool {
        r_theta > self.d
    }
}

mod ztext {
    use super::BinaryPoly;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &BinaryPoly, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_text('z'))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BinaryPoly, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One accepted code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub n: usize,
    pub k: usize,
    /// Sorted 0-based factor indices `I`.
    pub subset: Vec<usize>,
    pub u: BinaryPoly,
    #[serde(with = "ztext")]
    pub theta: BinaryPoly,
    pub weight: usize,
    /// `r_theta + 1`.
    pub bch_bound: usize,
    pub r_theta: usize,
    pub orthogonal: bool,
    pub g: BinaryPoly,
    pub dedup_key: String,
}

impl CodeRecord {
    /// Canonical output order: `(weight, n - k, subset)`.
    fn sort_key(&self) -> (usize, usize, &[usize]) {
        (self.weight, self.n - self.k, &self.subset)
    }
}

pub fn dedup_key(n: usize, g: &BinaryPoly) -> String {
    format!("{n}:{g}")
}

/// Records unique by generator polynomial, in insertion order.
#[derive(Clone, Debug, Default)]
pub struct CodesList {
    records: Vec<CodeRecord>,
    keys: HashSet<String>,
}

impl CodesList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[CodeRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<CodeRecord> {
        self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.keys.contains(key)
    }
}

/// Inserts `rec` unless a record with the same generator is present.
pub fn dedup_insert(rec: CodeRecord, list: &mut CodesList) -> bool {
    if !list.keys.insert(rec.dedup_key.clone()) {
        return false;
    }
    list.records.push(rec);
    true
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

/// A cyclic code from `u` is non-degenerate when `0 < k < n` and, for every
/// proper divisor `n'` of `n`, neither `h = gcd(x^n + 1, u)` nor
/// `g = (x^n + 1) / h` divides `x^n' + 1`. The first would make every
/// codeword a repetition of a length-`n'` word; the second makes `u` itself
/// (so every parity check) periodic with period `n'`.
pub fn is_nondegenerate(u: &BinaryPoly, n: usize) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = u.reduce_mod(n);
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let modulus = BinaryPoly::cyclic_modulus(n);
    let h = poly_gcd(&modulus, &u)?;
    let k = h.degree().unwrap_or(0);
    if k == 0 || k == n {
        return Ok(false);
    }
    let g = poly_divide_exact(&modulus, &h)?;
    for d in proper_divisors(n) {
        let short = BinaryPoly::cyclic_modulus(d);
        if poly_divide_exact(&short, &h).is_ok() || poly_divide_exact(&short, &g).is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of a search: records in canonical order plus tree statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub records: Vec<CodeRecord>,
    /// Subsets visited (tree nodes).
    pub nodes: u64,
    /// Subsets passing the rate and run bounds.
    pub candidates: u64,
    /// Candidates rejected as degenerate.
    pub degenerate: u64,
    /// True when the node budget stopped the search early.
    pub truncated: bool,
}

impl SearchOutcome {
    /// Records, or `BudgetExceeded` if the search was cut short.
    pub fn into_complete(self) -> Result<Vec<CodeRecord>> {
        if self.truncated {
            return Err(Error::BudgetExceeded {
                needed: self.nodes as u128 + 1,
                budget: self.nodes as u128,
            });
        }
        Ok(self.records)
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn to_bits(p: &BinaryPoly, n: usize) -> Vec<u64> {
    let mut w = vec![0u64; words_for(n)];
    for &e in p.support() {
        w[e / 64] |= 1 << (e % 64);
    }
    w
}

fn from_bits(w: &[u64]) -> BinaryPoly {
    let mut exps = Vec::new();
    for (i, &word) in w.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            exps.push(i * 64 + x.trailing_zeros() as usize);
            x &= x - 1;
        }
    }
    BinaryPoly::from_exponents(exps)
}

fn bit(w: &[u64], i: usize) -> bool {
    (w[i / 64] >> (i % 64)) & 1 == 1
}

fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn cyclic_run_bits(w: &[u64], n: usize) -> usize {
    let weight = popcount(w);
    if weight == 0 {
        return 0;
    }
    if weight == n {
        return n;
    }
    // start scanning just after a zero so no run is split by the wrap
    let zero = (0..n).find(|&i| !bit(w, i)).unwrap();
    let (mut best, mut run) = (0, 0);
    for s in 1..=n {
        if bit(w, (zero + s) % n) {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

#[derive(Default)]
struct Tally {
    nodes: u64,
    candidates: u64,
    degenerate: u64,
    truncated: bool,
    records: Vec<CodeRecord>,
}

struct Searcher<'a> {
    cfg: &'a SearchConfig,
    fs: &'a FactorSet,
    ctx: &'a FieldContext,
    thetas: Vec<Vec<u64>>,
}

impl Searcher<'_> {
    fn visit(&self, i: usize, subset: &mut Vec<usize>, theta: &mut [u64], tally: &mut Tally) -> Result<()> {
        subset.push(i);
        for (a, b) in theta.iter_mut().zip(&self.thetas[i]) {
            *a ^= b;
        }
        tally.nodes += 1;
        let n = self.cfg.n;
        let theta_weight = popcount(theta);
        if self.cfg.admits_rate(theta_weight) {
            let run = cyclic_run_bits(theta, n);
            if self.cfg.admits_run(run) {
                tally.candidates += 1;
                self.accept(subset, theta, run, tally)?;
            }
        }
        Ok(())
    }

    fn leave(&self, subset: &mut Vec<usize>, theta: &mut [u64]) {
        let i = subset.pop().expect("leave without visit");
        for (a, b) in theta.iter_mut().zip(&self.thetas[i]) {
            *a ^= b;
        }
    }

    fn accept(&self, subset: &[usize], theta: &[u64], run: usize, tally: &mut Tally) -> Result<()> {
        let n = self.cfg.n;
        let theta = from_bits(theta);
        let u = ms_inverse(&theta, self.ctx)?;
        debug_assert_eq!(
            u,
            BinaryPoly::from_exponents(
                subset
                    .iter()
                    .flat_map(|&i| self.fs.factors()[i].coset.members().iter().copied())
            )
        );
        if !is_nondegenerate(&u, n)? {
            tally.degenerate += 1;
            return Ok(());
        }
        let code = build_code(&u, n)?;
        debug_assert_eq!(code.k, n - theta.weight());
        tally.records.push(CodeRecord {
            n,
            k: code.k,
            subset: subset.to_vec(),
            weight: u.weight(),
            bch_bound: run + 1,
            r_theta: run,
            orthogonal: is_orthogonal(&u, n),
            dedup_key: dedup_key(n, &code.g),
            g: code.g,
            theta,
            u,
        });
        Ok(())
    }

    /// Depth-first over extensions of `subset` by indices `>= start`.
    fn explore(
        &self,
        start: usize,
        degree_sum: usize,
        subset: &mut Vec<usize>,
        theta: &mut [u64],
        tally: &mut Tally,
    ) -> Result<()> {
        for i in start..self.fs.len() {
            let weight = degree_sum + self.fs.degree(i);
            // factors are sorted by degree, so every later one fails too
            if !self.cfg.admits_weight(weight) {
                break;
            }
            if self.cfg.budget.is_some_and(|b| tally.nodes >= b) {
                tally.truncated = true;
                return Ok(());
            }
            self.visit(i, subset, theta, tally)?;
            self.explore(i + 1, weight, subset, theta, tally)?;
            self.leave(subset, theta);
            if tally.truncated {
                return Ok(());
            }
        }
        Ok(())
    }

    /// The subtree of subsets whose smallest index is `first`.
    fn subtree(&self, first: usize) -> Result<Tally> {
        let mut tally = Tally::default();
        let weight = self.fs.degree(first);
        if !self.cfg.admits_weight(weight) {
            return Ok(tally);
        }
        let mut subset = Vec::new();
        let mut theta = vec![0u64; words_for(self.cfg.n)];
        self.visit(first, &mut subset, &mut theta, &mut tally)?;
        self.explore(first + 1, weight, &mut subset, &mut theta, &mut tally)?;
        Ok(tally)
    }
}

/// Runs the search with the default execution mode.
pub fn code_search(cfg: &SearchConfig, fs: &FactorSet, ctx: &FieldContext) -> Result<SearchOutcome> {
    code_search_with(cfg, fs, ctx, Execution::default())
}

/// Runs the search. Top-level subtrees are independent and are explored in
/// parallel unless a node budget is set, in which case the walk is
/// sequential so truncation is reproducible.
pub fn code_search_with(
    cfg: &SearchConfig,
    fs: &FactorSet,
    ctx: &FieldContext,
    exec: Execution,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    if fs.n() != cfg.n || ctx.n() != cfg.n {
        return Err(Error::LengthMismatch(fs.n(), cfg.n));
    }
    let searcher = Searcher {
        cfg,
        fs,
        ctx,
        thetas: fs.factors().iter().map(|f| to_bits(&f.theta, cfg.n)).collect(),
    };

    let tallies = if cfg.budget.is_some() {
        let mut tally = Tally::default();
        let mut subset = Vec::new();
        let mut theta = vec![0u64; words_for(cfg.n)];
        searcher.explore(0, 0, &mut subset, &mut theta, &mut tally)?;
        vec![tally]
    } else {
        map_indexed(exec, fs.len(), |first| searcher.subtree(first))
            .into_iter()
            .collect::<Result<Vec<_>>>()?
    };

    let mut all = Vec::new();
    let (mut nodes, mut candidates, mut degenerate, mut truncated) = (0, 0, 0, false);
    for t in tallies {
        nodes += t.nodes;
        candidates += t.candidates;
        degenerate += t.degenerate;
        truncated |= t.truncated;
        all.extend(t.records);
    }
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut list = CodesList::new();
    for rec in all {
        dedup_insert(rec, &mut list);
    }
    let mut records = list.into_records();
    if let Some(cap) = cfg.max_results {
        records.truncate(cap);
    }
    Ok(SearchOutcome {
        records,
        nodes,
        candidates,
        degenerate,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::min_distance_exact;
    use crate::cyclotomic::factorize;
    use crate::field::build_field;
    use crate::poly::max_cyclic_run;

    fn p(s: &str) -> BinaryPoly {
        s.parse().unwrap()
    }

    fn setup(n: usize) -> (FieldContext, FactorSet) {
        let ctx = build_field(n).unwrap();
        let fs = factorize(&ctx).unwrap();
        (ctx, fs)
    }

    /// Every one of the `2^t` subsets tested against the same bounds, with
    /// the spectrum evaluated independently through `ms_transform` of the
    /// coset-union idempotent.
    fn brute_force(cfg: &SearchConfig, fs: &FactorSet, ctx: &FieldContext) -> Vec<(Vec<usize>, BinaryPoly)> {
        let t = fs.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << t) {
            let subset: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
            let u = BinaryPoly::from_exponents(
                subset.iter().flat_map(|&i| fs.factors()[i].coset.members().to_vec()),
            );
            if !cfg.admits_weight(u.weight()) {
                continue;
            }
            let theta = crate::msdomain::ms_transform(&u, ctx).unwrap();
            if !cfg.admits_rate(theta.weight()) || !cfg.admits_run(max_cyclic_run(&theta, cfg.n)) {
                continue;
            }
            if !is_nondegenerate(&u, cfg.n).unwrap() {
                continue;
            }
            out.push((subset, build_code(&u, cfg.n).unwrap().g));
        }
        out.sort();
        out
    }

    fn searched(cfg: &SearchConfig, fs: &FactorSet, ctx: &FieldContext) -> Vec<(Vec<usize>, BinaryPoly)> {
        let mut v: Vec<_> = code_search(cfg, fs, ctx)
            .unwrap()
            .records
            .into_iter()
            .map(|r| (r.subset, r.g))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn n7_printed_parameters_give_the_two_3_dimensional_codes() {
        let (ctx, fs) = setup(7);
        let cfg = SearchConfig::new(7, 0.4, 2, 1);
        let out = code_search(&cfg, &fs, &ctx).unwrap();
        let summary: Vec<(usize, usize, String, String)> = out
            .records
            .iter()
            .map(|r| (r.n, r.k, r.u.to_string(), r.g.to_string()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (7, 3, "x+x^2+x^4".into(), "1+x+x^2+x^4".into()),
                (7, 3, "x^3+x^5+x^6".into(), "1+x^2+x^3+x^4".into()),
            ]
        );
        let rec = &out.records[1];
        assert_eq!(rec.subset, vec![2]);
        assert_eq!(rec.theta, p("1+z^3+z^5+z^6"));
        assert_eq!((rec.r_theta, rec.bch_bound), (3, 4));
        assert_eq!(searched(&cfg, &fs, &ctx), brute_force(&cfg, &fs, &ctx));
    }

    #[test]
    fn hamming_found_when_bounds_admit_it() {
        let (ctx, fs) = setup(7);
        let cfg = SearchConfig::new(7, 0.4, 1, 2);
        let recs = code_search(&cfg, &fs, &ctx).unwrap().records;
        let ham = recs
            .iter()
            .find(|r| r.g == p("1+x+x^3"))
            .expect("Hamming code");
        assert_eq!((ham.k, ham.weight, ham.r_theta), (4, 4, 2));
        let code = build_code(&ham.u, 7).unwrap();
        assert_eq!(min_distance_exact(&code, 1 << 20).unwrap(), 3);
    }

    #[test]
    fn n7_strict_rate_gives_nothing() {
        let (ctx, fs) = setup(7);
        let out = code_search(&SearchConfig::new(7, 0.5, 2, 0), &fs, &ctx).unwrap();
        assert!(out.records.is_empty());
        // only the degree-1 factor fits under sqrt(7)
        assert_eq!(out.nodes, 1);
    }

    #[test]
    fn n21_difference_set_code() {
        let (ctx, fs) = setup(21);
        // as printed (d = 5, delta = 0) the (21,11) code is out of reach
        let strict = code_search(&SearchConfig::new(21, 0.5, 5, 0), &fs, &ctx).unwrap();
        assert!(!strict.records.iter().any(|r| r.k == 11 && r.weight == 5));
        assert_eq!(
            searched(&SearchConfig::new(21, 0.5, 5, 0), &fs, &ctx),
            brute_force(&SearchConfig::new(21, 0.5, 5, 0), &fs, &ctx)
        );

        let cfg = SearchConfig::new(21, 0.5, 4, 1);
        let recs = code_search(&cfg, &fs, &ctx).unwrap().records;
        let ds: Vec<&CodeRecord> = recs.iter().filter(|r| r.k == 11 && r.weight == 5).collect();
        assert_eq!(ds.len(), 2);
        for r in ds {
            assert!(r.orthogonal);
            assert_eq!(r.r_theta, 5);
            let code = build_code(&r.u, 21).unwrap();
            assert_eq!(min_distance_exact(&code, 1 << 20).unwrap(), 6);
        }
    }

    #[test]
    fn exhaustive_against_brute_force() {
        for n in [7, 15, 21] {
            let (ctx, fs) = setup(n);
            for &r_min in &[0.0, 0.3, 0.5, 0.7] {
                for d in 1..5 {
                    for delta in 0..4 {
                        let cfg = SearchConfig::new(n, r_min, d, delta);
                        assert_eq!(
                            searched(&cfg, &fs, &ctx),
                            brute_force(&cfg, &fs, &ctx),
                            "n={n} r_min={r_min} d={d} delta={delta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn records_satisfy_bounds_and_laws() {
        for n in [15, 21, 45, 63] {
            let (ctx, fs) = setup(n);
            let cfg = SearchConfig::new(n, 0.2, 1, 6);
            for r in code_search(&cfg, &fs, &ctx).unwrap().records {
                assert!(cfg.admits_weight(r.weight));
                assert!(cfg.admits_rate(r.theta.weight()));
                assert!(cfg.admits_run(r.r_theta));
                assert!(r.k as f64 / n as f64 >= cfg.r_min);
                assert_eq!(r.k, n - r.theta.weight());
                let h = poly_gcd(&BinaryPoly::cyclic_modulus(n), &r.u).unwrap();
                assert_eq!(r.k, h.degree().unwrap());
                let degs: usize = r.subset.iter().map(|&i| fs.degree(i)).sum();
                assert_eq!(r.weight, degs);
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let (ctx, fs) = setup(63);
        let cfg = SearchConfig::new(63, 0.3, 2, 4);
        let a = code_search_with(&cfg, &fs, &ctx, Execution::Parallel).unwrap();
        let b = code_search_with(&cfg, &fs, &ctx, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        let ja = serde_json::to_string(&a.records).unwrap();
        let jb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn budget_truncates_deterministically() {
        let (ctx, fs) = setup(63);
        let mut cfg = SearchConfig::new(63, 0.2, 1, 6);
        let full = code_search(&cfg, &fs, &ctx).unwrap();
        assert!(!full.truncated);
        cfg.budget = Some(full.nodes / 2);
        let part = code_search(&cfg, &fs, &ctx).unwrap();
        assert!(part.truncated);
        assert_eq!(part.nodes, full.nodes / 2);
        assert_eq!(part, code_search_with(&cfg, &fs, &ctx, Execution::Sequential).unwrap());
        assert!(matches!(part.into_complete(), Err(Error::BudgetExceeded { .. })));
        cfg.budget = Some(full.nodes);
        assert!(!code_search(&cfg, &fs, &ctx).unwrap().truncated);
    }

    #[test]
    fn max_results_caps_after_sorting() {
        let (ctx, fs) = setup(63);
        let mut cfg = SearchConfig::new(63, 0.2, 1, 6);
        let full = code_search(&cfg, &fs, &ctx).unwrap().records;
        assert!(full.len() > 3);
        cfg.max_results = Some(3);
        assert_eq!(code_search(&cfg, &fs, &ctx).unwrap().records, full[..3].to_vec());
        assert!(full.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
    }

    #[test]
    fn weight_bound_tie_at_perfect_square() {
        // sqrt(9) = 3 exactly: a weight-3 subset is admitted with delta = 0
        let cfg = SearchConfig::new(9, 0.0, 1, 0);
        assert!(cfg.admits_weight(3));
        assert!(!cfg.admits_weight(4));
        let cfg = SearchConfig::new(49, 0.0, 1, 1);
        assert!(cfg.admits_weight(8));
        assert!(!cfg.admits_weight(9));
    }

    #[test]
    fn rejects_invalid_config() {
        let (ctx, fs) = setup(7);
        assert!(code_search(&SearchConfig::new(7, 1.0, 1, 0), &fs, &ctx).is_err());
        assert!(code_search(&SearchConfig::new(7, 0.5, 0, 0), &fs, &ctx).is_err());
        assert!(code_search(&SearchConfig::new(9, 0.5, 1, 0), &fs, &ctx).is_err());
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(!is_nondegenerate(&p("1+x^3+x^6"), 9).unwrap());
        assert!(is_nondegenerate(&p("1+x+x^2+x^4"), 7).unwrap());
        assert!(!is_nondegenerate(&BinaryPoly::all_ones(15), 15).unwrap());
        // repetition code at n = 15: h = x + 1 divides x^1 + 1
        let mut rep = BinaryPoly::all_ones(15);
        rep = rep.add(&BinaryPoly::one());
        assert_eq!(build_code(&rep, 15).unwrap().k, 1);
        assert!(!is_nondegenerate(&rep, 15).unwrap());
        assert!(!is_nondegenerate(&BinaryPoly::one(), 7).unwrap());
        assert_eq!(is_nondegenerate(&BinaryPoly::zero(), 7), Err(Error::ZeroPolynomial));
    }

    /// Degeneracy oracle straight from the definitions: some proper period
    /// `n'` makes every codeword, or every row of the circulant, repeat.
    fn degenerate_oracle(u: &BinaryPoly, n: usize) -> bool {
        let code = match build_code(u, n) {
            Ok(c) => c,
            Err(_) => return true,
        };
        let g = code.generator_matrix();
        let periodic = |bits: &dyn Fn(usize) -> bool, d: usize| (0..n).all(|i| bits(i) == bits((i + d) % n));
        proper_divisors(n).any(|d| {
            let words_repeat = (0..g.rows()).all(|r| periodic(&|i| g.get(r, i), d));
            let rows_repeat = periodic(&|i| u.contains(i), d);
            words_repeat || rows_repeat
        })
    }

    #[test]
    fn nondegeneracy_matches_periodicity_oracle() {
        for n in [9, 15, 21, 27, 45] {
            let (_, fs) = setup(n);
            for mask in 1u64..(1 << fs.len()).min(1 << 12) {
                let subset: Vec<usize> = (0..fs.len()).filter(|i| mask >> i & 1 == 1).collect();
                let u = BinaryPoly::from_exponents(
                    subset.iter().flat_map(|&i| fs.factors()[i].coset.members().to_vec()),
                );
                assert_eq!(
                    is_nondegenerate(&u, n).unwrap(),
                    !degenerate_oracle(&u, n),
                    "n={n} u={u}"
                );
            }
        }
    }

    #[test]
    fn dedup_behaviour() {
        let (ctx, fs) = setup(7);
        let recs = code_search(&SearchConfig::new(7, 0.0, 1, 7), &fs, &ctx).unwrap().records;
        let mut list = CodesList::new();
        assert!(dedup_insert(recs[0].clone(), &mut list));
        assert!(!dedup_insert(recs[0].clone(), &mut list));
        let mut relabelled = recs[0].clone();
        relabelled.subset = vec![0, 1, 2];
        assert!(!dedup_insert(relabelled, &mut list));
        // distinct subsets give distinct idempotents, hence distinct generators
        let keys: HashSet<&str> = recs.iter().map(|r| r.dedup_key.as_str()).collect();
        assert_eq!(keys.len(), recs.len());
    }

    #[test]
    fn record_json_shape() {
        let (ctx, fs) = setup(7);
        let rec = &code_search(&SearchConfig::new(7, 0.4, 2, 1), &fs, &ctx).unwrap().records[0];
        let j = serde_json::to_value(rec).unwrap();
        assert_eq!(j["u"], "x+x^2+x^4");
        assert_eq!(j["theta"], "1+z+z^2+z^4");
        assert_eq!(j["dedup_key"], "7:1+x+x^2+x^4");
        let back: CodeRecord = serde_json::from_value(j).unwrap();
        assert_eq!(&back, rec);
    }
}
