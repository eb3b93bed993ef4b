//! BPSK over AWGN with belief-propagation decoding on a parity-check matrix.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::code::CyclicCode;
use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, SparseMatrix};
use crate::par::{map_indexed, Execution};

/// Messages are clipped to this magnitude so that `atanh` stays finite.
const LLR_CLIP: f64 = 40.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// Code rate `k/n`.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Self {
        Self { ebn0_db, rate, seed }
    }

    /// `1 / (2 R 10^(EbN0/10))`.
    pub fn noise_variance(&self) -> f64 {
        noise_variance(self.ebn0_db, self.rate)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate <= 1.0) {
            return Err(Error::InvalidConfig(format!("rate {} outside (0, 1]", self.rate)));
        }
        if !self.ebn0_db.is_finite() {
            return Err(Error::InvalidConfig("Eb/N0 must be finite".into()));
        }
        Ok(())
    }
}

pub fn noise_variance(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    SumProduct,
    MinSum,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::SumProduct => "spa",
            Algorithm::MinSum => "minsum",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spa" | "sum-product" | "sumproduct" => Ok(Algorithm::SumProduct),
            "minsum" | "min-sum" => Ok(Algorithm::MinSum),
            other => Err(Error::InvalidConfig(format!("unknown decoder {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub algorithm: Algorithm,
    /// Stop as soon as the hard decision has zero syndrome.
    pub early_stop: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50,
            algorithm: Algorithm::SumProduct,
            early_stop: true,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Maps bit `b` to `1 - 2b`, adds `N(0, sigma^2)` noise and returns
/// `2y / sigma^2` per bit.
pub fn bpsk_awgn_llr<R: Rng + ?Sized>(codeword: &[bool], ch: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let sigma2 = ch.noise_variance();
    let sigma = sigma2.sqrt();
    codeword
        .iter()
        .map(|&b| {
            let x = if b { -1.0 } else { 1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            2.0 * (x + sigma * noise) / sigma2
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub estimate: Vec<bool>,
    /// True iff `estimate` satisfies every check.
    pub converged: bool,
    pub iterations: usize,
}

/// Edge-indexed Tanner graph; edges are numbered row by row.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &SparseMatrix) -> Self {
        let mut check_start = vec![0];
        let mut edge_var = Vec::with_capacity(h.num_edges());
        let mut var_edges = vec![Vec::new(); h.cols()];
        for r in 0..h.rows() {
            for &c in h.row(r) {
                var_edges[c].push(edge_var.len());
                edge_var.push(c);
            }
            check_start.push(edge_var.len());
        }
        Self {
            n: h.cols(),
            check_start,
            edge_var,
            var_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn checks(&self) -> usize {
        self.check_start.len() - 1
    }

    fn syndrome_is_zero(&self, bits: &[bool]) -> bool {
        self.check_start.windows(2).all(|w| {
            !self.edge_var[w[0]..w[1]]
                .iter()
                .fold(false, |acc, &v| acc ^ bits[v])
        })
    }

    /// Flooding-schedule decoding. Iteration 0 is the channel hard decision.
    pub fn decode(&self, llr: &[f64], cfg: &DecoderConfig) -> Result<DecodeOutcome> {
        cfg.validate()?;
        if llr.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: llr.len(),
            });
        }
        let mut hard: Vec<bool> = llr.iter().map(|&l| l < 0.0).collect();
        if cfg.early_stop && self.syndrome_is_zero(&hard) {
            return Ok(DecodeOutcome {
                estimate: hard,
                converged: true,
                iterations: 0,
            });
        }
        let clipped: Vec<f64> = llr.iter().map(|l| l.clamp(-LLR_CLIP, LLR_CLIP)).collect();
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| clipped[v]).collect();
        let mut c2v = vec![0.0; v2c.len()];
        let mut scratch = Vec::new();

        for it in 1..=cfg.max_iterations {
            for w in self.check_start.windows(2) {
                let (a, b) = (w[0], w[1]);
                match cfg.algorithm {
                    Algorithm::SumProduct => spa_check(&v2c[a..b], &mut c2v[a..b], &mut scratch),
                    Algorithm::MinSum => minsum_check(&v2c[a..b], &mut c2v[a..b]),
                }
            }
            for (v, edges) in self.var_edges.iter().enumerate() {
                let total = clipped[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                hard[v] = total < 0.0;
                for &e in edges {
                    v2c[e] = (total - c2v[e]).clamp(-LLR_CLIP, LLR_CLIP);
                }
            }
            if cfg.early_stop && self.syndrome_is_zero(&hard) {
                return Ok(DecodeOutcome {
                    estimate: hard,
                    converged: true,
                    iterations: it,
                });
            }
        }
        let converged = self.syndrome_is_zero(&hard);
        Ok(DecodeOutcome {
            estimate: hard,
            converged,
            iterations: cfg.max_iterations,
        })
    }
}

/// `tanh` rule with forward-backward products, so no division is needed.
fn spa_check(inp: &[f64], out: &mut [f64], scratch: &mut Vec<f64>) {
    let d = inp.len();
    scratch.clear();
    scratch.extend(inp.iter().map(|&x| (x / 2.0).tanh()));
    let mut fwd = 1.0;
    for i in 0..d {
        out[i] = fwd;
        fwd *= scratch[i];
    }
    let mut bwd = 1.0;
    for i in (0..d).rev() {
        let p = (out[i] * bwd).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        out[i] = (2.0 * p.atanh()).clamp(-LLR_CLIP, LLR_CLIP);
        bwd *= scratch[i];
    }
}

fn minsum_check(inp: &[f64], out: &mut [f64]) {
    let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, 0);
    let mut negative = false;
    for (i, &x) in inp.iter().enumerate() {
        let a = x.abs();
        negative ^= x < 0.0;
        if a < min1 {
            min2 = min1;
            min1 = a;
            arg = i;
        } else if a < min2 {
            min2 = a;
        }
    }
    for (i, (&x, o)) in inp.iter().zip(out.iter_mut()).enumerate() {
        let mag = if i == arg { min2 } else { min1 };
        let neg = negative ^ (x < 0.0);
        *o = if neg { -mag } else { mag };
    }
}

/// One-shot decode; build a [`TannerGraph`] once when decoding many frames.
pub fn bp_decode(h: &SparseMatrix, llr: &[f64], cfg: &DecoderConfig) -> Result<DecodeOutcome> {
    if h.rows() == 0 {
        return Err(Error::InvalidConfig("parity-check matrix has no rows".into()));
    }
    TannerGraph::new(h).decode(llr, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_frame_errors: 100,
            max_frames: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    pub stop: StopRule,
    /// Encode a fresh random message each frame instead of the all-zero word.
    pub random_codeword: bool,
    /// Frames decoded per parallel batch.
    pub batch_size: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            stop: StopRule::default(),
            random_codeword: false,
            batch_size: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    /// Over all `n` codeword bits.
    pub ber: f64,
    pub avg_iterations: f64,
    pub wall_time: f64,
}

impl SimResult {
    pub const CSV_HEADER: &'static str = "ebn0_db,frames,frame_errors,fer,ber,avg_iterations";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:e},{:e},{:.4}",
            self.ebn0_db, self.frames, self.frame_errors, self.fer, self.ber, self.avg_iterations
        )
    }
}

#[derive(Clone, Copy)]
struct Frame {
    error: bool,
    bit_errors: u64,
    iterations: usize,
}

/// The RNG stream of one frame.
pub fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ frame)
}

fn encode(g: &BitMatrix, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut word = vec![false; g.cols()];
    for r in 0..g.rows() {
        if rng.random::<bool>() {
            for c in g.row_support(r) {
                word[c] ^= true;
            }
        }
    }
    word
}

/// Measures FER/BER at each channel point.
///
/// Frame `f` at a point with seed `s` draws everything from
/// [`frame_rng`]`(s, f)`, so points sharing a seed see the same noise
/// samples up to scaling. Frames run in batches; each batch is scanned in
/// frame order and the run stops at the first frame that meets the stop
/// rule, so results do not depend on the execution mode.
pub fn simulate_fer(
    code: &CyclicCode,
    h: &SparseMatrix,
    points: &[ChannelConfig],
    dec: &DecoderConfig,
    opts: &SimOptions,
    exec: Execution,
) -> Result<Vec<SimResult>> {
    if h.cols() != code.n {
        return Err(Error::DimensionMismatch {
            expected: code.n,
            got: h.cols(),
        });
    }
    let generator = opts.random_codeword.then(|| code.generator_matrix());
    simulate_fer_matrix(h, generator.as_ref(), points, dec, opts, exec)
}

/// [`simulate_fer`] for a bare parity-check matrix. `generator` (rows
/// spanning the null space of `h`) is required only for random codewords.
pub fn simulate_fer_matrix(
    h: &SparseMatrix,
    generator: Option<&BitMatrix>,
    points: &[ChannelConfig],
    dec: &DecoderConfig,
    opts: &SimOptions,
    exec: Execution,
) -> Result<Vec<SimResult>> {
    dec.validate()?;
    let n = h.cols();
    if h.rows() == 0 {
        return Err(Error::InvalidConfig("parity-check matrix has no rows".into()));
    }
    if opts.stop.max_frames == 0 || opts.batch_size == 0 {
        return Err(Error::InvalidConfig("max_frames and batch_size must be positive".into()));
    }
    let generator = match (opts.random_codeword, generator) {
        (false, _) => None,
        (true, Some(g)) if g.cols() == n => Some(g),
        (true, Some(g)) => {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.cols(),
            })
        }
        (true, None) => {
            return Err(Error::InvalidConfig("random codewords need a generator matrix".into()))
        }
    };
    let graph = TannerGraph::new(h);

    let mut results = Vec::with_capacity(points.len());
    for ch in points {
        ch.validate()?;
        let start = Instant::now();
        let run_frame = |f: u64| -> Result<Frame> {
            let mut rng = frame_rng(ch.seed, f);
            let word = match generator {
                Some(g) => encode(g, &mut rng),
                None => vec![false; n],
            };
            let llr = bpsk_awgn_llr(&word, ch, &mut rng);
            let out = graph.decode(&llr, dec)?;
            let bit_errors = out.estimate.iter().zip(&word).filter(|(a, b)| a != b).count() as u64;
            Ok(Frame {
                error: bit_errors > 0,
                bit_errors,
                iterations: out.iterations,
            })
        };

        let (mut frames, mut frame_errors, mut bit_errors, mut iterations) = (0u64, 0u64, 0u64, 0u64);
        'batches: while frames < opts.stop.max_frames {
            let len = (opts.stop.max_frames - frames).min(opts.batch_size as u64);
            let base = frames;
            let batch = map_indexed(exec, len as usize, |i| run_frame(base + i as u64));
            for fr in batch {
                let fr = fr?;
                frames += 1;
                frame_errors += fr.error as u64;
                bit_errors += fr.bit_errors;
                iterations += fr.iterations as u64;
                if frame_errors >= opts.stop.min_frame_errors {
                    break 'batches;
                }
            }
        }
        results.push(SimResult {
            ebn0_db: ch.ebn0_db,
            frames,
            frame_errors,
            bit_errors,
            fer: frame_errors as f64 / frames as f64,
            ber: bit_errors as f64 / (frames as f64 * n as f64),
            avg_iterations: iterations as f64 / frames as f64,
            wall_time: start.elapsed().as_secs_f64(),
        });
    }
    Ok(results)
}

/// `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Probability that uncoded BPSK gets at least one of `k` bits wrong:
/// `1 - (1 - Q(sqrt(2 Eb/N0)))^k`.
pub fn uncoded_fer(ebn0_db: f64, k: usize) -> f64 {
    let p = q_function((2.0 * 10f64.powf(ebn0_db / 10.0)).sqrt());
    // 1 - (1 - p)^k without cancellation for small p
    -(k as f64 * (-p).ln_1p()).exp_m1()
}
