//! Search over generator triples `(g1, g2, b)` with coprime binary divisors `g1, b` of `x^n - a`
//! and random `g2` of degree below `deg b`.
//!
//! The candidate list is built sequentially from the seed, evaluated in parallel, and collected
//! in candidate order, so the output does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Read;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binmap::{image_code, BinaryRecord, MapKind};
use crate::code::{build_code, validate_triple, AdditiveCode, CodeError, CodeRecord};
use crate::distance::{min_distance, DistanceOptions, DistanceSummary, DEFAULT_MAX_W};
use crate::factor::factorize;
use crate::gf2poly::{BinPoly, PolyError};
use crate::gf4::F4Vector;
use crate::quantum::{css_from_dual_containing, CssOptions, QuantumParams};
use crate::ring::{Chirality, RingContext};

/// Candidate batch size between sink flushes.
const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ASource {
    /// `samples` distinct random `a` of degree `< n` per length.
    Random { samples: usize },
    /// Every `a` of degree `<= max_deg` (and `< n`), including `a = 0`.
    Exhaustive { max_deg: usize },
    /// Explicit multinomials `x^n - a`; the length range is ignored.
    Fixed { multinomials: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Maps,
    Css,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub a_source: ASource,
    /// Degree caps for `g1` and `b`; `None` means `n - 1`.
    pub max_g1_deg: Option<usize>,
    pub max_b_deg: Option<usize>,
    pub g2_samples: usize,
    pub max_w: usize,
    pub seed: u64,
    pub min_d: usize,
    pub min_dim2: usize,
    pub chirality: Chirality,
    pub stages: BTreeSet<Stage>,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Records carry a unix timestamp when set. Off by default so output is reproducible.
    pub timestamp: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_min: 7,
            n_max: 7,
            a_source: ASource::Random { samples: 8 },
            max_g1_deg: None,
            max_b_deg: None,
            g2_samples: 4,
            max_w: DEFAULT_MAX_W,
            seed: 0,
            min_d: 2,
            min_dim2: 0,
            chirality: Chirality::Right,
            stages: BTreeSet::new(),
            threads: None,
            timestamp: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub map: MapKind,
    pub code: BinaryRecord,
    pub distance: DistanceSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumEntry {
    pub map: MapKind,
    pub params: QuantumParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BeatsBaseline,
    Matches,
    Below,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub index: u64,
    pub seed: u64,
    pub code: CodeRecord,
    pub distance: DistanceSummary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quantum: Vec<QuantumEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("record distance {0:?} has no witness")]
    MissingWitness(Option<usize>),
    #[error("witness {0:?} does not parse")]
    BadWitness(String),
    #[error("witness has weight {weight}, record says d = {d}")]
    WitnessWeight { weight: usize, d: usize },
    #[error("witness is not a codeword")]
    WitnessNotCodeword,
}

impl SearchRecord {
    /// Rebuilds the code (re-checking every validation condition) and re-verifies the witness.
    pub fn revalidate(&self) -> Result<AdditiveCode, RecordError> {
        let code = self.code.to_code()?;
        let Some(d) = self.distance.d else {
            return Ok(code);
        };
        let w = self
            .distance
            .witness
            .as_ref()
            .ok_or(RecordError::MissingWitness(Some(d)))?;
        let v = F4Vector::parse_symbols(w).map_err(|_| RecordError::BadWitness(w.clone()))?;
        if v.symbol_weight() != d {
            return Err(RecordError::WitnessWeight {
                weight: v.symbol_weight(),
                d,
            });
        }
        if !code.contains(&v)? {
            return Err(RecordError::WitnessNotCodeword);
        }
        Ok(code)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub rings: usize,
    pub candidates: usize,
    pub emitted: usize,
    pub filtered: usize,
    pub skipped: BTreeMap<String, usize>,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("multinomial {text:?}: {source}")]
    Multinomial { text: String, source: PolyError },
    #[error("coprime pair g1 = {g1}, b = {b} with g2 = {g2} failed validation: {source}")]
    CoprimeInvalid {
        g1: String,
        g2: String,
        b: String,
        source: CodeError,
    },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One `(n, k, d)` table; lookups are by `(n, d)` and keep the largest `k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Baseline {
    best_k: HashMap<(usize, usize), usize>,
}

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("baseline header must be n,k,d (found {0:?})")]
    Header(Vec<String>),
}

#[derive(Deserialize)]
struct BaselineRow {
    n: usize,
    k: usize,
    d: usize,
}

impl Baseline {
    pub fn from_rows(rows: impl IntoIterator<Item = (usize, usize, usize)>) -> Self {
        let mut best_k = HashMap::new();
        for (n, k, d) in rows {
            let e = best_k.entry((n, d)).or_insert(k);
            *e = (*e).max(k);
        }
        Self { best_k }
    }

    pub fn from_reader(r: impl Read) -> Result<Self, BaselineError> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(r);
        let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        if headers != ["n", "k", "d"] {
            return Err(BaselineError::Header(headers));
        }
        let rows = rdr
            .deserialize::<BaselineRow>()
            .map(|r| r.map(|r| (r.n, r.k, r.d)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_rows(rows))
    }

    pub fn from_path(path: &Path) -> Result<Self, BaselineError> {
        let file = std::fs::File::open(path).map_err(csv::Error::from)?;
        Self::from_reader(file)
    }

    pub fn k_for(&self, n: usize, d: usize) -> Option<usize> {
        self.best_k.get(&(n, d)).copied()
    }
}

/// Compares `log2 |C|` against `2k` for the baseline `[n, k, d]` at the same `n` and `d`.
pub fn compare_baseline(record: &CodeRecord, baseline: &Baseline) -> Verdict {
    let Some(d) = record.d else {
        return Verdict::Unknown;
    };
    match baseline.k_for(record.n, d) {
        None => Verdict::Unknown,
        Some(k) => match record.dim2_numerator.cmp(&(2 * k)) {
            std::cmp::Ordering::Greater => Verdict::BeatsBaseline,
            std::cmp::Ordering::Equal => Verdict::Matches,
            std::cmp::Ordering::Less => Verdict::Below,
        },
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn mix(h: u64, v: u64) -> u64 {
    splitmix64(h ^ v)
}

fn mix_poly(mut h: u64, p: &BinPoly) -> u64 {
    h = mix(h, p.words().len() as u64);
    for &w in p.words() {
        h = mix(h, w);
    }
    h
}

/// RNG for the `sample`-th `g2` of the pair `(g1, b)` over `x^n - a`.
pub fn g2_rng(seed: u64, ctx: &RingContext, g1: &BinPoly, b: &BinPoly, sample: usize) -> ChaCha8Rng {
    let mut h = mix(seed, ctx.n() as u64);
    h = mix_poly(h, ctx.a());
    h = mix_poly(h, g1);
    h = mix_poly(h, b);
    h = mix(h, sample as u64);
    ChaCha8Rng::seed_from_u64(h)
}

#[derive(Debug, Clone)]
struct Candidate {
    ctx: RingContext,
    g1: BinPoly,
    g2: BinPoly,
    b: BinPoly,
}

fn rings(config: &SearchConfig) -> Result<Vec<RingContext>, SearchError> {
    let mut out = Vec::new();
    match &config.a_source {
        ASource::Fixed { multinomials } => {
            for text in multinomials {
                let m = BinPoly::parse(text).map_err(|source| SearchError::Multinomial {
                    text: text.clone(),
                    source,
                })?;
                let ctx = RingContext::from_multinomial(&m)
                    .map_err(|e| SearchError::Config(format!("multinomial {text:?}: {e}")))?;
                out.push(ctx);
            }
        }
        ASource::Random { samples } => {
            for n in config.n_min..=config.n_max {
                let mut rng = ChaCha8Rng::seed_from_u64(mix(config.seed, n as u64));
                let distinct = if n >= 64 { usize::MAX } else { 1usize << n };
                let want = (*samples).min(distinct);
                let mut seen = BTreeSet::new();
                let mut attempts = 0usize;
                while seen.len() < want && attempts < 64 * want.max(1) {
                    attempts += 1;
                    let a = BinPoly::random(&mut rng, n);
                    if seen.insert(a.words().to_vec()) {
                        out.push(RingContext::new(n, a).expect("deg a < n"));
                    }
                }
            }
        }
        ASource::Exhaustive { max_deg } => {
            for n in config.n_min..=config.n_max {
                let bits = (*max_deg + 1).min(n);
                if bits >= 32 {
                    return Err(SearchError::Config(format!(
                        "exhaustive a-stream over 2^{bits} polynomials"
                    )));
                }
                for v in 0..(1u64 << bits) {
                    out.push(RingContext::new(n, BinPoly::from_u64(v)).expect("deg a < n"));
                }
            }
        }
    }
    Ok(out)
}

fn candidates(config: &SearchConfig, ctx: &RingContext, out: &mut Vec<Candidate>) -> Result<(), SearchError> {
    let n = ctx.n();
    let fac = factorize(ctx.modulus()).expect("modulus has degree n >= 1");
    let cap = |c: Option<usize>| c.unwrap_or(n - 1).min(n - 1);
    let g1s: Vec<BinPoly> = fac.divisors(cap(config.max_g1_deg)).collect();
    let bs: Vec<BinPoly> = fac.divisors(cap(config.max_b_deg)).collect();
    for g1 in &g1s {
        for b in &bs {
            if !g1.gcd(b).expect("nonzero divisors").is_one() {
                continue;
            }
            let db = b.deg().expect("divisors are nonzero");
            let mut g2s = BTreeSet::new();
            for s in 0..config.g2_samples.max(1) {
                let g2 = BinPoly::random(&mut g2_rng(config.seed, ctx, g1, b, s), db);
                if !g2s.insert(g2.words().to_vec()) {
                    continue;
                }
                validate_triple(ctx, Some(g1), &g2, Some(b)).map_err(|source| SearchError::CoprimeInvalid {
                    g1: g1.to_string(),
                    g2: g2.to_string(),
                    b: b.to_string(),
                    source,
                })?;
                out.push(Candidate {
                    ctx: ctx.clone(),
                    g1: g1.clone(),
                    g2,
                    b: b.clone(),
                });
            }
        }
    }
    Ok(())
}

enum Outcome {
    Emit(Box<SearchRecord>),
    Filtered,
    Skip(String),
}

fn evaluate(config: &SearchConfig, baseline: Option<&Baseline>, index: u64, c: &Candidate) -> Outcome {
    let code = match build_code(&c.ctx, Some(&c.g1), &c.g2, Some(&c.b), config.chirality) {
        Ok(code) => code,
        Err(e) => return Outcome::Skip(format!("build: {e}")),
    };
    if code.dim2() < config.min_dim2 {
        return Outcome::Filtered;
    }
    let opts = DistanceOptions {
        max_w: config.max_w,
        ..DistanceOptions::default()
    };
    let dist = match min_distance(code.space(), &opts) {
        Ok(d) => d,
        Err(e) => return Outcome::Skip(format!("distance: {e}")),
    };
    let Some(d) = dist.d() else {
        return Outcome::Skip("distance inconclusive".into());
    };
    if d < config.min_d {
        return Outcome::Filtered;
    }
    let mut maps = Vec::new();
    let mut quantum = Vec::new();
    if config.stages.contains(&Stage::Maps) || config.stages.contains(&Stage::Css) {
        for kind in MapKind::ALL {
            let mut img = image_code(kind, code.space());
            if img.k() == 0 {
                continue;
            }
            img.analyze();
            if config.stages.contains(&Stage::Maps) {
                let bd = match img.min_distance(&opts) {
                    Ok(bd) => bd,
                    Err(e) => return Outcome::Skip(format!("{kind} distance: {e}")),
                };
                maps.push(MapEntry {
                    map: kind,
                    code: img.to_record(bd.d()),
                    distance: DistanceSummary::from_binary(&bd),
                });
            }
            if config.stages.contains(&Stage::Css) {
                let css_opts = CssOptions {
                    distance: opts,
                    ..CssOptions::default()
                };
                if let Ok(params) = css_from_dual_containing(&img, &css_opts) {
                    quantum.push(QuantumEntry { map: kind, params });
                }
            }
        }
    }
    let record = CodeRecord::from_code(&code, Some(d));
    let verdict = baseline.map(|b| compare_baseline(&record, b));
    let timestamp = config.timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|t| t.as_secs())
            .unwrap_or(0)
    });
    Outcome::Emit(Box::new(SearchRecord {
        index,
        seed: config.seed,
        code: record,
        distance: DistanceSummary::from_f4(&dist),
        maps,
        quantum,
        verdict,
        timestamp,
    }))
}

fn check_config(config: &SearchConfig) -> Result<(), SearchError> {
    if !matches!(config.a_source, ASource::Fixed { .. }) && (config.n_min == 0 || config.n_min > config.n_max) {
        return Err(SearchError::Config(format!(
            "length range {}..={} is empty or contains 0",
            config.n_min, config.n_max
        )));
    }
    if config.threads == Some(0) {
        return Err(SearchError::Config("threads must be positive".into()));
    }
    Ok(())
}

/// Runs the search, handing each emitted record to `sink` in candidate order.
pub fn run_search(
    config: &SearchConfig,
    baseline: Option<&Baseline>,
    mut sink: impl FnMut(&SearchRecord) -> Result<(), SearchError>,
) -> Result<SearchSummary, SearchError> {
    check_config(config)?;
    let pool = match config.threads {
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| SearchError::Pool(e.to_string()))?,
        ),
        None => None,
    };
    let rings = rings(config)?;
    let mut summary = SearchSummary {
        rings: rings.len(),
        ..SearchSummary::default()
    };
    let mut pending = Vec::new();
    for ctx in &rings {
        candidates(config, ctx, &mut pending)?;
    }
    summary.candidates = pending.len();

    for (chunk_no, chunk) in pending.chunks(CHUNK).enumerate() {
        let base = (chunk_no * CHUNK) as u64;
        let work = || -> Vec<Outcome> {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, c)| evaluate(config, baseline, base + i as u64, c))
                .collect()
        };
        let outcomes = match &pool {
            Some(p) => p.install(work),
            None => work(),
        };
        for o in outcomes {
            match o {
                Outcome::Emit(r) => {
                    summary.emitted += 1;
                    sink(&r)?;
                }
                Outcome::Filtered => summary.filtered += 1,
                Outcome::Skip(reason) => *summary.skipped.entry(reason).or_default() += 1,
            }
        }
    }
    Ok(summary)
}

/// Runs the search and writes one JSON record per line.
pub fn run_search_jsonl(
    config: &SearchConfig,
    baseline: Option<&Baseline>,
    mut out: impl std::io::Write,
) -> Result<SearchSummary, SearchError> {
    let summary = run_search(config, baseline, |r| {
        serde_json::to_writer(&mut out, r).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
        Ok(())
    })?;
    out.flush()?;
    Ok(summary)
}
