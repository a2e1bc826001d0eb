//! Minimum distance of additive GF(4) codes (symbol weight) and of binary linear codes.
//!
//! Additive codes use the support method: a position set `S` of size `w` carries a nonzero
//! codeword exactly when the `2w` parity-check columns belonging to `S` are linearly dependent.
//! Binary codes use parity-check column combinations, with meet-in-the-middle from `w = 2` on.
//! Both fall back to exhaustive enumeration when the code is small enough.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::code::{CodeError, F4Space, DEFAULT_ENUMERATION_BUDGET_LOG2};
use crate::gf4::F4Vector;
use crate::linalg::{columns, Echelon};

pub const DEFAULT_MAX_W: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    SupportKernel,
    ColumnCombination,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::SupportKernel => "support_kernel",
            Method::ColumnCombination => "column_combination",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport<W> {
    pub d: usize,
    /// A codeword of weight exactly `d`, re-verified before the report is built.
    pub witness: W,
    pub method: Method,
    /// Largest `w` for which no nonzero codeword of weight `<= w` exists.
    pub certified_lower_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance<W> {
    Exact(DistanceReport<W>),
    /// The search stopped at `max_w`; `d > certified_lower_bound`.
    Inconclusive {
        certified_lower_bound: usize,
    },
}

impl<W> Distance<W> {
    pub fn exact(&self) -> Option<&DistanceReport<W>> {
        match self {
            Distance::Exact(r) => Some(r),
            Distance::Inconclusive { .. } => None,
        }
    }

    pub fn d(&self) -> Option<usize> {
        self.exact().map(|r| r.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("witness failed re-verification (weight {weight}, expected {expected}, member {member})")]
    WitnessRejected {
        weight: usize,
        expected: usize,
        member: bool,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub max_w: usize,
    pub exhaustive_budget_log2: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            max_w: DEFAULT_MAX_W,
            exhaustive_budget_log2: DEFAULT_ENUMERATION_BUDGET_LOG2,
        }
    }
}

/// Serializable digest of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub d: Option<usize>,
    pub method: Option<Method>,
    pub certified_lower_bound: usize,
    pub witness: Option<String>,
}

impl DistanceSummary {
    pub fn from_f4(dist: &Distance<F4Vector>) -> Self {
        match dist {
            Distance::Exact(r) => Self {
                d: Some(r.d),
                method: Some(r.method),
                certified_lower_bound: r.certified_lower_bound,
                witness: Some(r.witness.to_symbol_string()),
            },
            Distance::Inconclusive { certified_lower_bound } => Self {
                d: None,
                method: None,
                certified_lower_bound: *certified_lower_bound,
                witness: None,
            },
        }
    }

    pub fn from_binary(dist: &Distance<BitVec>) -> Self {
        match dist {
            Distance::Exact(r) => Self {
                d: Some(r.d),
                method: Some(r.method),
                certified_lower_bound: r.certified_lower_bound,
                witness: Some(r.witness.to_hex()),
            },
            Distance::Inconclusive { certified_lower_bound } => Self {
                d: None,
                method: None,
                certified_lower_bound: *certified_lower_bound,
                witness: None,
            },
        }
    }
}

fn verified_f4(
    space: &F4Space,
    witness: F4Vector,
    d: usize,
    method: Method,
) -> Result<Distance<F4Vector>, DistanceError> {
    let weight = witness.symbol_weight();
    let member = space.contains_packed(&witness.to_packed());
    if weight != d || !member {
        return Err(DistanceError::WitnessRejected {
            weight,
            expected: d,
            member,
        });
    }
    Ok(Distance::Exact(DistanceReport {
        d,
        witness,
        method,
        certified_lower_bound: d - 1,
    }))
}

fn verified_binary(
    gen: &Echelon,
    witness: BitVec,
    d: usize,
    method: Method,
) -> Result<Distance<BitVec>, DistanceError> {
    let weight = witness.count_ones();
    let member = gen.contains(&witness);
    if weight != d || !member {
        return Err(DistanceError::WitnessRejected {
            weight,
            expected: d,
            member,
        });
    }
    Ok(Distance::Exact(DistanceReport {
        d,
        witness,
        method,
        certified_lower_bound: d - 1,
    }))
}

/// Support search up to `opts.max_w`, then exhaustive enumeration if the search was
/// inconclusive and the code fits the budget.
pub fn min_distance(space: &F4Space, opts: &DistanceOptions) -> Result<Distance<F4Vector>, DistanceError> {
    let found = support_min_distance(space, opts.max_w)?;
    match found {
        Distance::Inconclusive { .. } if space.dim2() <= opts.exhaustive_budget_log2 => {
            exhaustive_min_distance(space, opts.exhaustive_budget_log2)
        }
        other => Ok(other),
    }
}

/// Exhaustive scan over all codewords.
pub fn exhaustive_min_distance(space: &F4Space, budget_log2: usize) -> Result<Distance<F4Vector>, DistanceError> {
    if space.dim2() == 0 {
        return Err(DistanceError::ZeroCode);
    }
    // budget check only; the walk below runs on F4Vector rows to avoid repacking
    space.enumerate(budget_log2)?;
    let n = space.n();
    let rows: Vec<F4Vector> = space.basis_vectors();
    let mut cur = F4Vector::zeros(n);
    let mut best: Option<(usize, F4Vector)> = None;
    let total = 1u64 << space.dim2();
    for i in 1..total {
        cur.add_assign(&rows[i.trailing_zeros() as usize]);
        let w = cur.symbol_weight();
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, cur.clone()));
            if w == 1 {
                break;
            }
        }
    }
    let (d, witness) = best.expect("nonzero code has a nonzero word");
    verified_f4(space, witness, d, Method::Exhaustive)
}

/// Counts of codewords by symbol weight.
pub fn weight_distribution(space: &F4Space, budget_log2: usize) -> Result<BTreeMap<usize, u64>, CodeError> {
    let mut out = BTreeMap::new();
    for word in space.enumerate(budget_log2)? {
        *out.entry(word.symbol_weight()).or_insert(0) += 1;
    }
    Ok(out)
}

/// Incremental GF(2) basis for a handful of short vectors, remembering which inserted vectors
/// each basis row combines.
struct SmallBasis {
    words: usize,
    rows: Vec<u64>,
    pivots: Vec<(usize, u64)>,
    combos: Vec<u64>,
}

impl SmallBasis {
    fn new(words: usize) -> Self {
        Self {
            words,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.pivots.len()
    }

    fn truncate(&mut self, len: usize) {
        self.pivots.truncate(len);
        self.combos.truncate(len);
        self.rows.truncate(len * self.words);
    }

    /// Inserts `v` tagged with combination bit `tag`. Returns the dependency mask if `v` is
    /// in the span of what is already there.
    fn insert(&mut self, v: &[u64], tag: u64) -> Option<u64> {
        let mut cur = v.to_vec();
        let mut combo = tag;
        for (i, &(wi, mask)) in self.pivots.iter().enumerate() {
            if cur[wi] & mask != 0 {
                let row = &self.rows[i * self.words..(i + 1) * self.words];
                for (c, r) in cur.iter_mut().zip(row) {
                    *c ^= r;
                }
                combo ^= self.combos[i];
            }
        }
        match cur.iter().position(|&w| w != 0) {
            None => Some(combo),
            Some(wi) => {
                let mask = cur[wi] & cur[wi].wrapping_neg();
                self.pivots.push((wi, mask));
                self.combos.push(combo);
                self.rows.extend_from_slice(&cur);
                None
            }
        }
    }
}

fn column_words(cols: &[BitVec], words: usize) -> Vec<Vec<u64>> {
    cols.iter()
        .map(|c| {
            let mut w = c.words().to_vec();
            w.resize(words.max(1), 0);
            w
        })
        .collect()
}

/// Support-kernel search for `w = 1..=max_w`.
pub fn support_min_distance(space: &F4Space, max_w: usize) -> Result<Distance<F4Vector>, DistanceError> {
    if space.dim2() == 0 {
        return Err(DistanceError::ZeroCode);
    }
    let n = space.n();
    let h = space.echelon().orthogonal_complement();
    let r = h.len();
    let words = r.div_ceil(64).max(1);
    let cols = column_words(&columns(&h, 2 * n), words);
    for w in 1..=max_w.min(n) {
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut basis = SmallBasis::new(words);
            let mut chosen = Vec::with_capacity(w);
            support_dfs(&cols, n, w, first, &mut basis, &mut chosen)
        });
        if let Some((positions, mask)) = hit {
            let mut packed = BitVec::zeros(2 * n);
            for (slot, &pos) in positions.iter().enumerate() {
                if mask >> (2 * slot) & 1 == 1 {
                    packed.flip(pos);
                }
                if mask >> (2 * slot + 1) & 1 == 1 {
                    packed.flip(n + pos);
                }
            }
            return verified_f4(space, F4Vector::from_packed(n, &packed), w, Method::SupportKernel);
        }
    }
    Ok(Distance::Inconclusive {
        certified_lower_bound: max_w.min(n),
    })
}

/// Adds position `pos` to the support and recurses in lexicographic order. Returns the chosen
/// positions and the dependency mask (bit `2*slot` = one column, `2*slot+1` = alpha column).
fn support_dfs(
    cols: &[Vec<u64>],
    n: usize,
    w: usize,
    pos: usize,
    basis: &mut SmallBasis,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, u64)> {
    let slot = chosen.len();
    let mark = basis.len();
    chosen.push(pos);
    let mut dep = basis.insert(&cols[pos], 1 << (2 * slot));
    if dep.is_none() {
        dep = basis.insert(&cols[n + pos], 1 << (2 * slot + 1));
    }
    let result = if let Some(mask) = dep {
        Some((chosen.clone(), mask))
    } else if chosen.len() < w {
        let remaining = w - chosen.len();
        (pos + 1..=n - remaining).find_map(|next| support_dfs(cols, n, w, next, basis, chosen))
    } else {
        None
    };
    basis.truncate(mark);
    chosen.pop();
    result
}

/// Binary minimum distance: column combinations up to `max_w`, then exhaustive enumeration.
pub fn binary_min_distance(gen: &Echelon, opts: &DistanceOptions) -> Result<Distance<BitVec>, DistanceError> {
    let found = binary_column_distance(gen, opts.max_w)?;
    match found {
        Distance::Inconclusive { .. } if gen.rank() <= opts.exhaustive_budget_log2 => {
            binary_exhaustive_distance(gen, opts.exhaustive_budget_log2)
        }
        other => Ok(other),
    }
}

pub fn binary_exhaustive_distance(gen: &Echelon, budget_log2: usize) -> Result<Distance<BitVec>, DistanceError> {
    let k = gen.rank();
    if k == 0 {
        return Err(DistanceError::ZeroCode);
    }
    if k > budget_log2 || k >= 64 {
        return Err(CodeError::BudgetExceeded { dim2: k, budget_log2 }.into());
    }
    let rows = gen.rows();
    let mut cur = BitVec::zeros(gen.ncols());
    let mut best: Option<(usize, BitVec)> = None;
    for i in 1..(1u64 << k) {
        cur.xor_assign(&rows[i.trailing_zeros() as usize]);
        let w = cur.count_ones();
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, cur.clone()));
            if w == 1 {
                break;
            }
        }
    }
    let (d, witness) = best.expect("nonzero code");
    verified_binary(gen, witness, d, Method::Exhaustive)
}

/// Lexicographic `k`-subsets of `0..n`.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn subset_sum(cols: &[BitVec], set: &[usize], len: usize) -> BitVec {
    let mut s = BitVec::zeros(len);
    for &i in set {
        s.xor_assign(&cols[i]);
    }
    s
}

/// Parity-check column combinations. Once all weights below `w` are excluded, any two distinct
/// subsets with equal column sums are disjoint, which is what makes the hash joins exact.
pub fn binary_column_distance(gen: &Echelon, max_w: usize) -> Result<Distance<BitVec>, DistanceError> {
    if gen.rank() == 0 {
        return Err(DistanceError::ZeroCode);
    }
    let len = gen.ncols();
    let h = gen.orthogonal_complement();
    let r = h.len();
    let cols = columns(&h, len);
    let witness_of = |set: &[usize]| BitVec::from_positions(len, set.iter().copied());

    if let Some(j) = cols.iter().position(BitVec::is_zero) {
        return verified_binary(gen, witness_of(&[j]), 1, Method::ColumnCombination);
    }
    for w in 2..=max_w.min(len) {
        let w1 = w.div_ceil(2);
        let w2 = w / 2;
        let mut found: Option<Vec<usize>> = None;
        let mut table: HashMap<BitVec, Vec<usize>> = HashMap::new();
        if w1 == w2 {
            for_each_subset(len, w2, |b| {
                let s = subset_sum(&cols, b, r);
                match table.get(&s) {
                    Some(prev) => {
                        let mut set = prev.clone();
                        set.extend_from_slice(b);
                        found = Some(set);
                        true
                    }
                    None => {
                        table.insert(s, b.to_vec());
                        false
                    }
                }
            });
        } else {
            for_each_subset(len, w2, |b| {
                table.entry(subset_sum(&cols, b, r)).or_insert_with(|| b.to_vec());
                false
            });
            for_each_subset(len, w1, |a| {
                let s = subset_sum(&cols, a, r);
                if let Some(b) = table.get(&s) {
                    if b.iter().all(|x| !a.contains(x)) {
                        let mut set = a.to_vec();
                        set.extend_from_slice(b);
                        found = Some(set);
                        return true;
                    }
                }
                false
            });
        }
        if let Some(mut set) = found {
            set.sort_unstable();
            return verified_binary(gen, witness_of(&set), w, Method::ColumnCombination);
        }
    }
    Ok(Distance::Inconclusive {
        certified_lower_bound: max_w.min(len),
    })
}
