//! Additive right/left polycyclic codes `C = <w g1 + g2, b>` over GF(4).
//!
//! A code is stored twice: as its canonical generator triple `(g1, g2, b)` and as a row-reduced
//! GF(2) basis over the packed `2n`-bit vector coordinates. The triple is authoritative and the
//! basis is derived from it.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::factor::factorize;
use crate::gf2poly::{BinPoly, PolyError};
use crate::gf4::{F4Poly, F4Vector, F4};
use crate::linalg::Echelon;
use crate::ring::{shift_packed, Chirality, RingContext, RingError, ShiftKind};

/// Default cap on `log2` of the number of codewords an enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET_LOG2: usize = 24;

/// The divisibility conditions a generator triple must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    BDividesModulus,
    G1DividesModulus,
    BDividesProduct,
    ModulusDividesProduct,
    G2RequiresG1,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::BDividesModulus => "b | x^n - a",
            Condition::G1DividesModulus => "g1 | x^n - a",
            Condition::BDividesProduct => "b | ((x^n - a)/g1)*g2",
            Condition::ModulusDividesProduct => "(x^n - a) | ((x^n - a)/g1)*g2",
            Condition::G2RequiresG1 => "g2 = 0 when g1 is absent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("validation failed: {0} does not hold")]
    Validation(Condition),
    #[error("degree condition failed: {0}")]
    Degree(String),
    #[error("vector has length {found}, code length is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("enumeration of 2^{dim2} codewords exceeds the budget 2^{budget_log2}")]
    BudgetExceeded { dim2: usize, budget_log2: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("record mismatch: {0}")]
    Record(String),
}

/// An F2-subspace of GF(4)^n in packed vector coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F4Space {
    n: usize,
    echelon: Echelon,
}

impl F4Space {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            echelon: Echelon::new(2 * n),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_packed_rows(n, (0..2 * n).map(|i| BitVec::from_positions(2 * n, [i])))
    }

    pub fn from_packed_rows(n: usize, rows: impl IntoIterator<Item = BitVec>) -> Self {
        Self {
            n,
            echelon: Echelon::from_owned_rows(2 * n, rows),
        }
    }

    pub fn from_vectors<'a>(n: usize, vectors: impl IntoIterator<Item = &'a F4Vector>) -> Self {
        Self::from_packed_rows(n, vectors.into_iter().map(F4Vector::to_packed))
    }

    pub fn from_echelon(n: usize, echelon: Echelon) -> Self {
        assert_eq!(echelon.ncols(), 2 * n);
        Self { n, echelon }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `log2 |C|`.
    pub fn dim2(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn rows(&self) -> &[BitVec] {
        self.echelon.rows()
    }

    pub fn basis_vectors(&self) -> Vec<F4Vector> {
        self.rows().iter().map(|r| F4Vector::from_packed(self.n, r)).collect()
    }

    pub fn contains(&self, v: &F4Vector) -> Result<bool, CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(self.echelon.contains(&v.to_packed()))
    }

    pub fn contains_packed(&self, packed: &BitVec) -> bool {
        self.echelon.contains(packed)
    }

    pub fn same_space(&self, other: &F4Space) -> bool {
        self.n == other.n && self.echelon.same_space(&other.echelon)
    }

    /// Closure of the space under one induced shift step; checking basis rows suffices since
    /// the step is linear.
    pub fn is_invariant(&self, kind: ShiftKind, a: &BitVec) -> bool {
        a.len() == self.n
            && self
                .rows()
                .iter()
                .all(|r| self.echelon.contains(&shift_packed(kind, r, a)))
    }

    /// Closure under scalar multiplication by `w`, i.e. GF(4)-linearity.
    pub fn is_alpha_closed(&self) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| self.echelon.contains(&v.scale(F4::ALPHA).to_packed()))
    }

    /// All `2^dim2` codewords in Gray-code order.
    pub fn enumerate(&self, budget_log2: usize) -> Result<Codewords<'_>, CodeError> {
        let dim2 = self.dim2();
        if dim2 > budget_log2 || dim2 >= 64 {
            return Err(CodeError::BudgetExceeded { dim2, budget_log2 });
        }
        Ok(Codewords {
            n: self.n,
            rows: self.rows(),
            current: BitVec::zeros(2 * self.n),
            index: 0,
            total: 1u64 << dim2,
        })
    }
}

/// Gray-code stream of packed codewords; successive words differ by one basis row.
pub struct Codewords<'a> {
    n: usize,
    rows: &'a [BitVec],
    current: BitVec,
    index: u64,
    total: u64,
}

impl Codewords<'_> {
    /// Next codeword in packed form, avoiding the conversion to [`F4Vector`].
    pub fn next_packed(&mut self) -> Option<&BitVec> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let j = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.rows[j]);
        }
        self.index += 1;
        Some(&self.current)
    }
}

impl Iterator for Codewords<'_> {
    type Item = F4Vector;

    fn next(&mut self) -> Option<F4Vector> {
        let n = self.n;
        self.next_packed().map(|p| F4Vector::from_packed(n, p))
    }
}

/// Which case of the cardinality formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardinalityCase {
    Zero,
    /// Only `b` present: `|C| = 2^{n - deg b}`.
    BinaryOnly,
    /// Only `w g1 + g2` present: `|C| = 2^{n - deg g1}`.
    AlphaOnly,
    /// Both present: `|C| = 2^{n - deg b} 2^{n - deg g1}`.
    Both,
}

/// A canonical generator triple. `g2` is zero whenever `g1` is absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub g1: Option<BinPoly>,
    pub g2: BinPoly,
    pub b: Option<BinPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCode {
    ctx: RingContext,
    chirality: Chirality,
    g1: Option<BinPoly>,
    g2: BinPoly,
    b: Option<BinPoly>,
    space: F4Space,
}

fn check_below_n(name: &str, p: &BinPoly, n: usize) -> Result<(), CodeError> {
    match p.deg() {
        Some(d) if d >= n => Err(CodeError::Degree(format!("deg {name} < n (deg {name} = {d}, n = {n})"))),
        _ => Ok(()),
    }
}

/// Checks the divisibility and degree conditions, in order, for a candidate triple.
pub fn validate_triple(
    ctx: &RingContext,
    g1: Option<&BinPoly>,
    g2: &BinPoly,
    b: Option<&BinPoly>,
) -> Result<(), CodeError> {
    let m = ctx.modulus();
    let n = ctx.n();
    if let Some(b) = b {
        if !b.divides(m) {
            return Err(CodeError::Validation(Condition::BDividesModulus));
        }
        check_below_n("b", b, n)?;
    }
    let Some(g1) = g1 else {
        if !g2.is_zero() {
            return Err(CodeError::Validation(Condition::G2RequiresG1));
        }
        return Ok(());
    };
    if !g1.divides(m) {
        return Err(CodeError::Validation(Condition::G1DividesModulus));
    }
    check_below_n("g1", g1, n)?;
    check_below_n("g2", g2, n)?;
    let h = BinPoly::exact_div(m, g1).expect("g1 divides the modulus");
    let product = h.mul(g2);
    match b {
        Some(b) => {
            if g2.degree() >= b.degree() {
                return Err(CodeError::Degree(format!(
                    "deg g2 < deg b (deg g2 = {}, deg b = {})",
                    g2.degree(),
                    b.degree()
                )));
            }
            if !b.divides(&product) {
                return Err(CodeError::Validation(Condition::BDividesProduct));
            }
        }
        None => {
            if !m.divides(&product) {
                return Err(CodeError::Validation(Condition::ModulusDividesProduct));
            }
        }
    }
    Ok(())
}

/// Basis rows `{x^i (w g1 + g2) : i < n - deg g1} U {x^i b : i < n - deg b}` reduced in `R_n`.
pub fn generator_rows(ctx: &RingContext, g1: Option<&BinPoly>, g2: &BinPoly, b: Option<&BinPoly>) -> Vec<F4Poly> {
    let n = ctx.n();
    let mut rows = Vec::new();
    if let Some(g1) = g1 {
        let mut cur = ctx.reduce(&F4Poly::new(g1.clone(), g2.clone()));
        for _ in 0..n - g1.deg().unwrap_or(0) {
            rows.push(cur.clone());
            cur = ctx.ring_mul(&cur, &BinPoly::x());
        }
    }
    if let Some(b) = b {
        let mut cur = F4Poly::binary(ctx.reduce_binary(b));
        for _ in 0..n - b.deg().unwrap_or(0) {
            rows.push(cur.clone());
            cur = ctx.ring_mul(&cur, &BinPoly::x());
        }
    }
    rows
}

/// Validates `(g1, g2, b)` and builds the code.
pub fn build_code(
    ctx: &RingContext,
    g1: Option<&BinPoly>,
    g2: &BinPoly,
    b: Option<&BinPoly>,
    chirality: Chirality,
) -> Result<AdditiveCode, CodeError> {
    validate_triple(ctx, g1, g2, b)?;
    Ok(build_unchecked(ctx, g1, g2, b, chirality))
}

fn build_unchecked(
    ctx: &RingContext,
    g1: Option<&BinPoly>,
    g2: &BinPoly,
    b: Option<&BinPoly>,
    chirality: Chirality,
) -> AdditiveCode {
    let rows = generator_rows(ctx, g1, g2, b);
    let space = F4Space::from_packed_rows(ctx.n(), rows.iter().map(|r| ctx.pack(r, chirality)));
    AdditiveCode {
        ctx: ctx.clone(),
        chirality,
        g1: g1.cloned(),
        g2: if g1.is_some() { g2.clone() } else { BinPoly::zero() },
        b: b.cloned(),
        space,
    }
}

/// Spans the generators, closes the span under multiplication by `x` in `R_n`, and reads off the
/// unique triple: `b` is the minimal-degree binary element, `g1` the minimal-degree alpha part,
/// and `g2` the one part of that element reduced modulo `b`.
pub fn canonicalize(ctx: &RingContext, generators: &[F4Poly]) -> Triple {
    let closed = x_closure(ctx, generators.iter().map(|g| ctx.pack(g, Chirality::Right)));
    triple_from_closed(ctx, &closed)
}

/// Smallest `x`-closed subspace (in Right/polynomial coordinates) containing `rows`.
fn x_closure(ctx: &RingContext, rows: impl IntoIterator<Item = BitVec>) -> Echelon {
    let a = ctx.induction_vector(Chirality::Right);
    shift_closure(ctx.n(), rows, ShiftKind::Right, &a).echelon
}

/// Smallest subspace containing `rows` (packed) that is invariant under the given shift.
pub fn shift_closure(n: usize, rows: impl IntoIterator<Item = BitVec>, kind: ShiftKind, a: &BitVec) -> F4Space {
    let mut e = Echelon::new(2 * n);
    let mut work: Vec<BitVec> = rows.into_iter().collect();
    work.reverse();
    while let Some(v) = work.pop() {
        if e.insert(v.clone()) {
            work.push(shift_packed(kind, &v, a));
        }
    }
    F4Space::from_echelon(n, e)
}

fn triple_from_closed(ctx: &RingContext, closed: &Echelon) -> Triple {
    let n = ctx.n();
    // rows are sorted by descending pivot; binary rows are exactly those with pivot < n
    let b_row = closed.rows().iter().zip(closed.pivots()).rfind(|(_, &p)| p < n);
    let g_row = closed.rows().iter().zip(closed.pivots()).rfind(|(_, &p)| p >= n);
    let b = b_row.map(|(r, _)| BinPoly::from_bitvec(&r.slice(0, n)));
    let (g1, g2) = match g_row {
        None => (None, BinPoly::zero()),
        Some((r, _)) => {
            let g1 = BinPoly::from_bitvec(&r.slice(n, n));
            let mut g2 = BinPoly::from_bitvec(&r.slice(0, n));
            if let Some(b) = &b {
                g2 = g2.rem(b).expect("b is nonzero");
            }
            (Some(g1), g2)
        }
    };
    Triple { g1, g2, b }
}

impl AdditiveCode {
    pub fn from_triple(ctx: &RingContext, t: &Triple, chirality: Chirality) -> Result<Self, CodeError> {
        build_code(ctx, t.g1.as_ref(), &t.g2, t.b.as_ref(), chirality)
    }

    /// The code generated (as an `x`-closed F2-space) by arbitrary ring elements.
    pub fn from_generators(ctx: &RingContext, generators: &[F4Poly], chirality: Chirality) -> Self {
        let t = canonicalize(ctx, generators);
        let code = build_unchecked(ctx, t.g1.as_ref(), &t.g2, t.b.as_ref(), chirality);
        debug_assert!(validate_triple(ctx, t.g1.as_ref(), &t.g2, t.b.as_ref()).is_ok());
        code
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn g1(&self) -> Option<&BinPoly> {
        self.g1.as_ref()
    }

    pub fn g2(&self) -> &BinPoly {
        &self.g2
    }

    pub fn b(&self) -> Option<&BinPoly> {
        self.b.as_ref()
    }

    pub fn triple(&self) -> Triple {
        Triple {
            g1: self.g1.clone(),
            g2: self.g2.clone(),
            b: self.b.clone(),
        }
    }

    /// `deg b`, when `b` is present.
    pub fn t1(&self) -> Option<usize> {
        self.b.as_ref().and_then(BinPoly::deg)
    }

    /// `deg g1`, when `g1` is present.
    pub fn t2(&self) -> Option<usize> {
        self.g1.as_ref().and_then(BinPoly::deg)
    }

    pub fn case(&self) -> CardinalityCase {
        match (self.g1.is_some(), self.b.is_some()) {
            (false, false) => CardinalityCase::Zero,
            (false, true) => CardinalityCase::BinaryOnly,
            (true, false) => CardinalityCase::AlphaOnly,
            (true, true) => CardinalityCase::Both,
        }
    }

    /// `log2 |C|` from the cardinality formula.
    pub fn dim2(&self) -> usize {
        let n = self.n();
        self.t1().map_or(0, |t| n - t) + self.t2().map_or(0, |t| n - t)
    }

    /// Same as [`AdditiveCode::dim2`], kept under the name used by the records.
    pub fn cardinality_log2(&self) -> usize {
        self.dim2()
    }

    pub fn space(&self) -> &F4Space {
        &self.space
    }

    pub fn induction_vector(&self) -> BitVec {
        self.ctx.induction_vector(self.chirality)
    }

    pub fn contains(&self, v: &F4Vector) -> Result<bool, CodeError> {
        self.space.contains(v)
    }

    pub fn is_invariant(&self, kind: ShiftKind, a: &BitVec) -> bool {
        self.space.is_invariant(kind, a)
    }

    /// Generator rows as ring elements.
    pub fn generator_polys(&self) -> Vec<F4Poly> {
        generator_rows(&self.ctx, self.g1.as_ref(), &self.g2, self.b.as_ref())
    }

    /// Basis rows of the derived space, as ring elements.
    pub fn basis_polys(&self) -> Vec<F4Poly> {
        self.space
            .rows()
            .iter()
            .map(|r| self.ctx.unpack(r, self.chirality))
            .collect()
    }

    pub fn enumerate_codewords(&self, budget_log2: usize) -> Result<Codewords<'_>, CodeError> {
        self.space.enumerate(budget_log2)
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord::from_code(self, None)
    }
}

/// Draws a random monic divisor of `m` with degree below `deg m`.
pub fn random_proper_divisor<R: Rng + ?Sized>(rng: &mut R, m: &BinPoly) -> BinPoly {
    let fac = factorize(m).expect("modulus has degree >= 1");
    loop {
        let mut d = BinPoly::one();
        for (f, e) in fac.factors() {
            let k = rng.gen_range(0..=*e);
            d = d.mul(&f.pow(k));
        }
        if d.deg() < m.deg() {
            return d;
        }
    }
}

/// Samples a random valid triple for `ctx`, covering all three non-zero cases and both the
/// coprime and non-coprime situations.
pub fn sample_valid_triple<R: Rng + ?Sized>(rng: &mut R, ctx: &RingContext) -> Triple {
    let m = ctx.modulus();
    let n = ctx.n();
    let shape = rng.gen_range(0..10);
    let g1 = (shape >= 2).then(|| random_proper_divisor(rng, m));
    let b = (!(2..4).contains(&shape)).then(|| random_proper_divisor(rng, m));
    let g2 = match (&g1, &b) {
        (Some(g1), Some(b)) => {
            // b | (m/g1) g2  <=>  (b / gcd(b, m/g1)) | g2
            let h = BinPoly::exact_div(m, g1).unwrap();
            let gcd = b.gcd(&h).unwrap();
            let u = BinPoly::exact_div(b, &gcd).unwrap();
            let r = BinPoly::random(rng, gcd.deg().unwrap());
            u.mul(&r)
        }
        (Some(g1), None) => {
            // m | (m/g1) g2  <=>  g1 | g2
            let r = BinPoly::random(rng, n - g1.deg().unwrap());
            g1.mul(&r)
        }
        _ => BinPoly::zero(),
    };
    Triple { g1, g2, b }
}

/// Samples a ring of length `n` with a random induction polynomial.
pub fn sample_ring<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RingContext {
    RingContext::new(n, BinPoly::random(rng, n)).expect("n >= 1 and deg a < n")
}

/// Bit-exact polynomial encodings accompanying a [`CodeRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexForms {
    pub multinomial: String,
    pub g1: Option<String>,
    pub g2: Option<String>,
    pub b: Option<String>,
}

/// Flat, serializable form of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub n: usize,
    pub multinomial: String,
    pub g1: Option<String>,
    pub g2: Option<String>,
    pub b: Option<String>,
    pub chirality: Chirality,
    /// `log2 |C|`; the parameters print as `[n, dim2_numerator/2, d]`.
    pub dim2_numerator: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub hex: HexForms,
}

impl CodeRecord {
    pub fn from_code(code: &AdditiveCode, d: Option<usize>) -> Self {
        let g2 = code.g1.as_ref().map(|_| code.g2.clone());
        Self {
            n: code.n(),
            multinomial: code.ctx.modulus().to_string(),
            g1: code.g1.as_ref().map(BinPoly::to_string),
            g2: g2.as_ref().map(BinPoly::to_string),
            b: code.b.as_ref().map(BinPoly::to_string),
            chirality: code.chirality,
            dim2_numerator: code.dim2(),
            d,
            hex: HexForms {
                multinomial: code.ctx.modulus().to_hex(),
                g1: code.g1.as_ref().map(BinPoly::to_hex),
                g2: g2.as_ref().map(BinPoly::to_hex),
                b: code.b.as_ref().map(BinPoly::to_hex),
            },
        }
    }

    /// `[n, k, d]` with `k` printed as a half-integer when the dimension is odd.
    pub fn parameters(&self) -> String {
        let k = format_half(self.dim2_numerator);
        match self.d {
            Some(d) => format!("[{}, {k}, {d}]", self.n),
            None => format!("[{}, {k}, ?]", self.n),
        }
    }

    /// Rebuilds and re-validates the code; text and hex forms must agree.
    pub fn to_code(&self) -> Result<AdditiveCode, CodeError> {
        let m = pick(&self.multinomial, Some(&self.hex.multinomial), "multinomial")?;
        let ctx = RingContext::from_multinomial(&m)?;
        if ctx.n() != self.n {
            return Err(CodeError::Record(format!(
                "n = {} but the multinomial has degree {}",
                self.n,
                ctx.n()
            )));
        }
        let opt = |text: &Option<String>, hex: &Option<String>, name: &str| -> Result<Option<BinPoly>, CodeError> {
            match text {
                None => Ok(None),
                Some(t) => pick(t, hex.as_ref(), name).map(Some),
            }
        };
        let g1 = opt(&self.g1, &self.hex.g1, "g1")?;
        let g2 = opt(&self.g2, &self.hex.g2, "g2")?.unwrap_or_else(BinPoly::zero);
        let b = opt(&self.b, &self.hex.b, "b")?;
        let code = build_code(&ctx, g1.as_ref(), &g2, b.as_ref(), self.chirality)?;
        if code.dim2() != self.dim2_numerator {
            return Err(CodeError::Record(format!(
                "dim2_numerator = {} but the generators give {}",
                self.dim2_numerator,
                code.dim2()
            )));
        }
        Ok(code)
    }
}

fn pick(text: &str, hex: Option<&String>, name: &str) -> Result<BinPoly, CodeError> {
    let p = BinPoly::parse(text)?;
    if let Some(h) = hex {
        if BinPoly::from_hex(h)? != p {
            return Err(CodeError::Record(format!("{name}: text {text:?} and hex {h} disagree")));
        }
    }
    Ok(p)
}

/// `9 -> "9/2"`, `8 -> "4"`.
pub fn format_half(numerator: usize) -> String {
    if numerator.is_multiple_of(2) {
        (numerator / 2).to_string()
    } else {
        format!("{numerator}/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    fn row1() -> AdditiveCode {
        let ctx = RingContext::from_multinomial(&p("x^7+x^6+x^5+x^3+1")).unwrap();
        build_code(
            &ctx,
            Some(&p("x^2+x+1")),
            &p("x"),
            Some(&p("x^3+x^2+1")),
            Chirality::Right,
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let c = row1();
        assert_eq!(c.dim2(), 9);
        assert_eq!(c.space().dim2(), 9);
        assert_eq!(c.case(), CardinalityCase::Both);

        let ctx = RingContext::from_multinomial(&p("x^5+x^2+1")).unwrap();
        let full = build_code(&ctx, Some(&p("1")), &BinPoly::zero(), Some(&p("1")), Chirality::Right).unwrap();
        assert_eq!(full.dim2(), 10);
        assert!(full.space().same_space(&F4Space::full(5)));

        // b = x + 1 divides x^7 + 1; g2 = x violates deg g2 < deg b
        let ctx = RingContext::from_multinomial(&p("x^7+1")).unwrap();
        let err = build_code(&ctx, Some(&p("x+1")), &p("x"), Some(&p("x+1")), Chirality::Right).unwrap_err();
        assert!(
            matches!(&err, CodeError::Degree(s) if s.contains("deg g2 < deg b")),
            "{err}"
        );

        let err = build_code(&ctx, None, &BinPoly::zero(), Some(&p("x^2+1")), Chirality::Right).unwrap_err();
        assert_eq!(err, CodeError::Validation(Condition::BDividesModulus));
    }

    #[test]
    fn cardinality_cases() {
        let ctx = RingContext::from_multinomial(&p("x^7+1")).unwrap();
        let b_only = build_code(&ctx, None, &BinPoly::zero(), Some(&p("x^3+x+1")), Chirality::Right).unwrap();
        assert_eq!(b_only.case(), CardinalityCase::BinaryOnly);
        assert_eq!(b_only.dim2(), 4);
        assert_eq!(b_only.space().dim2(), 4);
        let zero = build_code(&ctx, None, &BinPoly::zero(), None, Chirality::Right).unwrap();
        assert_eq!(zero.dim2(), 0);
        assert_eq!(zero.case(), CardinalityCase::Zero);
    }

    #[test]
    fn membership_examples() {
        let c = row1();
        assert!(c.contains(&F4Vector::zeros(7)).unwrap());
        let gen = c.ctx().vectorize(&F4Poly::new(p("x^2+x+1"), p("x")), Chirality::Right);
        assert!(c.contains(&gen).unwrap());
        let alpha = F4Vector::parse_symbols("w 0 0 0 0 0 0").unwrap();
        assert!(!c.contains(&alpha).unwrap());
        assert!(c.contains(&F4Vector::zeros(6)).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let c = row1();
        let ctx = c.ctx().clone();
        let gen = F4Poly::new(p("x^2+x+1"), p("x"));
        let input = vec![
            gen.clone(),
            F4Poly::binary(p("x^3+x^2+1")),
            ctx.ring_mul(&gen, &BinPoly::x()),
        ];
        let t = canonicalize(&ctx, &input);
        assert_eq!(t, c.triple());
        assert_eq!(canonicalize(&ctx, &c.basis_polys()), c.triple());

        // w f with f = m / g for binary g, small n
        let ctx = RingContext::from_multinomial(&p("x^7+1")).unwrap();
        let f = BinPoly::exact_div(ctx.modulus(), &p("x^3+x+1")).unwrap();
        let t = canonicalize(&ctx, &[F4Poly::new(f.clone(), BinPoly::zero())]);
        assert_eq!(
            t,
            Triple {
                g1: Some(f),
                g2: BinPoly::zero(),
                b: None
            }
        );

        let t = canonicalize(&ctx, &[]);
        assert_eq!(
            t,
            Triple {
                g1: None,
                g2: BinPoly::zero(),
                b: None
            }
        );
    }

    #[test]
    fn enumerate_examples() {
        let ctx = RingContext::from_multinomial(&p("x^3+1")).unwrap();
        let zero = build_code(&ctx, None, &BinPoly::zero(), None, Chirality::Right).unwrap();
        assert_eq!(
            zero.enumerate_codewords(24).unwrap().collect::<Vec<_>>(),
            vec![F4Vector::zeros(3)]
        );

        let two = F4Space::from_packed_rows(3, [BitVec::from_positions(6, [0]), BitVec::from_positions(6, [4])]);
        let r = two.rows().to_vec();
        let words: Vec<BitVec> = {
            let mut it = two.enumerate(24).unwrap();
            let mut v = Vec::new();
            while let Some(w) = it.next_packed() {
                v.push(w.clone());
            }
            v
        };
        assert_eq!(
            words,
            vec![BitVec::zeros(6), r[0].clone(), r[0].xor(&r[1]), r[1].clone()]
        );

        let c = row1();
        let all: std::collections::HashSet<_> = c.enumerate_codewords(24).unwrap().collect();
        assert_eq!(all.len(), 512);
        assert!(matches!(
            c.enumerate_codewords(8),
            Err(CodeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn random_triples_rank_uniqueness_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(1..=16);
            let ctx = sample_ring(&mut rng, n);
            let t = sample_valid_triple(&mut rng, &ctx);
            let chir = if rng.gen() { Chirality::Right } else { Chirality::Left };
            let code = AdditiveCode::from_triple(&ctx, &t, chir).unwrap();
            assert_eq!(code.space().dim2(), code.dim2());
            assert_eq!(canonicalize(&ctx, &code.basis_polys()), t);
            assert!(code.is_invariant(chir.into(), &code.induction_vector()));
        }
    }

    #[test]
    fn coprime_pairs_force_zero_g2() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut hits = 0;
        for _ in 0..400 {
            let n = rng.gen_range(2..=14);
            let ctx = sample_ring(&mut rng, n);
            let m = ctx.modulus().clone();
            let g1 = random_proper_divisor(&mut rng, &m);
            let b = random_proper_divisor(&mut rng, &m);
            let h = BinPoly::exact_div(&m, &g1).unwrap();
            if !b.gcd(&h).unwrap().is_one() {
                continue;
            }
            hits += 1;
            let r = BinPoly::random(&mut rng, n);
            let t = canonicalize(&ctx, &[F4Poly::new(g1.clone(), r), F4Poly::binary(b.clone())]);
            assert_eq!(t.g2, BinPoly::zero());
            assert_eq!(t.g1, Some(g1));
        }
        assert!(hits > 20);
    }

    #[test]
    fn record_round_trip() {
        let c = row1();
        let rec = c.to_record();
        assert_eq!(rec.parameters(), "[7, 9/2, ?]");
        let json = serde_json::to_string(&rec).unwrap();
        let back: CodeRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.to_code().unwrap(), c);

        let mut bad = rec.clone();
        bad.hex.g1 = Some("0x3".into());
        assert!(matches!(bad.to_code(), Err(CodeError::Record(_))));
    }
}
