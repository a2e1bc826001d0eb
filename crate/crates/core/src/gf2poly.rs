//! Polynomials over GF(2), bit-packed.
//!
//! Coefficient `i` is bit `i` of the packed word sequence, so addition is a word-wise XOR and
//! the degree is a leading-bit scan. Values are always kept trimmed (no zero high words), which
//! makes structural equality the same as mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::bits::{hex_to_words, words_to_hex, BitVec, HexError, WORD_BITS};

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInfinity`], which orders
/// below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("bad hex polynomial: {0}")]
    Hex(#[from] HexError),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    words: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self { words: vec![2] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / WORD_BITS + 1];
        words[k / WORD_BITS] = 1u64 << (k % WORD_BITS);
        Self { words }
    }

    /// Builds from the low bits of `bits` (bit `i` = coefficient of `x^i`).
    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    /// Sum of `x^e` over the given exponents (repeats cancel).
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip_coeff(e);
        }
        p
    }

    /// Coefficients taken from a bit vector: bit `i` becomes the coefficient of `x^i`.
    pub fn from_bitvec(v: &BitVec) -> Self {
        Self::from_words(v.words().to_vec())
    }

    /// Coefficient vector of fixed length `len`.
    ///
    /// Panics if the degree is not below `len`.
    pub fn to_bitvec(&self, len: usize) -> BitVec {
        if let Degree::Finite(d) = self.degree() {
            assert!(d < len, "polynomial of degree {d} does not fit in {len} coefficients");
        }
        BitVec::from_words(len, self.words.clone())
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInfinity,
            Some(&top) => {
                Degree::Finite((self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - top.leading_zeros() as usize))
            }
        }
    }

    /// Degree as an option, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        match self.degree() {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn flip_coeff(&mut self, i: usize) {
        if self.words.len() <= i / WORD_BITS {
            self.words.resize(i / WORD_BITS + 1, 0);
        }
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
        self.trim();
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if self.coeff(i) != value {
            self.flip_coeff(i);
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * WORD_BITS + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> BinPoly {
        if self.is_zero() {
            return BinPoly::zero();
        }
        let mut out = vec![0u64; self.words.len() + k / WORD_BITS + 1];
        xor_shifted(&mut out, &self.words, k);
        BinPoly::from_words(out)
    }

    pub fn mul(&self, other: &BinPoly) -> BinPoly {
        if self.is_zero() || other.is_zero() {
            return BinPoly::zero();
        }
        let (small, large) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; self.words.len() + other.words.len() + 1];
        for e in small.exponents() {
            xor_shifted(&mut out, &large.words, e);
        }
        BinPoly::from_words(out)
    }

    pub fn square(&self) -> BinPoly {
        // Frobenius: coefficient i moves to 2i.
        BinPoly::from_exponents(self.exponents().into_iter().map(|e| 2 * e))
    }

    pub fn divmod(&self, divisor: &BinPoly) -> Result<(BinPoly, BinPoly), PolyError> {
        let dd = divisor.deg().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot: Vec<u64> = Vec::new();
        loop {
            while rem.last() == Some(&0) {
                rem.pop();
            }
            let Some(&top) = rem.last() else { break };
            let dr = (rem.len() - 1) * WORD_BITS + (WORD_BITS - 1 - top.leading_zeros() as usize);
            if dr < dd {
                break;
            }
            let s = dr - dd;
            if quot.len() <= s / WORD_BITS {
                quot.resize(s / WORD_BITS + 1, 0);
            }
            quot[s / WORD_BITS] |= 1u64 << (s % WORD_BITS);
            xor_shifted(&mut rem, &divisor.words, s);
        }
        Ok((BinPoly::from_words(quot), BinPoly::from_words(rem)))
    }

    pub fn rem(&self, divisor: &BinPoly) -> Result<BinPoly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True when `self` divides `other` (zero divides only zero).
    pub fn divides(&self, other: &BinPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).expect("nonzero divisor").is_zero()
    }

    /// Exact quotient `other / self`, `None` when the division leaves a remainder.
    pub fn exact_div(other: &BinPoly, divisor: &BinPoly) -> Option<BinPoly> {
        let (q, r) = other.divmod(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &BinPoly) -> Result<BinPoly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> BinPoly {
        BinPoly::from_exponents(self.exponents().into_iter().filter(|e| e % 2 == 1).map(|e| e - 1))
    }

    /// Square root of a polynomial whose odd coefficients all vanish.
    pub fn sqrt(&self) -> Option<BinPoly> {
        let exps = self.exponents();
        if exps.iter().any(|e| e % 2 == 1) {
            return None;
        }
        Some(BinPoly::from_exponents(exps.into_iter().map(|e| e / 2)))
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> BinPoly {
        let mut out = BinPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `self * other mod modulus`.
    pub fn mul_mod(&self, other: &BinPoly, modulus: &BinPoly) -> Result<BinPoly, PolyError> {
        self.mul(other).rem(modulus)
    }

    /// Coefficient reversal relative to length `len`: `x^(len-1) * p(1/x)`.
    ///
    /// Panics if the degree is not below `len`.
    pub fn reversed(&self, len: usize) -> BinPoly {
        if let Some(d) = self.deg() {
            assert!(d < len, "degree {d} does not fit in length {len}");
        }
        BinPoly::from_exponents(self.exponents().into_iter().map(|e| len - 1 - e))
    }

    /// Uniformly random polynomial of degree `< bound` (possibly zero).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: usize) -> BinPoly {
        let mut words: Vec<u64> = (0..bound.div_ceil(WORD_BITS)).map(|_| rng.gen()).collect();
        let rem = bound % WORD_BITS;
        if rem != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        BinPoly::from_words(words)
    }

    pub fn to_hex(&self) -> String {
        words_to_hex(&self.words)
    }

    pub fn from_hex(text: &str) -> Result<BinPoly, PolyError> {
        Ok(BinPoly::from_words(hex_to_words(text)?))
    }

    /// Parses the term grammar `term ('+' term)*` with `term := '1' | 'x' | 'x^' uint`, the
    /// literal `0`, or a `0x` hex literal.
    pub fn parse(text: &str) -> Result<BinPoly, PolyError> {
        let trimmed = text.trim();
        if trimmed.starts_with("0x") || trimmed.starts_with("0X") {
            return BinPoly::from_hex(trimmed);
        }
        Parser::new(text).parse()
    }
}

/// `dst ^= src << shift`, with `dst` long enough to hold the result.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    let need = src.len() + ws + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w << bs;
            dst[i + ws + 1] ^= w >> (WORD_BITS - bs);
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<BinPoly, PolyError> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            self.pos += 1;
            self.skip_ws();
            if self.pos != self.bytes.len() {
                return Err(self.err("trailing input after 0"));
            }
            return Ok(BinPoly::zero());
        }
        let mut p = BinPoly::zero();
        loop {
            self.skip_ws();
            let e = self.term()?;
            p.flip_coeff(e);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => self.pos += 1,
                Some(c) => return Err(self.err(format!("expected '+', found {:?}", c as char))),
            }
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<usize, PolyError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        return Err(self.err("expected exponent after '^'"));
                    }
                    let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                    digits.parse::<usize>().map_err(|_| self.err("exponent out of range"))
                } else {
                    Ok(1)
                }
            }
            None => Err(self.err("expected a term, found end of input")),
            Some(c) => Err(self.err(format!("expected a term, found {:?}", c as char))),
        }
    }
}

impl FromStr for BinPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BinPoly::parse(s)
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}

/// Orders by degree first, then by coefficient bits from the top down.
impl Ord for BinPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BinPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;

    fn add(self, rhs: &BinPoly) -> BinPoly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        BinPoly::from_words(words)
    }
}

impl Add for BinPoly {
    type Output = BinPoly;

    fn add(self, rhs: BinPoly) -> BinPoly {
        &self + &rhs
    }
}

impl AddAssign<&BinPoly> for BinPoly {
    fn add_assign(&mut self, rhs: &BinPoly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= s;
        }
        self.trim();
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;

    fn mul(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::mul(self, rhs)
    }
}

impl serde::Serialize for BinPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for BinPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        BinPoly::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((&p("x+1") + &p("x+1")).is_zero());
        assert_eq!(&p("x^2+1") + &p("x+1"), p("x^2+x"));
        // term-by-term XOR: {7,6,5,3,0} xor {6,5,3,0} = {7}
        assert_eq!(&p("x^7+x^6+x^5+x^3+1") + &p("x^6+x^5+x^3+1"), p("x^7"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x+1").mul(&p("x+1")), p("x^2+1"));
        assert!(p("x^3+x+1").mul(&BinPoly::zero()).is_zero());
        // schoolbook: (x^3+x^2+1)(x^4+x^2+1)
        //   = x^7+x^5+x^3 + x^6+x^4+x^2 + x^4+x^2+1 = x^7+x^6+x^5+x^3+1
        assert_eq!(p("x^3+x^2+1").mul(&p("x^4+x^2+1")), p("x^7+x^6+x^5+x^3+1"));
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p("x^7+x^6+x^5+x^3+1").divmod(&p("x^3+x^2+1")).unwrap();
        assert_eq!(q, p("x^4+x^2+1"));
        assert!(r.is_zero());
        let f = p("x^9+x^4+x");
        assert_eq!(f.divmod(&BinPoly::one()).unwrap(), (f.clone(), BinPoly::zero()));
        assert_eq!(p("x^2").divmod(&p("x^3")).unwrap(), (BinPoly::zero(), p("x^2")));
        assert_eq!(f.divmod(&BinPoly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2+1").gcd(&p("x+1")).unwrap(), p("x+1"));
        // Euclid: x^3+x^2+1 = x(x^2+x+1) + (x+1); x^2+x+1 = x(x+1) + 1
        assert_eq!(p("x^2+x+1").gcd(&p("x^3+x^2+1")).unwrap(), BinPoly::one());
        assert_eq!(p("x^4+x").gcd(&BinPoly::zero()).unwrap(), p("x^4+x"));
        assert_eq!(BinPoly::zero().gcd(&BinPoly::zero()), Err(PolyError::GcdOfZeros));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(p("x^7+x^6+x^5+x^3+1").exponents(), vec![0, 3, 5, 6, 7]);
        assert!(p("0").is_zero());
        assert_eq!(p("x^2+x").to_string(), "x^2+x");
        assert_eq!(p(" 1 + x^3 + x ").to_string(), "x^3+x+1");
        assert_eq!(p("x^3+x+1").to_hex(), "0xB");
        assert_eq!(BinPoly::parse("0xB").unwrap(), p("x^3+x+1"));
        assert_eq!(BinPoly::zero().to_string(), "0");
        assert_eq!(BinPoly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn parse_errors_carry_position() {
        match BinPoly::parse("x^2 1") {
            Err(PolyError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(BinPoly::parse("x^").is_err());
        assert!(BinPoly::parse("").is_err());
        assert!(BinPoly::parse("x+").is_err());
        assert!(BinPoly::parse("y").is_err());
    }

    #[test]
    fn wide_shift_and_division() {
        let a = BinPoly::monomial(130).add(BinPoly::one());
        let b = BinPoly::monomial(65).add(BinPoly::x());
        let prod = a.mul(&b);
        assert_eq!(prod.deg(), Some(195));
        let (q, r) = prod.divmod(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn derivative_sqrt_reverse() {
        assert_eq!(p("x^3+x^2+x").derivative(), p("x^2+1"));
        assert_eq!(p("x^4+1").sqrt(), Some(p("x^2+1")));
        assert_eq!(p("x^3").sqrt(), None);
        assert_eq!(p("x^2+1").reversed(4), p("x^3+x"));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = BinPoly> {
        prop::collection::vec(any::<u64>(), 1..=max_deg.div_ceil(64)).prop_map(move |mut w| {
            let bits = max_deg + 1;
            let full = w.len() == bits.div_ceil(64);
            if let Some(last) = w.last_mut() {
                let rem = bits % 64;
                if rem != 0 && full {
                    *last &= (1u64 << rem) - 1;
                }
            }
            BinPoly::from_words(w)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { max_global_rejects: 100_000, ..ProptestConfig::with_cases(10_000) })]

        #[test]
        fn division_identity(a in arb_poly(130), b in arb_poly(70)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(64), b in arb_poly(64)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
        }

        #[test]
        fn ring_axioms(a in arb_poly(90), b in arb_poly(90), c in arb_poly(90)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &a).is_zero());
            prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn text_and_hex_round_trip(a in arb_poly(200)) {
            prop_assert_eq!(BinPoly::parse(&a.to_string()).unwrap(), a.clone());
            prop_assert_eq!(BinPoly::from_hex(&a.to_hex()).unwrap(), a);
        }
    }
}
