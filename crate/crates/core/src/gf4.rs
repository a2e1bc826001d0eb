//! GF(4) = {0, 1, w, w^2} with w^2 = w + 1, and its alpha-split vector/polynomial forms.
//!
//! An element `a*w + b` is stored as two bits `(a, b)`; a vector or polynomial over GF(4) is
//! stored as the pair (alpha part, one part) of GF(2) bit strings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitVec;
use crate::gf2poly::BinPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F4Error {
    #[error("unknown GF(4) symbol {0:?} (expected 0, 1, w or w2)")]
    BadSymbol(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// A GF(4) element encoded as `(alpha_bit << 1) | one_bit`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0b00);
    pub const ONE: F4 = F4(0b01);
    /// The generator `w` (alpha).
    pub const ALPHA: F4 = F4(0b10);
    /// `w^2 = w + 1`.
    pub const ALPHA2: F4 = F4(0b11);

    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::ALPHA, F4::ALPHA2];

    pub fn from_bits(alpha: bool, one: bool) -> F4 {
        F4((u8::from(alpha) << 1) | u8::from(one))
    }

    #[inline]
    pub fn alpha_bit(self) -> bool {
        self.0 & 0b10 != 0
    }

    #[inline]
    pub fn one_bit(self) -> bool {
        self.0 & 0b01 != 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: F4) -> F4 {
        F4(self.0 ^ other.0)
    }

    /// (a1 w + b1)(a2 w + b2) = a1a2 w^2 + (a1b2 + b1a2) w + b1b2, then w^2 = w + 1.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: F4) -> F4 {
        let (a1, b1) = (self.0 >> 1, self.0 & 1);
        let (a2, b2) = (other.0 >> 1, other.0 & 1);
        let aa = a1 & a2;
        let alpha = aa ^ (a1 & b2) ^ (b1 & a2);
        let one = aa ^ (b1 & b2);
        F4((alpha << 1) | one)
    }

    /// Frobenius `x -> x^2`: fixes 0 and 1, swaps w and w^2.
    #[inline]
    pub fn conj(self) -> F4 {
        // (a w + b)^2 = a w^2 + b = a w + (a + b)
        F4(self.0 ^ (self.0 >> 1))
    }

    /// Absolute trace `x + x^2`, which is the alpha bit.
    #[inline]
    pub fn tr2(self) -> bool {
        self.alpha_bit()
    }

    pub fn symbol(self) -> &'static str {
        match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w2",
        }
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for F4 {
    type Err = F4Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(F4::ZERO),
            "1" => Ok(F4::ONE),
            "w" => Ok(F4::ALPHA),
            "w2" => Ok(F4::ALPHA2),
            other => Err(F4Error::BadSymbol(other.to_string())),
        }
    }
}

/// A polynomial `alpha * alpha_part + one_part` over GF(4).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct F4Poly {
    pub alpha: BinPoly,
    pub one: BinPoly,
}

impl F4Poly {
    pub fn new(alpha: BinPoly, one: BinPoly) -> Self {
        Self { alpha, one }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn binary(p: BinPoly) -> Self {
        Self {
            alpha: BinPoly::zero(),
            one: p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.one.is_zero()
    }

    pub fn is_binary(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn add(&self, other: &F4Poly) -> F4Poly {
        F4Poly {
            alpha: &self.alpha + &other.alpha,
            one: &self.one + &other.one,
        }
    }

    /// Scalar multiple `s * self`.
    pub fn scale(&self, s: F4) -> F4Poly {
        match s {
            F4::ZERO => F4Poly::zero(),
            F4::ONE => self.clone(),
            // w (w p1 + p2) = w^2 p1 + w p2 = w (p1 + p2) + p1
            F4::ALPHA => F4Poly {
                alpha: &self.alpha + &self.one,
                one: self.alpha.clone(),
            },
            // w^2 (w p1 + p2) = p1 + w^2 p2 = w p2 + (p1 + p2)
            _ => F4Poly {
                alpha: self.one.clone(),
                one: &self.alpha + &self.one,
            },
        }
    }

    /// `s * self + other`.
    pub fn scale_and_add(&self, s: F4, other: &F4Poly) -> F4Poly {
        self.scale(s).add(other)
    }

    /// Multiplication by a binary polynomial (the F2[x]-module action).
    pub fn mul_binary(&self, q: &BinPoly) -> F4Poly {
        F4Poly {
            alpha: self.alpha.mul(q),
            one: self.one.mul(q),
        }
    }

    /// Full product in GF(4)[x].
    pub fn mul(&self, other: &F4Poly) -> F4Poly {
        // (w p1 + p2)(w q1 + q2) = w^2 p1q1 + w(p1q2 + p2q1) + p2q2
        //                        = w(p1q1 + p1q2 + p2q1) + (p1q1 + p2q2)
        let p1q1 = self.alpha.mul(&other.alpha);
        let p1q2 = self.alpha.mul(&other.one);
        let p2q1 = self.one.mul(&other.alpha);
        let p2q2 = self.one.mul(&other.one);
        F4Poly {
            alpha: &(&p1q1 + &p1q2) + &p2q1,
            one: &p1q1 + &p2q2,
        }
    }

    pub fn coeff(&self, i: usize) -> F4 {
        F4::from_bits(self.alpha.coeff(i), self.one.coeff(i))
    }
}

impl fmt::Display for F4Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.alpha.is_zero(), self.one.is_zero()) {
            (true, _) => write!(f, "{}", self.one),
            (false, true) => write!(f, "w({})", self.alpha),
            (false, false) => write!(f, "w({})+{}", self.alpha, self.one),
        }
    }
}

/// A vector in GF(4)^n in alpha-split form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F4Vector {
    pub alpha: BitVec,
    pub one: BitVec,
}

impl F4Vector {
    pub fn zeros(n: usize) -> Self {
        Self {
            alpha: BitVec::zeros(n),
            one: BitVec::zeros(n),
        }
    }

    pub fn from_parts(alpha: BitVec, one: BitVec) -> Result<Self, F4Error> {
        if alpha.len() != one.len() {
            return Err(F4Error::LengthMismatch {
                left: alpha.len(),
                right: one.len(),
            });
        }
        Ok(Self { alpha, one })
    }

    pub fn from_symbols(symbols: &[F4]) -> Self {
        let mut v = Self::zeros(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            v.set(i, *s);
        }
        v
    }

    /// A binary vector embedded as a GF(4) vector.
    pub fn from_binary(bits: &BitVec) -> Self {
        Self {
            alpha: BitVec::zeros(bits.len()),
            one: bits.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn get(&self, i: usize) -> F4 {
        F4::from_bits(self.alpha.get(i), self.one.get(i))
    }

    pub fn set(&mut self, i: usize, s: F4) {
        self.alpha.set(i, s.alpha_bit());
        self.one.set(i, s.one_bit());
    }

    pub fn symbols(&self) -> Vec<F4> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.one.is_zero()
    }

    pub fn add(&self, other: &F4Vector) -> F4Vector {
        F4Vector {
            alpha: self.alpha.xor(&other.alpha),
            one: self.one.xor(&other.one),
        }
    }

    pub fn add_assign(&mut self, other: &F4Vector) {
        self.alpha.xor_assign(&other.alpha);
        self.one.xor_assign(&other.one);
    }

    pub fn scale(&self, s: F4) -> F4Vector {
        match s {
            F4::ZERO => F4Vector::zeros(self.len()),
            F4::ONE => self.clone(),
            F4::ALPHA => F4Vector {
                alpha: self.alpha.xor(&self.one),
                one: self.alpha.clone(),
            },
            _ => F4Vector {
                alpha: self.one.clone(),
                one: self.alpha.xor(&self.one),
            },
        }
    }

    /// Number of nonzero GF(4) coordinates.
    pub fn symbol_weight(&self) -> usize {
        self.alpha
            .words()
            .iter()
            .zip(self.one.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Positions with a nonzero symbol.
    pub fn support(&self) -> Vec<usize> {
        self.alpha.or(&self.one).iter_ones().collect()
    }

    /// Coordinate reversal.
    pub fn reversed(&self) -> F4Vector {
        F4Vector {
            alpha: self.alpha.reversed(),
            one: self.one.reversed(),
        }
    }

    /// Packed layout used by the linear-algebra engine: bits `[0, n)` hold the one part and
    /// bits `[n, 2n)` hold the alpha part, so the highest set bit is in the alpha block whenever
    /// the vector is non-binary.
    pub fn to_packed(&self) -> BitVec {
        self.one.concat(&self.alpha)
    }

    pub fn from_packed(n: usize, packed: &BitVec) -> F4Vector {
        assert_eq!(packed.len(), 2 * n);
        F4Vector {
            one: packed.slice(0, n),
            alpha: packed.slice(n, n),
        }
    }

    /// Space-separated symbol text, e.g. `1 w 0 w2`.
    pub fn to_symbol_string(&self) -> String {
        self.symbols().iter().map(|s| s.symbol()).collect::<Vec<_>>().join(" ")
    }

    /// Parses whitespace- or comma-separated symbols `0`, `1`, `w`, `w2`.
    pub fn parse_symbols(text: &str) -> Result<F4Vector, F4Error> {
        let symbols = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(F4::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(F4Vector::from_symbols(&symbols))
    }
}

impl fmt::Debug for F4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F4Vector[{}]", self.to_symbol_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W: F4 = F4::ALPHA;
    const W2: F4 = F4::ALPHA2;

    #[test]
    fn multiplication_table() {
        assert_eq!(W.mul(W), W2);
        // w * w^2 = w^3 = w(w + 1) = w^2 + w = 1
        assert_eq!(W.mul(W2), F4::ONE);
        for x in F4::ALL {
            assert_eq!(x.mul(F4::ZERO), F4::ZERO);
            assert_eq!(x.mul(F4::ONE), x);
        }
        assert_eq!(W.mul(W), W.add(F4::ONE));
    }

    #[test]
    fn nonzero_orders_divide_three() {
        for x in F4::ALL.into_iter().skip(1) {
            assert_eq!(x.mul(x).mul(x), F4::ONE);
        }
    }

    #[test]
    fn conjugation_and_trace() {
        assert_eq!(W.conj(), W2);
        assert_eq!(F4::ONE.conj(), F4::ONE);
        assert_eq!(W.conj().conj(), W);
        assert!(!F4::ZERO.tr2());
        assert!(!F4::ONE.tr2());
        assert!(W.tr2());
        assert!(W2.tr2());
        for x in F4::ALL {
            assert_eq!(x.conj(), x.mul(x));
            assert_eq!(x.tr2(), x.conj().tr2());
            // x + x^2 lands in {0, 1}
            let t = x.add(x.mul(x));
            assert!(t == F4::ZERO || t == F4::ONE);
            assert_eq!(t == F4::ONE, x.tr2());
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for x in F4::ALL {
            for y in F4::ALL {
                assert_eq!(x.mul(y), y.mul(x));
                assert_eq!(x.mul(y).conj(), x.conj().mul(y.conj()));
                assert_eq!(x.add(y).conj(), x.conj().add(y.conj()));
                for z in F4::ALL {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                    assert_eq!(x.mul(y.add(z)), x.mul(y).add(x.mul(z)));
                }
            }
        }
    }

    #[test]
    fn scale_and_add_examples() {
        let p = F4Poly::new("x+1".parse().unwrap(), "x^2".parse().unwrap());
        let q = F4Poly::new("x".parse().unwrap(), "1".parse().unwrap());
        assert_eq!(p.scale_and_add(F4::ONE, &q), p.add(&q));
        assert_eq!(p.scale_and_add(F4::ZERO, &q), q);
        // w * (w*1 + 0) = w^2 = w*1 + 1
        let w1 = F4Poly::new(BinPoly::one(), BinPoly::zero());
        assert_eq!(w1.scale(W), F4Poly::new(BinPoly::one(), BinPoly::one()));
    }

    #[test]
    fn symbols_round_trip() {
        let v = F4Vector::parse_symbols("1 w 0 w2").unwrap();
        assert_eq!(v.symbols(), vec![F4::ONE, W, F4::ZERO, W2]);
        assert_eq!(v.to_symbol_string(), "1 w 0 w2");
        assert_eq!(v.symbol_weight(), 3);
        assert!(F4Vector::parse_symbols("1 q").is_err());
        assert_eq!(F4Vector::from_packed(4, &v.to_packed()), v);
    }

    fn arb_f4poly() -> impl Strategy<Value = F4Poly> {
        (any::<u64>(), any::<u64>()).prop_map(|(a, b)| F4Poly::new(BinPoly::from_u64(a), BinPoly::from_u64(b)))
    }

    proptest! {
        #[test]
        fn alpha_cubed_is_identity(p in arb_f4poly()) {
            prop_assert_eq!(p.scale(W).scale(W).scale(W), p);
        }

        #[test]
        fn scale_matches_poly_product(p in arb_f4poly(), s in 0u8..4) {
            let s = F4::ALL[s as usize];
            let c = F4Poly::new(BinPoly::from_u64(u64::from(s.alpha_bit())),
                                BinPoly::from_u64(u64::from(s.one_bit())));
            prop_assert_eq!(p.scale(s), c.mul(&p));
        }

        #[test]
        fn poly_product_matches_coefficients(p in arb_f4poly(), q in arb_f4poly()) {
            let prod = p.mul(&q);
            for k in [0usize, 5, 63, 64, 100, 126] {
                let mut acc = F4::ZERO;
                for i in 0..=k {
                    acc = acc.add(p.coeff(i).mul(q.coeff(k - i)));
                }
                prop_assert_eq!(prod.coeff(k), acc);
            }
        }
    }
}
