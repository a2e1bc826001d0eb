//! The quotient ring `R_n = GF(4)[x] / (x^n + a(x))` with binary `a`, its shift operators and
//! companion matrices.
//!
//! Right chirality reads a vector `(c_0, ..., c_{n-1})` as `c_0 + c_1 x + ... + c_{n-1} x^{n-1}`.
//! Left chirality reads it reversed, `c_{n-1} + ... + c_0 x^{n-1}`, and uses the same reduction
//! engine: multiplication by `x` modulo the ring's modulus then realizes the left shift induced
//! by the coefficient reversal of `a`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::gf2poly::BinPoly;
use crate::gf4::{F4Poly, F4Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("code length must be at least 1")]
    ZeroLength,
    #[error("induction polynomial has degree {degree}, must be below n = {n}")]
    InductionDegree { degree: usize, n: usize },
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("a_0 = 0: the companion matrix is singular, no left induction vector exists")]
    SingularCompanion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    #[default]
    Right,
    Left,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Right => "right",
            Chirality::Left => "left",
        })
    }
}

impl std::str::FromStr for Chirality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "right" | "r" => Ok(Chirality::Right),
            "left" | "l" => Ok(Chirality::Left),
            other => Err(format!("unknown chirality {other:?} (expected right or left)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftKind {
    Right,
    Left,
    Sequential,
}

impl From<Chirality> for ShiftKind {
    fn from(c: Chirality) -> ShiftKind {
        match c {
            Chirality::Right => ShiftKind::Right,
            Chirality::Left => ShiftKind::Left,
        }
    }
}

/// `R_n` for a binary `a` with `deg a < n`. The modulus is `x^n + a` (char 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    n: usize,
    a: BinPoly,
    modulus: BinPoly,
}

impl RingContext {
    pub fn new(n: usize, a: BinPoly) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::ZeroLength);
        }
        if let Some(d) = a.deg() {
            if d >= n {
                return Err(RingError::InductionDegree { degree: d, n });
            }
        }
        let modulus = &BinPoly::monomial(n) + &a;
        Ok(Self { n, a, modulus })
    }

    /// Builds the ring from the multinomial `x^n + a`; `n` is its degree.
    pub fn from_multinomial(m: &BinPoly) -> Result<Self, RingError> {
        let n = m.deg().filter(|&d| d > 0).ok_or(RingError::ZeroLength)?;
        let a = m + &BinPoly::monomial(n);
        Self::new(n, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a(x)` as it appears in the modulus.
    pub fn a(&self) -> &BinPoly {
        &self.a
    }

    pub fn modulus(&self) -> &BinPoly {
        &self.modulus
    }

    /// The induction vector seen by codes of the given chirality.
    pub fn induction_vector(&self, chirality: Chirality) -> BitVec {
        let v = self.a.to_bitvec(self.n);
        match chirality {
            Chirality::Right => v,
            Chirality::Left => v.reversed(),
        }
    }

    pub fn reduce_binary(&self, p: &BinPoly) -> BinPoly {
        p.rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn reduce(&self, p: &F4Poly) -> F4Poly {
        F4Poly::new(self.reduce_binary(&p.alpha), self.reduce_binary(&p.one))
    }

    /// The F2[x]-module action `q * p` in `R_n`.
    pub fn ring_mul(&self, p: &F4Poly, q: &BinPoly) -> F4Poly {
        F4Poly::new(
            p.alpha.mul_mod(q, &self.modulus).expect("modulus is nonzero"),
            p.one.mul_mod(q, &self.modulus).expect("modulus is nonzero"),
        )
    }

    /// The GF(4)[x] product in `R_n`.
    pub fn ring_mul_f4(&self, p: &F4Poly, q: &F4Poly) -> F4Poly {
        self.reduce(&p.mul(q))
    }

    pub fn vectorize(&self, p: &F4Poly, chirality: Chirality) -> F4Vector {
        let r = self.reduce(p);
        let v = F4Vector {
            alpha: r.alpha.to_bitvec(self.n),
            one: r.one.to_bitvec(self.n),
        };
        match chirality {
            Chirality::Right => v,
            Chirality::Left => v.reversed(),
        }
    }

    pub fn polynomialize(&self, v: &F4Vector, chirality: Chirality) -> Result<F4Poly, RingError> {
        self.check_len(v.len())?;
        let v = match chirality {
            Chirality::Right => v.clone(),
            Chirality::Left => v.reversed(),
        };
        Ok(F4Poly::new(
            BinPoly::from_bitvec(&v.alpha),
            BinPoly::from_bitvec(&v.one),
        ))
    }

    /// Packed-layout (one part, then alpha part) vector form, see [`F4Vector::to_packed`].
    pub fn pack(&self, p: &F4Poly, chirality: Chirality) -> BitVec {
        self.vectorize(p, chirality).to_packed()
    }

    pub fn unpack(&self, packed: &BitVec, chirality: Chirality) -> F4Poly {
        let v = F4Vector::from_packed(self.n, packed);
        self.polynomialize(&v, chirality)
            .expect("length checked by from_packed")
    }

    fn check_len(&self, len: usize) -> Result<(), RingError> {
        if len != self.n {
            return Err(RingError::LengthMismatch {
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }

    pub fn companion(&self, kind: Chirality) -> Result<CompanionMatrix, RingError> {
        let a = self.a.to_bitvec(self.n);
        match kind {
            Chirality::Right => Ok(CompanionMatrix::right(&a)),
            Chirality::Left => {
                let d = right_to_left_vector(&self.a, self.n)?;
                Ok(CompanionMatrix::left(&d.to_bitvec(self.n)))
            }
        }
    }

    /// Whether `a` is the vector that makes right and left polycyclicity coincide.
    pub fn is_right_left(&self) -> bool {
        self.a == right_left_vector(self.n)
    }
}

fn shift_bits(kind: ShiftKind, c: &BitVec, a: &BitVec) -> BitVec {
    let n = c.len();
    match kind {
        ShiftKind::Right => {
            let mut out = BitVec::from_positions(n, c.iter_ones().filter(|&i| i + 1 < n).map(|i| i + 1));
            if c.get(n - 1) {
                out.xor_assign(a);
            }
            out
        }
        ShiftKind::Left => {
            let mut out = BitVec::from_positions(n, c.iter_ones().filter(|&i| i > 0).map(|i| i - 1));
            if c.get(0) {
                out.xor_assign(a);
            }
            out
        }
        ShiftKind::Sequential => {
            let mut out = BitVec::from_positions(n, c.iter_ones().filter(|&i| i > 0).map(|i| i - 1));
            if c.dot(a) {
                out.set(n - 1, true);
            }
            out
        }
    }
}

/// One step of the induced shift. `a` is binary, so the step acts on both split parts alike.
pub fn shift_step(kind: ShiftKind, c: &F4Vector, a: &BitVec) -> Result<F4Vector, RingError> {
    if c.len() != a.len() {
        return Err(RingError::LengthMismatch {
            expected: a.len(),
            found: c.len(),
        });
    }
    if c.is_empty() {
        return Err(RingError::ZeroLength);
    }
    Ok(F4Vector {
        alpha: shift_bits(kind, &c.alpha, a),
        one: shift_bits(kind, &c.one, a),
    })
}

/// [`shift_step`] on the packed layout.
pub fn shift_packed(kind: ShiftKind, packed: &BitVec, a: &BitVec) -> BitVec {
    let n = a.len();
    let v = F4Vector::from_packed(n, packed);
    shift_step(kind, &v, a).expect("lengths agree").to_packed()
}

/// The left induction vector `d` equivalent to right induction by `a`:
/// `d_j = a_{j+1}` for `j < n - 1` and `d_{n-1} = 1`. Requires `a_0 = 1`.
pub fn right_to_left_vector(a: &BinPoly, n: usize) -> Result<BinPoly, RingError> {
    if n == 0 {
        return Err(RingError::ZeroLength);
    }
    if !a.coeff(0) {
        return Err(RingError::SingularCompanion);
    }
    let mut d = BinPoly::from_exponents(a.exponents().into_iter().filter(|&e| e > 0).map(|e| e - 1));
    d.set_coeff(n - 1, true);
    Ok(d)
}

/// `(x^n + 1) / (x + 1) = 1 + x + ... + x^{n-1}`.
///
/// Over GF(2) the accompanying constraint `a_0^{n+1} = (-1)^{n+1}` reads `1 = 1` once `a_0 = 1`,
/// so nothing else needs checking.
pub fn right_left_vector(n: usize) -> BinPoly {
    BinPoly::from_exponents(0..n)
}

/// Companion matrix as a list of rows; a row vector `c` maps to `c * M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix {
    pub kind: Chirality,
    pub rows: Vec<BitVec>,
}

impl CompanionMatrix {
    /// `D`: rows `e_1, ..., e_{n-1}` followed by `a`.
    pub fn right(a: &BitVec) -> Self {
        let n = a.len();
        let mut rows: Vec<BitVec> = (1..n).map(|i| BitVec::from_positions(n, [i])).collect();
        rows.push(a.clone());
        Self {
            kind: Chirality::Right,
            rows,
        }
    }

    /// `E`: row `d` followed by `e_0, ..., e_{n-2}`.
    pub fn left(d: &BitVec) -> Self {
        let n = d.len();
        let mut rows = vec![d.clone()];
        rows.extend((0..n - 1).map(|i| BitVec::from_positions(n, [i])));
        Self {
            kind: Chirality::Left,
            rows,
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Row vector times matrix.
    pub fn apply(&self, c: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.size());
        for i in c.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn mul(&self, other: &CompanionMatrix) -> Vec<BitVec> {
        self.rows.iter().map(|r| other.apply(r)).collect()
    }

    pub fn is_inverse_of(&self, other: &CompanionMatrix) -> bool {
        let n = self.size();
        self.mul(other)
            .iter()
            .enumerate()
            .all(|(i, r)| *r == BitVec::from_positions(n, [i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    fn random_vec(rng: &mut impl Rng, n: usize) -> F4Vector {
        let a: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let o: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        F4Vector::from_parts(BitVec::from_bools(&a), BitVec::from_bools(&o)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let ctx = RingContext::from_multinomial(&p("x^7+x^6+x^5+x^3+1")).unwrap();
        assert_eq!(ctx.n(), 7);
        assert_eq!(ctx.a(), &p("x^6+x^5+x^3+1"));
        assert_eq!(ctx.reduce_binary(&p("x^7")), p("x^6+x^5+x^3+1"));
        assert_eq!(ctx.reduce_binary(&p("x^8")), p("x^5+x^4+x^3+x+1"));
        assert_eq!(ctx.reduce_binary(&p("x^3+x")), p("x^3+x"));
    }

    #[test]
    fn binary_product_in_alpha_split() {
        // (m / g1) * (w g1 + g2) = (m / g1) g2 in R_n
        let m = p("x^7+x^6+x^5+x^3+1");
        let ctx = RingContext::from_multinomial(&m).unwrap();
        let g1 = p("x^2+x+1");
        let h = BinPoly::exact_div(&m, &g1).unwrap();
        let gen = F4Poly::new(g1, p("x"));
        let prod = ctx.ring_mul(&gen, &h);
        assert!(prod.is_binary());
        assert_eq!(prod.one, ctx.reduce_binary(&h.mul(&p("x"))));
    }

    #[test]
    fn shift_examples() {
        let a = BitVec::from_positions(5, [0, 2, 3]);
        let unit_last = F4Vector::from_binary(&BitVec::from_positions(5, [4]));
        assert_eq!(shift_step(ShiftKind::Right, &unit_last, &a).unwrap().one, a);

        let cyc = BitVec::from_positions(5, [0]);
        let c = F4Vector::parse_symbols("1 w 0 w2 1").unwrap();
        let shifted = shift_step(ShiftKind::Right, &c, &cyc).unwrap();
        assert_eq!(shifted.to_symbol_string(), "1 1 w 0 w2");

        let e0 = F4Vector::from_binary(&BitVec::from_positions(5, [0]));
        let seq = shift_step(ShiftKind::Sequential, &e0, &a).unwrap();
        assert_eq!(seq.one, BitVec::from_positions(5, [4]));

        let bad = F4Vector::zeros(4);
        assert!(matches!(
            shift_step(ShiftKind::Left, &bad, &a),
            Err(RingError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn mul_by_x_is_the_right_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6usize {
            for abits in 0..(1u64 << n) {
                let ctx = RingContext::new(n, BinPoly::from_u64(abits)).unwrap();
                let av = ctx.induction_vector(Chirality::Right);
                for _ in 0..8 {
                    let c = random_vec(&mut rng, n);
                    let poly = ctx.polynomialize(&c, Chirality::Right).unwrap();
                    let lhs = ctx.vectorize(&ctx.ring_mul(&poly, &BinPoly::x()), Chirality::Right);
                    assert_eq!(lhs, shift_step(ShiftKind::Right, &c, &av).unwrap());
                }
            }
        }
        for _ in 0..200 {
            let n = rng.gen_range(7..80);
            let ctx = RingContext::new(n, BinPoly::random(&mut rng, n)).unwrap();
            let av = ctx.induction_vector(Chirality::Right);
            let c = random_vec(&mut rng, n);
            let poly = ctx.polynomialize(&c, Chirality::Right).unwrap();
            let lhs = ctx.vectorize(&ctx.ring_mul(&poly, &BinPoly::x()), Chirality::Right);
            assert_eq!(lhs, shift_step(ShiftKind::Right, &c, &av).unwrap());
        }
    }

    #[test]
    fn mul_by_x_is_the_left_shift_in_reversed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let n = rng.gen_range(1..70);
            let ctx = RingContext::new(n, BinPoly::random(&mut rng, n)).unwrap();
            let av = ctx.induction_vector(Chirality::Left);
            let c = random_vec(&mut rng, n);
            let poly = ctx.polynomialize(&c, Chirality::Left).unwrap();
            let lhs = ctx.vectorize(&ctx.ring_mul(&poly, &BinPoly::x()), Chirality::Left);
            assert_eq!(lhs, shift_step(ShiftKind::Left, &c, &av).unwrap());
        }
    }

    #[test]
    fn right_to_left_examples() {
        assert_eq!(right_to_left_vector(&p("1"), 4).unwrap(), p("x^3"));
        // a = 1 + x, n = 3 -> d = (1, 0, 1)
        let d = right_to_left_vector(&p("x+1"), 3).unwrap();
        assert_eq!(d.to_bitvec(3), BitVec::from_positions(3, [0, 2]));
        assert_eq!(right_to_left_vector(&p("x^2+x"), 3), Err(RingError::SingularCompanion));

        let ctx = RingContext::new(3, p("x+1")).unwrap();
        let dm = ctx.companion(Chirality::Right).unwrap();
        let em = ctx.companion(Chirality::Left).unwrap();
        assert!(dm.is_inverse_of(&em));
        assert!(em.is_inverse_of(&dm));
    }

    #[test]
    fn companion_d_for_n3() {
        let ctx = RingContext::new(3, p("x+1")).unwrap();
        let dm = ctx.companion(Chirality::Right).unwrap();
        let expected: Vec<BitVec> = vec![
            BitVec::from_positions(3, [1]),
            BitVec::from_positions(3, [2]),
            BitVec::from_positions(3, [0, 1]),
        ];
        assert_eq!(dm.rows, expected);
    }

    #[test]
    fn companion_matches_shift_and_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..40);
            let mut a = BinPoly::random(&mut rng, n);
            a.set_coeff(0, true);
            let ctx = RingContext::new(n, a.clone()).unwrap();
            let av = ctx.induction_vector(Chirality::Right);
            let d = right_to_left_vector(&a, n).unwrap().to_bitvec(n);
            let dm = ctx.companion(Chirality::Right).unwrap();
            let c = random_vec(&mut rng, n);
            assert_eq!(dm.apply(&c.one), shift_step(ShiftKind::Right, &c, &av).unwrap().one);
            let there = shift_step(ShiftKind::Right, &c, &av).unwrap();
            let back = shift_step(ShiftKind::Left, &there, &d).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn right_left_vector_examples() {
        assert_eq!(right_left_vector(3), p("x^2+x+1"));
        for n in 1..10 {
            assert!(RingContext::new(n, right_left_vector(n)).unwrap().is_right_left());
        }
        assert!(!RingContext::new(5, p("1")).unwrap().is_right_left());
    }
}
