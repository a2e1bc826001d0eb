//! Factorization over GF(2) and enumeration of monic divisors.
//!
//! Square-free parts are split with Berlekamp's algorithm: over GF(2) the Berlekamp subalgebra
//! `{v : v^2 = v mod f}` is the kernel of `Q - I`, and gcds against its basis vectors separate
//! every pair of irreducible factors. Everything is deterministic, so divisor streams (and the
//! searches built on them) are reproducible.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bits::BitVec;
use crate::gf2poly::BinPoly;
use crate::linalg::kernel_of_images;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot decompose the zero polynomial")]
    Zero,
    #[error("cannot factor a constant polynomial")]
    Constant,
}

/// Complete factorization into irreducibles, sorted by degree and then by coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BinPoly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BinPoly, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> BinPoly {
        self.factors
            .iter()
            .fold(BinPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.deg().unwrap_or(0) * *m as usize)
            .sum()
    }

    /// Number of monic divisors, `prod (m_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|(_, m)| u64::from(*m) + 1).product()
    }

    /// Monic divisors of degree `<= max_degree`, each once, in nondecreasing degree order.
    pub fn divisors(&self, max_degree: usize) -> Divisors<'_> {
        Divisors {
            factors: &self.factors,
            limit: max_degree.min(self.degree()),
            next_degree: 0,
            buffer: VecDeque::new(),
        }
    }
}

/// Square-free decomposition: pairwise-coprime square-free parts `s_i` with `p = prod s_i^{m_i}`.
pub fn squarefree_decompose(p: &BinPoly) -> Result<Vec<(BinPoly, u32)>, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    let mut out = Vec::new();
    sff(p, 1, &mut out);
    // merge equal multiplicities so the parts stay pairwise coprime and unique per multiplicity
    out.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(BinPoly, u32)> = Vec::new();
    for (f, m) in out {
        match merged.last_mut() {
            Some((g, mm)) if *mm == m => *g = g.mul(&f),
            _ => merged.push((f, m)),
        }
    }
    Ok(merged)
}

fn sff(f: &BinPoly, scale: u32, out: &mut Vec<(BinPoly, u32)>) {
    if f.deg().unwrap_or(0) == 0 {
        return;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df).expect("f nonzero");
    let mut w = BinPoly::exact_div(f, &c).expect("gcd divides f");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w nonzero");
        let fac = BinPoly::exact_div(&w, &y).expect("gcd divides w");
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        c = BinPoly::exact_div(&c, &y).expect("gcd divides c");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let root = c
            .sqrt()
            .expect("remaining cofactor is a perfect square in characteristic 2");
        sff(&root, scale * 2, out);
    }
}

/// Berlekamp splitting of a square-free polynomial of degree >= 1 into irreducibles.
fn berlekamp(f: &BinPoly) -> Vec<BinPoly> {
    let d = f.deg().expect("nonzero");
    if d <= 1 {
        return vec![f.clone()];
    }
    // rows of Q - I: x^{2i} mod f + x^i
    let mut images = Vec::with_capacity(d);
    let x2 = BinPoly::monomial(2).rem(f).expect("f nonzero");
    let mut power = BinPoly::one();
    for i in 0..d {
        let mut row = power.clone();
        row.flip_coeff(i);
        images.push(row.to_bitvec(d));
        power = power.mul_mod(&x2, f).expect("f nonzero");
    }
    let kernel: Vec<BitVec> = kernel_of_images(&images);
    let r = kernel.len();
    let mut parts = vec![f.clone()];
    for v in kernel {
        if parts.len() == r {
            break;
        }
        let v = BinPoly::from_bitvec(&v);
        if v.deg().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(parts.len() + 1);
        for g in parts {
            if g.deg() == Some(1) {
                next.push(g);
                continue;
            }
            let h = g.gcd(&v).expect("g nonzero");
            if h.deg().unwrap_or(0) > 0 && h.deg() < g.deg() {
                let other = BinPoly::exact_div(&g, &h).expect("gcd divides g");
                next.push(h);
                next.push(other);
            } else {
                next.push(g);
            }
        }
        parts = next;
    }
    debug_assert_eq!(parts.len(), r);
    parts
}

/// Complete irreducible factorization.
pub fn factorize(p: &BinPoly) -> Result<Factorization, FactorError> {
    match p.deg() {
        None => return Err(FactorError::Zero),
        Some(0) => return Err(FactorError::Constant),
        Some(_) => {}
    }
    let mut factors = Vec::new();
    for (part, m) in squarefree_decompose(p)? {
        for irr in berlekamp(&part) {
            factors.push((irr, m));
        }
    }
    factors.sort();
    Ok(Factorization { factors })
}

/// Irreducibility test via square-freeness and a one-dimensional Berlekamp subalgebra.
pub fn is_irreducible(p: &BinPoly) -> bool {
    match p.deg() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            if !p.coeff(0) {
                return false;
            }
            let g = p.gcd(&p.derivative()).expect("p nonzero");
            g.is_one() && berlekamp(p).len() == 1
        }
    }
}

/// Lazy stream of monic divisors, one degree layer at a time.
pub struct Divisors<'a> {
    factors: &'a [(BinPoly, u32)],
    limit: usize,
    next_degree: usize,
    buffer: VecDeque<BinPoly>,
}

impl Divisors<'_> {
    fn fill_layer(&mut self, degree: usize) {
        let mut layer = Vec::new();
        layer_dfs(self.factors, 0, degree, BinPoly::one(), &mut layer);
        layer.sort();
        self.buffer.extend(layer);
    }
}

fn layer_dfs(factors: &[(BinPoly, u32)], idx: usize, remaining: usize, acc: BinPoly, out: &mut Vec<BinPoly>) {
    if remaining == 0 {
        out.push(acc);
        return;
    }
    if idx == factors.len() {
        return;
    }
    let (f, m) = &factors[idx];
    let df = f.deg().expect("irreducible factors are nonconstant");
    let mut current = acc;
    let mut used = 0usize;
    for e in 0..=*m as usize {
        if e > 0 {
            current = current.mul(f);
            used += df;
        }
        if used > remaining {
            break;
        }
        layer_dfs(factors, idx + 1, remaining - used, current.clone(), out);
    }
}

impl Iterator for Divisors<'_> {
    type Item = BinPoly;

    fn next(&mut self) -> Option<BinPoly> {
        while self.buffer.is_empty() && self.next_degree <= self.limit {
            let d = self.next_degree;
            self.next_degree += 1;
            self.fill_layer(d);
        }
        self.buffer.pop_front()
    }
}
