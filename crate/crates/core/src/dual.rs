//! Hermitian trace dual, annihilator dual and 0-dual.
//!
//! Everything reduces to GF(2) kernels over `2n`-bit rows. In alpha-split coordinates the trace
//! inner product `Tr2(sum x_i conj(y_i))` is the symplectic form
//! `sum (x_alpha,i y_one,i + x_one,i y_alpha,i)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::code::{AdditiveCode, F4Space};
use crate::gf2poly::BinPoly;
use crate::gf4::{F4Poly, F4Vector};
use crate::linalg::kernel_of_images;
use crate::ring::{Chirality, RingContext, ShiftKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vectors have lengths {left} and {right}")]
pub struct LengthMismatch {
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    HermitianTrace,
    Annihilator,
    ZeroDual,
}

impl std::str::FromStr for DualKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hermitian" | "hermitian_trace" | "trace" => Ok(DualKind::HermitianTrace),
            "annihilator" | "ann" => Ok(DualKind::Annihilator),
            "zero" | "zero_dual" | "0" => Ok(DualKind::ZeroDual),
            other => Err(format!(
                "unknown dual kind {other:?} (expected hermitian, annihilator or zero)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCode {
    pub kind: DualKind,
    pub space: F4Space,
}

impl DualCode {
    pub fn dim2(&self) -> usize {
        self.space.dim2()
    }

    pub fn to_record(&self) -> DualRecord {
        DualRecord {
            kind: self.kind,
            n: self.space.n(),
            dim2: self.dim2(),
            basis: self.space.rows().iter().map(BitVec::to_hex).collect(),
        }
    }
}

/// Serialized dual: packed rows (one part in the low `n` bits, alpha part above) in hex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRecord {
    pub kind: DualKind,
    pub n: usize,
    pub dim2: usize,
    pub basis: Vec<String>,
}

/// `<x, y>_T = Tr2(sum x_i conj(y_i))`.
pub fn trace_inner_product(x: &F4Vector, y: &F4Vector) -> Result<bool, LengthMismatch> {
    if x.len() != y.len() {
        return Err(LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.alpha.dot(&y.one) ^ x.one.dot(&y.alpha))
}

/// Exchanges the one and alpha halves of a packed vector.
fn swap_halves(n: usize, packed: &BitVec) -> BitVec {
    packed.slice(n, n).concat(&packed.slice(0, n))
}

/// `C^perp` under the trace inner product; `dim2 = 2n - dim2(C)`.
pub fn hermitian_trace_dual(space: &F4Space) -> DualCode {
    let n = space.n();
    let swapped = F4Space::from_packed_rows(n, space.rows().iter().map(|r| swap_halves(n, r)));
    DualCode {
        kind: DualKind::HermitianTrace,
        space: F4Space::from_packed_rows(n, swapped.echelon().orthogonal_complement()),
    }
}

/// Unit elements `x^i` and `w x^i` of `R_n`, indexed like the packed Right layout.
fn unit_elements(n: usize) -> Vec<F4Poly> {
    let ones = (0..n).map(|i| F4Poly::binary(BinPoly::monomial(i)));
    let alphas = (0..n).map(|i| F4Poly::new(BinPoly::monomial(i), BinPoly::zero()));
    ones.chain(alphas).collect()
}

/// Solves for all `g` in `R_n` with `constraint(g * f_j) = 0` for every basis element `f_j`.
fn ring_kernel(
    ctx: &RingContext,
    chirality: Chirality,
    space: &F4Space,
    constraint: impl Fn(&F4Poly) -> BitVec,
) -> F4Space {
    let n = ctx.n();
    let fs: Vec<F4Poly> = space.rows().iter().map(|r| ctx.unpack(r, chirality)).collect();
    let images: Vec<BitVec> = unit_elements(n)
        .iter()
        .map(|g| {
            fs.iter()
                .map(|f| constraint(&ctx.ring_mul_f4(g, f)))
                .fold(BitVec::zeros(0), |acc, part| acc.concat(&part))
        })
        .collect();
    let kernel = kernel_of_images(&images);
    F4Space::from_packed_rows(
        n,
        kernel
            .iter()
            .map(|k| ctx.pack(&ctx.unpack(k, Chirality::Right), chirality)),
    )
}

/// `Ann(C) = {g : g f = 0 for all f in C}` for a space inside `R_n`.
pub fn annihilator_of(ctx: &RingContext, chirality: Chirality, space: &F4Space) -> DualCode {
    let space = ring_kernel(ctx, chirality, space, |p| ctx.pack(p, Chirality::Right));
    DualCode {
        kind: DualKind::Annihilator,
        space,
    }
}

/// `C^0 = {g : (g f)(0) = 0 for all f in C}` with the product taken in `R_n`; both split parts
/// of the constant term must vanish.
pub fn zero_dual_of(ctx: &RingContext, chirality: Chirality, space: &F4Space) -> DualCode {
    let space = ring_kernel(ctx, chirality, space, |p| {
        BitVec::from_bools(&[p.one.coeff(0), p.alpha.coeff(0)])
    });
    DualCode {
        kind: DualKind::ZeroDual,
        space,
    }
}

pub fn annihilator(code: &AdditiveCode) -> DualCode {
    annihilator_of(code.ctx(), code.chirality(), code.space())
}

pub fn zero_dual(code: &AdditiveCode) -> DualCode {
    zero_dual_of(code.ctx(), code.chirality(), code.space())
}

pub fn dual(code: &AdditiveCode, kind: DualKind) -> DualCode {
    match kind {
        DualKind::HermitianTrace => hermitian_trace_dual(code.space()),
        DualKind::Annihilator => annihilator(code),
        DualKind::ZeroDual => zero_dual(code),
    }
}

/// Closure under multiplication by `x` (the ring's shift) and by `w`.
pub fn is_ideal(ctx: &RingContext, chirality: Chirality, space: &F4Space) -> bool {
    space.is_invariant(ShiftKind::from(chirality), &ctx.induction_vector(chirality)) && space.is_alpha_closed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, sample_ring, sample_valid_triple, shift_closure};
    use crate::gf4::F4;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> F4Vector {
        F4Vector::parse_symbols(s).unwrap()
    }

    #[test]
    fn trace_product_examples() {
        assert!(!trace_inner_product(&sym("w"), &sym("w")).unwrap());
        assert!(trace_inner_product(&sym("1"), &sym("w")).unwrap());
        assert!(trace_inner_product(&sym("1 0"), &sym("w")).is_err());
    }

    #[test]
    fn trace_product_matches_definition() {
        for x in F4::ALL {
            for y in F4::ALL {
                let direct = x.mul(y.conj()).tr2();
                let vx = F4Vector::from_symbols(&[x]);
                let vy = F4Vector::from_symbols(&[y]);
                assert_eq!(trace_inner_product(&vx, &vy).unwrap(), direct, "{x} {y}");
                assert_eq!(trace_inner_product(&vy, &vx).unwrap(), direct);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..20);
            let xs: Vec<F4> = (0..n).map(|_| F4::ALL[rng.gen_range(0..4)]).collect();
            let ys: Vec<F4> = (0..n).map(|_| F4::ALL[rng.gen_range(0..4)]).collect();
            let direct = xs
                .iter()
                .zip(&ys)
                .fold(F4::ZERO, |acc, (x, y)| acc.add(x.mul(y.conj())))
                .tr2();
            let got = trace_inner_product(&F4Vector::from_symbols(&xs), &F4Vector::from_symbols(&ys)).unwrap();
            assert_eq!(got, direct);
        }
    }

    #[test]
    fn hermitian_examples() {
        assert_eq!(hermitian_trace_dual(&F4Space::full(4)).dim2(), 0);
        assert_eq!(hermitian_trace_dual(&F4Space::zero(4)).dim2(), 8);

        let ctx = RingContext::from_multinomial(&p("x^7+x^6+x^5+x^3+1")).unwrap();
        let c = build_code(
            &ctx,
            Some(&p("x^2+x+1")),
            &p("x"),
            Some(&p("x^3+x^2+1")),
            Chirality::Right,
        )
        .unwrap();
        let d = hermitian_trace_dual(c.space());
        assert_eq!(d.dim2(), 5);
        assert!(d.space.is_invariant(ShiftKind::Sequential, &c.induction_vector()));
        for u in c.space().basis_vectors() {
            for v in d.space.basis_vectors() {
                assert!(!trace_inner_product(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn biduality_and_sequential_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let n = rng.gen_range(1..=14);
            let ctx = sample_ring(&mut rng, n);
            let t = sample_valid_triple(&mut rng, &ctx);
            let c = AdditiveCode::from_triple(&ctx, &t, Chirality::Right).unwrap();
            let d = hermitian_trace_dual(c.space());
            assert_eq!(d.dim2() + c.dim2(), 2 * n);
            assert!(hermitian_trace_dual(&d.space).space.same_space(c.space()));
            assert!(d.space.is_invariant(ShiftKind::Sequential, &c.induction_vector()));
        }
    }

    #[test]
    fn sequential_codes_dualize_to_right_polycyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let a = BinPoly::random(&mut rng, n).to_bitvec(n);
            let seeds: Vec<BitVec> = (0..rng.gen_range(1..3))
                .map(|_| BitVec::from_bools(&(0..2 * n).map(|_| rng.gen_bool(0.3)).collect::<Vec<_>>()))
                .collect();
            let seq = shift_closure(n, seeds, ShiftKind::Sequential, &a);
            let back = hermitian_trace_dual(&seq);
            assert!(back.space.is_invariant(ShiftKind::Right, &a));
        }
    }

    #[test]
    fn annihilator_examples() {
        let ctx = RingContext::from_multinomial(&p("x^7+1")).unwrap();
        let full = build_code(&ctx, Some(&p("1")), &BinPoly::zero(), Some(&p("1")), Chirality::Right).unwrap();
        assert_eq!(annihilator(&full).dim2(), 0);
        assert_eq!(zero_dual(&full).dim2(), 0);
        let zero = build_code(&ctx, None, &BinPoly::zero(), None, Chirality::Right).unwrap();
        assert_eq!(zero_dual(&zero).dim2(), 14);

        // Ann(<b>) in the cyclic ring is the GF(4) ideal generated by (x^n + 1)/b
        let b = p("x^3+x+1");
        let h = BinPoly::exact_div(ctx.modulus(), &b).unwrap();
        let c = build_code(&ctx, None, &BinPoly::zero(), Some(&b), Chirality::Right).unwrap();
        let ann = annihilator(&c);
        let ideal = build_code(&ctx, Some(&h), &BinPoly::zero(), Some(&h), Chirality::Right).unwrap();
        assert!(ann.space.same_space(ideal.space()));
        for g in ann.space.basis_vectors() {
            let gp = ctx.polynomialize(&g, Chirality::Right).unwrap();
            assert!(ctx.ring_mul(&gp, &b).is_zero());
        }
    }

    #[test]
    fn duals_are_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..60 {
            let n = rng.gen_range(1..=10);
            let ctx = sample_ring(&mut rng, n);
            let t = sample_valid_triple(&mut rng, &ctx);
            let chir = if rng.gen() { Chirality::Right } else { Chirality::Left };
            let c = AdditiveCode::from_triple(&ctx, &t, chir).unwrap();
            assert!(is_ideal(&ctx, chir, &annihilator(&c).space));
            assert!(is_ideal(&ctx, chir, &zero_dual(&c).space));
        }
    }

    #[test]
    fn ann_equals_zero_dual_for_linear_codes_with_unit_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=10);
            let mut a = BinPoly::random(&mut rng, n);
            a.set_coeff(0, true);
            let ctx = RingContext::new(n, a).unwrap();
            let f = F4Poly::new(BinPoly::random(&mut rng, n), BinPoly::random(&mut rng, n));
            let c = AdditiveCode::from_generators(&ctx, &[f.clone(), f.scale(F4::ALPHA)], Chirality::Right);
            assert!(c.space().is_alpha_closed());
            assert!(annihilator(&c).space.same_space(&zero_dual(&c).space));
        }
    }

    #[test]
    fn ann_and_zero_dual_can_differ_when_x_is_a_zero_divisor() {
        // m = x^3, C = GF(4)-span of x^2: Ann(C) = (x) but C^0 = R_3
        let ctx = RingContext::from_multinomial(&p("x^3")).unwrap();
        let c = build_code(
            &ctx,
            Some(&p("x^2")),
            &BinPoly::zero(),
            Some(&p("x^2")),
            Chirality::Right,
        )
        .unwrap();
        assert!(c.space().is_alpha_closed());
        assert_eq!(annihilator(&c).dim2(), 4);
        assert_eq!(zero_dual(&c).dim2(), 6);
    }
}
