//! Randomized invariants over seeded rings and generator triples.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polycyclic::binmap::{image_code, BinaryLinearCode, MapKind};
use polycyclic::bits::BitVec;
use polycyclic::code::{
    build_code, canonicalize, sample_ring, sample_valid_triple, validate_triple, AdditiveCode, CodeRecord,
};
use polycyclic::distance::{exhaustive_min_distance, support_min_distance};
use polycyclic::dual::hermitian_trace_dual;
use polycyclic::gf2poly::BinPoly;
use polycyclic::gf4::{F4Poly, F4Vector};
use polycyclic::quantum::{css, CssOptions};
use polycyclic::ring::{shift_step, Chirality, RingContext, ShiftKind};

fn chirality() -> impl Strategy<Value = Chirality> {
    prop_oneof![Just(Chirality::Right), Just(Chirality::Left)]
}

fn code(seed: u64, max_n: usize, chir: Chirality) -> (RingContext, AdditiveCode) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let ctx = sample_ring(&mut rng, n);
    let t = sample_valid_triple(&mut rng, &ctx);
    let c = AdditiveCode::from_triple(&ctx, &t, chir).unwrap();
    (ctx, c)
}

fn f4_vector(rng: &mut ChaCha8Rng, n: usize) -> F4Vector {
    let bits = |rng: &mut ChaCha8Rng| BitVec::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<_>>());
    F4Vector::from_parts(bits(rng), bits(rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_matches_formula_and_triple_is_recovered(seed in any::<u64>(), chir in chirality()) {
        let (ctx, c) = code(seed, 20, chir);
        prop_assert_eq!(c.space().dim2(), c.dim2());
        prop_assert_eq!(canonicalize(&ctx, &c.basis_polys()), c.triple());
        prop_assert_eq!(canonicalize(&ctx, &c.generator_polys()), c.triple());
    }

    #[test]
    fn code_is_closed_under_its_shift(seed in any::<u64>(), chir in chirality()) {
        let (_, c) = code(seed, 16, chir);
        let a = c.induction_vector();
        prop_assert!(c.is_invariant(ShiftKind::from(chir), &a));
        for v in c.space().basis_vectors() {
            let s = shift_step(ShiftKind::from(chir), &v, &a).unwrap();
            prop_assert!(c.contains(&s).unwrap());
        }
    }

    #[test]
    fn x_multiplication_is_the_shift(seed in any::<u64>(), chir in chirality()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=24);
        let ctx = sample_ring(&mut rng, n);
        let v = f4_vector(&mut rng, n);
        let p = ctx.polynomialize(&v, chir).unwrap();
        prop_assert_eq!(ctx.vectorize(&p, chir), v.clone());
        let xp = ctx.ring_mul(&p, &BinPoly::x());
        let shifted = shift_step(ShiftKind::from(chir), &v, &ctx.induction_vector(chir)).unwrap();
        prop_assert_eq!(ctx.vectorize(&xp, chir), shifted);
    }

    #[test]
    fn hermitian_dual_size_biduality_and_sequential(seed in any::<u64>()) {
        let (_, c) = code(seed, 16, Chirality::Right);
        let du = hermitian_trace_dual(c.space());
        prop_assert_eq!(du.dim2(), 2 * c.n() - c.dim2());
        prop_assert!(du.space.is_invariant(ShiftKind::Sequential, &c.induction_vector()));
        prop_assert!(hermitian_trace_dual(&du.space).space.same_space(c.space()));
    }

    #[test]
    fn records_round_trip(seed in any::<u64>(), chir in chirality(), d in proptest::option::of(1usize..10)) {
        let (_, c) = code(seed, 40, chir);
        let rec = CodeRecord::from_code(&c, d);
        let text = serde_json::to_string(&rec).unwrap();
        let back: CodeRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.to_code().unwrap(), c);
    }

    #[test]
    fn accepted_triples_build(seed in any::<u64>()) {
        // arbitrary small polynomials: whenever validation accepts, the build agrees
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let ctx = sample_ring(&mut rng, n);
        let g1 = BinPoly::random(&mut rng, n);
        let g2 = BinPoly::random(&mut rng, n);
        let b = BinPoly::random(&mut rng, n);
        let (g1, b) = (Some(g1).filter(|p| !p.is_zero()), Some(b).filter(|p| !p.is_zero()));
        let g2 = if g1.is_some() { g2 } else { BinPoly::zero() };
        let ok = validate_triple(&ctx, g1.as_ref(), &g2, b.as_ref()).is_ok();
        let built = build_code(&ctx, g1.as_ref(), &g2, b.as_ref(), Chirality::Right);
        prop_assert_eq!(ok, built.is_ok());
        if let Ok(c) = built {
            prop_assert_eq!(c.space().dim2(), c.dim2());
        }
    }

    #[test]
    fn support_distance_matches_enumeration(seed in any::<u64>()) {
        let (_, c) = code(seed, 10, Chirality::Right);
        prop_assume!(c.dim2() > 0 && c.dim2() <= 14);
        let s = support_min_distance(c.space(), c.n()).unwrap();
        let e = exhaustive_min_distance(c.space(), 14).unwrap();
        prop_assert_eq!(s.d(), e.d());
    }

    #[test]
    fn image_dimensions(seed in any::<u64>()) {
        let (_, c) = code(seed, 20, Chirality::Right);
        prop_assert_eq!(image_code(MapKind::W, c.space()).k(), c.dim2());
        for kind in [MapKind::T, MapKind::L] {
            let img = image_code(kind, c.space());
            prop_assert!(img.k() <= c.n().min(c.dim2()));
        }
    }

    #[test]
    fn css_of_sum_with_dual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(2..14);
        let k = rng.gen_range(1..len);
        let rows: Vec<BitVec> = (0..k)
            .map(|_| BitVec::from_bools(&(0..len).map(|_| rng.gen()).collect::<Vec<_>>()))
            .collect();
        let c = BinaryLinearCode::from_rows(len, rows);
        let big = BinaryLinearCode::from_echelon(c.basis().sum(c.dual().basis()));
        prop_assert!(big.is_dual_containing());
        let q = css(&big, &big, &CssOptions::default()).unwrap();
        prop_assert_eq!(q.k, 2 * big.k() - len);
        let pure = css(&big, &big, &CssOptions { coset_budget_log2: 0, ..CssOptions::default() }).unwrap();
        if q.k > 0 {
            prop_assert!(q.d >= pure.d);
        }
    }

    #[test]
    fn alpha_scaling_stays_in_linear_codes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=12);
        let ctx = sample_ring(&mut rng, n);
        let f = F4Poly::new(BinPoly::random(&mut rng, n), BinPoly::random(&mut rng, n));
        let alpha_f = f.scale(polycyclic::gf4::F4::ALPHA);
        let c = AdditiveCode::from_generators(&ctx, &[f, alpha_f], Chirality::Right);
        prop_assert!(c.space().is_alpha_closed());
        prop_assert_eq!(c.dim2() % 2, 0);
    }
}
