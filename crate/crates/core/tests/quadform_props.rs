use mobius_fq::laurent::LaurentSeries;
use mobius_fq::quadform::{
    gauss_mean, hankel_pair_identity, m_ab, weyl_check, FqMatrix, PairForm, QuadPhase,
};
use mobius_fq::{Budget, FieldCtx, Fq, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_symmetric<R: Rng>(rng: &mut R, n: usize, q: usize) -> FqMatrix {
    let mut m = FqMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = Fq(rng.gen_range(0..q) as u8);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Symmetric matrix of prescribed rank: `A^T D A` with `A` random invertible.
fn symmetric_of_rank<R: Rng>(rng: &mut R, n: usize, rank: usize, ctx: &FieldCtx) -> FqMatrix {
    let q = ctx.q();
    let a = loop {
        let mut a = FqMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, Fq(rng.gen_range(0..q) as u8));
            }
        }
        if a.rank(ctx) == n {
            break a;
        }
    };
    let mut d = FqMatrix::zero(n, n);
    for i in 0..rank {
        d.set(i, i, Fq(rng.gen_range(1..q) as u8));
    }
    a.transpose().mul(&d, ctx).unwrap().mul(&a, ctx).unwrap()
}

fn random_poly<R: Rng>(rng: &mut R, len: usize, q: usize) -> Poly {
    Poly::new((0..len).map(|_| Fq(rng.gen_range(0..q) as u8)).collect())
}

#[test]
fn gauss_equality_case() {
    let ctx = FieldCtx::new(3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let n = 1 + i % 6;
        let rank = rng.gen_range(0..=n);
        let m = symmetric_of_rank(&mut rng, n, rank, &ctx);
        let r = Fq(rng.gen_range(1..3));
        let rep = gauss_mean(&QuadPhase::pure(m, r).unwrap(), &ctx, Budget::DEFAULT).unwrap();
        assert_eq!(rep.rank, rank);
        assert!((rep.abs - 3f64.powf(-(rank as f64) / 2.0)).abs() < 1e-9);
    }
}

#[test]
fn gauss_bound_with_linear_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, s) in [(3, 1), (5, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, s).unwrap();
        let q = ctx.q();
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let m = random_symmetric(&mut rng, n, q);
            let b: Vec<Fq> = (0..n).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
            let phase = QuadPhase::new(m, b, Fq(rng.gen_range(0..q) as u8), Fq(rng.gen_range(0..q) as u8)).unwrap();
            gauss_mean(&phase, &ctx, Budget::DEFAULT).unwrap();
        }
    }
}

#[test]
fn weyl_identity_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, s) in [(3, 1), (5, 1), (2, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, s).unwrap();
        let q = ctx.q();
        for _ in 0..10 {
            let n = rng.gen_range(1..=if q > 5 { 2 } else { 3 });
            let m = random_symmetric(&mut rng, n, q);
            let b: Vec<Fq> = (0..n).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
            let phase = QuadPhase::new(m, b, Fq(rng.gen_range(0..q) as u8), Fq(rng.gen_range(0..q) as u8)).unwrap();
            let rep = weyl_check(&phase, &ctx, Budget::DEFAULT).unwrap();
            assert!(rep.residual < 1e-9, "{rep:?}");
        }
    }
}

#[test]
fn hankel_pair_identity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [3u32, 5] {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let q = ctx.q();
        for _ in 0..100 {
            let n = rng.gen_range(2..=8);
            let k = rng.gen_range(0..n);
            let alpha = LaurentSeries::sample_torus_with(&mut rng, 2 * n - 1, &ctx);
            let a = random_poly(&mut rng, k + 1, q);
            let b = random_poly(&mut rng, k + 1, q);
            for form in [PairForm::Average, PairForm::Sum, PairForm::Left] {
                hankel_pair_identity(&alpha, n, &a, &b, k, form, &ctx).unwrap();
            }
        }
    }
    let ctx = FieldCtx::new(2, 1).unwrap();
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(0..n);
        let alpha = LaurentSeries::sample_torus_with(&mut rng, 2 * n - 1, &ctx);
        let a = random_poly(&mut rng, k + 1, 2);
        let b = random_poly(&mut rng, k + 1, 2);
        hankel_pair_identity(&alpha, n, &a, &b, k, PairForm::Left, &ctx).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_subadditive_in_a(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let q = ctx.q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(0..n);
        let m = random_symmetric(&mut rng, n, q);
        let form = PairForm::default_for(&ctx);
        let a1 = random_poly(&mut rng, k + 1, q);
        let a2 = random_poly(&mut rng, k + 1, q);
        let b = random_poly(&mut rng, k + 1, q);
        let r = |a: &Poly| m_ab(&m, a, &b, k, form, &ctx).unwrap().rank(&ctx);
        prop_assert!(r(&a1.sub(&a2, &ctx)) <= r(&a1) + r(&a2));
    }

    #[test]
    fn restriction_loses_at_most_twice_the_degree(seed in any::<u64>(), p in prop::sample::select(vec![3u32, 5])) {
        let ctx = FieldCtx::new(p, 1).unwrap();
        let q = ctx.q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(0..n);
        let m = random_symmetric(&mut rng, n, q);
        let mut coeffs: Vec<Fq> = (0..k).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
        coeffs.push(Fq(rng.gen_range(1..q) as u8));
        let a = Poly::new(coeffs);
        let restricted = m_ab(&m, &a, &a, k, PairForm::Average, &ctx).unwrap();
        prop_assert!(restricted.is_symmetric());
        prop_assert!(restricted.rank(&ctx) + 2 * k >= m.rank(&ctx));
    }
}
