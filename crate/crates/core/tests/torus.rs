mod common;

use common::*;
use freeact_core::exact::{rat, GaussianMatrix, GaussianRational, Rational, RationalMatrix};
use freeact_core::torus::{
    has_fixed_point, realify, translation_decomposition, AffineTorusMap, FixedPointDecision,
    PreparedLinearPart, RationalAffine,
};
use freeact_core::words::{enumerate_reduced, GroupElement, Images, ReducedWord};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn planted_fixed(rng: &mut ChaCha8Rng, n: usize) -> AffineTorusMap {
    let l = unimodular(rng, n, 3 * n);
    let x0 = rational_vec(rng, n, 12);
    let lambda = integer_vec(rng, n, 5);
    let disp = &l - &RationalMatrix::identity(n);
    let dx = disp.mul_vec(&x0).unwrap();
    let t: Vec<Rational> = lambda.iter().zip(&dx).map(|(a, b)| a - b).collect();
    AffineTorusMap::new(l, t).unwrap()
}

/// `T = V·e₀/(2·d₀)` plus a lattice vector puts `1/2` in the first Smith coordinate.
fn planted_free(rng: &mut ChaCha8Rng, n: usize) -> AffineTorusMap {
    let l = unimodular_with_eigenvalue_one(rng, n);
    let prepared = PreparedLinearPart::new(&l);
    let lat = prepared.lattice().expect("L − I is singular");
    let snf = lat.snf();
    let d0 = Rational::from_integer(snf.s[0][0].clone());
    let shift = integer_vec(rng, n, 4);
    let t: Vec<Rational> = (0..n)
        .map(|i| Rational::from_integer(snf.v[i][0].clone()) / (&d0 * rat(2, 1)) + &shift[i])
        .collect();
    AffineTorusMap::new(l, t).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, n: usize) -> AffineTorusMap {
    let l = if rng.gen_bool(0.5) {
        unimodular_with_eigenvalue_one(rng, n)
    } else {
        unimodular(rng, n, 3 * n)
    };
    AffineTorusMap::new(l, rational_vec(rng, n, 6)).unwrap()
}

fn det_displacement_is_zero(f: &AffineTorusMap) -> bool {
    f.displacement_matrix().det().unwrap().is_zero()
}

#[test]
fn planted_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let n = 1 + case % 6;
        let f = planted_fixed(&mut rng, n);
        let d = has_fixed_point(&f);
        assert!(!d.is_free(), "planted fixed point missed for {f:?}");
        d.verify(&f).unwrap();
    }
}

#[test]
fn planted_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..1000 {
        let n = 2 + case % 5;
        let f = planted_free(&mut rng, n);
        let d = has_fixed_point(&f);
        assert!(d.is_free(), "planted obstruction missed for {f:?}");
        d.verify(&f).unwrap();
        assert!(det_displacement_is_zero(&f));
    }
}

#[test]
fn free_witness_rejected_for_other_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = planted_free(&mut rng, 3);
    let d = has_fixed_point(&f);
    let g = AffineTorusMap::new(f.linear_part().clone(), vec![Rational::zero(); 3]).unwrap();
    assert!(d.verify(&g).is_err());
    let FixedPointDecision::Free { witness } = d else { panic!() };
    let mut w = witness.clone();
    w.membership.obstruction.as_mut().unwrap().residue += rat(1, 1);
    assert!(FixedPointDecision::Free { witness: w }.verify(&f).is_err());
    let mut w = witness;
    w.scale *= 2;
    assert!(FixedPointDecision::Free { witness: w }.verify(&f).is_err());
}

#[test]
fn translation_linearity_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = RationalMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
    let b = unimodular(&mut rng, 3, 6);
    let words: Vec<ReducedWord> = enumerate_reduced(2, 4).collect();
    for _ in 0..100 {
        let w = &words[rng.gen_range(0..words.len())];
        let s = rational_vec(&mut rng, 3, 9);
        let t = rational_vec(&mut rng, 3, 9);
        let images = Images::new(vec![
            RationalAffine::new(a.clone(), s.clone()).unwrap(),
            RationalAffine::new(b.clone(), t.clone()).unwrap(),
        ])
        .unwrap();
        let direct = images.evaluate(w).unwrap();
        let dec = translation_decomposition(w, &a, &b).unwrap();
        let ls = dec.l_w.mul_vec(&s).unwrap();
        let rt = dec.r_w.mul_vec(&t).unwrap();
        let sum: Vec<Rational> = ls.iter().zip(&rt).map(|(x, y)| x + y).collect();
        assert_eq!(direct.t, sum, "word {w}");
    }
}

#[test]
fn realify_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gauss_unimodular = |rng: &mut ChaCha8Rng| {
        let p = unimodular(rng, 3, 5);
        let q = unimodular(rng, 3, 5);
        // unit upper-triangular factor with Gaussian-integer entries
        let mut u = GaussianMatrix::identity(3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            u.set(i, j, GaussianRational::new(rat(rng.gen_range(-2..=2), 1), rat(rng.gen_range(-2..=2), 1)));
        }
        let diag = GaussianMatrix::diagonal(&[GaussianRational::i(), GaussianRational::one(), GaussianRational::one()]);
        &(&(&p.to_gaussian() * &u) * &diag) * &q.to_gaussian()
    };
    let gauss_vec = |rng: &mut ChaCha8Rng| -> Vec<GaussianRational> {
        (0..3).map(|_| GaussianRational::new(rational(rng, 7), rational(rng, 7))).collect()
    };
    for _ in 0..100 {
        let (lf, tf) = (gauss_unimodular(&mut rng), gauss_vec(&mut rng));
        let (lg, tg) = (gauss_unimodular(&mut rng), gauss_vec(&mut rng));
        let lfg = &lf * &lg;
        let ltg = lf.mul_vec(&tg).unwrap();
        let tfg: Vec<GaussianRational> = ltg.iter().zip(&tf).map(|(a, b)| a + b).collect();
        let lhs = realify(&lfg, &tfg).unwrap();
        let rhs = realify(&lf, &tf).unwrap().compose(&realify(&lg, &tg).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn realify_of_real_matrix_is_block_kronecker() {
    let l = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
    let f = realify(&l.to_gaussian(), &[GaussianRational::zero(), GaussianRational::zero()]).unwrap();
    let expected = RationalMatrix::from_i64_rows(&[
        &[2, 0, 1, 0],
        &[0, 2, 0, 1],
        &[1, 0, 1, 0],
        &[0, 1, 0, 1],
    ]);
    assert_eq!(f.linear_part(), &expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn necessity_and_witnesses(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, n);
        let d = has_fixed_point(&f);
        prop_assert!(d.verify(&f).is_ok());
        if d.is_free() {
            prop_assert!(det_displacement_is_zero(&f));
        }
    }

    #[test]
    fn inversion_symmetry(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, n);
        prop_assert_eq!(has_fixed_point(&f).is_free(), has_fixed_point(&f.invert()).is_free());
        prop_assert_eq!(f.compose(&f.invert()).unwrap(), AffineTorusMap::identity(n));
    }

    #[test]
    fn conjugacy_invariance(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, n);
        let c = AffineTorusMap::new(unimodular(&mut rng, n, 2 * n), rational_vec(&mut rng, n, 5)).unwrap();
        let g = c.compose(&f).unwrap().compose(&c.invert()).unwrap();
        prop_assert_eq!(has_fixed_point(&f).is_free(), has_fixed_point(&g).is_free());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_map(&mut rng, n);
        let back: AffineTorusMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(&back, &f);
        let d = has_fixed_point(&f);
        let back: FixedPointDecision = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn word_evaluation_commutes_with_torus_reduction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = unimodular(&mut rng, 3, 6);
        let b = unimodular(&mut rng, 3, 6);
        let s = rational_vec(&mut rng, 3, 8);
        let t = rational_vec(&mut rng, 3, 8);
        let torus = Images::new(vec![
            AffineTorusMap::new(a.clone(), s.clone()).unwrap(),
            AffineTorusMap::new(b.clone(), t.clone()).unwrap(),
        ]).unwrap();
        let affine = Images::new(vec![
            RationalAffine::new(a, s).unwrap(),
            RationalAffine::new(b, t).unwrap(),
        ]).unwrap();
        for w in enumerate_reduced(2, 3) {
            let lifted = affine.evaluate(&w).unwrap().to_torus_map().unwrap();
            prop_assert_eq!(torus.evaluate(&w).unwrap(), lifted);
        }
        let _ = torus.identity().identity_like();
    }
}
