mod common;

use freeact_core::exact::{int, rat, GaussianMatrix, GaussianRational, Rational, RationalMatrix};
use freeact_core::quaternion::Quaternion;
use freeact_core::schottky::*;
use freeact_core::words::{enumerate_reduced, Images, ReducedWord};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64_rows(rows)
}

fn lorentz_generators() -> [RationalMatrix; 2] {
    [
        m(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        m(&[&[3, 2, -2], &[2, 1, -2], &[2, 2, -1]]),
    ]
}

fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(1..=max_len);
    let letters = "abAB".as_bytes();
    let mut text = String::new();
    while text.len() < len {
        let c = letters[rng.gen_range(0..4)] as char;
        let cancels = text.chars().last().is_some_and(|p| p != c && p.eq_ignore_ascii_case(&c));
        if !cancels {
            text.push(c);
        }
    }
    ReducedWord::parse_reduced(&text).unwrap()
}

fn cat_pair() -> [RationalMatrix; 2] {
    [m(&[&[2, 1], &[1, 1]]), m(&[&[1, 1], &[1, 2]])]
}

/// Coefficients of `det(x·I − M) = x³ − c₁x² + c₂x − c₃`.
fn char_poly_3(a: &RationalMatrix) -> [Rational; 3] {
    let g = |i, j| a.get(i, j).clone();
    let minor = |i: usize, j: usize| g(i, i) * g(j, j) - g(i, j) * g(j, i);
    [a.trace(), minor(0, 1) + minor(0, 2) + minor(1, 2), a.det().unwrap()]
}

#[test]
fn classification_matches_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let gens = Images::new(lorentz_generators().to_vec()).unwrap();
    let mut seen_lox = 0;
    for _ in 0..200 {
        let w = random_word(&mut rng, 7);
        let x = gens.evaluate(&w).unwrap();
        let [c1, c2, c3] = char_poly_3(&x);
        // x − 1 divides and the cofactor is x² − (c₁ − 1)x + 1
        assert_eq!(c3, int(1));
        assert_eq!(c2, c1.clone());
        let s = &c1 - int(1);
        let disc = &s * &s - int(4);
        let class = classify_so12(&x).unwrap();
        assert_eq!(class.is_loxodromic(), disc > Rational::zero(), "{w}: {}", class.name());
        if let ElementClassification::Loxodromic { discriminant, lambda_polynomial, .. } = &class {
            seen_lox += 1;
            assert_eq!(discriminant, &disc);
            assert_eq!(lambda_polynomial.coefficients, vec![int(1), -s, int(1)]);
        }
    }
    assert!(seen_lox > 50);
}

#[test]
fn induced_moebius_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let gens = Images::new(lorentz_generators().to_vec()).unwrap();
    for _ in 0..100 {
        let x = gens.evaluate(&random_word(&mut rng, 6)).unwrap();
        let y = gens.evaluate(&random_word(&mut rng, 6)).unwrap();
        let lhs = induced_moebius(&(&x * &y), ConicModel::Lorentz).unwrap();
        let rhs = &induced_moebius(&x, ConicModel::Lorentz).unwrap() * &induced_moebius(&y, ConicModel::Lorentz).unwrap();
        assert!(projectively_equal(&lhs, &rhs), "{lhs:?} vs {rhs:?}");
    }
}

#[test]
fn symmetric_square_of_cat_pair() {
    for g in cat_pair() {
        let s = sym_square(&g).unwrap();
        assert_eq!(s.trace(), int(8));
        let class = classify_isometry(&s, ConicModel::BinaryForms).unwrap();
        assert!(class.is_loxodromic());
        assert!(projectively_equal(&induced_moebius(&s, ConicModel::BinaryForms).unwrap(), &g));
        // odd traces only in the Lorentz lattice; the literal matrix is not an isometry there
        assert!(classify_so12(&s).is_err());
    }
}

#[test]
fn proposer_output_is_deterministic_and_verifies() {
    let gens = cat_pair();
    let (p1, c1) = propose_with_retries(&gens, 2).unwrap();
    let (p2, c2) = propose_with_retries(&gens, 2).unwrap();
    assert_eq!(p1, 2);
    assert_eq!(p2, 2);
    assert_eq!(serde_json::to_string(&c1).unwrap(), serde_json::to_string(&c2).unwrap());
    let parsed: PingPongCertificate = serde_json::from_str(&serde_json::to_string(&c1).unwrap()).unwrap();
    parsed.verify().unwrap();
    assert_eq!(parsed.version, PINGPONG_VERSION);
}

#[test]
fn accepted_certificates_have_no_short_relations() {
    let pairs = [
        cat_pair(),
        [m(&[&[2, 1], &[0, 1]]), m(&[&[1, 0], &[3, 2]])],
        [m(&[&[3, 1], &[2, 1]]), m(&[&[1, 2], &[1, 3]])],
    ];
    for pair in pairs {
        let (_, cert) = propose_with_retries(&pair, 1).unwrap();
        let images = Images::new(cert.generators.clone()).unwrap();
        let report = bounded_nontriviality(&images, 8, |x| projectively_equal(x, &RationalMatrix::identity(2)));
        assert_eq!(report.relation, None, "{pair:?}");
    }
}

#[test]
fn pingpong_rejections() {
    let gens = cat_pair();
    let squares = [gens[0].pow(2).unwrap(), gens[1].pow(2).unwrap()];
    let table = propose_pingpong_table(&gens, 2).unwrap();
    verify_pingpong(&squares, &table).unwrap();
    // swapping the generators sends each one's intervals to the wrong pair
    let swapped = [squares[1].clone(), squares[0].clone()];
    assert!(matches!(verify_pingpong(&swapped, &table), Err(PingPongRejection::Containment(..))));
    let mut overlapping = table.clone();
    overlapping.b = table.a.clone();
    assert!(matches!(verify_pingpong(&squares, &overlapping), Err(PingPongRejection::Overlap('a', 'b', _))));
}

#[test]
fn sanov_pair_has_no_relation_up_to_ten() {
    let images = Images::new(vec![m(&[&[1, 2], &[0, 1]]), m(&[&[1, 0], &[2, 1]])]).unwrap();
    let report = bounded_nontriviality(&images, 10, |x| x.is_identity());
    assert_eq!(report.relation, None);
}

#[test]
fn unipotent_pair_first_relation() {
    let images = Images::new(vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[1, 1]])]).unwrap();
    let report = bounded_nontriviality(&images, 12, |x| x.is_identity());
    assert_eq!(report.relation.as_deref(), Some("abAbaB"));
    let s = images.evaluate(&ReducedWord::parse("aBa").unwrap()).unwrap();
    assert!(s.pow(4).unwrap().is_identity());
    assert!(!s.pow(2).unwrap().is_identity());
}

/// Plain recursive enumeration over SU(2) matrices.
fn first_su2_relation(gens: &[GaussianMatrix; 2], max_len: usize) -> Option<String> {
    let letters: Vec<(char, GaussianMatrix)> = vec![
        ('a', gens[0].clone()),
        ('b', gens[1].clone()),
        ('A', gens[0].inverse().unwrap()),
        ('B', gens[1].inverse().unwrap()),
    ];
    fn walk(
        letters: &[(char, GaussianMatrix)],
        word: &mut String,
        value: &GaussianMatrix,
        left: usize,
        found: &mut Vec<String>,
    ) {
        if !word.is_empty() && value.is_identity() {
            found.push(word.clone());
        }
        if left == 0 {
            return;
        }
        for (c, g) in letters {
            if word.chars().last().is_some_and(|p| p != *c && p.eq_ignore_ascii_case(c)) {
                continue;
            }
            word.push(*c);
            walk(letters, word, &(value * g), left - 1, found);
            word.pop();
        }
    }
    let mut found = Vec::new();
    walk(&letters, &mut String::new(), &GaussianMatrix::identity(2), max_len, &mut found);
    let key = |w: &String| (w.len(), w.chars().map(|c| "abAB".find(c).unwrap()).collect::<Vec<_>>());
    found.into_iter().min_by_key(key)
}

#[test]
fn quaternion_pair_has_no_relation_up_to_eight() {
    let (p, q) = (Quaternion::new(3, 4, 0, 0), Quaternion::new(3, 0, 0, 4));
    let report = bounded_nontriviality(&Images::new(vec![p.clone(), q.clone()]).unwrap(), 8, Quaternion::is_positive_scalar);
    assert_eq!(report.relation, None);
    let su2 = [p.to_su2().unwrap(), q.to_su2().unwrap()];
    assert_eq!(first_su2_relation(&su2, 8), None);
}

#[test]
fn quaternion_search_agrees_with_su2_oracle_on_relations() {
    // i and j generate the quaternion group of order 8
    let (i, j) = (Quaternion::new(0, 1, 0, 0), Quaternion::new(0, 0, 1, 0));
    let report = bounded_nontriviality(&Images::new(vec![i.clone(), j.clone()]).unwrap(), 4, Quaternion::is_positive_scalar);
    let su2 = [i.to_su2().unwrap(), j.to_su2().unwrap()];
    assert_eq!(report.relation, first_su2_relation(&su2, 4));
    assert!(report.relation.is_some());
}

#[test]
fn shortlex_relation_is_first_in_enumeration() {
    let images = Images::new(vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[1, 1]])]).unwrap();
    let first = enumerate_reduced(2, 6)
        .filter(|w| !w.is_empty())
        .find(|w| images.evaluate(w).unwrap().is_identity())
        .map(|w| w.to_text());
    assert_eq!(first.as_deref(), Some("abAbaB"));
}

fn gaussian(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
}

fn order_cases() -> Vec<GaussianMatrix> {
    let r = |rows: &[&[i64]]| m(rows).to_gaussian();
    vec![
        GaussianMatrix::identity(2),
        -&GaussianMatrix::identity(2),
        r(&[&[1, 1], &[0, 1]]),
        r(&[&[0, -1], &[1, 0]]),
        r(&[&[0, -1], &[1, 1]]),
        r(&[&[0, -1], &[1, -1]]),
        r(&[&[2, 1], &[1, 1]]),
        Quaternion::new(3, 4, 0, 0).to_su2().unwrap(),
        Quaternion::new(1, 1, 1, 1).to_su2().unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn order_test_is_conjugation_invariant(
        case in 0usize..9,
        entries in proptest::collection::vec((-4i64..=4, -4i64..=4), 4),
    ) {
        let x = &order_cases()[case];
        let p = GaussianMatrix::from_rows(vec![
            vec![gaussian((entries[0].0, 1), (entries[0].1, 1)), gaussian((entries[1].0, 1), (entries[1].1, 2))],
            vec![gaussian((entries[2].0, 3), (entries[2].1, 1)), gaussian((entries[3].0, 1), (entries[3].1, 1))],
        ]).unwrap();
        prop_assume!(!p.det().unwrap().is_zero());
        let conj = &(&p * x) * &p.inverse().unwrap();
        prop_assert_eq!(order_test(&conj).unwrap(), order_test(x).unwrap());
    }

    #[test]
    fn finite_orders_are_exact(case in 0usize..9) {
        let x = &order_cases()[case];
        if let OrderReport::Finite { n } = order_test(x).unwrap() {
            prop_assert!(x.pow(n as i64).unwrap().is_identity());
            for k in 1..n {
                prop_assert!(!x.pow(k as i64).unwrap().is_identity());
            }
        } else {
            for k in 1..=12 {
                prop_assert!(!x.pow(k).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn interval_images_compose(a in -20i64..20, b in 1i64..20) {
        let lo = ProjectivePoint::from_rational(&rat(a, b));
        let hi = ProjectivePoint::from_rational(&(rat(a, b) + Rational::one()));
        let i = ProjectiveInterval::increasing(lo, hi).unwrap();
        let [f, g] = cat_pair();
        let lhs = i.image(&(&f * &g)).unwrap();
        let rhs = i.image(&g).unwrap().image(&f).unwrap();
        prop_assert_eq!(lhs.oriented(), rhs.oriented());
        prop_assert!(lhs.contains_interior(&rhs.witness));
    }
}

#[test]
fn common_helpers_stay_linked() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(common::is_zero_vec(&common::integer_vec(&mut rng, 2, 0)));
}
