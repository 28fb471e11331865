mod gaussian {
    use freeact_core::exact::{int, rat, GaussianRational};
    use num_traits::{One, Zero};

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn text_round_trip() {
        for z in [
            g((1, 2), (3, 4)),
            g((-1, 2), (-3, 4)),
            g((0, 1), (1, 1)),
            g((0, 1), (-2, 3)),
            g((5, 1), (0, 1)),
            GaussianRational::zero(),
        ] {
            assert_eq!(GaussianRational::parse(&z.to_text()).unwrap(), z);
        }
        assert_eq!(GaussianRational::parse("i").unwrap(), GaussianRational::i());
        assert_eq!(GaussianRational::parse("-i").unwrap(), -GaussianRational::i());
        assert_eq!(GaussianRational::parse("2-i").unwrap(), g((2, 1), (-1, 1)));
        assert_eq!(GaussianRational::parse("-1/2+1/3i").unwrap(), g((-1, 2), (1, 3)));
        assert!(GaussianRational::parse("1/0+i").is_err());
        assert!(GaussianRational::parse("x").is_err());
    }

    #[test]
    fn field_ops() {
        let z = g((3, 5), (4, 5));
        assert_eq!(z.norm(), int(1));
        assert_eq!(&z * &z.conj(), GaussianRational::one());
        assert_eq!(&z / &z, GaussianRational::one());
        assert_eq!(GaussianRational::i().pow(4).unwrap(), GaussianRational::one());
        assert_eq!(z.pow(-1).unwrap(), z.conj());
        assert!(GaussianRational::zero().pow(-1).is_none());
    }

    #[test]
    fn square_roots() {
        // (1 + 2i)^2 = -3 + 4i
        let z = g((-3, 1), (4, 1));
        let r = z.sqrt().unwrap();
        assert_eq!(&r * &r, z);
        assert_eq!(g((-4, 9), (0, 1)).sqrt().unwrap(), g((0, 1), (2, 3)));
        assert!(g((2, 1), (0, 1)).sqrt().is_none());
        assert!(GaussianRational::i().sqrt().is_none());
        assert_eq!(g((0, 1), (2, 1)).sqrt().unwrap(), g((1, 1), (1, 1)));
    }
}

mod lattice {
    use freeact_core::exact::lattice::primitive;
    use freeact_core::exact::*;
    use num_bigint::BigInt;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn membership_examples() {
        let id = RationalMatrix::identity(2);
        let w = lattice_member(&id, &[rat(1, 2), int(0)]).unwrap();
        assert!(!w.member);
        assert_eq!(w.obstruction, Some(Obstruction { index: 0, residue: rat(1, 2) }));

        let w = lattice_member(&id, &v(&[3, -7])).unwrap();
        assert!(w.member);
        assert_eq!(w.coefficients, Some(vec![BigInt::from(3), BigInt::from(-7)]));
        assert!(w.verify_member(&id, &v(&[3, -7])));

        let b = RationalMatrix::from_i64_rows(&[&[2, 1], &[0, 1]]);
        assert!(!lattice_member(&b, &v(&[1, 0])).unwrap().member);
        assert!(lattice_member(&id, &v(&[1])).is_err());
    }

    /// Exhaustive small-coefficient search, independent of the Smith route.
    fn brute_member(basis: &RationalMatrix, target: &[Rational], bound: i64) -> bool {
        let k = basis.cols();
        let mut coeffs = vec![-bound; k];
        loop {
            let c: Vec<Rational> = coeffs.iter().map(|&x| int(x)).collect();
            if basis.mul_vec(&c).unwrap() == target {
                return true;
            }
            let mut i = 0;
            while i < k && coeffs[i] == bound {
                coeffs[i] = -bound;
                i += 1;
            }
            if i == k {
                return false;
            }
            coeffs[i] += 1;
        }
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let b = RationalMatrix::from_i64_rows(&[&[2, 1], &[0, 1]]);
        assert!(!brute_member(&b, &v(&[1, 0]), 6));
        for x in -3..=3 {
            for y in -3..=3 {
                let t = v(&[x, y]);
                assert_eq!(lattice_member(&b, &t).unwrap().member, brute_member(&b, &t, 6));
            }
        }
        // rationally dependent columns
        let dep = RationalMatrix::from_i64_rows(&[&[2, 4, 6], &[1, 2, 3]]);
        for x in -4..=4 {
            for y in -4..=4 {
                let t = v(&[x, y]);
                assert_eq!(lattice_member(&dep, &t).unwrap().member, brute_member(&dep, &t, 4));
            }
        }
    }

    #[test]
    fn rational_basis() {
        let b = RationalMatrix::from_rows(vec![vec![rat(1, 2)], vec![rat(1, 3)]]).unwrap();
        assert!(lattice_member(&b, &[rat(3, 2), int(1)]).unwrap().member);
        let w = lattice_member(&b, &[rat(1, 2), int(1)]).unwrap();
        assert!(!w.member);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(3);
        let b = vec![rat(1, 2), int(-4), rat(7, 3)];
        let s = solve_linear(&id, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let z = RationalMatrix::zeros(2, 2);
        let s = solve_linear(&z, &v(&[0, 0])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[0, 0]));
        assert_eq!(s.kernel, vec![v(&[1, 0]), v(&[0, 1])]);

        let ones = RationalMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_linear(&ones, &v(&[1, 0])).unwrap(), None);
        assert!(solve_linear(&ones, &v(&[1])).is_err());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_map(&RationalMatrix::identity(3)).rows(), 0);
        assert_eq!(cokernel_map(&RationalMatrix::zeros(3, 3)), RationalMatrix::identity(3));
        let a = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]);
        assert_eq!(cokernel_map(&a), RationalMatrix::from_i64_rows(&[&[0, 1]]));
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(vec![rat(-1, 2), rat(1, 3)]), v(&[3, -2]));
        assert_eq!(primitive(vec![int(0), int(-4)]), v(&[0, 1]));
    }
}

mod lattice_props {
    use freeact_core::exact::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |e| {
                RationalMatrix::new(r, c, e.into_iter().map(int).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn images_of_integer_vectors_are_members(
            b in matrix(4),
            seed in proptest::collection::vec(-20i64..=20, 4),
        ) {
            let x: Vec<Rational> = seed.iter().take(b.cols()).map(|&s| int(s)).collect();
            let target = b.mul_vec(&x).unwrap();
            let w = lattice_member(&b, &target).unwrap();
            prop_assert!(w.member);
            prop_assert!(w.verify_member(&b, &target));
        }
    }

    proptest! {
        #[test]
        fn solutions_substitute(
            a in matrix(4),
            rhs in proptest::collection::vec((-9i64..=9, 1i64..=5), 4),
        ) {
            let b: Vec<Rational> = rhs.iter().take(a.rows()).map(|&(p, q)| rat(p, q)).collect();
            if let Some(sol) = solve_linear(&a, &b).unwrap() {
                prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), b.clone());
                for k in &sol.kernel {
                    prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
                }
                prop_assert_eq!(sol.kernel.len(), a.cols() - a.rank());
            } else {
                // inconsistent: augmenting raises the rank
                let mut cols: Vec<Vec<Rational>> = (0..a.cols()).map(|j| a.column(j)).collect();
                cols.push(b.clone());
                let aug = RationalMatrix::from_columns(a.rows(), &cols);
                prop_assert_eq!(aug.rank(), a.rank() + 1);
            }
        }

        #[test]
        fn cokernel_annihilates(a in matrix(5)) {
            let q = cokernel_map(&a);
            if q.rows() > 0 {
                prop_assert!((&q * &a).is_zero());
            }
            prop_assert_eq!(q.rows() + a.rank(), a.rows());
            prop_assert_eq!(q.rank(), q.rows());
        }
    }
}

mod matrix {
    use freeact_core::error::ExactError;
    use freeact_core::exact::*;

    #[test]
    fn product_and_inverse() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]);
        let b = RationalMatrix::from_i64_rows(&[&[1, 0], &[2, 1]]);
        assert_eq!(&a * &b, RationalMatrix::from_i64_rows(&[&[5, 2], &[2, 1]]));
        assert_eq!(&a * &a.inverse().unwrap(), RationalMatrix::identity(2));
        assert_eq!(a.pow(-2).unwrap(), RationalMatrix::from_i64_rows(&[&[1, -4], &[0, 1]]));
        let singular = RationalMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(singular.inverse(), Err(ExactError::Singular)));
        assert_eq!(singular.det().unwrap(), int(0));
    }

    #[test]
    fn determinant_and_rank() {
        let m = RationalMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 3]]);
        // cofactor expansion: 0*(3-0) - 2*(3-2) + 1*(0-2) = -4
        assert_eq!(m.det().unwrap(), int(-4));
        assert_eq!(m.rank(), 3);
        let r2 = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(r2.rank(), 2);
        assert!(RationalMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn json_shape() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 2), int(-3)]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":2,"entries":[["1/2","-3"]]}"#);
        let back: RationalMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let ragged = r#"{"rows":2,"cols":2,"entries":[["1","2"],["3"]]}"#;
        assert!(serde_json::from_str::<RationalMatrix>(ragged).is_err());
        let g: GaussianMatrix =
            serde_json::from_str(r#"{"rows":1,"cols":1,"entries":[["1/2-3/4i"]]}"#).unwrap();
        assert_eq!(g.get(0, 0), &GaussianRational::new(rat(1, 2), rat(-3, 4)));
    }
}

mod rational {
    use freeact_core::exact::rational::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(rational_text(&rat(-3, 2)), "-3/2");
        assert_eq!(rational_text(&rat(4, 2)), "2");
        assert_eq!(rational_text(&int(0)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("/3").is_err());
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&int(-5)), int(0));
    }
}

mod normal_form {
    use freeact_core::error::ExactError;
    use freeact_core::exact::normal_form::*;
    use freeact_core::exact::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    /// Row-echelon with positive pivots and reduced entries above each pivot.
    pub(super) fn is_hnf(h: &RationalMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(j) => {
                    if seen_zero_row || last_pivot.is_some_and(|p| j <= p) {
                        return false;
                    }
                    let p = h.get(i, j);
                    if *p <= int(0) {
                        return false;
                    }
                    for k in 0..i {
                        let above = h.get(k, j);
                        if *above < int(0) || above >= p {
                            return false;
                        }
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(hnf(&id).unwrap(), (id.clone(), id.clone()));
        let zero = RationalMatrix::zeros(2, 2);
        assert_eq!(hnf(&zero).unwrap(), (zero.clone(), RationalMatrix::identity(2)));
        let a = RationalMatrix::from_i64_rows(&[&[2, 1], &[0, 1]]);
        let (h, u) = hnf(&a).unwrap();
        assert_eq!(h, RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]));
        assert_eq!(&u * &a, h);
    }

    #[test]
    fn hnf_rejects_fractions() {
        let a = RationalMatrix::from_rows(vec![vec![int(1), freeact_core::exact::rational::rat(1, 2)]])
            .unwrap();
        assert!(matches!(hnf(&a), Err(ExactError::NonInteger { row: 0, col: 1, .. })));
        assert!(snf(&a).is_err());
    }

    #[test]
    fn snf_examples() {
        let d = snf(&RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(d.s, RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
        let id = snf(&RationalMatrix::identity(4)).unwrap();
        assert_eq!(id.s, RationalMatrix::identity(4));
        let z = snf(&RationalMatrix::zeros(2, 3)).unwrap();
        assert!(z.s.is_zero());
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn snf_rectangular() {
        let a = RationalMatrix::from_i64_rows(&[&[4, 6, 2], &[2, 8, 10]]);
        let d = snf(&a).unwrap();
        assert_eq!(&(&d.u * &a) * &d.v, d.s);
        // gcd of entries is 2, gcd of 2x2 minors (20, 36, 44) is 4
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        assert!(is_hnf(&hnf(&a).unwrap().0));
    }

    #[test]
    fn bareiss_matches_field_det() {
        let a = RationalMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 3]]);
        let rows = a.to_integer_rows().unwrap();
        assert_eq!(freeact_core::exact::rational::from_bigint(int_det(&rows)), a.det().unwrap());
    }
}

mod normal_form_props {
    use freeact_core::exact::normal_form::*;
    use freeact_core::exact::rational::from_bigint;
    use freeact_core::exact::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn int_matrix(max_dim: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(-9i64..=9, r * c))
        })
    }

    fn build(r: usize, c: usize, e: &[i64]) -> RationalMatrix {
        RationalMatrix::new(r, c, e.iter().map(|&x| freeact_core::exact::rational::int(x)).collect())
            .unwrap()
    }

    proptest! {
        #[test]
        fn snf_invariants((r, c, e) in int_matrix(5)) {
            let a = build(r, c, &e);
            let d = snf(&a).unwrap();
            prop_assert_eq!(&(&d.u * &a) * &d.v, d.s.clone());
            prop_assert!(d.s.is_diagonal());
            let diag = d.diagonal();
            for w in diag.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
            prop_assert_eq!(d.u.det().unwrap().abs(), from_bigint(BigInt::one()));
            prop_assert_eq!(d.v.det().unwrap().abs(), from_bigint(BigInt::one()));
            prop_assert_eq!(d.rank(), a.rank());
        }

        #[test]
        fn hnf_is_idempotent((r, c, e) in int_matrix(5)) {
            let a = build(r, c, &e);
            let (h, u) = hnf(&a).unwrap();
            prop_assert_eq!(&u * &a, h.clone());
            prop_assert_eq!(u.det().unwrap().abs(), from_bigint(BigInt::one()));
            prop_assert!(super::normal_form::is_hnf(&h));
            let (h2, u2) = hnf(&h).unwrap();
            prop_assert_eq!(h2, h);
            prop_assert!(u2.is_identity());
        }
    }
}
