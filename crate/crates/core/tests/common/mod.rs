//! Random generators shared by the integration tests.
#![allow(dead_code)]

use freeact_core::exact::{rat, Rational, RationalMatrix};
use num_traits::Zero;
use rand::Rng;

/// Product of random elementary operations; always unimodular.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    if n <= 1 {
        if rng.gen_bool(0.5) {
            m.set(0, 0, rat(-1, 1));
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..6) {
            0 => m.swap_rows(i, j),
            1 => {
                for c in 0..n {
                    let v = -m.get(i, c).clone();
                    m.set(i, c, v);
                }
            }
            _ => {
                let k = Rational::from_integer(rng.gen_range(-2i64..=2).into());
                for c in 0..n {
                    let v = m.get(i, c) + &k * m.get(j, c);
                    m.set(i, c, v);
                }
            }
        }
    }
    m
}

/// Unimodular `L` with `det(L − I) = 0`: a conjugate of `[[1, v], [0, M]]`.
pub fn unimodular_with_eigenvalue_one<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    if n == 1 {
        return RationalMatrix::identity(1);
    }
    let inner = unimodular(rng, n - 1, 2 * n);
    let mut block = RationalMatrix::zeros(n, n);
    block.set(0, 0, rat(1, 1));
    for j in 1..n {
        block.set(0, j, rat(rng.gen_range(-2..=2), 1));
        for i in 1..n {
            block.set(i, j, inner.get(i - 1, j - 1).clone());
        }
    }
    let p = unimodular(rng, n, 2 * n);
    &(&p * &block) * &p.inverse().unwrap()
}

pub fn rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-3 * d..=3 * d), d)
}

pub fn rational_vec<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> Vec<Rational> {
    (0..n).map(|_| rational(rng, max_den)).collect()
}

pub fn integer_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-bound..=bound), 1)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
