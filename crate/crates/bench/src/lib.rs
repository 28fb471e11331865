//! Shared inputs for the criterion benchmarks.

use freeact_core::exact::{rat, Rational, RationalMatrix};
use freeact_core::schottky::sym_square;
use freeact_core::AffineTorusMap;

/// The cat map and its transpose-conjugate on T².
pub fn cat_pair() -> [RationalMatrix; 2] {
    [
        RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
        RationalMatrix::from_i64_rows(&[&[1, 1], &[1, 2]]),
    ]
}

/// Symmetric squares of [`cat_pair`], acting on T³.
pub fn lifted_pair() -> [RationalMatrix; 2] {
    let [a, b] = cat_pair();
    [sym_square(&a).unwrap(), sym_square(&b).unwrap()]
}

/// A dense unimodular 6×6 matrix with a 2-dimensional fixed sublattice.
pub fn block_matrix() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[
        &[2, 1, 0, 0, 3, -1],
        &[1, 1, 0, 0, 2, 5],
        &[0, 0, 1, 1, -4, 2],
        &[0, 0, 1, 2, 1, 1],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 1],
    ])
}

pub fn torus_map(t: &[(i64, i64)]) -> AffineTorusMap {
    let t: Vec<Rational> = t.iter().map(|&(p, q)| rat(p, q)).collect();
    AffineTorusMap::new(block_matrix(), t).unwrap()
}
