//! Shared fixtures for the criterion benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtangent::atlas::w1_ring;
use symtangent::{rat, LaurentPoly, Rat};

/// Dense polynomial in `x, y` with seeded small rational coefficients.
pub fn dense_poly(degree: i32, seed: u64) -> LaurentPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = LaurentPoly::zero(&w1_ring());
    for i in 0..=degree {
        for j in 0..=degree - i {
            let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            p = &p + &LaurentPoly::term(&w1_ring(), &[i, j], c);
        }
    }
    p
}

/// Seeded rational matrix with roughly a third of the entries zero.
pub fn sparse_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(
                    |_| if rng.gen_bool(0.35) { rat(0, 1) } else { rat(rng.gen_range(-12..=12), rng.gen_range(1..=6)) },
                )
                .collect()
        })
        .collect()
}

/// Matrix of polynomials whose rank over the fraction field is `rank`.
pub fn poly_matrix(rows: usize, cols: usize, rank: usize, seed: u64) -> Vec<Vec<LaurentPoly>> {
    let left: Vec<Vec<LaurentPoly>> =
        (0..rows).map(|i| (0..rank).map(|k| dense_poly(1, seed + (i * rank + k) as u64)).collect()).collect();
    let right: Vec<Vec<LaurentPoly>> =
        (0..rank).map(|k| (0..cols).map(|j| dense_poly(1, seed + 1000 + (k * cols + j) as u64)).collect()).collect();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..rank).fold(LaurentPoly::zero(&w1_ring()), |acc, k| &acc + &(&left[i][k] * &right[k][j])))
                .collect()
        })
        .collect()
}
