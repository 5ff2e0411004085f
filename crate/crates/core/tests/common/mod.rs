#![allow(dead_code)]

use proptest::prelude::*;
use symtangent::algebra::{vars, LaurentPoly, Monomial, Vars};
use symtangent::{rat, Rat};

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

/// Sparse Laurent polynomial with exponents in `lo..=hi` for every variable.
pub fn laurent(ring: Vars, lo: i32, hi: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    let n = ring.len();
    prop::collection::vec((prop::collection::vec(lo..=hi, n), small_rat()), 0..=max_terms)
        .prop_map(move |terms| LaurentPoly::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))))
}

pub fn poly(ring: Vars, deg: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(ring, 0, deg, max_terms)
}

pub fn xy() -> Vars {
    vars(&["x", "y"])
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}
