//! Small named structures used throughout the tests and the CLI.

use crate::structure::GammaStructure;

/// `ℤ_n` addition with ternary product `a·b·c mod n`, one parameter.
pub fn product_mod(n: usize) -> GammaStructure {
    GammaStructure::from_fns(n, 1, |a, b| (a + b) % n, |a, _, b, _, c| a * b * c % n)
        .expect("well-formed tables")
}

/// `ℤ_n` addition with ternary product `a+b+c mod n`. Violates absorbing zero.
pub fn sum_mod(n: usize) -> GammaStructure {
    GammaStructure::from_fns(n, 1, |a, b| (a + b) % n, |a, _, b, _, c| (a + b + c) % n)
        .expect("well-formed tables")
}

/// `{0,1}` with OR as addition and AND as the ternary product.
pub fn b2() -> GammaStructure {
    GammaStructure::from_fns(2, 1, |a, b| a | b, |a, _, b, _, c| a & b & c)
        .expect("well-formed tables")
}

pub fn m3() -> GammaStructure {
    product_mod(3)
}

pub fn m4() -> GammaStructure {
    product_mod(4)
}

pub fn m6() -> GammaStructure {
    product_mod(6)
}

/// The chain `0 < 1 < … < n-1` with max as addition and min as product.
pub fn chain(n: usize) -> GammaStructure {
    GammaStructure::from_fns(n, 1, |a, b| a.max(b), |a, _, b, _, c| a.min(b).min(c))
        .expect("well-formed tables")
}

/// The one-element structure.
pub fn trivial() -> GammaStructure {
    product_mod(1)
}

/// `ℤ_n` addition with every product zero.
pub fn zero_product(n: usize) -> GammaStructure {
    GammaStructure::from_fns(n, 1, |a, b| (a + b) % n, |_, _, _, _, _| 0)
        .expect("well-formed tables")
}

/// Named fixtures, in a fixed order.
pub fn named() -> Vec<(&'static str, GammaStructure)> {
    vec![
        ("b2", b2()),
        ("m3", m3()),
        ("m4", m4()),
        ("m6", m6()),
    ]
}
