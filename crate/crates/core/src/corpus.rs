//! Reference models used throughout the tests and the acceptance suite.

use alloc::vec::Vec;

use crate::algebra::{FreeAlgebra, Generator, Monomial, Polynomial};
use crate::model::SullivanModel;
use crate::Rational;

pub fn algebra(gens: &[(&str, u32)]) -> FreeAlgebra {
    FreeAlgebra::new(gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect()).expect("generators")
}

/// Polynomial from `(coefficient, [(generator index, exponent)])` terms.
pub fn poly(n: usize, terms: &[(i64, &[(usize, u32)])]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (c, factors) in terms {
        let mut e = alloc::vec![0u32; n];
        for (i, k) in factors.iter() {
            e[*i] += k;
        }
        p.add_term(Monomial::from_exponents(e), Rational::from_integer((*c).into()));
    }
    p
}

/// Model from generators and `(generator index, differential terms)` pairs.
pub fn model(gens: &[(&str, u32)], diffs: &[(usize, &[(i64, &[(usize, u32)])])]) -> SullivanModel {
    let n = gens.len();
    let mut d: Vec<Polynomial> = alloc::vec![Polynomial::zero(); n];
    for (g, terms) in diffs {
        d[*g] = poly(n, terms);
    }
    SullivanModel::validated(gens.iter().map(|(name, deg)| Generator::new(*name, *deg)).collect(), d)
        .expect("corpus model is valid")
}

/// S²: Λ(x₂, y₃), dy = x².
pub fn s2() -> SullivanModel {
    model(&[("x", 2), ("y", 3)], &[(1, &[(1, &[(0, 2)])])])
}

/// S³: Λ(y₃), d = 0.
pub fn s3() -> SullivanModel {
    model(&[("y", 3)], &[])
}

/// S²×S²: Λ(a₂, b₂, y₃, z₃), dy = a², dz = b².
pub fn s2_times_s2() -> SullivanModel {
    model(
        &[("a", 2), ("b", 2), ("y", 3), ("z", 3)],
        &[(2, &[(1, &[(0, 2)])]), (3, &[(1, &[(1, 2)])])],
    )
}

/// CP³: Λ(x₂, y₇), dy = x⁴.
pub fn cp3() -> SullivanModel {
    model(&[("x", 2), ("y", 7)], &[(1, &[(1, &[(0, 4)])])])
}

/// Λ(a₂, b₂, y₅, z₅), dy = a³, dz = b³.
pub fn a2b2y5z5() -> SullivanModel {
    model(
        &[("a", 2), ("b", 2), ("y", 5), ("z", 5)],
        &[(2, &[(1, &[(0, 3)])]), (3, &[(1, &[(1, 3)])])],
    )
}

/// Λ(a₂, y₃, z₅), dy = a², dz = a³ (d = d₂ + d₃).
pub fn mixed_a2_y3_z5() -> SullivanModel {
    model(
        &[("a", 2), ("y", 3), ("z", 5)],
        &[(1, &[(1, &[(0, 2)])]), (2, &[(1, &[(0, 3)])])],
    )
}

/// Λ(a₂, y₃, z₇), dy = a², dz = a⁴ (d = d₂ + d₄).
pub fn mixed_a2_y3_z7() -> SullivanModel {
    model(
        &[("a", 2), ("y", 3), ("z", 7)],
        &[(1, &[(1, &[(0, 2)])]), (2, &[(1, &[(0, 4)])])],
    )
}

/// Λ(a₂, b₄, y₃, z₇), dy = a², dz = b² + a²b (mixed inside one generator).
pub fn mixed_a2_b4_y3_z7() -> SullivanModel {
    model(
        &[("a", 2), ("b", 4), ("y", 3), ("z", 7)],
        &[(2, &[(1, &[(0, 2)])]), (3, &[(1, &[(1, 2)]), (1, &[(0, 2), (1, 1)])])],
    )
}

/// Λ(a₂, u₃, v₃, w₇), dw = a⁴ + a u v: not pure, d₃ not elliptic.
pub fn nonpure_a2_u3_v3_w7() -> SullivanModel {
    model(
        &[("a", 2), ("u", 3), ("v", 3), ("w", 7)],
        &[(3, &[(1, &[(0, 4)]), (1, &[(0, 1), (1, 1), (2, 1)])])],
    )
}

/// Λ(x₂) with zero differential: Gorenstein but not elliptic.
pub fn polynomial_x2() -> SullivanModel {
    model(&[("x", 2)], &[])
}
