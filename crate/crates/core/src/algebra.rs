//! The free graded-commutative algebra ΛV = Exterior(V^odd) ⊗ Symmetric(V^even).
//!
//! Monomials are exponent vectors in generator declaration order; a monomial
//! always denotes the ordered product `x_1^{e_1} x_2^{e_2} ...`, so every sign
//! produced by reordering is resolved at multiplication time.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over the generators of a [`FreeAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(generators: usize) -> Self {
        Monomial(vec![0; generators])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sparse exact-rational element of ΛV. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Polynomial, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_assign_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    /// Smallest word length among the terms, `None` for zero.
    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).min()
    }

    pub fn max_word_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).max()
    }

    /// Terms of word length exactly `i`.
    pub fn word_part(&self, i: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() == i)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Decomposition into word-length components, ascending, zero components omitted.
    pub fn word_components(&self) -> Vec<(u32, Polynomial)> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.word_length())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// The free graded-commutative algebra on an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
}

/// Monomials of one degree, in the deterministic algebra order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

impl FreeAlgebra {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 2 {
                return Err(Error::InvalidGenerator(alloc::format!(
                    "generator {} has degree {}, degree >= 2 required",
                    g.name,
                    g.degree
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidGenerator(alloc::format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }
        Ok(FreeAlgebra { generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.generators[i].is_odd()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::monomial(Monomial::one(self.num_generators()), Rational::one())
    }

    pub fn generator(&self, i: usize) -> Polynomial {
        let mut e = vec![0; self.num_generators()];
        e[i] = 1;
        Polynomial::monomial(Monomial(e), Rational::one())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Degree of a homogeneous polynomial; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<u32> {
        let mut degrees = p.terms().map(|(m, _)| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.len() != self.num_generators() {
            return Err(Error::ModelMismatch {
                expected: self.num_generators(),
                found: m.len(),
            });
        }
        Ok(())
    }

    pub fn check(&self, p: &Polynomial) -> Result<()> {
        p.terms().try_for_each(|(m, _)| self.check_monomial(m))
    }

    /// Product of two monomials with its Koszul sign, `None` if an odd
    /// generator would be squared.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        // odd generators of `a` strictly after position i, accumulated right to left
        let mut odd_after = 0u32;
        let n = self.num_generators();
        let mut exps = vec![0u32; n];
        for i in (0..n).rev() {
            let (ea, eb) = (a.0[i], b.0[i]);
            if self.generators[i].is_odd() {
                if ea + eb > 1 {
                    return None;
                }
                if eb == 1 && odd_after % 2 == 1 {
                    negative = !negative;
                }
                odd_after += ea;
            }
            exps[i] = ea + eb;
        }
        Some((negative, Monomial(exps)))
    }

    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.multiply_unchecked(p, q))
    }

    pub(crate) fn multiply_unchecked(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in p.terms() {
            for (mb, cb) in q.terms() {
                if let Some((neg, m)) = self.multiply_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn power(&self, p: &Polynomial, e: u32) -> Polynomial {
        let mut out = self.one();
        for _ in 0..e {
            out = self.multiply_unchecked(&out, p);
        }
        out
    }

    /// Exhaustive list of monomials of the given degree.
    pub fn basis(&self, degree: u32) -> GradedBasis {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; self.num_generators()];
        self.enumerate(0, degree, &mut current, &mut monomials);
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedBasis { degree, monomials, index }
    }

    fn enumerate(&self, i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let deg = self.generators[i].degree;
        let max_e = if self.generators[i].is_odd() {
            (remaining / deg).min(1)
        } else {
            remaining / deg
        };
        for e in 0..=max_e {
            current[i] = e;
            self.enumerate(i + 1, remaining - e * deg, current, out);
        }
        current[i] = 0;
    }

    /// True iff the monomial involves only even generators.
    pub fn is_even_monomial(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.generators)
            .all(|(&e, g)| e == 0 || !g.is_odd())
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> DisplayPolynomial<'a> {
        DisplayPolynomial { algebra: self, poly: p }
    }
}

/// Renders a polynomial in the model-file syntax (`3/2 x^2 y - z`).
pub struct DisplayPolynomial<'a> {
    algebra: &'a FreeAlgebra,
    poly: &'a Polynomial,
}

impl fmt::Display for DisplayPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let factors: Vec<(usize, u32)> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            let unit = abs.is_one();
            if !unit || factors.is_empty() {
                write!(f, "{abs}")?;
                if !factors.is_empty() {
                    write!(f, " ")?;
                }
            }
            for (j, (i, e)) in factors.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.algebra.generators[*i].name)?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x2y3() -> FreeAlgebra {
        FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let a = x2y3();
        let y = a.generator(1);
        assert!(a.multiply(&y, &y).unwrap().is_zero());
    }

    #[test]
    fn even_powers_add() {
        let a = x2y3();
        let x = a.generator(0);
        let x3 = a.power(&x, 3);
        let x4 = a.power(&x, 4);
        assert_eq!(a.multiply(&x3, &x4).unwrap(), a.power(&x, 7));
    }

    #[test]
    fn koszul_sign_even_odd_commute() {
        let a = x2y3();
        let (x, y) = (a.generator(0), a.generator(1));
        assert_eq!(a.multiply(&y, &x).unwrap(), a.multiply(&x, &y).unwrap());
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = FreeAlgebra::new(vec![Generator::new("u", 3), Generator::new("v", 5)]).unwrap();
        let (u, v) = (a.generator(0), a.generator(1));
        assert_eq!(a.multiply(&v, &u).unwrap(), a.multiply(&u, &v).unwrap().neg());
    }

    #[test]
    fn mismatched_generator_sets() {
        let a = x2y3();
        let foreign = Polynomial::monomial(Monomial::from_exponents(vec![1, 0, 0]), q(1));
        assert!(matches!(
            a.multiply(&a.generator(0), &foreign),
            Err(Error::ModelMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn basis_examples() {
        let a = x2y3();
        assert_eq!(a.basis(0).monomials, vec![Monomial::one(2)]);
        assert!(a.basis(1).is_empty());
        assert_eq!(a.basis(4).monomials, vec![Monomial::from_exponents(vec![2, 0])]);
        assert_eq!(a.basis(5).monomials, vec![Monomial::from_exponents(vec![1, 1])]);
        assert!(a.basis(6).len() == 1); // x^3 only: y^2 = 0
    }

    #[test]
    fn word_components_split() {
        let a = x2y3();
        let x = a.generator(0);
        let p = a.power(&x, 2).add(&a.power(&x, 3));
        let parts = p.word_components();
        assert_eq!(parts, vec![(2, a.power(&x, 2)), (3, a.power(&x, 3))]);
        assert!(Polynomial::zero().word_components().is_empty());
        let xy = a.multiply(&x, &a.generator(1)).unwrap();
        assert_eq!(xy.word_components(), vec![(2, xy.clone())]);
    }

    #[test]
    fn generator_validation() {
        assert!(FreeAlgebra::new(vec![Generator::new("x", 1)]).is_err());
        assert!(FreeAlgebra::new(vec![Generator::new("x", 2), Generator::new("x", 4)]).is_err());
    }

    #[test]
    fn display_round_form() {
        let a = x2y3();
        let p = a.power(&a.generator(0), 2).scale(&Rational::new(3.into(), 2.into()));
        let p = p.sub(&a.multiply(&a.generator(0), &a.generator(1)).unwrap());
        assert_eq!(a.display(&p).to_string(), "-x y + 3/2 x^2");
    }
}
