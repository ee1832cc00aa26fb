//! Sullivan algebras (ΛV, d): validation, the Leibniz extension of d, the
//! word-length decomposition d = Σ_{i≥k} d_i and the associated pure model.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::algebra::{FreeAlgebra, Generator, GradedBasis, Monomial, Polynomial};
use crate::complex::{DegreeSlice, FilteredComplex};
use crate::error::{Error, Result};
use crate::linalg::{qvec_from_map, ColumnMatrix};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// d(v) contains a term of the wrong degree.
    Degree { generator: String, expected: u32, found: u32 },
    /// d(v) has a term of word length below 2.
    NotMinimal { generator: String, word_length: u32 },
    /// d(d(v)) ≠ 0.
    SquareNonzero { generator: String },
    /// Differential given for an unknown generator or with foreign monomials.
    Mismatch { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { generator, expected, found } => write!(
                f,
                "d({generator}) has a term of degree {found}, expected {expected}"
            ),
            Violation::NotMinimal { generator, word_length } => write!(
                f,
                "minimality: d({generator}) has a term of word length {word_length} (must be >= 2)"
            ),
            Violation::SquareNonzero { generator } => write!(f, "d(d({generator})) != 0"),
            Violation::Mismatch { detail } => write!(f, "{detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A free CDGA given by its generators and the differential on each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    algebra: FreeAlgebra,
    differential: Vec<Polynomial>,
}

/// d = Σ_{i≥k} d_i with d_i(V) ⊆ Λ^i V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordDecomposition {
    pub k: u32,
    /// `parts[i][g]` is d_i applied to generator `g`.
    pub parts: BTreeMap<u32, Vec<Polynomial>>,
}

impl SullivanModel {
    /// Assembles a model without validating it; see [`SullivanModel::validated`].
    pub fn new(generators: Vec<Generator>, differential: Vec<Polynomial>) -> Result<Self> {
        let algebra = FreeAlgebra::new(generators)?;
        if differential.len() != algebra.num_generators() {
            return Err(Error::ModelMismatch {
                expected: algebra.num_generators(),
                found: differential.len(),
            });
        }
        Ok(SullivanModel { algebra, differential })
    }

    pub fn validated(generators: Vec<Generator>, differential: Vec<Polynomial>) -> Result<Self> {
        let m = SullivanModel::new(generators, differential)?;
        let report = m.validate();
        if report.is_valid() {
            Ok(m)
        } else {
            Err(Error::InvalidModel(report.violations))
        }
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn differential_of(&self, i: usize) -> &Polynomial {
        &self.differential[i]
    }

    pub fn differentials(&self) -> &[Polynomial] {
        &self.differential
    }

    pub fn is_zero_differential(&self) -> bool {
        self.differential.iter().all(Polynomial::is_zero)
    }

    pub fn num_odd(&self) -> usize {
        self.generators().iter().filter(|g| g.is_odd()).count()
    }

    pub fn num_even(&self) -> usize {
        self.generators().len() - self.num_odd()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, g) in self.generators().iter().enumerate() {
            let dv = &self.differential[i];
            if let Err(e) = self.algebra.check(dv) {
                violations.push(Violation::Mismatch { detail: alloc::format!("d({}): {e}", g.name) });
                continue;
            }
            let mut structural = false;
            for (m, _) in dv.terms() {
                let deg = self.algebra.monomial_degree(m);
                if deg != g.degree + 1 {
                    violations.push(Violation::Degree {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found: deg,
                    });
                    structural = true;
                    break;
                }
            }
            if let Some(wl) = dv.min_word_length() {
                if wl < 2 {
                    violations.push(Violation::NotMinimal { generator: g.name.clone(), word_length: wl });
                }
            }
            if !structural && !self.extend_derivation(dv).is_zero() {
                violations.push(Violation::SquareNonzero { generator: g.name.clone() });
            }
        }
        ValidationReport { violations }
    }

    /// The unique derivation extending d, applied to an arbitrary element:
    /// d(ab) = d(a) b + (-1)^{|a|} a d(b).
    pub fn extend_derivation(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let dm = self.derivation_on_monomial(m);
            out.add_assign_scaled(&dm, c);
        }
        out
    }

    pub fn derivation_on_monomial(&self, m: &Monomial) -> Polynomial {
        let a = &self.algebra;
        let n = a.num_generators();
        let mut out = Polynomial::zero();
        let mut prefix = alloc::vec![0u32; n];
        let mut prefix_degree = 0u32;
        for i in 0..n {
            let e = m.exponents()[i];
            if e > 0 && !self.differential[i].is_zero() {
                let mut rest = alloc::vec![0u32; n];
                rest[i] = e - 1;
                rest[i + 1..].copy_from_slice(&m.exponents()[i + 1..]);
                let left = Polynomial::monomial(Monomial::from_exponents(prefix.clone()), Rational::one());
                let right = Polynomial::monomial(Monomial::from_exponents(rest), Rational::one());
                // x^e with x even differentiates to e x^{e-1} dx; odd x has e = 1
                let term = a.multiply_unchecked(&a.multiply_unchecked(&left, &self.differential[i]), &right);
                let mut coeff = Rational::from_integer(e.into());
                if prefix_degree % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_assign_scaled(&term, &coeff);
            }
            prefix[i] = e;
            prefix_degree += e * a.degree_of(i);
        }
        out
    }

    /// Word-length decomposition; `k = 2` with all parts zero when d = 0.
    pub fn extract_k(&self) -> WordDecomposition {
        let n = self.generators().len();
        let mut parts: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
        for (g, dv) in self.differential.iter().enumerate() {
            for (i, comp) in dv.word_components() {
                parts.entry(i).or_insert_with(|| alloc::vec![Polynomial::zero(); n])[g] = comp;
            }
        }
        let k = parts.keys().next().copied().unwrap_or(2);
        WordDecomposition { k, parts }
    }

    fn with_differential(&self, differential: Vec<Polynomial>) -> SullivanModel {
        SullivanModel { algebra: self.algebra.clone(), differential }
    }

    /// The model (ΛV, d_k) of the lowest word-length part of d.
    pub fn lowest_part_model(&self) -> SullivanModel {
        let dec = self.extract_k();
        let n = self.generators().len();
        let dk = dec.parts.get(&dec.k).cloned().unwrap_or_else(|| alloc::vec![Polynomial::zero(); n]);
        let m = self.with_differential(dk);
        debug_assert!(m.validate().is_valid(), "d_k must square to zero");
        m
    }

    /// The pure model d_σ: zero on even generators, the ΛV^even part of d on odd ones.
    pub fn pure_model(&self) -> SullivanModel {
        let a = &self.algebra;
        let differential = self
            .differential
            .iter()
            .enumerate()
            .map(|(i, dv)| {
                if a.is_odd(i) {
                    dv.filter(|m| a.is_even_monomial(m))
                } else {
                    Polynomial::zero()
                }
            })
            .collect();
        let m = self.with_differential(differential);
        assert!(
            m.generators()
                .iter()
                .enumerate()
                .all(|(i, _)| m.extend_derivation(&m.differential[i]).is_zero()),
            "pure part of a differential must square to zero"
        );
        m
    }

    pub fn is_pure(&self) -> bool {
        let a = &self.algebra;
        self.differential.iter().enumerate().all(|(i, dv)| {
            if a.is_odd(i) {
                dv.terms().all(|(m, _)| a.is_even_monomial(m))
            } else {
                dv.is_zero()
            }
        })
    }

    /// Σ|odd generators| − Σ(|even generators| − 1).
    pub fn formal_dimension_candidate(&self) -> i64 {
        self.generators()
            .iter()
            .map(|g| {
                if g.is_odd() {
                    i64::from(g.degree)
                } else {
                    -(i64::from(g.degree) - 1)
                }
            })
            .sum()
    }

    /// Matrix of d from degree `n` to degree `n + 1` in the monomial bases.
    pub fn differential_matrix(&self, source: &GradedBasis, target: &GradedBasis) -> ColumnMatrix {
        let columns = source
            .monomials
            .iter()
            .map(|m| {
                let dm = self.derivation_on_monomial(m);
                qvec_from_map(
                    dm.terms()
                        .map(|(t, c)| (target.index_of(t).expect("degree-homogeneous differential"), c.clone()))
                        .collect(),
                )
            })
            .collect();
        ColumnMatrix { nrows: target.len(), columns }
    }

    /// (ΛV, d) in degrees `0..=max_degree`, filtered by word length, with one
    /// extra slice on top so that filtration data of the target is available.
    pub fn cochain_complex(&self, max_degree: u32) -> FilteredComplex {
        let mut c = FilteredComplex::new();
        let mut basis = self.algebra.basis(0);
        for n in 0..=max_degree + 1 {
            let next = self.algebra.basis(n + 1);
            let slice = DegreeSlice {
                weights: basis.monomials.iter().map(Monomial::word_length).collect(),
                differential: self.differential_matrix(&basis, &next),
            };
            c.insert(i64::from(n), slice);
            basis = next;
        }
        c
    }

    /// Builds a coordinate vector of a homogeneous element in its degree basis.
    pub fn to_coordinates(&self, basis: &GradedBasis, p: &Polynomial) -> Result<crate::linalg::QVec> {
        let mut v = BTreeMap::new();
        for (m, c) in p.terms() {
            let i = basis.index_of(m).ok_or_else(|| {
                Error::ContractViolation(alloc::format!("element is not homogeneous of degree {}", basis.degree))
            })?;
            v.insert(i, c.clone());
        }
        Ok(qvec_from_map(v))
    }

    pub fn from_coordinates(basis: &GradedBasis, v: &[(usize, Rational)]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in v {
            p.add_term(basis.monomials[*i].clone(), c.clone());
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use alloc::vec;

    #[test]
    fn sphere_is_valid() {
        assert!(corpus::s2().validate().is_valid());
    }

    #[test]
    fn linear_differential_is_not_minimal() {
        let a = corpus::algebra(&[("x", 2), ("y", 3)]);
        let m = SullivanModel::new(a.generators().to_vec(), vec![Polynomial::zero(), a.generator(0)]).unwrap();
        let r = m.validate();
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotMinimal { word_length: 1, .. })));
    }

    #[test]
    fn nonzero_square_is_rejected() {
        // dy = x², dz = x y: d(dz) = x·x² ≠ 0
        let a = corpus::algebra(&[("x", 2), ("y", 3), ("z", 4)]);
        let x = a.generator(0);
        let y = a.generator(1);
        let m = SullivanModel::new(
            a.generators().to_vec(),
            vec![Polynomial::zero(), a.power(&x, 2), a.multiply(&x, &y).unwrap()],
        )
        .unwrap();
        let r = m.validate();
        assert_eq!(r.violations, vec![Violation::SquareNonzero { generator: "z".into() }]);
        assert_eq!(m.extend_derivation(m.differential_of(2)), a.power(&x, 3));
    }

    #[test]
    fn leibniz_examples() {
        let m = corpus::s2();
        let a = m.algebra();
        let (x, y) = (a.generator(0), a.generator(1));
        assert!(m.extend_derivation(&a.power(&x, 2)).is_zero());
        assert_eq!(m.extend_derivation(&a.multiply(&x, &y).unwrap()), a.power(&x, 3));
        // y z with both odd: (dy) z - y (dz)
        let m = corpus::s2_times_s2();
        let a = m.algebra();
        let (y, z) = (a.generator(2), a.generator(3));
        let lhs = m.extend_derivation(&a.multiply(&y, &z).unwrap());
        let rhs = a
            .multiply(m.differential_of(2), &z)
            .unwrap()
            .sub(&a.multiply(&y, m.differential_of(3)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_examples() {
        assert_eq!(corpus::s2().extract_k().k, 2);
        assert_eq!(corpus::cp3().extract_k().k, 4);
        let mixed = corpus::mixed_a2_y3_z5();
        let dec = mixed.extract_k();
        assert_eq!(dec.k, 2);
        let a = mixed.algebra();
        let al = a.generator(0);
        assert_eq!(dec.parts[&2][1], a.power(&al, 2));
        assert_eq!(dec.parts[&3][2], a.power(&al, 3));
        assert_eq!(corpus::s3().extract_k().k, 2);
        assert!(corpus::s3().extract_k().parts.is_empty());
    }

    #[test]
    fn pure_model_examples() {
        let s2 = corpus::s2();
        assert_eq!(s2.pure_model(), s2);
        let np = corpus::nonpure_a2_u3_v3_w7();
        assert!(!np.is_pure());
        let pure = np.pure_model();
        let a = np.algebra();
        assert_eq!(pure.differential_of(3), &a.power(&a.generator(0), 4));
        assert!(pure.is_pure());
        assert!(corpus::s3().is_pure());
        assert_eq!(corpus::s3().pure_model(), corpus::s3());
        assert!(corpus::a2b2y5z5().is_pure());
    }

    #[test]
    fn formal_dimension_examples() {
        assert_eq!(corpus::s2().formal_dimension_candidate(), 2);
        assert_eq!(corpus::a2b2y5z5().formal_dimension_candidate(), 8);
        assert_eq!(corpus::cp3().formal_dimension_candidate(), 6);
    }
}
