//! Cohomology of (ΛV, d) degree by degree, ellipticity certificates and the
//! fundamental class.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{FreeAlgebra, GradedBasis, Monomial, Polynomial};
use crate::complex::{FilteredComplex, Level};
use crate::error::{Error, Result};
use crate::linalg::{span_rank, QVec};
use crate::model::SullivanModel;
use crate::Rational;

/// A cohomology class given by a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: u32,
    pub representative: Polynomial,
}

/// Cohomology of a model in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    model: SullivanModel,
    max_degree: u32,
    complex: FilteredComplex,
    bases: Vec<GradedBasis>,
}

impl Cohomology {
    pub fn new(model: &SullivanModel, max_degree: u32) -> Self {
        let complex = model.cochain_complex(max_degree);
        let bases = (0..=max_degree + 1).map(|n| model.algebra().basis(n)).collect();
        Cohomology { model: model.clone(), max_degree, complex, bases }
    }

    pub fn model(&self) -> &SullivanModel {
        &self.model
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    pub fn basis_of(&self, n: u32) -> &GradedBasis {
        &self.bases[n as usize]
    }

    fn check_degree(&self, n: u32) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::Truncation { required_cap: n });
        }
        Ok(())
    }

    /// dim ker(d|n) − rank(d|n−1).
    pub fn dim(&self, n: u32) -> usize {
        assert!(n <= self.max_degree, "degree {n} beyond cap {}", self.max_degree);
        self.complex.cohomology_dim(i64::from(n))
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|n| self.dim(n)).collect()
    }

    pub fn coordinates(&self, p: &Polynomial, n: u32) -> Result<QVec> {
        self.model.to_coordinates(self.basis_of(n), p)
    }

    pub fn polynomial(&self, n: u32, v: &[(usize, Rational)]) -> Polynomial {
        SullivanModel::from_coordinates(self.basis_of(n), v)
    }

    /// Pairwise non-cohomologous cocycles spanning `H^n`.
    pub fn basis(&self, n: u32) -> Result<Vec<CohomologyClass>> {
        self.check_degree(n)?;
        Ok(self
            .complex
            .cohomology_basis(i64::from(n))
            .iter()
            .map(|v| CohomologyClass { degree: n, representative: self.polynomial(n, v) })
            .collect())
    }

    pub fn is_exact(&self, n: u32, p: &Polynomial) -> Result<bool> {
        self.check_degree(n)?;
        let v = self.coordinates(p, n)?;
        Ok(self.complex.is_coboundary(i64::from(n), &v))
    }

    /// Equality of classes, decided by solving d x = a − b.
    pub fn same_class(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<bool> {
        if a.degree != b.degree {
            return Ok(a.representative.is_zero() && b.representative.is_zero());
        }
        self.is_exact(a.degree, &a.representative.sub(&b.representative))
    }

    /// Largest p such that the class has a representative in Λ^{≥p}V.
    pub fn max_wordlength_representative(&self, cls: &CohomologyClass) -> Result<Level> {
        self.check_degree(cls.degree)?;
        let v = self.coordinates(&cls.representative, cls.degree)?;
        if !self.model.extend_derivation(&cls.representative).is_zero() {
            return Err(Error::ContractViolation("representative is not a cocycle".into()));
        }
        Ok(self.complex.max_level_of_class(i64::from(cls.degree), &v))
    }
}

pub fn cohomology_dim(model: &SullivanModel, n: u32) -> usize {
    Cohomology::new(model, n).dim(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ellipticity {
    Elliptic,
    NonElliptic,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticityCertificate {
    pub status: Ellipticity,
    pub formal_dimension: i64,
    /// Set when the verdict rests on a finite cohomology window only.
    pub heuristic: bool,
    pub evidence: String,
}

impl EllipticityCertificate {
    pub fn is_elliptic(&self) -> bool {
        self.status == Ellipticity::Elliptic
    }

    /// Formal dimension of a certified-elliptic model.
    pub fn dimension(&self) -> Option<u32> {
        self.is_elliptic().then_some(self.formal_dimension as u32)
    }
}

/// Dimensions of ΛQ/(d y_1, …, d y_m) in degrees `0..=top`, for a pure model.
fn even_quotient_dims(pure: &SullivanModel, top: u32) -> Vec<usize> {
    let a = pure.algebra();
    let even: Vec<usize> = (0..a.num_generators()).filter(|&i| !a.is_odd(i)).collect();
    let sub = FreeAlgebra::new(even.iter().map(|&i| a.generators()[i].clone()).collect())
        .expect("subset of valid generators");
    let restrict = |m: &Monomial| Monomial::from_exponents(even.iter().map(|&i| m.exponents()[i]).collect());
    let relations: Vec<(u32, Polynomial)> = (0..a.num_generators())
        .filter(|&i| a.is_odd(i) && !pure.differential_of(i).is_zero())
        .map(|i| {
            let mut p = Polynomial::zero();
            for (m, c) in pure.differential_of(i).terms() {
                p.add_term(restrict(m), c.clone());
            }
            (a.degree_of(i) + 1, p)
        })
        .collect();
    (0..=top)
        .map(|m| {
            let basis = sub.basis(m);
            let mut spans: Vec<QVec> = Vec::new();
            for (deg, rel) in &relations {
                if *deg > m {
                    continue;
                }
                for mono in sub.basis(m - deg).monomials {
                    let prod = sub.multiply_unchecked(&Polynomial::monomial(mono, Rational::from_integer(1.into())), rel);
                    spans.push(
                        prod.terms()
                            .map(|(t, c)| (basis.index_of(t).unwrap(), c.clone()))
                            .collect::<alloc::collections::BTreeMap<_, _>>()
                            .into_iter()
                            .collect(),
                    );
                }
            }
            basis.len() - span_rank(spans.iter())
        })
        .collect()
}

/// Decides ellipticity.
///
/// The even quotient ΛQ/(d_σ P) of the pure model is finite-dimensional iff
/// the model is elliptic. If the quotient vanishes in `D` consecutive degrees
/// (`D` the largest even generator degree) it vanishes above them; it is the
/// bottom row of H(ΛV, d_σ), so it must vanish above the formal dimension N
/// when the model is elliptic. Scanning degrees up to `N + D` therefore always
/// decides. Non-pure models are decided through their pure model (finite
/// cohomology of d and of d_σ are equivalent); the cohomology window above N
/// is additionally checked for every model.
pub fn certify_ellipticity(model: &SullivanModel) -> EllipticityCertificate {
    let n = model.formal_dimension_candidate();
    let pure = model.pure_model();
    let a = model.algebra();
    let width = (0..a.num_generators())
        .filter(|&i| !a.is_odd(i))
        .map(|i| a.degree_of(i))
        .max()
        .unwrap_or(1);
    let lo = (n + 1).max(0) as u32;
    let hi = lo + width - 1;
    let dims = even_quotient_dims(&pure, hi);
    let survivor = (lo..=hi).find(|&m| dims[m as usize] != 0);
    let mut evidence = if model.is_pure() {
        String::new()
    } else {
        String::from("decided on the pure model; ")
    };
    if let Some(m) = survivor {
        evidence.push_str(&format!(
            "even quotient nonzero in degree {m} above formal dimension {n}"
        ));
        return EllipticityCertificate {
            status: Ellipticity::NonElliptic,
            formal_dimension: n,
            heuristic: false,
            evidence,
        };
    }
    evidence.push_str(&format!("even quotient vanishes in degrees {lo}..={hi}"));
    // cohomology window check: dim H^N = 1, H^i = 0 on (N, N + max generator degree]
    let top = n as u32 + a.max_generator_degree();
    let coh = Cohomology::new(model, top);
    let top_dim = coh.dim(n as u32);
    let above_zero = (n as u32 + 1..=top).all(|i| coh.dim(i) == 0);
    if top_dim != 1 || !above_zero {
        evidence.push_str(&format!("; window check failed (dim H^{n} = {top_dim})"));
        return EllipticityCertificate {
            status: Ellipticity::Undetermined,
            formal_dimension: n,
            heuristic: false,
            evidence,
        };
    }
    evidence.push_str(&format!("; dim H^{n} = 1, H^i = 0 for {} <= i <= {top}", n + 1));
    EllipticityCertificate { status: Ellipticity::Elliptic, formal_dimension: n, heuristic: false, evidence }
}

/// A cocycle spanning the one-dimensional top cohomology `H^N`.
pub fn fundamental_class(model: &SullivanModel, n: u32) -> Result<CohomologyClass> {
    let coh = Cohomology::new(model, n);
    fundamental_class_in(&coh, n)
}

pub fn fundamental_class_in(coh: &Cohomology, n: u32) -> Result<CohomologyClass> {
    let basis = coh.basis(n)?;
    if basis.len() != 1 {
        return Err(Error::NotPoincare { degree: i64::from(n), dimension: basis.len() });
    }
    Ok(basis.into_iter().next().unwrap())
}

/// Degree cap used when none is given: 2N + 2 for elliptic models.
pub fn default_max_degree(cert: &EllipticityCertificate) -> Result<u32> {
    cert.dimension().map(|n| 2 * n + 2).ok_or(Error::CapRequired)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn poly_of(model: &SullivanModel, terms: &[(i64, &[(usize, u32)])]) -> Polynomial {
        corpus::poly(model.generators().len(), terms)
    }

    #[test]
    fn sphere_dims() {
        let coh = Cohomology::new(&corpus::s2(), 6);
        assert_eq!(coh.dims(), vec![1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn zero_differential_dims_equal_algebra_dims() {
        let m = corpus::s2_times_s2();
        let free = SullivanModel::new(m.generators().to_vec(), vec![Polynomial::zero(); 4]).unwrap();
        let coh = Cohomology::new(&free, 8);
        for n in 0..=8 {
            assert_eq!(coh.dim(n), free.algebra().basis(n).len());
        }
    }

    #[test]
    fn top_class_of_truncated_polynomials() {
        assert_eq!(cohomology_dim(&corpus::a2b2y5z5(), 8), 1);
    }

    #[test]
    fn basis_examples() {
        let m = corpus::s2();
        let coh = Cohomology::new(&m, 4);
        let b2 = coh.basis(2).unwrap();
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0].representative, m.algebra().generator(0));
        assert!(coh.basis(4).unwrap().is_empty());
        assert_eq!(coh.basis(0).unwrap()[0].representative, m.algebra().one());
    }

    #[test]
    fn ellipticity_examples() {
        let c = certify_ellipticity(&corpus::s2());
        assert_eq!((c.status, c.formal_dimension), (Ellipticity::Elliptic, 2));
        let c = certify_ellipticity(&corpus::polynomial_x2());
        assert_eq!(c.status, Ellipticity::NonElliptic);
        let c = certify_ellipticity(&corpus::a2b2y5z5());
        assert_eq!((c.status, c.formal_dimension), (Ellipticity::Elliptic, 8));
        let c = certify_ellipticity(&corpus::nonpure_a2_u3_v3_w7());
        assert_eq!((c.status, c.formal_dimension), (Ellipticity::Elliptic, 12));
        // Λ(a₂, b₂, y₃), dy = ab: b and a survive forever
        let m = corpus::model(&[("a", 2), ("b", 2), ("y", 3)], &[(2, &[(1, &[(0, 1), (1, 1)])])]);
        assert_eq!(certify_ellipticity(&m).status, Ellipticity::NonElliptic);
    }

    #[test]
    fn fundamental_class_examples() {
        let m = corpus::s2();
        assert_eq!(fundamental_class(&m, 2).unwrap().representative, m.algebra().generator(0));
        let m = corpus::s2_times_s2();
        let ab = poly_of(&m, &[(1, &[(0, 1), (1, 1)])]);
        let w = fundamental_class(&m, 4).unwrap();
        let coh = Cohomology::new(&m, 4);
        assert!(coh.same_class(&w, &CohomologyClass { degree: 4, representative: ab.clone() }).unwrap()
            || coh.same_class(&w, &CohomologyClass { degree: 4, representative: ab.neg() }).unwrap());
        assert_eq!(w.representative, ab);
        let m = corpus::a2b2y5z5();
        let a2b2 = poly_of(&m, &[(1, &[(0, 2), (1, 2)])]);
        assert_eq!(fundamental_class(&m, 8).unwrap().representative, a2b2);
        assert!(matches!(
            fundamental_class(&corpus::s2(), 3),
            Err(Error::NotPoincare { degree: 3, dimension: 0 })
        ));
    }

    #[test]
    fn word_length_floor_examples() {
        for (m, n, expected) in [
            (corpus::s2(), 2, 1),
            (corpus::a2b2y5z5(), 8, 4),
            (corpus::cp3(), 6, 3),
            (corpus::s2_times_s2(), 4, 2),
            (corpus::s3(), 3, 1),
        ] {
            let coh = Cohomology::new(&m, n);
            let w = fundamental_class_in(&coh, n).unwrap();
            assert_eq!(coh.max_wordlength_representative(&w).unwrap(), Level::At(expected));
        }
    }
}
