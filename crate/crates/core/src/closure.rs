//! The acyclic closure (ΛV ⊗ Γ(sV), D), truncated in degree.
//!
//! Γ(sV) has one generator `sv` of degree `|v| - 1` per generator `v` of V.
//! For `v` even, `sv` is odd and exterior; for `v` odd, `sv` is even and
//! generates divided powers `γ^[e](sv)` with `γ^[i] γ^[j] = C(i+j, i) γ^[i+j]`.
//! A basis element `a ⊗ γ` is written with the ΛV factor first, and
//! `(a ⊗ γ)(b ⊗ γ') = (-1)^{|γ||b|} ab ⊗ γγ'`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{FreeAlgebra, Monomial, Polynomial};
use crate::complex::{DegreeSlice, FilteredComplex};
use crate::error::{Error, Result};
use crate::linalg::{qvec_from_map, solve_combination, ColumnMatrix, QVec};
use crate::model::SullivanModel;
use crate::Rational;

/// The suspension `sv` of a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspendedGenerator {
    pub source: usize,
    pub degree: u32,
    pub odd: bool,
}

/// Exponent vector on the suspended generators; entries on odd ones are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaMonomial(Vec<u32>);

impl GammaMonomial {
    pub fn one(n: usize) -> Self {
        GammaMonomial(vec![0; n])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        GammaMonomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of suspended factors, counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }
}

pub type Term = (Monomial, GammaMonomial);

/// An element of ΛV ⊗ Γ(sV).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureElement {
    terms: BTreeMap<Term, Rational>,
}

impl ClosureElement {
    pub fn zero() -> Self {
        ClosureElement::default()
    }

    pub fn term(a: Monomial, g: GammaMonomial, c: Rational) -> Self {
        let mut e = ClosureElement::zero();
        e.add_term(a, g, c);
        e
    }

    /// `p ⊗ 1`.
    pub fn from_polynomial(p: &Polynomial, n: usize) -> Self {
        let mut e = ClosureElement::zero();
        for (m, c) in p.terms() {
            e.add_term(m.clone(), GammaMonomial::one(n), c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, a: &Monomial, g: &GammaMonomial) -> Rational {
        self.terms.get(&(a.clone(), g.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, a: Monomial, g: GammaMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (a, g);
        let sum = match self.terms.get(&key) {
            Some(old) => old + c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &ClosureElement, s: &Rational) {
        for ((a, g), c) in &other.terms {
            self.add_term(a.clone(), g.clone(), c * s);
        }
    }

    pub fn sub(&self, other: &ClosureElement) -> ClosureElement {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }

    pub fn neg(&self) -> ClosureElement {
        let mut out = ClosureElement::zero();
        out.add_assign_scaled(self, &-Rational::one());
        out
    }

    /// The part with trivial Γ factor, as a polynomial.
    pub fn lambda_part(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for ((a, g), c) in &self.terms {
            if g.is_one() {
                p.add_term(a.clone(), c.clone());
            }
        }
        p
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Multiplication tables for ΛV ⊗ Γ(sV).
#[derive(Clone, Debug)]
pub struct ClosureAlgebra {
    algebra: FreeAlgebra,
    suspended: Vec<SuspendedGenerator>,
}

impl ClosureAlgebra {
    pub fn new(algebra: &FreeAlgebra) -> Self {
        let suspended = (0..algebra.num_generators())
            .map(|i| SuspendedGenerator { source: i, degree: algebra.degree_of(i) - 1, odd: !algebra.is_odd(i) })
            .collect();
        ClosureAlgebra { algebra: algebra.clone(), suspended }
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn suspended(&self) -> &[SuspendedGenerator] {
        &self.suspended
    }

    pub fn num_generators(&self) -> usize {
        self.suspended.len()
    }

    pub fn gamma_degree(&self, g: &GammaMonomial) -> u32 {
        g.0.iter().zip(&self.suspended).map(|(e, s)| e * s.degree).sum()
    }

    pub fn gamma_is_odd(&self, g: &GammaMonomial) -> bool {
        self.gamma_degree(g) % 2 == 1
    }

    pub fn suspension(&self, i: usize, e: u32) -> GammaMonomial {
        let mut x = vec![0; self.num_generators()];
        x[i] = e;
        GammaMonomial(x)
    }

    pub fn term_degree(&self, (a, g): &Term) -> u32 {
        self.algebra.monomial_degree(a) + self.gamma_degree(g)
    }

    /// Product in Γ(sV) with its coefficient (sign and binomials), `None` if zero.
    pub fn gamma_multiply(&self, g: &GammaMonomial, h: &GammaMonomial) -> Option<(BigInt, GammaMonomial)> {
        let n = self.num_generators();
        let mut coeff = BigInt::one();
        let mut negative = false;
        let mut odd_after = 0u32;
        let mut e = vec![0u32; n];
        for i in (0..n).rev() {
            let (x, y) = (g.0[i], h.0[i]);
            if self.suspended[i].odd {
                if x + y > 1 {
                    return None;
                }
                if y == 1 && odd_after % 2 == 1 {
                    negative = !negative;
                }
                odd_after += x;
            } else if x > 0 && y > 0 {
                coeff *= binomial(x + y, x);
            }
            e[i] = x + y;
        }
        if negative {
            coeff = -coeff;
        }
        Some((coeff, GammaMonomial(e)))
    }

    /// `(a ⊗ g)(b ⊗ h)`.
    pub fn multiply_terms(&self, (a, g): &Term, (b, h): &Term) -> Option<(Rational, Term)> {
        let (neg, ab) = self.algebra.multiply_monomials(a, b)?;
        let (c, gh) = self.gamma_multiply(g, h)?;
        let mut c = Rational::from_integer(c);
        let flip = self.gamma_is_odd(g) && self.algebra.monomial_degree(b) % 2 == 1;
        if neg != flip {
            c = -c;
        }
        Some((c, (ab, gh)))
    }

    pub fn multiply(&self, x: &ClosureElement, y: &ClosureElement) -> ClosureElement {
        let mut out = ClosureElement::zero();
        for (s, cs) in &x.terms {
            for (t, ct) in &y.terms {
                if let Some((c, (a, g))) = self.multiply_terms(s, t) {
                    out.add_term(a, g, c * cs * ct);
                }
            }
        }
        out
    }

    fn left_term(&self, s: &Term, x: &ClosureElement) -> ClosureElement {
        let mut out = ClosureElement::zero();
        for (t, ct) in &x.terms {
            if let Some((c, (a, g))) = self.multiply_terms(s, t) {
                out.add_term(a, g, c * ct);
            }
        }
        out
    }

    fn right_term(&self, x: &ClosureElement, t: &Term) -> ClosureElement {
        let mut out = ClosureElement::zero();
        for (s, cs) in &x.terms {
            if let Some((c, (a, g))) = self.multiply_terms(s, t) {
                out.add_term(a, g, c * cs);
            }
        }
        out
    }

    /// Γ(sV) basis of the given degree.
    pub fn gamma_basis(&self, degree: u32) -> Vec<GammaMonomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.num_generators()];
        self.enumerate(0, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<GammaMonomial>) {
        if i == cur.len() {
            if remaining == 0 {
                out.push(GammaMonomial(cur.clone()));
            }
            return;
        }
        let s = &self.suspended[i];
        let max_e = if s.odd { (remaining / s.degree).min(1) } else { remaining / s.degree };
        for e in 0..=max_e {
            cur[i] = e;
            self.enumerate(i + 1, remaining - e * s.degree, cur, out);
        }
        cur[i] = 0;
    }

    /// Basis of (ΛV ⊗ Γ(sV))^n, sorted.
    pub fn basis(&self, n: u32) -> Vec<Term> {
        let mut out = Vec::new();
        for gd in 0..=n {
            let gammas = self.gamma_basis(gd);
            if gammas.is_empty() {
                continue;
            }
            let lambda = self.algebra.basis(n - gd);
            for g in &gammas {
                for a in &lambda.monomials {
                    out.push((a.clone(), g.clone()));
                }
            }
        }
        out.sort();
        out
    }
}

/// How D(sv) was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// D(sv) = v − s(dv) with the averaged suspension s.
    Explicit,
    /// D(sv) = v − c with D(c) = dv solved degree by degree.
    Inductive,
}

#[derive(Clone, Debug)]
pub struct AcyclicClosure {
    model: SullivanModel,
    structure: ClosureAlgebra,
    cap: u32,
    construction: Construction,
    d_suspended: Vec<Option<ClosureElement>>,
    d_gamma: BTreeMap<GammaMonomial, ClosureElement>,
}

/// The averaged suspension of an element of ΛV^even: each word-length-k
/// component `p` goes to `(1/k) Σ_i ∂p/∂x_i ⊗ sx_i`.
pub fn suspend_s(model: &SullivanModel, p: &Polynomial) -> Result<ClosureElement> {
    let a = model.algebra();
    let n = a.num_generators();
    let mut out = ClosureElement::zero();
    for (m, c) in p.terms() {
        if !a.is_even_monomial(m) {
            return Err(Error::Unsupported(format!(
                "suspension of a term with odd generators: {}",
                a.display(&Polynomial::monomial(m.clone(), c.clone()))
            )));
        }
        let k = m.word_length();
        if k == 0 {
            return Err(Error::Unsupported("suspension of a constant".into()));
        }
        for i in 0..n {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut rest = m.exponents().to_vec();
            rest[i] -= 1;
            let mut gamma = vec![0u32; n];
            gamma[i] = 1;
            let coeff = c * Rational::new(BigInt::from(e), BigInt::from(k));
            out.add_term(Monomial::from_exponents(rest), GammaMonomial(gamma), coeff);
        }
    }
    Ok(out)
}

impl AcyclicClosure {
    /// Closure with D defined on every element of degree `<= cap + 1`.
    ///
    /// Pure models use the explicit suspension; other models are solved
    /// inductively.
    pub fn build(model: &SullivanModel, cap: u32) -> Result<Self> {
        let construction = if model.is_pure() { Construction::Explicit } else { Construction::Inductive };
        Self::build_with(model, cap, construction)
    }

    pub fn build_with(model: &SullivanModel, cap: u32, construction: Construction) -> Result<Self> {
        let structure = ClosureAlgebra::new(model.algebra());
        let n = structure.num_generators();
        let mut closure = AcyclicClosure {
            model: model.clone(),
            structure,
            cap,
            construction,
            d_suspended: vec![None; n],
            d_gamma: BTreeMap::new(),
        };
        let mut order: Vec<usize> = (0..n).filter(|&i| model.algebra().degree_of(i) <= cap + 2).collect();
        order.sort_by_key(|&i| (model.algebra().degree_of(i), i));
        for i in order {
            let dsv = match construction {
                Construction::Explicit => closure.explicit_generator(i)?,
                Construction::Inductive => closure.inductive_generator(i)?,
            };
            closure.d_suspended[i] = Some(dsv);
        }
        closure.fill_gamma_table();
        Ok(closure)
    }

    fn unit_term(&self, i: usize) -> ClosureElement {
        ClosureElement::from_polynomial(&self.model.algebra().generator(i), self.structure.num_generators())
    }

    fn explicit_generator(&mut self, i: usize) -> Result<ClosureElement> {
        let v = self.unit_term(i);
        let dv = self.model.differential_of(i);
        if dv.is_zero() {
            return Ok(v);
        }
        let s = suspend_s(&self.model, dv)?;
        for candidate in [v.sub(&s), v.sub(&s.neg())] {
            self.d_suspended[i] = Some(candidate.clone());
            let dd = self.apply(&candidate);
            self.d_suspended[i] = None;
            if dd.is_zero() {
                return Ok(candidate);
            }
        }
        self.inductive_generator(i)
    }

    fn inductive_generator(&mut self, i: usize) -> Result<ClosureElement> {
        let v = self.unit_term(i);
        let dv = self.model.differential_of(i);
        if dv.is_zero() {
            return Ok(v);
        }
        let deg = self.model.algebra().degree_of(i);
        // unknowns: a ⊗ γ with a ∈ Λ⁺V and γ ∈ Γ⁺ of total degree |v|
        let unknowns: Vec<Term> = self
            .structure
            .basis(deg)
            .into_iter()
            .filter(|(a, g)| !a.is_one() && !g.is_one())
            .collect();
        let target_basis = self.structure.basis(deg + 1);
        let index: BTreeMap<&Term, usize> = target_basis.iter().enumerate().map(|(j, t)| (t, j)).collect();
        let to_vec = |e: &ClosureElement| -> QVec {
            qvec_from_map(e.terms().map(|(t, c)| (index[t], c.clone())).collect())
        };
        let columns: Vec<QVec> = unknowns
            .iter()
            .map(|t| to_vec(&self.apply(&ClosureElement::term(t.0.clone(), t.1.clone(), Rational::one()))))
            .collect();
        let target = to_vec(&ClosureElement::from_polynomial(dv, self.structure.num_generators()));
        let x = solve_combination(&columns, &target).ok_or_else(|| {
            Error::ContractViolation(format!(
                "no correction for D(s{}) in degree {deg}",
                self.model.generators()[i].name
            ))
        })?;
        let mut out = v;
        for (t, c) in unknowns.iter().zip(x) {
            out.add_term(t.0.clone(), t.1.clone(), -c);
        }
        Ok(out)
    }

    fn fill_gamma_table(&mut self) {
        self.d_gamma.clear();
        for deg in 1..=self.cap + 1 {
            for g in self.structure.gamma_basis(deg) {
                if let Some(dg) = self.compute_d_gamma(&g) {
                    self.d_gamma.insert(g, dg);
                }
            }
        }
    }

    /// D(1 ⊗ γ) from D(sv) by the Γ-derivation rule, `None` if some D(sv) is missing.
    fn compute_d_gamma(&self, g: &GammaMonomial) -> Option<ClosureElement> {
        if g.is_one() {
            return Some(ClosureElement::zero());
        }
        if let Some(known) = self.d_gamma.get(g) {
            return Some(known.clone());
        }
        let n = self.structure.num_generators();
        let i = g.0.iter().position(|&e| e > 0).unwrap();
        let e = g.0[i];
        let dsv = self.d_suspended[i].as_ref()?;
        let one = Monomial::one(self.model.algebra().num_generators());
        // D(γ^[e](sv)) = D(sv) γ^[e−1](sv)
        let d_head = if e == 1 {
            dsv.clone()
        } else {
            self.structure.right_term(dsv, &(one.clone(), self.structure.suspension(i, e - 1)))
        };
        let head = self.structure.suspension(i, e);
        let mut rest = g.clone();
        rest.0[i] = 0;
        if rest.is_one() {
            return Some(d_head);
        }
        let d_rest = self.compute_d_gamma(&rest)?;
        let mut out = self.structure.right_term(&d_head, &(one.clone(), rest.clone()));
        let tail = self.structure.left_term(&(one, head.clone()), &d_rest);
        let sign = if self.structure.gamma_is_odd(&head) { -Rational::one() } else { Rational::one() };
        out.add_assign_scaled(&tail, &sign);
        debug_assert_eq!(n, rest.0.len());
        Some(out)
    }

    pub fn model(&self) -> &SullivanModel {
        &self.model
    }

    pub fn structure(&self) -> &ClosureAlgebra {
        &self.structure
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn d_suspended(&self, i: usize) -> Option<&ClosureElement> {
        self.d_suspended[i].as_ref()
    }

    /// D(1 ⊗ γ) for `|γ| <= cap + 1`.
    pub fn d_gamma(&self, g: &GammaMonomial) -> Result<ClosureElement> {
        if g.is_one() {
            return Ok(ClosureElement::zero());
        }
        if let Some(x) = self.d_gamma.get(g) {
            return Ok(x.clone());
        }
        self.compute_d_gamma(g)
            .ok_or(Error::Truncation { required_cap: self.structure.gamma_degree(g) })
    }

    /// D(a ⊗ γ) = da ⊗ γ + (-1)^{|a|} a · D(1 ⊗ γ).
    pub fn apply_term(&self, (a, g): &Term) -> ClosureElement {
        let alg = self.model.algebra();
        let mut out = ClosureElement::zero();
        for (m, c) in self.model.derivation_on_monomial(a).terms() {
            out.add_term(m.clone(), g.clone(), c.clone());
        }
        if !g.is_one() {
            let dg = match self.d_gamma.get(g) {
                Some(x) => x.clone(),
                None => self.compute_d_gamma(g).expect("D(sv) defined below the cap"),
            };
            let one_gamma = GammaMonomial::one(self.structure.num_generators());
            let prod = self.structure.left_term(&(a.clone(), one_gamma), &dg);
            let sign = if alg.monomial_degree(a) % 2 == 1 { -Rational::one() } else { Rational::one() };
            out.add_assign_scaled(&prod, &sign);
        }
        out
    }

    pub fn apply(&self, x: &ClosureElement) -> ClosureElement {
        let mut out = ClosureElement::zero();
        for (t, c) in x.terms() {
            out.add_assign_scaled(&self.apply_term(t), c);
        }
        out
    }

    /// Replaces D(sv_i) by `v`, dropping the correction (a negative control).
    pub fn corrupt(&mut self, i: usize) {
        self.d_suspended[i] = Some(self.unit_term(i));
        self.fill_gamma_table();
    }

    /// The total complex in degrees `0..=max_degree` (weights all zero).
    pub fn total_complex(&self, max_degree: u32) -> Result<FilteredComplex> {
        if max_degree > self.cap {
            return Err(Error::Truncation { required_cap: max_degree });
        }
        let mut c = FilteredComplex::new();
        let mut basis = self.structure.basis(0);
        for n in 0..=max_degree {
            let next = self.structure.basis(n + 1);
            let index: BTreeMap<&Term, usize> = next.iter().enumerate().map(|(j, t)| (t, j)).collect();
            let columns = basis
                .iter()
                .map(|t| qvec_from_map(self.apply_term(t).terms().map(|(s, v)| (index[s], v.clone())).collect()))
                .collect();
            c.insert(
                i64::from(n),
                DegreeSlice {
                    weights: vec![0; basis.len()],
                    differential: ColumnMatrix { nrows: next.len(), columns },
                },
            );
            basis = next;
        }
        Ok(c)
    }

    /// D² = 0 on every basis element of degree `<= max_degree`.
    pub fn square_vanishes(&self, max_degree: u32) -> bool {
        (0..=max_degree).all(|n| {
            self.structure
                .basis(n)
                .iter()
                .all(|t| self.apply(&self.apply_term(t)).is_zero())
        })
    }

    /// D² = 0, H⁰ = Q and H^n = 0 for `1 <= n <= max_degree`.
    pub fn verify_acyclic(&self, max_degree: u32) -> bool {
        if max_degree > self.cap || !self.square_vanishes(max_degree) {
            return false;
        }
        let Ok(c) = self.total_complex(max_degree) else {
            return false;
        };
        c.cohomology_dim(0) == 1 && (1..=i64::from(max_degree)).all(|n| c.cohomology_dim(n) == 0)
    }

    /// Renders an element with `s<name>` for suspensions and `[e]` for divided powers.
    pub fn display(&self, x: &ClosureElement) -> String {
        let alg = self.model.algebra();
        let mut parts = Vec::new();
        for ((a, g), c) in x.terms() {
            let mut word = String::new();
            let lam = Polynomial::monomial(a.clone(), c.clone());
            word.push_str(&format!("{}", alg.display(&lam)));
            for (i, &e) in g.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &alg.generators()[i].name;
                if e == 1 {
                    word.push_str(&format!(" s{name}"));
                } else {
                    word.push_str(&format!(" s{name}[{e}]"));
                }
            }
            parts.push(word);
        }
        if parts.is_empty() {
            return String::from("0");
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn gam(e: &[u32]) -> GammaMonomial {
        GammaMonomial::from_exponents(e.to_vec())
    }

    #[test]
    fn sphere_closure() {
        let m = corpus::s2();
        let c = AcyclicClosure::build(&m, 8).unwrap();
        // D(sx) = x, D(sy) = y − x sx
        assert_eq!(c.d_suspended(0).unwrap(), &ClosureElement::term(mono(&[1, 0]), gam(&[0, 0]), q(1, 1)));
        let mut expected = ClosureElement::term(mono(&[0, 1]), gam(&[0, 0]), q(1, 1));
        expected.add_term(mono(&[1, 0]), gam(&[1, 0]), q(-1, 1));
        assert_eq!(c.d_suspended(1).unwrap(), &expected);
        assert!(c.verify_acyclic(8));
    }

    #[test]
    fn zero_differential_closure() {
        let m = corpus::s3();
        let c = AcyclicClosure::build(&m, 10).unwrap();
        assert_eq!(c.d_suspended(0).unwrap(), &ClosureElement::term(mono(&[1]), gam(&[0]), q(1, 1)));
        assert!(c.verify_acyclic(10));
    }

    #[test]
    fn divided_power_rule() {
        let m = corpus::s2();
        let c = AcyclicClosure::build(&m, 8).unwrap();
        let st = c.structure();
        let d2 = c.d_gamma(&gam(&[0, 2])).unwrap();
        let d1 = c.d_suspended(1).unwrap().clone();
        let g1 = ClosureElement::term(mono(&[0, 0]), gam(&[0, 1]), q(1, 1));
        assert_eq!(d2, st.multiply(&d1, &g1));
        // γ¹ γ¹ = 2 γ²
        assert_eq!(st.gamma_multiply(&gam(&[0, 1]), &gam(&[0, 1])), Some((BigInt::from(2), gam(&[0, 2]))));
        assert_eq!(st.gamma_multiply(&gam(&[1, 0]), &gam(&[1, 0])), None);
    }

    #[test]
    fn suspension_examples() {
        let m = corpus::s2();
        let x2 = corpus::poly(2, &[(1, &[(0, 2)])]);
        assert_eq!(suspend_s(&m, &x2).unwrap(), ClosureElement::term(mono(&[1, 0]), gam(&[1, 0]), q(1, 1)));
        let m = corpus::cp3();
        let x4 = corpus::poly(2, &[(1, &[(0, 4)])]);
        assert_eq!(suspend_s(&m, &x4).unwrap(), ClosureElement::term(mono(&[3, 0]), gam(&[1, 0]), q(1, 1)));
        let m = corpus::model(&[("a", 2), ("b", 2), ("y", 3)], &[(2, &[(1, &[(0, 1), (1, 1)])])]);
        let ab = corpus::poly(3, &[(1, &[(0, 1), (1, 1)])]);
        let mut expected = ClosureElement::term(mono(&[0, 1, 0]), gam(&[1, 0, 0]), q(1, 2));
        expected.add_term(mono(&[1, 0, 0]), gam(&[0, 1, 0]), q(1, 2));
        assert_eq!(suspend_s(&m, &ab).unwrap(), expected);
        let y = corpus::poly(3, &[(1, &[(2, 1)])]);
        assert!(matches!(suspend_s(&m, &y), Err(Error::Unsupported(_))));
    }

    #[test]
    fn corpus_closures_are_acyclic() {
        for m in [
            corpus::s2_times_s2(),
            corpus::cp3(),
            corpus::mixed_a2_y3_z5(),
            corpus::mixed_a2_b4_y3_z7(),
            corpus::nonpure_a2_u3_v3_w7(),
        ] {
            let c = AcyclicClosure::build(&m, 9).unwrap();
            assert!(c.verify_acyclic(9), "{:?}", m.generators());
        }
    }

    #[test]
    fn explicit_and_inductive_agree_up_to_boundary() {
        let m = corpus::a2b2y5z5();
        let e = AcyclicClosure::build_with(&m, 9, Construction::Explicit).unwrap();
        let i = AcyclicClosure::build_with(&m, 9, Construction::Inductive).unwrap();
        assert!(e.verify_acyclic(9) && i.verify_acyclic(9));
        for g in 0..4 {
            let diff = e.d_suspended(g).unwrap().sub(i.d_suspended(g).unwrap());
            // a cocycle of positive degree in an acyclic complex
            assert!(e.apply(&diff).is_zero());
        }
    }

    #[test]
    fn corrupted_closure_is_rejected() {
        let m = corpus::s2();
        let mut c = AcyclicClosure::build(&m, 8).unwrap();
        c.corrupt(1);
        assert!(!c.verify_acyclic(8));
    }
}
