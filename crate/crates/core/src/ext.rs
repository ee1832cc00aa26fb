//! The complex Hom_{ΛV}(ΛV ⊗ Γ(sV), ΛV), its filtration by word length of
//! values, the Ext groups, evaluation, and the invariant r.
//!
//! A ΛV-linear map `f` of degree `n` is stored by its values on the Γ(sV)
//! basis, `f(a ⊗ γ) = (-1)^{n|a|} a f(γ)`, and
//! `𝓓f = d∘f + (-1)^{n+1} f∘D`. Only Γ-degrees `<= cap` are kept; since
//! D(1 ⊗ γ) has no term with trivial ΛV factor, the truncation is again a
//! complex.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial};
use crate::closure::{AcyclicClosure, GammaMonomial};
use crate::complex::{DegreeSlice, FilteredComplex, Level};
use crate::error::{Error, Result};
use crate::homology::{certify_ellipticity, Cohomology, CohomologyClass, EllipticityCertificate};
use crate::linalg::{qvec_from_map, solve_combination, ColumnMatrix, QVec};
use crate::model::SullivanModel;
use crate::Rational;

/// A ΛV-linear map out of the closure, by its values on Γ(sV).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub degree: i64,
    pub values: BTreeMap<GammaMonomial, Polynomial>,
}

impl HomElement {
    pub fn zero(degree: i64) -> Self {
        HomElement { degree, values: BTreeMap::new() }
    }

    pub fn value(&self, g: &GammaMonomial) -> Polynomial {
        self.values.get(g).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn set(&mut self, g: GammaMonomial, p: Polynomial) {
        if p.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, p);
        }
    }

    pub fn add_to(&mut self, g: &GammaMonomial, p: &Polynomial, s: &Rational) {
        let mut v = self.value(g);
        v.add_assign_scaled(p, s);
        self.set(g.clone(), v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sub(&self, other: &HomElement) -> HomElement {
        let mut out = self.clone();
        for (g, p) in &other.values {
            out.add_to(g, p, &-Rational::one());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> HomElement {
        let mut out = HomElement::zero(self.degree);
        for (g, p) in &self.values {
            out.set(g.clone(), p.scale(s));
        }
        out
    }

    /// Largest `p` with every value in Λ^{≥p}V.
    pub fn filtration_level(&self) -> Level {
        self.values
            .values()
            .filter_map(Polynomial::min_word_length)
            .min()
            .map_or(Level::Infinity, Level::At)
    }
}

/// A nonzero Ext class with the filtration level of its best representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub representative: HomElement,
    pub level: Level,
}

impl ExtClass {
    pub fn degree(&self) -> i64 {
        self.representative.degree
    }

    /// (filtration level, complementary degree).
    pub fn bidegree(&self) -> Option<(u32, i64)> {
        self.level.finite().map(|p| (p, self.degree() - i64::from(p)))
    }
}

/// A coordinate of Hom^n: a Γ basis element and a monomial for its value.
pub type HomCoordinate = (usize, Monomial);

/// The Hom complex truncated to Γ-degrees `<= cap`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    closure: AcyclicClosure,
    cap: u32,
    gammas: Vec<GammaMonomial>,
    gamma_degrees: Vec<u32>,
    gamma_index: BTreeMap<GammaMonomial, usize>,
    /// For each γ, the pairs `(γ', a, c)` with `c a ⊗ γ` a term of D(1 ⊗ γ').
    reverse: Vec<Vec<(usize, Monomial, Rational)>>,
}

impl HomComplex {
    pub fn new(closure: AcyclicClosure, cap: u32) -> Result<Self> {
        if cap > closure.cap() + 1 {
            return Err(Error::Truncation { required_cap: cap });
        }
        let st = closure.structure();
        let mut gammas = Vec::new();
        for deg in 0..=cap {
            gammas.extend(st.gamma_basis(deg));
        }
        let gamma_degrees: Vec<u32> = gammas.iter().map(|g| st.gamma_degree(g)).collect();
        let gamma_index: BTreeMap<GammaMonomial, usize> =
            gammas.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut reverse = alloc::vec![Vec::new(); gammas.len()];
        for (j, g) in gammas.iter().enumerate() {
            for ((a, h), c) in closure.d_gamma(g)?.terms() {
                let i = gamma_index[h];
                reverse[i].push((j, a.clone(), c.clone()));
            }
        }
        Ok(HomComplex { closure, cap, gammas, gamma_degrees, gamma_index, reverse })
    }

    /// Closure and Hom complex with Γ-degree cap `cap`.
    pub fn for_model(model: &SullivanModel, cap: u32) -> Result<Self> {
        let closure = AcyclicClosure::build(model, cap.max(1))?;
        HomComplex::new(closure, cap)
    }

    pub fn closure(&self) -> &AcyclicClosure {
        &self.closure
    }

    pub fn model(&self) -> &SullivanModel {
        self.closure.model()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn gammas(&self) -> &[GammaMonomial] {
        &self.gammas
    }

    fn value_degree(&self, gi: usize, n: i64) -> Option<u32> {
        let d = i64::from(self.gamma_degrees[gi]) + n;
        (d >= 0).then_some(d as u32)
    }

    /// Coordinates of Hom^n, ordered by Γ element then monomial.
    pub fn basis(&self, n: i64) -> Vec<HomCoordinate> {
        let alg = self.model().algebra();
        let mut out = Vec::new();
        for gi in 0..self.gammas.len() {
            if let Some(d) = self.value_degree(gi, n) {
                for m in alg.basis(d).monomials {
                    out.push((gi, m));
                }
            }
        }
        out
    }

    fn check_element(&self, f: &HomElement) -> Result<()> {
        for g in f.values.keys() {
            if !self.gamma_index.contains_key(g) {
                return Err(Error::Truncation { required_cap: self.closure.structure().gamma_degree(g) });
            }
        }
        Ok(())
    }

    /// 𝓓 applied to a single value `m` placed at `γ_gi`, in degree `n`.
    fn apply_coordinate(&self, n: i64, gi: usize, m: &Polynomial, out: &mut HomElement) {
        let model = self.model();
        let alg = model.algebra();
        let dm = model.extend_derivation(m);
        out.add_to(&self.gammas[gi], &dm, &Rational::one());
        for (j, a, c) in &self.reverse[gi] {
            // −(−1)^n c (−1)^{n|a|} a·m at γ'
            let mut s = -c.clone();
            if n.rem_euclid(2) == 1 {
                s = -s;
                if alg.monomial_degree(a) % 2 == 1 {
                    s = -s;
                }
            }
            let am = alg.multiply_unchecked(&Polynomial::monomial(a.clone(), Rational::one()), m);
            out.add_to(&self.gammas[*j], &am, &s);
        }
    }

    /// 𝓓f, on the Γ elements of the truncation.
    pub fn apply(&self, f: &HomElement) -> Result<HomElement> {
        self.check_element(f)?;
        let mut out = HomElement::zero(f.degree + 1);
        for (g, p) in &f.values {
            self.apply_coordinate(f.degree, self.gamma_index[g], p, &mut out);
        }
        Ok(out)
    }

    pub fn to_coordinates(&self, f: &HomElement, basis: &[HomCoordinate]) -> Result<QVec> {
        self.check_element(f)?;
        let index: BTreeMap<(usize, &Monomial), usize> =
            basis.iter().enumerate().map(|(i, (g, m))| ((*g, m), i)).collect();
        let mut v = BTreeMap::new();
        for (g, p) in &f.values {
            let gi = self.gamma_index[g];
            for (m, c) in p.terms() {
                let i = index.get(&(gi, m)).ok_or_else(|| {
                    Error::ContractViolation(format!("value is not homogeneous of degree {}", f.degree))
                })?;
                v.insert(*i, c.clone());
            }
        }
        Ok(qvec_from_map(v))
    }

    pub fn from_coordinates(&self, n: i64, basis: &[HomCoordinate], v: &[(usize, Rational)]) -> HomElement {
        let mut f = HomElement::zero(n);
        for (i, c) in v {
            let (gi, m) = &basis[*i];
            f.add_to(&self.gammas[*gi], &Polynomial::monomial(m.clone(), c.clone()), &Rational::one());
        }
        f
    }

    fn differential_matrix(&self, n: i64, source: &[HomCoordinate], target: &[HomCoordinate]) -> ColumnMatrix {
        let index: BTreeMap<(usize, &Monomial), usize> =
            target.iter().enumerate().map(|(i, (g, m))| ((*g, m), i)).collect();
        let columns = source
            .iter()
            .map(|(gi, m)| {
                let mut out = HomElement::zero(n + 1);
                self.apply_coordinate(n, *gi, &Polynomial::monomial(m.clone(), Rational::one()), &mut out);
                let mut v = BTreeMap::new();
                for (g, p) in &out.values {
                    let gj = self.gamma_index[g];
                    for (t, c) in p.terms() {
                        v.insert(index[&(gj, t)], c.clone());
                    }
                }
                qvec_from_map(v)
            })
            .collect();
        ColumnMatrix { nrows: target.len(), columns }
    }

    /// Filtered slices for Hom degrees `lo - 1 ..= hi + 1`; cohomology is
    /// valid on `lo..=hi`.
    pub fn filtered_complex(&self, lo: i64, hi: i64) -> HomWindow {
        let mut complex = FilteredComplex::new();
        let mut bases = BTreeMap::new();
        let mut basis = self.basis(lo - 1);
        for n in lo - 1..=hi + 1 {
            let next = self.basis(n + 1);
            let slice = DegreeSlice {
                weights: basis.iter().map(|(_, m)| m.word_length()).collect(),
                differential: self.differential_matrix(n, &basis, &next),
            };
            complex.insert(n, slice);
            bases.insert(n, basis);
            basis = next;
        }
        HomWindow { lo, hi, complex, bases }
    }
}

/// A computed window of the filtered Hom complex.
#[derive(Clone, Debug)]
pub struct HomWindow {
    pub lo: i64,
    pub hi: i64,
    pub complex: FilteredComplex,
    pub bases: BTreeMap<i64, Vec<HomCoordinate>>,
}

impl HomWindow {
    pub fn ext_dim(&self, n: i64) -> usize {
        assert!(self.lo <= n && n <= self.hi, "degree {n} outside the computed window");
        self.complex.cohomology_dim(n)
    }

    pub fn basis(&self, n: i64) -> &[HomCoordinate] {
        &self.bases[&n]
    }
}

/// Class of f(1) in H(ΛV, d).
pub fn evaluation(hom: &HomComplex, f: &HomElement) -> Result<CohomologyClass> {
    if !hom.apply(f)?.is_zero() {
        return Err(Error::ContractViolation("evaluation of a map that is not a cocycle".into()));
    }
    let one = GammaMonomial::one(hom.model().generators().len());
    if f.degree < 0 {
        return Ok(CohomologyClass { degree: 0, representative: Polynomial::zero() });
    }
    Ok(CohomologyClass { degree: f.degree as u32, representative: f.value(&one) })
}

/// Ext data of a model at one truncation.
#[derive(Clone, Debug)]
pub struct ExtComputation {
    pub hom: HomComplex,
    pub window: HomWindow,
    pub formal_dimension: i64,
}

impl ExtComputation {
    pub fn new(model: &SullivanModel, cap: u32, radius: i64) -> Result<Self> {
        let n = model.formal_dimension_candidate();
        let hom = HomComplex::for_model(model, cap)?;
        let window = hom.filtered_complex(n - radius, n + radius);
        Ok(ExtComputation { hom, window, formal_dimension: n })
    }

    pub fn ext_dim(&self, n: i64) -> usize {
        self.window.ext_dim(n)
    }

    /// Basis of Ext^n with each class at its best filtration level.
    pub fn ext_cohomology(&self, n: i64) -> Vec<ExtClass> {
        let basis = self.window.basis(n);
        self.window
            .complex
            .cohomology_basis(n)
            .iter()
            .map(|v| ExtClass {
                representative: self.hom.from_coordinates(n, basis, v),
                level: self.window.complex.max_level_of_class(n, v),
            })
            .collect()
    }

    pub fn is_coboundary(&self, f: &HomElement) -> Result<bool> {
        let v = self.hom.to_coordinates(f, self.window.basis(f.degree))?;
        Ok(self.window.complex.is_coboundary(f.degree, &v))
    }

    /// Largest p with a cohomologous representative in 𝓕^p.
    pub fn class_level(&self, f: &HomElement) -> Result<Level> {
        let v = self.hom.to_coordinates(f, self.window.basis(f.degree))?;
        Ok(self.window.complex.max_level_of_class(f.degree, &v))
    }

    /// The generator of Ext^N, scaled so that its evaluation is `omega` when
    /// that is possible.
    pub fn generator(&self, omega: Option<&CohomologyClass>) -> Result<HomElement> {
        let n = self.formal_dimension;
        let classes = self.ext_cohomology(n);
        if classes.len() != 1 {
            return Err(Error::NotPoincare { degree: n, dimension: classes.len() });
        }
        let f = classes.into_iter().next().unwrap().representative;
        let Some(omega) = omega else {
            return Ok(f);
        };
        let ev = evaluation(&self.hom, &f)?;
        let coh = Cohomology::new(self.hom.model(), omega.degree);
        let ev_v = coh.coordinates(&ev.representative, omega.degree)?;
        let mut columns: Vec<QVec> = coh.complex().coboundaries(i64::from(omega.degree));
        columns.push(ev_v);
        let target = coh.coordinates(&omega.representative, omega.degree)?;
        match solve_combination(&columns, &target) {
            Some(x) => {
                let lambda = x.last().cloned().unwrap_or_else(Rational::zero);
                if lambda.is_zero() {
                    Ok(f)
                } else {
                    Ok(f.scale(&lambda))
                }
            }
            None => Ok(f),
        }
    }
}

/// Outcome of the Gorenstein check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub degree: i64,
    pub level: Level,
    pub dims: Vec<(i64, usize)>,
    pub cap: u32,
    /// Whether the truncated computation is provably exact (elliptic models).
    pub exact: bool,
}

impl GorensteinReport {
    pub fn is_gorenstein(&self) -> bool {
        self.dims.iter().all(|&(n, d)| d == usize::from(n == self.degree))
    }
}

/// Γ-degree cap used when none is given.
pub fn default_cap(model: &SullivanModel) -> u32 {
    let n = model.formal_dimension_candidate();
    let top = i64::from(model.algebra().max_generator_degree());
    (n + top + 2).max(top + 2) as u32
}

/// Largest degree of a monomial of word length `<= w`.
fn max_degree_of_length(model: &SullivanModel, w: u32) -> u32 {
    let a = model.algebra();
    let mut slots: Vec<u32> = (0..a.num_generators()).filter(|&i| a.is_odd(i)).map(|i| a.degree_of(i)).collect();
    if let Some(e) = (0..a.num_generators()).filter(|&i| !a.is_odd(i)).map(|i| a.degree_of(i)).max() {
        slots.extend(core::iter::repeat_n(e, w as usize));
    }
    slots.sort_unstable_by(|x, y| y.cmp(x));
    slots.iter().take(w as usize).sum()
}

/// Smallest cap at which a level-p representative found in the truncation
/// extends to the whole closure (elliptic models).
pub fn required_cap(model: &SullivanModel, p: u32) -> u32 {
    if p == 0 {
        return 0;
    }
    let need = i64::from(max_degree_of_length(model, p - 1)) - model.formal_dimension_candidate();
    need.max(0) as u32
}

fn gorenstein_at(model: &SullivanModel, cap: u32, radius: i64, exact: bool) -> Result<(GorensteinReport, ExtComputation)> {
    let ext = ExtComputation::new(model, cap, radius)?;
    let n = ext.formal_dimension;
    let dims: Vec<(i64, usize)> = (n - radius..=n + radius).map(|i| (i, ext.ext_dim(i))).collect();
    let level = match ext.ext_cohomology(n).as_slice() {
        [c] => c.level,
        _ => Level::Infinity,
    };
    Ok((GorensteinReport { degree: n, level, dims, cap, exact }, ext))
}

/// Ext^* is one-dimensional, in degree N, over the window `N ± radius`.
///
/// Elliptic models are decided at one cap `>= radius`. Otherwise the answer
/// must agree at caps C and C + 2.
pub fn gorenstein_check(model: &SullivanModel, radius: i64) -> Result<GorensteinReport> {
    let cert = certify_ellipticity(model);
    let cap = default_cap(model).max(radius as u32);
    let (report, _) = gorenstein_at(model, cap, radius, cert.is_elliptic())?;
    if cert.is_elliptic() {
        return Ok(report);
    }
    let (again, _) = gorenstein_at(model, cap + 2, radius, false)?;
    if again.dims != report.dims || again.level != report.level {
        return Err(Error::Undetermined(format!(
            "Ext window changes between caps {cap} and {}",
            cap + 2
        )));
    }
    Ok(report)
}

/// The invariant r together with how it was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInvariant {
    pub value: u32,
    pub cap: u32,
    /// True when the truncation argument applies (elliptic models); otherwise
    /// the value was stable across two caps.
    pub exact: bool,
    pub generator: HomElement,
}

fn level_at(model: &SullivanModel, cap: u32, omega: Option<&CohomologyClass>) -> Result<(u32, HomElement)> {
    let ext = ExtComputation::new(model, cap, 0)?;
    let gen = ext.generator(omega)?;
    match ext.class_level(&gen)? {
        Level::At(p) => Ok((p, gen)),
        Level::Infinity => Err(Error::ContractViolation("Ext generator is a coboundary".into())),
    }
}

/// r = sup{p : the Ext generator has a cocycle representative in 𝓕^p}.
pub fn r_invariant_computed(model: &SullivanModel) -> Result<RInvariant> {
    let cert = certify_ellipticity(model);
    r_invariant_with(model, &cert)
}

pub fn r_invariant_with(model: &SullivanModel, cert: &EllipticityCertificate) -> Result<RInvariant> {
    if let Some(n) = cert.dimension() {
        let omega = crate::homology::fundamental_class(model, n)?;
        let mut cap = default_cap(model);
        loop {
            let (p, gen) = level_at(model, cap, Some(&omega))?;
            let need = required_cap(model, p);
            if need <= cap {
                return Ok(RInvariant { value: p, cap, exact: true, generator: gen });
            }
            cap = need;
        }
    }
    let cap = default_cap(model);
    let (p, gen) = level_at(model, cap, None)?;
    let (q, _) = level_at(model, cap + 2, None)?;
    if p != q {
        return Err(Error::Undetermined(format!("r changes from {p} to {q} between caps {cap} and {}", cap + 2)));
    }
    Ok(RInvariant { value: p, cap, exact: false, generator: gen })
}
