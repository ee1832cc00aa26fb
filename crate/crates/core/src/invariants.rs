//! e₀ and r computed in several independent ways, the closed formula for
//! pure models, and the assembled report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::Level;
use crate::error::{Error, Result};
use crate::ext::{r_invariant_computed, RInvariant};
use crate::homology::{certify_ellipticity, fundamental_class_in, Cohomology, Ellipticity, EllipticityCertificate};
use crate::model::SullivanModel;
use crate::spectral;

/// A computed value, or the reason there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Value(T),
    Undetermined(String),
    NotApplicable(String),
}

impl<T: Copy> Outcome<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            Outcome::Value(v) => Some(*v),
            _ => None,
        }
    }
}

fn outcome<T>(r: Result<T>) -> Outcome<T> {
    match r {
        Ok(v) => Outcome::Value(v),
        Err(Error::Undetermined(s)) => Outcome::Undetermined(s),
        Err(Error::Truncation { required_cap }) => Outcome::Undetermined(format!("needs cap {required_cap}")),
        Err(e) => Outcome::NotApplicable(format!("{e}")),
    }
}

/// Smallest L such that H(ΛV) → H(ΛV/Λ^{≥L+1}V) is injective in degrees `<= cap`.
///
/// Without a cap the model must be certified elliptic, and the cap is N.
pub fn toomer_e0_projection(model: &SullivanModel, cap: Option<u32>) -> Result<Level> {
    let cap = match cap {
        Some(c) => c,
        None => certify_ellipticity(model).dimension().ok_or(Error::CapRequired)?,
    };
    let c = model.cochain_complex(cap);
    let top = (0..=i64::from(cap)).filter_map(|n| c.max_weight(n)).max().unwrap_or(0);
    for level in 0..=top {
        if (0..=i64::from(cap)).all(|n| c.quotient_kernel_dim(n, level) == 0) {
            return Ok(Level::At(level));
        }
    }
    Ok(Level::Infinity)
}

/// Largest word length of a representative of the fundamental class.
pub fn toomer_e0_fundamental(model: &SullivanModel) -> Result<u32> {
    let cert = certify_ellipticity(model);
    let n = cert.dimension().ok_or(Error::NotPoincare {
        degree: cert.formal_dimension,
        dimension: 0,
    })?;
    let coh = Cohomology::new(model, n);
    let omega = fundamental_class_in(&coh, n)?;
    coh.max_wordlength_representative(&omega)?
        .finite()
        .ok_or_else(|| Error::ContractViolation("fundamental class is exact".into()))
}

/// The closed formula m + (k − 2)(n − 1) for pure models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: i64,
    /// Set when n = 0, where the formula is read with k = 2.
    pub convention: bool,
}

pub fn r_formula_pure(model: &SullivanModel) -> Result<FormulaValue> {
    if !model.is_pure() {
        return Err(Error::Unsupported("closed formula needs a pure model".into()));
    }
    let m = model.num_odd() as i64;
    let n = model.num_even() as i64;
    if n == 0 {
        return Ok(FormulaValue { value: m, convention: true });
    }
    let k = i64::from(model.extract_k().k);
    Ok(FormulaValue { value: m + (k - 2) * (n - 1), convention: false })
}

/// r of (ΛV, d_k).
pub fn r_via_dk(model: &SullivanModel) -> Result<RInvariant> {
    r_invariant_computed(&model.lowest_part_model())
}

/// m + n(k − 2).
pub fn ghorbal_jessup_bound(model: &SullivanModel) -> i64 {
    let k = i64::from(model.extract_k().k);
    model.num_odd() as i64 + model.num_even() as i64 * (k - 2)
}

/// e₀ − (m + n(k − 2)) for a certified-elliptic model.
pub fn ghorbal_jessup_check(model: &SullivanModel) -> Result<i64> {
    let e0 = toomer_e0_fundamental(model)?;
    Ok(i64::from(e0) - ghorbal_jessup_bound(model))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub name: String,
    pub k: u32,
    pub m: usize,
    pub n: usize,
    pub formal_dimension: i64,
    pub ellipticity: EllipticityCertificate,
    pub pure: bool,
    pub e0_projection: Outcome<u32>,
    pub e0_fundamental: Outcome<u32>,
    pub e0_ss: Outcome<u32>,
    pub r_formula: Outcome<FormulaValue>,
    pub r_computed: Outcome<u32>,
    pub r_ss: Outcome<u32>,
    pub r_dk: Outcome<u32>,
    pub r_cap: Option<u32>,
    pub gj_bound: i64,
    pub gj_margin: Outcome<i64>,
    /// m + (n − 1)(k − 2), reported next to r for non-pure models only.
    pub question_bound: Option<i64>,
    pub cat0_equals_e0: bool,
    pub verdicts: Vec<Verdict>,
}

impl InvariantReport {
    pub fn all_consistent(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

fn agree(values: &[Option<u32>]) -> Option<bool> {
    let present: Vec<u32> = values.iter().flatten().copied().collect();
    if present.len() < 2 {
        return None;
    }
    Some(present.windows(2).all(|w| w[0] == w[1]))
}

/// Every invariant of the model together with the consistency verdicts.
pub fn cat_lower_bound_report(model: &SullivanModel, name: &str) -> InvariantReport {
    let cert = certify_ellipticity(model);
    let elliptic = cert.status == Ellipticity::Elliptic;
    let k = model.extract_k().k;
    let e0_projection = if elliptic {
        match toomer_e0_projection(model, None) {
            Ok(Level::At(p)) => Outcome::Value(p),
            Ok(Level::Infinity) => Outcome::Undetermined("no injective projection within the cap".into()),
            Err(e) => outcome(Err(e)),
        }
    } else {
        Outcome::NotApplicable("needs an explicit cap for a non-elliptic model".into())
    };
    let e0_fundamental = if elliptic {
        outcome(toomer_e0_fundamental(model))
    } else {
        Outcome::NotApplicable("no Poincaré duality".into())
    };
    let e0_ss = match cert.dimension() {
        Some(n) => match spectral::e0_from_ss(model, n) {
            Some(p) => Outcome::Value(p),
            None => Outcome::Undetermined("empty E_∞".into()),
        },
        None => Outcome::NotApplicable("needs an explicit cap for a non-elliptic model".into()),
    };
    let r = crate::ext::r_invariant_with(model, &cert);
    let r_cap = r.as_ref().ok().map(|x| x.cap);
    let r_computed = outcome(r.map(|x| x.value));
    let r_ss = match r_cap {
        Some(cap) => match spectral::r_from_ss(model, cap) {
            Ok(Some(p)) => Outcome::Value(p),
            Ok(None) => Outcome::Undetermined("empty 𝓔_∞".into()),
            Err(e) => outcome(Err(e)),
        },
        None => Outcome::Undetermined("r was not determined".into()),
    };
    let r_dk = outcome(r_via_dk(model).map(|x| x.value));
    let r_formula = outcome(r_formula_pure(model));
    let gj_margin = if elliptic {
        match e0_fundamental.value() {
            Some(e0) => Outcome::Value(i64::from(e0) - ghorbal_jessup_bound(model)),
            None => Outcome::Undetermined("e₀ unavailable".into()),
        }
    } else {
        Outcome::NotApplicable("model is not elliptic".into())
    };
    let pure = model.is_pure();
    let question_bound = (!pure).then(|| {
        let k = i64::from(k);
        model.num_odd() as i64 + (model.num_even() as i64 - 1) * (k - 2)
    });

    let mut verdicts = Vec::new();
    if let Some(ok) = agree(&[e0_projection.value(), e0_fundamental.value(), e0_ss.value()]) {
        verdicts.push(Verdict { name: "e0 agrees three ways".into(), holds: ok });
    }
    if let Some(ok) = agree(&[r_computed.value(), r_ss.value(), r_dk.value()]) {
        verdicts.push(Verdict { name: "r agrees three ways".into(), holds: ok });
    }
    if let (Some(f), Some(r)) = (r_formula.value(), r_computed.value()) {
        verdicts.push(Verdict { name: "r matches the pure formula".into(), holds: f.value == i64::from(r) });
    }
    if let (Some(r), Some(e0)) = (r_computed.value(), e0_fundamental.value()) {
        verdicts.push(Verdict { name: "r <= e0".into(), holds: r <= e0 });
    }
    if let Some(m) = gj_margin.value() {
        verdicts.push(Verdict { name: "e0 >= m + n(k-2)".into(), holds: m >= 0 });
    }

    InvariantReport {
        name: String::from(name),
        k,
        m: model.num_odd(),
        n: model.num_even(),
        formal_dimension: cert.formal_dimension,
        pure,
        e0_projection,
        e0_fundamental,
        e0_ss,
        r_formula,
        r_computed,
        r_ss,
        r_dk,
        r_cap,
        gj_bound: ghorbal_jessup_bound(model),
        gj_margin,
        question_bound,
        cat0_equals_e0: elliptic,
        verdicts,
        ellipticity: cert,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn projection_examples() {
        assert_eq!(toomer_e0_projection(&corpus::s2(), None).unwrap(), Level::At(1));
        assert_eq!(toomer_e0_projection(&corpus::a2b2y5z5(), None).unwrap(), Level::At(4));
        assert_eq!(toomer_e0_projection(&corpus::cp3(), None).unwrap(), Level::At(3));
        assert!(matches!(toomer_e0_projection(&corpus::polynomial_x2(), None), Err(Error::CapRequired)));
        // Q[x] up to degree 6: x³ needs level 3
        assert_eq!(toomer_e0_projection(&corpus::polynomial_x2(), Some(6)).unwrap(), Level::At(3));
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(toomer_e0_fundamental(&corpus::s2_times_s2()).unwrap(), 2);
        assert_eq!(toomer_e0_fundamental(&corpus::a2b2y5z5()).unwrap(), 4);
        assert_eq!(toomer_e0_fundamental(&corpus::s3()).unwrap(), 1);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(r_formula_pure(&corpus::s2()).unwrap().value, 1);
        assert_eq!(r_formula_pure(&corpus::a2b2y5z5()).unwrap().value, 3);
        assert_eq!(r_formula_pure(&corpus::cp3()).unwrap().value, 1);
        assert!(r_formula_pure(&corpus::s3()).unwrap().convention);
        assert!(r_formula_pure(&corpus::nonpure_a2_u3_v3_w7()).is_err());
    }

    #[test]
    fn margins() {
        for m in [corpus::s2(), corpus::s2_times_s2(), corpus::cp3(), corpus::a2b2y5z5()] {
            assert_eq!(ghorbal_jessup_check(&m).unwrap(), 0);
        }
    }

    #[test]
    fn report_for_sphere() {
        let r = cat_lower_bound_report(&corpus::s2(), "s2");
        assert_eq!(r.r_computed, Outcome::Value(1));
        assert_eq!(r.r_ss, Outcome::Value(1));
        assert_eq!(r.r_dk, Outcome::Value(1));
        assert_eq!(r.e0_projection, Outcome::Value(1));
        assert!(r.all_consistent());
    }
}
