//! Reports: one struct, rendered as versioned JSON or as text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sullivan_core::ext::{default_cap, ExtComputation};
use sullivan_core::homology::{certify_ellipticity, default_max_degree};
use sullivan_core::invariants::{cat_lower_bound_report, FormulaValue};
use sullivan_core::spectral::{self, SpectralPage};
use sullivan_core::{Ellipticity, Error, Outcome, SullivanModel};

use crate::model_file::ModelFile;

pub const SCHEMA: &str = "sullivan-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value<T> {
    Value(T),
    Undetermined(String),
    NotApplicable(String),
}

impl<T: Copy> Value<T> {
    pub fn get(&self) -> Option<T> {
        match self {
            Value::Value(v) => Some(*v),
            _ => None,
        }
    }
}

impl<T> From<Outcome<T>> for Value<T> {
    fn from(o: Outcome<T>) -> Self {
        match o {
            Outcome::Value(v) => Value::Value(v),
            Outcome::Undetermined(s) => Value::Undetermined(s),
            Outcome::NotApplicable(s) => Value::NotApplicable(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticityEntry {
    pub status: String,
    pub formal_dimension: i64,
    pub heuristic: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E0Entry {
    pub projection: Value<u32>,
    pub fundamental: Value<u32>,
    pub spectral: Value<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct REntry {
    pub computed: Value<u32>,
    pub spectral: Value<u32>,
    pub lowest_part: Value<u32>,
    pub formula: Value<i64>,
    /// The formula was read with k = 2 (no even generators).
    pub formula_convention: bool,
    pub cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expected: i64,
    pub found: Option<i64>,
}

impl Expectation {
    pub fn holds(&self) -> bool {
        self.found == Some(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub p: u32,
    pub n: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageTable {
    /// `mm` or `ext`.
    pub sequence: String,
    /// `None` for E_∞.
    pub page: Option<u32>,
    pub degrees: (i64, i64),
    pub entries: Vec<Cell>,
    /// Ranks of the page differential, by source cell.
    pub differential_ranks: Vec<Cell>,
}

impl PageTable {
    pub fn from_page(sequence: &str, page: &SpectralPage, infinity: bool, degrees: (i64, i64)) -> Self {
        let cells = |m: &BTreeMap<(u32, i64), usize>| m.iter().map(|(&(p, n), &dim)| Cell { p, n, dim }).collect();
        PageTable {
            sequence: sequence.into(),
            page: (!infinity).then_some(page.page),
            degrees,
            entries: cells(&page.entries),
            differential_ranks: cells(&page.out_ranks),
        }
    }

    pub fn dim(&self, p: u32, n: i64) -> usize {
        self.entries.iter().find(|c| c.p == p && c.n == n).map_or(0, |c| c.dim)
    }

    pub fn title(&self) -> String {
        let e = if self.sequence == "ext" { "Ext E" } else { "E" };
        match self.page {
            Some(r) => format!("{e}_{r}"),
            None => format!("{e}_inf"),
        }
    }

    /// Rows are total degrees, columns filtration levels.
    pub fn render(&self) -> String {
        let mut out = format!("{} ({}), degrees {}..={}\n", self.title(), self.sequence, self.degrees.0, self.degrees.1);
        let top = self.entries.iter().map(|c| c.p).max().unwrap_or(0);
        out.push_str("   n |");
        for p in 0..=top {
            let _ = write!(out, " {p:>3}");
        }
        out.push('\n');
        for n in self.degrees.0..=self.degrees.1 {
            let _ = write!(out, "{n:>4} |");
            for p in 0..=top {
                match self.dim(p, n) {
                    0 => out.push_str("   ."),
                    d => {
                        let _ = write!(out, " {d:>3}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub schema_version: u32,
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    pub differential: BTreeMap<String, String>,
    pub max_degree: u32,
    pub k: u32,
    pub m: usize,
    pub n: usize,
    pub pure: bool,
    pub ellipticity: EllipticityEntry,
    /// dim H^i for i in 0..=max_degree.
    pub cohomology: Vec<usize>,
    pub e0: E0Entry,
    pub r: REntry,
    pub gj_bound: i64,
    pub gj_margin: Value<i64>,
    pub question_bound: Option<i64>,
    pub cat0_equals_e0: bool,
    pub checks: Vec<Check>,
    pub expectations: Vec<Expectation>,
    pub pages: Vec<PageTable>,
    pub basis_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn undetermined(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut note = |what: &str, v: &Value<u32>| {
            if let Value::Undetermined(why) = v {
                out.push(format!("{what}: {why}"));
            }
        };
        note("e0", &self.e0.fundamental);
        note("r", &self.r.computed);
        note("r (spectral sequence)", &self.r.spectral);
        note("r of the lowest part", &self.r.lowest_part);
        out
    }

    pub fn failed_expectations(&self) -> Vec<&Expectation> {
        self.expectations.iter().filter(|e| !e.holds()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "model {}", self.name);
        for g in &self.generators {
            match self.differential.get(&g.name) {
                Some(d) => {
                    let _ = writeln!(out, "  {} (degree {}), d = {d}", g.name, g.degree);
                }
                None => {
                    let _ = writeln!(out, "  {} (degree {}), d = 0", g.name, g.degree);
                }
            }
        }
        let e = &self.ellipticity;
        let _ = writeln!(out, "ellipticity: {} (N = {}) {}", e.status, e.formal_dimension, e.evidence);
        let _ = writeln!(out, "k = {}, m = {}, n = {}, pure = {}", self.k, self.m, self.n, self.pure);
        let dims: Vec<String> = self.cohomology.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "dim H^0..{} = [{}]", self.max_degree, dims.join(", "));
        let _ = writeln!(out, "e0: projection {}, fundamental class {}, spectral sequence {}",
            show(&self.e0.projection), show(&self.e0.fundamental), show(&self.e0.spectral));
        let _ = writeln!(out, "r: computed {}, spectral sequence {}, lowest part {}",
            show(&self.r.computed), show(&self.r.spectral), show(&self.r.lowest_part));
        let conv = if self.r.formula_convention { " (k read as 2)" } else { "" };
        let _ = writeln!(out, "pure formula m + (k-2)(n-1): {}{conv}", show(&self.r.formula));
        if let Some(c) = self.r.cap {
            let _ = writeln!(out, "closure cap: {c}");
        }
        let _ = writeln!(out, "m + n(k-2) = {}, e0 margin {}", self.gj_bound, show(&self.gj_margin));
        if let Some(b) = self.question_bound {
            let _ = writeln!(out, "m + (n-1)(k-2) = {b} (not asserted)");
        }
        let _ = writeln!(out, "cat0 = e0: {}", self.cat0_equals_e0);
        for c in &self.checks {
            let _ = writeln!(out, "check {}: {}", c.name, if c.holds { "holds" } else { "FAILS" });
        }
        for x in &self.expectations {
            let found = x.found.map_or_else(|| "none".to_string(), |v| v.to_string());
            let _ = writeln!(out, "expect {} = {}: found {found}", x.key, x.expected);
        }
        for p in &self.pages {
            out.push('\n');
            out.push_str(&p.render());
        }
        let _ = writeln!(out, "\nbasis hash {}", self.basis_hash);
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                let _ = writeln!(out, "time {k}: {v} ms");
            }
        }
        out
    }
}

pub fn show<T: std::fmt::Display>(v: &Value<T>) -> String {
    match v {
        Value::Value(x) => x.to_string(),
        Value::Undetermined(why) => format!("undetermined ({why})"),
        Value::NotApplicable(why) => format!("n/a ({why})"),
    }
}

pub fn status_name(e: Ellipticity) -> &'static str {
    match e {
        Ellipticity::Elliptic => "elliptic",
        Ellipticity::NonElliptic => "non-elliptic",
        Ellipticity::Undetermined => "undetermined",
    }
}

/// Degree range for a model: the explicit value, else 2N + 2.
pub fn resolve_max_degree(model: &SullivanModel, explicit: Option<u32>) -> Result<u32, Error> {
    match explicit {
        Some(d) => Ok(d),
        None => default_max_degree(&certify_ellipticity(model)),
    }
}

/// SHA-256 over the monomial bases of ΛV in degrees `0..=max_degree` and the
/// Hom bases used for the Ext pages.
pub fn basis_hash(model: &SullivanModel, max_degree: u32, ext: Option<&ExtComputation>) -> String {
    let mut h = Sha256::new();
    for n in 0..=max_degree {
        h.update(format!("L{n}:").as_bytes());
        for m in model.algebra().basis(n).monomials {
            h.update(format!("{:?};", m.exponents()).as_bytes());
        }
    }
    if let Some(ext) = ext {
        for (n, b) in &ext.window.bases {
            h.update(format!("H{n}:").as_bytes());
            for (g, m) in b {
                h.update(format!("{g},{:?};", m.exponents()).as_bytes());
            }
        }
    }
    hex::encode(h.finalize())
}

/// Everything the `report` command prints.
pub fn build_report(file: &ModelFile, model: &SullivanModel, max_degree: u32, timing: bool) -> Report {
    let mut times = BTreeMap::new();
    let clock = Instant::now();
    let inv = cat_lower_bound_report(model, &file.name);
    times.insert("invariants".to_string(), clock.elapsed().as_millis());

    let clock = Instant::now();
    let k = inv.k;
    let top = i64::from(max_degree);
    let mut pages = vec![
        PageTable::from_page("mm", &spectral::mm_page(model, k, max_degree), false, (0, top)),
        PageTable::from_page("mm", &spectral::mm_infinity_page(model, max_degree), true, (0, top)),
    ];
    let cap = file.options.cap.or(inv.r_cap).unwrap_or_else(|| default_cap(model));
    let ext = ExtComputation::new(model, cap, 2).ok();
    if let Some(ext) = &ext {
        let range = (ext.window.lo, ext.window.hi);
        pages.push(PageTable::from_page("ext", &spectral::ext_page(ext, k), false, range));
        pages.push(PageTable::from_page("ext", &spectral::ext_infinity_page(ext), true, range));
    }
    times.insert("pages".to_string(), clock.elapsed().as_millis());

    let c = model.cochain_complex(max_degree);
    let cohomology = (0..=top).map(|n| c.cohomology_dim(n)).collect();

    let (formula, formula_convention) = match inv.r_formula {
        Outcome::Value(FormulaValue { value, convention }) => (Value::Value(value), convention),
        Outcome::Undetermined(s) => (Value::Undetermined(s), false),
        Outcome::NotApplicable(s) => (Value::NotApplicable(s), false),
    };

    let found = |key: &str| -> Option<i64> {
        match key {
            "N" => inv.ellipticity.dimension().map(i64::from),
            "k" => Some(i64::from(inv.k)),
            "e0" => inv.e0_fundamental.value().map(i64::from),
            "r" => inv.r_computed.value().map(i64::from),
            _ => None,
        }
    };
    let expectations = file
        .options
        .expect
        .iter()
        .map(|(key, &expected)| Expectation { key: key.clone(), expected, found: found(key) })
        .collect();

    let alg = model.algebra();
    let differential = model
        .generators()
        .iter()
        .enumerate()
        .filter(|(i, _)| !model.differential_of(*i).is_zero())
        .map(|(i, g)| (g.name.clone(), alg.display(model.differential_of(i)).to_string()))
        .collect();

    Report {
        schema: SCHEMA.into(),
        schema_version: SCHEMA_VERSION,
        name: file.name.clone(),
        generators: model
            .generators()
            .iter()
            .map(|g| GeneratorEntry { name: g.name.clone(), degree: g.degree })
            .collect(),
        differential,
        max_degree,
        k,
        m: inv.m,
        n: inv.n,
        pure: inv.pure,
        ellipticity: EllipticityEntry {
            status: status_name(inv.ellipticity.status).into(),
            formal_dimension: inv.ellipticity.formal_dimension,
            heuristic: inv.ellipticity.heuristic,
            evidence: inv.ellipticity.evidence.clone(),
        },
        cohomology,
        e0: E0Entry {
            projection: inv.e0_projection.into(),
            fundamental: inv.e0_fundamental.into(),
            spectral: inv.e0_ss.into(),
        },
        r: REntry {
            computed: inv.r_computed.into(),
            spectral: inv.r_ss.into(),
            lowest_part: inv.r_dk.into(),
            formula,
            formula_convention,
            cap: inv.r_cap,
        },
        gj_bound: inv.gj_bound,
        gj_margin: inv.gj_margin.into(),
        question_bound: inv.question_bound,
        cat0_equals_e0: inv.cat0_equals_e0,
        checks: inv.verdicts.iter().map(|v| Check { name: v.name.clone(), holds: v.holds }).collect(),
        expectations,
        pages,
        basis_hash: basis_hash(model, max_degree, ext.as_ref()),
        timing_ms: timing.then_some(times),
    }
}
