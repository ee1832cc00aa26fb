#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Zero;
use sullivan::ModelFile;
use sullivan_core::{Monomial, Polynomial, Rational, SullivanModel};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models")
}

pub fn model_path(name: &str) -> PathBuf {
    models_dir().join(format!("{name}.model"))
}

pub fn load(name: &str) -> (ModelFile, SullivanModel) {
    let text = std::fs::read_to_string(model_path(name)).unwrap();
    let file = sullivan::parse_model(&text).unwrap();
    let model = file.model().unwrap();
    (file, model)
}

/// Every valid model file shipped in `models/`, sorted by name.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(models_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            let stem = p.file_stem()?.to_str()?.to_string();
            (p.extension()? == "model" && stem != "bad").then_some(stem)
        })
        .collect();
    names.sort();
    names
}

/// Runs the library entry point and returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["sullivan"];
    full.extend_from_slice(args);
    let code = sullivan::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &p;
                for c in col..width {
                    let v = &rows[rank][c] * &f;
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The word-length-k part of d on each generator, k the lowest occurring.
pub fn lowest_part(model: &SullivanModel) -> (u32, SullivanModel) {
    let k = model
        .differentials()
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.word_length()))
        .min()
        .unwrap_or(2);
    let diffs = model
        .differentials()
        .iter()
        .map(|p| {
            let mut out = Polynomial::zero();
            for (m, c) in p.terms() {
                if m.word_length() == k {
                    out.add_term(m.clone(), c.clone());
                }
            }
            out
        })
        .collect();
    (k, SullivanModel::new(model.generators().to_vec(), diffs).unwrap())
}

/// dim H^{p, n}(ΛV, δ) for δ raising word length by exactly `k - 1`.
pub fn bigraded_cohomology(model: &SullivanModel, k: u32, p: u32, n: u32) -> usize {
    let alg = model.algebra();
    let at = |deg: u32, wl: u32| -> Vec<Monomial> {
        alg.basis(deg).monomials.into_iter().filter(|m| m.word_length() == wl).collect()
    };
    let image_rank = |from: &[Monomial], to: &[Monomial]| -> usize {
        if to.is_empty() || from.is_empty() {
            return 0;
        }
        let rows = from
            .iter()
            .map(|m| {
                let dm = model.extend_derivation(&Polynomial::monomial(m.clone(), q(1)));
                to.iter().map(|t| dm.coefficient(t)).collect()
            })
            .collect();
        dense_rank(rows)
    };
    let source = at(n, p);
    let kernel = source.len() - image_rank(&source, &at(n + 1, p + k - 1));
    let incoming = if n >= 1 && p + 1 >= k { image_rank(&at(n - 1, p + 1 - k), &source) } else { 0 };
    kernel - incoming
}
