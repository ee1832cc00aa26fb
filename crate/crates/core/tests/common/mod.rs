#![allow(dead_code)]

use sullivan_core::{Generator, Monomial, Polynomial, Rational, SullivanModel};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn cycle(pool: &[i64], i: &mut usize) -> i64 {
    let c = pool[*i % pool.len()];
    *i += 1;
    c
}

/// Adds generators in increasing degree, each with d = a random cocycle of
/// word length >= 2 in the algebra built so far.
pub fn extension_model(degrees: &[u32], pool: &[i64]) -> SullivanModel {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let mut gens: Vec<Generator> = Vec::new();
    let mut diffs: Vec<Polynomial> = Vec::new();
    let mut k = 0usize;
    for (idx, &deg) in degrees.iter().enumerate() {
        let dv = if gens.is_empty() {
            Polynomial::zero()
        } else {
            let prefix = SullivanModel::new(gens.clone(), diffs.clone()).unwrap();
            let c = prefix.cochain_complex(deg + 1);
            let basis = prefix.algebra().basis(deg + 1);
            let mut dv = Polynomial::zero();
            for z in c.z_space(i64::from(deg + 1), 2, 1000) {
                let s = q(cycle(pool, &mut k));
                dv.add_assign_scaled(&SullivanModel::from_coordinates(&basis, &z), &s);
            }
            dv
        };
        gens.push(Generator::new(format!("g{idx}"), deg));
        diffs.push(dv);
        let n = gens.len();
        diffs = diffs.iter().map(|p| pad(p, n)).collect();
    }
    SullivanModel::validated(gens, diffs).unwrap()
}

fn pad(p: &Polynomial, n: usize) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        e.resize(n, 0);
        out.add_term(Monomial::from_exponents(e), c.clone());
    }
    out
}

/// An elliptic pure model: x_1..x_n of degree 2 and dy_j = x_j^{k_j} plus a
/// random form in x_1..x_{j-1}; extra odd generators of degree 3 get random
/// quadratic differentials.
pub fn triangular_pure(powers: &[u32], extra_odd: usize, pool: &[i64]) -> SullivanModel {
    let n = powers.len();
    let total = 2 * n + extra_odd;
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(Generator::new(format!("x{i}"), 2));
    }
    for (j, &k) in powers.iter().enumerate() {
        gens.push(Generator::new(format!("y{j}"), 2 * k - 1));
    }
    for j in 0..extra_odd {
        gens.push(Generator::new(format!("u{j}"), 3));
    }
    let model0 = SullivanModel::new(gens.clone(), vec![Polynomial::zero(); total]).unwrap();
    let alg = model0.algebra();
    let mut diffs = vec![Polynomial::zero(); total];
    let mut c = 0usize;
    for (j, &k) in powers.iter().enumerate() {
        let mut e = vec![0u32; total];
        e[j] = k;
        let mut p = Polynomial::monomial(Monomial::from_exponents(e), q(1));
        for m in alg.basis(2 * k).monomials {
            let lower = m.exponents()[j..].iter().all(|&x| x == 0);
            if lower {
                p.add_term(m, q(cycle(pool, &mut c)));
            }
        }
        diffs[n + j] = p;
    }
    for j in 0..extra_odd {
        let mut p = Polynomial::zero();
        for m in alg.basis(4).monomials {
            if m.exponents()[n..].iter().all(|&x| x == 0) {
                p.add_term(m, q(cycle(pool, &mut c)));
            }
        }
        diffs[2 * n + j] = p;
    }
    SullivanModel::validated(gens, diffs).unwrap()
}
