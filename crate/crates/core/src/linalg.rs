//! Exact sparse linear algebra.
//!
//! Rows are kept over the integers: every rational input row is cleared of
//! denominators, and elimination is fraction-free (`a*r - b*s`) with the row
//! content divided out after every step. The echelon form is fully reduced,
//! so no row carries a nonzero entry in another row's pivot column.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Sparse rational vector, sorted by index, no zero entries.
pub type QVec = Vec<(usize, Rational)>;
/// Sparse integer vector, sorted by index, no zero entries.
pub type IntRow = Vec<(usize, BigInt)>;

pub fn qvec_from_map(map: BTreeMap<usize, Rational>) -> QVec {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn clear_denominators(v: &[(usize, Rational)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, c) in v {
        lcm = lcm.lcm(c.denom());
    }
    let row: IntRow = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    primitive(row)
}

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, c) in &row {
        g = g.gcd(c);
        if g.is_one() {
            return row;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
        }
    }
    row
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `ca * a + cb * b`.
fn combine(a: &IntRow, ca: &BigInt, b: &IntRow, cb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, cb * &b[j].1));
            j += 1;
        } else {
            let v = ca * &a[i].1 + cb * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built, fully reduced row echelon form.
///
/// Only columns below `pivot_limit` may carry pivots; columns at or above it
/// are bookkeeping columns (used to track linear combinations).
#[derive(Clone, Debug)]
pub struct Echelon {
    pivot_limit: usize,
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
    row_of_pivot: BTreeMap<usize, usize>,
    column_counts: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(pivot_limit: usize) -> Self {
        Echelon {
            pivot_limit,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: BTreeMap::new(),
            column_counts: BTreeMap::new(),
        }
    }

    /// Echelon form of the span of `rows`. Sparse rows are inserted first and
    /// pivots go to the sparsest available column.
    pub fn from_rows(mut rows: Vec<IntRow>, pivot_limit: usize) -> Self {
        let mut e = Echelon::new(pivot_limit);
        for r in &rows {
            for (c, _) in r {
                *e.column_counts.entry(*c).or_insert(0) += 1;
            }
        }
        rows.sort_by_key(|r| r.len());
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn from_qvecs<'a>(vecs: impl IntoIterator<Item = &'a QVec>, pivot_limit: usize) -> Self {
        Echelon::from_rows(vecs.into_iter().map(|v| clear_denominators(v)).collect(), pivot_limit)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn eliminate(&self, mut row: IntRow) -> IntRow {
        let hits: Vec<usize> = row
            .iter()
            .filter(|(c, _)| self.row_of_pivot.contains_key(c))
            .map(|(c, _)| *c)
            .collect();
        for c in hits {
            let b = &self.rows[self.row_of_pivot[&c]];
            let pv = entry(b, c).expect("pivot entry");
            let Some(rv) = entry(&row, c).cloned() else { continue };
            row = primitive(combine(&row, pv, b, &-rv));
        }
        row
    }

    /// Adds a row; returns true iff it enlarged the span of the pivot part.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let row = self.eliminate(row);
        let pivot = row
            .iter()
            .filter(|(c, _)| *c < self.pivot_limit)
            .min_by_key(|(c, _)| (self.column_counts.get(c).copied().unwrap_or(0), *c))
            .map(|(c, _)| *c);
        let Some(p) = pivot else { return false };
        let mut row = primitive(row);
        if entry(&row, p).unwrap().is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
        let pv = entry(&row, p).unwrap().clone();
        for b in self.rows.iter_mut() {
            if let Some(bv) = entry(b, p).cloned() {
                *b = primitive(combine(b, &pv, &row, &-bv));
            }
        }
        self.row_of_pivot.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        true
    }

    /// Residual of `v` after reduction against the echelon rows; zero in the
    /// pivot part iff `v` lies in the span (pivot part).
    pub fn reduce(&self, v: &QVec) -> BTreeMap<usize, Rational> {
        let mut r: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let hits: Vec<usize> = r
            .keys()
            .filter(|c| self.row_of_pivot.contains_key(c))
            .copied()
            .collect();
        for c in hits {
            let Some(rv) = r.get(&c).cloned() else { continue };
            let b = &self.rows[self.row_of_pivot[&c]];
            let pv = entry(b, c).unwrap();
            let f = rv / Rational::from_integer(pv.clone());
            for (col, bv) in b {
                let e = r.entry(*col).or_insert_with(Rational::zero);
                *e -= &f * Rational::from_integer(bv.clone());
                if e.is_zero() {
                    r.remove(col);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).keys().all(|&c| c >= self.pivot_limit)
    }

    /// Null space of the rows viewed as linear equations over `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<QVec> {
        let mut by_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (ri, row) in self.rows.iter().enumerate() {
            for (c, _) in row {
                by_col.entry(*c).or_default().push(ri);
            }
        }
        let mut out = Vec::new();
        for f in 0..ncols {
            if self.row_of_pivot.contains_key(&f) {
                continue;
            }
            let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
            v.insert(f, Rational::one());
            if let Some(rows) = by_col.get(&f) {
                for &ri in rows {
                    let row = &self.rows[ri];
                    let p = self.pivots[ri];
                    let val = -Rational::new(entry(row, f).unwrap().clone(), entry(row, p).unwrap().clone());
                    v.insert(p, val);
                }
            }
            out.push(v.into_iter().collect());
        }
        out
    }
}

/// Sparse matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColumnMatrix {
    pub nrows: usize,
    pub columns: Vec<QVec>,
}

impl ColumnMatrix {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                *out.entry(*i).or_insert_with(Rational::zero) += a * x;
            }
        }
        qvec_from_map(out)
    }

    /// Row equations of the submatrix with rows `keep_row` and columns
    /// `cols` (renumbered to their position in `cols`).
    pub fn equations(&self, cols: &[usize], keep_row: impl Fn(usize) -> bool) -> Vec<QVec> {
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (local, &j) in cols.iter().enumerate() {
            for (i, a) in &self.columns[j] {
                if keep_row(*i) {
                    rows.entry(*i).or_default().push((local, a.clone()));
                }
            }
        }
        rows.into_values().collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_qvecs(self.columns.iter(), usize::MAX).rank()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn compose(&self, first: &ColumnMatrix) -> ColumnMatrix {
        ColumnMatrix {
            nrows: self.nrows,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }
}

/// Basis of `{x in R^ncols : E x = 0}` for equation rows `E`.
pub fn kernel(equations: &[QVec], ncols: usize) -> Vec<QVec> {
    Echelon::from_qvecs(equations.iter(), ncols).nullspace(ncols)
}

/// Dimension of the span of a set of vectors.
pub fn span_rank<'a>(vecs: impl IntoIterator<Item = &'a QVec>) -> usize {
    Echelon::from_qvecs(vecs, usize::MAX).rank()
}

/// Coefficients `x` with `sum x_j columns[j] = target`, if any exist.
pub fn solve_combination(columns: &[QVec], target: &QVec) -> Option<Vec<Rational>> {
    let width = columns
        .iter()
        .chain(core::iter::once(target))
        .flat_map(|c| c.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let rows: Vec<IntRow> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut aug: QVec = c.clone();
            aug.push((width + j, Rational::one()));
            clear_denominators(&aug)
        })
        .collect();
    let ech = Echelon::from_rows(rows, width);
    let residual = ech.reduce(target);
    if residual.keys().any(|&c| c < width) {
        return None;
    }
    let mut x = alloc::vec![Rational::zero(); columns.len()];
    for (c, v) in residual {
        x[c - width] = -v;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn dense(v: &[i64]) -> QVec {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, q(x)))
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![dense(&[1, 2, 3]), dense(&[2, 4, 6]), dense(&[0, 1, 1])];
        assert_eq!(span_rank(rows.iter()), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let eqs = vec![dense(&[1, 2, 3, 0]), dense(&[0, 1, -1, 5])];
        let ker = kernel(&eqs, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for e in &eqs {
                let mut s = q(0);
                for (i, a) in e {
                    if let Some((_, b)) = v.iter().find(|(j, _)| j == i) {
                        s += a * b;
                    }
                }
                assert_eq!(s, q(0));
            }
        }
    }

    #[test]
    fn solve_finds_rational_coefficients() {
        let cols = vec![dense(&[2, 0, 1]), dense(&[0, 3, 1])];
        let target = vec![(0, q(1)), (1, q(1)), (2, Rational::new(5.into(), 6.into()))];
        let x = solve_combination(&cols, &target).unwrap();
        assert_eq!(x, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())]);
        assert!(solve_combination(&cols, &dense(&[1, 0, 0])).is_none());
    }

    #[test]
    fn reduced_form_has_no_cross_pivot_entries() {
        let rows = vec![dense(&[1, 1, 0]), dense(&[1, 0, 1]), dense(&[0, 1, 1])];
        let e = Echelon::from_qvecs(rows.iter(), 3);
        assert_eq!(e.rank(), 3);
        for (ri, row) in e.rows().iter().enumerate() {
            for (rj, &p) in e.pivots().iter().enumerate() {
                if ri != rj {
                    assert!(entry(row, p).is_none());
                }
            }
        }
    }
}
