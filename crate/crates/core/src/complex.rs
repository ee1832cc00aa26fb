//! Finite slices of a filtered cochain complex with coordinate filtrations.
//!
//! Every coordinate of a degree carries a weight; the filtration `F^p` of that
//! degree is the span of the coordinates of weight `>= p`. All differentials
//! handled here preserve the filtration. The spectral-sequence terms are
//! computed directly from the general formula
//!
//! ```text
//! Z_r^p = { x in F^p : dx in F^{p+r} }
//! E_r^p = Z_r^p / ( Z_{r-1}^{p+1} + F^p ∩ d(F^{p-r+1}) )
//! ```

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linalg::{kernel, span_rank, ColumnMatrix, Echelon, QVec};

/// A filtration level, with `Infinity` for the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    At(u32),
    Infinity,
}

impl Level {
    pub fn finite(self) -> Option<u32> {
        match self {
            Level::At(p) => Some(p),
            Level::Infinity => None,
        }
    }
}

impl core::fmt::Display for Level {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Level::At(p) => write!(f, "{p}"),
            Level::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DegreeSlice {
    pub weights: Vec<u32>,
    /// Differential into the next degree, one column per coordinate.
    pub differential: ColumnMatrix,
}

impl DegreeSlice {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Consecutive degree slices; degrees absent from the map are zero.
#[derive(Clone, Debug, Default)]
pub struct FilteredComplex {
    slices: BTreeMap<i64, DegreeSlice>,
}

fn level_of(weights: &[u32], v: &QVec) -> Level {
    v.iter()
        .map(|(i, _)| weights[*i])
        .min()
        .map_or(Level::Infinity, Level::At)
}

impl FilteredComplex {
    pub fn new() -> Self {
        FilteredComplex::default()
    }

    pub fn insert(&mut self, degree: i64, slice: DegreeSlice) {
        self.slices.insert(degree, slice);
    }

    pub fn slice(&self, degree: i64) -> Option<&DegreeSlice> {
        self.slices.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.slices.keys().copied()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slice(n).map_or(0, DegreeSlice::dim)
    }

    pub fn weights(&self, n: i64) -> &[u32] {
        self.slice(n).map_or(&[], |s| &s.weights)
    }

    fn diff(&self, n: i64) -> Option<&ColumnMatrix> {
        self.slice(n).map(|s| &s.differential)
    }

    pub fn apply(&self, n: i64, v: &QVec) -> QVec {
        match self.diff(n) {
            Some(d) => d.apply(v),
            None => Vec::new(),
        }
    }

    pub fn level(&self, n: i64, v: &QVec) -> Level {
        level_of(self.weights(n), v)
    }

    pub fn max_weight(&self, n: i64) -> Option<u32> {
        self.weights(n).iter().copied().max()
    }

    pub fn rank_out(&self, n: i64) -> usize {
        self.diff(n).map_or(0, ColumnMatrix::rank)
    }

    pub fn cohomology_dim(&self, n: i64) -> usize {
        self.dim(n) - self.rank_out(n) - self.rank_out(n - 1)
    }

    pub fn cocycles(&self, n: i64) -> Vec<QVec> {
        let all: Vec<usize> = (0..self.dim(n)).collect();
        match self.diff(n) {
            Some(d) => kernel(&d.equations(&all, |_| true), all.len()),
            None => all
                .iter()
                .map(|&i| alloc::vec![(i, crate::Rational::from_integer(1.into()))])
                .collect(),
        }
    }

    pub fn coboundaries(&self, n: i64) -> Vec<QVec> {
        self.diff(n - 1)
            .map(|d| d.columns.iter().filter(|c| !c.is_empty()).cloned().collect())
            .unwrap_or_default()
    }

    pub fn coboundary_echelon(&self, n: i64) -> Echelon {
        Echelon::from_qvecs(self.coboundaries(n).iter(), usize::MAX)
    }

    pub fn is_coboundary(&self, n: i64, v: &QVec) -> bool {
        self.coboundary_echelon(n).contains(v)
    }

    /// Cocycle representatives of a basis of `H^n`, each reduced modulo
    /// coboundaries to a deterministic normal form.
    pub fn cohomology_basis(&self, n: i64) -> Vec<QVec> {
        let mut ech = self.coboundary_echelon(n);
        let mut reps = Vec::new();
        for z in self.cocycles(n) {
            let normal: QVec = ech.reduce(&z).into_iter().collect();
            if normal.is_empty() {
                continue;
            }
            if ech.insert(crate::linalg::clear_denominators(&normal)) {
                reps.push(normal);
            }
        }
        // re-reduce against the final coboundary span only
        let cob = self.coboundary_echelon(n);
        reps.iter().map(|r| cob.reduce(r).into_iter().collect()).collect()
    }

    /// Largest `p` such that `z + d(h)` lies in `F^p` for some `h`
    /// (`Infinity` when `z` is a coboundary).
    pub fn max_level_of_class(&self, n: i64, z: &QVec) -> Level {
        if self.is_coboundary(n, z) {
            return Level::Infinity;
        }
        let top = self.max_weight(n).unwrap_or(0);
        for p in (0..=top).rev() {
            if self.class_meets_filtration(n, z, p) {
                return Level::At(p);
            }
        }
        Level::At(0)
    }

    /// Whether some representative of `z + im d` lies in `F^p`.
    pub fn class_meets_filtration(&self, n: i64, z: &QVec, p: u32) -> bool {
        let w = self.weights(n);
        let low = |v: &QVec| -> QVec { v.iter().filter(|(i, _)| w[*i] < p).cloned().collect() };
        let cols: Vec<QVec> = self.coboundaries(n).iter().map(low).collect();
        Echelon::from_qvecs(cols.iter(), usize::MAX).contains(&low(z))
    }

    fn filtered_coordinates(&self, n: i64, p: i64) -> Vec<usize> {
        self.weights(n)
            .iter()
            .enumerate()
            .filter(|(_, &w)| i64::from(w) >= p)
            .map(|(i, _)| i)
            .collect()
    }

    /// `Z_r^p` in degree `n`: elements of `F^p` whose differential lies in `F^{p+r}`.
    pub fn z_space(&self, n: i64, p: i64, r: i64) -> Vec<QVec> {
        let cols = self.filtered_coordinates(n, p);
        let Some(d) = self.diff(n) else {
            return cols.iter().map(|&i| alloc::vec![(i, crate::Rational::from_integer(1.into()))]).collect();
        };
        let target_w = self.weights(n + 1);
        let eqs = d.equations(&cols, |i| i64::from(target_w[i]) < p + r);
        kernel(&eqs, cols.len())
            .into_iter()
            .map(|v| v.into_iter().map(|(i, c)| (cols[i], c)).collect())
            .collect()
    }

    /// `B_r^p = F^p ∩ d(F^{p-r})` in degree `n`.
    pub fn b_space(&self, n: i64, p: i64, r: i64) -> Vec<QVec> {
        self.z_space(n - 1, p - r, r)
            .iter()
            .map(|v| self.apply(n - 1, v))
            .filter(|v| !v.is_empty())
            .collect()
    }

    /// Dimension of `E_r^p` in total degree `n`.
    pub fn page_dim(&self, n: i64, p: i64, r: i64) -> usize {
        let z = self.z_space(n, p, r);
        if z.is_empty() {
            return 0;
        }
        let mut denom = self.z_space(n, p + 1, r - 1);
        denom.extend(self.b_space(n, p, r - 1));
        z.len() - span_rank(denom.iter())
    }

    /// Rank of `d_r` leaving `E_r^p` in total degree `n`.
    pub fn page_differential_rank(&self, n: i64, p: i64, r: i64) -> usize {
        let z = self.z_space(n, p, r);
        if z.is_empty() {
            return 0;
        }
        let mut ker = self.z_space(n, p, r + 1);
        ker.extend(self.z_space(n, p + 1, r - 1));
        z.len() - span_rank(ker.iter())
    }

    /// Page index from which `E_r = E_∞` in degree `n`.
    pub fn infinity_page(&self, n: i64) -> i64 {
        let top = [n - 1, n, n + 1]
            .iter()
            .filter_map(|&m| self.max_weight(m))
            .max()
            .unwrap_or(0);
        i64::from(top) + 2
    }

    /// Dimension of the kernel of `H^n -> H^n(complex / F^{level+1})`.
    pub fn quotient_kernel_dim(&self, n: i64, level: u32) -> usize {
        let w = self.weights(n);
        let keep = |v: &QVec| -> QVec { v.iter().filter(|(i, _)| w[*i] <= level).cloned().collect() };
        let boundaries: Vec<QVec> = self.coboundaries(n).iter().map(keep).collect();
        let b_rank = span_rank(boundaries.iter());
        let mut all = boundaries;
        all.extend(self.cocycles(n).iter().map(keep));
        let image = span_rank(all.iter()) - b_rank;
        self.cohomology_dim(n) - image
    }
}
