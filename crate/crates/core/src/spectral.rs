//! Pages of the word-length spectral sequence of (ΛV, d) and of its Ext
//! version on the Hom complex.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::FilteredComplex;
use crate::error::Result;
use crate::ext::ExtComputation;
use crate::model::SullivanModel;

/// One page: `entries[(p, n)]` is the dimension of E_r^p in total degree n,
/// `out_ranks[(p, n)]` the rank of d_r leaving it. Zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub page: u32,
    pub entries: BTreeMap<(u32, i64), usize>,
    pub out_ranks: BTreeMap<(u32, i64), usize>,
}

impl SpectralPage {
    pub fn dim(&self, p: u32, n: i64) -> usize {
        self.entries.get(&(p, n)).copied().unwrap_or(0)
    }

    /// Σ_p dim E^p in total degree n.
    pub fn total(&self, n: i64) -> usize {
        self.entries.iter().filter(|((_, m), _)| *m == n).map(|(_, d)| d).sum()
    }

    pub fn levels(&self, n: i64) -> Vec<u32> {
        self.entries.keys().filter(|(_, m)| *m == n).map(|(p, _)| *p).collect()
    }
}

/// Page `r` of a filtered complex over the given total degrees.
pub fn page_of(complex: &FilteredComplex, r: u32, degrees: impl IntoIterator<Item = i64>) -> SpectralPage {
    let mut entries = BTreeMap::new();
    let mut out_ranks = BTreeMap::new();
    let r = i64::from(r);
    for n in degrees {
        let Some(top) = complex.max_weight(n) else { continue };
        for p in 0..=top {
            let dim = complex.page_dim(n, i64::from(p), r);
            if dim > 0 {
                entries.insert((p, n), dim);
                let rank = complex.page_differential_rank(n, i64::from(p), r);
                if rank > 0 {
                    out_ranks.insert((p, n), rank);
                }
            }
        }
    }
    SpectralPage { page: r as u32, entries, out_ranks }
}

/// E_∞ of a filtered complex in each of the given degrees.
pub fn infinity_page_of(complex: &FilteredComplex, degrees: impl IntoIterator<Item = i64> + Clone) -> SpectralPage {
    let r = degrees.clone().into_iter().map(|n| complex.infinity_page(n)).max().unwrap_or(0);
    page_of(complex, r as u32, degrees)
}

/// Page r of the spectral sequence of the word-length filtration, degrees `0..=max_degree`.
pub fn mm_page(model: &SullivanModel, r: u32, max_degree: u32) -> SpectralPage {
    let c = model.cochain_complex(max_degree);
    page_of(&c, r, 0..=i64::from(max_degree))
}

pub fn mm_infinity_page(model: &SullivanModel, max_degree: u32) -> SpectralPage {
    let c = model.cochain_complex(max_degree);
    infinity_page_of(&c, 0..=i64::from(max_degree))
}

/// Page r of the Ext spectral sequence over the computed Hom window.
pub fn ext_page(ext: &ExtComputation, r: u32) -> SpectralPage {
    page_of(&ext.window.complex, r, ext.window.lo..=ext.window.hi)
}

pub fn ext_infinity_page(ext: &ExtComputation) -> SpectralPage {
    infinity_page_of(&ext.window.complex, ext.window.lo..=ext.window.hi)
}

/// sup{p : E_∞^p ≠ 0} over degrees `0..=max_degree`.
pub fn e0_from_ss(model: &SullivanModel, max_degree: u32) -> Option<u32> {
    mm_infinity_page(model, max_degree).entries.keys().map(|(p, _)| *p).max()
}

/// sup{p : 𝓔_∞^p ≠ 0} in Ext degree N, at the cap that certifies r.
pub fn r_from_ss(model: &SullivanModel, cap: u32) -> Result<Option<u32>> {
    let ext = ExtComputation::new(model, cap, 0)?;
    let n = ext.formal_dimension;
    Ok(ext_infinity_page(&ext).levels(n).into_iter().max())
}
