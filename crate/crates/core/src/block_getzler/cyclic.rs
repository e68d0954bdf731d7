use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{BgSlice, MixedComplexTruncation, SliceLabel};
use crate::error::{Error, Result};
use crate::exact_arith::{homology_ranks, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CyclicVariant {
    /// `(C[u]/u^{K+1}, b + uB)`.
    Negative,
    /// `(u^{-K} C[u]/u^{K+1}, b + uB)`.
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: i64,
    pub rank: usize,
    /// The truncation cannot change this rank.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRanks {
    pub slice: SliceLabel,
    pub ranks: Vec<DegreeRank>,
}

impl SliceRanks {
    pub fn rank(&self, degree: i64) -> usize {
        self.ranks.iter().find(|r| r.degree == degree).map_or(0, |r| r.rank)
    }

    /// Degrees with nonzero rank.
    pub fn support(&self) -> Vec<(i64, usize)> {
        self.ranks.iter().filter(|r| r.rank > 0).map(|r| (r.degree, r.rank)).collect()
    }
}

/// Hochschild homology ranks per slice and cohomological degree.
pub fn hh_ranks(cx: &MixedComplexTruncation) -> Result<Vec<SliceRanks>> {
    cx.slices.iter().map(slice_hh).collect()
}

fn slice_hh(slice: &BgSlice) -> Result<SliceRanks> {
    let nmax = slice.n_max();
    let mut acc: BTreeMap<i64, (usize, bool)> = BTreeMap::new();
    for i in slice.internal_degrees() {
        for n in 0..=nmax {
            if slice.dim(n, i) == 0 {
                continue;
            }
            let degree = i - n as i64;
            let entry = acc.entry(degree).or_insert((0, slice.exhausted));
            if n == nmax && !slice.exhausted {
                entry.1 = false;
                continue;
            }
            let d_in = if n < nmax {
                slice.b_matrix(n + 1, i)
            } else {
                RationalMatrix::zeros(slice.dim(n, i), 0)
            };
            entry.0 += homology_ranks(&d_in, &slice.b_matrix(n, i))?;
        }
    }
    Ok(SliceRanks {
        slice: slice.label,
        ranks: acc.into_iter().map(|(degree, (rank, certified))| DegreeRank { degree, rank, certified }).collect(),
    })
}

/// Negative cyclic or periodic cyclic ranks per slice and total degree.
/// Only slices whose chains are exhausted by the simplicial bound are used.
pub fn cyclic_ranks(cx: &MixedComplexTruncation, variant: CyclicVariant) -> Result<Vec<SliceRanks>> {
    let mut out = Vec::new();
    for slice in cx.slices.iter().filter(|s| s.exhausted) {
        if slice.connes.is_none() {
            return Err(Error::NotAComplex(format!("{} is paracyclic; no Connes operator", slice.label)));
        }
        out.push(slice_cyclic(slice, cx.u_bound as i64, variant)?);
    }
    Ok(out)
}

/// Blocks `(n, k)` of the total complex in degree `D = I − n + 2k`.
fn total_blocks(slice: &BgSlice, i: i64, d: i64, kmin: i64, kmax: i64) -> Vec<(usize, i64)> {
    (0..=slice.n_max())
        .filter(|&n| slice.dim(n, i) > 0)
        .filter_map(|n| {
            let twice_k = d - i + n as i64;
            (twice_k.rem_euclid(2) == 0 && (kmin..=kmax).contains(&(twice_k / 2))).then_some((n, twice_k / 2))
        })
        .collect()
}

fn total_differential(slice: &BgSlice, i: i64, src: &[(usize, i64)], dst: &[(usize, i64)]) -> RationalMatrix {
    let offsets = |blocks: &[(usize, i64)]| {
        let mut o = Vec::new();
        let mut acc = 0;
        for &(n, _) in blocks {
            o.push(acc);
            acc += slice.dim(n, i);
        }
        (o, acc)
    };
    let (so, sdim) = offsets(src);
    let (to, tdim) = offsets(dst);
    let mut m = RationalMatrix::zeros(tdim, sdim);
    for (a, &(n, k)) in src.iter().enumerate() {
        let mut place = |block: RationalMatrix, target: (usize, i64)| {
            if let Some(b) = dst.iter().position(|&x| x == target) {
                for r in 0..block.rows() {
                    for (c, x) in block.row(r) {
                        m.add_to(to[b] + r, so[a] + c, x);
                    }
                }
            }
        };
        if n > 0 {
            place(slice.b_matrix(n, i), (n - 1, k));
        }
        if n < slice.n_max() {
            place(slice.connes_matrix(n, i).expect("cyclic slice"), (n + 1, k + 1));
        }
    }
    m
}

fn slice_cyclic(slice: &BgSlice, kbound: i64, variant: CyclicVariant) -> Result<SliceRanks> {
    let kmin = match variant {
        CyclicVariant::Negative => 0,
        CyclicVariant::Periodic => -kbound,
    };
    let mut acc: BTreeMap<i64, (usize, bool)> = BTreeMap::new();
    for i in slice.internal_degrees() {
        let ns: Vec<i64> = (0..=slice.n_max()).filter(|&n| slice.dim(n, i) > 0).map(|n| n as i64).collect();
        let (Some(&nlo), Some(&nhi)) = (ns.first(), ns.last()) else { continue };
        let dlo = i - nhi + 2 * kmin;
        let dhi = i - nlo + 2 * kbound;
        for d in dlo..=dhi {
            let here = total_blocks(slice, i, d, kmin, kbound);
            if here.is_empty() {
                continue;
            }
            let below = total_blocks(slice, i, d - 1, kmin, kbound);
            let above = total_blocks(slice, i, d + 1, kmin, kbound);
            let d_in = total_differential(slice, i, &below, &here);
            let d_out = total_differential(slice, i, &here, &above);
            let rank = homology_ranks(&d_in, &d_out)?;
            let certified = ns.iter().all(|&n| {
                (d - 1..=d + 1).all(|dd| {
                    let twice_k = dd - i + n;
                    if twice_k.rem_euclid(2) != 0 {
                        return true;
                    }
                    let k = twice_k / 2;
                    match variant {
                        CyclicVariant::Negative => k <= kbound,
                        CyclicVariant::Periodic => (-kbound..=kbound).contains(&k),
                    }
                })
            });
            let e = acc.entry(d).or_insert((0, true));
            e.0 += rank;
            e.1 &= certified;
        }
    }
    Ok(SliceRanks {
        slice: slice.label,
        ranks: acc.into_iter().map(|(degree, (rank, certified))| DegreeRank { degree, rank, certified }).collect(),
    })
}

/// Rank of the map `H_{n,I} → H_{n+1,I}` induced by `B`.
pub fn connes_induced_rank(slice: &BgSlice, n: usize, i: i64) -> Result<usize> {
    let connes = slice
        .connes_matrix(n, i)
        .ok_or_else(|| Error::NotAComplex(format!("{} has no Connes operator", slice.label)))?;
    if n + 2 > slice.n_max() && !slice.exhausted {
        return Err(Error::TruncationTooSmall(format!("need simplicial degree {}", n + 2)));
    }
    let cycles = slice.b_matrix(n, i).kernel_basis();
    let images: Vec<_> = cycles.iter().map(|z| connes.apply(z)).collect();
    let target = slice.dim(n + 1, i);
    let boundaries =
        if n + 2 <= slice.n_max() { slice.b_matrix(n + 2, i) } else { RationalMatrix::zeros(target, 0) };
    let with_images = boundaries.hcat(&RationalMatrix::from_columns(target, &images))?;
    Ok(with_images.rank() - boundaries.rank())
}
