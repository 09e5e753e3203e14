//! Algebraic connectivity and the synchronizability ratio
//! `R = lambda_conn / lambda_max` (second-smallest over largest Laplacian
//! eigenvalue).
//!
//! Exact extremes come from per-dimension enumeration. Because every cycle
//! eigenvalue is non-negative and zero at frequency 0, the torus maximum is
//! the sum of per-dimension maxima and the second-smallest value is the
//! smallest non-zero-frequency cycle eigenvalue over all dimensions, with
//! the remaining dimensions at frequency 0.
//!
//! The published closed forms for R assume the largest eigenvalue sits at
//! `j = k/2` (even sizes) or `j = (k-1)/2` (odd sizes) in every dimension.
//! That is not true for every `(k, r)`, so those values are computed
//! separately and audited against the exact ratio.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{cycle_eigenvalue_unchecked, torus_eigenvalue, FreqIndex, Spectrum};
use crate::topology::{Family, GraphSpec};

/// Default absolute tolerance when auditing closed-form ratios.
pub const DEFAULT_AUDIT_TOL: f64 = 1e-9;

/// Relative tolerance for treating two eigenvalues as tied when picking
/// reported indices.
const TIE_TOL: f64 = 1e-12;

/// Which closed form for R applies to a spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PaperCase {
    CycleEven,
    CycleOdd,
    TorusEven,
    TorusOdd,
    MTorusEven,
    MTorusOdd,
}

impl PaperCase {
    pub fn name(self) -> &'static str {
        match self {
            PaperCase::CycleEven => "cycle-even",
            PaperCase::CycleOdd => "cycle-odd",
            PaperCase::TorusEven => "torus-even",
            PaperCase::TorusOdd => "torus-odd",
            PaperCase::MTorusEven => "mtorus-even",
            PaperCase::MTorusOdd => "mtorus-odd",
        }
    }

    pub fn is_even(self) -> bool {
        matches!(
            self,
            PaperCase::CycleEven | PaperCase::TorusEven | PaperCase::MTorusEven
        )
    }

    /// Case for a spec, or `MixedParity` if dimension sizes disagree in parity.
    pub fn for_spec(spec: &GraphSpec) -> Result<Self> {
        spec.check()?;
        let even = spec.dims.iter().all(|k| k % 2 == 0);
        let odd = spec.dims.iter().all(|k| k % 2 == 1);
        if !even && !odd {
            return Err(Error::MixedParity {
                dims: spec.dims.clone(),
            });
        }
        Ok(match (spec.family, even) {
            (Family::Cycle, true) => PaperCase::CycleEven,
            (Family::Cycle, false) => PaperCase::CycleOdd,
            (Family::Torus2D, true) => PaperCase::TorusEven,
            (Family::Torus2D, false) => PaperCase::TorusOdd,
            (Family::TorusM, true) => PaperCase::MTorusEven,
            (Family::TorusM, false) => PaperCase::MTorusOdd,
        })
    }
}

impl fmt::Display for PaperCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremes {
    pub lambda_conn: f64,
    pub lambda_max: f64,
    pub argmin_index: FreqIndex,
    pub argmax_index: FreqIndex,
}

/// Exact second-smallest and largest Laplacian eigenvalues, with the
/// frequency indices attaining them, by per-dimension enumeration.
pub fn extremes_separable(spec: &GraphSpec) -> Result<Extremes> {
    spec.check()?;
    let r = spec.overhead;
    let m = spec.dimension();

    let per_dim: Vec<Vec<f64>> = spec
        .dims
        .iter()
        .map(|&k| (0..k).map(|j| cycle_eigenvalue_unchecked(k, r, j)).collect())
        .collect();

    // Values are exact maxima/minima; reported indices are the first ones
    // within rounding of them, so ties resolve to the lowest index.
    let tied = |a: f64, b: f64| (a - b).abs() <= TIE_TOL * (1.0 + a.abs().max(b.abs()));

    let mut lambda_max = 0.0;
    let mut argmax = vec![0; m];
    for (d, values) in per_dim.iter().enumerate() {
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        lambda_max += max;
        argmax[d] = values.iter().position(|&v| tied(v, max)).unwrap_or(0);
    }

    // every valid dimension has k >= 3, so a non-zero frequency exists
    let lambda_conn = per_dim
        .iter()
        .flat_map(|values| values[1..].iter().copied())
        .fold(f64::INFINITY, f64::min);
    let (dim, freq) = per_dim
        .iter()
        .enumerate()
        .find_map(|(d, values)| {
            (1..values.len())
                .find(|&j| tied(values[j], lambda_conn))
                .map(|j| (d, j))
        })
        .expect("validated spec has a non-zero frequency");
    let mut argmin = vec![0; m];
    argmin[dim] = freq;

    Ok(Extremes {
        lambda_conn,
        lambda_max,
        argmin_index: FreqIndex(argmin),
        argmax_index: FreqIndex(argmax),
    })
}

/// Algebraic connectivity, the second-smallest Laplacian eigenvalue.
pub fn connectivity(spec: &GraphSpec) -> Result<f64> {
    Ok(extremes_separable(spec)?.lambda_conn)
}

/// Ratio from a sorted spectrum: second entry over last entry.
pub fn ratio_from_spectrum(spectrum: &Spectrum) -> f64 {
    let sv = spectrum.sorted_values();
    sv[1] / sv[sv.len() - 1]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncReport {
    pub spec: GraphSpec,
    pub lambda_conn: f64,
    pub lambda_max: f64,
    pub ratio_exact: f64,
    pub ratio_paper: Option<f64>,
    pub paper_case: Option<PaperCase>,
    pub deviation: Option<f64>,
    pub argmin_index: FreqIndex,
    pub argmax_index: FreqIndex,
}

pub fn sync_exact(spec: &GraphSpec) -> Result<SyncReport> {
    let ext = extremes_separable(spec)?;
    let ratio_exact = ext.lambda_conn / ext.lambda_max;
    let paper = match paper_closed_form_r(spec) {
        Ok(p) => Some(p),
        Err(Error::MixedParity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SyncReport {
        spec: spec.clone(),
        lambda_conn: ext.lambda_conn,
        lambda_max: ext.lambda_max,
        ratio_exact,
        ratio_paper: paper.map(|(v, _)| v),
        paper_case: paper.map(|(_, c)| c),
        deviation: paper.map(|(v, _)| (ratio_exact - v).abs()),
        argmin_index: ext.argmin_index,
        argmax_index: ext.argmax_index,
    })
}

/// `sin((2r+1) x) / sin(x)`, the kernel quotient as it appears in the
/// closed forms (with `x = pi * j / k`).
fn kernel_quotient(r: usize, x: f64) -> f64 {
    ((2 * r + 1) as f64 * x).sin() / x.sin()
}

/// `cos(pi * r)` for integer r.
fn cos_pi(r: usize) -> f64 {
    if r % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Claimed second-smallest eigenvalue `(2r+1) - sin((2r+1)pi/k)/sin(pi/k)`,
/// frequency 1 in a single dimension of size `k`.
fn claimed_conn_term(r: usize, k: usize) -> f64 {
    (2 * r + 1) as f64 - kernel_quotient(r, PI / k as f64)
}

/// Claimed per-dimension maximum: `2r + 1 - cos(pi r)` at `j = k/2` for even
/// `k`, or the kernel form at `j = (k-1)/2` for odd `k`.
fn claimed_max_term(r: usize, k: usize) -> f64 {
    let two_r1 = (2 * r + 1) as f64;
    if k % 2 == 0 {
        two_r1 - cos_pi(r)
    } else {
        two_r1 - kernel_quotient(r, PI * (k - 1) as f64 / (2 * k) as f64)
    }
}

/// Closed-form synchronizability ratio for all-even or all-odd dimension
/// sizes.
///
/// The numerator takes the smallest frequency-1 term over all dimensions
/// (the published forms fix one dimension, which is only correct for equal
/// sizes). Odd-size denominators are assembled from the per-dimension
/// eigenvalue at `j = (k-1)/2`.
pub fn paper_closed_form_r(spec: &GraphSpec) -> Result<(f64, PaperCase)> {
    let case = PaperCase::for_spec(spec)?;
    let r = spec.overhead;
    let numerator = spec
        .dims
        .iter()
        .map(|&k| claimed_conn_term(r, k))
        .fold(f64::INFINITY, f64::min);
    let denominator: f64 = if case.is_even() {
        spec.dimension() as f64 * claimed_max_term(r, spec.dims[0])
    } else {
        spec.dims.iter().map(|&k| claimed_max_term(r, k)).sum()
    };
    Ok((numerator / denominator, case))
}

/// The published final formula for R, transcribed term for term, including
/// its fixed choice of dimension in the numerator and its displayed odd-case
/// expressions.
pub fn paper_literal_r(spec: &GraphSpec) -> Result<(f64, PaperCase)> {
    let case = PaperCase::for_spec(spec)?;
    let r = spec.overhead;
    let two_r1 = (2 * r + 1) as f64;
    let m = spec.dimension() as f64;
    let dims = &spec.dims;
    let value = match case {
        PaperCase::CycleEven => {
            let n = dims[0] as f64;
            let s = (PI / n).sin();
            (two_r1 * s - (two_r1 * PI / n).sin()) / ((two_r1 - cos_pi(r)) * s)
        }
        PaperCase::CycleOdd => {
            let n = dims[0] as f64;
            let s = (PI / n).sin();
            let c = (PI / (2.0 * n)).cos();
            ((two_r1 * s - (two_r1 * PI / n).sin()) * c)
                / ((two_r1 * c - (two_r1 * PI / n).cos()) * s)
        }
        PaperCase::TorusEven => claimed_conn_term(r, dims[1]) / (2.0 * two_r1 - 2.0 * cos_pi(r)),
        PaperCase::TorusOdd => {
            let denom = 2.0 * two_r1
                - dims
                    .iter()
                    .map(|&k| kernel_quotient(r, PI * (k - 1) as f64 / (2 * k) as f64))
                    .sum::<f64>();
            claimed_conn_term(r, dims[1]) / denom
        }
        PaperCase::MTorusEven => claimed_conn_term(r, dims[0]) / (m * (two_r1 - cos_pi(r))),
        PaperCase::MTorusOdd => {
            let denom = two_r1 * m
                - dims
                    .iter()
                    .map(|&k| kernel_quotient(r, PI * (k - 1) as f64 / k as f64))
                    .sum::<f64>();
            claimed_conn_term(r, dims[0]) / denom
        }
    };
    Ok((value, case))
}

/// Frequency index the closed forms claim for the largest eigenvalue:
/// `k/2` per even dimension, `(k-1)/2` per odd one.
pub fn claimed_argmax(spec: &GraphSpec) -> FreqIndex {
    FreqIndex(spec.dims.iter().map(|&k| k / 2).collect())
}

/// Audit of one spec against the closed forms for R.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub spec: GraphSpec,
    pub case: PaperCase,
    pub ratio_exact: f64,
    pub ratio_paper: f64,
    pub deviation: f64,
    pub exact_match: bool,
    /// Value of the published final formula as printed.
    pub ratio_literal: f64,
    pub literal_deviation: f64,
    pub claimed_argmax: FreqIndex,
    pub exact_argmax: FreqIndex,
    /// Eigenvalue at the claimed index.
    pub claimed_max_value: f64,
    pub lambda_max: f64,
    /// Whether the claimed index attains the largest eigenvalue within `tol`.
    pub claimed_attains_max: bool,
}

pub fn verify_theorems(spec: &GraphSpec, tol: f64) -> Result<DiscrepancyRecord> {
    let (ratio_paper, case) = paper_closed_form_r(spec)?;
    let (ratio_literal, _) = paper_literal_r(spec)?;
    let ext = extremes_separable(spec)?;
    let ratio_exact = ext.lambda_conn / ext.lambda_max;
    let deviation = (ratio_exact - ratio_paper).abs();
    let claimed = claimed_argmax(spec);
    let claimed_max_value = torus_eigenvalue(spec, &claimed)?;
    Ok(DiscrepancyRecord {
        spec: spec.clone(),
        case,
        ratio_exact,
        ratio_paper,
        deviation,
        exact_match: deviation <= tol,
        ratio_literal,
        literal_deviation: (ratio_exact - ratio_literal).abs(),
        claimed_argmax: claimed,
        exact_argmax: ext.argmax_index,
        claimed_max_value,
        lambda_max: ext.lambda_max,
        claimed_attains_max: (ext.lambda_max - claimed_max_value).abs() <= tol,
    })
}
