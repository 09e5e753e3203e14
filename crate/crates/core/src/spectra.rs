//! Closed-form Laplacian spectra of r-nearest-neighbor cycles and tori.
//!
//! The Laplacian of an r-nearest-neighbor cycle is circulant with first row
//! `[2r, -1 (r times), 0, .., 0, -1 (r times)]`, so its eigenvalue at
//! frequency `j` is `2r - 2 * sum_{i=1..r} cos(2*pi*j*i/n)`. Collapsing the
//! cosine sum with the Dirichlet kernel gives
//! `(2r + 1) - sin((2r+1)*pi*j/n) / sin(pi*j/n)`. A torus is a Cartesian
//! product of cycles and its eigenvalues are sums of one cycle eigenvalue
//! per dimension.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::GraphSpec;

/// Below this `|sin(theta/2)|` the kernel quotient is replaced by the
/// explicit cosine sum.
const QUOTIENT_FLOOR: f64 = 1e-6;

/// Frequency index `(j1, .., jm)`, one component per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreqIndex(pub Vec<usize>);

impl FreqIndex {
    pub fn zero(dims: usize) -> Self {
        FreqIndex(vec![0; dims])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Checks the index against a spec's grid.
    pub fn check(&self, spec: &GraphSpec) -> Result<()> {
        if self.0.len() != spec.dims.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.dims.len(),
                got: self.0.len(),
            });
        }
        match self.0.iter().zip(&spec.dims).find(|(&j, &k)| j >= k) {
            Some((&index, &size)) => Err(Error::IndexOutOfRange { index, size }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for FreqIndex {
    fn from(v: Vec<usize>) -> Self {
        FreqIndex(v)
    }
}

impl fmt::Display for FreqIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|j| j.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `1 + 2 * sum_{j=1..r} cos(j * theta)` via the Dirichlet kernel quotient
/// `sin((r + 1/2) theta) / sin(theta / 2)`.
///
/// At `sin(theta/2) == 0` the limit `2r + 1` is returned. Close to that
/// point the quotient is ill-conditioned and the cosine sum is used instead.
pub fn dirichlet_sum(r: usize, theta: f64) -> f64 {
    let half = (theta / 2.0).sin();
    if half == 0.0 {
        return (2 * r + 1) as f64;
    }
    if half.abs() <= QUOTIENT_FLOOR {
        return cosine_sum(r, theta);
    }
    ((r as f64 + 0.5) * theta).sin() / half
}

/// `1 + 2 * sum_{j=1..r} cos(j * theta)` summed term by term.
pub fn cosine_sum(r: usize, theta: f64) -> f64 {
    1.0 + 2.0 * (1..=r).map(|j| (j as f64 * theta).cos()).sum::<f64>()
}

/// Kernel value at `theta = 2*pi*j/k`, with the `j = 0 (mod k)` limit
/// decided on integers. `j` is folded to `min(j, k - j)` first so mirrored
/// frequencies give bitwise-equal values.
fn dirichlet_at(r: usize, j: usize, k: usize) -> f64 {
    let j = j % k;
    let j = j.min(k - j);
    if j == 0 {
        (2 * r + 1) as f64
    } else {
        dirichlet_sum(r, 2.0 * PI * j as f64 / k as f64)
    }
}

fn check_cycle_args(n: usize, r: usize, j: usize) -> Result<()> {
    if n < crate::topology::MIN_DIM_SIZE {
        return Err(Error::DegenerateSize { size: n });
    }
    if r == 0 || 2 * r + 1 > n {
        return Err(Error::InvalidOverhead { r, size: n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, size: n });
    }
    Ok(())
}

/// Laplacian eigenvalue of the r-nearest-neighbor cycle on `n` nodes at
/// frequency `j`, `(2r + 1) - D_r(2*pi*j/n)`.
pub fn cycle_eigenvalue(n: usize, r: usize, j: usize) -> Result<f64> {
    check_cycle_args(n, r, j)?;
    Ok(cycle_eigenvalue_unchecked(n, r, j))
}

#[inline]
pub(crate) fn cycle_eigenvalue_unchecked(n: usize, r: usize, j: usize) -> f64 {
    (2 * r + 1) as f64 - dirichlet_at(r, j, n)
}

/// Same eigenvalue from the unreduced cosine sum
/// `2r - 2 * sum_{i=1..r} cos(2*pi*j*i/n)`.
pub fn cycle_eigenvalue_cosine(n: usize, r: usize, j: usize) -> Result<f64> {
    check_cycle_args(n, r, j)?;
    let theta = 2.0 * PI * j as f64 / n as f64;
    Ok(2.0 * r as f64 - 2.0 * (1..=r).map(|i| (i as f64 * theta).cos()).sum::<f64>())
}

/// All `n` cycle eigenvalues in frequency order.
pub fn cycle_spectrum(n: usize, r: usize) -> Result<Vec<f64>> {
    check_cycle_args(n, r, 0)?;
    Ok((0..n).map(|j| cycle_eigenvalue_unchecked(n, r, j)).collect())
}

/// Eigenvalue of a torus (or cycle) at a multi-index: the sum of one cycle
/// eigenvalue per dimension.
pub fn torus_eigenvalue(spec: &GraphSpec, idx: &FreqIndex) -> Result<f64> {
    spec.check()?;
    idx.check(spec)?;
    Ok(spec
        .dims
        .iter()
        .zip(idx.as_slice())
        .map(|(&k, &j)| cycle_eigenvalue_unchecked(k, spec.overhead, j))
        .sum())
}

/// Full labelled Laplacian spectrum of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub spec: GraphSpec,
    /// One entry per frequency index, in row-major grid order.
    pub entries: Vec<(FreqIndex, f64)>,
    /// Positions into `entries`, stable-sorted by eigenvalue.
    order: Vec<usize>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        self.order.iter().map(|&p| self.entries[p].1).collect()
    }

    /// Entries in non-decreasing eigenvalue order, ties kept in grid order.
    pub fn sorted_entries(&self) -> impl Iterator<Item = &(FreqIndex, f64)> {
        self.order.iter().map(move |&p| &self.entries[p])
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v).sum()
    }
}

/// Evaluates the closed form over the whole frequency grid.
pub fn full_spectrum(spec: &GraphSpec) -> Result<Spectrum> {
    spec.check()?;
    let r = spec.overhead;
    let per_dim: Vec<Vec<f64>> = spec
        .dims
        .iter()
        .map(|&k| (0..k).map(|j| cycle_eigenvalue_unchecked(k, r, j)).collect())
        .collect();

    let total = spec.node_count();
    let mut entries = Vec::with_capacity(total);
    let mut idx = vec![0usize; spec.dims.len()];
    for _ in 0..total {
        let value: f64 = idx
            .iter()
            .zip(&per_dim)
            .map(|(&j, values)| values[j])
            .sum();
        entries.push((FreqIndex(idx.clone()), value));
        // odometer increment, last dimension fastest
        for d in (0..idx.len()).rev() {
            idx[d] += 1;
            if idx[d] < spec.dims[d] {
                break;
            }
            idx[d] = 0;
        }
    }

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| entries[a].1.total_cmp(&entries[b].1));
    Ok(Spectrum {
        spec: spec.clone(),
        entries,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::build_laplacian;
    use proptest::prelude::*;

    /// Eigenvalues of a circulant matrix from its first row,
    /// `sum_i a_i * omega^(i*j)` with `omega = exp(2*pi*i/n)`.
    fn circulant_oracle(first_row: &[f64]) -> Vec<f64> {
        let n = first_row.len();
        (0..n)
            .map(|j| {
                let (mut re, mut im) = (0.0, 0.0);
                for (i, &a) in first_row.iter().enumerate() {
                    let phase = 2.0 * PI * ((i * j) % n) as f64 / n as f64;
                    re += a * phase.cos();
                    im += a * phase.sin();
                }
                assert!(im.abs() < 1e-9);
                re
            })
            .collect()
    }

    #[test]
    fn dirichlet_examples() {
        let direct = 1.0 + 2.0 * (PI / 2.0).cos();
        assert!((dirichlet_sum(1, PI / 2.0) - direct).abs() < 1e-15);
        assert!((dirichlet_sum(1, PI / 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(dirichlet_sum(3, 0.0), 7.0);
        assert!(dirichlet_sum(2, 2.0 * PI / 5.0).abs() < 1e-12);
        assert!(cosine_sum(2, 2.0 * PI / 5.0).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_near_singularity() {
        for theta in [1e-9, -1e-9, 2.0 * PI + 1e-8] {
            assert!((dirichlet_sum(4, theta) - 9.0).abs() < 1e-10);
        }
    }

    #[test]
    fn cycle_examples() {
        for (n, r) in [(3, 1), (10, 4), (17, 3)] {
            assert_eq!(cycle_eigenvalue(n, r, 0).unwrap(), 0.0);
        }
        assert!((cycle_eigenvalue(4, 1, 2).unwrap() - 4.0).abs() < 1e-12);
        assert!((cycle_eigenvalue(5, 2, 1).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_errors() {
        assert_eq!(
            cycle_eigenvalue(4, 1, 4),
            Err(Error::IndexOutOfRange { index: 4, size: 4 })
        );
        assert_eq!(
            cycle_eigenvalue(4, 2, 0),
            Err(Error::InvalidOverhead { r: 2, size: 4 })
        );
    }

    #[test]
    fn cycle_matches_circulant_oracle() {
        for n in 3..=24 {
            for r in 1..=(n - 1) / 2 {
                let l = build_laplacian(&GraphSpec::cycle(n, r)).unwrap();
                let expected = circulant_oracle(l.row(0));
                let got = cycle_spectrum(n, r).unwrap();
                for (e, g) in expected.iter().zip(&got) {
                    assert!((e - g).abs() < 1e-10, "n={n} r={r}: {e} vs {g}");
                }
            }
        }
    }

    #[test]
    fn torus_examples() {
        let spec = GraphSpec::torus2d(4, 4, 1);
        assert_eq!(torus_eigenvalue(&spec, &vec![0, 0].into()).unwrap(), 0.0);
        assert!((torus_eigenvalue(&spec, &vec![2, 2].into()).unwrap() - 8.0).abs() < 1e-12);
        let spec = GraphSpec::torus_m(vec![5, 5, 5], 2);
        assert!((torus_eigenvalue(&spec, &vec![1, 3, 2].into()).unwrap() - 15.0).abs() < 1e-12);
    }

    #[test]
    fn torus_index_errors() {
        let spec = GraphSpec::torus2d(4, 4, 1);
        assert_eq!(
            torus_eigenvalue(&spec, &vec![1].into()),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            torus_eigenvalue(&spec, &vec![1, 4].into()),
            Err(Error::IndexOutOfRange { index: 4, size: 4 })
        );
    }

    fn assert_multiset(got: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(got.len(), expected.len());
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < tol, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn full_spectrum_examples() {
        let s = full_spectrum(&GraphSpec::cycle(4, 1)).unwrap();
        assert_multiset(&s.sorted_values(), &[0.0, 2.0, 2.0, 4.0], 1e-12);
        let s = full_spectrum(&GraphSpec::cycle(5, 2)).unwrap();
        assert_multiset(&s.sorted_values(), &[0.0, 5.0, 5.0, 5.0, 5.0], 1e-12);
        let s = full_spectrum(&GraphSpec::torus2d(3, 3, 1)).unwrap();
        assert_multiset(
            &s.sorted_values(),
            &[0.0, 3.0, 3.0, 3.0, 3.0, 6.0, 6.0, 6.0, 6.0],
            1e-12,
        );
    }

    #[test]
    fn sorted_view_keeps_labels() {
        let s = full_spectrum(&GraphSpec::cycle(4, 1)).unwrap();
        let labels: Vec<usize> = s.sorted_entries().map(|(i, _)| i.0[0]).collect();
        assert_eq!(labels, vec![0, 1, 3, 2]);
        assert_eq!(s.entries[3].0, FreqIndex(vec![3]));
    }

    #[test]
    fn product_composition() {
        let spec = GraphSpec::torus_m(vec![5, 7, 6], 2);
        let s = full_spectrum(&spec).unwrap();
        let a = cycle_spectrum(5, 2).unwrap();
        let b = cycle_spectrum(7, 2).unwrap();
        let c = cycle_spectrum(6, 2).unwrap();
        let mut sums = Vec::new();
        for x in &a {
            for y in &b {
                for z in &c {
                    sums.push(x + y + z);
                }
            }
        }
        sums.sort_by(f64::total_cmp);
        assert_multiset(&s.sorted_values(), &sums, 1e-12);
    }

    #[test]
    fn complete_torus_degeneracy() {
        // K5 x K5: eigenvalues 0, 5 (x8), 10 (x16)
        let s = full_spectrum(&GraphSpec::torus2d(5, 5, 2)).unwrap();
        let mut expected = vec![0.0];
        expected.extend([5.0; 8]);
        expected.extend([10.0; 16]);
        assert_multiset(&s.sorted_values(), &expected, 1e-9);
        // K7 x K7: eigenvalues 0, 7 (x12), 14 (x36)
        let s = full_spectrum(&GraphSpec::torus_m(vec![7, 7], 3)).unwrap();
        let mut expected = vec![0.0];
        expected.extend([7.0; 12]);
        expected.extend([14.0; 36]);
        assert_multiset(&s.sorted_values(), &expected, 1e-9);
    }

    fn spec_strategy() -> impl Strategy<Value = GraphSpec> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(m, r)| {
            let lo = 2 * r + 1;
            (proptest::collection::vec(lo..lo + 9, m), Just(r))
                .prop_map(|(dims, r)| GraphSpec::torus_m(dims, r))
        })
    }

    proptest! {
        #[test]
        fn closed_forms_agree(n in 3usize..400, r_seed in 0usize..1000, j_seed in 0usize..10_000) {
            let r = 1 + r_seed % ((n - 1) / 2);
            let j = j_seed % n;
            let a = cycle_eigenvalue(n, r, j).unwrap();
            let b = cycle_eigenvalue_cosine(n, r, j).unwrap();
            prop_assert!((a - b).abs() < 1e-10, "n={} r={} j={}: {} vs {}", n, r, j, a, b);
            prop_assert!(a >= -1e-12 && a <= (4 * r + 2) as f64 + 1e-12);
        }

        #[test]
        fn conjugate_symmetry(n in 3usize..200, r_seed in 0usize..100, j_seed in 1usize..1000) {
            let r = 1 + r_seed % ((n - 1) / 2);
            let j = 1 + j_seed % (n - 1);
            let a = cycle_eigenvalue(n, r, j).unwrap();
            let b = cycle_eigenvalue(n, r, n - j).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn spectrum_invariants(spec in spec_strategy()) {
            let s = full_spectrum(&spec).unwrap();
            let n = spec.node_count();
            prop_assert_eq!(s.len(), n);
            let sv = s.sorted_values();
            prop_assert!(sv[0].abs() < 1e-12);
            prop_assert!(sv.iter().all(|&v| v >= -1e-12));
            prop_assert!(sv.windows(2).all(|w| w[0] <= w[1]));
            let trace = (n * spec.degree()) as f64;
            prop_assert!((s.sum() - trace).abs() < 1e-8 * n as f64);
            // per-dimension reflection j -> k - j leaves the eigenvalue unchanged
            for (idx, v) in &s.entries {
                let mirrored: Vec<usize> = idx.0.iter().zip(&spec.dims).map(|(&j, &k)| (k - j) % k).collect();
                let w = torus_eigenvalue(&spec, &FreqIndex(mirrored)).unwrap();
                prop_assert!((v - w).abs() < 1e-12);
            }
        }
    }
}
