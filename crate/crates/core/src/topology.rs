//! Graph specifications and explicit adjacency / degree / Laplacian matrices
//! for r-nearest-neighbor cycles and tori.
//!
//! Tori are Cartesian products of r-nearest-neighbor cycles. Nodes are
//! numbered row-major over their coordinates, so coordinate `(c1, .., cm)`
//! maps to `sum(ci * prod(k_j for j > i))`. With that ordering the 2-D
//! adjacency matrix is block circulant with circulant blocks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible size of a single dimension.
pub const MIN_DIM_SIZE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cycle,
    Torus2D,
    TorusM,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Torus2D => "torus2d",
            Family::TorusM => "torusm",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cycle" => Ok(Family::Cycle),
            "torus2d" | "torus" => Ok(Family::Torus2D),
            "torusm" | "mtorus" => Ok(Family::TorusM),
            other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }
}

/// Declarative description of an r-nearest-neighbor cycle or torus.
///
/// `dims` holds the node count of each dimension (a single `n` for a cycle)
/// and `overhead` is r, the number of neighbors per side per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub dims: Vec<usize>,
    pub overhead: usize,
}

impl GraphSpec {
    pub fn new(family: Family, dims: Vec<usize>, overhead: usize) -> Self {
        GraphSpec {
            family,
            dims,
            overhead,
        }
    }

    pub fn cycle(n: usize, r: usize) -> Self {
        Self::new(Family::Cycle, vec![n], r)
    }

    pub fn torus2d(k1: usize, k2: usize, r: usize) -> Self {
        Self::new(Family::Torus2D, vec![k1, k2], r)
    }

    pub fn torus_m(dims: Vec<usize>, r: usize) -> Self {
        Self::new(Family::TorusM, dims, r)
    }

    /// Returns the spec unchanged if it describes a valid graph.
    pub fn validate(self) -> Result<Self> {
        self.check()?;
        Ok(self)
    }

    /// Borrowing form of [`GraphSpec::validate`].
    pub fn check(&self) -> Result<()> {
        let count = self.dims.len();
        let (ok, expected) = match self.family {
            Family::Cycle => (count == 1, "exactly 1"),
            Family::Torus2D => (count == 2, "exactly 2"),
            Family::TorusM => (count >= 1, "at least 1"),
        };
        if !ok {
            return Err(Error::BadDimensionCount {
                family: self.family.name(),
                expected,
                got: count,
            });
        }
        if let Some(&size) = self.dims.iter().find(|&&k| k < MIN_DIM_SIZE) {
            return Err(Error::DegenerateSize { size });
        }
        let r = self.overhead;
        if let Some(&size) = self.dims.iter().find(|&&k| r == 0 || 2 * r + 1 > k) {
            return Err(Error::InvalidOverhead { r, size });
        }
        Ok(())
    }

    /// Number of dimensions m.
    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    /// Total node count N, the product of the dimension sizes.
    pub fn node_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Degree of every node, 2rm.
    pub fn degree(&self) -> usize {
        2 * self.overhead * self.dimension()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() * self.overhead * self.dimension()
    }

    /// Row-major node index of a coordinate tuple.
    pub fn node_index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &k)| acc * k + c)
    }

    /// Inverse of [`GraphSpec::node_index`].
    pub fn node_coords(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.dims.len()];
        for (c, &k) in coords.iter_mut().zip(&self.dims).rev() {
            *c = index % k;
            index /= k;
        }
        coords
    }

    /// Indices of the 2rm neighbors of `node`.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let r = self.overhead;
        let coords = self.node_coords(node);
        let mut out = Vec::with_capacity(self.degree());
        let mut shifted = coords.clone();
        for (d, &k) in self.dims.iter().enumerate() {
            for step in 1..=r {
                for c in [(coords[d] + step) % k, (coords[d] + k - step) % k] {
                    shifted[d] = c;
                    out.push(self.node_index(&shifted));
                }
            }
            shifted[d] = coords[d];
        }
        out
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|k| k.to_string()).collect();
        write!(f, "{}[{}] r={}", self.family, dims.join(","), self.overhead)
    }
}

/// Square, row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> Self {
        DenseMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from its rows. Fails unless the rows form a square.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != order) {
            return Err(Error::InvalidArgument(format!(
                "matrix is not square: {order} rows but a row of length {}",
                bad.len()
            )));
        }
        Ok(DenseMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.order + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// First `(row, col)` with `a[row][col] != a[col][row]`, compared exactly.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.order)
            .flat_map(|i| (i + 1..self.order).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// `P A P^T` for the relabeling `old index i -> new index perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        let mut seen = vec![false; n];
        if perm.len() != n || !perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(
                "permutation does not match matrix order".into(),
            ));
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        Ok(out)
    }
}

/// 0/1 adjacency matrix of the graph.
pub fn build_adjacency(spec: &GraphSpec) -> Result<DenseMatrix> {
    spec.check()?;
    let n = spec.node_count();
    let mut a = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in spec.neighbors(i) {
            a.set(i, j, 1.0);
        }
    }
    Ok(a)
}

/// Diagonal degree matrix, every diagonal entry 2rm.
pub fn build_degree(spec: &GraphSpec) -> Result<DenseMatrix> {
    spec.check()?;
    let n = spec.node_count();
    let mut d = DenseMatrix::zeros(n);
    let degree = spec.degree() as f64;
    for i in 0..n {
        d.set(i, i, degree);
    }
    Ok(d)
}

/// Laplacian `L = D - A`.
pub fn build_laplacian(spec: &GraphSpec) -> Result<DenseMatrix> {
    let mut l = build_adjacency(spec)?;
    let degree = spec.degree() as f64;
    for i in 0..l.order() {
        for j in 0..l.order() {
            let a = l.get(i, j);
            l.set(i, j, if i == j { degree } else { -a });
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validate_examples() {
        assert!(GraphSpec::cycle(8, 2).validate().is_ok());
        assert_eq!(
            GraphSpec::cycle(4, 2).validate(),
            Err(Error::InvalidOverhead { r: 2, size: 4 })
        );
        assert!(matches!(
            GraphSpec::new(Family::Torus2D, vec![4, 4, 4], 1).validate(),
            Err(Error::BadDimensionCount { got: 3, .. })
        ));
    }

    #[test]
    fn validate_edge_cases() {
        assert_eq!(
            GraphSpec::cycle(2, 1).validate(),
            Err(Error::DegenerateSize { size: 2 })
        );
        assert!(matches!(
            GraphSpec::cycle(5, 0).validate(),
            Err(Error::InvalidOverhead { r: 0, .. })
        ));
        assert!(matches!(
            GraphSpec::torus_m(vec![], 1).validate(),
            Err(Error::BadDimensionCount { got: 0, .. })
        ));
        assert!(matches!(
            GraphSpec::new(Family::Cycle, vec![5, 5], 1).validate(),
            Err(Error::BadDimensionCount { .. })
        ));
        // 2r+1 == k is the complete graph and is allowed.
        assert!(GraphSpec::cycle(5, 2).validate().is_ok());
        assert!(GraphSpec::torus_m(vec![7, 5], 2).validate().is_ok());
        assert!(GraphSpec::torus_m(vec![7, 4], 2).validate().is_err());
    }

    #[test]
    fn family_parses() {
        assert_eq!("cycle".parse::<Family>().unwrap(), Family::Cycle);
        assert_eq!("Torus2D".parse::<Family>().unwrap(), Family::Torus2D);
        assert_eq!("torusm".parse::<Family>().unwrap(), Family::TorusM);
        assert!("ring".parse::<Family>().is_err());
    }

    #[test]
    fn adjacency_cycle_first_row() {
        let a = build_adjacency(&GraphSpec::cycle(4, 1)).unwrap();
        assert_eq!(a.row(0), &[0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn adjacency_complete_graph() {
        let a = build_adjacency(&GraphSpec::cycle(5, 2)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
    }

    #[test]
    fn adjacency_torus_row_sums() {
        let a = build_adjacency(&GraphSpec::torus2d(3, 3, 1)).unwrap();
        for row in a.rows() {
            assert_eq!(row.iter().sum::<f64>(), 4.0);
        }
    }

    #[test]
    fn laplacian_examples() {
        let l = build_laplacian(&GraphSpec::cycle(4, 1)).unwrap();
        assert_eq!(l.row(0), &[2.0, -1.0, 0.0, -1.0]);

        let l = build_laplacian(&GraphSpec::cycle(5, 2)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(l.get(i, j), if i == j { 4.0 } else { -1.0 });
            }
        }

        let l = build_laplacian(&GraphSpec::torus_m(vec![4, 4, 4], 1)).unwrap();
        assert!((0..64).all(|i| l.get(i, i) == 6.0));
    }

    #[test]
    fn degree_matrix_is_diagonal() {
        let d = build_degree(&GraphSpec::cycle(6, 2)).unwrap();
        assert_eq!(d.trace(), 24.0);
        assert_eq!(d.frobenius_norm(), (6.0f64 * 16.0).sqrt());
    }

    #[test]
    fn torus_is_block_circulant() {
        // 2-D torus k1 x k2: block (p, q) depends only on (q - p) mod k1.
        let (k1, k2) = (5, 4);
        let a = build_adjacency(&GraphSpec::torus2d(k1, k2, 1)).unwrap();
        let block = |p: usize, q: usize| -> Vec<f64> {
            (0..k2)
                .flat_map(|i| (0..k2).map(move |j| (i, j)))
                .map(|(i, j)| a.get(p * k2 + i, q * k2 + j))
                .collect()
        };
        for p in 0..k1 {
            for q in 0..k1 {
                assert_eq!(block(p, q), block(0, (q + k1 - p) % k1));
            }
        }
    }

    #[test]
    fn node_index_roundtrip() {
        let spec = GraphSpec::torus_m(vec![3, 4, 5], 1);
        for i in 0..spec.node_count() {
            assert_eq!(spec.node_index(&spec.node_coords(i)), i);
        }
        assert_eq!(spec.node_index(&[1, 2, 3]), 1 * 20 + 2 * 5 + 3);
    }

    #[test]
    fn permuted_rejects_bad_perm() {
        let m = DenseMatrix::identity(3);
        assert!(m.permuted(&[0, 0, 1]).is_err());
        assert!(m.permuted(&[0, 1]).is_err());
        assert_eq!(m.permuted(&[2, 0, 1]).unwrap(), m);
    }

    fn valid_spec() -> impl Strategy<Value = GraphSpec> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(m, r)| {
            let lo = (2 * r + 1).max(MIN_DIM_SIZE);
            (proptest::collection::vec(lo..lo + 5, m), Just(r))
                .prop_map(|(dims, r)| GraphSpec::torus_m(dims, r))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn adjacency_symmetric_zero_diagonal(spec in valid_spec()) {
            let a = build_adjacency(&spec).unwrap();
            prop_assert!(a.is_symmetric());
            prop_assert!((0..a.order()).all(|i| a.get(i, i) == 0.0));
            let ones: f64 = a.rows().flatten().sum();
            prop_assert_eq!(ones as usize, 2 * spec.edge_count());
        }

        #[test]
        fn laplacian_rows_sum_to_zero(spec in valid_spec()) {
            let l = build_laplacian(&spec).unwrap();
            for (i, row) in l.rows().enumerate() {
                prop_assert_eq!(row.iter().sum::<f64>(), 0.0);
                prop_assert_eq!(row[i], spec.degree() as f64);
            }
            prop_assert!(l.is_symmetric());
        }

        #[test]
        fn one_dim_torus_is_cycle(k in 3usize..40, r in 1usize..6) {
            prop_assume!(2 * r + 1 <= k);
            let a = build_laplacian(&GraphSpec::torus_m(vec![k], r)).unwrap();
            let b = build_laplacian(&GraphSpec::cycle(k, r)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
