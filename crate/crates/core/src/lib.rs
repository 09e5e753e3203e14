//! Laplacian spectra, algebraic connectivity and synchronizability of
//! r-nearest-neighbor cycles and tori.
//!
//! * [`topology`] builds graph specs and explicit adjacency / Laplacian matrices.
//! * [`spectra`] evaluates closed-form eigenvalues on the frequency grid.
//! * [`oracle`] is a dense Jacobi eigensolver used to check them.
//! * [`sync`] computes exact extremes and audits closed-form ratios.
//! * [`sweep`] and [`cli`] drive parameter sweeps and the command line.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod spectra;
pub mod sweep;
pub mod sync;
pub mod topology;

pub use error::{Error, Result};
pub use oracle::{jacobi_eigenvalues, verify_closed_form, OracleResult};
pub use spectra::{
    cycle_eigenvalue, dirichlet_sum, full_spectrum, torus_eigenvalue, FreqIndex, Spectrum,
};
pub use sweep::{ReportRow, RowStatus, SweepConfig};
pub use sync::{
    connectivity, extremes_separable, paper_closed_form_r, sync_exact, verify_theorems,
    DiscrepancyRecord, PaperCase, SyncReport,
};
pub use topology::{build_adjacency, build_laplacian, DenseMatrix, Family, GraphSpec};
