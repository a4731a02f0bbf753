//! Exact computer-algebra engine for quadric loop-space ideals.
//!
//! The crate builds the defining ideals of truncated quasimap algebras to a
//! smooth quadric, proves or refutes that the written generators form a
//! Groebner basis, computes bigraded Poincare series several independent
//! ways, and verifies the associated Koszul (BRST) and two-term complexes by
//! exact rank computations over the rationals.

pub mod acceptance;
pub mod brst;
pub mod exactnum;
pub mod groebner;
pub mod hilbert;
pub mod polyring;
pub mod quadric;
pub mod semiinf;

/// Map a slice in parallel when the `parallel` feature is enabled,
/// sequentially otherwise.
pub fn map_items<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
