//! Exact Euler characteristic curves and profiles.
//!
//! The compute modules ([`vr`], [`cubical`], [`multicrit`]) turn point clouds
//! and images into lists of [`Contribution`]s: a filtration point paired with
//! the signed change of the Euler characteristic there. Those lists are
//! canonicalized into an [`EulerCharacteristicCurve`] (one parameter) or an
//! [`EulerCharacteristicProfile`] (several parameters), which [`analysis`]
//! compares and [`vectorize`] samples into fixed-size feature vectors.

pub mod analysis;
pub mod array;
pub mod cubical;
mod curve;
mod error;
mod filtration;
pub mod io;
pub mod multicrit;
mod profile;
pub mod vectorize;
pub mod vr;

pub use curve::EulerCharacteristicCurve;
pub use error::{Error, Result};
pub use filtration::{cell_sign, Contribution, FiltrationVector};
pub use profile::{canonicalize, Canonical, EulerCharacteristicProfile};

/// Runs `f` on a dedicated pool of `workers` threads.
pub(crate) fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}
