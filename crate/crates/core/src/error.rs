//! Unified error type for the pipeline entry points.

use thiserror::Error;

/// Any error the estimation or simulation pipeline can surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] crate::data::DataError),
    #[error(transparent)]
    Kernel(#[from] crate::kernel::KernelError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
    #[error(transparent)]
    Ipcw(#[from] crate::ipcw::IpcwError),
    #[error(transparent)]
    Simulation(#[from] crate::sim::SimError),
    #[error(transparent)]
    Bootstrap(#[from] crate::bootstrap::BootstrapError),
}
