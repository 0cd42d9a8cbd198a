//! Spectral analysis of Cayley graphs on finite groups.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32` or `f64`);
//! exact quantities use integers and [`scalar::Ratio`]. The aliases below
//! fix the scalar to `f64`.

pub mod bohr;
pub mod bounds;
pub mod config;
pub mod error;
pub mod experiments;
pub mod group;
pub mod repr;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod subset;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, Generator, GroupDescriptor};
pub use scalar::{Ratio, Real};
pub use subset::{GroupFunction, GroupSubset};

/// Complex-valued function on a group.
pub type Function = GroupFunction<num_complex::Complex64>;
pub type Representation = repr::UnitaryRepresentation<f64>;
pub type Catalog = repr::IrrepCatalog<f64>;
pub type Spectrum = spectra::SpectrumReport<f64>;
