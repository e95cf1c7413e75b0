//! Nodal sequences of flat manifolds and the inverse problem they solve.
//!
//! [`spectra`] generates exact Laplace spectra of Dirichlet rectangles,
//! separable flat tori, flat Klein bottles and flat tori of dimension 2 and
//! 3, annotated with the nodal domain count of each eigenfunction.
//! [`spectra::strip`] reduces a spectrum to its [`NodalSequence`]: the
//! ordered count sets with eigenvalues removed. [`reconstruct`] recovers the
//! shape from that sequence alone, and [`cli`] wires both into the
//! `nodalseq` command.
//!
//! ```
//! use nodalseq::{reconstruct, spectra, ManifoldClass, Rational};
//!
//! let alpha2: Rational = "1/2".parse().unwrap();
//! let seq = spectra::generate_separable(ManifoldClass::Rectangle, &alpha2, &Rational::from(2000)).unwrap();
//! let result = reconstruct::reconstruct_rectangle(&spectra::strip(&seq)).unwrap();
//! assert!(result.bracket.contains(&alpha2));
//! ```

pub mod cli;
pub mod error;
pub mod lattice;
pub mod rational;
pub mod reconstruct;
pub mod spectra;

pub use error::{Error, Result};
pub use lattice::GramMatrix;
pub use rational::Rational;
pub use reconstruct::{Bracket, ReconstructionResult, Target};
pub use spectra::{CountSet, ManifoldClass, NodalSequence, SpectralSequence};
