//! QR decompositions of dual matrices `A = A_s + A_i·ε` with `ε² = 0`, the
//! dual Moore-Penrose inverse built on them, perturbation bounds for real
//! QR, and identification of standing and traveling waves from snapshot
//! data.

pub mod dual;
pub mod dmpgi;
pub mod dual_qr;
pub mod error;
pub mod io;
pub mod perturbation;
pub mod real;
pub mod synth;
pub mod waves;

pub use dual::{dinverse, dmul, dtranspose, structure_residuals, DualMatrix, DualScalar, PartResiduals, StructureKind};
pub use dmpgi::{dmpgi, penrose_residuals, PenroseReport};
pub use dual_qr::{build_skew_p, decompose, dqr, dqrcp, existence_residual, rdqrcp, tdqr, tdqrcp, DualQrFactors, SkewGenerator, Variant};
pub use error::{Error, Result};
pub use real::{Permutation, SketchConfig};
