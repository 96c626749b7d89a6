//! Pointwise engine for the quadratic curvature terms of Bochner-Kodaira and
//! Weitzenbock formulas: finite-dimensional exterior algebra, algebraic
//! curvature operators, Lefschetz calculus, contraction operators, spectral
//! bounds, and cohomology-vanishing predictors.

pub mod context;
pub mod contraction;
pub mod curvature;
pub mod error;
pub mod form;
pub mod index;
pub mod io;
pub mod lefschetz;
pub mod linalg;
pub mod predictor;
pub mod riemannian;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use context::AlgebraContext;
pub use curvature::{BundleCurvature, KaehlerCurvature, RiemCurvature, Spectrum};
pub use error::{Error, Result};
pub use form::{kaehler_form, PqForm, TangentVector};
pub use riemannian::RealForm;
pub use verify::{RunConfig, VerificationReport};
