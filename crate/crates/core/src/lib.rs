//! Legendre curves and fronts in smooth, strictly convex normed planes.
//!
//! The crate is generic over the scalar type (see [`Real`]); the aliases at
//! the bottom fix it to `f64`, which is what the command line tool uses.

// `!(x > y)` is used on purpose: it is also true for NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod curve;
pub mod derived;
pub mod error;
pub mod numeric;
pub mod plane;
pub mod scalar;
pub mod synthesis;
pub mod vector;

pub use error::{Error, Result};
pub use scalar::Real;
pub use vector::{bracket, Mat2, Vec2};

pub type Vector = vector::Vec2<f64>;
pub type Matrix = vector::Mat2<f64>;
pub type Plane = plane::NormedPlane<f64>;
pub type Spec = plane::NormSpec<f64>;
pub type Curve = curve::ParamCurve<f64>;
pub type Normal = curve::NormalField<f64>;
pub type Legendre = analysis::LegendreCurve<f64>;
pub type Pair = analysis::CurvaturePair<f64>;
pub type Report = analysis::SingularityReport<f64>;
