//! Small numerical toolkit: stencils, root finding, quadrature, interpolation,
//! zero-crossing scans and polyline distances.

pub mod crossings;
pub mod fd;
pub mod geom;
pub mod interp;
pub mod quad;
pub mod roots;
