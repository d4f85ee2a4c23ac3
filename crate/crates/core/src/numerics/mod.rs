//! Special functions, quadrature, and root finding.

pub mod bessel;
pub mod quadrature;
pub mod roots;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_jy, bessel_k, bessel_k_scaled, JyKind};
pub use quadrature::{integrate, integrate_decaying, integrate_panels, integrate_semiinfinite_radial, QuadratureSpec};
pub use roots::{find_root_bracketed, golden_max, linspace, logspace, sign_change_brackets, RootBracket};
