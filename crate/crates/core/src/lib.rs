//! Volumes and perimeters of central hyperplane sections of the unit cube in
//! `R^n` and of the unit polydisc in `C^n`, together with the numerical checks
//! that bound them.
//!
//! ```text
//! specfun   sinc, J0, J1, 2J1(x)/x, Si, erf, gamma, zeta
//! oscint    semi-infinite oscillatory quadrature
//! sections  A(a,t), D_k(a), perimeter, closed forms and bounds
//! oracle    Irwin-Hall densities and a Monte Carlo estimate for the polydisc
//! ballfn    the ball function f(p) and its companions
//! extremal  maximiser search and the interpolation bounds
//! bpcheck   the surface area Busemann-Petty comparison
//! verify    invariant suites shared by the command line and the tests
//! ```

pub mod ballfn;
pub mod bpcheck;
mod error;
pub mod extremal;
pub mod oracle;
pub mod oscint;
pub mod report;
pub mod sample;
pub mod sections;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use report::{Check, VerificationReport};
pub use sections::{Direction, Field};
