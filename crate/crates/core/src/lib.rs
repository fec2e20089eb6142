//! Digital twin of a wearable, shape-changing hemorrhage-control ring.
//!
//! The device is a ring of four hinged circular-arc arms whose shape is set by
//! a lead screw, an inflatable ring that constrains a central airbag balloon,
//! and the balloon itself, which presses on the wound. The modules model each
//! part:
//!
//! - [`geometry`]: ring linkage kinematics and enclosed area.
//! - [`beam`]: out-of-plane bending of a single pre-curved arm and stiffness
//!   identification from load/deflection data.
//! - [`pneumatics`]: pressure/volume compliance, regulator dynamics and burst.
//! - [`contact`]: force delivered to the contact surface by the balloon.
//! - [`hemostasis`]: calibrated bleeding-threshold model.
//! - [`controller`]: the device state machine with its safety guards.
//! - [`scenario`]: configuration, experiment scenarios, CSV and SVG output.
//!
//! All quantities are SI (m, m², m³, N, s, rad) and pressures are gauge
//! pascals unless a name says otherwise.

// `!(x > 0.0)` rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beam;
pub mod contact;
pub mod controller;
pub mod defaults;
pub mod error;
pub mod geometry;
pub mod hemostasis;
pub mod plot;
pub mod pneumatics;
pub mod scenario;

pub use error::{Error, Result};
