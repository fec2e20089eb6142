//! Measured device constants and the defaults built on them.
//!
//! Measured values are kept here and nowhere else; module logic takes them as
//! parameters. Values that were never measured on the prototype (arm radius,
//! motor stall pressure, regulator dynamics, screw speed) are marked as
//! placeholders.

use std::f64::consts::FRAC_PI_2;

/// Standard atmosphere, absolute.
pub const ATMOSPHERIC_PRESSURE_PA: f64 = 101_325.0;

/// Lead of a 1/4"-12 screw: one inch over twelve threads.
pub const SCREW_LEAD_M_PER_REV: f64 = 0.0254 / 12.0;

/// Placeholder arc radius of a ring arm (not measured).
pub const ARM_RADIUS_M: f64 = 0.1;
/// Arms are quarter circles.
pub const ARM_ARC_ANGLE_RAD: f64 = FRAC_PI_2;
/// Solid section thickness of every arm design.
pub const ARM_THICKNESS_M: f64 = 4.0e-3;
/// Thin web along the midsection of the ridged arm.
pub const RIDGE_WEB_THICKNESS_M: f64 = 1.5e-3;

/// Identified bending stiffness (mean, spread) of the solid arm.
pub const EI_STANDARD: (f64, f64) = (8.9e-7, 0.66e-7);
/// Identified bending stiffness (mean, spread) of the arm with cutouts.
pub const EI_CUTOUT: (f64, f64) = (3.2e-7, 0.04e-7);
/// Identified bending stiffness (mean, spread) of the ridged arm.
pub const EI_RIDGES: (f64, f64) = (2.7e-7, 0.03e-7);

/// Pressure at which both inflatables' inflated volumes were measured.
pub const REFERENCE_PRESSURE_PA: f64 = 4830.0;

pub const RING_DEFLATED_VOLUME_M3: f64 = 1788e-9;
pub const RING_REFERENCE_VOLUME_M3: f64 = 8350e-9;
pub const RING_WALL_THICKNESS_M: f64 = 0.101e-3;
pub const RING_BURST_PRESSURE_PA: f64 = 16_550.0;
/// Volume cap relative to the reference volume (placeholder).
pub const RING_MAX_VOLUME_FACTOR: f64 = 1.1;
pub const RING_FAILURE_NOTE: &str =
    "seal on the inside edge; sealed-margin thickness inconsistent without positioning brackets";

pub const BALLOON_DEFLATED_VOLUME_M3: f64 = 13_169e-9;
pub const BALLOON_REFERENCE_VOLUME_M3: f64 = 1_830_508e-9;
pub const BALLOON_WALL_THICKNESS_M: f64 = 0.076e-3;
pub const BALLOON_BURST_PRESSURE_PA: f64 = 18_620.0;
/// Tendons cap balloon extension; factor over the reference volume (placeholder).
pub const BALLOON_MAX_VOLUME_FACTOR: f64 = 1.2;
pub const BALLOON_FAILURE_NOTE: &str = "membrane slipped at the rubber-band attachment to the plug";

/// Pump pressure at which the wound bleeds with no device applied.
pub const BLEED_ONSET_PA: f64 = 4830.0;
/// Balloon pressure used when the device was applied to the wound.
pub const BALLOON_SETPOINT_PA: f64 = 8270.0;
/// Pump pressure at which bleeding resumed with the device applied.
pub const BLEED_RESUME_PA: f64 = 8960.0;

/// Balloon pressure above which the motor cannot move the arms (placeholder).
pub const TORQUE_PRESSURE_LIMIT_PA: f64 = 1000.0;
/// Screw speed (placeholder).
pub const SCREW_SPEED_REV_PER_S: f64 = 2.0;

/// First-order regulator time constant (placeholder).
pub const REGULATOR_TIME_CONSTANT_S: f64 = 0.5;
/// Regulator slew limit (placeholder).
pub const REGULATOR_MAX_RATE_PA_PER_S: f64 = 5000.0;
