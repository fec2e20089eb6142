//! Kinematics of the shape-changing ring.
//!
//! Four identical rigid circular-arc arms form the ring. Two pin joints sit on
//! the screw axis (the motor housing and the nut housing) at `(±d/2, 0)` and
//! two lateral hinges sit at `(0, ±h)`. Each arm spans one housing and one
//! lateral hinge with its chord, bulging outward. Changing the housing
//! separation `d` moves the lateral hinges and turns the circle (`d = 2R` for
//! quarter-circle arms) into a squashed or stretched four-arc oval.

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Geometry and identified bending stiffness of one ring arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmDesign {
    pub name: String,
    pub arc_radius: f64,
    pub arc_angle: f64,
    pub thickness: f64,
    /// Thin midsection web, for the ridged variant.
    pub web_thickness: Option<f64>,
    /// Product of elastic modulus and second moment of area, N·m².
    pub bending_stiffness: f64,
    /// Reference peak stress under a design load, Pa. Metadata only.
    pub max_stress_ref: Option<f64>,
}

impl ArmDesign {
    pub fn new(
        name: impl Into<String>,
        arc_radius: f64,
        arc_angle: f64,
        thickness: f64,
        bending_stiffness: f64,
    ) -> Result<Self> {
        let arm = Self {
            name: name.into(),
            arc_radius,
            arc_angle,
            thickness,
            web_thickness: None,
            bending_stiffness,
            max_stress_ref: None,
        };
        arm.validate()?;
        Ok(arm)
    }

    pub fn with_web_thickness(mut self, web: f64) -> Result<Self> {
        if !(web > 0.0 && web <= self.thickness) {
            return Err(Error::domain(format!(
                "web thickness {web} m must be in (0, {}]",
                self.thickness
            )));
        }
        self.web_thickness = Some(web);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.arc_radius > 0.0 && self.arc_radius.is_finite()) {
            problems.push(format!("arc radius must be > 0, got {}", self.arc_radius));
        }
        if !(self.arc_angle > 0.0 && self.arc_angle <= std::f64::consts::PI) {
            problems.push(format!(
                "arc angle must be in (0, π], got {}",
                self.arc_angle
            ));
        }
        if !(self.bending_stiffness > 0.0 && self.bending_stiffness.is_finite()) {
            problems.push(format!(
                "bending stiffness must be > 0, got {}",
                self.bending_stiffness
            ));
        }
        if !(self.thickness > 0.0) {
            problems.push(format!("thickness must be > 0, got {}", self.thickness));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "arm `{}`: {}",
                self.name,
                problems.join("; ")
            )))
        }
    }

    /// Solid 4 mm arm.
    pub fn standard() -> Self {
        Self::preset("standard", defaults::EI_STANDARD.0, None)
    }

    /// 4 mm arm with elliptical cutouts along the midsection.
    pub fn cutout() -> Self {
        Self::preset("cutout", defaults::EI_CUTOUT.0, None)
    }

    /// 4 mm ends with a thin ridge along the midsection.
    pub fn ridges() -> Self {
        Self::preset(
            "ridges",
            defaults::EI_RIDGES.0,
            Some(defaults::RIDGE_WEB_THICKNESS_M),
        )
    }

    /// The three characterised designs, stiffest first.
    pub fn presets() -> [ArmDesign; 3] {
        [Self::standard(), Self::cutout(), Self::ridges()]
    }

    fn preset(name: &str, ei: f64, web: Option<f64>) -> Self {
        Self {
            name: name.to_owned(),
            arc_radius: defaults::ARM_RADIUS_M,
            arc_angle: defaults::ARM_ARC_ANGLE_RAD,
            thickness: defaults::ARM_THICKNESS_M,
            web_thickness: web,
            bending_stiffness: ei,
            max_stress_ref: None,
        }
    }

    /// Straight-line distance between the arm's two ends.
    pub fn chord(&self) -> f64 {
        2.0 * self.arc_radius * (self.arc_angle / 2.0).sin()
    }

    pub fn arc_length(&self) -> f64 {
        self.arc_radius * self.arc_angle
    }

    /// Area between one arm and its chord.
    pub fn segment_area(&self) -> f64 {
        let r = self.arc_radius;
        0.5 * r * r * (self.arc_angle - self.arc_angle.sin())
    }

    /// Upper end of the open interval of admissible hinge separations.
    pub fn max_separation(&self) -> f64 {
        2.0 * self.chord()
    }

    /// Separation that makes quarter-circle arms close into a circle.
    pub fn circular_separation(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.chord()
    }
}

impl Default for ArmDesign {
    fn default() -> Self {
        Self::ridges()
    }
}

/// Ring state set by the hinge separation `d` along the screw axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingConfiguration {
    pub arm: ArmDesign,
    pub hinge_separation: f64,
}

impl RingConfiguration {
    pub fn new(arm: ArmDesign, hinge_separation: f64) -> Result<Self> {
        arm.validate()?;
        check_separation(&arm, hinge_separation)?;
        Ok(Self {
            arm,
            hinge_separation,
        })
    }

    /// Circular configuration of quarter-circle arms.
    pub fn circular(arm: ArmDesign) -> Result<Self> {
        let d = arm.circular_separation();
        Self::new(arm, d)
    }

    pub fn with_separation(&self, d: f64) -> Result<Self> {
        check_separation(&self.arm, d)?;
        Ok(Self {
            arm: self.arm.clone(),
            hinge_separation: d,
        })
    }
}

fn check_separation(arm: &ArmDesign, d: f64) -> Result<()> {
    let max = arm.max_separation();
    if d > 0.0 && d < max {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "hinge separation {d} m outside (0, {max}) for arm `{}`",
            arm.name
        )))
    }
}

/// Distance of each lateral hinge from the screw axis.
pub fn lateral_offset(cfg: &RingConfiguration) -> Result<f64> {
    check_separation(&cfg.arm, cfg.hinge_separation)?;
    let c = cfg.arm.chord();
    let half_d = cfg.hinge_separation / 2.0;
    Ok(((c - half_d) * (c + half_d)).sqrt())
}

/// Area enclosed by the four arcs: the rhombus of the four pins plus the
/// four circular segments.
pub fn enclosed_area(cfg: &RingConfiguration) -> Result<f64> {
    let h = lateral_offset(cfg)?;
    Ok(cfg.hinge_separation * h + 4.0 * cfg.arm.segment_area())
}

/// Samples the ring boundary counterclockwise, `n` points per arm, starting at
/// the `+x` housing. Joints appear once.
pub fn boundary_polyline(cfg: &RingConfiguration, n: usize) -> Result<Vec<Point2>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "need at least 2 points per arc, got {n}"
        )));
    }
    let h = lateral_offset(cfg)?;
    let half_d = cfg.hinge_separation / 2.0;
    let pins = [
        Point2::new(half_d, 0.0),
        Point2::new(0.0, h),
        Point2::new(-half_d, 0.0),
        Point2::new(0.0, -h),
    ];
    let r = cfg.arm.arc_radius;
    let phi = cfg.arm.arc_angle;
    let apothem = r * (phi / 2.0).cos();

    let mut points = Vec::with_capacity(4 * n);
    for i in 0..4 {
        let a = pins[i];
        let b = pins[(i + 1) % 4];
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len = dx.hypot(dy);
        // Outward normal of a chord traversed counterclockwise.
        let (nx, ny) = (dy / len, -dx / len);
        let centre = Point2::new(
            0.5 * (a.x + b.x) - nx * apothem,
            0.5 * (a.y + b.y) - ny * apothem,
        );
        let start = (a.y - centre.y).atan2(a.x - centre.x);
        for k in 0..n {
            let t = start + phi * k as f64 / n as f64;
            points.push(Point2::new(centre.x + r * t.cos(), centre.y + r * t.sin()));
        }
    }
    Ok(points)
}

/// Bounding-box half-extents `(along the screw axis, across it)`.
pub fn axis_extents(cfg: &RingConfiguration, n: usize) -> Result<(f64, f64)> {
    if n < 64 {
        return Err(Error::domain(format!(
            "axis extents need at least 64 points per arc, got {n}"
        )));
    }
    let pts = boundary_polyline(cfg, n)?;
    Ok(pts.iter().fold((0.0_f64, 0.0_f64), |(ax, ay), p| {
        (ax.max(p.x.abs()), ay.max(p.y.abs()))
    }))
}

/// Hinge separation after turning the lead screw by `revolutions` (signed)
/// from `d0`.
pub fn screw_to_separation(arm: &ArmDesign, revolutions: f64, lead: f64, d0: f64) -> Result<f64> {
    let d = d0 + revolutions * lead;
    let max = arm.max_separation();
    if d > 0.0 && d < max {
        Ok(d)
    } else {
        Err(Error::Range(format!(
            "{revolutions} rev at {lead} m/rev from {d0} m gives d = {d} m, outside (0, {max})"
        )))
    }
}
