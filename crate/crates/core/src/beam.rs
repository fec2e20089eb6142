//! Out-of-plane bending of a pre-curved ring arm.
//!
//! The arm is a circular arc of radius `R` and angle `φ`, clamped at its base
//! and loaded at the tip by a force `P` normal to its plane. Only bending
//! energy is kept; axial, shear and twist energies are neglected. With the
//! bending moment `M = P·R·sin θ` at arc angle `θ` measured from the tip, the
//! energy method gives the tip deflection
//!
//! ```text
//! q = ∫₀^φ (M / EI) (∂M/∂P) R dθ = (P R³ / EI) (φ/2 − sin 2φ / 4)
//! ```
//!
//! which is `(π/4) P R³ / EI` for a quarter circle.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One measured tip load and the resulting tip deflection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeflectionSample {
    pub force: f64,
    pub deflection: f64,
}

impl DeflectionSample {
    pub fn new(force: f64, deflection: f64) -> Result<Self> {
        if !(force >= 0.0 && deflection >= 0.0) {
            return Err(Error::domain(format!(
                "load and deflection must be non-negative, got ({force}, {deflection})"
            )));
        }
        Ok(Self { force, deflection })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StiffnessEstimate {
    /// Bending stiffness, N·m².
    pub ei: f64,
    /// One standard deviation of `ei` from the slope's residual variance.
    pub std: f64,
    pub n_samples: usize,
    /// Fitted compliance `q/P`, m/N.
    pub slope: f64,
}

impl StiffnessEstimate {
    pub fn deflection_at(&self, force: f64) -> f64 {
        self.slope * force
    }
}

fn check_beam(ei: f64, radius: f64, arc_angle: f64) -> Result<()> {
    if !(ei > 0.0) {
        return Err(Error::domain(format!(
            "bending stiffness must be > 0, got {ei}"
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::domain(format!(
            "arc radius must be > 0, got {radius}"
        )));
    }
    if !(arc_angle > 0.0 && arc_angle <= std::f64::consts::PI) {
        return Err(Error::domain(format!(
            "arc angle must be in (0, π], got {arc_angle}"
        )));
    }
    Ok(())
}

/// Bending moment at arc angle `theta` from the loaded tip.
pub fn moment_at(force: f64, radius: f64, theta: f64, arc_angle: f64) -> Result<f64> {
    if !(0.0..=arc_angle).contains(&theta) {
        return Err(Error::domain(format!(
            "arc angle {theta} outside [0, {arc_angle}]"
        )));
    }
    Ok(force * radius * theta.sin())
}

/// `∫₀^φ sin²θ dθ`.
fn arc_shape_factor(arc_angle: f64) -> f64 {
    arc_angle / 2.0 - (2.0 * arc_angle).sin() / 4.0
}

/// Closed-form tip deflection.
pub fn tip_deflection(ei: f64, radius: f64, arc_angle: f64, force: f64) -> Result<f64> {
    check_beam(ei, radius, arc_angle)?;
    if !(force >= 0.0) {
        return Err(Error::domain(format!(
            "tip force must be >= 0, got {force}"
        )));
    }
    Ok(force * radius.powi(3) / ei * arc_shape_factor(arc_angle))
}

/// Tip deflection by composite trapezoidal quadrature of the energy integrand
/// over `n_segments` equal arc steps.
pub fn tip_deflection_numeric(
    ei: f64,
    radius: f64,
    arc_angle: f64,
    force: f64,
    n_segments: usize,
) -> Result<f64> {
    check_beam(ei, radius, arc_angle)?;
    if !(force >= 0.0) {
        return Err(Error::domain(format!(
            "tip force must be >= 0, got {force}"
        )));
    }
    if n_segments < 2 {
        return Err(Error::domain(format!(
            "need at least 2 segments, got {n_segments}"
        )));
    }
    let integrand = |theta: f64| {
        let m = force * radius * theta.sin();
        let dm_dp = radius * theta.sin();
        m / ei * dm_dp * radius
    };
    let step = arc_angle / n_segments as f64;
    let interior: f64 = (1..n_segments).map(|k| integrand(k as f64 * step)).sum();
    Ok(step * (0.5 * (integrand(0.0) + integrand(arc_angle)) + interior))
}

/// Bending stiffness of a quarter-circle arm from one load/deflection pair.
pub fn stiffness_from_point(force: f64, deflection: f64, radius: f64) -> Result<f64> {
    if !(force > 0.0 && deflection > 0.0 && radius > 0.0) {
        return Err(Error::domain(format!(
            "force, deflection and radius must be > 0, got ({force}, {deflection}, {radius})"
        )));
    }
    Ok(FRAC_PI_4 * force * radius.powi(3) / deflection)
}

/// Least-squares compliance line through the origin in (load, deflection)
/// space, converted to a quarter-circle bending stiffness.
pub fn fit_stiffness(samples: &[DeflectionSample], radius: f64) -> Result<StiffnessEstimate> {
    if !(radius > 0.0) {
        return Err(Error::domain(format!(
            "arc radius must be > 0, got {radius}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::Fit("no samples".into()));
    }
    if let Some(bad) = samples
        .iter()
        .find(|s| !(s.force >= 0.0 && s.deflection >= 0.0))
    {
        return Err(Error::Fit(format!("negative or NaN sample {bad:?}")));
    }
    let sxx: f64 = samples.iter().map(|s| s.force * s.force).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("every sample has zero load".into()));
    }
    let sxy: f64 = samples.iter().map(|s| s.force * s.deflection).sum();
    let slope = sxy / sxx;
    if !(slope > 0.0) {
        return Err(Error::Fit(format!("non-positive compliance {slope} m/N")));
    }
    let ei = FRAC_PI_4 * radius.powi(3) / slope;

    let loaded = samples.iter().filter(|s| s.force > 0.0).count();
    let std = if loaded > 1 {
        let rss: f64 = samples
            .iter()
            .map(|s| (s.deflection - slope * s.force).powi(2))
            .sum();
        let slope_var = rss / (samples.len() - 1) as f64 / sxx;
        // d(EI)/d(slope) = -EI / slope
        ei * slope_var.sqrt() / slope
    } else {
        0.0
    };

    Ok(StiffnessEstimate {
        ei,
        std,
        n_samples: samples.len(),
        slope,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn moment_examples() {
        assert_eq!(moment_at(3.0, 0.2, 0.0, FRAC_PI_2).unwrap(), 0.0);
        assert_relative_eq!(
            moment_at(2.0, 0.05, FRAC_PI_2, FRAC_PI_2).unwrap(),
            0.1,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            moment_at(1.0, 0.1, FRAC_PI_6, FRAC_PI_2).unwrap(),
            0.05,
            max_relative = 1e-14
        );
        assert!(moment_at(1.0, 0.1, -0.1, FRAC_PI_2).is_err());
        assert!(moment_at(1.0, 0.1, 1.6, FRAC_PI_2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_relative_eq!(
            tip_deflection(0.01, 0.05, FRAC_PI_2, 1.0).unwrap(),
            9.817_477_042_468_1e-3,
            max_relative = 1e-12
        );
        assert_eq!(tip_deflection(0.01, 0.05, FRAC_PI_2, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            tip_deflection(0.01, 0.05, PI, 1.0).unwrap(),
            1.963_495_408_493_62e-2,
            max_relative = 1e-12
        );
        assert!(tip_deflection(0.0, 0.05, FRAC_PI_2, 1.0).is_err());
        assert!(tip_deflection(0.01, -0.05, FRAC_PI_2, 1.0).is_err());
    }

    #[test]
    fn numeric_examples() {
        let q = tip_deflection_numeric(0.01, 0.05, FRAC_PI_2, 1.0, 10_000).unwrap();
        assert_relative_eq!(q, 9.817_477_042_468_1e-3, max_relative = 1e-6);
        assert_eq!(
            tip_deflection_numeric(0.01, 0.05, 1.0, 0.0, 17).unwrap(),
            0.0
        );
        assert!(tip_deflection_numeric(0.01, 0.05, 1.0, 1.0, 1).is_err());
    }

    #[test]
    fn stiffness_point_examples() {
        assert_relative_eq!(
            stiffness_from_point(1.0, 9.817_477_042_468_1e-3, 0.05).unwrap(),
            0.01,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            stiffness_from_point(2.0, 2.0 * 9.817_477_042_468_1e-3, 0.05).unwrap(),
            0.01,
            max_relative = 1e-12
        );
        assert!(matches!(
            stiffness_from_point(1.0, 0.0, 0.05),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fit_single_point_matches_point_formula() {
        let s = [
            DeflectionSample::new(0.0, 0.0).unwrap(),
            DeflectionSample::new(0.3, 0.02).unwrap(),
        ];
        let fit = fit_stiffness(&s, 0.07).unwrap();
        assert_relative_eq!(
            fit.ei,
            stiffness_from_point(0.3, 0.02, 0.07).unwrap(),
            max_relative = 1e-12
        );
        assert_eq!(fit.std, 0.0);
    }

    #[test]
    fn fit_rejects_degenerate_data() {
        let zeros = [DeflectionSample {
            force: 0.0,
            deflection: 0.0,
        }; 3];
        assert!(matches!(fit_stiffness(&zeros, 0.1), Err(Error::Fit(_))));
        let flat = [
            DeflectionSample {
                force: 1.0,
                deflection: 0.0,
            },
            DeflectionSample {
                force: 2.0,
                deflection: 0.0,
            },
        ];
        assert!(matches!(fit_stiffness(&flat, 0.1), Err(Error::Fit(_))));
        assert!(fit_stiffness(&[], 0.1).is_err());
        assert!(DeflectionSample::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn fit_std_grows_with_scatter() {
        let make = |noise: f64| {
            [1.0, 2.0, 3.0, 4.0]
                .iter()
                .enumerate()
                .map(|(i, &p)| DeflectionSample {
                    force: p,
                    deflection: 0.01 * p * (1.0 + if i % 2 == 0 { noise } else { -noise }),
                })
                .collect::<Vec<_>>()
        };
        let clean = fit_stiffness(&make(0.0), 0.1).unwrap();
        let noisy = fit_stiffness(&make(0.05), 0.1).unwrap();
        assert!(clean.std < 1e-12 * clean.ei);
        assert!(noisy.std > 0.0);
    }
}
