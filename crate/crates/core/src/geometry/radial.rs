//! Radially symmetric epigraph built from an extremely flat convex profile.
//!
//! The profile starts from `exp(-1/|t|^gamma)`, which is convex on
//! `[-t_knee, t_knee]` with `t_knee = (gamma/(gamma+1))^(1/gamma)`, and is
//! extended beyond the knee by its tangent line (slope `L`, the Lipschitz
//! constant of the convex part). The result is a finite-valued convex even
//! function that vanishes — together with all its derivatives — at the
//! origin, so its epigraph touches the horizontal hyperplane in a single
//! point while admitting no positive Hoelder error bound there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the radial profile `f(t) = exp(-min(|t|,t_knee)^-gamma)
/// + L * max(|t| - t_knee, 0)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RadialShape {
    pub gamma: f64,
    #[serde(skip)]
    t_knee: f64,
    #[serde(skip)]
    lipschitz: f64,
    #[serde(skip)]
    knee_value: f64,
}

impl RadialShape {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidSet(format!(
                "radial profile exponent must be positive and finite, got {gamma}"
            )));
        }
        let t_knee = (gamma / (gamma + 1.0)).powf(1.0 / gamma);
        let knee_value = (-(gamma + 1.0) / gamma).exp();
        let lipschitz = gamma * t_knee.powf(-gamma - 1.0) * knee_value;
        Ok(RadialShape {
            gamma,
            t_knee,
            lipschitz,
            knee_value,
        })
    }

    pub fn t_knee(&self) -> f64 {
        self.t_knee
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Value of the profile at the knee, `exp(-(gamma+1)/gamma)`.
    pub fn knee_value(&self) -> f64 {
        self.knee_value
    }

    /// Profile value; even in `t`, zero at the origin.
    pub fn value(&self, t: f64) -> f64 {
        let a = t.abs();
        if a == 0.0 {
            return 0.0;
        }
        if a <= self.t_knee {
            (-a.powf(-self.gamma)).exp()
        } else {
            self.knee_value + self.lipschitz * (a - self.t_knee)
        }
    }

    /// One-sided derivative for `t >= 0`.
    pub fn derivative(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t <= self.t_knee {
            self.gamma * t.powf(-self.gamma - 1.0) * (-t.powf(-self.gamma)).exp()
        } else {
            self.lipschitz
        }
    }

    /// Inverse of the profile restricted to `[0, inf)`:
    /// `(-1/ln a)^(1/gamma)` below the knee value, affine above it.
    pub fn inverse(&self, a: f64) -> f64 {
        if a <= 0.0 {
            return 0.0;
        }
        if a <= self.knee_value {
            (-1.0 / a.ln()).powf(1.0 / self.gamma)
        } else {
            self.t_knee + (a - self.knee_value) / self.lipschitz
        }
    }
}

/// Projects `(x, mu)` onto the epigraph `{ (x, mu) : mu >= f(||x||) }`.
///
/// The radial symmetry reduces the problem to the plane spanned by `x` and
/// the epigraph axis: for a point below the graph the projection lies on the
/// graph at some radius in `[0, ||x||]`, where the squared distance is
/// strictly unimodal (stationarity forces the outward-normal condition,
/// which a convex graph satisfies at exactly one radius). Golden-section
/// search brackets the radius to machine precision, then a few guarded
/// Newton steps polish the stationarity residual.
pub fn project_epigraph(shape: &RadialShape, x: &[f64], mu: f64) -> (Vec<f64>, f64) {
    let r0 = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let f0 = shape.value(r0);
    if mu >= f0 {
        return (x.to_vec(), mu);
    }
    let r_star = minimize_radius(shape, r0, mu);
    let scale = if r0 > 0.0 { r_star / r0 } else { 0.0 };
    let projected: Vec<f64> = x.iter().map(|c| c * scale).collect();
    (projected, shape.value(r_star))
}

fn minimize_radius(shape: &RadialShape, r0: f64, mu: f64) -> f64 {
    let objective = |r: f64| {
        let d = shape.value(r) - mu;
        (r - r0) * (r - r0) + d * d
    };

    // Golden-section over [0, r0]; the minimizer cannot exceed r0 because the
    // graph value there already sits above mu.
    let phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut a = 0.0;
    let mut b = r0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = objective(c);
    let mut fd = objective(d);
    while (b - a) > crate::tol::TOL.golden_width {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        }
    }
    let mut r = 0.5 * (a + b);

    // Newton polish on the stationarity condition
    // g(r) = (r - r0) + (f(r) - mu) f'(r) = 0.
    for _ in 0..4 {
        let fr = shape.value(r);
        let dfr = shape.derivative(r);
        let g = (r - r0) + (fr - mu) * dfr;
        // Second derivative of the squared distance; approximate f'' by a
        // symmetric difference to stay piecewise-agnostic.
        let h = 1e-6 * (1.0 + r);
        let ddf = (shape.derivative(r + h) - shape.derivative((r - h).max(0.0))) / (2.0 * h);
        let dg = 1.0 + dfr * dfr + (fr - mu) * ddf;
        if !dg.is_finite() || dg <= 0.0 {
            break;
        }
        let next = r - g / dg;
        if next.is_finite() && next >= 0.0 && next <= r0 {
            r = next;
        } else {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knee_constants_match_definitions() {
        let s = RadialShape::new(2.0).unwrap();
        // t_knee = (2/3)^(1/2), L = 2 * t^-3 * exp(-t^-2) with t^-2 = 3/2.
        assert!((s.t_knee() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let expect_l = 2.0 * (1.5f64).powf(1.5) * (-1.5f64).exp();
        assert!((s.lipschitz() - expect_l).abs() < 1e-15);
        assert!((s.knee_value() - (-1.5f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn profile_is_continuous_and_monotone_at_knee() {
        for gamma in [0.5, 1.0, 2.0, 4.0] {
            let s = RadialShape::new(gamma).unwrap();
            let t = s.t_knee();
            let below = s.value(t - 1e-12);
            let above = s.value(t + 1e-12);
            assert!((below - above).abs() < 1e-10);
            let mut prev = 0.0;
            for i in 1..200 {
                let v = s.value(i as f64 * 0.02);
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let s = RadialShape::new(2.0).unwrap();
        for &t in &[0.05, 0.2, s.t_knee(), 1.0, 3.0] {
            let a = s.value(t);
            let back = s.inverse(a);
            assert!((back - t).abs() < 1e-10, "t={t}, back={back}");
        }
        assert_eq!(s.inverse(0.0), 0.0);
    }

    #[test]
    fn interior_points_are_fixed() {
        let s = RadialShape::new(2.0).unwrap();
        let (x, mu) = project_epigraph(&s, &[0.3, 0.4], 1.0);
        assert_eq!(x, vec![0.3, 0.4]);
        assert_eq!(mu, 1.0);
    }

    #[test]
    fn below_origin_projects_to_origin() {
        let s = RadialShape::new(2.0).unwrap();
        let (x, mu) = project_epigraph(&s, &[0.0], -0.5);
        assert!(x[0].abs() < 1e-12);
        assert!(mu.abs() < 1e-12);
    }
}
