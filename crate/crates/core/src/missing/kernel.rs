use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radially symmetric kernels supported on the closed unit ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `K(u) = 1{|u| <= 1}`.
    Boxcar,
    /// `K(u) = (1 - |u|^2)_+`.
    Epanechnikov,
}

impl KernelKind {
    /// Kernel value at a point with squared norm `u2`.
    pub fn eval_sq(self, u2: f64) -> f64 {
        match self {
            KernelKind::Boxcar => {
                if u2 <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            KernelKind::Epanechnikov => (1.0 - u2).max(0.0),
        }
    }

    /// Radius outside of which the kernel vanishes.
    pub fn support_radius(self) -> f64 {
        1.0
    }

    /// Constants `(b, r)` with `K(u) >= b` whenever `|u| <= r`. Together with the
    /// bounded, compact support this makes the kernel regular.
    pub fn regularity_constants(self) -> (f64, f64) {
        match self {
            KernelKind::Boxcar => (1.0, 1.0),
            KernelKind::Epanechnikov => (0.75, 0.5),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "boxcar" => Ok(KernelKind::Boxcar),
            "epanechnikov" => Ok(KernelKind::Epanechnikov),
            other => Err(Error::input(format!(
                "unknown kernel `{other}` (expected boxcar or epanechnikov)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Boxcar => "boxcar",
            KernelKind::Epanechnikov => "epanechnikov",
        }
    }
}

/// Smoothing parameter: a fixed value or `h_n = c * n^(-1/(d+4))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Bandwidth {
    Fixed { h: f64 },
    Rule { c: f64 },
}

impl Bandwidth {
    /// Exponent `a` of the rule `h_n = c * n^(-a)`, if this is a rule.
    pub fn rate_exponent(&self, d: usize) -> Option<f64> {
        match self {
            Bandwidth::Fixed { .. } => None,
            Bandwidth::Rule { .. } => Some(1.0 / (d as f64 + 4.0)),
        }
    }

    /// `h_n -> 0` and `n h_n^d -> infinity` hold iff `0 < a < 1/d`.
    pub fn shrinks_consistently(&self, d: usize) -> bool {
        self.rate_exponent(d)
            .is_some_and(|a| a > 0.0 && a * (d as f64) < 1.0)
    }

    pub fn resolve(&self, n: usize, d: usize) -> Result<f64> {
        let h = match *self {
            Bandwidth::Fixed { h } => h,
            Bandwidth::Rule { c } => {
                if n == 0 {
                    return Err(Error::input("bandwidth rule needs n >= 1"));
                }
                c * (n as f64).powf(-1.0 / (d as f64 + 4.0))
            }
        };
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::input(format!("bandwidth must be positive, got {h}")));
        }
        Ok(h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub bandwidth: Bandwidth,
}

impl Default for KernelSpec {
    fn default() -> Self {
        KernelSpec {
            kind: KernelKind::Boxcar,
            bandwidth: Bandwidth::Rule { c: 1.0 },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_are_bounded_below_on_their_inner_ball() {
        for kind in [KernelKind::Boxcar, KernelKind::Epanechnikov] {
            let (b, r) = kind.regularity_constants();
            assert!(b > 0.0 && r > 0.0);
            for i in 0..=1000 {
                let u = r * i as f64 / 1000.0;
                assert!(kind.eval_sq(u * u) >= b, "{kind:?} at {u}");
            }
            // compact support with finite bound means the local-sup integral is finite
            assert_eq!(kind.eval_sq(1.0001), 0.0);
            assert!(kind.eval_sq(0.0) <= 1.0);
        }
    }

    #[test]
    fn default_rule_meets_rate_conditions() {
        for d in 1..=10 {
            let rule = Bandwidth::Rule { c: 1.0 };
            assert!(rule.shrinks_consistently(d));
            let a = rule.rate_exponent(d).unwrap();
            assert_eq!(a, 1.0 / (d as f64 + 4.0));
            assert!(1.0 - a * d as f64 > 0.0);
        }
        assert!(!Bandwidth::Fixed { h: 0.1 }.shrinks_consistently(2));
    }

    #[test]
    fn resolve() {
        let h = Bandwidth::Rule { c: 1.0 }.resolve(2000, 2).unwrap();
        assert!((h - 2000f64.powf(-1.0 / 6.0)).abs() < 1e-15);
        assert!(Bandwidth::Fixed { h: 0.0 }.resolve(10, 2).is_err());
        assert!(Bandwidth::Rule { c: 1.0 }.resolve(0, 2).is_err());
        assert_eq!(KernelKind::parse("boxcar").unwrap(), KernelKind::Boxcar);
        assert!(KernelKind::parse("gauss").is_err());
    }
}
