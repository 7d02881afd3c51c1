//! Centering and scaling of the largest eigenvalue in the three regimes.

use super::families::Family;
use crate::error::{Error, Result};
use crate::quaternion::SpikedParams;
use std::fmt;
use std::str::FromStr;

/// `|a - 1/γ|` at or below this counts as critical.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Quaternionic,
    Complex,
    QuaternionicWhite,
    ComplexWhite,
}

impl Ensemble {
    pub fn is_quaternionic(self) -> bool {
        matches!(self, Ensemble::Quaternionic | Ensemble::QuaternionicWhite)
    }

    pub fn is_white(self) -> bool {
        matches!(self, Ensemble::QuaternionicWhite | Ensemble::ComplexWhite)
    }

    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Quaternionic => "quaternionic",
            Ensemble::Complex => "complex",
            Ensemble::QuaternionicWhite => "quaternionic-white",
            Ensemble::ComplexWhite => "complex-white",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ensemble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Ensemble::Quaternionic,
            Ensemble::Complex,
            Ensemble::QuaternionicWhite,
            Ensemble::ComplexWhite,
        ]
        .into_iter()
        .find(|e| e.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| Error::InvalidParams(format!("unknown ensemble '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        }
    }

    /// Regime of spike `a` at aspect ratio `γ`.
    pub fn classify(a: f64, gamma: f64) -> Regime {
        let d = a - 1.0 / gamma;
        if d.abs() <= CRITICAL_TOL {
            Regime::Critical
        } else if d < 0.0 {
            Regime::Subcritical
        } else {
            Regime::Supercritical
        }
    }
}

/// `T = (λ - center) / scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleMap {
    pub regime: Regime,
    pub center: f64,
    pub scale: f64,
    pub ensemble: Ensemble,
}

impl RescaleMap {
    pub fn apply(&self, lambda: f64) -> f64 {
        (lambda - self.center) / self.scale
    }

    pub fn invert(&self, t: f64) -> f64 {
        self.center + self.scale * t
    }

    /// The limiting law in this regime.
    pub fn family(&self) -> Family {
        match (self.regime, self.ensemble.is_quaternionic()) {
            (Regime::Supercritical, _) => Family::Gaussian,
            (Regime::Critical, true) => Family::Gse1,
            (Regime::Critical, false) => Family::Gue1,
            (Regime::Subcritical, true) => Family::Gse,
            (Regime::Subcritical, false) => Family::Gue,
        }
    }
}

/// Map for the regime the parameters fall into. White ensembles ignore `a`.
pub fn rescale_map(params: &SpikedParams, ensemble: Ensemble) -> Result<RescaleMap> {
    let regime = if ensemble.is_white() {
        Regime::Subcritical
    } else {
        Regime::classify(params.a(), params.gamma())
    };
    rescale_map_in(params, ensemble, regime)
}

/// Map for an explicitly requested regime.
pub fn rescale_map_in(
    params: &SpikedParams,
    ensemble: Ensemble,
    regime: Regime,
) -> Result<RescaleMap> {
    let g = params.gamma();
    let a = params.a();
    // effective sample size: 2M for quaternionic entries
    let m = if ensemble.is_quaternionic() {
        2.0 * params.m() as f64
    } else {
        params.m() as f64
    };
    let (center, scale) = match regime {
        Regime::Subcritical | Regime::Critical => (
            (1.0 + 1.0 / g).powi(2),
            (1.0 + g).powf(4.0 / 3.0) / (g * m.powf(2.0 / 3.0)),
        ),
        Regime::Supercritical => {
            let d = 1.0 - 1.0 / (g * g * a * a);
            if ensemble.is_white() || !(a > 1.0 / g) || !(d > 0.0) {
                return Err(Error::Regime(format!(
                    "supercritical map needs a > 1/γ, got a = {a}, γ = {g}"
                )));
            }
            (
                (a + 1.0) * (1.0 + 1.0 / (g * g * a)),
                (a + 1.0) * d.sqrt() / m.sqrt(),
            )
        }
    };
    Ok(RescaleMap {
        regime,
        center,
        scale,
        ensemble,
    })
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
