use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rational_serde, rational_to_f64, ExactReal};

/// One atom `mass * delta_location` of a finite jump measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// Characteristic triple `(beta, sigma2, nu)` of a real Levy process with a
/// finite atomic jump measure, in the Levy-Khintchine convention
///
/// `eta(y) = i beta y - sigma2 y^2 / 2 + sum_j m_j (e^{i x_j y} - 1 - i x_j y 1_{(-1,1)}(x_j))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyTriple {
    pub beta: f64,
    pub sigma2: f64,
    pub nu: Vec<Atom>,
}

impl LevyTriple {
    pub fn new(beta: f64, sigma2: f64, nu: Vec<Atom>) -> Result<Self> {
        let t = LevyTriple { beta, sigma2, nu };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() {
            return Err(Error::InvalidTriple("beta must be finite".into()));
        }
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidTriple(format!("sigma2 = {} must be >= 0", self.sigma2)));
        }
        for (i, a) in self.nu.iter().enumerate() {
            if a.location == 0.0 || !a.location.is_finite() {
                return Err(Error::InvalidTriple(format!("atom {i} at {} (nu has no mass at 0)", a.location)));
            }
            if !(a.mass > 0.0 && a.mass.is_finite()) {
                return Err(Error::InvalidTriple(format!("atom {i} has mass {}", a.mass)));
            }
            if self.nu[..i].iter().any(|b| b.location == a.location) {
                return Err(Error::InvalidTriple(format!("duplicate atom location {}", a.location)));
            }
        }
        Ok(())
    }

    /// Total jump rate `nu(R)`.
    pub fn total_rate(&self) -> f64 {
        self.nu.iter().map(|a| a.mass).sum()
    }

    /// The linear drift of the sample paths, `beta - sum_{|x_j|<1} x_j m_j`.
    ///
    /// This is the only place the compensator truncation `1_{(-1,1)}` enters.
    pub fn path_drift(&self) -> f64 {
        self.beta
            - self
                .nu
                .iter()
                .filter(|a| a.location.abs() < 1.0)
                .map(|a| a.location * a.mass)
                .sum::<f64>()
    }
}

/// An atom of a [`RationalTriple`]; the location may be a flagged irrational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalAtom {
    #[serde(rename = "x")]
    pub location: ExactReal,
    #[serde(with = "rational_serde")]
    pub mass: BigRational,
}

/// A characteristic triple with exact data, consumed by the classifier.
///
/// JSON form: `{"beta": "1/2", "sigma2": "0", "nu": [{"x": "1/2", "mass": "1"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalTriple {
    pub beta: ExactReal,
    #[serde(with = "rational_serde")]
    pub sigma2: BigRational,
    #[serde(default)]
    pub nu: Vec<RationalAtom>,
}

impl RationalTriple {
    pub fn new(beta: ExactReal, sigma2: BigRational, nu: Vec<RationalAtom>) -> Result<Self> {
        let t = RationalTriple { beta, sigma2, nu };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma2.is_negative() {
            return Err(Error::InvalidTriple("sigma2 must be >= 0".into()));
        }
        for (i, a) in self.nu.iter().enumerate() {
            if a.location.is_zero() {
                return Err(Error::InvalidTriple(format!("atom {i} at 0 (nu has no mass at 0)")));
            }
            if let ExactReal::Irrational(x) = a.location {
                if !x.is_finite() || x == 0.0 {
                    return Err(Error::InvalidTriple(format!("atom {i}: bad irrational approximation {x}")));
                }
            }
            if !a.mass.is_positive() {
                return Err(Error::InvalidTriple(format!("atom {i} has non-positive mass")));
            }
            if self.nu[..i].iter().any(|b| b.location == a.location) {
                return Err(Error::InvalidTriple(format!("duplicate atom location {}", a.location)));
            }
        }
        Ok(())
    }

    /// Exact version of [`LevyTriple::path_drift`].
    pub fn path_drift(&self) -> Result<ExactReal> {
        let mut drift = self.beta.clone();
        for a in self.nu.iter().filter(|a| a.location.abs_lt_one()) {
            drift = drift.sub(&a.location.mul_rational(&a.mass))?;
        }
        Ok(drift)
    }

    /// Floating-point triple for simulation.
    pub fn to_float(&self) -> Result<LevyTriple> {
        LevyTriple::new(
            self.beta.to_f64(),
            rational_to_f64(&self.sigma2),
            self.nu
                .iter()
                .map(|a| Atom {
                    location: a.location.to_f64(),
                    mass: rational_to_f64(&a.mass),
                })
                .collect(),
        )
    }

    /// The triple of the time-changed process `Y_{lambda t}`.
    pub fn time_scaled(&self, lambda: &BigRational) -> Result<RationalTriple> {
        if !lambda.is_positive() {
            return Err(Error::InvalidParameter("time scale must be positive".into()));
        }
        Ok(RationalTriple {
            beta: self.beta.mul_rational(lambda),
            sigma2: &self.sigma2 * lambda,
            nu: self
                .nu
                .iter()
                .map(|a| RationalAtom {
                    location: a.location.clone(),
                    mass: &a.mass * lambda,
                })
                .collect(),
        })
    }

    pub fn has_gaussian_part(&self) -> bool {
        !self.sigma2.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn path_drift_examples() {
        let t = LevyTriple::new(0.0, 0.0, vec![Atom { location: 1.0, mass: 1.0 }]).unwrap();
        assert_eq!(t.path_drift(), 0.0);
        let t = LevyTriple::new(0.5, 0.0, vec![Atom { location: 0.5, mass: 1.0 }]).unwrap();
        assert_eq!(t.path_drift(), 0.0);
        let t = LevyTriple::new(0.0, 1.0, vec![]).unwrap();
        assert_eq!(t.path_drift(), 0.0);
        let t = LevyTriple::new(0.0, 0.0, vec![Atom { location: -0.25, mass: 2.0 }]).unwrap();
        assert_eq!(t.path_drift(), 0.5);
    }

    #[test]
    fn invalid_triples() {
        assert!(LevyTriple::new(0.0, -1.0, vec![]).is_err());
        assert!(LevyTriple::new(0.0, 0.0, vec![Atom { location: 0.0, mass: 1.0 }]).is_err());
        assert!(LevyTriple::new(0.0, 0.0, vec![Atom { location: 1.0, mass: 0.0 }]).is_err());
        let dup = vec![Atom { location: 1.0, mass: 1.0 }, Atom { location: 1.0, mass: 2.0 }];
        assert!(LevyTriple::new(0.0, 0.0, dup).is_err());
    }

    #[test]
    fn exact_drift_matches_float() {
        let t: RationalTriple = serde_json::from_str(
            r#"{"beta": "1/2", "sigma2": "0", "nu": [{"x": "1/2", "mass": "1"}, {"x": "3", "mass": "2"}]}"#,
        )
        .unwrap();
        assert!(t.path_drift().unwrap().is_zero());
        assert_eq!(t.to_float().unwrap().path_drift(), 0.0);
    }

    #[test]
    fn irrational_atom_drift() {
        let t = RationalTriple::new(
            ExactReal::zero(),
            rational(0, 1),
            vec![RationalAtom {
                location: ExactReal::irrational(0.618),
                mass: rational(1, 1),
            }],
        )
        .unwrap();
        assert!(matches!(t.path_drift().unwrap(), ExactReal::Irrational(x) if (x + 0.618).abs() < 1e-12));
    }

    #[test]
    fn rational_triple_validation() {
        let bad: RationalTriple =
            serde_json::from_str(r#"{"beta": "0", "sigma2": "-1", "nu": []}"#).unwrap();
        assert!(bad.validate().is_err());
        let zero_atom: RationalTriple =
            serde_json::from_str(r#"{"beta": "0", "sigma2": "0", "nu": [{"x": "0", "mass": "1"}]}"#).unwrap();
        assert!(zero_atom.validate().is_err());
    }
}
