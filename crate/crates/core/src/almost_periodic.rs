//! Time averages of trigonometric polynomials `f(y) = sum_j c_j e^{i lambda_j y}`
//! along real Lévy paths.
//!
//! For a path that does not live on a lattice, `(1/T) int_0^T f(Y_t) dt`
//! tends to the mean value `A(f)`, the coefficient of frequency 0. Each
//! frequency is handled separately as the first character of the circle
//! path `<lambda_j Y_t / 2 pi>`, so jump and drift paths are integrated in
//! closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::group::CharacterIndex;
use crate::levy::{RationalTriple, RealLevyPath, TorusLevyPath};
use crate::occupation::character_series;

/// One term `c e^{i lambda y}`. JSON: `{"lambda": r, "re": a, "im": b}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub lambda: f64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl TrigTerm {
    pub fn coefficient(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A trigonometric polynomial with pairwise distinct frequencies.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TrigPolynomial {
    terms: Vec<TrigTerm>,
}

impl TrigPolynomial {
    pub fn new(terms: Vec<TrigTerm>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if !(t.lambda.is_finite() && t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::InvalidParameter(format!("term {i} is not finite")));
            }
            if terms[..i].iter().any(|s| s.lambda == t.lambda) {
                return Err(Error::InvalidParameter(format!("frequency {} repeated", t.lambda)));
            }
        }
        Ok(TrigPolynomial { terms })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        TrigPolynomial::new(serde_json::from_str(text)?)
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coefficient() * Complex64::from_polar(1.0, t.lambda * y))
            .sum()
    }

    /// `f(. + shift)`: every coefficient picks up the phase `e^{i lambda shift}`.
    pub fn shifted(&self, shift: f64) -> TrigPolynomial {
        TrigPolynomial {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let c = t.coefficient() * Complex64::from_polar(1.0, t.lambda * shift);
                    TrigTerm {
                        lambda: t.lambda,
                        re: c.re,
                        im: c.im,
                    }
                })
                .collect(),
        }
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TrigTerm>::deserialize(d)?;
        TrigPolynomial::new(terms).map_err(serde::de::Error::custom)
    }
}

/// `A(f)`: the coefficient of frequency 0, or 0 if there is none.
pub fn mean_value(f: &TrigPolynomial) -> Complex64 {
    f.terms
        .iter()
        .find(|t| t.lambda == 0.0)
        .map(|t| t.coefficient())
        .unwrap_or_default()
}

/// `(1/T) int_0^T f(Y_t) dt` for `T` up to the path horizon.
pub fn path_average(f: &TrigPolynomial, path: &RealLevyPath, horizon: f64) -> Result<Complex64> {
    if horizon.is_nan() || horizon <= 0.0 {
        return Err(Error::InvalidParameter(format!("averaging horizon {horizon} must be positive")));
    }
    if horizon > path.horizon() {
        return Err(Error::CheckpointBeyondHorizon {
            checkpoint: horizon,
            horizon: path.horizon(),
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for t in &f.terms {
        if t.lambda == 0.0 {
            total += t.coefficient();
            continue;
        }
        let lifted = TorusLevyPath::affine(path.clone(), 0.0, t.lambda / (2.0 * PI), 0.0);
        let series = character_series(&lifted, &[CharacterIndex::circle(1)], &[horizon])?;
        let avg = series[0].last().ok_or(Error::Empty("no checkpoint"))?;
        total += t.coefficient() * avg;
    }
    Ok(total)
}

/// Whether the time average of every trigonometric polynomial is known to
/// converge to its mean value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AverageStatus {
    /// Gaussian part, nonzero drift, or jumps off every lattice: the
    /// average tends to `A(f)`.
    ConvergesToMean,
    /// `sigma2 = 0`, zero drift and jumps on a lattice `a Z`: some
    /// frequencies do not average out. The alternative limit is not
    /// computed.
    Degenerate,
    /// Several flagged-irrational jump sizes whose ratios are unknown.
    Undetermined,
}

impl AverageStatus {
    pub fn describe(self) -> &'static str {
        match self {
            AverageStatus::ConvergesToMean => "average converges to A(f)",
            AverageStatus::Degenerate => "degenerate: limit not A(f)",
            AverageStatus::Undetermined => "undetermined: lattice condition not decidable from the flags",
        }
    }
}

/// Classifies a triple for [`path_average`]. Besides `sigma2 = 0` and a
/// lattice carrying `nu`, degeneracy needs the path drift to vanish: a
/// nonzero drift spreads `Y_t` over the whole line.
pub fn average_status(triple: &RationalTriple) -> Result<AverageStatus> {
    triple.validate()?;
    if triple.has_gaussian_part() {
        return Ok(AverageStatus::ConvergesToMean);
    }
    let drift = match triple.path_drift() {
        Ok(d) => d,
        Err(Error::Undecidable(_)) => return Ok(AverageStatus::Undetermined),
        Err(e) => return Err(e),
    };
    if !drift.is_zero() {
        return Ok(AverageStatus::ConvergesToMean);
    }
    let irrational: Vec<f64> = triple
        .nu
        .iter()
        .filter_map(|a| match a.location {
            ExactReal::Irrational(x) => Some(x.abs()),
            ExactReal::Rational(_) => None,
        })
        .collect();
    if irrational.is_empty() {
        return Ok(AverageStatus::Degenerate);
    }
    if irrational.len() < triple.nu.len() {
        // a rational and an irrational jump have an irrational ratio
        return Ok(AverageStatus::ConvergesToMean);
    }
    if irrational.iter().all(|&x| x == irrational[0]) {
        return Ok(AverageStatus::Degenerate);
    }
    Ok(AverageStatus::Undetermined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::levy::{simulate_real_levy, simulate_real_levy_from, LevyTriple, RationalAtom, DEFAULT_DT};

    fn poly(terms: &[(f64, f64)]) -> TrigPolynomial {
        TrigPolynomial::new(terms.iter().map(|&(lambda, re)| TrigTerm { lambda, re, im: 0.0 }).collect()).unwrap()
    }

    fn cosine(lambda: f64) -> Vec<(f64, f64)> {
        vec![(lambda, 0.5), (-lambda, 0.5)]
    }

    #[test]
    fn mean_value_examples() {
        assert_eq!(mean_value(&poly(&[(0.0, 3.0)])), Complex64::new(3.0, 0.0));
        assert_eq!(mean_value(&poly(&cosine(2.0 * PI))), Complex64::new(0.0, 0.0));
        let mut t = vec![(0.0, 2.0)];
        t.extend(cosine(1.0));
        t.extend(cosine(2f64.sqrt()));
        let f = poly(&t);
        assert_eq!(mean_value(&f), Complex64::new(2.0, 0.0));
        assert_eq!(mean_value(&f.shifted(0.37)), mean_value(&f));
    }

    #[test]
    fn parse_and_reject_duplicates() {
        let f = TrigPolynomial::from_json(r#"[{"lambda": 0, "re": 2, "im": 0}, {"lambda": 1.5, "re": 0.5}]"#).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert!(TrigPolynomial::from_json(r#"[{"lambda": 1, "re": 1}, {"lambda": 1, "re": 2}]"#).is_err());
    }

    #[test]
    fn path_average_examples() {
        let f = poly(&[(1.0, 1.0)]);
        let zero = simulate_real_levy(&LevyTriple::new(0.0, 0.0, vec![]).unwrap(), 5.0, DEFAULT_DT, 1).unwrap();
        assert!((path_average(&f, &zero, 5.0).unwrap() - 1.0).norm() < 1e-15);
        let drift = simulate_real_levy_from(&LevyTriple::new(1.0, 0.0, vec![]).unwrap(), 10.0, DEFAULT_DT, 1, 0.0)
            .unwrap();
        assert!(path_average(&f, &drift, 2.0 * PI).unwrap().norm() < 1e-12);
        assert!(path_average(&f, &drift, 11.0).is_err());
    }

    #[test]
    fn status_examples() {
        let atom = |x: ExactReal| RationalAtom { location: x, mass: rational(1, 1) };
        let t = |beta, sigma2: (i64, i64), nu| RationalTriple::new(beta, rational(sigma2.0, sigma2.1), nu).unwrap();
        assert_eq!(
            average_status(&t(ExactReal::zero(), (1, 1), vec![])).unwrap(),
            AverageStatus::ConvergesToMean
        );
        assert_eq!(
            average_status(&t(ExactReal::zero(), (0, 1), vec![atom(ExactReal::from_ratio(2, 1))])).unwrap(),
            AverageStatus::Degenerate
        );
        assert_eq!(
            average_status(&t(ExactReal::from_ratio(1, 1), (0, 1), vec![atom(ExactReal::from_ratio(2, 1))])).unwrap(),
            AverageStatus::ConvergesToMean
        );
        let theta = ExactReal::irrational(0.618);
        assert_eq!(
            average_status(&t(theta.clone(), (0, 1), vec![atom(theta)])).unwrap(),
            AverageStatus::Degenerate
        );
    }
}
