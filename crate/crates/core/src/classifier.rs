//! Exact decision procedures for the limit of the occupation measure.
//!
//! A Lévy process on a compact group is c.u.d. almost surely iff the closed
//! subgroup generated by the supports of its marginals is the whole group;
//! otherwise its occupation measure converges to Haar measure on that
//! subgroup (translated by `X_0`). The procedures below decide this with
//! exact rational arithmetic. Irrationality is an input flag
//! ([`ExactReal::Irrational`]) and never inferred from a float.
//!
//! For a real Lévy process with triple `(beta, sigma2, nu)` and finite `nu`
//! projected to `T`, the path is confined to a lattice exactly when
//! `sigma2 = 0`, `nu` is carried by `(1/m) Z`, and the drift left after
//! removing the compensator vanishes. The last condition is tested as
//! `path_drift == 0`, which also handles atoms with `|x| >= 1`.
//!
//! Continuous-time walks on finite groups built from exponential clocks
//! have the same support closure as the discrete walk with the same steps,
//! so [`classify_iid_finite`] decides both.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, ExactReal};
use crate::group::{frac, CompactGroup, FiniteTable, GroupFamily, GroupPoint};
use crate::levy::{RationalAtom, RationalTriple};
use crate::occupation::Partition;

/// Largest finite subgroup of `T^d` the classifier will enumerate.
const MAX_TORUS_SUBGROUP: usize = 1_000_000;

/// Largest lattice modulus for which a limit measure is tabulated.
const MAX_LATTICE_POINTS: u64 = 10_000_000;

/// The predicted limit of the occupation measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    /// Haar measure on the whole group (the path is c.u.d.).
    HaarOnG,
    /// Uniform on `{0, 1/m, ..., (m-1)/m}` in `T`, `m >= 2` minimal.
    UniformOnLattice { m: u64 },
    /// Uniform on a proper subgroup of a finite group (sorted indices).
    UniformOnSubgroup { subgroup: Vec<usize> },
    /// Uniform on a finite subgroup of `T^d`, `d >= 2`: the points
    /// `v / m` for the listed integer vectors `v`.
    UniformOnTorusSubgroup { m: u64, points: Vec<Vec<u64>> },
    /// The path never leaves its starting point.
    PointMass { point: GroupPoint },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    /// Which condition decided the verdict.
    pub provenance: String,
}

impl Verdict {
    fn new(kind: VerdictKind, provenance: impl Into<String>) -> Self {
        Verdict {
            kind,
            provenance: provenance.into(),
        }
    }

    pub fn is_haar(&self) -> bool {
        matches!(self.kind, VerdictKind::HaarOnG)
    }

    /// Short name of the verdict kind.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            VerdictKind::HaarOnG => "HaarOnG",
            VerdictKind::UniformOnLattice { .. } => "UniformOnLattice",
            VerdictKind::UniformOnSubgroup { .. } => "UniformOnSubgroup",
            VerdictKind::UniformOnTorusSubgroup { .. } => "UniformOnTorusSubgroup",
            VerdictKind::PointMass { .. } => "PointMass",
        }
    }

    /// JSON document `{kind, m?, subgroup?, point?, limit_measure, provenance}`
    /// with the limit measure on `partition`.
    pub fn to_json(
        &self,
        group: &CompactGroup,
        partition: &Partition,
        translate: Option<&GroupPoint>,
    ) -> Result<serde_json::Value> {
        let limit = predicted_limit_measure(&self.kind, group, partition, translate)?;
        let mut doc = serde_json::Map::new();
        doc.insert("kind".into(), self.kind_name().into());
        match &self.kind {
            VerdictKind::HaarOnG => {}
            VerdictKind::UniformOnLattice { m } => {
                doc.insert("m".into(), (*m).into());
            }
            VerdictKind::UniformOnSubgroup { subgroup } => {
                doc.insert("subgroup".into(), serde_json::to_value(subgroup)?);
                if let Some(t) = group.finite_table() {
                    let labels: Vec<&str> = subgroup.iter().map(|&i| t.label(i)).collect();
                    doc.insert("subgroup_labels".into(), serde_json::to_value(labels)?);
                }
            }
            VerdictKind::UniformOnTorusSubgroup { m, points } => {
                doc.insert("m".into(), (*m).into());
                doc.insert("subgroup".into(), serde_json::to_value(points)?);
            }
            VerdictKind::PointMass { point } => {
                doc.insert("point".into(), point.to_string().into());
            }
        }
        let limit: Vec<f64> = limit.into_iter().map(crate::uniformity::round12).collect();
        doc.insert("limit_measure".into(), serde_json::to_value(limit)?);
        doc.insert("provenance".into(), self.provenance.clone().into());
        Ok(serde_json::Value::Object(doc))
    }
}

/// Least `m` with every value in `(1/m) Z`: the lcm of the denominators.
/// `None` when some value is flagged irrational; `1` for no values.
pub fn minimal_lattice_modulus(values: &[ExactReal]) -> Option<BigInt> {
    let mut m = BigInt::one();
    for v in values {
        let q = v.as_rational()?;
        m = m.lcm(q.denom());
    }
    Some(m)
}

fn modulus_u64(m: &BigInt) -> Result<u64> {
    m.to_u64()
        .ok_or_else(|| Error::InvalidParameter(format!("lattice modulus {m} does not fit in 64 bits")))
}

/// Decides the limit of `<Y_t>` for a real Lévy process `Y` with exact
/// triple, started at 0.
pub fn classify_torus_triple(triple: &RationalTriple) -> Result<Verdict> {
    triple.validate()?;
    if triple.has_gaussian_part() {
        return Ok(Verdict::new(VerdictKind::HaarOnG, "sigma2 > 0: Gaussian part"));
    }
    let locations: Vec<ExactReal> = triple.nu.iter().map(|a| a.location.clone()).collect();
    let Some(m) = minimal_lattice_modulus(&locations) else {
        return Ok(Verdict::new(
            VerdictKind::HaarOnG,
            "sigma2 = 0, but nu charges an irrational point: no lattice (1/m)Z carries nu",
        ));
    };
    let drift = triple.path_drift()?;
    if !drift.is_zero() {
        return Ok(Verdict::new(
            VerdictKind::HaarOnG,
            format!("sigma2 = 0 and nu on (1/{m})Z, but path drift {drift} != 0"),
        ));
    }
    let m = modulus_u64(&m)?;
    if m == 1 {
        return Ok(Verdict::new(
            VerdictKind::PointMass {
                point: GroupPoint::circle(0.0),
            },
            "sigma2 = 0, nu on Z, path drift 0: the path is constant mod 1",
        ));
    }
    Ok(Verdict::new(
        VerdictKind::UniformOnLattice { m },
        format!("sigma2 = 0, nu on (1/{m})Z with m minimal, path drift 0"),
    ))
}

/// Exact description of `X_t = a exp(c Y_t + d t)` for a Benford decision.
///
/// `c_over_ln_b` and `d_over_ln_b` are `c / ln b` and `d / ln b`; either may
/// be a flagged irrational (e.g. `c = 1` gives `1 / ln 10`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenfordInput {
    pub triple: RationalTriple,
    pub c_over_ln_b: ExactReal,
    #[serde(default = "ExactReal::zero")]
    pub d_over_ln_b: ExactReal,
    pub base: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenfordVerdict {
    /// Whether `X` is `b`-Benford almost surely.
    pub benford: bool,
    /// Verdict for the companion circle path `<log_b |X_t|>`.
    pub torus: Verdict,
    /// Triple of `(c Y_t + d t) / ln b`, the lift of the companion path.
    pub transformed: RationalTriple,
}

/// The triple of `(c Y_t + d t) / ln b`: jumps `q_j = c x_j / ln b`, the
/// same Gaussian-ness, and `beta` chosen so its path drift is
/// `(c * path_drift + d) / ln b`.
pub fn benford_transformed_triple(input: &BenfordInput) -> Result<RationalTriple> {
    if input.base < 2 {
        return Err(Error::InvalidParameter(format!("base {} must be >= 2", input.base)));
    }
    if input.c_over_ln_b.is_zero() {
        return Err(Error::InvalidParameter("c must be nonzero".into()));
    }
    input.triple.validate()?;
    let c = &input.c_over_ln_b;
    let mut nu = Vec::with_capacity(input.triple.nu.len());
    for a in &input.triple.nu {
        nu.push(RationalAtom {
            location: c.mul(&a.location)?,
            mass: a.mass.clone(),
        });
    }
    let sigma2 = match c {
        ExactReal::Rational(q) => &input.triple.sigma2 * q * q,
        // only whether sigma2 vanishes matters to the classifier
        ExactReal::Irrational(_) => input.triple.sigma2.clone(),
    };
    let has_irrational_jump = nu.iter().any(|a| a.location.as_rational().is_none());
    let drift = if sigma2.is_zero() && !has_irrational_jump {
        c.mul(&input.triple.path_drift()?)?.add(&input.d_over_ln_b)?
    } else {
        // the verdict is Haar whatever the drift; keep a float for reference
        ExactReal::Irrational(c.to_f64() * input.triple.to_float()?.path_drift() + input.d_over_ln_b.to_f64())
    };
    let mut beta = drift;
    for a in nu.iter().filter(|a| a.location.abs_lt_one()) {
        if let Some(q) = a.location.as_rational() {
            beta = beta.add(&ExactReal::Rational(q * &a.mass))?;
        }
    }
    Ok(RationalTriple { beta, sigma2, nu })
}

/// `X` is `b`-Benford iff its companion circle path is c.u.d.; decided by
/// [`classify_torus_triple`] on the transformed triple, which adds the drift
/// condition to the lattice condition on the jumps.
pub fn classify_benford(input: &BenfordInput) -> Result<BenfordVerdict> {
    let transformed = benford_transformed_triple(input)?;
    let torus = if transformed.has_gaussian_part() {
        Verdict::new(VerdictKind::HaarOnG, "sigma2 > 0: Gaussian part")
    } else {
        classify_torus_triple(&transformed)?
    };
    Ok(BenfordVerdict {
        benford: torus.is_haar(),
        torus,
        transformed,
    })
}

/// Subgroup generated by `support`: the breadth-first closure under
/// multiplication, which in a finite group is already a subgroup. Sorted.
pub fn subgroup_closure_finite(table: &FiniteTable, support: &[usize]) -> Result<Vec<usize>> {
    if support.is_empty() {
        return Err(Error::Empty("step support"));
    }
    for &s in support {
        table.check(s)?;
    }
    let n = table.order();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in support {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &s in support {
            let y = table.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let h: Vec<usize> = (0..n).filter(|&i| seen[i]).collect();
    debug_assert!(seen[table.identity()]);
    debug_assert!(h.iter().all(|&x| seen[table.inv(x)]));
    Ok(h)
}

/// Limit of the walk `xi_1 ... xi_n` (or of its Poissonised version) with
/// steps drawn from `support`, started at the identity.
pub fn classify_iid_finite(table: &FiniteTable, support: &[usize]) -> Result<Verdict> {
    let h = subgroup_closure_finite(table, support)?;
    if h.len() == table.order() {
        return Ok(Verdict::new(
            VerdictKind::HaarOnG,
            format!("the steps generate all {} elements", table.order()),
        ));
    }
    if h.len() == 1 {
        return Ok(Verdict::new(
            VerdictKind::PointMass {
                point: GroupPoint::Element(table.identity()),
            },
            "the steps generate the trivial subgroup",
        ));
    }
    let provenance = format!("the steps generate a subgroup of order {} < {}", h.len(), table.order());
    Ok(Verdict::new(VerdictKind::UniformOnSubgroup { subgroup: h }, provenance))
}

/// Limit of a random walk on `T^d` with steps `support` (each a vector of
/// `d` exact coordinates), started at 0.
///
/// On `T` one irrational step already generates a dense subgroup. On `T^d`
/// with `d >= 2` irrational steps can generate subtori, which this
/// procedure does not identify; such input is undecidable here.
pub fn classify_iid_torus(dim: usize, support: &[Vec<ExactReal>]) -> Result<Verdict> {
    if support.is_empty() {
        return Err(Error::Empty("step support"));
    }
    if dim == 0 || support.iter().any(|s| s.len() != dim) {
        return Err(Error::LengthMismatch(format!("steps must have {dim} coordinates")));
    }
    let coords: Vec<ExactReal> = support.iter().flatten().cloned().collect();
    let Some(m) = minimal_lattice_modulus(&coords) else {
        if dim == 1 {
            return Ok(Verdict::new(
                VerdictKind::HaarOnG,
                "an irrational step generates a dense subgroup of T",
            ));
        }
        return Err(Error::Undecidable(format!(
            "irrational steps on T^{dim} may generate a proper subtorus"
        )));
    };
    let m = modulus_u64(&m)?;
    if m == 1 {
        return Ok(Verdict::new(
            VerdictKind::PointMass {
                point: GroupPoint::torus(&vec![0.0; dim]),
            },
            "every step is 0 mod 1",
        ));
    }
    if dim == 1 {
        return Ok(Verdict::new(
            VerdictKind::UniformOnLattice { m },
            format!("rational steps with least common denominator {m} generate (1/{m})Z"),
        ));
    }
    let m_big = BigInt::from(m);
    let gens: Vec<Vec<u64>> = support
        .iter()
        .map(|s| {
            s.iter()
                .map(|x| {
                    let q = x.as_rational().expect("checked rational");
                    let v = (q * BigRational::from_integer(m_big.clone())).to_integer();
                    v.mod_floor(&m_big).to_u64().expect("reduced mod m")
                })
                .collect()
        })
        .collect();
    let zero = vec![0u64; dim];
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(y.clone()) {
                if seen.len() > MAX_TORUS_SUBGROUP {
                    return Err(Error::InvalidParameter(format!(
                        "generated subgroup of T^{dim} exceeds {MAX_TORUS_SUBGROUP} points"
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    let mut points: Vec<Vec<u64>> = seen.into_iter().collect();
    points.sort();
    let provenance = format!("rational steps generate a subgroup of order {} in (1/{m})Z^{dim}", points.len());
    Ok(Verdict::new(VerdictKind::UniformOnTorusSubgroup { m, points }, provenance))
}

/// The limit measure of a verdict on `partition`, optionally translated by
/// the starting point `X_0` (the default is the identity).
///
/// Lattice points must lie strictly inside cells; use
/// [`Partition::centered_torus`] to align cell centres with `j / m`.
pub fn predicted_limit_measure(
    kind: &VerdictKind,
    group: &CompactGroup,
    partition: &Partition,
    translate: Option<&GroupPoint>,
) -> Result<Vec<f64>> {
    partition.validate()?;
    partition.check_group(group)?;
    if let Some(x0) = translate {
        group.check(x0)?;
    }
    let mut masses = vec![0.0; partition.len()];
    let place = |masses: &mut Vec<f64>, point: GroupPoint, w: f64| -> Result<()> {
        let p = match translate {
            Some(x0) => group.multiply(x0, &point)?,
            None => point,
        };
        if let (Partition::Torus { bins, offset, .. }, GroupPoint::Torus(c)) = (partition, &p) {
            for &x in c.iter() {
                let u = frac(x - offset) * *bins as f64;
                if (u - u.round()).abs() < 1e-9 {
                    return Err(Error::LatticeOnBoundary { point: p.to_string() });
                }
            }
        }
        masses[partition.bin_of(&p)?] += w;
        Ok(())
    };
    match kind {
        VerdictKind::HaarOnG => return Ok(partition.haar_masses()),
        VerdictKind::UniformOnLattice { m } => {
            if group.torus_dim() != Some(1) {
                return Err(Error::FamilyMismatch {
                    expected: "one-dimensional torus".into(),
                    got: group.family_name().into(),
                });
            }
            if *m == 0 || *m > MAX_LATTICE_POINTS {
                return Err(Error::InvalidParameter(format!("lattice modulus {m} out of range")));
            }
            for j in 0..*m {
                place(&mut masses, GroupPoint::circle(j as f64 / *m as f64), 1.0 / *m as f64)?;
            }
        }
        VerdictKind::UniformOnSubgroup { subgroup } => {
            let GroupFamily::Finite(t) = group.family() else {
                return Err(Error::FamilyMismatch {
                    expected: "finite".into(),
                    got: group.family_name().into(),
                });
            };
            for &h in subgroup {
                t.check(h)?;
                place(&mut masses, GroupPoint::Element(h), 1.0 / subgroup.len() as f64)?;
            }
        }
        VerdictKind::UniformOnTorusSubgroup { m, points } => {
            for v in points {
                let coords: Vec<f64> = v.iter().map(|&a| a as f64 / *m as f64).collect();
                place(&mut masses, GroupPoint::torus(&coords), 1.0 / points.len() as f64)?;
            }
        }
        VerdictKind::PointMass { point } => {
            group.check(point)?;
            place(&mut masses, point.clone(), 1.0)?;
        }
    }
    Ok(masses)
}

/// Lattice points `j / m` as exact strings, for reports.
pub fn lattice_points(m: u64) -> Vec<String> {
    (0..m)
        .map(|j| format_rational(&BigRational::new(BigInt::from(j), BigInt::from(m))))
        .collect()
}

/// Whether `x` is a nonnegative rational; used when checking configs.
pub fn is_nonnegative_rational(x: &ExactReal) -> bool {
    x.as_rational().is_some_and(|q| !q.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::group::fixtures;

    fn triple(beta: ExactReal, sigma2: (i64, i64), atoms: &[(ExactReal, (i64, i64))]) -> RationalTriple {
        RationalTriple::new(
            beta,
            rational(sigma2.0, sigma2.1),
            atoms
                .iter()
                .map(|(x, m)| RationalAtom {
                    location: x.clone(),
                    mass: rational(m.0, m.1),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn modulus_examples() {
        let q = |a, b| ExactReal::from_ratio(a, b);
        assert_eq!(minimal_lattice_modulus(&[q(1, 2), q(3, 4)]), Some(BigInt::from(4)));
        assert_eq!(minimal_lattice_modulus(&[]), Some(BigInt::one()));
        assert_eq!(minimal_lattice_modulus(&[ExactReal::irrational(0.618)]), None);
    }

    #[test]
    fn torus_triple_examples() {
        let z = ExactReal::zero();
        let half = ExactReal::from_ratio(1, 2);
        assert!(classify_torus_triple(&triple(z.clone(), (1, 1), &[])).unwrap().is_haar());
        let golden = ExactReal::irrational(0.618_033_988_749_895);
        assert!(classify_torus_triple(&triple(z.clone(), (0, 1), &[(golden, (1, 1))]))
            .unwrap()
            .is_haar());
        let v = classify_torus_triple(&triple(half.clone(), (0, 1), &[(half.clone(), (1, 1))])).unwrap();
        assert_eq!(v.kind, VerdictKind::UniformOnLattice { m: 2 });
        assert!(classify_torus_triple(&triple(z.clone(), (0, 1), &[(half, (1, 1))]))
            .unwrap()
            .is_haar());
        let v = classify_torus_triple(&triple(z, (0, 1), &[])).unwrap();
        assert!(matches!(v.kind, VerdictKind::PointMass { .. }));
    }

    #[test]
    fn benford_examples() {
        let gbm = BenfordInput {
            triple: triple(ExactReal::zero(), (1, 1), &[]),
            c_over_ln_b: ExactReal::irrational(1.0 / 10f64.ln()),
            d_over_ln_b: ExactReal::zero(),
            base: 10,
        };
        assert!(classify_benford(&gbm).unwrap().benford);
        let poisson = |c| BenfordInput {
            triple: triple(ExactReal::zero(), (0, 1), &[(ExactReal::from_ratio(1, 1), (1, 1))]),
            c_over_ln_b: c,
            d_over_ln_b: ExactReal::zero(),
            base: 10,
        };
        let lattice = classify_benford(&poisson(ExactReal::from_ratio(1, 1))).unwrap();
        assert!(!lattice.benford);
        assert!(matches!(lattice.torus.kind, VerdictKind::PointMass { .. }));
        assert!(classify_benford(&poisson(ExactReal::irrational(1.0 / 10f64.ln()))).unwrap().benford);
        let mut both = poisson(ExactReal::irrational(0.43));
        both.triple.nu[0].location = ExactReal::irrational(0.7);
        assert!(matches!(classify_benford(&both), Err(Error::Undecidable(_))));
    }

    #[test]
    fn finite_examples() {
        let z6 = fixtures::cyclic(6).unwrap();
        assert_eq!(subgroup_closure_finite(&z6, &[2]).unwrap(), vec![0, 2, 4]);
        assert_eq!(subgroup_closure_finite(&z6, &[1]).unwrap().len(), 6);
        let s3 = fixtures::symmetric(3).unwrap();
        let t = s3.index_of("(12)").unwrap();
        let c = s3.index_of("(123)").unwrap();
        assert_eq!(subgroup_closure_finite(&s3, &[t]).unwrap(), {
            let mut v = vec![s3.identity(), t];
            v.sort();
            v
        });
        assert!(classify_iid_finite(&s3, &[t, c]).unwrap().is_haar());
        let z2 = fixtures::cyclic(2).unwrap();
        assert!(matches!(
            classify_iid_finite(&z2, &[0]).unwrap().kind,
            VerdictKind::PointMass { point: GroupPoint::Element(0) }
        ));
        assert!(subgroup_closure_finite(&z2, &[]).is_err());
        assert!(subgroup_closure_finite(&z2, &[5]).is_err());
    }

    #[test]
    fn limit_measure_examples() {
        let circle = CompactGroup::circle();
        let p = Partition::Torus { dim: 1, bins: 10, offset: 0.0 };
        assert_eq!(
            predicted_limit_measure(&VerdictKind::HaarOnG, &circle, &p, None).unwrap(),
            vec![0.1; 10]
        );
        let c = Partition::centered_torus(1, 10).unwrap();
        let lat = predicted_limit_measure(&VerdictKind::UniformOnLattice { m: 2 }, &circle, &c, None).unwrap();
        assert_eq!(lat[0], 0.5);
        assert_eq!(lat[5], 0.5);
        assert_eq!(lat.iter().sum::<f64>(), 1.0);
        assert!(matches!(
            predicted_limit_measure(&VerdictKind::UniformOnLattice { m: 2 }, &circle, &p, None),
            Err(Error::LatticeOnBoundary { .. })
        ));
        let z6 = CompactGroup::finite(fixtures::cyclic(6).unwrap());
        let sub = VerdictKind::UniformOnSubgroup { subgroup: vec![0, 2, 4] };
        let m = predicted_limit_measure(&sub, &z6, &Partition::Finite { order: 6 }, None).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(m, vec![third, 0.0, third, 0.0, third, 0.0]);
        let shifted =
            predicted_limit_measure(&sub, &z6, &Partition::Finite { order: 6 }, Some(&GroupPoint::Element(1)))
                .unwrap();
        assert_eq!(shifted, vec![0.0, third, 0.0, third, 0.0, third]);
    }

    #[test]
    fn iid_torus() {
        let q = |a, b| vec![ExactReal::from_ratio(a, b)];
        assert_eq!(
            classify_iid_torus(1, &[q(1, 2), q(1, 3)]).unwrap().kind,
            VerdictKind::UniformOnLattice { m: 6 }
        );
        assert!(classify_iid_torus(1, &[vec![ExactReal::irrational(0.3)]]).unwrap().is_haar());
        let diag = vec![ExactReal::from_ratio(1, 2), ExactReal::from_ratio(1, 2)];
        match classify_iid_torus(2, &[diag]).unwrap().kind {
            VerdictKind::UniformOnTorusSubgroup { m, points } => {
                assert_eq!(m, 2);
                assert_eq!(points, vec![vec![0, 0], vec![1, 1]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verdict_json() {
        let circle = CompactGroup::circle();
        let v = Verdict::new(VerdictKind::UniformOnLattice { m: 2 }, "test");
        let doc = v.to_json(&circle, &Partition::centered_torus(1, 4).unwrap(), None).unwrap();
        assert_eq!(
            doc.to_string(),
            r#"{"kind":"UniformOnLattice","m":2,"limit_measure":[0.5,0.0,0.5,0.0],"provenance":"test"}"#
        );
    }
}
