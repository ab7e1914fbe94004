//! End-to-end K-instability certification.
//!
//! A certificate packages the flopped-slope data at the fixed centre curve
//! (`E1` for degree at most 5, the toric example centres for degrees 6 and
//! 7), the precondition checks, and the exact sign quantity `D`. A negative
//! `D` with all checks passing certifies K-instability; the method is
//! one-sided, so everything else is reported as inconclusive.

use crate::df::DFContext;
use crate::lattice::{curve_by_label, MinusOneCurve};
use crate::polarization::{
    realize, PolarizationError, PolarizationKind, TypedPolarization, TypedPolarizationJson,
};
use crate::rat::{approx_decimal, format_rat, parse_rat, rat, ratio, Rat};
use crate::roots::{eval as upoly_eval, sturm_count, sturm_sequence, UniPoly};
use crate::thresholds::{Contraction, ThresholdError};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("invalid polarization: {0}")]
    Polarization(#[from] PolarizationError),
    #[error("{0}")]
    Threshold(#[from] ThresholdError),
    #[error("{0}")]
    Df(#[from] crate::df::DfError),
    #[error("operation needs an F1 or P1xP1 polarization of degree <= 5")]
    WrongKind,
    #[error("certificate payload is malformed: {0}")]
    BadCertificate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Unstable,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub ample: bool,
    pub lci_lt_mu: bool,
    pub zbar_smooth: bool,
}

/// The full instability witness.
#[derive(Debug, Clone)]
pub struct InstabilityCertificate {
    pub polarization: TypedPolarization,
    pub z_label: String,
    pub mu: Rat,
    /// contracted curves with their `L.C_i`
    pub curves: Vec<(String, Rat)>,
    pub checks: Checks,
    pub d_value: Rat,
    pub verdict: Verdict,
}

/// The toric example centres for degrees 6 and 7: `(Z, [C_1, C_2])`.
fn toric_centre(degree: i64, kind: PolarizationKind) -> (&'static str, [&'static str; 2]) {
    match (degree, kind) {
        (7, _) => ("L12", ["E1", "E2"]),
        (6, PolarizationKind::P2) => ("L12", ["E1", "E2"]),
        (6, PolarizationKind::F1) => ("L13", ["E1", "E3"]),
        (6, PolarizationKind::P1xP1) => ("E1", ["L13", "L12"]),
        _ => unreachable!("only degrees 6 and 7 are toric"),
    }
}

/// Runs the flopped slope test at the canonical centre and returns the
/// certificate. `Unstable` requires every check to pass and `D < 0`.
pub fn certify(p: &TypedPolarization) -> Result<InstabilityCertificate, CertifyError> {
    p.validate()?;
    // work with the Fujita-normalized divisor
    let normalized = TypedPolarization {
        scale: Rat::one(),
        ..p.clone()
    };
    let l = realize(&normalized)?;
    let ample = crate::lattice::is_ample(&l);

    let (z, curve_list, mu, sigma_down): (MinusOneCurve, Vec<MinusOneCurve>, Rat, Rat);
    if p.degree >= 6 {
        let (zl, cls) = toric_centre(p.degree, p.kind);
        let model = normalized.model();
        let zc = curve_by_label(model, zl).expect("toric centre exists");
        let curves: Vec<MinusOneCurve> = cls
            .iter()
            .map(|c| curve_by_label(model, c).expect("toric curve exists"))
            .collect();
        let contraction = Contraction::try_new(model, curves.clone())?;
        let lbar = contraction.pushforward(&l);
        let zbar = contraction.pushforward(&zc.cls);
        let sigma = contraction.seshadri(&lbar, &zbar)?;
        z = zc;
        curve_list = curves;
        mu = sigma.clone();
        sigma_down = sigma;
    } else {
        let model = normalized.model();
        let e1 = curve_by_label(model, "E1").expect("E1 exists");
        let fs = crate::thresholds::flop_setup(&l, &e1)?;
        z = fs.z.clone();
        curve_list = fs.curves.iter().map(|(c, _)| c.clone()).collect();
        mu = fs.mu.clone();
        sigma_down = fs.sigma_down.clone();
    }

    let lcs: Vec<Rat> = curve_list.iter().map(|c| l.dot(&c.cls)).collect();
    let lci_lt_mu = lcs.iter().all(|lc| lc < &mu);
    let zbar_smooth = curve_list.iter().all(|c| z.cls.dot(&c.cls) == rat(1));
    debug_assert_eq!(mu, sigma_down);

    let ctx = DFContext::new(&l, &z.cls, lcs.clone())?;
    let d_value = ctx.d_quantity(&mu);
    let checks = Checks {
        ample,
        lci_lt_mu,
        zbar_smooth,
    };
    let verdict = if ample && lci_lt_mu && zbar_smooth && d_value.is_negative() {
        Verdict::Unstable
    } else {
        Verdict::Inconclusive
    };
    Ok(InstabilityCertificate {
        polarization: p.clone(),
        z_label: z.label.clone(),
        mu,
        curves: curve_list
            .iter()
            .zip(&lcs)
            .map(|(c, lc)| (c.label.clone(), lc.clone()))
            .collect(),
        checks,
        d_value,
        verdict,
    })
}

/// Outcome of the quadratic-in-`b` instability test.
#[derive(Debug, Clone)]
pub struct NiceInequality {
    /// true iff `a1^2 + 6 - K^2 < a2^2 + ... + a_{r-1}^2`
    pub applies: bool,
    /// the leading coefficient `A = 3 a1^2 + 3r - 9 - 3 sum_{i>=2} a_i^2`
    pub a_coeff: Rat,
    /// a rational bound beyond which `D(b) < 0`, when `A < 0`
    pub b_threshold: Option<Rat>,
}

/// Which low-degree quadric family case the coordinates fall in (the case
/// conditions involve only the `a`-coordinates, never `b`).
pub fn quadric_case(p: &TypedPolarization) -> Option<&'static str> {
    if p.kind != PolarizationKind::P1xP1 {
        return None;
    }
    let a = &p.a;
    match p.degree {
        5 => None,
        4 => {
            if &a[2] + &a[3] >= rat(1) + &a[1] {
                Some("a")
            } else {
                Some("b")
            }
        }
        3 => {
            if &a[2] + &a[3] + &a[4] >= rat(2) + &a[1] {
                Some("b")
            } else {
                Some("a")
            }
        }
        1 | 2 => {
            let one = rat(1);
            if &one + &a[1] + &a[2] >= &a[3] + &a[4] + &a[5] {
                Some("a")
            } else if &a[2] + &a[4] + &a[5] <= &one + &a[1] + &a[3] {
                Some("b")
            } else if &a[2] + &a[3] + &a[5] <= &one + &a[1] + &a[4]
                && &a[1] + &a[4] + &a[5] <= &one + &a[2] + &a[3]
            {
                Some("c")
            } else if &a[1] + &a[4] + &a[5] > &one + &a[2] + &a[3] {
                Some("f")
            } else if &one + &a[1] + &a[5] >= &a[2] + &a[3] + &a[4] {
                Some("d")
            } else {
                Some("e")
            }
        }
        _ => None,
    }
}

/// The family-polynomial case tag for any supported polarization.
pub fn family_case(p: &TypedPolarization) -> Option<&'static str> {
    match (p.degree, p.kind) {
        (4, PolarizationKind::P1xP1)
        | (3, PolarizationKind::P1xP1)
        | (1 | 2, PolarizationKind::P1xP1) => quadric_case(p),
        _ => None,
    }
}

/// Decides the quadratic-growth instability criterion and, when it
/// applies, isolates a rational `b` beyond which the pair is unstable.
pub fn theorem_nice_inequality(p: &TypedPolarization) -> Result<NiceInequality, CertifyError> {
    p.validate()?;
    if p.kind == PolarizationKind::P2 || p.degree > 5 {
        return Err(CertifyError::WrongKind);
    }
    let r = p.r() as i64;
    let tail: Rat = p.a[1..].iter().map(|x| x * x).fold(Rat::zero(), |s, t| s + t);
    let a1sq = &p.a[0] * &p.a[0];
    let applies = &a1sq + rat(r - 3) < tail;
    let a_coeff = rat(3) * &a1sq + rat(3 * r - 9) - rat(3) * &tail;
    if !applies {
        return Ok(NiceInequality {
            applies,
            a_coeff,
            b_threshold: None,
        });
    }
    // D(b) = A b^2 + B b + C at the fixed a-coordinates; A < 0, so D < 0
    // beyond the largest real root.
    let fam = crate::df::family_polynomial(p.degree, p.kind, family_case(p))?;
    let point_a = &p.a;
    let mut by_b: Vec<Rat> = vec![Rat::zero(); 3];
    // evaluate the b-coefficients at the a-point; pick the branch by guard
    let branch = fam
        .branches
        .iter()
        .find(|br| match &br.guard {
            None => true,
            Some(g) => {
                let mut pt: Vec<Rat> = point_a.to_vec();
                pt.push(Rat::zero());
                !g.eval(&pt).is_negative()
            }
        })
        .or(fam.branches.last())
        .expect("family branch");
    for (exp, coeff_poly) in branch.poly.coefficients_by(&["b"]).unwrap() {
        let mut pt: Vec<Rat> = point_a.to_vec();
        pt.push(Rat::zero());
        let v = coeff_poly.eval(&pt);
        by_b[exp[0] as usize] = v;
    }
    debug_assert!(by_b[2].is_negative());
    let quad: UniPoly = by_b.clone();
    let b0 = isolate_upper_root_bound(&quad);
    Ok(NiceInequality {
        applies,
        a_coeff,
        b_threshold: Some(b0),
    })
}

/// Smallest convenient rational beyond every real root of `q` (which has
/// negative leading coefficient), found by Sturm-guided bisection.
fn isolate_upper_root_bound(q: &UniPoly) -> Rat {
    let seq = sturm_sequence(&crate::roots::square_free(q));
    let bound = crate::roots::root_bound(q).max(Rat::zero()) + rat(1);
    if upoly_eval(q, &Rat::zero()).is_negative() && sturm_count(&seq, &Rat::zero(), &bound) == 0 {
        return Rat::zero();
    }
    let mut lo = Rat::zero();
    let mut hi = bound.clone();
    let eps = ratio(1, 1024);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / rat(2);
        if upoly_eval(q, &mid).is_negative() && sturm_count(&seq, &mid, &bound) == 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The sufficient-threshold tables (exact rationals parsed from the
/// printed decimals): rows indexed by degree 1..=5.
fn main_region_tables(kind: PolarizationKind) -> [&'static str; 5] {
    match kind {
        // a2 - a1 thresholds
        PolarizationKind::P2 => ["0.8717", "0.8469", "0.8099", "0.7488", "0.6248"],
        PolarizationKind::F1 => ["0.9347", "0.9206", "0.8985", "0.8595", "0.7701"],
        PolarizationKind::P1xP1 => ["0.9305", "0.9150", "0.8911", "0.8480", "0.7452"],
    }
}

/// The second table for the plane type (`a3 - a1` thresholds).
fn p2_a3_table() -> [&'static str; 5] {
    ["0.9347", "0.9206", "0.8985", "0.8595", "0.6798"]
}

/// True iff the coordinates meet the instability threshold table for this
/// degree and type (the sufficient region; `false` makes no claim).
pub fn theorem_main_region(p: &TypedPolarization) -> Result<bool, CertifyError> {
    p.validate()?;
    if p.degree > 5 {
        return Err(CertifyError::WrongKind);
    }
    let idx = (p.degree - 1) as usize;
    let gap21 = &p.a[1] - &p.a[0];
    let t = parse_rat(main_region_tables(p.kind)[idx]).expect("table literal");
    if gap21 >= t {
        return Ok(true);
    }
    if p.kind == PolarizationKind::P2 {
        let gap31 = &p.a[2] - &p.a[0];
        let t = parse_rat(p2_a3_table()[idx]).expect("table literal");
        if gap31 >= t {
            return Ok(true);
        }
    }
    Ok(false)
}

/// JSON wire form of a certificate, with a version header and an input
/// echo so it can be revalidated standalone.
#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub version: String,
    pub input: TypedPolarizationJson,
    pub z: String,
    pub mu: String,
    pub mu_approx: String,
    pub curves: Vec<CurveJson>,
    pub checks: Checks,
    pub d_value: String,
    pub d_value_approx: String,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CurveJson {
    pub label: String,
    pub l_dot_c: String,
}

impl CertificateJson {
    pub fn from_certificate(cert: &InstabilityCertificate, digits: usize) -> Self {
        CertificateJson {
            version: env!("CARGO_PKG_VERSION").to_string(),
            input: TypedPolarizationJson::from_polarization(&cert.polarization),
            z: cert.z_label.clone(),
            mu: format_rat(&cert.mu),
            mu_approx: approx_decimal(&cert.mu, digits),
            curves: cert
                .curves
                .iter()
                .map(|(label, lc)| CurveJson {
                    label: label.clone(),
                    l_dot_c: format_rat(lc),
                })
                .collect(),
            checks: cert.checks,
            d_value: format_rat(&cert.d_value),
            d_value_approx: approx_decimal(&cert.d_value, digits),
            verdict: cert.verdict,
        }
    }

    /// Re-runs the certification from the embedded input and checks every
    /// recorded field, returning the freshly computed certificate.
    pub fn revalidate(&self) -> Result<InstabilityCertificate, CertifyError> {
        let p = self.input.into_polarization()?;
        let fresh = certify(&p)?;
        let mu = parse_rat(&self.mu)
            .map_err(|e| CertifyError::BadCertificate(e.to_string()))?;
        let d = parse_rat(&self.d_value)
            .map_err(|e| CertifyError::BadCertificate(e.to_string()))?;
        if fresh.mu != mu {
            return Err(CertifyError::BadCertificate("mu mismatch".into()));
        }
        if fresh.d_value != d {
            return Err(CertifyError::BadCertificate("d_value mismatch".into()));
        }
        if fresh.z_label != self.z {
            return Err(CertifyError::BadCertificate("centre mismatch".into()));
        }
        if fresh.verdict != self.verdict {
            return Err(CertifyError::BadCertificate("verdict mismatch".into()));
        }
        let mut got: Vec<(String, Rat)> = self
            .curves
            .iter()
            .map(|c| {
                parse_rat(&c.l_dot_c)
                    .map(|v| (c.label.clone(), v))
                    .map_err(|e| CertifyError::BadCertificate(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        got.sort();
        let mut want = fresh.curves.clone();
        want.sort();
        if got != want {
            return Err(CertifyError::BadCertificate("curve data mismatch".into()));
        }
        Ok(fresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn typed(
        degree: i64,
        kind: PolarizationKind,
        a: &[(i64, i64)],
        b: (i64, i64),
    ) -> TypedPolarization {
        TypedPolarization::new(
            degree,
            kind,
            a.iter().map(|&(n, d)| ratio(n, d)).collect(),
            ratio(b.0, b.1),
            Rat::one(),
        )
        .unwrap()
    }

    #[test]
    fn degree7_is_always_unstable() {
        for p in [
            typed(7, PolarizationKind::F1, &[(1, 2)], (1, 1)),
            typed(7, PolarizationKind::P2, &[(1, 5), (2, 5)], (0, 1)),
            typed(7, PolarizationKind::P1xP1, &[(0, 1)], (1, 1)),
            typed(7, PolarizationKind::P2, &[(0, 1), (0, 1)], (0, 1)),
        ] {
            let cert = certify(&p).unwrap();
            assert_eq!(cert.verdict, Verdict::Unstable, "{p:?}");
            assert!(cert.d_value.is_negative());
        }
    }

    #[test]
    fn degree6_polystable_locus_is_inconclusive() {
        let p = typed(6, PolarizationKind::P2, &[(1, 3), (1, 3), (1, 3)], (0, 1));
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(cert.d_value.is_zero());

        let p = typed(6, PolarizationKind::P1xP1, &[(1, 4), (1, 4)], (1, 2));
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);

        // off the locus: unstable
        let p = typed(6, PolarizationKind::P2, &[(0, 1), (0, 1), (1, 2)], (0, 1));
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Unstable);

        // F1 type is always unstable in degree 6
        let p = typed(6, PolarizationKind::F1, &[(1, 4), (1, 3)], (2, 3));
        assert_eq!(certify(&p).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn main_region_table_rows() {
        let p = typed(5, PolarizationKind::P2, &[(0, 1), (6248, 10000), (7, 10), (7, 10)], (0, 1));
        assert!(theorem_main_region(&p).unwrap());
        let p = typed(5, PolarizationKind::P2, &[(0, 1), (62, 100), (63, 100), (63, 100)], (0, 1));
        assert!(!theorem_main_region(&p).unwrap());
        let p = typed(
            1,
            PolarizationKind::F1,
            &[(1, 100), (9447, 10000), (95, 100), (95, 100), (95, 100), (95, 100), (96, 100)],
            (1, 2),
        );
        assert!(theorem_main_region(&p).unwrap());
    }

    #[test]
    fn main_region_certifies_unstable() {
        let p = typed(5, PolarizationKind::P2, &[(0, 1), (6248, 10000), (7, 10), (7, 10)], (0, 1));
        assert!(theorem_main_region(&p).unwrap());
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Unstable);
    }

    #[test]
    fn nice_inequality_spec_example() {
        // degree 5, a = (0, 9/10, 9/10): applies, A = 3(1 - 162/100) < 0
        let p = typed(5, PolarizationKind::P1xP1, &[(0, 1), (9, 10), (9, 10)], (1, 1));
        let n = theorem_nice_inequality(&p).unwrap();
        assert!(n.applies);
        assert_eq!(n.a_coeff, rat(3) * (rat(1) - ratio(162, 100)));
        let b0 = n.b_threshold.unwrap();
        // past the threshold the pair certifies unstable
        let beyond = TypedPolarization::new(
            5,
            PolarizationKind::P1xP1,
            p.a.clone(),
            &b0 + rat(1),
            Rat::one(),
        )
        .unwrap();
        assert_eq!(certify(&beyond).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn nice_inequality_rejects_small_coefficients() {
        let p = typed(5, PolarizationKind::P1xP1, &[(0, 1), (0, 1), (0, 1)], (1, 1));
        let n = theorem_nice_inequality(&p).unwrap();
        assert!(!n.applies);
        assert!(n.b_threshold.is_none());
    }

    #[test]
    fn certificate_json_revalidates() {
        let p = typed(7, PolarizationKind::F1, &[(1, 2)], (1, 1));
        let cert = certify(&p).unwrap();
        let json = CertificateJson::from_certificate(&cert, 12);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
        let again = parsed.revalidate().unwrap();
        assert_eq!(again.verdict, cert.verdict);
    }

    #[test]
    fn degree5_flop_certificate_matches_family_sign() {
        let p = typed(5, PolarizationKind::P1xP1, &[(1, 8), (1, 4), (1, 2)], (1, 3));
        let cert = certify(&p).unwrap();
        let fam = crate::df::family_polynomial(5, PolarizationKind::P1xP1, None).unwrap();
        let point = vec![ratio(1, 8), ratio(1, 4), ratio(1, 2), ratio(1, 3)];
        assert_eq!(fam.eval(&point), cert.d_value);
    }
}
