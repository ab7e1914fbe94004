//! Seshadri constants, pseudo-effective thresholds, Zariski decompositions,
//! and the contraction data consumed by the flopped slope test.
//!
//! On a del Pezzo surface of degree at most 7 the effective cone is spanned
//! by the (-1)-curves, so both thresholds reduce to finite exact
//! computations: the Seshadri constant is a minimum of intersection ratios
//! and the pseudo-effective threshold is a small rational linear program.
//! A contraction of disjoint (-1)-curves is modelled inside the ambient
//! lattice as the orthogonal complement, which avoids any change of basis.

use crate::lattice::{
    canonical_class, enumerate_minus_one_curves, DivisorClass, MinusOneCurve, SurfaceModel,
};
use crate::polarization::{classify, PolarizationKind};
use crate::rat::{format_rat, rat, Rat};
use crate::simplex::{LpError, StandardLp};
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("divisor is not ample")]
    NotAmple,
    #[error("no Mori generator meets the curve; Seshadri constant undefined")]
    NothingMeetsCurve,
    #[error("divisor `L - mu Z` is not pseudo-effective (mu > tau)")]
    NotPseudoEffective,
    #[error("Zariski negative part is not a disjoint union of (-1)-curves")]
    NegativePartNotDisjoint,
    #[error("Zariski support system is singular")]
    SingularGram,
    #[error("negative-part coefficient of {0} is negative")]
    NegativeCoefficient(String),
    #[error("the centre curve would be contracted")]
    CentreContracted,
    #[error("flop hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("lp failure: {0}")]
    Lp(#[from] LpError),
    #[error("classification failed: {0}")]
    Classify(String),
}

/// Mori cone generators of the ambient model, as divisor classes.
fn mori_generators(model: SurfaceModel) -> Vec<DivisorClass> {
    match model {
        SurfaceModel::BlowUp { r: 0 } => vec![crate::lattice::line_class(model)],
        SurfaceModel::BlowUp { r: 1 } => {
            let e1 = crate::lattice::exceptional(model, 1);
            let f = crate::lattice::line_class(model).sub(&e1);
            vec![e1, f]
        }
        SurfaceModel::BlowUp { .. } => enumerate_minus_one_curves(model)
            .expect("catalogue")
            .into_iter()
            .map(|c| c.cls)
            .collect(),
        SurfaceModel::Hirzebruch => vec![
            DivisorClass::from_ints(model, &[1, 0]),
            DivisorClass::from_ints(model, &[0, 1]),
        ],
        SurfaceModel::Quadric => vec![
            DivisorClass::from_ints(model, &[1, 0]),
            DivisorClass::from_ints(model, &[0, 1]),
        ],
    }
}

/// `sigma(S, L, Z)`: the largest `mu` with `L - mu Z` nef, as a minimum of
/// `L.G / Z.G` over Mori generators `G` meeting `Z`.
pub fn seshadri(l: &DivisorClass, z: &DivisorClass) -> Result<Rat, ThresholdError> {
    if !crate::lattice::is_ample(l) {
        return Err(ThresholdError::NotAmple);
    }
    let mut best: Option<Rat> = None;
    for g in mori_generators(l.model()) {
        let zg = z.dot(&g);
        if zg.is_positive() {
            let v = l.dot(&g) / zg;
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
    }
    best.ok_or(ThresholdError::NothingMeetsCurve)
}

/// `tau(S, L, Z)`: the largest `mu` with `L - mu Z` effective.
pub fn pseudoeffective_threshold(
    l: &DivisorClass,
    z: &DivisorClass,
) -> Result<Rat, ThresholdError> {
    if !crate::lattice::is_ample(l) {
        return Err(ThresholdError::NotAmple);
    }
    let model = l.model();
    match model {
        SurfaceModel::BlowUp { r } if r >= 2 => {}
        _ => {
            // minimal models: effective cone = span of the Mori generators,
            // and the coordinates of L - mu Z along them are linear in mu
            return tau_minimal(l, z);
        }
    }
    let curves = enumerate_minus_one_curves(model).expect("catalogue");
    let n = curves.len();
    let rank = model.rank();
    // rows: sum x_C C + mu Z = L, variables (x_C, mu) >= 0, maximize mu
    let mut a = vec![vec![Rat::zero(); n + 1]; rank];
    for (j, c) in curves.iter().enumerate() {
        for (i, coeff) in c.cls.coeffs().iter().enumerate() {
            a[i][j] = coeff.clone();
        }
    }
    for (i, coeff) in z.coeffs().iter().enumerate() {
        a[i][n] = coeff.clone();
    }
    let b: Vec<Rat> = l.coeffs().to_vec();
    let mut objective = vec![Rat::zero(); n + 1];
    objective[n] = -Rat::one();
    let lp = StandardLp { a, b, objective };
    Ok(-lp.solve()?.objective_value)
}

fn tau_minimal(l: &DivisorClass, z: &DivisorClass) -> Result<Rat, ThresholdError> {
    let model = l.model();
    // intersection functionals reading off the effective coordinates of a
    // class along the generator basis
    let functionals: Vec<DivisorClass> = match model {
        SurfaceModel::BlowUp { r: 0 } => vec![crate::lattice::line_class(model)],
        SurfaceModel::BlowUp { r: 1 } => {
            let e1 = crate::lattice::exceptional(model, 1);
            let f = crate::lattice::line_class(model).sub(&e1);
            // coefficient along E1 is D.f, along f is D.l
            vec![f, crate::lattice::line_class(model)]
        }
        SurfaceModel::Hirzebruch => {
            let e = DivisorClass::from_ints(model, &[1, 0]);
            let f = DivisorClass::from_ints(model, &[0, 1]);
            // D = alpha e + beta f: alpha = D.f, beta = D.(e + f)
            vec![f.clone(), e.add(&f)]
        }
        SurfaceModel::Quadric => vec![
            DivisorClass::from_ints(model, &[0, 1]),
            DivisorClass::from_ints(model, &[1, 0]),
        ],
        _ => unreachable!(),
    };
    let mut best: Option<Rat> = None;
    for g in functionals {
        let zg = z.dot(&g);
        if zg.is_positive() {
            let v = l.dot(&g) / zg;
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
    }
    best.ok_or(ThresholdError::NothingMeetsCurve)
}

/// The surface obtained by contracting pairwise disjoint (-1)-curves,
/// represented inside the ambient lattice as their orthogonal complement.
#[derive(Debug, Clone)]
pub struct Contraction {
    model: SurfaceModel,
    pub contracted: Vec<MinusOneCurve>,
    pub degree: i64,
    pub kind: ContractedKind,
    /// ambient catalogue curves orthogonal to everything contracted;
    /// exactly the (-1)-curves of the contracted surface
    pub surviving: Vec<MinusOneCurve>,
    /// pullbacks of the ruling fiber classes (degree-8 targets)
    pub fibers: Vec<DivisorClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractedKind {
    /// degree <= 7: still a del Pezzo with (-1)-curves
    DelPezzo,
    /// degree 8 with a (-1)-curve: the Hirzebruch surface
    Hirzebruch,
    /// degree 8 without: the quadric
    Quadric,
    /// degree 9: the plane
    Plane,
}

impl std::fmt::Display for ContractedKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContractedKind::DelPezzo => write!(f, "del Pezzo"),
            ContractedKind::Hirzebruch => write!(f, "F1"),
            ContractedKind::Quadric => write!(f, "P1xP1"),
            ContractedKind::Plane => write!(f, "P2"),
        }
    }
}

impl Contraction {
    pub fn try_new(
        model: SurfaceModel,
        contracted: Vec<MinusOneCurve>,
    ) -> Result<Self, ThresholdError> {
        for i in 0..contracted.len() {
            for j in i + 1..contracted.len() {
                if !contracted[i].cls.dot(&contracted[j].cls).is_zero() {
                    return Err(ThresholdError::NegativePartNotDisjoint);
                }
            }
        }
        let catalogue = enumerate_minus_one_curves(model).expect("catalogue");
        let orthogonal = |d: &DivisorClass| contracted.iter().all(|c| c.cls.dot(d).is_zero());
        let surviving: Vec<MinusOneCurve> = catalogue
            .iter()
            .filter(|c| orthogonal(&c.cls) && !contracted.iter().any(|s| s.cls == c.cls))
            .cloned()
            .collect();
        let degree = model.degree() + contracted.len() as i64;
        // fiber classes: sums C + C' of catalogue curves meeting once whose
        // class survives the contraction
        let mut fibers: Vec<DivisorClass> = Vec::new();
        if degree >= 8 {
            for i in 0..catalogue.len() {
                for j in i + 1..catalogue.len() {
                    if catalogue[i].cls.dot(&catalogue[j].cls) == rat(1) {
                        let v = catalogue[i].cls.add(&catalogue[j].cls);
                        if orthogonal(&v) && !fibers.contains(&v) {
                            fibers.push(v);
                        }
                    }
                }
            }
        }
        let kind = match degree {
            d if d <= 7 => ContractedKind::DelPezzo,
            8 => {
                if surviving.is_empty() {
                    debug_assert_eq!(fibers.len(), 2);
                    ContractedKind::Quadric
                } else {
                    debug_assert_eq!(surviving.len(), 1);
                    debug_assert_eq!(fibers.len(), 1);
                    ContractedKind::Hirzebruch
                }
            }
            9 => ContractedKind::Plane,
            _ => unreachable!("degree bounded by 9"),
        };
        Ok(Contraction {
            model,
            contracted,
            degree,
            kind,
            surviving,
            fibers,
        })
    }

    /// The ambient representative of the pushforward: the orthogonal
    /// projection `D + sum (D.C_i) C_i`, which has the same intersection
    /// numbers downstairs.
    pub fn pushforward(&self, d: &DivisorClass) -> DivisorClass {
        let mut out = d.clone();
        for c in &self.contracted {
            out = out.add(&c.cls.scale(&d.dot(&c.cls)));
        }
        out
    }

    /// Anticanonical class of the contracted surface (ambient rep).
    pub fn anticanonical(&self) -> DivisorClass {
        let mut k = canonical_class(self.model);
        for c in &self.contracted {
            k = k.add(&c.cls);
        }
        k.neg()
    }

    /// Mori generators of the contracted surface (ambient reps). On the
    /// plane the single generator is the line `-K/3`.
    pub fn mori_generators(&self) -> Vec<DivisorClass> {
        match self.kind {
            ContractedKind::DelPezzo => self.surviving.iter().map(|c| c.cls.clone()).collect(),
            ContractedKind::Hirzebruch => {
                let mut v = vec![self.surviving[0].cls.clone()];
                v.extend(self.fibers.iter().cloned());
                v
            }
            ContractedKind::Quadric => self.fibers.clone(),
            ContractedKind::Plane => vec![self.anticanonical().scale(&(Rat::one() / rat(3)))],
        }
    }

    /// Nef test downstairs for a class orthogonal to the contracted curves.
    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        self.mori_generators()
            .iter()
            .all(|g| !d.dot(g).is_negative())
    }

    /// Seshadri constant downstairs.
    pub fn seshadri(
        &self,
        lbar: &DivisorClass,
        zbar: &DivisorClass,
    ) -> Result<Rat, ThresholdError> {
        let mut best: Option<Rat> = None;
        for g in self.mori_generators() {
            let zg = zbar.dot(&g);
            if zg.is_positive() {
                let v = lbar.dot(&g) / zg;
                best = Some(match best {
                    None => v,
                    Some(b) => b.min(v),
                });
            }
        }
        best.ok_or(ThresholdError::NothingMeetsCurve)
    }
}

/// The Zariski decomposition `L - mu Z = P + sum c_i C_i` with `P` nef and
/// the `C_i` (-1)-curves supporting the negative part.
#[derive(Debug, Clone)]
pub struct ZariskiDecomposition {
    pub mu: Rat,
    pub negative_part: Vec<(MinusOneCurve, Rat)>,
    /// the nef part `P` in ambient coordinates (equals the pullback of the
    /// nef pushforward when the support is disjoint)
    pub nef_part: DivisorClass,
    /// contraction data when the support is pairwise disjoint
    pub contraction: Option<Contraction>,
}

fn solve_gram(support: &[MinusOneCurve], d: &DivisorClass) -> Result<Vec<Rat>, ThresholdError> {
    let n = support.len();
    if n == 0 {
        return Ok(vec![]);
    }
    // Solve (sum c_i C_i).C_j = D.C_j exactly by Gaussian elimination.
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = (0..n)
                .map(|i| support[i].cls.dot(&support[j].cls))
                .collect();
            row.push(d.dot(&support[j].cls));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(ThresholdError::SingularGram)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

/// Computes the Zariski decomposition of `L - mu Z` by iteratively
/// enlarging the support with curves the candidate nef part still meets
/// negatively, re-solving the exact linear system each round.
pub fn zariski(
    l: &DivisorClass,
    mu: &Rat,
    z: &DivisorClass,
) -> Result<ZariskiDecomposition, ThresholdError> {
    let tau = pseudoeffective_threshold(l, z)?;
    if *mu > tau {
        return Err(ThresholdError::NotPseudoEffective);
    }
    let model = l.model();
    let d = l.sub(&z.scale(mu));
    let catalogue = enumerate_minus_one_curves(model).expect("catalogue");
    let mut support: Vec<MinusOneCurve> = Vec::new();
    loop {
        let coeffs = solve_gram(&support, &d)?;
        let mut p = d.clone();
        for (c, a) in support.iter().zip(&coeffs) {
            p = p.sub(&c.cls.scale(a));
        }
        let next = catalogue
            .iter()
            .find(|c| p.dot(&c.cls).is_negative() && !support.iter().any(|s| s.cls == c.cls));
        match next {
            Some(c) => support.push(c.clone()),
            None => {
                let mut negative_part = Vec::new();
                for (c, a) in support.iter().zip(&coeffs) {
                    if a.is_negative() {
                        return Err(ThresholdError::NegativeCoefficient(c.label.clone()));
                    }
                    if a.is_positive() {
                        negative_part.push((c.clone(), a.clone()));
                    }
                }
                let contraction = Contraction::try_new(
                    model,
                    negative_part.iter().map(|(c, _)| c.clone()).collect(),
                )
                .ok();
                return Ok(ZariskiDecomposition {
                    mu: mu.clone(),
                    negative_part,
                    nef_part: p,
                    contraction,
                });
            }
        }
    }
}

/// All the data the flopped slope test needs at a centre curve `Z`.
#[derive(Debug, Clone)]
pub struct FlopSetup {
    pub z: MinusOneCurve,
    pub mu: Rat,
    /// contracted curves with their `L . C_i`
    pub curves: Vec<(MinusOneCurve, Rat)>,
    pub sigma_up: Rat,
    pub sigma_down: Rat,
    pub zbar_smooth: bool,
    pub contraction: Contraction,
}

/// Builds the self-consistent `(mu, curves)` for the flopped slope test:
/// `mu = tau(S, L, Z)` except on quadric-type polarizations of degree at
/// most 2, where `mu = min{(1 + 2b + 2a1 + a2 + ... + a6)/2,
/// 1 + b + a1 + a2 + a6}` (requiring `a3 >= 2/3`). The returned data
/// always satisfies `L.C_i < mu = sigma(contracted)`.
pub fn flop_setup(l: &DivisorClass, z: &MinusOneCurve) -> Result<FlopSetup, ThresholdError> {
    let classification = classify(l).map_err(|e| ThresholdError::Classify(e.to_string()))?;
    let p = &classification.polarization;
    let exceptional_branch = p.kind == PolarizationKind::P1xP1 && p.degree <= 2;
    let mu = if exceptional_branch {
        let two_thirds = Rat::new(2.into(), 3.into());
        if p.a[2] < two_thirds {
            return Err(ThresholdError::Hypothesis(format!(
                "quadric-type degree <= 2 requires a3 >= 2/3, got a3 = {}",
                format_rat(&p.a[2])
            )));
        }
        let sum26: Rat = p.a[1..6].iter().fold(Rat::zero(), |acc, x| acc + x);
        let half = (rat(1) + rat(2) * &p.b + rat(2) * &p.a[0] + &sum26) / rat(2);
        let linear = rat(1) + &p.b + &p.a[0] + &p.a[1] + &p.a[5];
        // the coordinates refer to the Fujita-normalized divisor
        half.min(linear) / &p.scale
    } else {
        pseudoeffective_threshold(l, &z.cls)?
    };
    let sigma_up = seshadri(l, &z.cls)?;
    let zd = zariski(l, &mu, &z.cls)?;
    let contraction = zd
        .contraction
        .clone()
        .ok_or(ThresholdError::NegativePartNotDisjoint)?;
    if contraction.contracted.iter().any(|c| c.cls == z.cls) {
        return Err(ThresholdError::CentreContracted);
    }
    let lbar = contraction.pushforward(l);
    let zbar = contraction.pushforward(&z.cls);
    let sigma_down = contraction.seshadri(&lbar, &zbar)?;
    if sigma_down != mu {
        return Err(ThresholdError::Hypothesis(format!(
            "mu = {} does not match sigma on the contracted surface = {}",
            format_rat(&mu),
            format_rat(&sigma_down)
        )));
    }
    let mut curves = Vec::new();
    let mut zbar_smooth = true;
    for (c, _) in &zd.negative_part {
        let lc = l.dot(&c.cls);
        if lc >= mu {
            return Err(ThresholdError::Hypothesis(format!(
                "L.{} = {} is not below mu = {}",
                c.label,
                format_rat(&lc),
                format_rat(&mu)
            )));
        }
        let zc = z.cls.dot(&c.cls);
        if zc != rat(1) {
            zbar_smooth = false;
        }
        curves.push((c.clone(), lc));
    }
    if !zbar_smooth {
        return Err(ThresholdError::Hypothesis(
            "a contracted curve does not meet the centre exactly once".into(),
        ));
    }
    Ok(FlopSetup {
        z: z.clone(),
        mu,
        curves,
        sigma_up,
        sigma_down,
        zbar_smooth,
        contraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{curve_by_label, exceptional, line_class};
    use crate::polarization::{realize, TypedPolarization};
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
    fn seshadri_on_hirzebruch_example() {
        // L = -K + a e with a = 1/2 has sigma(L, e) = 2 + a = 5/2
        let m = SurfaceModel::Hirzebruch;
        let e = DivisorClass::from_ints(m, &[1, 0]);
        let l = canonical_class(m).neg().add(&e.scale(&ratio(1, 2)));
        assert_eq!(seshadri(&l, &e).unwrap(), ratio(5, 2));
    }

    #[test]
    fn seshadri_on_plane() {
        let m = SurfaceModel::BlowUp { r: 0 };
        let l = line_class(m).scale(&rat(3));
        assert_eq!(seshadri(&l, &line_class(m)).unwrap(), rat(3));
    }

    #[test]
    fn seshadri_spec_degree5_point() {
        let p = typed(
            5,
            PolarizationKind::P2,
            &[(0, 1), (1, 2), (1, 2), (1, 2)],
            (0, 1),
        );
        let l = realize(&p).unwrap();
        let z = exceptional(p.model(), 1);
        assert_eq!(seshadri(&l, &z).unwrap(), ratio(3, 2));
        // tau = 2 + a1 = 2 on the P2-type region
        assert_eq!(pseudoeffective_threshold(&l, &z).unwrap(), rat(2));
    }

    #[test]
    fn tau_equals_sigma_on_quadric() {
        let m = SurfaceModel::Quadric;
        let l = canonical_class(m)
            .neg()
            .add(&DivisorClass::from_ints(m, &[1, 0]).scale(&ratio(1, 3)));
        let z = DivisorClass::from_ints(m, &[0, 1]);
        assert_eq!(
            seshadri(&l, &z).unwrap(),
            pseudoeffective_threshold(&l, &z).unwrap()
        );
    }

    #[test]
    fn zariski_spec_degree5_case() {
        // degree 5, P2-type, a = (0,1/2,1/2,1/2), mu = 2, Z = E1:
        // negative part {L12, L13, L14} with coefficients 1/2 each,
        // contracted model the quadric
        let p = typed(
            5,
            PolarizationKind::P2,
            &[(0, 1), (1, 2), (1, 2), (1, 2)],
            (0, 1),
        );
        let l = realize(&p).unwrap();
        let z = exceptional(p.model(), 1);
        let zd = zariski(&l, &rat(2), &z).unwrap();
        let mut labels: Vec<&str> = zd
            .negative_part
            .iter()
            .map(|(c, _)| c.label.as_str())
            .collect();
        labels.sort_unstable();
        assert_eq!(labels, vec!["L12", "L13", "L14"]);
        for (_, a) in &zd.negative_part {
            assert_eq!(*a, ratio(1, 2));
        }
        let contraction = zd.contraction.unwrap();
        assert_eq!(contraction.kind, ContractedKind::Quadric);
        assert!(contraction.is_nef(&zd.nef_part));
    }

    #[test]
    fn zariski_at_sigma_has_empty_negative_part() {
        let p = typed(
            5,
            PolarizationKind::P2,
            &[(0, 1), (1, 2), (1, 2), (1, 2)],
            (0, 1),
        );
        let l = realize(&p).unwrap();
        let z = exceptional(p.model(), 1);
        let sigma = seshadri(&l, &z).unwrap();
        let zd = zariski(&l, &sigma, &z).unwrap();
        assert!(zd.negative_part.is_empty());
    }

    #[test]
    fn zariski_rejects_beyond_tau() {
        let p = typed(
            5,
            PolarizationKind::P2,
            &[(0, 1), (1, 2), (1, 2), (1, 2)],
            (0, 1),
        );
        let l = realize(&p).unwrap();
        let z = exceptional(p.model(), 1);
        assert_eq!(
            zariski(&l, &rat(3), &z).unwrap_err(),
            ThresholdError::NotPseudoEffective
        );
    }

    #[test]
    fn flop_setup_degree5_quadric_type() {
        // k = 3, curves {L14, L12, L13}, mu = 2 + b + a1 + a2
        let p = typed(
            5,
            PolarizationKind::P1xP1,
            &[(1, 8), (1, 4), (1, 2)],
            (1, 3),
        );
        let l = realize(&p).unwrap();
        let z = curve_by_label(p.model(), "E1").unwrap();
        let fs = flop_setup(&l, &z).unwrap();
        assert_eq!(fs.mu, rat(2) + ratio(1, 3) + ratio(1, 8) + ratio(1, 4));
        let mut labels: Vec<&str> = fs.curves.iter().map(|(c, _)| c.label.as_str()).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec!["L12", "L13", "L14"]);
        assert!(fs.zbar_smooth);
        assert_eq!(fs.contraction.kind, ContractedKind::Quadric);
        assert!(fs.sigma_up <= fs.mu);
    }

    #[test]
    fn flop_setup_degree4_conic_case_b() {
        // a3 + a4 < 1 + a2 forces k = 5 with the conic C12345 and the plane
        let p = typed(
            4,
            PolarizationKind::P1xP1,
            &[(0, 1), (1, 4), (1, 3), (1, 3)],
            (1, 2),
        );
        let l = realize(&p).unwrap();
        let z = curve_by_label(p.model(), "E1").unwrap();
        let fs = flop_setup(&l, &z).unwrap();
        let mut labels: Vec<&str> = fs.curves.iter().map(|(c, _)| c.label.as_str()).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec!["C12345", "L12", "L13", "L14", "L15"]);
        assert_eq!(fs.contraction.kind, ContractedKind::Plane);
        // tau = 3/2 + b + a1 + (a2+a3+a4)/2
        assert_eq!(
            fs.mu,
            ratio(3, 2) + ratio(1, 2) + (ratio(1, 4) + ratio(1, 3) + ratio(1, 3)) / rat(2)
        );
    }

    #[test]
    fn flop_setup_exceptional_branch_low_degree() {
        // degree <= 2 quadric type uses the capped mu, below tau
        let p = typed(
            2,
            PolarizationKind::P1xP1,
            &[(0, 1), (3, 4), (3, 4), (3, 4), (3, 4), (3, 4)],
            (1, 2),
        );
        let l = realize(&p).unwrap();
        let z = curve_by_label(p.model(), "E1").unwrap();
        let fs = flop_setup(&l, &z).unwrap();
        // 1 + a2 + a3 >= a4 + a5 + a6 here, so case (a): k = 2 and
        // mu = (1 + 2b + 2a1 + a2 + .. + a6)/2
        let expect = (rat(1) + rat(1) + rat(0) + ratio(3, 4) * rat(5)) / rat(2);
        assert_eq!(fs.mu, expect);
        assert_eq!(fs.curves.len(), 2);
        let tau = pseudoeffective_threshold(&l, &z.cls).unwrap();
        assert!(fs.mu <= tau);
    }

    #[test]
    fn flop_setup_rejects_low_a3() {
        let p = typed(
            2,
            PolarizationKind::P1xP1,
            &[(0, 1), (0, 1), (1, 2), (3, 4), (3, 4), (3, 4)],
            (1, 2),
        );
        let l = realize(&p).unwrap();
        let z = curve_by_label(p.model(), "E1").unwrap();
        assert!(matches!(
            flop_setup(&l, &z).unwrap_err(),
            ThresholdError::Hypothesis(_)
        ));
    }

    #[test]
    fn sigma_at_most_tau() {
        let p = typed(
            3,
            PolarizationKind::F1,
            &[(1, 5), (2, 5), (1, 2), (3, 4), (4, 5)],
            (2, 3),
        );
        let l = realize(&p).unwrap();
        for label in ["E1", "E2", "L12", "C12345"] {
            let z = curve_by_label(p.model(), label).unwrap();
            let s = seshadri(&l, &z.cls).unwrap();
            let t = pseudoeffective_threshold(&l, &z.cls).unwrap();
            assert!(s <= t, "sigma > tau at {label}");
        }
    }
}
