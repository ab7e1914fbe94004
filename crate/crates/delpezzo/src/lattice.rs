//! Picard lattices of del Pezzo surfaces and their (-1)-curve catalogues.
//!
//! Blow-ups of the plane carry the basis `(l, E1..Er)` with the diagonal
//! intersection form `(+1, -1, ..., -1)`; divisor classes are stored as
//! `D = d0*l - sum(m_i * E_i)`. The minimal surfaces the contractions land
//! on get their own small bases: `(e, f)` on the Hirzebruch surface and
//! `(f1, f2)` on the quadric.

use crate::rat::{rat, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("divisor classes live on different surface models")]
    ModelMismatch,
    #[error("degree {0} is not a del Pezzo degree (need 1..=9)")]
    BadDegree(i64),
    #[error("curve enumeration unsupported for {0:?}")]
    Unsupported(SurfaceModel),
}

/// The ambient surface a divisor class lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceModel {
    /// Blow-up of the plane in `r` general points, `0 <= r <= 8`
    /// (`r = 0` is the plane itself). Degree `9 - r`.
    BlowUp { r: usize },
    /// The Hirzebruch surface F1 in the `(e, f)` basis, degree 8.
    Hirzebruch,
    /// P1 x P1 in the `(f1, f2)` basis, degree 8.
    Quadric,
}

impl SurfaceModel {
    pub fn blow_up_of_degree(degree: i64) -> Result<Self, LatticeError> {
        if !(1..=9).contains(&degree) {
            return Err(LatticeError::BadDegree(degree));
        }
        Ok(SurfaceModel::BlowUp {
            r: (9 - degree) as usize,
        })
    }

    pub fn degree(&self) -> i64 {
        match self {
            SurfaceModel::BlowUp { r } => 9 - *r as i64,
            SurfaceModel::Hirzebruch | SurfaceModel::Quadric => 8,
        }
    }

    /// Number of exceptional basis classes (blow-up models only).
    pub fn r(&self) -> usize {
        match self {
            SurfaceModel::BlowUp { r } => *r,
            _ => 0,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            SurfaceModel::BlowUp { r } => r + 1,
            SurfaceModel::Hirzebruch | SurfaceModel::Quadric => 2,
            // the plane is BlowUp { 0 } with rank 1
        }
    }
}

/// An exact divisor class on a [`SurfaceModel`].
#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    model: SurfaceModel,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass({:?}; {:?})", self.model, self.coeffs.iter().map(crate::rat::format_rat).collect::<Vec<_>>())
    }
}

impl DivisorClass {
    pub fn zero(model: SurfaceModel) -> Self {
        DivisorClass {
            model,
            coeffs: vec![Rat::zero(); model.rank()],
        }
    }

    pub fn new(model: SurfaceModel, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), model.rank(), "coefficient count mismatch");
        DivisorClass { model, coeffs }
    }

    pub fn from_ints(model: SurfaceModel, coeffs: &[i64]) -> Self {
        Self::new(model, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn model(&self) -> SurfaceModel {
        self.model
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.model, other.model);
        DivisorClass {
            model: self.model,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.model, other.model);
        DivisorClass {
            model: self.model,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        DivisorClass {
            model: self.model,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Exact intersection number.
    pub fn dot(&self, other: &Self) -> Rat {
        assert_eq!(self.model, other.model, "intersection across models");
        match self.model {
            SurfaceModel::BlowUp { .. } => {
                // d0*d0' - sum m_i m_i'
                let mut acc = &self.coeffs[0] * &other.coeffs[0];
                for (a, b) in self.coeffs[1..].iter().zip(&other.coeffs[1..]) {
                    acc -= a * b;
                }
                acc
            }
            SurfaceModel::Hirzebruch => {
                // (a e + b f).(a' e + b' f) with e^2=-1, e.f=1, f^2=0
                let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
                let (a2, b2) = (&other.coeffs[0], &other.coeffs[1]);
                -(a * a2) + a * b2 + b * a2
            }
            SurfaceModel::Quadric => {
                let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
                let (a2, b2) = (&other.coeffs[0], &other.coeffs[1]);
                a * b2 + b * a2
            }
        }
    }

    pub fn self_intersection(&self) -> Rat {
        self.dot(self)
    }

    /// Checked intersection for public API use.
    pub fn intersection(&self, other: &Self) -> Result<Rat, LatticeError> {
        if self.model != other.model {
            return Err(LatticeError::ModelMismatch);
        }
        Ok(self.dot(other))
    }
}

/// `K_S` on the given model.
pub fn canonical_class(model: SurfaceModel) -> DivisorClass {
    match model {
        SurfaceModel::BlowUp { r } => {
            // K = -3l + sum E_i, i.e. d0 = -3, every m_i = -1
            let mut coeffs = vec![rat(-3)];
            coeffs.extend(std::iter::repeat(rat(-1)).take(r));
            DivisorClass::new(model, coeffs)
        }
        SurfaceModel::Hirzebruch => DivisorClass::from_ints(model, &[-2, -3]),
        SurfaceModel::Quadric => DivisorClass::from_ints(model, &[-2, -2]),
    }
}

/// The hyperplane class `l` (blow-up models).
pub fn line_class(model: SurfaceModel) -> DivisorClass {
    let mut coeffs = vec![Rat::zero(); model.rank()];
    coeffs[0] = Rat::one();
    DivisorClass::new(model, coeffs)
}

/// The exceptional class `E_i` (1-based).
pub fn exceptional(model: SurfaceModel, i: usize) -> DivisorClass {
    assert!(matches!(model, SurfaceModel::BlowUp { .. }));
    assert!((1..=model.r()).contains(&i));
    let mut coeffs = vec![Rat::zero(); model.rank()];
    coeffs[i] = -Rat::one();
    DivisorClass::new(model, coeffs)
}

/// A named (-1)-curve: the class plus its catalogue label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinusOneCurve {
    pub label: String,
    pub cls: DivisorClass,
}

impl MinusOneCurve {
    fn new(label: String, cls: DivisorClass) -> Self {
        debug_assert_eq!(cls.self_intersection(), rat(-1));
        debug_assert_eq!(cls.dot(&canonical_class(cls.model())), rat(-1));
        MinusOneCurve { label, cls }
    }
}

fn idx_string(idxs: &[usize]) -> String {
    idxs.iter().map(|i| i.to_string()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    // 1-based index subsets in lexicographic order
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k == 0 || k > n {
        return if k == 0 { vec![vec![]] } else { out };
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The complete (-1)-curve catalogue, built from the explicit class
/// families: `E_i`; lines `L_ij`; conics `C_{5 points}`; for `r = 7` the
/// singular cubics `Z_i`; for `r = 8` additionally the cubics `Z_ij`, the
/// quartics, quintics and sextics.
pub fn enumerate_minus_one_curves(model: SurfaceModel) -> Result<Vec<MinusOneCurve>, LatticeError> {
    match model {
        SurfaceModel::Quadric => return Ok(vec![]),
        SurfaceModel::Hirzebruch => {
            return Ok(vec![MinusOneCurve::new(
                "e".to_string(),
                DivisorClass::from_ints(model, &[1, 0]),
            )]);
        }
        SurfaceModel::BlowUp { r: 0 } => return Ok(vec![]),
        SurfaceModel::BlowUp { .. } => {}
    }
    let r = model.r();
    let mut curves = Vec::new();
    let mk = |d0: i64, ms: &[(usize, i64)]| {
        let mut coeffs = vec![rat(0); r + 1];
        coeffs[0] = rat(d0);
        for &(i, m) in ms {
            coeffs[i] = rat(m);
        }
        DivisorClass::new(model, coeffs)
    };
    for i in 1..=r {
        curves.push(MinusOneCurve::new(format!("E{i}"), mk(0, &[(i, -1)])));
    }
    for pair in combinations(r, 2) {
        curves.push(MinusOneCurve::new(
            format!("L{}", idx_string(&pair)),
            mk(1, &[(pair[0], 1), (pair[1], 1)]),
        ));
    }
    if r >= 5 {
        for five in combinations(r, 5) {
            let ms: Vec<(usize, i64)> = five.iter().map(|&i| (i, 1)).collect();
            curves.push(MinusOneCurve::new(
                format!("C{}", idx_string(&five)),
                mk(2, &ms),
            ));
        }
    }
    if r == 7 {
        for i in 1..=r {
            let mut ms: Vec<(usize, i64)> = (1..=r).map(|j| (j, 1)).collect();
            ms[i - 1] = (i, 2);
            curves.push(MinusOneCurve::new(format!("Z{i}"), mk(3, &ms)));
        }
    }
    if r == 8 {
        // cubics Z_ij: 3l - sum E - E_i + E_j, i != j
        for i in 1..=r {
            for j in 1..=r {
                if i == j {
                    continue;
                }
                let mut ms: Vec<(usize, i64)> = (1..=r).map(|k| (k, 1)).collect();
                ms[i - 1] = (i, 2);
                ms[j - 1] = (j, 0);
                curves.push(MinusOneCurve::new(format!("Z{i}{j}"), mk(3, &ms)));
            }
        }
        // quartics: 4l - sum E - E_i - E_j - E_k
        for three in combinations(r, 3) {
            let mut ms: Vec<(usize, i64)> = (1..=r).map(|k| (k, 1)).collect();
            for &i in &three {
                ms[i - 1] = (i, 2);
            }
            curves.push(MinusOneCurve::new(
                format!("Q{}", idx_string(&three)),
                mk(4, &ms),
            ));
        }
        // quintics: 5l - 2 sum E + E_i + E_j
        for pair in combinations(r, 2) {
            let mut ms: Vec<(usize, i64)> = (1..=r).map(|k| (k, 2)).collect();
            for &i in &pair {
                ms[i - 1] = (i, 1);
            }
            curves.push(MinusOneCurve::new(
                format!("V{}", idx_string(&pair)),
                mk(5, &ms),
            ));
        }
        // sextics: 6l - 2 sum E - E_i
        for i in 1..=r {
            let mut ms: Vec<(usize, i64)> = (1..=r).map(|k| (k, 2)).collect();
            ms[i - 1] = (i, 3);
            curves.push(MinusOneCurve::new(format!("W{i}"), mk(6, &ms)));
        }
    }
    // dedupe by class, keeping first labels (families are disjoint anyway)
    let mut seen: Vec<&DivisorClass> = Vec::new();
    let mut out = Vec::new();
    for c in &curves {
        if !seen.iter().any(|s| **s == c.cls) {
            seen.push(&c.cls);
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Looks a curve up by label in the catalogue of `model`.
pub fn curve_by_label(model: SurfaceModel, label: &str) -> Option<MinusOneCurve> {
    enumerate_minus_one_curves(model)
        .ok()?
        .into_iter()
        .find(|c| c.label == label)
}

fn positivity(model: SurfaceModel, d: &DivisorClass, strict: bool) -> bool {
    let ok = |x: &Rat| {
        if strict {
            x.is_positive()
        } else {
            !x.is_negative()
        }
    };
    match model {
        SurfaceModel::BlowUp { r: 0 } => ok(&d.coeffs[0]),
        SurfaceModel::BlowUp { r: 1 } => {
            // F1 in the blow-up basis: Mori cone spanned by E1 and l - E1
            let e1 = exceptional(model, 1);
            let f = line_class(model).sub(&e1);
            ok(&d.dot(&e1)) && ok(&d.dot(&f))
        }
        SurfaceModel::BlowUp { .. } => enumerate_minus_one_curves(model)
            .expect("blow-up models enumerate")
            .iter()
            .all(|c| ok(&d.dot(&c.cls))),
        SurfaceModel::Hirzebruch => {
            // a e + b f nef iff b >= a >= 0 (ample iff strict)
            let (a, b) = (&d.coeffs[0], &d.coeffs[1]);
            ok(a) && ok(&(b - a))
        }
        SurfaceModel::Quadric => ok(&d.coeffs[0]) && ok(&d.coeffs[1]),
    }
}

/// `L.C > 0` against every Mori cone generator.
pub fn is_ample(d: &DivisorClass) -> bool {
    positivity(d.model, d, true)
}

/// `L.C >= 0` against every Mori cone generator.
pub fn is_nef(d: &DivisorClass) -> bool {
    positivity(d.model, d, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn intersection_form_basics() {
        let m = SurfaceModel::BlowUp { r: 2 };
        let l = line_class(m);
        let e1 = exceptional(m, 1);
        let e2 = exceptional(m, 2);
        assert_eq!(l.dot(&l), rat(1));
        assert_eq!(e1.dot(&e2), rat(0));
        assert_eq!(e1.dot(&e1), rat(-1));
        let l12 = l.sub(&e1).sub(&e2);
        assert_eq!(l12.dot(&l12), rat(-1));
    }

    #[test]
    fn model_mismatch_is_an_error() {
        let a = line_class(SurfaceModel::BlowUp { r: 2 });
        let b = line_class(SurfaceModel::BlowUp { r: 3 });
        assert_eq!(a.intersection(&b), Err(LatticeError::ModelMismatch));
    }

    #[test]
    fn canonical_class_squares() {
        for r in 0..=8usize {
            let m = SurfaceModel::BlowUp { r };
            let k = canonical_class(m);
            assert_eq!(k.dot(&k), rat(9 - r as i64));
        }
        assert_eq!(
            canonical_class(SurfaceModel::Hirzebruch).self_intersection(),
            rat(8)
        );
        assert_eq!(
            canonical_class(SurfaceModel::Quadric).self_intersection(),
            rat(8)
        );
    }

    #[test]
    fn catalogue_counts_match_known_values() {
        let expect = [(2usize, 3usize), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)];
        for (r, n) in expect {
            let curves = enumerate_minus_one_curves(SurfaceModel::BlowUp { r }).unwrap();
            assert_eq!(curves.len(), n, "r = {r}");
        }
    }

    #[test]
    fn every_catalogue_entry_is_a_minus_one_class() {
        for r in 2..=8usize {
            let m = SurfaceModel::BlowUp { r };
            let k = canonical_class(m);
            let curves = enumerate_minus_one_curves(m).unwrap();
            for c in &curves {
                assert_eq!(c.cls.self_intersection(), rat(-1), "{}", c.label);
                assert_eq!(c.cls.dot(&k), rat(-1), "{}", c.label);
                assert!(c.cls.is_integral());
            }
            // labels are unique
            let mut labels: Vec<&str> = curves.iter().map(|c| c.label.as_str()).collect();
            labels.sort_unstable();
            labels.dedup();
            assert_eq!(labels.len(), curves.len());
        }
    }

    #[test]
    fn anticanonical_is_ample_everywhere() {
        for r in 0..=8usize {
            let m = SurfaceModel::BlowUp { r };
            assert!(is_ample(&canonical_class(m).neg()), "r = {r}");
        }
        assert!(is_ample(&canonical_class(SurfaceModel::Hirzebruch).neg()));
        assert!(is_ample(&canonical_class(SurfaceModel::Quadric).neg()));
    }

    #[test]
    fn ample_and_nef_spec_examples() {
        let deg5 = SurfaceModel::BlowUp { r: 4 };
        assert!(!is_ample(&exceptional(deg5, 1)));

        let deg6 = SurfaceModel::BlowUp { r: 3 };
        let l = line_class(deg6);
        assert!(!is_ample(&l)); // l . E_i = 0
        assert!(is_nef(&l));
        assert!(is_nef(&DivisorClass::zero(deg6)));

        // l - E1 - E2 - E3 meets l - E1 - E2 negatively
        let d = DivisorClass::from_ints(deg6, &[1, 1, 1, 1]);
        assert!(!is_nef(&d));
    }

    #[test]
    fn minimal_model_catalogues() {
        assert!(enumerate_minus_one_curves(SurfaceModel::Quadric)
            .unwrap()
            .is_empty());
        let f1 = enumerate_minus_one_curves(SurfaceModel::Hirzebruch).unwrap();
        assert_eq!(f1.len(), 1);
        assert_eq!(f1[0].label, "e");
        assert!(enumerate_minus_one_curves(SurfaceModel::BlowUp { r: 0 })
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rational_coefficients_are_exact() {
        let m = SurfaceModel::BlowUp { r: 3 };
        let d = DivisorClass::new(m, vec![ratio(7, 2), ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
        assert_eq!(d.self_intersection(), ratio(49, 4) - ratio(1, 3));
    }
}
