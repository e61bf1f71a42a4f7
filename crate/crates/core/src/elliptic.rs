//! Marked elliptic curves `E_τ = C / (Zτ + Z)`.
//!
//! The period τ is input data; nothing transcendental is computed. A mark is
//! a point of `E_τ` together with the leading coefficient `c` of the local
//! coordinate `w = c·(z − a) + O((z − a)²)` chosen there. Against the
//! normalized form `dz` this gives the value `v(a) = 1 / c` that enters every
//! plumbing formula.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{coefficient_from_pair, coefficient_to_pair, Coefficient};

/// A point of the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct TauPoint<F>(F);

impl<F: Coefficient> TauPoint<F> {
    pub fn new(tau: F) -> Result<Self> {
        if tau.imag_part().compare_real(&F::zero()) != Ordering::Greater {
            return Err(Error::Domain(tau.to_complex().im));
        }
        Ok(TauPoint(tau))
    }

    pub fn value(&self) -> &F {
        &self.0
    }

    pub fn into_inner(self) -> F {
        self.0
    }
}

/// The four fixed points of `z ↦ −z` on `E_τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoTorsionLabel {
    O,
    Half,
    TauHalf,
    HalfPlusTauHalf,
}

impl TwoTorsionLabel {
    pub const ALL: [TwoTorsionLabel; 4] = [
        TwoTorsionLabel::O,
        TwoTorsionLabel::Half,
        TwoTorsionLabel::TauHalf,
        TwoTorsionLabel::HalfPlusTauHalf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwoTorsionLabel::O => "O",
            TwoTorsionLabel::Half => "Half",
            TwoTorsionLabel::TauHalf => "TauHalf",
            TwoTorsionLabel::HalfPlusTauHalf => "HalfPlusTauHalf",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown 2-torsion label {s:?}")))
    }

    /// Representative in the fundamental cell.
    pub fn representative<F: Coefficient>(self, tau: &TauPoint<F>) -> F {
        let half = F::from_ratio(1, 2);
        match self {
            TwoTorsionLabel::O => F::zero(),
            TwoTorsionLabel::Half => half,
            TwoTorsionLabel::TauHalf => tau.value().mul(&half),
            TwoTorsionLabel::HalfPlusTauHalf => half.add(&tau.value().mul(&half)),
        }
    }
}

impl fmt::Display for TwoTorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MarkPoint<F> {
    TwoTorsion(TwoTorsionLabel),
    Generic(F),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mark<F> {
    pub point: MarkPoint<F>,
    /// Leading coefficient of the local coordinate at the point.
    pub coord_leading_coeff: F,
}

impl<F: Coefficient> Mark<F> {
    pub fn two_torsion(label: TwoTorsionLabel, c: F) -> Self {
        Mark {
            point: MarkPoint::TwoTorsion(label),
            coord_leading_coeff: c,
        }
    }

    pub fn generic(z: F, c: F) -> Self {
        Mark {
            point: MarkPoint::Generic(z),
            coord_leading_coeff: c,
        }
    }

    /// `v(a) = 1 / c`.
    pub fn normalized_form_value(&self) -> Result<F> {
        self.coord_leading_coeff
            .inv()
            .ok_or_else(|| Error::InvalidMark("local coordinate has zero leading coefficient".into()))
    }

    pub fn position(&self, tau: &TauPoint<F>) -> F {
        match &self.point {
            MarkPoint::TwoTorsion(l) => l.representative(tau),
            MarkPoint::Generic(z) => z.clone(),
        }
    }
}

/// `v(a)` for a mark; see [`Mark::normalized_form_value`].
pub fn normalized_form_value<F: Coefficient>(mark: &Mark<F>) -> Result<F> {
    mark.normalized_form_value()
}

/// True iff `z` lies in the lattice `Zτ + Z`.
pub fn in_lattice<F: Coefficient>(z: &F, tau: &TauPoint<F>) -> bool {
    // z = aτ + b with a = Im z / Im τ and b = Re z − a·Re τ.
    let tau = tau.value();
    let a = z
        .imag_part()
        .div(&tau.imag_part())
        .expect("Im tau is non-zero");
    let b = z.real_part().sub(&a.mul(&tau.real_part()));
    let is_int = |x: &F| x.compare_real(&F::from_i64(x.round_real())) == Ordering::Equal;
    is_int(&a) && is_int(&b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkedEllipticCurve<F> {
    pub tau: TauPoint<F>,
    pub marks: Vec<Mark<F>>,
}

impl<F: Coefficient> MarkedEllipticCurve<F> {
    pub fn new(tau: TauPoint<F>, marks: Vec<Mark<F>>) -> Result<Self> {
        for (k, m) in marks.iter().enumerate() {
            if m.coord_leading_coeff.is_exact_zero() {
                return Err(Error::InvalidMark(format!("mark {k} has c = 0")));
            }
            for (l, other) in marks[..k].iter().enumerate() {
                let d = m.position(&tau).sub(&other.position(&tau));
                if in_lattice(&d, &tau) {
                    return Err(Error::InvalidMark(format!(
                        "marks {l} and {k} are the same point of E_tau"
                    )));
                }
            }
        }
        Ok(MarkedEllipticCurve { tau, marks })
    }

    pub fn mark(&self, index: usize) -> Result<&Mark<F>> {
        self.marks
            .get(index)
            .ok_or_else(|| Error::InvalidMark(format!("no mark with index {index}")))
    }

    /// `{ "tau": [re, im], "marks": [ { "point": label | [re, im], "c": [re, im] } ] }`
    pub fn to_json(&self) -> Value {
        let marks: Vec<Value> = self
            .marks
            .iter()
            .map(|m| {
                let point = match &m.point {
                    MarkPoint::TwoTorsion(l) => Value::String(l.name().into()),
                    MarkPoint::Generic(z) => coefficient_to_pair(z),
                };
                json!({ "point": point, "c": coefficient_to_pair(&m.coord_leading_coeff) })
            })
            .collect();
        json!({ "tau": coefficient_to_pair(self.tau.value()), "marks": marks })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let tau = TauPoint::new(coefficient_from_pair(
            v.get("tau")
                .ok_or_else(|| Error::Parse("curve: missing \"tau\"".into()))?,
        )?)?;
        let mut marks = Vec::new();
        if let Some(list) = v.get("marks").and_then(Value::as_array) {
            for m in list {
                let point = match m.get("point") {
                    Some(Value::String(s)) => MarkPoint::TwoTorsion(TwoTorsionLabel::parse(s)?),
                    Some(p) => MarkPoint::Generic(coefficient_from_pair(p)?),
                    None => return Err(Error::Parse("mark: missing \"point\"".into())),
                };
                let c = match m.get("c") {
                    Some(c) => coefficient_from_pair(c)?,
                    None => F::one(),
                };
                marks.push(Mark {
                    point,
                    coord_leading_coeff: c,
                });
            }
        }
        Self::new(tau, marks)
    }
}

/// An element of `SL₂(Z)` acting by `τ ↦ (aτ + b) / (cτ + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2Z(pub [[i64; 2]; 2]);

impl Sl2Z {
    pub const IDENTITY: Sl2Z = Sl2Z([[1, 0], [0, 1]]);
    pub const S: Sl2Z = Sl2Z([[0, -1], [1, 0]]);

    pub fn translation(k: i64) -> Self {
        Sl2Z([[1, k], [0, 1]])
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Sl2Z) -> Sl2Z {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Sl2Z([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }

    pub fn act<F: Coefficient>(&self, tau: &F) -> Option<F> {
        let [[a, b], [c, d]] = self.0;
        let num = F::from_i64(a).mul(tau).add(&F::from_i64(b));
        let den = F::from_i64(c).mul(tau).add(&F::from_i64(d));
        num.div(&den)
    }
}

fn norm_sqr<F: Coefficient>(z: &F) -> F {
    let re = z.real_part();
    let im = z.imag_part();
    re.mul(&re).add(&im.mul(&im))
}

/// Gauss reduction into `|Re τ′| ≤ 1/2`, `|τ′| ≥ 1`, with the boundary
/// normalized so that `Re τ′ ≠ 1/2` and points on the unit circle have
/// `Re τ′ ≤ 0`. Returns `τ′` and `M` with `τ′ = M·τ`.
pub fn reduce_to_fundamental_domain<F: Coefficient>(tau: &TauPoint<F>) -> (TauPoint<F>, Sl2Z) {
    let one = F::one();
    let mut z = tau.value().clone();
    let mut m = Sl2Z::IDENTITY;
    loop {
        let n = z.round_real();
        if n != 0 {
            z = z.sub(&F::from_i64(n));
            m = Sl2Z::translation(-n).compose(&m);
        }
        if norm_sqr(&z).compare_real(&one) == Ordering::Less {
            z = Sl2Z::S.act(&z).expect("z is non-zero");
            m = Sl2Z::S.compose(&m);
        } else {
            break;
        }
    }
    let half = F::from_ratio(1, 2);
    if z.real_part().compare_real(&half) == Ordering::Equal {
        z = z.sub(&one);
        m = Sl2Z::translation(-1).compose(&m);
    }
    if norm_sqr(&z).compare_real(&one) == Ordering::Equal
        && z.real_part().compare_real(&F::zero()) == Ordering::Greater
    {
        z = Sl2Z::S.act(&z).expect("z is non-zero");
        m = Sl2Z::S.compose(&m);
    }
    (TauPoint(z), m)
}

/// Same elliptic curve up to isomorphism, i.e. `SL₂(Z)`-equivalent periods.
pub fn are_isomorphic<F: Coefficient>(a: &TauPoint<F>, b: &TauPoint<F>) -> bool {
    let (ra, _) = reduce_to_fundamental_domain(a);
    let (rb, _) = reduce_to_fundamental_domain(b);
    let (za, zb) = (ra.value(), rb.value());
    if F::FIELD.is_exact() {
        return za == zb;
    }
    // Float representatives may land on opposite sides of a boundary arc.
    let close = |x: &F, y: &F| {
        let d = x.sub(y);
        d.modulus() <= 1e-9 * x.modulus().max(1.0)
    };
    let mut candidates = vec![zb.clone(), zb.add(&F::one()), zb.sub(&F::one())];
    if let Some(s) = Sl2Z::S.act(zb) {
        candidates.push(s);
    }
    candidates.iter().any(|c| close(za, c))
}

/// `[0, 1/2, τ/2, (1 + τ)/2]`.
pub fn two_torsion_representatives<F: Coefficient>(tau: &TauPoint<F>) -> [F; 4] {
    TwoTorsionLabel::ALL.map(|l| l.representative(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as Q;
    use num_complex::Complex64;

    fn tau(re: (i64, i64), im: (i64, i64)) -> TauPoint<Q> {
        TauPoint::new(Q::from_parts(re, im)).unwrap()
    }

    #[test]
    fn form_values() {
        let m = Mark::two_torsion(TwoTorsionLabel::O, Q::one());
        assert_eq!(m.normalized_form_value().unwrap(), Q::one());
        let m = Mark::two_torsion(TwoTorsionLabel::O, Q::from_i64(2));
        assert_eq!(m.normalized_form_value().unwrap(), Q::from_ratio(1, 2));
        let m = Mark::two_torsion(TwoTorsionLabel::O, Q::from_i64(-1));
        assert_eq!(m.normalized_form_value().unwrap(), Q::from_i64(-1));
        let m = Mark::two_torsion(TwoTorsionLabel::O, Q::zero());
        assert!(matches!(m.normalized_form_value(), Err(Error::InvalidMark(_))));
    }

    #[test]
    fn reduction_examples() {
        let (r, m) = reduce_to_fundamental_domain(&tau((5, 1), (1, 1)));
        assert_eq!(r.value(), &Q::i());
        assert_eq!(m, Sl2Z::translation(-5));

        let (r, m) = reduce_to_fundamental_domain(&tau((0, 1), (1, 2)));
        assert_eq!(r.value(), &Q::from_parts((0, 1), (2, 1)));
        assert_eq!(m, Sl2Z::S);

        let t = tau((3, 10), (1, 100));
        let (r, m) = reduce_to_fundamental_domain(&t);
        assert_eq!(m.det(), 1);
        assert_eq!(m.act(t.value()).unwrap(), *r.value());
        let z = r.value();
        assert!(norm_sqr(z).compare_real(&Q::one()) != Ordering::Less);
        assert!(z.real_part().compare_real(&Q::from_ratio(1, 2)) == Ordering::Less);
        assert!(z.real_part().compare_real(&Q::from_ratio(-1, 2)) != Ordering::Less);
    }

    #[test]
    fn boundary_normalization() {
        // 1/2 + i ↦ −1/2 + i.
        let (r, _) = reduce_to_fundamental_domain(&tau((1, 2), (1, 1)));
        assert_eq!(r.value(), &Q::from_parts((-1, 2), (1, 1)));
        // 5/13 + 12/13 i on the unit circle ↦ −5/13 + 12/13 i.
        let (r, m) = reduce_to_fundamental_domain(&tau((5, 13), (12, 13)));
        assert_eq!(r.value(), &Q::from_parts((-5, 13), (12, 13)));
        assert_eq!(m.act(&Q::from_parts((5, 13), (12, 13))).unwrap(), *r.value());
        // Already normalized boundary points stay put.
        let (r, m) = reduce_to_fundamental_domain(&tau((-5, 13), (12, 13)));
        assert_eq!(r.value(), &Q::from_parts((-5, 13), (12, 13)));
        assert_eq!(m, Sl2Z::IDENTITY);
    }

    #[test]
    fn isomorphism_examples() {
        let i = tau((0, 1), (1, 1));
        let st = Sl2Z([[2, 1], [1, 1]]).act(i.value()).unwrap();
        assert!(are_isomorphic(&i, &TauPoint::new(st).unwrap()));
        assert!(!are_isomorphic(&i, &tau((0, 1), (2, 1))));
        let t = tau((1, 3), (7, 5));
        assert!(are_isomorphic(&t, &tau((4, 3), (7, 5))));

        let f = TauPoint::new(Complex64::new(0.31, 0.02)).unwrap();
        let g = TauPoint::new(Sl2Z([[3, -1], [-2, 1]]).act(f.value()).unwrap()).unwrap();
        assert!(are_isomorphic(&f, &g));
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(matches!(TauPoint::new(Q::from_i64(1)), Err(Error::Domain(_))));
        assert!(TauPoint::new(Complex64::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn two_torsion() {
        let t = tau((0, 1), (1, 1));
        let reps = two_torsion_representatives(&t);
        assert_eq!(reps[3], Q::from_parts((1, 2), (1, 2)));
        for a in 0..4 {
            for b in 0..a {
                assert!(!in_lattice(&reps[a].sub(&reps[b]), &t));
            }
        }
    }

    #[test]
    fn curve_validation_and_json() {
        let t = tau((1, 3), (3, 2));
        let c = MarkedEllipticCurve::new(
            t.clone(),
            vec![
                Mark::two_torsion(TwoTorsionLabel::Half, Q::from_i64(2)),
                Mark::generic(Q::from_parts((1, 5), (1, 7)), Q::one()),
            ],
        )
        .unwrap();
        let back = MarkedEllipticCurve::<Q>::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);

        // 1/2 + τ is the same point as 1/2.
        let dup = Mark::generic(Q::from_ratio(1, 2).add(t.value()), Q::one());
        let err = MarkedEllipticCurve::new(
            t.clone(),
            vec![Mark::two_torsion(TwoTorsionLabel::Half, Q::one()), dup],
        );
        assert!(err.is_err());
        assert!(MarkedEllipticCurve::new(t, vec![Mark::two_torsion(TwoTorsionLabel::O, Q::zero())]).is_err());
    }
}
