//! Sparse truncated multivariate polynomials ("jets").
//!
//! A [`JetRing`] fixes an ordered list of variables and a total-degree
//! truncation order; a [`Jet`] is a sparse map from exponent vectors to
//! coefficients. Every monomial of total degree above the truncation order is
//! discarded as soon as it is produced, so `a * b` in a ring of order `n`
//! computes the product modulo the `(n + 1)`-th power of the ideal generated
//! by all variables.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Coefficient, CoefficientField, DEFAULT_TOLERANCE};

/// Exponent vector; its length equals the number of ring variables.
pub type Exponent = Vec<u32>;

pub fn total_degree(exp: &[u32]) -> u32 {
    exp.iter().sum()
}

/// A truncated polynomial ring `F[t_1, ..., t_n] / (t)^(order + 1)`.
pub struct JetRing<F> {
    variables: Vec<String>,
    truncation_order: u32,
    tolerance: f64,
    _field: PhantomData<fn() -> F>,
}

impl<F> fmt::Debug for JetRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetRing")
            .field("variables", &self.variables)
            .field("truncation_order", &self.truncation_order)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

impl<F> PartialEq for JetRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables
            && self.truncation_order == other.truncation_order
            && self.tolerance == other.tolerance
    }
}

fn same_ring<F>(a: &Arc<JetRing<F>>, b: &Arc<JetRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Coefficient> JetRing<F> {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        truncation_order: u32,
    ) -> Result<Arc<Self>> {
        Self::with_tolerance(variables, truncation_order, DEFAULT_TOLERANCE)
    }

    /// Like [`JetRing::new`] with an explicit float zero-test tolerance.
    /// The tolerance is ignored by exact fields.
    pub fn with_tolerance<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        truncation_order: u32,
        tolerance: f64,
    ) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Error::InvalidRing(format!("bad tolerance {tolerance}")));
        }
        Ok(Arc::new(JetRing {
            variables,
            truncation_order,
            tolerance,
            _field: PhantomData,
        }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn field(&self) -> CoefficientField {
        F::FIELD
    }

    pub fn variable_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn zero(self: &Arc<Self>) -> Jet<F> {
        Jet {
            ring: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Jet<F> {
        self.constant(F::one())
    }

    pub fn constant(self: &Arc<Self>, c: F) -> Jet<F> {
        let mut jet = self.zero();
        if !c.is_exact_zero() {
            jet.terms.insert(vec![0; self.num_variables()], c);
        }
        jet
    }

    /// `coeff · t^exp`, or zero if the monomial exceeds the truncation order.
    pub fn monomial(self: &Arc<Self>, exp: &[u32], coeff: F) -> Result<Jet<F>> {
        if exp.len() != self.num_variables() {
            return Err(Error::InvalidRing(format!(
                "exponent vector has length {}, ring has {} variables",
                exp.len(),
                self.num_variables()
            )));
        }
        let mut jet = self.zero();
        if total_degree(exp) <= self.truncation_order && !coeff.is_exact_zero() {
            jet.terms.insert(exp.to_vec(), coeff);
        }
        Ok(jet)
    }

    /// The jet of the variable at position `index`. Panics if out of range.
    pub fn var_at(self: &Arc<Self>, index: usize) -> Jet<F> {
        assert!(index < self.num_variables(), "variable index out of range");
        let mut exp = vec![0; self.num_variables()];
        exp[index] = 1;
        self.monomial(&exp, F::one()).expect("valid exponent")
    }

    pub fn variable(self: &Arc<Self>, name: &str) -> Result<Jet<F>> {
        Ok(self.var_at(self.variable_index(name)?))
    }

    /// A jet built from `(exponent, coefficient)` pairs; repeated exponents
    /// are summed and monomials above the truncation order dropped.
    pub fn from_terms(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (Exponent, F)>,
    ) -> Result<Jet<F>> {
        let mut jet = self.zero();
        for (exp, c) in terms {
            let m = self.monomial(&exp, c)?;
            jet = jet.try_add(&m)?;
        }
        Ok(jet)
    }
}

/// A truncated multivariate polynomial belonging to a [`JetRing`].
#[derive(Clone)]
pub struct Jet<F> {
    ring: Arc<JetRing<F>>,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Coefficient> fmt::Debug for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for (name, &e) in self.ring.variables.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Coefficient> PartialEq for Jet<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Coefficient> Jet<F> {
    pub fn ring(&self) -> &Arc<JetRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms (exact zero; floats are not tolerance-tested here).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn insert_sum(terms: &mut BTreeMap<Exponent, F>, exp: &[u32], c: &F) {
        match terms.get_mut(exp) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_exact_zero() {
                    terms.remove(exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                if !c.is_exact_zero() {
                    terms.insert(exp.to_vec(), c.clone());
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (exp, c) in &other.terms {
            Self::insert_sum(&mut terms, exp, c);
        }
        Ok(Jet {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let order = self.ring.truncation_order;
        let mut rhs: Vec<(u32, &Exponent, &F)> = other
            .terms
            .iter()
            .map(|(e, c)| (total_degree(e), e, c))
            .collect();
        rhs.sort_by_key(|(d, _, _)| *d);

        let mut terms = BTreeMap::new();
        let mut exp = vec![0u32; self.ring.num_variables()];
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for &(db, eb, cb) in &rhs {
                if da + db > order {
                    break;
                }
                for ((slot, x), y) in exp.iter_mut().zip(ea).zip(eb) {
                    *slot = x + y;
                }
                Self::insert_sum(&mut terms, &exp, &ca.mul(cb));
            }
        }
        Ok(Jet {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x.mul(c)))
            .filter(|(_, x)| !x.is_exact_zero())
            .collect();
        Jet {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Stored coefficient of `t^exp`, or zero.
    pub fn coefficient(&self, exp: &[u32]) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&vec![0; self.ring.num_variables()])
    }

    /// Coefficient of the degree-one monomial in the variable at `index`.
    pub fn linear_coefficient(&self, index: usize) -> F {
        let mut exp = vec![0; self.ring.num_variables()];
        exp[index] = 1;
        self.coefficient(&exp)
    }

    /// Largest coefficient modulus (0 for the zero jet).
    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(F::modulus).fold(0.0, f64::max)
    }

    fn negligible_under(&self, c: &F, scale: f64, tol: f64) -> bool {
        c.is_negligible(scale, tol)
    }

    /// True iff every monomial of total degree `<= d` vanishes: exactly for
    /// exact fields, relative to the largest coefficient modulus of `self`
    /// for floats.
    pub fn vanishes_through_degree(&self, d: u32) -> Result<bool> {
        self.vanishes_through_degree_with(d, self.ring.tolerance)
    }

    pub fn vanishes_through_degree_with(&self, d: u32, tol: f64) -> Result<bool> {
        if d > self.ring.truncation_order {
            return Err(Error::Range {
                what: "degree",
                value: d as i64,
                min: 0,
                max: self.ring.truncation_order as i64,
            });
        }
        let scale = self.max_modulus();
        Ok(self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) <= d)
            .all(|(_, c)| self.negligible_under(c, scale, tol)))
    }

    /// Smallest total degree carrying a non-negligible coefficient, `None`
    /// if the jet vanishes through the truncation order.
    pub fn min_degree(&self) -> Option<u32> {
        let scale = self.max_modulus();
        let tol = self.ring.tolerance;
        self.terms
            .iter()
            .filter(|(_, c)| !self.negligible_under(c, scale, tol))
            .map(|(e, _)| total_degree(e))
            .min()
    }

    /// The homogeneous part of total degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        Jet {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates the stored (already truncated) polynomial at a point.
    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        if point.len() != self.ring.num_variables() {
            return Err(Error::InvalidRing(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.num_variables()
            )));
        }
        let mut acc = F::zero();
        for (exp, c) in &self.terms {
            let mut m = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                m = m.mul(&x.pow(e));
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }

    /// Moves the jet into a ring with the same variables (same order) but a
    /// possibly different truncation order, dropping excess monomials.
    pub fn retruncate(&self, ring: &Arc<JetRing<F>>) -> Result<Self> {
        if ring.variables != self.ring.variables {
            return Err(Error::RingMismatch);
        }
        let order = ring.truncation_order;
        Ok(Jet {
            ring: Arc::clone(ring),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// `{ "vars": [...], "order": n, "terms": [ { "exp": [...], "re": .., "im": .. } ] }`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(exp, c)| {
                let (re, im) = c.to_json_parts();
                json!({ "exp": exp, "re": re, "im": im })
            })
            .collect();
        json!({
            "vars": self.ring.variables,
            "order": self.ring.truncation_order,
            "terms": terms,
        })
    }

    /// Parses the [`Jet::to_json`] layout into a freshly created ring.
    pub fn from_json(value: &Value) -> Result<Self> {
        let vars: Vec<String> = serde_json::from_value(
            value
                .get("vars")
                .cloned()
                .ok_or_else(|| Error::Parse("jet: missing \"vars\"".into()))?,
        )?;
        let order = value
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("jet: missing \"order\"".into()))?;
        let ring = JetRing::new(vars, order as u32)?;
        Self::from_json_in(&ring, value)
    }

    /// Parses the terms of a serialized jet into an existing ring.
    pub fn from_json_in(ring: &Arc<JetRing<F>>, value: &Value) -> Result<Self> {
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("jet: missing \"terms\"".into()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let exp: Exponent = serde_json::from_value(
                t.get("exp")
                    .cloned()
                    .ok_or_else(|| Error::Parse("jet term: missing \"exp\"".into()))?,
            )?;
            let zero = Value::from(0);
            let re = t.get("re").unwrap_or(&zero);
            let im = t.get("im").unwrap_or(&zero);
            parsed.push((exp, F::from_json_parts(re, im)?));
        }
        ring.from_terms(parsed)
    }
}

impl<F: Coefficient> Jet<F> {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Jet {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }
}

// Operator forms panic on ring mismatch; use the `try_*` methods when the
// operands may come from different rings.

impl<F: Coefficient> Add for &Jet<F> {
    type Output = Jet<F>;
    fn add(self, rhs: &Jet<F>) -> Jet<F> {
        self.try_add(rhs).expect("jet ring mismatch")
    }
}

impl<F: Coefficient> Sub for &Jet<F> {
    type Output = Jet<F>;
    fn sub(self, rhs: &Jet<F>) -> Jet<F> {
        self.try_sub(rhs).expect("jet ring mismatch")
    }
}

impl<F: Coefficient> Mul for &Jet<F> {
    type Output = Jet<F>;
    fn mul(self, rhs: &Jet<F>) -> Jet<F> {
        self.try_mul(rhs).expect("jet ring mismatch")
    }
}

impl<F: Coefficient> Neg for &Jet<F> {
    type Output = Jet<F>;
    fn neg(self) -> Jet<F> {
        Jet::neg(self)
    }
}
