use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{CycloField, CycloNumber, Poly};

/// Finite Laurent polynomial Σ c_ℓ y^ℓ over Q(ζ_{4n}); zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Arc<CycloField>,
    terms: BTreeMap<i64, CycloNumber>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    ell: i64,
    coeff: CycloNumber,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| Term {
                ell: *e,
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl LaurentPoly {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        LaurentPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &Arc<CycloField>, exp: i64, c: CycloNumber) -> Self {
        let mut p = Self::zero(field);
        p.add_term(exp, c);
        p
    }

    pub fn constant(c: CycloNumber) -> Self {
        let field = c.field().clone();
        Self::monomial(&field, 0, c)
    }

    /// y^e with rational coefficient `c`.
    pub fn y_pow(field: &Arc<CycloField>, exp: i64, c: i64) -> Self {
        Self::monomial(field, exp, CycloNumber::from_int(field, c))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn add_term(&mut self, exp: i64, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(exp)
            .or_insert_with(|| CycloNumber::zero(&self.field));
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycloNumber> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> CycloNumber {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CycloNumber::from_int(&self.field, -1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.add_term(e + f, c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self::zero(&self.field);
        for (e, d) in &self.terms {
            out.add_term(*e, d * c);
        }
        out
    }

    /// y ↦ 1/y.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(&self.field);
        for (e, c) in &self.terms {
            out.add_term(-e, c.clone());
        }
        out
    }

    /// d/dt for y = κe^{it}, i.e. iy·d/dy: c_ℓ y^ℓ ↦ iℓ c_ℓ y^ℓ.
    pub fn d_t(&self) -> Self {
        let i = CycloNumber::i(&self.field);
        let mut out = Self::zero(&self.field);
        for (e, c) in &self.terms {
            out.add_term(*e, (&i * c).scale(&crate::exactnum::rational::int(*e)));
        }
        out
    }

    /// Value at y = `sign` (±1).
    pub fn eval_sign(&self, sign: i64) -> CycloNumber {
        let mut acc = CycloNumber::zero(&self.field);
        for (e, c) in &self.terms {
            if sign < 0 && e.rem_euclid(2) == 1 {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    /// d^s/dt^s at t = 0 with y = κe^{it}: Σ c_ℓ κ^ℓ (iℓ)^s.
    pub fn t_derivative_at_zero(&self, kappa: i64, s: u32) -> CycloNumber {
        let mut p = self.clone();
        for _ in 0..s {
            p = p.d_t();
        }
        p.eval_sign(kappa)
    }

    /// Exact quotient by (y - c)^2; fails when the division leaves a
    /// remainder, i.e. the pole at y = c does not cancel.
    pub fn div_exact_sq(&self, c: &CycloNumber) -> Result<Self> {
        let Some(lo) = self.min_exp() else {
            return Ok(self.clone());
        };
        let hi = self.max_exp().expect("nonempty");
        let coeffs: Vec<CycloNumber> = (lo..=hi).map(|e| self.coeff(e)).collect();
        let num = Poly::new(&self.field, coeffs);
        let lin = Poly::new(&self.field, vec![-c.clone(), CycloNumber::one(&self.field)]);
        let (q, r) = num.div_rem(&(&lin * &lin))?;
        if !r.is_zero() {
            return Err(Error::mismatch(format!(
                "pole at y = {c} does not cancel: remainder {r}"
            )));
        }
        let mut out = Self::zero(&self.field);
        for (j, a) in q.coeffs().iter().enumerate() {
            out.add_term(lo + j as i64, a.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*y^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
