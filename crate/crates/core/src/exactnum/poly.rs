use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::{CycloField, CycloNumber};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q(ζ_{4n}), lowest degree first.
///
/// The zero polynomial has an empty coefficient vector and `degree() == None`.
#[derive(Clone)]
pub struct Poly {
    field: Arc<CycloField>,
    coeffs: Vec<CycloNumber>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    order: u32,
    coeffs: Vec<CycloNumber>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            order: self.field.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let field = CycloField::new(raw.order).map_err(D::Error::custom)?;
        if raw.coeffs.iter().any(|c| c.order() != raw.order) {
            return Err(D::Error::custom("coefficient order mismatch"));
        }
        Ok(Poly::new(&field, raw.coeffs))
    }
}

impl Poly {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: CycloNumber) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::constant(CycloNumber::one(field))
    }

    /// The monomial `x`.
    pub fn x(field: &Arc<CycloField>) -> Self {
        Self::new(
            field,
            vec![CycloNumber::zero(field), CycloNumber::one(field)],
        )
    }

    pub fn new(field: &Arc<CycloField>, mut coeffs: Vec<CycloNumber>) -> Self {
        while coeffs.last().is_some_and(CycloNumber::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// ∏ (x - r) over the given roots.
    pub fn from_roots(field: &Arc<CycloField>, roots: &[CycloNumber]) -> Self {
        let mut p = Self::one(field);
        for r in roots {
            p = &p * &Self::new(field, vec![-r, CycloNumber::one(field)]);
        }
        p
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloNumber {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(self.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycloNumber> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(CycloNumber::is_one)
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Arithmetic("zero polynomial has no monic form".into()))?
            .inv()?;
        Ok(self.scale(&lead))
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        Self::new(self.field(), self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &CycloNumber) -> CycloNumber {
        let mut acc = CycloNumber::zero(self.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Arithmetic("polynomial division by zero".into()))?;
        let lead_inv = d.coeffs[dd].inv()?;
        let field = self.field().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&field), self.clone()));
        }
        let mut q = vec![CycloNumber::zero(&field); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &(&c * dj);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(&field, q), Poly::new(&field, r)))
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let field = self.field().clone();
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&field);
        }
        let mut out = vec![CycloNumber::zero(&field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(&field, out)
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let field = self.field().clone();
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(&field, out)
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let field = self.field().clone();
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(&field, out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if c.is_one() && e > 0 {
                write!(f, "{mono}")?;
            } else if e == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_division_and_degree() {
        let f = CycloField::new(12).unwrap();
        let i = CycloNumber::i(&f);
        let p = Poly::from_roots(&f, &[i.clone(), -&i]);
        // x^2 + 1
        assert_eq!(p.degree(), Some(2));
        assert!(p.coeff(1).is_zero());
        assert!(p.coeff(0).is_one());
        assert!(p.eval(&i).is_zero());
        let x_minus_i = Poly::from_roots(&f, &[i.clone()]);
        assert!(x_minus_i.divides(&p).unwrap());
        let (q, r) = p.div_rem(&x_minus_i).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_roots(&f, &[-&i]));
        assert_eq!(Poly::zero(&f).degree(), None);
        assert!(p.div_rem(&Poly::zero(&f)).is_err());
        let two = CycloNumber::from_int(&f, 2);
        assert!(p.scale(&two).monic().unwrap().is_monic());
        assert_eq!(&(&p - &p) + &Poly::zero(&f), Poly::zero(&f));
        assert_eq!(format!("{}", Poly::x(&f)), "x");
    }
}
