use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::engine::{add_to, RatVec, Sra, MAX_DEGREE};
use super::word::NormalWord;
use crate::dihedral::{GroupAlgebraElement, GroupBasis, GroupWord};
use crate::error::{Error, Result};
use crate::exactnum::{rational::Rational, CycloNumber};

/// Finite combination of normal words with cyclotomic coefficients.
#[derive(Clone)]
pub struct AlgebraElement {
    sra: Arc<Sra>,
    terms: BTreeMap<NormalWord, CycloNumber>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.sra.same_params(&other.sra) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(sra: &Arc<Sra>) -> Self {
        AlgebraElement {
            sra: sra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rat(sra: &Arc<Sra>, v: &RatVec) -> Self {
        let mut e = Self::zero(sra);
        for (w, c) in v {
            e.add_term(*w, CycloNumber::from_rational(sra.field(), c.clone()));
        }
        e
    }

    /// The unit S_0 = Σ Q_p.
    pub fn one(sra: &Arc<Sra>) -> Self {
        Self::from_rat(sra, &sra.unit())
    }

    pub fn scalar(sra: &Arc<Sra>, c: CycloNumber) -> Self {
        Self::one(sra).scale(&c)
    }

    pub fn letter(sra: &Arc<Sra>, x: u8) -> Self {
        Self::from_rat(sra, &sra.letter(x))
    }

    pub fn word(sra: &Arc<Sra>, w: NormalWord) -> Self {
        let mut e = Self::zero(sra);
        e.add_term(w, CycloNumber::one(sra.field()));
        e
    }

    pub fn group_basis(sra: &Arc<Sra>, g: GroupBasis) -> Self {
        Self::word(sra, NormalWord::group(g))
    }

    pub fn group_word(sra: &Arc<Sra>, g: GroupWord) -> Self {
        Self::group_element(sra, &GroupAlgebraElement::from_group_word(sra.field(), g))
    }

    pub fn group_element(sra: &Arc<Sra>, g: &GroupAlgebraElement) -> Self {
        let mut e = Self::zero(sra);
        for (b, c) in g.terms() {
            e.add_term(NormalWord::group(*b), c.clone());
        }
        e
    }

    pub fn sra(&self) -> &Arc<Sra> {
        &self.sra
    }

    pub fn add_term(&mut self, w: NormalWord, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &NormalWord) -> CycloNumber {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(self.sra.field()))
    }

    /// Filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(NormalWord::degree).max()
    }

    /// `Some(0 | 1)` when every word has the same parity.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(NormalWord::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.sra.same_params(&other.sra) {
            Ok(())
        } else {
            Err(Error::usage(
                "elements belong to algebras with different (n, nu)",
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            sra: self.sra.clone(),
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self::zero(&self.sra);
        for (w, v) in &self.terms {
            out.add_term(*w, v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.sra);
        for (w, v) in &self.terms {
            out.add_term(*w, v.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let total = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        if total > MAX_DEGREE {
            return Err(Error::Resource(format!(
                "product of degree {total} exceeds the supported limit {MAX_DEGREE}"
            )));
        }
        let field = self.sra.field();
        // group by the rational product of words, scale once per pair
        let mut out: BTreeMap<NormalWord, Vec<Rational>> = BTreeMap::new();
        let deg = field.degree();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let c = cu * cv;
                for (w, r) in self.sra.mul_words(u, v) {
                    let slot = out.entry(w).or_insert_with(|| vec![Rational::zero(); deg]);
                    for (s, a) in slot.iter_mut().zip(c.coeffs()) {
                        if !a.is_zero() {
                            *s += a * &r;
                        }
                    }
                }
            }
        }
        let mut e = Self::zero(&self.sra);
        for (w, coeffs) in out {
            e.add_term(w, CycloNumber::from_coeffs(field, coeffs));
        }
        Ok(e)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.sra);
        for _ in 0..e {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    /// xy - yx.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// xy - κ^{ε(x)ε(y)} yx, extended bilinearly over the parity components.
    pub fn kappa_commutator(&self, other: &Self, kappa: i8) -> Result<Self> {
        let mut out = Self::zero(&self.sra);
        for x in self.parity_parts() {
            for y in other.parity_parts() {
                let sign = if kappa < 0 && x.parity() == Some(1) && y.parity() == Some(1) {
                    -1
                } else {
                    1
                };
                let xy = x.mul(&y)?;
                let yx = y.mul(&x)?;
                let t = if sign < 0 { xy.add(&yx)? } else { xy.sub(&yx)? };
                out = out.add(&t)?;
            }
        }
        Ok(out)
    }

    /// Even and odd components (empty ones omitted).
    pub fn parity_parts(&self) -> Vec<Self> {
        let mut parts = [Self::zero(&self.sra), Self::zero(&self.sra)];
        for (w, c) in &self.terms {
            parts[w.parity() as usize].add_term(*w, c.clone());
        }
        parts.into_iter().filter(|p| !p.is_zero()).collect()
    }

    /// Splits the coefficients in the power basis: `self = Σ_j ζ^j v_j`.
    pub fn rational_parts(&self) -> Vec<RatVec> {
        let deg = self.sra.field().degree();
        let mut parts = vec![RatVec::new(); deg];
        for (w, c) in &self.terms {
            for (j, a) in c.coeffs().iter().enumerate() {
                add_to(&mut parts[j], *w, a.clone());
            }
        }
        parts
    }

    /// The coefficients as rationals, if all of them are rational.
    pub fn as_rat(&self) -> Option<RatVec> {
        self.terms
            .iter()
            .map(|(w, c)| c.as_rational().map(|r| (*w, r)))
            .collect()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) {w}")?;
        }
        Ok(())
    }
}
