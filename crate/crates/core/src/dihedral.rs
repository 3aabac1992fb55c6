//! The dihedral group I_2(n) for odd n, its group algebra in the
//! reflection/rotation basis {R_k, S_k} and in the Fourier basis
//! {L_p, Q_p}, and the discrete Fourier transform over Z_n.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rational::rat, CycloField, CycloNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Reflection,
    Rotation,
}

/// `R_k` or `S_k`, index reduced mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    pub kind: Kind,
    pub index: u32,
}

fn md(k: i64, n: u32) -> u32 {
    k.rem_euclid(n as i64) as u32
}

impl GroupWord {
    pub fn reflection(k: i64, n: u32) -> Self {
        GroupWord {
            kind: Kind::Reflection,
            index: md(k, n),
        }
    }

    pub fn rotation(k: i64, n: u32) -> Self {
        GroupWord {
            kind: Kind::Rotation,
            index: md(k, n),
        }
    }

    pub fn identity() -> Self {
        GroupWord {
            kind: Kind::Rotation,
            index: 0,
        }
    }

    pub fn inverse(self, n: u32) -> Self {
        match self.kind {
            Kind::Reflection => self,
            Kind::Rotation => Self::rotation(-(self.index as i64), n),
        }
    }

    /// Every element of I_2(n): R_0..R_{n-1} then S_0..S_{n-1}.
    pub fn all(n: u32) -> Vec<Self> {
        (0..n as i64)
            .map(|k| Self::reflection(k, n))
            .chain((0..n as i64).map(|k| Self::rotation(k, n)))
            .collect()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Reflection => write!(f, "R{}", self.index),
            Kind::Rotation => write!(f, "S{}", self.index),
        }
    }
}

/// Product in I_2(n):
/// R_k R_l = S_{k-l}, S_k S_l = S_{k+l}, R_k S_l = R_{k-l}, S_k R_l = R_{k+l}.
pub fn group_mul(x: GroupWord, y: GroupWord, n: u32) -> GroupWord {
    let (k, l) = (x.index as i64, y.index as i64);
    match (x.kind, y.kind) {
        (Kind::Reflection, Kind::Reflection) => GroupWord::rotation(k - l, n),
        (Kind::Rotation, Kind::Rotation) => GroupWord::rotation(k + l, n),
        (Kind::Reflection, Kind::Rotation) => GroupWord::reflection(k - l, n),
        (Kind::Rotation, Kind::Reflection) => GroupWord::reflection(k + l, n),
    }
}

/// Element of the Fourier basis:
/// L_p = (1/n) Σ_k λ^{kp} R_k,  Q_p = (1/n) Σ_k λ^{-kp} S_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupBasis {
    L(u32),
    Q(u32),
}

impl GroupBasis {
    pub fn l(p: i64, n: u32) -> Self {
        GroupBasis::L(md(p, n))
    }

    pub fn q(p: i64, n: u32) -> Self {
        GroupBasis::Q(md(p, n))
    }

    pub fn index(self) -> u32 {
        match self {
            GroupBasis::L(p) | GroupBasis::Q(p) => p,
        }
    }

    pub fn is_l(self) -> bool {
        matches!(self, GroupBasis::L(_))
    }

    /// Exponent `c` with S_k g S_k⁻¹ = λ^{kc} g: 0 for Q_p, -2p for L_p.
    pub fn charge(self, n: u32) -> u32 {
        match self {
            GroupBasis::Q(_) => 0,
            GroupBasis::L(p) => md(-2 * p as i64, n),
        }
    }

    /// All 2n basis elements, Q_0..Q_{n-1} then L_0..L_{n-1}.
    pub fn all(n: u32) -> Vec<Self> {
        (0..n)
            .map(GroupBasis::Q)
            .chain((0..n).map(GroupBasis::L))
            .collect()
    }

    /// Dense index in `0..2n` matching [`GroupBasis::all`].
    pub fn dense_index(self, n: u32) -> usize {
        match self {
            GroupBasis::Q(p) => p as usize,
            GroupBasis::L(p) => (n + p) as usize,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let (head, rest) = s.split_at(1);
        let p: u32 = rest.parse().ok()?;
        match head {
            "L" => Some(GroupBasis::L(p)),
            "Q" => Some(GroupBasis::Q(p)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupBasis::L(p) => write!(f, "L{p}"),
            GroupBasis::Q(p) => write!(f, "Q{p}"),
        }
    }
}

/// Product of two Fourier basis elements:
/// L_k L_l = δ_{k+l} Q_l, L_k Q_l = δ_{k-l} L_l, Q_k L_l = δ_{k+l} L_l,
/// Q_k Q_l = δ_{k-l} Q_l.
pub fn lq_mul(x: GroupBasis, y: GroupBasis, n: u32) -> Option<GroupBasis> {
    use GroupBasis::*;
    let n = n as u64;
    let sum = |k: u32, l: u32| (k as u64 + l as u64) % n == 0;
    let diff = |k: u32, l: u32| k == l;
    match (x, y) {
        (L(k), L(l)) => sum(k, l).then_some(Q(l)),
        (L(k), Q(l)) => diff(k, l).then_some(L(l)),
        (Q(k), L(l)) => sum(k, l).then_some(L(l)),
        (Q(k), Q(l)) => diff(k, l).then_some(Q(l)),
    }
}

/// Sparse element of C[I_2(n)], stored in the Fourier basis.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    field: Arc<CycloField>,
    terms: BTreeMap<GroupBasis, CycloNumber>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.terms == other.terms
    }
}

impl Eq for GroupAlgebraElement {}

impl GroupAlgebraElement {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        GroupAlgebraElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: &Arc<CycloField>, b: GroupBasis) -> Self {
        let mut e = Self::zero(field);
        e.add_term(b, CycloNumber::one(field));
        e
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn add_term(&mut self, b: GroupBasis, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupBasis, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: GroupBasis) -> CycloNumber {
        self.terms
            .get(&b)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The group element `g` expressed in the Fourier basis:
    /// R_k = Σ_p λ^{-kp} L_p and S_k = Σ_p λ^{kp} Q_p.
    pub fn from_group_word(field: &Arc<CycloField>, g: GroupWord) -> Self {
        let n = field.n();
        let k = g.index as i64;
        let mut e = Self::zero(field);
        for p in 0..n as i64 {
            match g.kind {
                Kind::Reflection => {
                    e.add_term(GroupBasis::l(p, n), CycloNumber::lambda_pow(field, -k * p))
                }
                Kind::Rotation => {
                    e.add_term(GroupBasis::q(p, n), CycloNumber::lambda_pow(field, k * p))
                }
            }
        }
        e
    }

    pub fn from_rs(field: &Arc<CycloField>, rs: &BTreeMap<GroupWord, CycloNumber>) -> Self {
        let mut e = Self::zero(field);
        for (g, c) in rs {
            for (b, v) in Self::from_group_word(field, *g).terms {
                e.add_term(b, &v * c);
            }
        }
        e
    }

    /// Coefficients in the {R_k, S_k} basis.
    pub fn to_rs(&self) -> BTreeMap<GroupWord, CycloNumber> {
        let n = self.n();
        let inv_n = rat(1, n as i64);
        let mut out: BTreeMap<GroupWord, CycloNumber> = BTreeMap::new();
        for (b, c) in &self.terms {
            for k in 0..n as i64 {
                let (g, w) = match *b {
                    GroupBasis::L(p) => (
                        GroupWord::reflection(k, n),
                        CycloNumber::lambda_pow(&self.field, k * p as i64),
                    ),
                    GroupBasis::Q(p) => (
                        GroupWord::rotation(k, n),
                        CycloNumber::lambda_pow(&self.field, -k * p as i64),
                    ),
                };
                let v = (&w * c).scale(&inv_n);
                let slot = out
                    .entry(g)
                    .or_insert_with(|| CycloNumber::zero(&self.field));
                *slot += &v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if let Some(b) = lq_mul(*x, *y, self.n()) {
                    out.add_term(b, cx * cy);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self::zero(&self.field);
        for (b, v) in &self.terms {
            out.add_term(*b, v * c);
        }
        out
    }

    pub fn to_json(&self, basis: JsonBasis) -> GroupAlgebraJson {
        let coeffs = match basis {
            JsonBasis::LQ => self
                .terms
                .iter()
                .map(|(b, c)| (b.to_string(), c.clone()))
                .collect(),
            JsonBasis::RS => self
                .to_rs()
                .into_iter()
                .map(|(g, c)| (g.to_string(), c))
                .collect(),
        };
        GroupAlgebraJson {
            basis,
            n: self.n(),
            coeffs,
        }
    }

    pub fn from_json(json: &GroupAlgebraJson) -> Result<Self> {
        let field = CycloField::for_dihedral(json.n)?;
        let n = json.n;
        let mut e = Self::zero(&field);
        for (key, c) in &json.coeffs {
            if c.order() != field.order() {
                return Err(Error::usage(format!(
                    "coefficient of {key} has wrong order"
                )));
            }
            let bad = || Error::usage(format!("bad basis label {key:?}"));
            let (head, rest) = key.split_at(key.len().min(1));
            let idx: i64 = rest.parse().map_err(|_| bad())?;
            match (json.basis, head) {
                (JsonBasis::LQ, "L") => e.add_term(GroupBasis::l(idx, n), c.clone()),
                (JsonBasis::LQ, "Q") => e.add_term(GroupBasis::q(idx, n), c.clone()),
                (JsonBasis::RS, "R") | (JsonBasis::RS, "S") => {
                    let g = if head == "R" {
                        GroupWord::reflection(idx, n)
                    } else {
                        GroupWord::rotation(idx, n)
                    };
                    for (b, v) in Self::from_group_word(&field, g).terms {
                        e.add_term(b, &v * c);
                    }
                }
                _ => return Err(bad()),
            }
        }
        Ok(e)
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(b, c)| (b.to_string(), c)))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JsonBasis {
    LQ,
    RS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAlgebraJson {
    pub basis: JsonBasis,
    pub n: u32,
    pub coeffs: BTreeMap<String, CycloNumber>,
}

/// Values that can be scaled by cyclotomic numbers and added.
pub trait CycloModule: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, c: &CycloNumber);
}

impl CycloModule for CycloNumber {
    fn zero_like(&self) -> Self {
        CycloNumber::zero(self.field())
    }

    fn add_scaled(&mut self, other: &Self, c: &CycloNumber) {
        *self += &(other * c);
    }
}

/// Forward DFT over Z_n with kernel λ^{kp}: G_k = Σ_p λ^{kp} F_p.
pub fn fourier<V: CycloModule>(field: &Arc<CycloField>, values: &[V]) -> Result<Vec<V>> {
    transform(field, values, 1, false)
}

/// Inverse DFT: F_p = (1/n) Σ_k λ^{-kp} G_k.
pub fn inverse_fourier<V: CycloModule>(field: &Arc<CycloField>, values: &[V]) -> Result<Vec<V>> {
    transform(field, values, -1, true)
}

fn transform<V: CycloModule>(
    field: &Arc<CycloField>,
    values: &[V],
    sign: i64,
    normalize: bool,
) -> Result<Vec<V>> {
    let n = field.n() as usize;
    if values.len() != n {
        return Err(Error::usage(format!(
            "Fourier transform expects {n} values, got {}",
            values.len()
        )));
    }
    let scale = if normalize {
        CycloNumber::from_rational(field, rat(1, n as i64))
    } else {
        CycloNumber::one(field)
    };
    Ok((0..n as i64)
        .map(|k| {
            let mut acc = values[0].zero_like();
            for (p, v) in values.iter().enumerate() {
                let w = &CycloNumber::lambda_pow(field, sign * k * p as i64) * &scale;
                acc.add_scaled(v, &w);
            }
            acc
        })
        .collect())
}
