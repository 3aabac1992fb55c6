use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dihedral::{GroupAlgebraElement, GroupBasis, GroupWord, Kind};
use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, int, rat, Rational};
use crate::exactnum::{real_cos_sin, CycloField, CycloNumber};

/// Sign in the κ-commutator fg - κ^{ε(f)ε(g)} gf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kappa {
    /// κ = +1: traces.
    Plus,
    /// κ = -1: supertraces.
    Minus,
}

impl Kappa {
    pub fn sign(self) -> i64 {
        match self {
            Kappa::Plus => 1,
            Kappa::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Kappa::Plus),
            -1 => Ok(Kappa::Minus),
            _ => Err(Error::usage(format!("kappa must be +1 or -1, got {s}"))),
        }
    }

    /// κ^e.
    pub fn pow(self, e: i64) -> i64 {
        if self == Kappa::Minus && e.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kappa::Plus => "+1",
            Kappa::Minus => "-1",
        })
    }
}

/// Values of a linear functional on the Fourier basis of C[I_2(n)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFunctional {
    field: Arc<CycloField>,
    values: BTreeMap<GroupBasis, CycloNumber>,
}

impl GroupFunctional {
    pub fn new(field: &Arc<CycloField>, values: BTreeMap<GroupBasis, CycloNumber>) -> Self {
        GroupFunctional {
            field: field.clone(),
            values,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn get(&self, g: GroupBasis) -> CycloNumber {
        self.values
            .get(&g)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(&self.field))
    }

    pub fn on_element(&self, x: &GroupAlgebraElement) -> CycloNumber {
        let mut acc = CycloNumber::zero(&self.field);
        for (b, c) in x.terms() {
            acc += &(c * &self.get(*b));
        }
        acc
    }

    pub fn on_word(&self, g: GroupWord) -> CycloNumber {
        self.on_element(&GroupAlgebraElement::from_group_word(&self.field, g))
    }

    pub fn values(&self) -> &BTreeMap<GroupBasis, CycloNumber> {
        &self.values
    }

    pub fn add_scaled(&mut self, other: &Self, c: &CycloNumber) {
        for (g, v) in &other.values {
            let slot = self
                .values
                .entry(*g)
                .or_insert_with(|| CycloNumber::zero(&self.field));
            *slot += &(v * c);
        }
    }
}

/// A κ-trace on H_{1,ν}(I_2(n)) given by its free parameters:
/// s_k = tr(S_k) for k = 1..m when κ = +1, u_k = str(S_k) for k = 0..m
/// when κ = -1 (n = 2m + 1). Indices fold as s_{n-k} = s_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaTrace {
    n: u32,
    nu: Rational,
    kappa: Kappa,
    field: Arc<CycloField>,
    params: Vec<CycloNumber>,
}

impl KappaTrace {
    pub fn new(n: u32, nu: Rational, kappa: Kappa, params: Vec<CycloNumber>) -> Result<Self> {
        let field = CycloField::for_dihedral(n)?;
        let m = (n as usize - 1) / 2;
        let want = match kappa {
            Kappa::Plus => m,
            Kappa::Minus => m + 1,
        };
        if params.len() != want {
            return Err(Error::usage(format!(
                "kappa = {kappa} with n = {n} takes {want} parameters, got {}",
                params.len()
            )));
        }
        if params.iter().any(|p| p.order() != field.order()) {
            return Err(Error::usage("parameter lies in the wrong cyclotomic field"));
        }
        Ok(KappaTrace {
            n,
            nu,
            kappa,
            field,
            params,
        })
    }

    pub fn from_rationals(n: u32, nu: Rational, kappa: Kappa, params: &[Rational]) -> Result<Self> {
        let field = CycloField::for_dihedral(n)?;
        let params = params
            .iter()
            .map(|r| CycloNumber::from_rational(&field, r.clone()))
            .collect();
        Self::new(n, nu, kappa, params)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        (self.n - 1) / 2
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn mu(&self) -> Rational {
        &self.nu * int(self.n as i64)
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn params(&self) -> &[CycloNumber] {
        &self.params
    }

    fn fold(&self, k: i64) -> usize {
        let k = k.rem_euclid(self.n as i64) as u32;
        k.min(self.n - k) as usize
    }

    /// X^{tr} = Σ_{r=1}^{n-1} sin²(πr/n) tr(S_r).
    pub fn x_tr(&self) -> CycloNumber {
        let mut acc = CycloNumber::zero(&self.field);
        if self.kappa == Kappa::Plus {
            for r in 1..self.n as i64 {
                acc +=
                    &(&real_cos_sin(&self.field, r).sin_sq_half * &self.params[self.fold(r) - 1]);
            }
        }
        acc
    }

    /// Y^{str} = Σ_{r=0}^{n-1} cos²(πr/n) str(S_r).
    pub fn y_str(&self) -> CycloNumber {
        let mut acc = CycloNumber::zero(&self.field);
        if self.kappa == Kappa::Minus {
            for r in 0..self.n as i64 {
                acc += &(&real_cos_sin(&self.field, r).cos_sq_half * &self.params[self.fold(r)]);
            }
        }
        acc
    }

    /// sp(S_k); for traces tr(S_0) = 2ν²n X^{tr}.
    pub fn rotation_value(&self, k: i64) -> CycloNumber {
        let k = self.fold(k);
        match self.kappa {
            Kappa::Minus => self.params[k].clone(),
            Kappa::Plus if k > 0 => self.params[k - 1].clone(),
            Kappa::Plus => {
                let c = &self.nu * &self.nu * int(2 * self.n as i64);
                self.x_tr().scale(&c)
            }
        }
    }

    /// sp(R_k) = -(2μ/n)((1+κ)/2 X^{tr} + (1-κ)/2 Y^{str}), the same for all k.
    pub fn reflection_value(&self) -> CycloNumber {
        let c = -(self.mu() * rat(2, self.n as i64));
        match self.kappa {
            Kappa::Plus => self.x_tr().scale(&c),
            Kappa::Minus => self.y_str().scale(&c),
        }
    }

    pub fn group_word_value(&self, g: GroupWord) -> CycloNumber {
        match g.kind {
            Kind::Rotation => self.rotation_value(g.index as i64),
            Kind::Reflection => self.reflection_value(),
        }
    }

    /// sp(Q_p) = (1/n)Σ_k λ^{-kp} sp(S_k) and sp(L_p) = δ_{p0} sp(R_0).
    pub fn group_value(&self, g: GroupBasis) -> CycloNumber {
        let inv_n = rat(1, self.n as i64);
        match g {
            GroupBasis::L(0) => self.reflection_value(),
            GroupBasis::L(_) => CycloNumber::zero(&self.field),
            GroupBasis::Q(p) => {
                let mut acc = CycloNumber::zero(&self.field);
                for k in 0..self.n as i64 {
                    acc += &(&CycloNumber::lambda_pow(&self.field, -k * p as i64)
                        * &self.rotation_value(k));
                }
                acc.scale(&inv_n)
            }
        }
    }

    pub fn group_functional(&self) -> GroupFunctional {
        GroupFunctional::new(
            &self.field,
            GroupBasis::all(self.n)
                .into_iter()
                .map(|g| (g, self.group_value(g)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.params.iter().all(CycloNumber::is_zero)
    }

    pub fn report(&self) -> GroupValueReport {
        let words = GroupWord::all(self.n)
            .into_iter()
            .map(|g| (g.to_string(), self.group_word_value(g)))
            .collect();
        let basis = GroupBasis::all(self.n)
            .into_iter()
            .map(|g| (g.to_string(), self.group_value(g)))
            .collect();
        GroupValueReport {
            n: self.n,
            nu: format_rational(&self.nu),
            kappa: self.kappa,
            params: self.params.clone(),
            x_tr: (self.kappa == Kappa::Plus).then(|| self.x_tr()),
            y_str: (self.kappa == Kappa::Minus).then(|| self.y_str()),
            group_words: words,
            fourier_basis: basis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupValueReport {
    pub n: u32,
    pub nu: String,
    pub kappa: Kappa,
    pub params: Vec<CycloNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_tr: Option<CycloNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_str: Option<CycloNumber>,
    pub group_words: BTreeMap<String, CycloNumber>,
    pub fourier_basis: BTreeMap<String, CycloNumber>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// tr_z at ν = z/n.
    TraceZ,
    /// str_z at ν = z/n.
    SuperTraceZ,
    /// str_{1/2} at ν = z + 1/2.
    SuperTraceHalf,
}

/// One of the one-parameter families of degenerate κ-traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateFamily {
    pub kind: FamilyKind,
    pub z: i64,
    #[serde(with = "crate::exactnum::rational::serde_str")]
    pub tau: Rational,
}

impl DegenerateFamily {
    pub fn new(kind: FamilyKind, z: i64, tau: Rational) -> Self {
        DegenerateFamily { kind, z, tau }
    }

    pub fn kappa(&self) -> Kappa {
        match self.kind {
            FamilyKind::TraceZ => Kappa::Plus,
            _ => Kappa::Minus,
        }
    }

    pub fn nu(&self, n: u32) -> Rational {
        match self.kind {
            FamilyKind::SuperTraceHalf => int(self.z) + rat(1, 2),
            _ => rat(self.z, n as i64),
        }
    }

    /// μ = nν.
    pub fn mu(&self, n: u32) -> Rational {
        self.nu(n) * int(n as i64)
    }
}

/// Parameters of the degenerate family:
/// tr_z(S_k) = τ(1 - cos(2πkz/n)) / (n sin²(πk/n)),
/// str_z(S_k) = τ(1 - (-1)^z cos(2πkz/n)) / (n cos²(πk/n)),
/// str_{1/2}(S_k) = τ / (n cos²(πk/n)).
pub fn degenerate_values(n: u32, fam: &DegenerateFamily) -> Result<KappaTrace> {
    let field = CycloField::for_dihedral(n)?;
    if fam.kind != FamilyKind::SuperTraceHalf && fam.z.rem_euclid(n as i64) == 0 {
        return Err(Error::usage(format!(
            "z = {} is divisible by n = {n}; the family is undefined there",
            fam.z
        )));
    }
    let m = (n as i64 - 1) / 2;
    let one = CycloNumber::one(&field);
    let tau_n = rat(1, n as i64) * &fam.tau;
    let ks: Vec<i64> = match fam.kind {
        FamilyKind::TraceZ => (1..=m).collect(),
        _ => (0..=m).collect(),
    };
    let mut params = Vec::with_capacity(ks.len());
    for k in ks {
        let t = real_cos_sin(&field, k);
        let value = match fam.kind {
            FamilyKind::TraceZ => {
                let c = real_cos_sin(&field, k * fam.z).cos_full;
                (&one - &c).checked_div(&t.sin_sq_half)?
            }
            FamilyKind::SuperTraceZ => {
                let c = real_cos_sin(&field, k * fam.z).cos_full;
                let sign = if fam.z.rem_euclid(2) == 1 { -1 } else { 1 };
                (&one - &c.scale(&int(sign))).checked_div(&t.cos_sq_half)?
            }
            FamilyKind::SuperTraceHalf => one.checked_div(&t.cos_sq_half)?,
        };
        params.push(value.scale(&tau_n));
    }
    KappaTrace::new(n, fam.nu(n), fam.kappa(), params)
}
