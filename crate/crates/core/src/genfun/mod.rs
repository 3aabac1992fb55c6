//! Closed-form generating functions of degenerate κ-traces.
//!
//! For μ = nν ∈ Z the Fourier transforms G_k of the generating functions
//! F_p are Laurent polynomials in y = κe^{it}; their Taylor data at t = 0
//! are the moments sp(𝔰^s Q_p).

mod laurent;
mod solve;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use laurent::LaurentPoly;
pub use solve::{
    has_exponential_form, solve_family, solve_gk, CoefficientEntry, CoefficientTable, GenFunSet,
};

use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::CycloNumber;
use crate::trace::{DegenerateFamily, FamilyKind};

/// One term c·cosh(t√(μ² - ℓ²)) with c = κ^μα⁰_0 for ℓ = 0 and
/// c = 2κ^{μ+ℓ}α⁰_ℓ for 0 < ℓ < μ, where α⁰_ℓ and α⁰_{-ℓ} both contribute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoshTerm {
    pub ell: i64,
    pub coeff: CycloNumber,
    /// μ² - ℓ².
    pub freq_sq: i64,
}

/// 𝓕(t) = sp(exp(t𝔰)Q_0) = α⁰_μ + Σ_{0≤ℓ<μ} c_ℓ cosh(t√(μ² - ℓ²)).
#[derive(Debug, Clone, Serialize)]
pub struct SingletSeries {
    pub mu: i64,
    pub constant: CycloNumber,
    pub terms: Vec<CoshTerm>,
    #[serde(skip)]
    f_even: LaurentPoly,
    #[serde(skip)]
    kappa: i64,
}

/// Splits F_0 into even and odd parts and checks the odd part against
/// -(κ^μ/2)(y^μ - y^{-μ}) sp(L_0), which forces α⁰_ℓ = α⁰_{-ℓ} for
/// |ℓ| < μ and α⁰_μ - α⁰_{-μ} = -sp(L_0).
pub fn singlet_series(set: &GenFunSet) -> Result<SingletSeries> {
    let field = set.field();
    let mu = set.mu;
    let kappa = set.kappa.sign();
    let kmu = set.kappa.pow(mu);
    let f0 = &set.f[0];
    let half = CycloNumber::from_rational(field, rat(1, 2));
    let f_even = f0.add(&f0.reflect()).scale(&half);
    let f_odd = f0.sub(&f0.reflect()).scale(&half);
    let want_odd = LaurentPoly::y_pow(field, mu, 1)
        .sub(&LaurentPoly::y_pow(field, -mu, 1))
        .scale(&set.l0.scale(&rat(-kmu, 2)));
    if f_odd != want_odd {
        return Err(Error::mismatch(format!(
            "odd part of F_0 is {f_odd}, expected {want_odd}"
        )));
    }
    let terms = (0..mu)
        .map(|ell| CoshTerm {
            ell,
            coeff: set
                .alpha(0, ell)
                .scale(&int(set.kappa.pow(mu + ell) * if ell == 0 { 1 } else { 2 })),
            freq_sq: mu * mu - ell * ell,
        })
        .filter(|t| !t.coeff.is_zero())
        .collect();
    Ok(SingletSeries {
        mu,
        constant: set.alpha(0, mu),
        terms,
        f_even,
        kappa,
    })
}

impl SingletSeries {
    /// a_{2s} = sp(𝔰^{2s}Q_0) from the cosh expansion.
    pub fn even_moment(&self, s: u32) -> CycloNumber {
        let mut acc = if s == 0 {
            self.constant.clone()
        } else {
            CycloNumber::zero(self.constant.field())
        };
        for t in &self.terms {
            let f = num_traits::pow(Rational::from_integer(t.freq_sq.into()), s as usize);
            acc += &t.coeff.scale(&f);
        }
        acc
    }

    /// a_{2s} = (d²/dt² + μ²)^s F_even at t = 0.
    pub fn even_moment_from_f_even(&self, s: u32) -> CycloNumber {
        let mu_sq = CycloNumber::from_int(self.constant.field(), self.mu * self.mu);
        let mut p = self.f_even.clone();
        for _ in 0..s {
            p = p.d_t().d_t().add(&p.scale(&mu_sq));
        }
        p.eval_sign(self.kappa)
    }

    /// sp(𝔰^s Q_0) for s = 0..=s_max; odd moments vanish.
    pub fn moments(&self, s_max: u32) -> Vec<CycloNumber> {
        (0..=s_max)
            .map(|s| {
                if s % 2 == 1 {
                    CycloNumber::zero(self.constant.field())
                } else {
                    self.even_moment(s / 2)
                }
            })
            .collect()
    }
}

/// Which degenerate κ-traces exist at a given ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// ν = z/n with z ∉ nZ: tr_z and str_z.
    Degenerate { z: i64 },
    /// ν = z + 1/2: str_{1/2}.
    SupertraceHalf { z: i64 },
    /// No degenerate trace or supertrace is known.
    NoneKnown,
}

impl Classification {
    pub fn families(&self, tau: &Rational) -> Vec<DegenerateFamily> {
        match *self {
            Classification::Degenerate { z } => vec![
                DegenerateFamily::new(FamilyKind::TraceZ, z, tau.clone()),
                DegenerateFamily::new(FamilyKind::SuperTraceZ, z, tau.clone()),
            ],
            Classification::SupertraceHalf { z } => {
                vec![DegenerateFamily::new(FamilyKind::SuperTraceHalf, z, tau.clone())]
            }
            Classification::NoneKnown => Vec::new(),
        }
    }
}

pub fn classify_nu(n: u32, nu: &Rational) -> Result<Classification> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::usage(format!("n must be odd and at least 3, got {n}")));
    }
    let mu = nu * int(n as i64);
    if mu.is_integer() {
        let z = mu
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Resource("z does not fit in 64 bits".into()))?;
        if z.rem_euclid(n as i64) != 0 {
            return Ok(Classification::Degenerate { z });
        }
        return Ok(Classification::NoneKnown);
    }
    let shifted = nu - rat(1, 2);
    if shifted.is_integer() {
        let z = shifted
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Resource("z does not fit in 64 bits".into()))?;
        return Ok(Classification::SupertraceHalf { z });
    }
    Ok(Classification::NoneKnown)
}
