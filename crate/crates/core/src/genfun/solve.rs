use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::{CycloField, CycloNumber};
use crate::trace::{degenerate_values, DegenerateFamily, IdentityCheck, Kappa, KappaTrace};

/// Closed-form generating functions of a κ-trace at integer μ:
/// G_k = Σ_p λ^{kp}F_p and F_p, as Laurent polynomials in y = κe^{it}.
///
/// F_p(t) = sp(exp(t𝔰)Q_p) for p ≠ 0 and F_0(t) = sp(exp(t(𝔰 - iμL_0))Q_0).
#[derive(Debug, Clone, Serialize)]
pub struct GenFunSet {
    pub n: u32,
    /// |μ|; the functions are even in μ.
    pub mu: i64,
    pub kappa: Kappa,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(with = "opt_rational")]
    pub tau: Option<Rational>,
    /// sp(L_0), negated when μ < 0: the automorphism L_p ↦ -L_p exchanges
    /// ν and -ν and fixes 𝔰, Q_p and every F_p.
    pub l0: CycloNumber,
    /// sp(S_k), k = 0..n-1.
    pub s_values: Vec<CycloNumber>,
    pub g: Vec<LaurentPoly>,
    pub f: Vec<LaurentPoly>,
    #[serde(skip)]
    field: Option<Arc<CycloField>>,
}

mod opt_rational {
    use crate::exactnum::rational::{format_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(
        v: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

fn integer_mu(sp: &KappaTrace) -> Result<i64> {
    let mu = sp.mu();
    if !mu.is_integer() {
        return Err(Error::usage(format!(
            "closed forms need an integer mu = n*nu, got {}",
            crate::exactnum::format_rational(&mu)
        )));
    }
    let v = mu
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Resource("mu does not fit in 64 bits".into()))?;
    if v == 0 {
        return Err(Error::usage("closed forms need mu != 0"));
    }
    if v.abs() > 10_000 {
        return Err(Error::Resource(format!("|mu| = {} is too large", v.abs())));
    }
    Ok(v)
}

/// Solves the Fourier-transformed system for G_k:
/// G_k = λ^k y g_k / (y - λ^k)², with
/// g_k = ((2/μ)(cos μt - 1) + 2iλ^{-k}(λ^k - y) sin μt) sp(L_0)
///       + κλ^{-k}(κ - λ^k)² sp(S_k),
/// and returns F_p = (1/n) Σ_k λ^{-kp} G_k.
///
/// Fails when some G_k is not a Laurent polynomial, which happens
/// exactly when `sp` is not one of the degenerate functionals.
pub fn solve_gk(sp: &KappaTrace) -> Result<GenFunSet> {
    let mu = integer_mu(sp)?;
    let n = sp.n();
    let field = sp.field().clone();
    let kappa = sp.kappa().sign();
    let kmu = sp.kappa().pow(mu);
    let l0 = sp.reflection_value();
    let s_values: Vec<CycloNumber> = (0..n as i64).map(|k| sp.rotation_value(k)).collect();
    let c = |v: i64| CycloNumber::from_int(&field, v);
    let y = |e: i64, v: i64| LaurentPoly::y_pow(&field, e, v);
    // cos μt = κ^μ(y^μ + y^{-μ})/2, 2i sin μt = κ^μ(y^μ - y^{-μ})
    let cos_mu = y(mu, kmu).add(&y(-mu, kmu)).scale(&c(1).scale(&rat(1, 2)));
    let two_i_sin = y(mu, kmu).sub(&y(-mu, kmu));
    let mut g = Vec::with_capacity(n as usize);
    for k in 0..n as i64 {
        let lam = CycloNumber::lambda_pow(&field, k);
        let lam_inv = CycloNumber::lambda_pow(&field, -k);
        let first = cos_mu
            .sub(&LaurentPoly::constant(c(1)))
            .scale(&c(2).scale(&rat(1, mu)));
        // λ^{-k}(λ^k - y) = 1 - λ^{-k} y
        let lin = LaurentPoly::constant(c(1)).sub(&LaurentPoly::monomial(&field, 1, lam_inv.clone()));
        let bracket = first.add(&lin.mul(&two_i_sin)).scale(&l0);
        let kl = &c(kappa) - &lam;
        let group = &(&c(kappa) * &lam_inv) * &(&kl * &kl);
        let gk = bracket.add(&LaurentPoly::constant(&group * &s_values[k as usize]));
        let num = LaurentPoly::monomial(&field, 1, lam.clone()).mul(&gk);
        let gk = num.div_exact_sq(&lam).map_err(|e| {
            Error::mismatch(format!(
                "G_{k} is not a Laurent polynomial, so the functional is not degenerate: {e}"
            ))
        })?;
        if let (Some(lo), Some(hi)) = (gk.min_exp(), gk.max_exp()) {
            if lo < 1 - mu.abs() || hi > mu.abs() {
                return Err(Error::internal(format!(
                    "G_{k} has exponents in [{lo}, {hi}], outside [{}, {}]",
                    1 - mu.abs(),
                    mu.abs()
                )));
            }
        }
        g.push(gk);
    }
    let inv_n = rat(1, n as i64);
    let f = (0..n as i64)
        .map(|p| {
            let mut acc = LaurentPoly::zero(&field);
            for (k, gk) in g.iter().enumerate() {
                acc = acc.add(&gk.scale(&CycloNumber::lambda_pow(&field, -(k as i64) * p)));
            }
            acc.scale(&CycloNumber::from_rational(&field, inv_n.clone()))
        })
        .collect();
    Ok(GenFunSet {
        n,
        mu: mu.abs(),
        kappa: sp.kappa(),
        tau: None,
        l0: l0.scale(&int(mu.signum())),
        s_values,
        g,
        f,
        field: Some(field),
    })
}

/// [`solve_gk`] for a degenerate family tr_z or str_z, with τ recorded.
/// Negative z is folded to |z|.
pub fn solve_family(n: u32, fam: &DegenerateFamily) -> Result<GenFunSet> {
    let mut fam = fam.clone();
    fam.z = fam.z.abs();
    let sp = degenerate_values(n, &fam)?;
    let mut set = solve_gk(&sp)?;
    set.tau = Some(fam.tau.clone());
    Ok(set)
}

/// One coefficient of a Laurent table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub index: u32,
    pub ell: i64,
    pub value: CycloNumber,
}

/// β^k_ℓ and α^p_ℓ with G_k = κ^μ Σ β^k_ℓ y^ℓ and F_p = κ^μ Σ α^p_ℓ y^ℓ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n: u32,
    pub mu: i64,
    pub kappa: Kappa,
    pub beta: Vec<CoefficientEntry>,
    pub alpha: Vec<CoefficientEntry>,
}

impl CoefficientTable {
    /// Rows `table,index,ell,value` with exact values in the power basis
    /// of ζ_{4n}; `approx` appends a decimal rendering.
    pub fn to_csv(&self, approx: bool) -> String {
        let mut out = String::from(if approx {
            "table,index,ell,value,approx\n"
        } else {
            "table,index,ell,value\n"
        });
        for (name, rows) in [("beta", &self.beta), ("alpha", &self.alpha)] {
            for e in rows {
                out.push_str(&format!("{name},{},{},{}", e.index, e.ell, e.value));
                if approx {
                    out.push_str(&format!(",{}", e.value.approx_string()));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Same entries ignoring κ: the tables for κ = ±1 are expected to agree.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.n == other.n
            && self.mu == other.mu
            && self.beta == other.beta
            && self.alpha == other.alpha
    }
}

impl GenFunSet {
    pub fn field(&self) -> &Arc<CycloField> {
        self.field.as_ref().expect("constructed by the solver")
    }

    fn kmu(&self) -> i64 {
        self.kappa.pow(self.mu)
    }

    /// β^k_ℓ.
    pub fn beta(&self, k: u32, ell: i64) -> CycloNumber {
        self.g[k as usize]
            .coeff(ell)
            .scale(&int(self.kmu()))
    }

    /// α^p_ℓ.
    pub fn alpha(&self, p: u32, ell: i64) -> CycloNumber {
        self.f[p as usize]
            .coeff(ell)
            .scale(&int(self.kmu()))
    }

    pub fn coefficient_table(&self) -> CoefficientTable {
        let mu = self.mu;
        let mut beta = Vec::new();
        let mut alpha = Vec::new();
        for k in 0..self.n {
            for ell in (1 - mu..=mu).rev() {
                beta.push(CoefficientEntry {
                    index: k,
                    ell,
                    value: self.beta(k, ell),
                });
            }
        }
        for p in 0..self.n {
            for ell in (-mu..=mu).rev() {
                alpha.push(CoefficientEntry {
                    index: p,
                    ell,
                    value: self.alpha(p, ell),
                });
            }
        }
        CoefficientTable {
            n: self.n,
            mu,
            kappa: self.kappa,
            beta,
            alpha,
        }
    }

    /// d^s F_p/dt^s at t = 0 for s = 0..=s_max: sp(𝔰^s Q_p) for p ≠ 0 and
    /// sp((𝔰 - iμL_0)^s Q_0) for p = 0.
    pub fn moments(&self, p: u32, s_max: u32) -> Vec<CycloNumber> {
        (0..=s_max)
            .map(|s| self.f[p as usize].t_derivative_at_zero(self.kappa.sign(), s))
            .collect()
    }

    /// (λ^k - y) dG_k/dt - i(λ^k + y) G_k - 2iκλ^k d/dt(e^{it} Δ̃_k) with
    /// e^{it} Δ̃_k = κ y λ^{-k} sin(μt) sp(L_0); zero for a solution.
    pub fn ode_residual(&self, k: u32) -> LaurentPoly {
        let field = self.field();
        let kappa = self.kappa.sign();
        let lam = CycloNumber::lambda_pow(field, k as i64);
        let lam_c = LaurentPoly::constant(lam.clone());
        let y = LaurentPoly::y_pow(field, 1, 1);
        let i = CycloNumber::i(field);
        let gk = &self.g[k as usize];
        let kmu = self.kmu();
        // sin μt = κ^μ (y^μ - y^{-μ}) / (2i)
        let sin_mu = LaurentPoly::y_pow(field, self.mu, kmu)
            .sub(&LaurentPoly::y_pow(field, -self.mu, kmu))
            .scale(&(&CycloNumber::from_int(field, 2) * &i).inv().expect("2i != 0"));
        let e_delta = y
            .mul(&sin_mu)
            .scale(&(&CycloNumber::lambda_pow(field, -(k as i64)) * &self.l0))
            .scale(&CycloNumber::from_int(field, kappa));
        let lhs = lam_c.sub(&y).mul(&gk.d_t());
        let rhs = lam_c
            .add(&y)
            .mul(gk)
            .scale(&i)
            .add(&e_delta.d_t().scale(&(&(&i * &lam) * &CycloNumber::from_int(field, 2 * kappa))));
        lhs.sub(&rhs)
    }

    /// G_k(t = 0) = sp(S_k); for κ = +1, k = 0 this is the limit value.
    pub fn initial_value(&self, k: u32) -> CycloNumber {
        self.g[k as usize].eval_sign(self.kappa.sign())
    }

    /// Every exact identity the closed forms must satisfy.
    pub fn identities(&self) -> Vec<IdentityCheck> {
        let field = self.field();
        let n = self.n;
        let mu = self.mu;
        let zero = CycloNumber::zero(field);
        let mut out = Vec::new();
        for k in 0..n {
            out.push(IdentityCheck::new(
                format!("ODE residual for G_{k} vanishes"),
                CycloNumber::from_int(field, self.ode_residual(k).terms().len() as i64),
                zero.clone(),
            ));
            out.push(IdentityCheck::new(
                format!("G_{k}(0) = sp(S{k})"),
                self.initial_value(k),
                self.s_values[k as usize].clone(),
            ));
        }
        if self.kappa == Kappa::Plus {
            out.push(IdentityCheck::new(
                "lim G_0 = -mu tr(L0)",
                self.initial_value(0),
                self.l0.scale(&int(-mu)),
            ));
        }
        if let Some(tau) = &self.tau {
            let want = CycloNumber::from_rational(field, tau * rat(2 * mu, n as i64));
            for k in 0..n {
                out.push(IdentityCheck::new(
                    format!("beta^{k}_mu = 2 tau mu / n"),
                    self.beta(k, mu),
                    want.clone(),
                ));
            }
            out.push(IdentityCheck::new(
                "alpha^0_mu = 2 tau mu / n",
                self.alpha(0, mu),
                want,
            ));
        }
        out.push(IdentityCheck::new(
            "alpha^0_{-mu} = 0",
            self.alpha(0, -mu),
            zero.clone(),
        ));
        for ell in 1..mu {
            out.push(IdentityCheck::new(
                format!("alpha^0_{ell} = alpha^0_{}", -ell),
                self.alpha(0, ell),
                self.alpha(0, -ell),
            ));
        }
        out.push(IdentityCheck::new(
            "alpha^0_mu - alpha^0_{-mu} = -sp(L0)",
            &self.alpha(0, mu) - &self.alpha(0, -mu),
            -self.l0.clone(),
        ));
        out
    }

    /// F_p = 0 as a Laurent polynomial.
    pub fn vanishes(&self, p: u32) -> bool {
        self.f[p as usize].is_zero()
    }

    /// Every F_p is an exponential polynomial Σ_ℓ c_ℓ e^{iℓt} with
    /// |ℓ| ≤ μ, and every G_k has exponents in [1 - μ, μ].
    pub fn degeneracy_form_check(&self) -> bool {
        let within = |p: &LaurentPoly, lo: i64, hi: i64| {
            p.min_exp().is_none_or(|e| e >= lo) && p.max_exp().is_none_or(|e| e <= hi)
        };
        self.f.iter().all(|p| within(p, -self.mu, self.mu))
            && self.g.iter().all(|p| within(p, 1 - self.mu, self.mu))
    }
}

/// Whether the generating functions of `sp` have the exponential-polynomial
/// form; generic ν gives meromorphic G_k and the answer is `false`.
pub fn has_exponential_form(sp: &KappaTrace) -> bool {
    solve_gk(sp).is_ok_and(|s| s.degeneracy_form_check())
}
