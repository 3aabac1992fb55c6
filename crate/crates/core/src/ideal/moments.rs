use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{singlet, AlgebraElement, Sra};
use crate::dihedral::GroupBasis;
use crate::error::{Error, Result};
use crate::exactnum::rational::format_rational;
use crate::exactnum::{CycloField, CycloNumber};
use crate::genfun::{singlet_series, solve_gk, GenFunSet};
use crate::trace::{trace_space, Kappa, KappaTrace, DEFAULT_SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    ClosedForm,
    BothAgree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub value: CycloNumber,
    pub provenance: Provenance,
}

/// m[p][s] = sp(𝔰^s Q_p) for s ≤ S, together with sp(L_0).
///
/// sp(𝔰^s L_p) is not stored: it is sp(L_0) for s = 0, p = 0 and zero
/// otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentTable {
    pub n: u32,
    pub nu: String,
    pub kappa: Kappa,
    pub s_max: u32,
    pub l0: CycloNumber,
    pub m: Vec<Vec<MomentEntry>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceSummary {
    pub brute_force: usize,
    pub closed_form: usize,
    pub both_agree: usize,
}

/// Closed-form moments when sp has the exponential form, indexed
/// [p][s]; p = 0 uses the even singlet series.
fn closed_moments(set: &GenFunSet, s_max: u32) -> Result<Vec<Vec<CycloNumber>>> {
    let series = singlet_series(set)?;
    let mut out = vec![series.moments(s_max)];
    for p in 1..set.n {
        out.push(set.moments(p, s_max));
    }
    Ok(out)
}

/// Brute-force moments through the solved trace space at degree 2·s_max.
fn brute_moments(sp: &KappaTrace, s_max: u32) -> Result<Vec<Vec<CycloNumber>>> {
    let h = Sra::new(sp.n(), sp.nu().clone())?;
    let space = trace_space(&h, sp.kappa(), (2 * s_max).max(2), DEFAULT_SLACK)?;
    let s = singlet(&h);
    (0..sp.n())
        .into_par_iter()
        .map(|p| {
            let mut x = AlgebraElement::group_basis(&h, GroupBasis::Q(p));
            let mut row = Vec::with_capacity(s_max as usize + 1);
            for k in 0..=s_max {
                row.push(space.evaluate(sp, &x)?);
                if k < s_max {
                    x = s.mul(&x)?;
                }
            }
            Ok(row)
        })
        .collect()
}

/// Moments up to `s_max`. Entries with 2s ≤ `brute_degree` are evaluated
/// by normal-form reduction; when the generating functions of `sp` have
/// closed forms every entry is also taken from them and the two must
/// agree. Entries beyond the brute-force range require the closed form.
pub fn build_moment_table(sp: &KappaTrace, s_max: u32, brute_degree: u32) -> Result<MomentTable> {
    let bf_max = (brute_degree / 2).min(s_max);
    let brute = if brute_degree >= 2 {
        Some(brute_moments(sp, bf_max)?)
    } else {
        None
    };
    let closed = match solve_gk(sp) {
        Ok(set) => Some(closed_moments(&set, s_max)?),
        Err(_) => None,
    };
    if closed.is_none() && (brute.is_none() || bf_max < s_max) {
        return Err(Error::Resource(format!(
            "moments up to s = {s_max} need degree {} by brute force and no closed form exists \
             (n = {}, nu = {}); raise the brute-force degree",
            2 * s_max,
            sp.n(),
            format_rational(sp.nu())
        )));
    }
    let mut m = Vec::with_capacity(sp.n() as usize);
    for p in 0..sp.n() as usize {
        let mut row = Vec::with_capacity(s_max as usize + 1);
        for s in 0..=s_max as usize {
            let b = brute.as_ref().and_then(|t| t[p].get(s));
            let c = closed.as_ref().map(|t| &t[p][s]);
            let entry = match (b, c) {
                (Some(b), Some(c)) if b == c => MomentEntry {
                    value: b.clone(),
                    provenance: Provenance::BothAgree,
                },
                (Some(b), Some(c)) => {
                    return Err(Error::mismatch(format!(
                        "sp(s^{s} Q_{p}): brute force gives {b}, closed form gives {c}"
                    )))
                }
                (Some(b), None) => MomentEntry {
                    value: b.clone(),
                    provenance: Provenance::BruteForce,
                },
                (None, Some(c)) => MomentEntry {
                    value: c.clone(),
                    provenance: Provenance::ClosedForm,
                },
                (None, None) => unreachable!("checked above"),
            };
            row.push(entry);
        }
        m.push(row);
    }
    Ok(MomentTable {
        n: sp.n(),
        nu: format_rational(sp.nu()),
        kappa: sp.kappa(),
        s_max,
        l0: sp.group_value(GroupBasis::L(0)),
        m,
    })
}

impl MomentTable {
    pub fn field(&self) -> &Arc<CycloField> {
        self.l0.field()
    }

    /// m[p][s], p taken mod n.
    pub fn get(&self, p: i64, s: u32) -> &CycloNumber {
        &self.m[p.rem_euclid(self.n as i64) as usize][s as usize].value
    }

    pub fn provenance_summary(&self) -> ProvenanceSummary {
        let mut out = ProvenanceSummary::default();
        for e in self.m.iter().flatten() {
            match e.provenance {
                Provenance::BruteForce => out.brute_force += 1,
                Provenance::ClosedForm => out.closed_form += 1,
                Provenance::BothAgree => out.both_agree += 1,
            }
        }
        out
    }

    /// Rows `p,s,value,provenance`.
    pub fn to_csv(&self, approx: bool) -> String {
        let mut out = String::from(if approx {
            "p,s,value,provenance,approx\n"
        } else {
            "p,s,value,provenance\n"
        });
        for (p, row) in self.m.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                let tag = serde_json::to_value(e.provenance).expect("plain enum");
                out.push_str(&format!("{p},{s},{},{}", e.value, tag.as_str().unwrap_or("")));
                if approx {
                    out.push_str(&format!(",{}", e.value.approx_string()));
                }
                out.push('\n');
            }
        }
        out
    }
}
