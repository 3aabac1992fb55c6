use serde::Serialize;

use super::gram::{build_gram, BasisLabel, Generator, H0Gram};
use super::moments::{build_moment_table, MomentTable, ProvenanceSummary};
use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, Rational};
use crate::exactnum::{CycloNumber, Poly};
use crate::genfun::{solve_gk, GenFunSet};
use crate::trace::{degenerate_values, DegenerateFamily, FamilyKind, Kappa, KappaTrace};

/// Characteristic polynomial of the lowest-order operator killing F_p:
/// ∏(x - iℓ) over the support of F_p for p ≠ 0 and
/// x·∏_{0≤ℓ<μ}(x² - μ² + ℓ²) over the support of α⁰ for p = 0.
pub fn predicted_annihilator(set: &GenFunSet, p: u32) -> Poly {
    let field = set.field();
    let x = Poly::x(field);
    if p != 0 {
        let i = CycloNumber::i(field);
        let roots: Vec<CycloNumber> = set.f[p as usize]
            .terms()
            .keys()
            .map(|&ell| i.scale(&Rational::from_integer(ell.into())))
            .collect();
        return Poly::from_roots(field, &roots);
    }
    let mu = set.mu;
    let mut out = x.clone();
    for ell in 0..mu {
        if set.alpha(0, ell).is_zero() {
            continue;
        }
        let c = Poly::constant(CycloNumber::from_int(field, mu * mu - ell * ell));
        out = &out * &(&(&x * &x) - &c);
    }
    out
}

/// Annihilator φ_p⁰ of Q_p together with that of L_{-p}.
#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorPair {
    pub p: u32,
    pub q: Poly,
    pub l_minus_p: Poly,
    /// Rank of the rows 𝔰^j Q_p; equals deg φ_p⁰ when J ≥ deg φ_p⁰.
    pub row_rank: usize,
}

pub fn annihilators(gram: &H0Gram) -> Result<Vec<AnnihilatorPair>> {
    let n = gram.n;
    (0..n)
        .map(|p| {
            Ok(AnnihilatorPair {
                p,
                q: gram.minimal_annihilator(Generator::Q, p)?,
                l_minus_p: gram.minimal_annihilator(Generator::L, (n - p) % n)?,
                row_rank: gram.row_block_rank(Generator::Q, p)?,
            })
        })
        .collect()
}

/// A kernel element φ_p⁰(𝔰)Q_p and a basis element outside the kernel.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub p: u32,
    pub kernel_element: Poly,
    pub degree: usize,
    pub in_kernel: bool,
    pub non_member: Option<String>,
    pub pairs_with: Option<String>,
    pub pairing: Option<CycloNumber>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub witnesses: Vec<Witness>,
    /// S_0 = Σ Q_p pairs nontrivially with some basis element.
    pub unit_outside_kernel: bool,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.unit_outside_kernel
            && self
                .witnesses
                .iter()
                .all(|w| w.in_kernel && w.non_member.is_some())
    }
}

pub fn nonzero_ideal_witness(gram: &H0Gram, phis: &[AnnihilatorPair]) -> Result<WitnessReport> {
    let mut witnesses = Vec::new();
    for a in phis {
        let v = gram.poly_vector(&a.q, Generator::Q, a.p);
        let in_kernel = !v.is_empty() && gram.kernel_membership(&v)?;
        let mut non_member = None;
        'search: for x in &gram.labels {
            for y in &gram.labels {
                let g = gram.get(x, y).expect("labels are in range");
                if !g.is_zero() {
                    non_member = Some((x.to_string(), y.to_string(), g.clone()));
                    break 'search;
                }
            }
        }
        let (non_member, pairs_with, pairing) = match non_member {
            Some((x, y, g)) => (Some(x), Some(y), Some(g)),
            None => (None, None, None),
        };
        witnesses.push(Witness {
            p: a.p,
            degree: a.q.degree().unwrap_or(0),
            kernel_element: a.q.clone(),
            in_kernel,
            non_member,
            pairs_with,
            pairing,
        });
    }
    let field = gram.field();
    let unit: Vec<(BasisLabel, CycloNumber)> = (0..gram.n)
        .map(|p| {
            (
                BasisLabel {
                    generator: Generator::Q,
                    p,
                    power: 0,
                },
                CycloNumber::one(field),
            )
        })
        .collect();
    Ok(WitnessReport {
        witnesses,
        unit_outside_kernel: !gram.kernel_membership(&unit)?,
    })
}

/// Everything computed for one κ.
#[derive(Debug, Clone)]
pub struct SideData {
    pub trace: KappaTrace,
    pub moments: MomentTable,
    pub gram: H0Gram,
    pub phis: Vec<AnnihilatorPair>,
    pub closed: GenFunSet,
}

pub fn side(sp: KappaTrace, j_max: u32, brute_degree: u32) -> Result<SideData> {
    let moments = build_moment_table(&sp, 2 * j_max, brute_degree)?;
    let gram = build_gram(&moments, j_max)?;
    let phis = annihilators(&gram)?;
    let closed = solve_gk(&sp)?;
    Ok(SideData {
        trace: sp,
        moments,
        gram,
        phis,
        closed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PerP {
    pub p: u32,
    pub phi_plus: Poly,
    pub phi_minus: Poly,
    pub equal: bool,
    pub predicted: Poly,
    pub matches_prediction: bool,
    /// Annihilators of Q_p and L_{-p} agree for both κ.
    pub q_equals_l_minus_p: bool,
    /// Row ranks of the Q_p rows equal deg φ_p⁰ for both κ.
    pub rank_consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Differ,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub p: u32,
    pub phi_plus: Poly,
    pub phi_minus: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentProvenance {
    pub plus: ProvenanceSummary,
    pub minus: ProvenanceSummary,
    pub brute_force_degree: u32,
}

/// Certificate that the generators of I^{+1} ∩ H⁰ and I^{-1} ∩ H⁰ agree at
/// truncation J.
#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorCertificate {
    pub n: u32,
    pub z: i64,
    #[serde(rename = "J")]
    pub j_max: u32,
    pub tau: String,
    pub per_p: Vec<PerP>,
    pub verdict: Verdict,
    pub first_mismatch: Option<Mismatch>,
    /// The α/β tables of tr_z and str_z coincide entrywise.
    pub tables_coincide: bool,
    pub witnesses_plus: WitnessReport,
    pub witnesses_minus: WitnessReport,
    pub gram_symmetric: bool,
    pub moment_provenance: MomentProvenance,
}

impl AnnihilatorCertificate {
    /// Verdict equal and every auxiliary check holds.
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::Equal
            && self.tables_coincide
            && self.gram_symmetric
            && self.witnesses_plus.holds()
            && self.witnesses_minus.holds()
            && self.per_p.iter().all(|r| {
                r.matches_prediction && r.q_equals_l_minus_p && r.rank_consistent
            })
    }
}

/// Default truncation 2μ + 3.
pub fn default_j(z: i64) -> u32 {
    2 * z.unsigned_abs() as u32 + 3
}

/// Computes φ_p⁰ for tr_z and str_z from independently built moment
/// tables and compares them.
pub fn coincide(n: u32, z: i64, j_max: u32, tau: &Rational, brute_degree: u32) -> Result<AnnihilatorCertificate> {
    if z.rem_euclid(n as i64) == 0 {
        return Err(Error::usage(format!("z = {z} is divisible by n = {n}")));
    }
    let fam = |kind| DegenerateFamily::new(kind, z, tau.clone());
    let plus = side(degenerate_values(n, &fam(FamilyKind::TraceZ))?, j_max, brute_degree)?;
    let minus = side(degenerate_values(n, &fam(FamilyKind::SuperTraceZ))?, j_max, brute_degree)?;
    debug_assert_eq!(plus.trace.kappa(), Kappa::Plus);
    let mut per_p = Vec::new();
    let mut first_mismatch = None;
    for p in 0..n as usize {
        let (a, b) = (&plus.phis[p], &minus.phis[p]);
        let equal = a.q == b.q;
        if !equal && first_mismatch.is_none() {
            first_mismatch = Some(Mismatch {
                p: p as u32,
                phi_plus: a.q.clone(),
                phi_minus: b.q.clone(),
            });
        }
        let pred_plus = predicted_annihilator(&plus.closed, p as u32);
        let pred_minus = predicted_annihilator(&minus.closed, p as u32);
        let deg = |x: &AnnihilatorPair| x.q.degree().unwrap_or(0);
        per_p.push(PerP {
            p: p as u32,
            phi_plus: a.q.clone(),
            phi_minus: b.q.clone(),
            equal,
            matches_prediction: a.q == pred_plus && b.q == pred_minus,
            predicted: pred_plus,
            q_equals_l_minus_p: a.q == a.l_minus_p && b.q == b.l_minus_p,
            rank_consistent: a.row_rank == deg(a) && b.row_rank == deg(b),
        });
    }
    let verdict = if first_mismatch.is_none() {
        Verdict::Equal
    } else {
        Verdict::Differ
    };
    Ok(AnnihilatorCertificate {
        n,
        z,
        j_max,
        tau: format_rational(tau),
        per_p,
        verdict,
        first_mismatch,
        tables_coincide: plus
            .closed
            .coefficient_table()
            .same_entries(&minus.closed.coefficient_table()),
        witnesses_plus: nonzero_ideal_witness(&plus.gram, &plus.phis)?,
        witnesses_minus: nonzero_ideal_witness(&minus.gram, &minus.phis)?,
        gram_symmetric: plus.gram.is_symmetric() && minus.gram.is_symmetric(),
        moment_provenance: MomentProvenance {
            plus: plus.moments.provenance_summary(),
            minus: minus.moments.provenance_summary(),
            brute_force_degree: brute_degree,
        },
    })
}
