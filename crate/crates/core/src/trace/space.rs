use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::values::{GroupFunctional, Kappa, KappaTrace};
use crate::algebra::int::Int;
use crate::algebra::word::{letter_weight, mono_charge, Mono, A0, A1};
use crate::algebra::{AlgebraElement, NormalWord, RatVec, Sra};
use crate::dihedral::{GroupBasis, GroupWord};
use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, Rational};
use crate::exactnum::CycloNumber;
use crate::linalg::{Matrix, ModEchelon, SparseEchelon, SparseRow, MOD_P};

/// Default number of extra degrees of κ-commutators beyond the cutoff.
pub const DEFAULT_SLACK: u32 = 2;
const MAX_SLACK: u32 = 8;

/// Normal words of the given degree, weight and charge.
pub fn sector_words(n: u32, weight: i32, charge: u32, degree: u32) -> Vec<NormalWord> {
    let d = degree as i32;
    if (d + weight) % 2 != 0 || weight.abs() > d {
        return Vec::new();
    }
    let up = ((d + weight) / 2) as u16;
    let down = ((d - weight) / 2) as u16;
    let inv2 = (n as i64 + 1) / 2;
    let mut out = Vec::new();
    for d0 in 0..=up {
        for d1 in 0..=down {
            let mono: Mono = [d0, d1, up - d0, down - d1];
            let c = mono_charge(&mono).rem_euclid(n as i64);
            let want = (charge as i64 - c).rem_euclid(n as i64);
            if want == 0 {
                out.extend((0..n).map(|p| NormalWord::new(mono, GroupBasis::Q(p))));
            }
            // L_p contributes -2p
            let p = (-want * inv2).rem_euclid(n as i64) as u32;
            out.push(NormalWord::new(mono, GroupBasis::L(p)));
        }
    }
    out
}

fn letter_charge(x: u8) -> i64 {
    if x >= 2 {
        1
    } else {
        -1
    }
}

/// The space of κ-traces restricted to the filtration H_{≤D}, computed
/// as the annihilator of the κ-commutators of total degree ≤ D + slack.
///
/// Only the sector of weight 0 and charge 0 is represented: every
/// κ-trace vanishes on the other sectors.
pub struct TraceSpace {
    sra: Arc<Sra>,
    kappa: Kappa,
    degree: u32,
    slack: u32,
    columns: Vec<NormalWord>,
    index: HashMap<NormalWord, u32>,
    echelon: SparseEchelon,
    rows_inserted: usize,
}

impl std::fmt::Debug for TraceSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TraceSpace")
            .field("n", &self.sra.n())
            .field("kappa", &self.kappa)
            .field("degree", &self.degree)
            .field("slack", &self.slack)
            .field("columns", &self.columns.len())
            .field("rank", &self.echelon.rank())
            .finish()
    }
}

impl TraceSpace {
    /// Builds the space without checking its dimension.
    pub fn build(sra: &Arc<Sra>, kappa: Kappa, degree: u32, slack: u32) -> Result<Self> {
        if degree < 2 {
            return Err(Error::usage("degree cutoff must be at least 2"));
        }
        if degree + slack > 160 {
            return Err(Error::Resource(format!(
                "degree {} exceeds the supported limit 160",
                degree + slack
            )));
        }
        let n = sra.n();
        let top = degree + slack;
        // columns: degree descending; degree 0 last as L0, Q0, Q_{n-1}, ..., Q1
        let mut columns = Vec::new();
        for d in (2..=top).rev().filter(|d| d % 2 == 0) {
            let mut ws = sector_words(n, 0, 0, d);
            ws.sort();
            columns.extend(ws);
        }
        columns.push(NormalWord::group(GroupBasis::L(0)));
        columns.push(NormalWord::group(GroupBasis::Q(0)));
        columns.extend((1..n).rev().map(|p| NormalWord::group(GroupBasis::Q(p))));
        let index: HashMap<NormalWord, u32> = columns
            .iter()
            .enumerate()
            .map(|(i, w)| (*w, i as u32))
            .collect();

        enum Task {
            Letter(u8, NormalWord),
            Group(GroupBasis, NormalWord),
        }
        // b⁰ = -R_0 a⁰ R_0 and b¹ = -R_0 a¹ R_0, so the rows for the b
        // letters follow from those for a⁰, a¹ and the group rows.
        let mut tasks = Vec::new();
        for d in 0..=top {
            if d % 2 == 1 && d < top {
                for x in [A0, A1] {
                    let ch = (-letter_charge(x)).rem_euclid(n as i64) as u32;
                    for w in sector_words(n, -letter_weight(x), ch, d) {
                        tasks.push(Task::Letter(x, w));
                    }
                }
            }
            if d % 2 == 0 {
                for g in GroupBasis::all(n) {
                    let ch = (-(g.charge(n) as i64)).rem_euclid(n as i64) as u32;
                    for w in sector_words(n, 0, ch, d) {
                        tasks.push(Task::Group(g, w));
                    }
                }
            }
        }
        let to_row = |v: rustc_hash::FxHashMap<NormalWord, Int>| -> Result<Vec<(u32, Int)>> {
            let mut row = Vec::with_capacity(v.len());
            for (w, c) in v {
                let col = index.get(&w).ok_or_else(|| {
                    Error::internal(format!("commutator produced {w} outside the solved sector"))
                })?;
                row.push((*col, c));
            }
            row.sort_unstable_by_key(|(c, _)| *c);
            Ok(row)
        };
        // Rows independent modulo a large prime are independent over Q;
        // only those are eliminated exactly.
        let mut screen = ModEchelon::new();
        let mut echelon = SparseEchelon::new();
        for chunk in tasks.chunks(4096) {
            let rows: Vec<Vec<(u32, Int)>> = chunk
                .par_iter()
                .map(|t| {
                    to_row(match t {
                        Task::Letter(x, w) => sra.kappa_row(*x, w, kappa.sign()),
                        Task::Group(g, w) => sra.group_row(*g, w),
                    })
                })
                .collect::<Result<_>>()?;
            for row in rows {
                let residues: Vec<(u32, u64)> = row
                    .iter()
                    .map(|(c, v)| (*c, v.mod_p(MOD_P)))
                    .filter(|(_, v)| *v != 0)
                    .collect();
                if screen.insert_residues(residues) {
                    echelon.insert(
                        row.into_iter()
                            .map(|(c, v)| (c, Rational::from_integer(v.to_big())))
                            .collect(),
                    );
                }
            }
        }
        let rows_inserted = tasks.len();
        Ok(TraceSpace {
            sra: sra.clone(),
            kappa,
            degree,
            slack,
            columns,
            index,
            echelon,
            rows_inserted,
        })
    }

    pub fn sra(&self) -> &Arc<Sra> {
        &self.sra
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn slack(&self) -> u32 {
        self.slack
    }

    /// m for traces and m + 1 for supertraces.
    pub fn expected_dimension(&self) -> usize {
        let m = (self.sra.n() as usize - 1) / 2;
        match self.kappa {
            Kappa::Plus => m,
            Kappa::Minus => m + 1,
        }
    }

    fn free_columns(&self) -> impl Iterator<Item = (u32, &NormalWord)> {
        self.columns
            .iter()
            .enumerate()
            .map(|(i, w)| (i as u32, w))
            .filter(|(i, _)| !self.echelon.is_pivot(*i))
    }

    /// Free group-algebra columns: a κ-trace is fixed by its values there.
    pub fn free_group_columns(&self) -> Vec<GroupBasis> {
        self.free_columns()
            .filter(|(_, w)| w.degree() == 0)
            .map(|(_, w)| w.group)
            .collect()
    }

    /// Dimension of the space of functionals restricted to H_{≤D}.
    pub fn dimension(&self) -> usize {
        self.free_columns()
            .filter(|(_, w)| w.degree() <= self.degree)
            .count()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Reduces `v` modulo κ-commutators to a combination of free group
    /// basis elements.
    pub fn remainder(&self, v: &RatVec) -> Result<BTreeMap<GroupBasis, Rational>> {
        let n = self.sra.n();
        let top = self.degree + self.slack;
        let mut row: SparseRow = Vec::new();
        for (w, c) in v {
            if w.weight() != 0 || w.charge(n) != 0 {
                continue;
            }
            match self.index.get(w) {
                Some(col) => row.push((*col, c.clone())),
                None => return Err(Error::Resource(format!(
                    "word {w} of degree {} lies above the solved filtration {top}; raise --degree",
                    w.degree()
                ))),
            }
        }
        row.sort_unstable_by_key(|(c, _)| *c);
        let mut out = BTreeMap::new();
        for (col, c) in self.echelon.reduce(&row) {
            let w = self.columns[col as usize];
            if w.degree() > 0 {
                return Err(Error::Resource(format!(
                    "element reaches the unsolved column {w}; raise --degree or --slack"
                )));
            }
            out.insert(w.group, c);
        }
        Ok(out)
    }

    /// f(v) for a rational vector, with f given on group basis elements.
    pub fn value(&self, f: &GroupFunctional, v: &RatVec) -> Result<CycloNumber> {
        let mut acc = CycloNumber::zero(f.field());
        for (g, c) in self.remainder(v)? {
            acc += &f.get(g).scale(&c);
        }
        Ok(acc)
    }

    /// f(x) for an element with cyclotomic coefficients.
    pub fn value_of(&self, f: &GroupFunctional, x: &AlgebraElement) -> Result<CycloNumber> {
        let field = f.field().clone();
        let mut acc = CycloNumber::zero(&field);
        for (j, part) in x.rational_parts().iter().enumerate() {
            if part.is_empty() {
                continue;
            }
            acc += &(&CycloNumber::zeta_pow(&field, j as i64) * &self.value(f, part)?);
        }
        Ok(acc)
    }

    fn check_trace(&self, sp: &KappaTrace) -> Result<()> {
        if sp.kappa() != self.kappa || sp.n() != self.sra.n() || sp.nu() != self.sra.nu() {
            return Err(Error::usage(format!(
                "functional (n = {}, nu = {}, kappa = {}) does not match the space (n = {}, nu = {}, kappa = {})",
                sp.n(),
                format_rational(sp.nu()),
                sp.kappa(),
                self.sra.n(),
                format_rational(self.sra.nu()),
                self.kappa
            )));
        }
        Ok(())
    }

    /// sp(x).
    pub fn evaluate(&self, sp: &KappaTrace, x: &AlgebraElement) -> Result<CycloNumber> {
        self.check_trace(sp)?;
        self.value_of(&sp.group_functional(), x)
    }

    /// Whether the group values are consistent with every κ-commutator
    /// relation among group-algebra elements that the span implies.
    pub fn contains(&self, f: &GroupFunctional) -> bool {
        self.echelon.pivot_rows().all(|(lead, row)| {
            if self.columns[*lead as usize].degree() > 0 {
                return true;
            }
            let mut acc = CycloNumber::zero(f.field());
            for (col, c) in row {
                acc += &f.get(self.columns[*col as usize].group).scale(c);
            }
            acc.is_zero()
        })
    }

    pub fn contains_trace(&self, sp: &KappaTrace) -> Result<bool> {
        self.check_trace(sp)?;
        Ok(self.contains(&sp.group_functional()))
    }

    /// One functional per free group column, with value 1 there and 0 on
    /// the other free columns.
    pub fn basis(&self) -> Result<Vec<GroupFunctional>> {
        let field = self.sra.field();
        let free = self.free_group_columns();
        let mut out = Vec::new();
        for f0 in &free {
            let mut values = BTreeMap::new();
            for g in GroupBasis::all(self.sra.n()) {
                let v: RatVec = [(NormalWord::group(g), Rational::one())].into();
                let rem = self.remainder(&v)?;
                let c = rem.get(f0).cloned().unwrap_or_else(Rational::zero);
                values.insert(g, CycloNumber::from_rational(field, c));
            }
            out.push(GroupFunctional::new(field, values));
        }
        Ok(out)
    }

    /// The unique functional in the space with the prescribed values on
    /// the given group elements.
    pub fn fit(&self, targets: &[(GroupWord, CycloNumber)]) -> Result<GroupFunctional> {
        let field = self.sra.field();
        let basis = self.basis()?;
        let rows: Vec<Vec<CycloNumber>> = targets
            .iter()
            .map(|(g, _)| basis.iter().map(|b| b.on_word(*g)).collect())
            .collect();
        let a = Matrix::from_rows(rows)?;
        if a.rank()? != basis.len() {
            return Err(Error::usage("targets do not determine a unique functional"));
        }
        let rhs: Vec<CycloNumber> = targets.iter().map(|(_, v)| v.clone()).collect();
        let coeffs = a.solve(field, &rhs)?;
        let mut out = GroupFunctional::new(field, BTreeMap::new());
        for (b, c) in basis.iter().zip(&coeffs) {
            out.add_scaled(b, c);
        }
        Ok(out)
    }

    pub fn report(&self) -> TraceSpaceReport {
        TraceSpaceReport {
            n: self.sra.n(),
            nu: format_rational(self.sra.nu()),
            kappa: self.kappa,
            degree: self.degree,
            slack: self.slack,
            columns: self.columns.len(),
            commutator_rows: self.rows_inserted,
            rank: self.rank(),
            dimension: self.dimension(),
            expected_dimension: self.expected_dimension(),
            free_group_columns: self
                .free_group_columns()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSpaceReport {
    pub n: u32,
    pub nu: String,
    pub kappa: Kappa,
    pub degree: u32,
    pub slack: u32,
    pub columns: usize,
    pub commutator_rows: usize,
    pub rank: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub free_group_columns: Vec<String>,
}

/// Builds the trace space at the cutoff `degree`, raising the slack from
/// `slack` until the dimension reaches its expected value.
pub fn trace_space(sra: &Arc<Sra>, kappa: Kappa, degree: u32, slack: u32) -> Result<TraceSpace> {
    let mut s = slack;
    loop {
        let space = TraceSpace::build(sra, kappa, degree, s)?;
        let (found, expected) = (space.dimension(), space.expected_dimension());
        if found == expected {
            return Ok(space);
        }
        if found < expected {
            return Err(Error::internal(format!(
                "trace space dimension {found} is below the expected {expected}"
            )));
        }
        if s >= MAX_SLACK {
            return Err(Error::InsufficientSlack { found, expected });
        }
        s += 2;
    }
}
