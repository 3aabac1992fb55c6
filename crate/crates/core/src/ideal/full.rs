use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, NormalWord, Sra};
use crate::error::{Error, Result};
use crate::exactnum::rational::Rational;
use crate::exactnum::CycloNumber;
use crate::linalg::Matrix;
use crate::trace::{
    degenerate_values, trace_space, DegenerateFamily, FamilyKind, KappaTrace, TraceSpace,
    DEFAULT_SLACK,
};

/// Normal words of degree ≤ `max_degree` in one weight/charge sector.
fn words_upto(n: u32, weight: i32, charge: u32, max_degree: u32) -> Vec<NormalWord> {
    (0..=max_degree)
        .flat_map(|d| crate::trace::sector_words(n, weight, charge, d))
        .collect()
}

/// Left kernel of B(x, y) = sp(xy), x in one sector up to `row_degree`,
/// y in the dual sector up to `col_degree`.
fn sector_kernel(
    h: &std::sync::Arc<Sra>,
    space: &TraceSpace,
    sp: &KappaTrace,
    rows: &[NormalWord],
    cols: &[NormalWord],
) -> Result<Vec<Vec<CycloNumber>>> {
    let field = h.field();
    if cols.is_empty() {
        return Ok((0..rows.len())
            .map(|i| {
                let mut v = vec![CycloNumber::zero(field); rows.len()];
                v[i] = CycloNumber::one(field);
                v
            })
            .collect());
    }
    // transposed: one row per y, so the nullspace is the left kernel
    let mut data = vec![Vec::with_capacity(rows.len()); cols.len()];
    for u in rows {
        let x = AlgebraElement::word(h, *u);
        for (j, v) in cols.iter().enumerate() {
            let xy = x.mul(&AlgebraElement::word(h, *v))?;
            data[j].push(space.evaluate(sp, &xy)?);
        }
    }
    Matrix::from_rows(data)?.nullspace(field)
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorComparison {
    pub weight: i32,
    pub charge: u32,
    pub rows: usize,
    pub cols: usize,
    /// Kernel dimensions of the first and second functional.
    pub kernel_plus: usize,
    pub kernel_minus: usize,
    pub equal: bool,
}

/// Truncated radicals of tr_z and str_z on all of H, compared as
/// subspaces sector by sector. Only rows of degree ≤ `row_degree` and
/// partners of degree ≤ `col_degree` enter, so each kernel contains the
/// true radical in that range and shrinks towards it as `col_degree`
/// grows.
#[derive(Debug, Clone, Serialize)]
pub struct TruncatedKernelComparison {
    pub n: u32,
    pub z: i64,
    pub row_degree: u32,
    pub col_degree: u32,
    pub sectors: Vec<SectorComparison>,
    pub kernel_plus: usize,
    pub kernel_minus: usize,
    pub equal: bool,
}

pub fn truncated_kernel_comparison(
    n: u32,
    z: i64,
    row_degree: u32,
    col_degree: u32,
    tau: &Rational,
) -> Result<TruncatedKernelComparison> {
    if z.rem_euclid(n as i64) == 0 {
        return Err(Error::usage(format!("z = {z} is divisible by n = {n}")));
    }
    let fam = |kind| degenerate_values(n, &DegenerateFamily::new(kind, z, tau.clone()));
    let mut out = compare_truncated_kernels(
        &fam(FamilyKind::TraceZ)?,
        &fam(FamilyKind::SuperTraceZ)?,
        row_degree,
        col_degree,
    )?;
    out.z = z;
    Ok(out)
}

/// Sector-wise comparison of the truncated radicals of two κ-traces on the
/// same algebra. `z` is left 0 in the result.
pub fn compare_truncated_kernels(
    a: &KappaTrace,
    b: &KappaTrace,
    row_degree: u32,
    col_degree: u32,
) -> Result<TruncatedKernelComparison> {
    if a.n() != b.n() || a.nu() != b.nu() {
        return Err(Error::usage("both functionals must live on the same algebra"));
    }
    let n = a.n();
    let h = Sra::new(n, a.nu().clone())?;
    let degree = (row_degree + col_degree).max(2);
    let space_a = trace_space(&h, a.kappa(), degree, DEFAULT_SLACK)?;
    let other = if b.kappa() == a.kappa() {
        None
    } else {
        Some(trace_space(&h, b.kappa(), degree, DEFAULT_SLACK)?)
    };
    let space_b = other.as_ref().unwrap_or(&space_a);
    let sectors: Vec<(i32, u32)> = (-(row_degree as i32)..=row_degree as i32)
        .flat_map(|w| (0..n).map(move |c| (w, c)))
        .collect();
    let sectors = sectors
        .into_par_iter()
        .map(|(w, c)| {
            let rows = words_upto(n, w, c, row_degree);
            if rows.is_empty() {
                return Ok(None);
            }
            let cols = words_upto(n, -w, (n - c) % n, col_degree);
            let ka = sector_kernel(&h, &space_a, a, &rows, &cols)?;
            let kb = sector_kernel(&h, space_b, b, &rows, &cols)?;
            let equal = ka.len() == kb.len() && {
                let stacked: Vec<Vec<CycloNumber>> = ka.iter().chain(&kb).cloned().collect();
                stacked.is_empty() || Matrix::from_rows(stacked)?.rank()? == ka.len()
            };
            Ok(Some(SectorComparison {
                weight: w,
                charge: c,
                rows: rows.len(),
                cols: cols.len(),
                kernel_plus: ka.len(),
                kernel_minus: kb.len(),
                equal,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok(TruncatedKernelComparison {
        n,
        z: 0,
        row_degree,
        col_degree,
        kernel_plus: sectors.iter().map(|s| s.kernel_plus).sum(),
        kernel_minus: sectors.iter().map(|s| s.kernel_minus).sum(),
        equal: sectors.iter().all(|s| s.equal),
        sectors,
    })
}
