//! Exact linear algebra: a sparse incremental echelon form over Q and
//! dense elimination over the cyclotomic field.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rational::Rational, CycloField, CycloNumber};

/// Sparse vector sorted by column.
pub type SparseRow = Vec<(u32, Rational)>;

/// a + c·b for sorted sparse rows.
fn axpy(a: &[(u32, Rational)], c: &Rational, b: &[(u32, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time. Columns are ordered by
/// index; the leading entry of a row is its smallest column and pivot
/// rows are normalized to leading coefficient 1.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    pivots: HashMap<u32, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_row(&self, col: u32) -> Option<&SparseRow> {
        self.pivots.get(&col)
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (&u32, &SparseRow)> {
        self.pivots.iter()
    }

    /// Reduces the leading entry until it is not a pivot column and
    /// stores the result. Returns the new pivot column, if any.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<u32> {
        loop {
            let (lead, c) = match row.first() {
                None => return None,
                Some((l, c)) => (*l, c.clone()),
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-c, p),
                None => {
                    let inv = c.recip();
                    if !inv.is_one() {
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
            }
        }
    }

    /// Eliminates every pivot column from `row`; the result lies on
    /// non-pivot columns only.
    pub fn reduce(&self, row: &[(u32, Rational)]) -> SparseRow {
        let mut done: SparseRow = Vec::new();
        let mut rest: SparseRow = row.to_vec();
        while let Some((lead, c)) = rest.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => rest = axpy(&rest, &-c, p),
                None => {
                    done.push((lead, c));
                    rest.remove(0);
                }
            }
        }
        done
    }
}

/// The Mersenne prime 2^61 - 1.
pub const MOD_P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & MOD_P) + (x >> 61) as u64;
    let r = (r & MOD_P) + (r >> 61);
    if r >= MOD_P {
        r - MOD_P
    } else {
        r
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MOD_P - 2)
}

/// Image of a rational in Z/p; `None` when p divides the denominator.
pub fn rational_mod_p(r: &Rational) -> Option<u64> {
    use num_bigint::BigInt;
    let p = BigInt::from(MOD_P);
    let to_u64 = |x: &BigInt| -> u64 {
        let v: BigInt = ((x % &p) + &p) % &p;
        u64::try_from(v).expect("reduced residue")
    };
    let d = to_u64(r.denom());
    if d == 0 {
        return None;
    }
    Some(mulmod(to_u64(r.numer()), invmod(d)))
}

/// Echelon form over Z/(2^61 - 1), used to screen out dependent rows
/// before exact elimination. A row independent modulo p is independent
/// over Q.
#[derive(Debug, Default, Clone)]
pub struct ModEchelon {
    pivots: Vec<Option<Vec<(u32, u64)>>>,
    rank: usize,
    scratch: Vec<u64>,
}

impl ModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Inserts the image of `row`; returns whether it was independent.
    /// Rows with a denominator divisible by p are reported independent.
    pub fn insert(&mut self, row: &[(u32, Rational)]) -> bool {
        let mut cur: Vec<(u32, u64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match rational_mod_p(v) {
                Some(0) => {}
                Some(x) => cur.push((*c, x)),
                None => return true,
            }
        }
        self.insert_residues(cur)
    }

    /// Inserts a row of residues sorted by column, zeros removed.
    pub fn insert_residues(&mut self, cur: Vec<(u32, u64)>) -> bool {
        let Some(&(lo, _)) = cur.first() else {
            return false;
        };
        let need = cur.last().map_or(0, |(c, _)| *c as usize + 1);
        if need > self.scratch.len() {
            self.scratch.resize(need, 0);
            self.pivots.resize(need, None);
        }
        for (c, v) in cur {
            self.scratch[c as usize] = v;
        }
        let hi = self.scratch.len();
        for c in lo as usize..hi {
            let v = self.scratch[c];
            if v == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(p) => {
                    let f = MOD_P - v;
                    for (cc, pv) in p {
                        let slot = &mut self.scratch[*cc as usize];
                        let mut x = *slot + mulmod(f, *pv);
                        if x >= MOD_P {
                            x -= MOD_P;
                        }
                        *slot = x;
                    }
                }
                None => {
                    let inv = invmod(v);
                    let mut row = Vec::new();
                    for cc in c..hi {
                        let x = std::mem::take(&mut self.scratch[cc]);
                        if x != 0 {
                            row.push((cc as u32, mulmod(x, inv)));
                        }
                    }
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Dense matrix over Q(ζ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<CycloNumber>>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CycloField>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![CycloNumber::zero(field); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<CycloNumber>>) -> Result<Self> {
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("ragged matrix"));
        }
        Ok(Matrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i][j]
    }

    /// Reduced row echelon form; returns it with the pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(k) = (r..self.rows).find(|&k| !m[k][c].is_zero()) else {
                continue;
            };
            m.swap(r, k);
            let inv = m[r][c].inv()?;
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let prow = m[r].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *v -= &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data: m,
            },
            pivots,
        ))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of {x : Mx = 0}, one vector per free column with that
    /// column set to 1.
    pub fn nullspace(&self, field: &Arc<CycloField>) -> Result<Vec<Vec<CycloNumber>>> {
        let (r, pivots) = self.rref()?;
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![CycloNumber::zero(field); self.cols];
            v[free] = CycloNumber::one(field);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r.data[i][free];
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Solves Mx = b; errors when inconsistent. Free variables are set to 0.
    pub fn solve(&self, field: &Arc<CycloField>, b: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
        if b.len() != self.rows {
            return Err(Error::usage("right-hand side has the wrong length"));
        }
        let aug = Matrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: self
                .data
                .iter()
                .zip(b)
                .map(|(r, v)| {
                    let mut r = r.clone();
                    r.push(v.clone());
                    r
                })
                .collect(),
        };
        let (r, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Err(Error::mismatch("inconsistent linear system"));
        }
        let mut x = vec![CycloNumber::zero(field); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[i][self.cols].clone();
        }
        Ok(x)
    }
}
