use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::moments::MomentTable;
use crate::error::{Error, Result};
use crate::exactnum::{CycloField, CycloNumber, Poly};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Q,
    L,
}

/// 𝔰^power X_p with X ∈ {Q, L}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub generator: Generator,
    pub p: u32,
    pub power: u32,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.generator {
            Generator::Q => "Q",
            Generator::L => "L",
        };
        match self.power {
            0 => write!(f, "{g}{}", self.p),
            1 => write!(f, "s {g}{}", self.p),
            j => write!(f, "s^{j} {g}{}", self.p),
        }
    }
}

/// Gram matrix of B(x, y) = sp(xy) on {𝔰^j Q_p, 𝔰^j L_p : j ≤ J}, ordered
/// Q_0..Q_{n-1} then L_0..L_{n-1}, powers ascending inside each.
#[derive(Debug, Clone)]
pub struct H0Gram {
    pub n: u32,
    pub j_max: u32,
    pub labels: Vec<BasisLabel>,
    pub matrix: Matrix,
    field: Arc<CycloField>,
}

/// Assembles the Gram matrix from the product rules
/// 𝔰Q_p = Q_p𝔰, 𝔰L_p = -L_p𝔰, Q_kQ_l = δ_{k-l}Q_l, L_kL_l = δ_{k+l}Q_l,
/// Q_kL_l = δ_{k+l}L_l, L_kQ_l = δ_{k-l}L_l.
pub fn build_gram(mt: &MomentTable, j_max: u32) -> Result<H0Gram> {
    if mt.s_max < 2 * j_max {
        return Err(Error::usage(format!(
            "a Gram matrix with J = {j_max} needs moments up to s = {}, the table stops at {}",
            2 * j_max,
            mt.s_max
        )));
    }
    let n = mt.n;
    let field = mt.field().clone();
    let mut labels = Vec::new();
    for generator in [Generator::Q, Generator::L] {
        for p in 0..n {
            for power in 0..=j_max {
                labels.push(BasisLabel {
                    generator,
                    p,
                    power,
                });
            }
        }
    }
    let zero = CycloNumber::zero(&field);
    let nn = n as i64;
    let entry = |x: &BasisLabel, y: &BasisLabel| -> CycloNumber {
        let s = x.power + y.power;
        let (p, q) = (x.p as i64, y.p as i64);
        let sign_y = if y.power % 2 == 1 { -1 } else { 1 };
        match (x.generator, y.generator) {
            (Generator::Q, Generator::Q) if p == q => mt.get(q, s).clone(),
            (Generator::L, Generator::L) if (p + q) % nn == 0 => {
                mt.get(q, s).scale(&crate::exactnum::rational::int(sign_y))
            }
            // 𝔰^s L_0 pairs to sp(L_0) at s = 0 and to zero otherwise
            (Generator::Q, Generator::L) | (Generator::L, Generator::Q)
                if p == 0 && q == 0 && s == 0 =>
            {
                mt.l0.clone()
            }
            _ => zero.clone(),
        }
    };
    let data = labels
        .iter()
        .map(|x| labels.iter().map(|y| entry(x, y)).collect())
        .collect();
    Ok(H0Gram {
        n,
        j_max,
        labels,
        matrix: Matrix::from_rows(data)?,
        field,
    })
}

impl H0Gram {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, l: &BasisLabel) -> Option<usize> {
        if l.p >= self.n || l.power > self.j_max {
            return None;
        }
        let block = match l.generator {
            Generator::Q => 0,
            Generator::L => self.n,
        };
        Some(((block + l.p) * (self.j_max + 1) + l.power) as usize)
    }

    pub fn get(&self, x: &BasisLabel, y: &BasisLabel) -> Option<&CycloNumber> {
        Some(self.matrix.get(self.index(x)?, self.index(y)?))
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.matrix;
        (0..m.rows).all(|i| (0..i).all(|j| m.get(i, j) == m.get(j, i)))
    }

    pub fn rank(&self) -> Result<usize> {
        self.matrix.rank()
    }

    pub fn kernel_dimension(&self) -> Result<usize> {
        Ok(self.size() - self.rank()?)
    }

    /// Rank of the rows 𝔰^i X_p, i ≤ J.
    pub fn row_block_rank(&self, generator: Generator, p: u32) -> Result<usize> {
        let rows = self.rows_of(generator, p);
        Matrix::from_rows(rows.into_iter().cloned().collect())?.rank()
    }

    fn rows_of(&self, generator: Generator, p: u32) -> Vec<&Vec<CycloNumber>> {
        (0..=self.j_max)
            .map(|power| {
                let i = self
                    .index(&BasisLabel {
                        generator,
                        p,
                        power,
                    })
                    .expect("in range");
                &self.matrix.data[i]
            })
            .collect()
    }

    /// Pairing row of Σ c_l·l against every basis element.
    pub fn pairing_row(&self, v: &[(BasisLabel, CycloNumber)]) -> Result<Vec<CycloNumber>> {
        let mut acc = vec![CycloNumber::zero(&self.field); self.size()];
        for (l, c) in v {
            let i = self.index(l).ok_or_else(|| {
                Error::usage(format!("{l} is outside the truncated basis (J = {})", self.j_max))
            })?;
            for (a, g) in acc.iter_mut().zip(&self.matrix.data[i]) {
                if !g.is_zero() {
                    *a += &(c * g);
                }
            }
        }
        Ok(acc)
    }

    /// Σ c_l·l lies in the truncated radical: its pairing with every basis
    /// element vanishes.
    pub fn kernel_membership(&self, v: &[(BasisLabel, CycloNumber)]) -> Result<bool> {
        Ok(self.pairing_row(v)?.iter().all(CycloNumber::is_zero))
    }

    /// g(𝔰)X_p in the basis.
    pub fn poly_vector(&self, g: &Poly, generator: Generator, p: u32) -> Vec<(BasisLabel, CycloNumber)> {
        g.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                (
                    BasisLabel {
                        generator,
                        p,
                        power: i as u32,
                    },
                    c.clone(),
                )
            })
            .collect()
    }

    /// Minimal monic g with g(𝔰)X_p in the truncated radical: the first
    /// row 𝔰^d X_p that is a combination of the rows below it.
    pub fn minimal_annihilator(&self, generator: Generator, p: u32) -> Result<Poly> {
        let field = &self.field;
        let rows = self.rows_of(generator, p);
        for d in 0..rows.len() {
            let cols = self.size();
            let a = Matrix::from_rows(
                (0..cols)
                    .map(|c| rows[..d].iter().map(|r| r[c].clone()).collect())
                    .collect(),
            )?;
            let target: Vec<CycloNumber> = rows[d].clone();
            let solved = if d == 0 {
                target.iter().all(CycloNumber::is_zero).then(Vec::new)
            } else {
                a.solve(field, &target).ok()
            };
            if let Some(c) = solved {
                let mut coeffs: Vec<CycloNumber> = c.into_iter().map(|v| -v).collect();
                coeffs.push(CycloNumber::one(field));
                return Ok(Poly::new(field, coeffs));
            }
        }
        Err(Error::Resource(format!(
            "the rows of s^j {}{p} stay independent up to J = {}; increase J",
            match generator {
                Generator::Q => "Q",
                Generator::L => "L",
            },
            self.j_max
        )))
    }

    /// CSV of all nonzero entries: `row,col,value`.
    pub fn to_csv(&self, approx: bool) -> String {
        let mut out = String::from(if approx {
            "row,col,value,approx\n"
        } else {
            "row,col,value\n"
        });
        for (i, x) in self.labels.iter().enumerate() {
            for (j, y) in self.labels.iter().enumerate() {
                let v = self.matrix.get(i, j);
                if v.is_zero() {
                    continue;
                }
                out.push_str(&format!("{x},{y},{v}"));
                if approx {
                    out.push_str(&format!(",{}", v.approx_string()));
                }
                out.push('\n');
            }
        }
        out
    }
}
