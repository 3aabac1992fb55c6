use std::sync::Arc;

use super::element::AlgebraElement;
use super::engine::Sra;
use super::word::{A0, A1, B0, B1};
use crate::dihedral::{GroupBasis, GroupWord};
use crate::error::{Error, Result};
use crate::exactnum::{rational::rat, CycloNumber};

/// -i/2 = 1/(2i), the factor between 𝔰 and its rational multiple.
pub fn singlet_factor(sra: &Sra) -> CycloNumber {
    CycloNumber::i(sra.field()).scale(&rat(-1, 2))
}

/// 𝔰 = (1/2i)({a⁰, b¹} - {a¹, b⁰}).
pub fn singlet(sra: &Arc<Sra>) -> AlgebraElement {
    AlgebraElement::from_rat(sra, &sra.singlet_scaled()).scale(&singlet_factor(sra))
}

fn anti(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    x.mul(y)
        .and_then(|xy| xy.add(&y.mul(x)?))
        .expect("same algebra")
}

/// T^{αβ} = ½({a^α, b^β} + {b^α, a^β}).
pub fn t_element(sra: &Arc<Sra>, alpha: u8, beta: u8) -> AlgebraElement {
    let a = |k: u8| AlgebraElement::letter(sra, if k == 0 { A0 } else { A1 });
    let b = |k: u8| AlgebraElement::letter(sra, if k == 0 { B0 } else { B1 });
    anti(&a(alpha), &b(beta))
        .add(&anti(&b(alpha), &a(beta)))
        .expect("same algebra")
        .scale_rational(&rat(1, 2))
}

/// The three independent T^{αβ}: T⁰⁰, T⁰¹, T¹¹.
pub fn t_elements(sra: &Arc<Sra>) -> [AlgebraElement; 3] {
    [
        t_element(sra, 0, 0),
        t_element(sra, 0, 1),
        t_element(sra, 1, 1),
    ]
}

/// Labelled element of the singlet subalgebra.
#[derive(Debug, Clone)]
pub struct H0Element {
    pub power: u32,
    pub group: GroupBasis,
    pub element: AlgebraElement,
}

/// 𝔰^j Q_p and 𝔰^j L_p for j ≤ max_power and all p.
pub fn h0_basis(sra: &Arc<Sra>, max_power: u32) -> Result<Vec<H0Element>> {
    let s = singlet(sra);
    let mut out = Vec::new();
    for g in GroupBasis::all(sra.n()) {
        let mut cur = AlgebraElement::group_basis(sra, g);
        for j in 0..=max_power {
            out.push(H0Element {
                power: j,
                group: g,
                element: cur.clone(),
            });
            if j < max_power {
                cur = s.mul(&cur)?;
            }
        }
    }
    Ok(out)
}

fn require(name: &str, e: AlgebraElement) -> Result<()> {
    if e.is_zero() {
        Ok(())
    } else {
        Err(Error::internal(format!("{name} fails: residue {e}")))
    }
}

/// Checks every commutation relation of 𝔰 against every generator and
/// every group basis element:
/// [𝔰, Q_p] = [𝔰, S_k] = [T^{αβ}, 𝔰] = 0, 𝔰L_p = -L_p𝔰, 𝔰R_k = -R_k𝔰,
/// (𝔰 - iμL_0)a^α = a^α(𝔰 + i + iμL_0).
pub fn verify_singlet_relations(sra: &Arc<Sra>) -> Result<()> {
    let n = sra.n();
    let s = singlet(sra);
    for p in 0..n {
        let q = AlgebraElement::group_basis(sra, GroupBasis::Q(p));
        require(&format!("[s, Q{p}] = 0"), s.commutator(&q)?)?;
        let l = AlgebraElement::group_basis(sra, GroupBasis::L(p));
        require(
            &format!("s L{p} + L{p} s = 0"),
            s.mul(&l)?.add(&l.mul(&s)?)?,
        )?;
        let sk = AlgebraElement::group_word(sra, GroupWord::rotation(p as i64, n));
        require(&format!("[s, S{p}] = 0"), s.commutator(&sk)?)?;
        let rk = AlgebraElement::group_word(sra, GroupWord::reflection(p as i64, n));
        require(
            &format!("s R{p} + R{p} s = 0"),
            s.mul(&rk)?.add(&rk.mul(&s)?)?,
        )?;
    }
    for (t, name) in t_elements(sra).iter().zip(["T00", "T01", "T11"]) {
        require(&format!("[{name}, s] = 0"), t.commutator(&s)?)?;
    }
    let field = sra.field();
    let i = CycloNumber::i(field);
    let imu_l0 = AlgebraElement::group_basis(sra, GroupBasis::L(0))
        .scale(&CycloNumber::from_rational(field, sra.mu().clone()))
        .scale(&i);
    let left = s.sub(&imu_l0)?;
    let right = s
        .add(&AlgebraElement::scalar(sra, i.clone()))?
        .add(&imu_l0)?;
    for x in [A0, A1] {
        let a = AlgebraElement::letter(sra, x);
        require(
            &format!("(s - i mu L0) a{x} = a{x} (s + i + i mu L0)"),
            left.mul(&a)?.sub(&a.mul(&right)?)?,
        )?;
    }
    Ok(())
}
