//! κ-traces: the solved trace and supertrace spaces, closed-form values
//! on the group algebra and the degenerate families.

mod space;
mod values;

use serde::{Deserialize, Serialize};

pub use space::{sector_words, trace_space, TraceSpace, TraceSpaceReport, DEFAULT_SLACK};
pub use values::{
    degenerate_values, DegenerateFamily, FamilyKind, GroupFunctional, GroupValueReport, Kappa,
    KappaTrace,
};

use crate::dihedral::{GroupBasis, GroupWord};
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat};
use crate::exactnum::CycloNumber;

/// One exact comparison between a value of the solved functional and a
/// closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub computed: CycloNumber,
    pub expected: CycloNumber,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, computed: CycloNumber, expected: CycloNumber) -> Self {
        let holds = computed == expected;
        IdentityCheck {
            name: name.into(),
            computed,
            expected,
            holds,
        }
    }
}

/// Fits the functional of `space` that agrees with `sp` on its free
/// parameters (S_1..S_m for traces, S_0..S_m for supertraces) and compares
/// its remaining group values with the closed forms:
/// sp(R_k) = -(2μ/n)X^{tr} or -2νY^{str}, tr(S_0) = 2ν²nX^{tr},
/// tr(L_0) = -(2μ/n)X^{tr}, sp(L_p) = 0 for p ≠ 0, tr(S_0) = -μ tr(L_0).
pub fn group_identities(space: &TraceSpace, sp: &KappaTrace) -> Result<Vec<IdentityCheck>> {
    if !space.contains_trace(sp)? && sp.is_zero() {
        return Err(Error::internal(
            "zero functional rejected by the trace space",
        ));
    }
    let n = sp.n();
    let m = sp.m() as i64;
    let first = match sp.kappa() {
        Kappa::Plus => 1,
        Kappa::Minus => 0,
    };
    let targets: Vec<(GroupWord, CycloNumber)> = (first..=m)
        .map(|k| (GroupWord::rotation(k, n), sp.rotation_value(k)))
        .collect();
    let f = space.fit(&targets)?;
    let field = sp.field();
    let mu = sp.mu();
    let mut out = Vec::new();
    for k in 0..n as i64 {
        out.push(IdentityCheck::new(
            format!(
                "sp(R{k}) = -(2mu/n)({})",
                if first == 1 { "X" } else { "Y" }
            ),
            f.on_word(GroupWord::reflection(k, n)),
            sp.reflection_value(),
        ));
    }
    for k in 0..n as i64 {
        out.push(IdentityCheck::new(
            format!("sp(S{k}) = sp(S{})", (n as i64 - k) % n as i64),
            f.on_word(GroupWord::rotation(k, n)),
            f.on_word(GroupWord::rotation(-k, n)),
        ));
    }
    for p in 1..n {
        out.push(IdentityCheck::new(
            format!("sp(L{p}) = 0"),
            f.get(GroupBasis::L(p)),
            CycloNumber::zero(field),
        ));
    }
    let l0 = f.get(GroupBasis::L(0));
    let s0 = f.on_word(GroupWord::identity());
    match sp.kappa() {
        Kappa::Plus => {
            let x = sp.x_tr();
            let nu = sp.nu();
            out.push(IdentityCheck::new(
                "tr(S0) = 2 nu^2 n X",
                s0.clone(),
                x.scale(&(nu * nu * int(2 * n as i64))),
            ));
            out.push(IdentityCheck::new(
                "tr(L0) = -(2mu/n) X",
                l0.clone(),
                x.scale(&(-(&mu * rat(2, n as i64)))),
            ));
            out.push(IdentityCheck::new(
                "tr(S0) = -mu tr(L0)",
                s0,
                l0.scale(&-mu.clone()),
            ));
        }
        Kappa::Minus => {
            out.push(IdentityCheck::new(
                "str(R_k) = -2 nu Y",
                f.on_word(GroupWord::reflection(0, n)),
                sp.y_str().scale(&(sp.nu() * int(-2))),
            ));
            out.push(IdentityCheck::new(
                "str(L0) = str(R_k)",
                l0,
                sp.reflection_value(),
            ));
        }
    }
    out.push(IdentityCheck::new(
        "closed-form values lie in the solved space",
        CycloNumber::from_int(field, space.contains_trace(sp)? as i64),
        CycloNumber::one(field),
    ));
    Ok(out)
}
