use std::fmt;

use crate::dihedral::GroupBasis;

/// Generator indices in the fixed order a⁰ < a¹ < b⁰ < b¹.
pub const A0: u8 = 0;
pub const A1: u8 = 1;
pub const B0: u8 = 2;
pub const B1: u8 = 3;

pub const LETTER_NAMES: [&str; 4] = ["a0", "a1", "b0", "b1"];

/// Exponents of a⁰, a¹, b⁰, b¹ in an ordered monomial.
pub type Mono = [u16; 4];

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// +1 for a⁰, b⁰ and -1 for a¹, b¹.
pub fn letter_weight(x: u8) -> i32 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mono_weight(m: &Mono) -> i32 {
    m[0] as i32 + m[2] as i32 - m[1] as i32 - m[3] as i32
}

/// #b - #a, the exponent of λ picked up under conjugation by S_1.
pub fn mono_charge(m: &Mono) -> i64 {
    m[2] as i64 + m[3] as i64 - m[0] as i64 - m[1] as i64
}

pub fn first_letter(m: &Mono) -> Option<u8> {
    (0..4u8).find(|&x| m[x as usize] > 0)
}

/// The letters of `m` in order, with multiplicity.
pub fn letters(m: &Mono) -> Vec<u8> {
    let mut out = Vec::with_capacity(mono_degree(m) as usize);
    for x in 0..4u8 {
        out.extend(std::iter::repeat(x).take(m[x as usize] as usize));
    }
    out
}

/// Ordered monomial times a rightmost group factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub mono: Mono,
    pub group: GroupBasis,
}

impl NormalWord {
    pub fn new(mono: Mono, group: GroupBasis) -> Self {
        NormalWord { mono, group }
    }

    pub fn group(group: GroupBasis) -> Self {
        NormalWord {
            mono: [0; 4],
            group,
        }
    }

    pub fn degree(&self) -> u32 {
        mono_degree(&self.mono)
    }

    /// 0 for even, 1 for odd words.
    pub fn parity(&self) -> u32 {
        self.degree() % 2
    }

    pub fn weight(&self) -> i32 {
        mono_weight(&self.mono)
    }

    pub fn charge(&self, n: u32) -> u32 {
        (mono_charge(&self.mono) + self.group.charge(n) as i64).rem_euclid(n as i64) as u32
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, &e) in self.mono.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "{} ", LETTER_NAMES[x])?,
                _ => write!(f, "{}^{} ", LETTER_NAMES[x], e)?,
            }
        }
        write!(f, "{}", self.group)
    }
}
