use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::int::Int;
use super::word::{first_letter, letters, mono_charge, mono_degree, Mono, NormalWord};
use crate::dihedral::{lq_mul, GroupBasis};
use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, Rational};
use crate::exactnum::CycloField;

/// Group factor during rewriting; `None` is the unit S_0 = Σ Q_p.
pub(crate) type Grp = Option<GroupBasis>;

/// Combination of (monomial, group factor) pairs with integer
/// coefficients of the homogenized relations (see [`Sra`]).
pub(crate) type Partial = Vec<(Mono, Grp, Int)>;

/// Element with rational coefficients on normal words.
pub type RatVec = HashMap<NormalWord, Rational>;

pub fn add_to<K: std::hash::Hash + Eq>(acc: &mut HashMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn add_int(acc: &mut FxHashMap<(Mono, Grp), Int>, k: (Mono, Grp), c: Int) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn collect(acc: FxHashMap<(Mono, Grp), Int>) -> Arc<Partial> {
    Arc::new(acc.into_iter().map(|((m, g), c)| (m, g, c)).collect())
}

fn gmul(x: Grp, y: Grp, n: u32) -> Option<Grp> {
    match (x, y) {
        (None, g) | (g, None) => Some(g),
        (Some(a), Some(b)) => lq_mul(a, b, n).map(Some),
    }
}

fn shift(g: GroupBasis, by: i64, n: u32) -> GroupBasis {
    match g {
        GroupBasis::L(p) => GroupBasis::l(p as i64 + by, n),
        GroupBasis::Q(p) => GroupBasis::q(p as i64 + by, n),
    }
}

fn unit_letter(x: u8) -> Mono {
    let mut e = [0; 4];
    e[x as usize] = 1;
    e
}

/// Rewriting engine for H_{1,ν}(I_2(n)).
///
/// With μ = P/Q in lowest terms the memoized products are computed for
/// the relations scaled by Q, [x, y] ∈ Z·1 + Z·L_p, so that all
/// coefficients are integers. A term of degree d - 2k in the normal
/// form of a word of degree d used k brackets and is divided by Q^k on
/// the way out.
pub struct Sra {
    n: u32,
    nu: Rational,
    mu: Rational,
    field: Arc<CycloField>,
    /// `brackets[x][y]` = Q[x, y] for x > y, as a combination of group factors.
    brackets: [[Vec<(Int, Grp)>; 4]; 4],
    /// Q^{-k}.
    q_inv: Vec<Rational>,
    letter_cache: DashMap<(u8, Mono), Arc<Partial>, FxBuildHasher>,
    swap_cache: DashMap<Mono, Arc<Partial>, FxBuildHasher>,
    right_cache: DashMap<(Mono, u8), Arc<Partial>, FxBuildHasher>,
}

impl std::fmt::Debug for Sra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Sra")
            .field("n", &self.n)
            .field("nu", &format_rational(&self.nu))
            .finish()
    }
}

/// Largest supported total degree of a normal word.
pub const MAX_DEGREE: u32 = 400;

impl Sra {
    pub fn new(n: u32, nu: Rational) -> Result<Arc<Self>> {
        if n > 10_000 {
            return Err(Error::Resource(format!("n = {n} is too large")));
        }
        let field = CycloField::for_dihedral(n)?;
        let mu = &nu * Rational::from_integer(n.into());
        let big_p = Int::from_big(mu.numer().clone());
        let big_q = Int::from_big(mu.denom().clone());
        let l = |p: i64| Some(GroupBasis::l(p, n));
        let mut brackets: [[Vec<(Int, Grp)>; 4]; 4] = Default::default();
        // [a¹, a⁰] = -μL_1
        brackets[1][0] = vec![(big_p.neg(), l(1))];
        // [b⁰, a¹] = 1 + μL_0
        brackets[2][1] = vec![(big_q.clone(), None), (big_p.clone(), l(0))];
        // [b¹, a⁰] = -(1 + μL_0)
        brackets[3][0] = vec![(big_q.neg(), None), (big_p.neg(), l(0))];
        // [b¹, b⁰] = -μL_{-1}
        brackets[3][2] = vec![(big_p.neg(), l(-1))];
        for row in brackets.iter_mut() {
            for entry in row.iter_mut() {
                entry.retain(|(c, _)| !c.is_zero());
            }
        }
        let qr = Rational::from_integer(mu.denom().clone()).recip();
        let mut q_inv = vec![Rational::one()];
        for _ in 0..MAX_DEGREE / 2 {
            let next = q_inv.last().expect("nonempty") * &qr;
            q_inv.push(next);
        }
        Ok(Arc::new(Sra {
            n,
            nu,
            mu,
            field,
            brackets,
            q_inv,
            letter_cache: DashMap::default(),
            swap_cache: DashMap::default(),
            right_cache: DashMap::default(),
        }))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn same_params(&self, other: &Sra) -> bool {
        self.n == other.n && self.nu == other.nu
    }

    /// Number of memoized letter products, for diagnostics.
    pub fn cache_size(&self) -> usize {
        self.letter_cache.len() + self.swap_cache.len() + self.right_cache.len()
    }

    /// Rational coefficient of a term of degree `to` in the normal form
    /// of a word of degree `from`.
    fn descale(&self, c: &Int, from: u32, to: u32) -> Rational {
        let k = ((from - to) / 2) as usize;
        let v = Rational::from_integer(match c {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        });
        if k == 0 || self.mu.denom().is_one() {
            v
        } else {
            v * &self.q_inv[k]
        }
    }

    /// Normal form of `x · m`.
    pub(crate) fn letter_mono(&self, x: u8, m: &Mono) -> Arc<Partial> {
        let y = match first_letter(m) {
            Some(y) if y < x => y,
            _ => {
                let mut out = *m;
                out[x as usize] += 1;
                return Arc::new(vec![(out, None, Int::one())]);
            }
        };
        if let Some(hit) = self.letter_cache.get(&(x, *m)).map(|r| r.clone()) {
            return hit;
        }
        // x y m' = y (x m') + [x, y] m'
        let mut rest = *m;
        rest[y as usize] -= 1;
        let mut acc: FxHashMap<(Mono, Grp), Int> = FxHashMap::default();
        for (m2, g2, c2) in self.letter_mono(x, &rest).iter() {
            for (m3, g3, c3) in self.letter_mono(y, m2).iter() {
                if let Some(g) = gmul(*g3, *g2, self.n) {
                    add_int(&mut acc, (*m3, g), c2.mul(c3));
                }
            }
        }
        for (c, g) in &self.brackets[x as usize][y as usize] {
            match g {
                None => add_int(&mut acc, (rest, None), c.clone()),
                Some(g) => {
                    for (m3, g3, c3) in self.group_mono(*g, &rest) {
                        add_int(&mut acc, (m3, g3), c.mul(&c3));
                    }
                }
            }
        }
        let out = collect(acc);
        self.letter_cache.insert((x, *m), out.clone());
        out
    }

    /// Normal form of `m · x`.
    pub(crate) fn mono_letter(&self, m: &Mono, x: u8) -> Arc<Partial> {
        let y = match (0..4u8).rev().find(|&l| m[l as usize] > 0) {
            Some(y) if y > x => y,
            _ => {
                let mut out = *m;
                out[x as usize] += 1;
                return Arc::new(vec![(out, None, Int::one())]);
            }
        };
        if let Some(hit) = self.right_cache.get(&(*m, x)).map(|r| r.clone()) {
            return hit;
        }
        // m' y x = (m' x) y + m' [y, x]
        let mut rest = *m;
        rest[y as usize] -= 1;
        let mut acc: FxHashMap<(Mono, Grp), Int> = FxHashMap::default();
        let ey = unit_letter(y);
        for (m2, g2, c2) in self.mono_letter(&rest, x).iter() {
            let moved = match g2 {
                None => vec![(ey, None, Int::one())],
                Some(g) => self.group_mono(*g, &ey),
            };
            for (e, g3, c3) in moved {
                let y2 = first_letter(&e).expect("one letter");
                let c = c2.mul(&c3);
                for (m4, g4, c4) in self.mono_letter(m2, y2).iter() {
                    if let Some(g) = gmul(*g4, g3, self.n) {
                        add_int(&mut acc, (*m4, g), c.mul(c4));
                    }
                }
            }
        }
        for (c, g) in &self.brackets[y as usize][x as usize] {
            add_int(&mut acc, (rest, *g), c.clone());
        }
        let out = collect(acc);
        self.right_cache.insert((*m, x), out.clone());
        out
    }

    /// Normal form of the a ↔ b swapped word of `m`, letters kept in the
    /// order of `m`.
    fn swap_normal(&self, m: &Mono) -> Arc<Partial> {
        let Some(x) = first_letter(m) else {
            return Arc::new(vec![(*m, None, Int::one())]);
        };
        if let Some(hit) = self.swap_cache.get(m).map(|r| r.clone()) {
            return hit;
        }
        let mut rest = *m;
        rest[x as usize] -= 1;
        let mut acc: FxHashMap<(Mono, Grp), Int> = FxHashMap::default();
        for (m2, g2, c2) in self.swap_normal(&rest).iter() {
            for (m3, g3, c3) in self.letter_mono(x ^ 2, m2).iter() {
                if let Some(g) = gmul(*g3, *g2, self.n) {
                    add_int(&mut acc, (*m3, g), c2.mul(c3));
                }
            }
        }
        let out = collect(acc);
        self.swap_cache.insert(*m, out.clone());
        out
    }

    /// Normal form of `g · m`, using the transport rules
    /// L_p a = -b L_{p+1}, L_p b = -a L_{p-1}, Q_p a = a Q_{p+1}, Q_p b = b Q_{p-1}.
    pub(crate) fn group_mono(&self, g: GroupBasis, m: &Mono) -> Partial {
        let by = -mono_charge(m);
        match g {
            GroupBasis::Q(_) => vec![(*m, Some(shift(g, by, self.n)), Int::one())],
            GroupBasis::L(_) => {
                let target = Some(shift(g, by, self.n));
                let odd = mono_degree(m) % 2 == 1;
                self.swap_normal(m)
                    .iter()
                    .filter_map(|(m3, g3, c)| {
                        gmul(*g3, target, self.n)
                            .map(|g| (*m3, g, if odd { c.neg() } else { c.clone() }))
                    })
                    .collect()
            }
        }
    }

    /// Normal form of `x · v` for a letter `x`.
    pub fn letter_times(&self, x: u8, v: &RatVec) -> RatVec {
        let mut acc = RatVec::new();
        for (w, c) in v {
            let from = w.degree() + 1;
            for (m, g, c2) in self.letter_mono(x, &w.mono).iter() {
                if let Some(Some(g)) = gmul(*g, Some(w.group), self.n) {
                    let c2 = self.descale(c2, from, mono_degree(m));
                    add_to(&mut acc, NormalWord::new(*m, g), c * c2);
                }
            }
        }
        acc
    }

    /// Normal form of the product of two normal words.
    pub fn mul_words(&self, u: &NormalWord, v: &NormalWord) -> RatVec {
        let mut cur = self.group_times_word(u.group, v);
        for x in letters(&u.mono).into_iter().rev() {
            cur = self.letter_times(x, &cur);
        }
        cur
    }

    /// Normal form of `w · x` for a letter `x`.
    pub fn word_times_letter(&self, w: &NormalWord, x: u8) -> RatVec {
        // m g x = m x' g'
        let from = w.degree() + 1;
        let mut out = RatVec::new();
        for (e2, g2, c) in self.group_mono(w.group, &unit_letter(x)) {
            let x2 = first_letter(&e2).expect("one letter");
            for (m3, g3, c3) in self.mono_letter(&w.mono, x2).iter() {
                if let Some(Some(g)) = gmul(*g3, g2, self.n) {
                    let c = self.descale(&c.mul(c3), from, mono_degree(m3));
                    add_to(&mut out, NormalWord::new(*m3, g), c);
                }
            }
        }
        out
    }

    /// Q^k as an integer.
    fn q_pow(&self, k: u32) -> Int {
        Int::from_big(num_traits::pow(self.mu.denom().clone(), k as usize))
    }

    /// Q^{⌈d/2⌉}(x·w - κ w·x) with integer coefficients, d = deg(w) + 1.
    pub(crate) fn kappa_row(&self, x: u8, w: &NormalWord, kappa: i64) -> FxHashMap<NormalWord, Int> {
        let from = w.degree() + 1;
        let top = from.div_ceil(2);
        let powers: Vec<Int> = (0..=top).map(|k| self.q_pow(k)).collect();
        let mut acc: FxHashMap<(Mono, Grp), Int> = FxHashMap::default();
        for (m, g, c) in self.letter_mono(x, &w.mono).iter() {
            if let Some(g) = gmul(*g, Some(w.group), self.n) {
                let k = (from - mono_degree(m)) / 2;
                add_int(&mut acc, (*m, g), c.mul(&powers[(top - k) as usize]));
            }
        }
        let minus_k = Int::Small(-(kappa as i128));
        for (e2, g2, c) in self.group_mono(w.group, &unit_letter(x)) {
            let x2 = first_letter(&e2).expect("one letter");
            let c = c.mul(&minus_k);
            for (m3, g3, c3) in self.mono_letter(&w.mono, x2).iter() {
                if let Some(g) = gmul(*g3, g2, self.n) {
                    let k = (from - mono_degree(m3)) / 2;
                    add_int(&mut acc, (*m3, g), c.mul(c3).mul(&powers[(top - k) as usize]));
                }
            }
        }
        acc.into_iter()
            .map(|((m, g), c)| (NormalWord::new(m, g.expect("group factor")), c))
            .collect()
    }

    /// Q^{⌈d/2⌉}(g·w - w·g) with integer coefficients, d = deg(w).
    pub(crate) fn group_row(&self, g: GroupBasis, w: &NormalWord) -> FxHashMap<NormalWord, Int> {
        let from = w.degree();
        let top = from.div_ceil(2);
        let mut acc: FxHashMap<(Mono, Grp), Int> = FxHashMap::default();
        for (m, g2, c) in self.group_mono(g, &w.mono) {
            if let Some(g3) = gmul(g2, Some(w.group), self.n) {
                let k = (from - mono_degree(&m)) / 2;
                add_int(&mut acc, (m, g3), c.mul(&self.q_pow(top - k)));
            }
        }
        if let Some(h) = lq_mul(w.group, g, self.n) {
            add_int(&mut acc, (w.mono, Some(h)), self.q_pow(top).neg());
        }
        acc.into_iter()
            .map(|((m, g), c)| (NormalWord::new(m, g.expect("group factor")), c))
            .collect()
    }

    /// Normal form of `g · w` for a group basis element `g`.
    pub fn group_times_word(&self, g: GroupBasis, w: &NormalWord) -> RatVec {
        let from = w.degree();
        let mut out = RatVec::new();
        for (m, g2, c) in self.group_mono(g, &w.mono) {
            if let Some(Some(g3)) = gmul(g2, Some(w.group), self.n) {
                let c = self.descale(&c, from, mono_degree(&m));
                add_to(&mut out, NormalWord::new(m, g3), c);
            }
        }
        out
    }

    pub fn mul_rat(&self, x: &RatVec, y: &RatVec) -> RatVec {
        let mut acc = RatVec::new();
        for (u, cu) in x {
            for (v, cv) in y {
                let cc = cu * cv;
                for (w, c) in self.mul_words(u, v) {
                    add_to(&mut acc, w, &cc * c);
                }
            }
        }
        acc
    }

    /// `g · m` as normal words, with `g` a group basis element and the
    /// unit group factor expanded into Σ Q_p.
    pub fn expand(&self, partial: &[(Mono, Option<GroupBasis>, Rational)]) -> RatVec {
        let mut acc = RatVec::new();
        for (m, g, c) in partial {
            match g {
                Some(g) => add_to(&mut acc, NormalWord::new(*m, *g), c.clone()),
                None => {
                    for p in 0..self.n {
                        add_to(&mut acc, NormalWord::new(*m, GroupBasis::Q(p)), c.clone());
                    }
                }
            }
        }
        acc
    }

    /// The unit S_0 = Σ_p Q_p.
    pub fn unit(&self) -> RatVec {
        self.expand(&[([0; 4], None, Rational::one())])
    }

    /// The generator `x` (times the unit).
    pub fn letter(&self, x: u8) -> RatVec {
        let mut m = [0; 4];
        m[x as usize] = 1;
        self.expand(&[(m, None, Rational::one())])
    }

    /// 2i𝔰 = {a⁰, b¹} - {a¹, b⁰}, which has rational coefficients.
    pub fn singlet_scaled(&self) -> RatVec {
        use super::word::{A0, A1, B0, B1};
        let l = |x| self.letter(x);
        let anti = |x: u8, y: u8| {
            let mut s = self.mul_rat(&l(x), &l(y));
            for (w, c) in self.mul_rat(&l(y), &l(x)) {
                add_to(&mut s, w, c);
            }
            s
        };
        let mut out = anti(A0, B1);
        for (w, c) in anti(A1, B0) {
            add_to(&mut out, w, -c);
        }
        out
    }
}
