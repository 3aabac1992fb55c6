//! The cyclotomic field Q(ζ) with ζ a primitive `4n`-th root of unity.
//!
//! Elements are residues modulo Φ_{4n} in the power basis ζ⁰..ζ^{d-1}.
//! For odd `n` the field contains both `i = ζⁿ` and `λ = ζ⁴ = exp(2πi/n)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{approx, format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Shared data for Q(ζ_{4n}): the modulus and a table of reduced powers.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    order: u32,
    /// Φ_{order}, lowest degree first, monic.
    modulus: Vec<BigInt>,
    /// `powers[e]` = ζ^e reduced, for `e < order`.
    powers: Vec<Vec<Rational>>,
}

impl CycloField {
    /// Field for the dihedral group I_2(n); `n` must be odd and at least 3.
    pub fn for_dihedral(n: u32) -> Result<Arc<Self>> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::config(format!("n = {n} must be odd and >= 3")));
        }
        Self::new(4 * n)
    }

    /// Field of the given order; the order must be `4n` with `n` odd, `n >= 3`.
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order % 4 != 0 || (order / 4) % 2 == 0 || order / 4 < 3 {
            return Err(Error::config(format!(
                "cyclotomic order {order} is not of the form 4n with n odd >= 3"
            )));
        }
        let modulus = cyclotomic_polynomial(order as usize);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur: Vec<Rational> = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by ζ
            let top = cur[degree - 1].clone();
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (j, c) in cur.iter_mut().enumerate() {
                    *c -= &top * Rational::from_integer(modulus[j].clone());
                }
            }
        }
        Ok(Arc::new(CycloField {
            n: order / 4,
            order,
            modulus,
            powers,
        }))
    }

    /// The odd dihedral order `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of Φ_{4n} over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Fields are determined by their order.
impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycloField {}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Φ_N with integer coefficients, via x^N - 1 = ∏_{d | N} Φ_d.
pub fn cyclotomic_polynomial(order: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); order + 1];
    p[0] = BigInt::from(-1);
    p[order] = BigInt::one();
    for d in 1..order {
        if order % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            p = poly_div_exact(&p, &phi_d);
        }
    }
    p
}

/// An element of Q(ζ_{4n}) in canonical reduced form.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, r: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(field: &Arc<CycloField>, v: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(v.into()))
    }

    /// ζ^exponent, exponent taken modulo the field order.
    pub fn zeta_pow(field: &Arc<CycloField>, exponent: i64) -> Self {
        let e = exponent.rem_euclid(field.order as i64) as usize;
        CycloNumber {
            field: field.clone(),
            coeffs: field.powers[e].clone(),
        }
    }

    /// The imaginary unit `i = ζⁿ`.
    pub fn i(field: &Arc<CycloField>) -> Self {
        Self::zeta_pow(field, field.n as i64)
    }

    /// λ^k with λ = exp(2πi/n) = ζ⁴.
    pub fn lambda_pow(field: &Arc<CycloField>, k: i64) -> Self {
        Self::zeta_pow(field, 4 * k)
    }

    /// Build from raw power-basis coefficients of any length, reducing
    /// modulo Φ_{4n}.
    pub fn from_coeffs(field: &Arc<CycloField>, raw: Vec<Rational>) -> Self {
        let d = field.degree();
        let mut coeffs = vec![Rational::zero(); d];
        for (e, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < d {
                coeffs[e] += c;
            } else {
                let pw = &field.powers[e % field.order as usize];
                for (j, p) in pw.iter().enumerate() {
                    if !p.is_zero() {
                        coeffs[j] += &c * p;
                    }
                }
            }
        }
        CycloNumber {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the number is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "cyclotomic numbers from different fields"
        );
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Φ_{4n}.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let inv = qpoly_inverse_mod(&self.coeffs, &modulus).ok_or_else(|| {
            Error::internal("element not invertible modulo cyclotomic polynomial")
        })?;
        Ok(Self::from_coeffs(&self.field, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other);
        Ok(self * &other.inv()?)
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        let mut raw = vec![Rational::zero(); self.field.order as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = (self.field.order as usize - e) % self.field.order as usize;
                raw[j] += c;
            }
        }
        Self::from_coeffs(&self.field, raw)
    }

    /// Floating-point (re, im) rendering; non-authoritative.
    pub fn approx(&self) -> (f64, f64) {
        let order = self.field.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * e as f64 / order;
            let v = approx(c);
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn approx_string(&self) -> String {
        let (re, im) = self.approx();
        if im.abs() < 1e-12 * (1.0 + re.abs()) {
            format!("{re:.12}")
        } else {
            format!("{re:.12}{:+.12}i", im)
        }
    }
}

/// Inverse of `a` modulo `m` in Q[x], if gcd(a, m) = 1.
fn qpoly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }
    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }
    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![Rational::zero()], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
            q[i] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }
    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let len = a.len().max(b.len());
        let mut out = vec![Rational::zero(); len];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    // r0 is the gcd; it must be a nonzero constant
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].clone();
    Some(t0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber[{}]({})", self.field.order, self)
    }
}

impl fmt::Display for CycloNumber {
    /// Power-basis rendering, e.g. `1/2 + 3*z^2` with `z = ζ_{4n}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        let d = self.field.degree();
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        CycloNumber::from_coeffs(&self.field, raw)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self * rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson {
            order: self.field.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycloJson::deserialize(d)?;
        let field = CycloField::new(raw.order).map_err(D::Error::custom)?;
        if raw.coeffs.len() != field.degree() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                field.degree(),
                raw.order,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(CycloNumber { field, coeffs })
    }
}
