//! Integer Laurent polynomials in `q`, 2×2 matrices of them, the morphisms
//! `ν_q` and `μ_q`, and q-rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cf::{cf_even, CfExpansion, Rational};
use crate::error::Error;
use crate::words::BinaryWord;

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i64, BigInt>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// From ascending coefficients starting at `q^0`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as i64, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, v) in self.terms() {
            p.add_term(e, v * c);
        }
        p
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, c)| (e + k, c.clone())).collect())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    /// The coefficient of `q^0`.
    pub fn eval_at_zero(&self) -> BigInt {
        self.coeff(0)
    }

    /// Dense coefficients from the lowest to the highest degree.
    pub fn dense(&self) -> Vec<BigInt> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    /// Coefficients weakly increase then weakly decrease, with no internal zeros.
    pub fn is_unimodal(&self) -> bool {
        let c = self.dense();
        let peak = match c.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) {
            Some((i, _)) => i,
            None => return true,
        };
        c[..=peak].windows(2).all(|w| w[0] <= w[1]) && c[peak..].windows(2).all(|w| w[0] >= w[1])
    }

    /// Descending sparse form with explicit multiplication, e.g. `q^5+2*q^2+1`.
    pub fn to_string_starred(&self) -> String {
        self.render(true)
    }

    fn render(&self, star: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&mag.to_string());
                if star {
                    out.push('*');
                }
                out.push_str(&var);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending sparse form, e.g. `q^4+q^3+2q^2+2q+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts both printed forms, with or without `*`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a Laurent polynomial: {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut p = LaurentPoly::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            // A term ends at the next '+' or '-' that is not an exponent sign.
            let bytes = body.as_bytes();
            let mut end = bytes.len();
            for i in 1..bytes.len() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                    end = i;
                    break;
                }
            }
            let term = &body[..end];
            rest = &body[end..];
            let (coef, var) = match term.find('q') {
                Some(i) => (term[..i].trim_end_matches('*'), Some(&term[i + 1..])),
                None => (term, None),
            };
            let c: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().map_err(|_| bad())? };
            let e = match var {
                None => 0,
                Some("") => 1,
                Some(v) => v.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            if var.is_none() && coef.is_empty() {
                return Err(bad());
            }
            p.add_term(e, c * sign);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.terms() {
            match c.to_i64() {
                Some(n) => map.serialize_entry(&e.to_string(), &n)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent to integer coefficient")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<LaurentPoly, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum Coef {
                    Int(i64),
                    Str(String),
                }
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = m.next_entry::<String, Coef>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c = match v {
                        Coef::Int(n) => BigInt::from(n),
                        Coef::Str(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        de.deserialize_map(V)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, c)| (e, -c)).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// 2×2 matrix over `ℤ[q, q⁻¹]`, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QMat2(pub [[LaurentPoly; 2]; 2]);

impl QMat2 {
    pub fn from_coeffs(m: [[&[i64]; 2]; 2]) -> Self {
        QMat2(m.map(|row| row.map(LaurentPoly::from_coeffs)))
    }

    pub fn identity() -> Self {
        Self::diag(LaurentPoly::one(), LaurentPoly::one())
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> Self {
        QMat2([[a, LaurentPoly::zero()], [LaurentPoly::zero(), d]])
    }

    /// `diag(1, q)`
    pub fn d() -> Self {
        Self::diag(LaurentPoly::one(), LaurentPoly::q())
    }

    /// `diag(1, q⁻¹)`
    pub fn d_inv() -> Self {
        Self::diag(LaurentPoly::one(), LaurentPoly::monomial(1, -1))
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &QMat2) -> QMat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        QMat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn pow(&self, n: u64) -> QMat2 {
        (0..n).fold(QMat2::identity(), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> QMat2 {
        let a = &self.0;
        QMat2([[a[0][0].clone(), a[1][0].clone()], [a[0][1].clone(), a[1][1].clone()]])
    }

    pub fn apply(&self, v: &[LaurentPoly; 2]) -> [LaurentPoly; 2] {
        let a = &self.0;
        [&(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1]), &(&a[1][0] * &v[0]) + &(&a[1][1] * &v[1])]
    }

    pub fn eval_at_one(&self) -> [[BigInt; 2]; 2] {
        let a = &self.0;
        [[a[0][0].eval_at_one(), a[0][1].eval_at_one()], [a[1][0].eval_at_one(), a[1][1].eval_at_one()]]
    }
}

/// `[[q,0],[q,1]]`
pub fn l_q() -> QMat2 {
    QMat2::from_coeffs([[&[0, 1], &[]], [&[0, 1], &[1]]])
}

/// `[[q,1],[0,1]]`
pub fn r_q() -> QMat2 {
    QMat2::from_coeffs([[&[0, 1], &[1]], [&[], &[1]]])
}

/// The pair of generators used on the matrix-product side of every identity.
///
/// The standard model is `(L_q, R_q)`; a different pair lets a verification
/// run be fed deliberately wrong matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QModel {
    pub l: QMat2,
    pub r: QMat2,
}

impl Default for QModel {
    fn default() -> Self {
        QModel { l: l_q(), r: r_q() }
    }
}

impl QModel {
    /// `ν_q`: `0 ↦ L`, `1 ↦ R`.
    pub fn nu(&self, w: &BinaryWord) -> QMat2 {
        w.bits().iter().fold(QMat2::identity(), |acc, &b| acc.mul(if b { &self.r } else { &self.l }))
    }

    /// `R^{a0} L^{a1} ⋯` over all quotients of `a`.
    pub fn cf_product(&self, a: &CfExpansion) -> QMat2 {
        let mut m = QMat2::identity();
        for (i, &ai) in a.quotients().iter().enumerate() {
            m = m.mul(&(if i % 2 == 0 { &self.r } else { &self.l }).pow(ai));
        }
        m
    }

    /// `diag(1,q)⁻¹ · R^{a0} ⋯ L^{a_{2l-1}} · (1,0)ᵀ`, the pair shared by the
    /// three enumerative statistics.
    pub fn statistics_pair(&self, a: &CfExpansion) -> (LaurentPoly, LaurentPoly) {
        let m = QMat2::d_inv().mul(&self.cf_product(a));
        let [top, bottom] = m.apply(&[LaurentPoly::one(), LaurentPoly::zero()]);
        (top, bottom)
    }
}

pub fn nu_q(w: &BinaryWord) -> QMat2 {
    QModel::default().nu(w)
}

/// `μ_q(0) = [[q+q², 1], [q, 1]]`
pub fn mu_q_zero() -> QMat2 {
    QMat2::from_coeffs([[&[0, 1, 1], &[1]], [&[0, 1], &[1]]])
}

/// `μ_q(1) = [[q+2q²+q³+q⁴, 1+q], [q+q², 1]]`
pub fn mu_q_one() -> QMat2 {
    QMat2::from_coeffs([[&[0, 1, 2, 1, 1], &[1, 1]], [&[0, 1, 1], &[1]]])
}

/// Product of the displayed letter matrices; agrees with `ν_q ∘ γ′`.
pub fn mu_q(w: &BinaryWord) -> QMat2 {
    let (z, o) = (mu_q_zero(), mu_q_one());
    w.bits().iter().fold(QMat2::identity(), |acc, &b| acc.mul(if b { &o } else { &z }))
}

/// `[x]_q = R(q)/S(q)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QRational {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl QRational {
    /// `(R, S)ᵀ = q⁻¹ · R_q^{a0} L_q^{a1} ⋯ L_q^{a_{2l-1}} · (1,0)ᵀ`.
    pub fn from_expansion(a: &CfExpansion, model: &QModel) -> Result<Self, Error> {
        if !a.is_even() {
            return Err(Error::NotEven(a.to_string()));
        }
        let [top, bottom] = model.cf_product(a).apply(&[LaurentPoly::one(), LaurentPoly::zero()]);
        Ok(QRational { numerator: top.shift(-1), denominator: bottom.shift(-1) })
    }

    /// Same pair through `R_q^{a0} ⋯ L_q^{a_{2l-1}-1} · (1,1)ᵀ`.
    pub fn from_expansion_unit_vector(a: &CfExpansion, model: &QModel) -> Result<Self, Error> {
        if !a.is_even() {
            return Err(Error::NotEven(a.to_string()));
        }
        let mut q: Vec<u64> = a.quotients().to_vec();
        *q.last_mut().unwrap() -= 1;
        let mut m = QMat2::identity();
        for (i, &ai) in q.iter().enumerate() {
            m = m.mul(&(if i % 2 == 0 { &model.r } else { &model.l }).pow(ai));
        }
        let [num, den] = m.apply(&[LaurentPoly::one(), LaurentPoly::one()]);
        Ok(QRational { numerator: num, denominator: den })
    }

    /// `q⁻¹`-prefixed form `q^-1(Σ•)/(Σ∘)`, as in the three-statistics identity.
    pub fn to_string_prefixed(&self) -> String {
        format!("q^-1{}/{}", paren(&self.numerator.shift(1)), paren(&self.denominator))
    }
}

fn paren(p: &LaurentPoly) -> String {
    if p.terms().count() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", paren(&self.numerator), paren(&self.denominator))
    }
}

pub fn q_rational(x: &Rational) -> Result<QRational, Error> {
    QRational::from_expansion(&cf_even(x)?, &QModel::default())
}

/// `[x+1]_q = q[x]_q + 1`, compared as exact pairs.
pub fn q_shift_identity_check(x: &Rational) -> Result<bool, Error> {
    let lhs = q_rational(&x.add_one())?;
    let rhs = q_rational(x)?;
    let num = &(&rhs.numerator * &LaurentPoly::q()) + &rhs.denominator;
    Ok(lhs.numerator == num && lhs.denominator == rhs.denominator)
}

/// `(X(w), Y(w)) = diag(1,q)⁻¹ · ν_q(w) · (q,q)ᵀ`.
pub fn xy_pair(w: &BinaryWord, model: &QModel) -> [LaurentPoly; 2] {
    let qq = [LaurentPoly::q(), LaurentPoly::q()];
    QMat2::d_inv().mul(&model.nu(w)).apply(&qq)
}

/// Checks the four one-letter recurrences for `X` and `Y` at `w`, and the
/// initial values when `w` is empty.
pub fn xy_recurrence_check(w: &BinaryWord, model: &QModel) -> bool {
    let q = LaurentPoly::q();
    let [x, y] = xy_pair(w, model);
    let one_w = BinaryWord::from_bits(vec![true]).concat(w);
    let zero_w = BinaryWord::from_bits(vec![false]).concat(w);
    let [x1, y1] = xy_pair(&one_w, model);
    let [x0, y0] = xy_pair(&zero_w, model);
    let base = !w.is_empty() || (x == q && y == LaurentPoly::one());
    base && x1 == &(&q * &x) + &(&q * &y) && y1 == y && x0 == &q * &x && y0 == &x + &y
}
