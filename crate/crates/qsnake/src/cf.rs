//! Positive rationals, their even/odd continued fractions, the word codec
//! `W`, the involution `τ`, convergents and the Stern–Brocot / Calkin–Wilf
//! trees.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::words::BinaryWord;

/// A positive rational `r/s` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Rational {
    r: BigUint,
    s: BigUint,
}

impl Rational {
    pub fn new(r: impl Into<BigUint>, s: impl Into<BigUint>) -> Result<Self, Error> {
        let (r, s) = (r.into(), s.into());
        if r.is_zero() || s.is_zero() {
            return Err(Error::NonPositive);
        }
        let g = r.gcd(&s);
        Ok(Rational { r: r / &g, s: s / g })
    }

    /// Convenience constructor for small literals; panics on zero.
    pub fn from_u64(r: u64, s: u64) -> Self {
        Rational::new(r, s).expect("positive rational")
    }

    pub fn one() -> Self {
        Rational::from_u64(1, 1)
    }

    pub fn numer(&self) -> &BigUint {
        &self.r
    }

    pub fn denom(&self) -> &BigUint {
        &self.s
    }

    pub fn recip(&self) -> Rational {
        Rational { r: self.s.clone(), s: self.r.clone() }
    }

    pub fn add_one(&self) -> Rational {
        Rational { r: &self.r + &self.s, s: self.s.clone() }
    }

    /// `x − 1`, if still positive.
    pub fn sub_one(&self) -> Option<Rational> {
        (self.r > self.s).then(|| Rational { r: &self.r - &self.s, s: self.s.clone() })
    }

    pub fn is_integer(&self) -> bool {
        self.s.is_one()
    }

    /// All positive rationals with `r + s ≤ bound`, ordered by `(r+s, r)`.
    pub fn all_with_height(bound: u64) -> Vec<Rational> {
        let mut out = Vec::new();
        for n in 2..=bound {
            for r in 1..n {
                if r.gcd(&(n - r)) == 1 {
                    out.push(Rational::from_u64(r, n - r));
                }
            }
        }
        out
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_one() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{}/{}", self.r, self.s)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a positive rational: {s:?}"));
        let (num, den) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let r: BigUint = num.parse().map_err(|_| bad())?;
        let d: BigUint = den.parse().map_err(|_| bad())?;
        Rational::new(r, d).map_err(|_| bad())
    }
}

impl From<Rational> for String {
    fn from(x: Rational) -> String {
        format!("{}/{}", x.r, x.s)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A finite continued fraction `[a0; a1, …, a_{k-1}]` with `a_i ≥ 1` for `i > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CfExpansion(Vec<u64>);

impl CfExpansion {
    pub fn new(quotients: Vec<u64>) -> Result<Self, Error> {
        let bad = |why: &str| Err(Error::InvalidExpansion(why.to_string()));
        match quotients.as_slice() {
            [] => bad("no quotients"),
            [0] => bad("[0] is not positive"),
            [_, rest @ ..] if rest.contains(&0) => bad("a_i must be ≥ 1 for i > 0"),
            _ => Ok(CfExpansion(quotients)),
        }
    }

    pub fn quotients(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parity(&self) -> Parity {
        if self.0.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn convergents(&self) -> ConvergentTable {
        ConvergentTable::new(self)
    }

    pub fn value(&self) -> Rational {
        let t = self.convergents();
        let k = self.len() as isize;
        Rational::new(t.p(k - 1).magnitude().clone(), t.q(k - 1).magnitude().clone())
            .expect("expansion of a positive rational")
    }

    /// The same rational with the other parity, via `[…, a+1] ↔ […, a, 1]`.
    pub fn flip_parity(&self) -> CfExpansion {
        let mut v = self.0.clone();
        let k = v.len();
        if k >= 2 && v[k - 1] == 1 {
            v.pop();
            v[k - 2] += 1;
        } else {
            v[k - 1] -= 1;
            v.push(1);
        }
        CfExpansion(v)
    }

    fn require_even(&self) -> Result<(), Error> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::NotEven(self.to_string()))
        }
    }

    /// Every expansion of length `1..=max_len` whose quotients sum to at most `max_sum`.
    pub fn all_bounded(max_len: usize, max_sum: u64) -> Vec<CfExpansion> {
        fn go(prefix: &mut Vec<u64>, budget: u64, max_len: usize, out: &mut Vec<CfExpansion>) {
            if let Ok(a) = CfExpansion::new(prefix.clone()) {
                out.push(a);
            }
            if prefix.len() == max_len {
                return;
            }
            let lo = if prefix.is_empty() { 0 } else { 1 };
            for a in lo..=budget {
                prefix.push(a);
                go(prefix, budget - a, max_len, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), max_sum, max_len, &mut out);
        out
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.0[0])?;
        for (i, a) in self.0[1..].iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { ";" } else { "," })?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CfExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a continued fraction: {s:?}"));
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (head, tail) = match inner.split_once(';') {
            Some((h, t)) => (h, Some(t)),
            None => (inner, None),
        };
        let mut q = vec![head.trim().parse::<u64>().map_err(|_| bad())?];
        if let Some(t) = tail {
            for part in t.split(',') {
                q.push(part.trim().parse::<u64>().map_err(|_| bad())?);
            }
        }
        CfExpansion::new(q)
    }
}

impl From<CfExpansion> for String {
    fn from(a: CfExpansion) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for CfExpansion {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// Raw Euclidean expansion; its last quotient is ≥ 2 unless it is `[1]`.
fn euclid(x: &Rational) -> Result<Vec<u64>, Error> {
    let (mut r, mut s) = (x.r.clone(), x.s.clone());
    let mut out = Vec::new();
    while !s.is_zero() {
        let (q, rem) = r.div_rem(&s);
        out.push(q.to_u64().ok_or(Error::TooLarge)?);
        r = s;
        s = rem;
    }
    Ok(out)
}

fn with_parity(x: &Rational, parity: Parity) -> Result<CfExpansion, Error> {
    let a = CfExpansion(euclid(x)?);
    Ok(if a.parity() == parity { a } else { a.flip_parity() })
}

/// Even-length expansion; `[0;1]` for 1. Fails only if a quotient exceeds `u64`.
pub fn cf_even(x: &Rational) -> Result<CfExpansion, Error> {
    with_parity(x, Parity::Even)
}

pub fn cf_odd(x: &Rational) -> Result<CfExpansion, Error> {
    with_parity(x, Parity::Odd)
}

/// `W(a) = 1^{a0} 0^{a1} ⋯ 1^{a_{2l-2}} 0^{a_{2l-1}-1}`.
pub fn word_of(a: &CfExpansion) -> Result<BinaryWord, Error> {
    a.require_even()?;
    let k = a.len();
    let mut bits = Vec::new();
    for (i, &ai) in a.quotients().iter().enumerate() {
        let n = if i == k - 1 { ai - 1 } else { ai };
        let n = usize::try_from(n).map_err(|_| Error::TooLarge)?;
        bits.extend(std::iter::repeat(i % 2 == 0).take(n));
    }
    Ok(BinaryWord::from_bits(bits))
}

pub fn word_of_rational(x: &Rational) -> Result<BinaryWord, Error> {
    word_of(&cf_even(x)?)
}

/// Inverse of `W`: the even expansion read off the runs of `w`.
pub fn expansion_of_word(w: &BinaryWord) -> CfExpansion {
    let mut runs: Vec<u64> = vec![0];
    let mut current = true;
    for &b in w.bits() {
        if b != current {
            runs.push(0);
            current = b;
        }
        *runs.last_mut().unwrap() += 1;
    }
    if runs.len() % 2 == 1 {
        runs.push(0);
    }
    *runs.last_mut().unwrap() += 1;
    CfExpansion(runs)
}

pub fn rational_of_word(w: &BinaryWord) -> Rational {
    expansion_of_word(w).value()
}

/// `[a_{2l-1}−1, a_{2l-2}, …, a_1, a_0+1]`; satisfies `W(τ(a)) = hat(W(a))`.
pub fn tau(a: &CfExpansion) -> Result<CfExpansion, Error> {
    a.require_even()?;
    let q = a.quotients();
    let k = q.len();
    let mut v: Vec<u64> = q.iter().rev().copied().collect();
    v[0] -= 1;
    v[k - 1] += 1;
    CfExpansion::new(v)
}

/// Convergent numerators `p`, denominators `q`, and `r_i = p_{i-1} + q_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    /// `p_{-1}, …, p_{k-1}`
    p: Vec<BigInt>,
    /// `q_{-1}, …, q_{k-1}`
    q: Vec<BigInt>,
    /// `r_{-1}, …, r_k`
    r: Vec<BigInt>,
}

impl ConvergentTable {
    fn new(a: &CfExpansion) -> Self {
        let a = a.quotients();
        let k = a.len();
        let mut p = vec![BigInt::one(), BigInt::from(a[0])];
        let mut q = vec![BigInt::zero(), BigInt::one()];
        for i in 1..k {
            p.push(a[i] * &p[i] + &p[i - 1]);
            q.push(a[i] * &q[i] + &q[i - 1]);
        }
        let mut r = vec![BigInt::one(), BigInt::one()];
        for i in 1..=k {
            r.push(a[i - 1] * &r[i] + &r[i - 1]);
        }
        ConvergentTable { p, q, r }
    }

    pub fn k(&self) -> usize {
        self.p.len() - 1
    }

    /// `p_i` for `-1 ≤ i < k`.
    pub fn p(&self, i: isize) -> &BigInt {
        &self.p[(i + 1) as usize]
    }

    pub fn q(&self, i: isize) -> &BigInt {
        &self.q[(i + 1) as usize]
    }

    /// `r_i` for `-1 ≤ i ≤ k`.
    pub fn r(&self, i: isize) -> &BigInt {
        &self.r[(i + 1) as usize]
    }
}

/// 2×2 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat2(pub [[BigInt; 2]; 2]);

impl IntMat2 {
    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        IntMat2(m.map(|row| row.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        IntMat2::from_i64([[1, 0], [0, 1]])
    }

    /// `[[1,0],[1,1]]`
    pub fn l() -> Self {
        IntMat2::from_i64([[1, 0], [1, 1]])
    }

    /// `[[1,1],[0,1]]`
    pub fn r() -> Self {
        IntMat2::from_i64([[1, 1], [0, 1]])
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        let (a, b) = (&self.0, &o.0);
        IntMat2([
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ])
    }

    pub fn apply(&self, v: [&BigInt; 2]) -> [BigInt; 2] {
        let a = &self.0;
        [&a[0][0] * v[0] + &a[0][1] * v[1], &a[1][0] * v[0] + &a[1][1] * v[1]]
    }
}

/// `R^{a0} L^{a1} ⋯ L^{a_{2l-1}} · (1,0)ᵀ`.
pub fn matrix_identity_check(a: &CfExpansion) -> Result<(BigInt, BigInt), Error> {
    a.require_even()?;
    let mut m = IntMat2::identity();
    for (i, &ai) in a.quotients().iter().enumerate() {
        let step = if i % 2 == 0 { IntMat2::r() } else { IntMat2::l() };
        for _ in 0..ai {
            m = m.mul(&step);
        }
    }
    let [r, s] = m.apply([&BigInt::one(), &BigInt::zero()]);
    Ok((r, s))
}

fn extend(x: &Rational, f: impl Fn(&BinaryWord, bool) -> BinaryWord) -> Result<(Rational, Rational), Error> {
    let w = word_of_rational(x)?;
    Ok((rational_of_word(&f(&w, false)), rational_of_word(&f(&w, true))))
}

/// Children in the Stern–Brocot tree: append a letter to `W(x)`.
pub fn stern_brocot_children(x: &Rational) -> Result<(Rational, Rational), Error> {
    extend(x, |w, b| {
        let mut v = w.clone();
        v.push(b);
        v
    })
}

/// Children in the Calkin–Wilf tree: prepend a letter to `W(x)`.
pub fn calkin_wilf_children(x: &Rational) -> Result<(Rational, Rational), Error> {
    extend(x, |w, b| BinaryWord::from_bits(vec![b]).concat(w))
}

pub fn stern_brocot_parent(x: &Rational) -> Result<Option<Rational>, Error> {
    let w = word_of_rational(x)?;
    Ok((!w.is_empty()).then(|| rational_of_word(&w.prefix(w.len() - 1))))
}

pub fn calkin_wilf_parent(x: &Rational) -> Result<Option<Rational>, Error> {
    let w = word_of_rational(x)?;
    Ok((!w.is_empty()).then(|| rational_of_word(&w.suffix(w.len() - 1))))
}

/// Level `depth` of either tree (level 0 is `[1]`), left to right.
pub fn tree_level(depth: usize, stern_brocot: bool) -> Vec<Rational> {
    BinaryWord::all_of_length(depth)
        .map(|w| {
            // Calkin–Wilf reads words right to left.
            let w = if stern_brocot { w } else { w.reversal() };
            rational_of_word(&w)
        })
        .collect()
}
