//! Admissible digit sequences for a continued fraction `a` and the
//! alternating-sign numeration system they define.
//!
//! With weights `r_i` from [`ConvergentTable`], every integer of the interval
//! `Z(a)` is `Σ (−1)^i b_i r_i` for exactly one admissible `b`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{CfExpansion, ConvergentTable};
use crate::error::Error;
use crate::qpoly::LaurentPoly;

/// Digit vector, least-significant digit `b_0` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Digits(pub Vec<u64>);

impl Digits {
    pub fn zero(k: usize) -> Self {
        Digits(vec![0; k])
    }

    pub fn norm1(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Digits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Compact form `b0b1…` (every digit must be < 10).
    pub fn compact(&self) -> String {
        self.0.iter().map(|d| d.to_string()).collect()
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Digits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad digit vector: {s:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Digits)
    }
}

fn check_len(b: &Digits, a: &CfExpansion) -> Result<(), Error> {
    if b.len() == a.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected: a.len(), got: b.len() })
    }
}

pub fn is_admissible(b: &Digits, a: &CfExpansion) -> Result<bool, Error> {
    check_len(b, a)?;
    let (a, b) = (a.quotients(), &b.0);
    let bounded = b.iter().zip(a).all(|(bi, ai)| bi <= ai);
    let links =
        (1..b.len()).all(
            |i| {
                if i % 2 == 1 {
                    b[i] != a[i] || b[i - 1] == a[i - 1]
                } else {
                    b[i] != 0 || b[i - 1] == 0
                }
            },
        );
    Ok(bounded && links)
}

/// All admissible sequences, ordered lexicographically by `(b_{k-1}, …, b_0)`.
pub fn enumerate_admissible(a: &CfExpansion) -> Vec<Digits> {
    fn go(a: &[u64], i: usize, b: &mut Vec<u64>, out: &mut Vec<Digits>) {
        // b[i+1..] is fixed; choose b[i].
        let (lo, hi) = match b.get(i + 1) {
            Some(&next) if (i + 1) % 2 == 1 && next == a[i + 1] => (a[i], a[i]),
            Some(&0) if (i + 1) % 2 == 0 => (0, 0),
            _ => (0, a[i]),
        };
        for d in lo..=hi {
            b[i] = d;
            if i == 0 {
                out.push(Digits(b.clone()));
            } else {
                go(a, i - 1, b, out);
            }
        }
    }
    let q = a.quotients();
    let mut out = Vec::new();
    go(q, q.len() - 1, &mut vec![0; q.len()], &mut out);
    out
}

/// `b ∈ B•(a)`: `b_0 = a_0 = 0 < b_1 = a_1`, or `0 < b_0`.
pub fn is_filled(b: &Digits, a: &CfExpansion) -> bool {
    let q = a.quotients();
    b.0[0] > 0 || (q[0] == 0 && q.len() > 1 && b.0[1] == q[1])
}

/// `(B•(a), B∘(a))`, each in enumeration order.
pub fn partition(a: &CfExpansion) -> (Vec<Digits>, Vec<Digits>) {
    enumerate_admissible(a).into_iter().partition(|b| is_filled(b, a))
}

/// Half-open integer interval `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZInterval {
    pub lo: BigInt,
    pub hi: BigInt,
}

impl ZInterval {
    pub fn contains(&self, n: &BigInt) -> bool {
        &self.lo <= n && n < &self.hi
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Every element, for small intervals.
    pub fn iter(&self) -> impl Iterator<Item = BigInt> {
        let lo = self.lo.to_i64().expect("small interval");
        let hi = self.hi.to_i64().expect("small interval");
        (lo..hi).map(BigInt::from)
    }
}

impl fmt::Display for ZInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

fn z_of(t: &ConvergentTable, k: usize) -> ZInterval {
    let k = k as isize;
    if k % 2 == 1 {
        ZInterval { lo: BigInt::zero(), hi: t.r(k).clone() }
    } else {
        ZInterval { lo: t.r(k - 1) - t.r(k), hi: t.r(k - 1).clone() }
    }
}

/// `[0, r_k)` for odd `k`, `[r_{k-1} − r_k, r_{k-1})` for even `k`.
pub fn z_interval(a: &CfExpansion) -> ZInterval {
    z_of(&a.convergents(), a.len())
}

/// `Σ (−1)^i b_i r_i`.
pub fn val(b: &Digits, a: &CfExpansion) -> Result<BigInt, Error> {
    if !is_admissible(b, a)? {
        return Err(Error::NotAdmissible(b.to_string()));
    }
    let t = a.convergents();
    Ok(b.0.iter().enumerate().fold(BigInt::zero(), |acc, (i, &bi)| {
        let term = bi * t.r(i as isize);
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    }))
}

/// The admissible `b` with `val(b) = n`, digit by digit from the top.
pub fn rep(n: &BigInt, a: &CfExpansion) -> Result<Digits, Error> {
    let t = a.convergents();
    let k = a.len();
    let z = z_of(&t, k);
    if !z.contains(n) {
        return Err(Error::OutOfRange { n: n.to_string(), lo: z.lo.to_string(), hi: z.hi.to_string() });
    }
    let mut digits = vec![0u64; k];
    let mut n = n.clone();
    // Invariant: n ∈ Z of the length-(i+1) prefix.
    for i in (0..k).rev() {
        let ri = t.r(i as isize);
        let d = if i % 2 == 1 {
            let q = n.div_floor(ri);
            n -= &q * ri;
            -q
        } else {
            let shift = t.r(i as isize - 1) - ri;
            let d = (&n - &shift).div_floor(ri);
            n -= &d * ri;
            d
        };
        digits[i] = d.to_u64().ok_or_else(|| Error::NotAdmissible(format!("digit {d} at {i}")))?;
    }
    debug_assert!(n.is_zero());
    let b = Digits(digits);
    if !is_admissible(&b, a)? {
        return Err(Error::NotAdmissible(b.to_string()));
    }
    Ok(b)
}

/// `(Σ_{B•} q^{‖b‖₁}, Σ_{B∘} q^{‖b‖₁})` by enumeration.
pub fn norm1_statistics(a: &CfExpansion) -> Result<(LaurentPoly, LaurentPoly), Error> {
    if !a.is_even() {
        return Err(Error::NotEven(a.to_string()));
    }
    let mut filled = LaurentPoly::zero();
    let mut empty = LaurentPoly::zero();
    for b in enumerate_admissible(a) {
        let target = if is_filled(&b, a) { &mut filled } else { &mut empty };
        target.add_term(b.norm1() as i64, BigInt::from(1));
    }
    Ok((filled, empty))
}

/// Rows `(n, rep(n))` for every `n ∈ Z(a)`, ascending.
pub fn numeration_table(a: &CfExpansion) -> Result<Vec<(BigInt, Digits)>, Error> {
    z_interval(a).iter().map(|n| rep(&n, a).map(|b| (n, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::QModel;
    use std::collections::{BTreeSet, VecDeque};

    fn a(s: &str) -> CfExpansion {
        s.parse().unwrap()
    }
    fn d(s: &str) -> Digits {
        Digits(s.chars().map(|c| c.to_digit(10).unwrap() as u64).collect())
    }
    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&d("221"), &a("[2;2,2]")).unwrap());
        assert!(!is_admissible(&d("0100"), &a("[0;1,3,1]")).unwrap());
        assert!(is_admissible(&d("0000"), &a("[0;1,3,1]")).unwrap());
        assert!(is_admissible(&d("00"), &a("[2;2,2]")).is_err());
    }

    /// Filter of the full box by the three conditions, written out directly.
    fn brute(a: &CfExpansion) -> Vec<Digits> {
        let q = a.quotients();
        let mut all = vec![vec![]];
        for &ai in q {
            all =
                all.into_iter().flat_map(|v: Vec<u64>| (0..=ai).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        let mut out: Vec<Digits> = all
            .into_iter()
            .filter(|b| {
                (1..b.len()).all(|i| {
                    let odd_ok = !(i % 2 == 1 && b[i] == q[i]) || b[i - 1] == q[i - 1];
                    let even_ok = !(i % 2 == 0 && b[i] == 0) || b[i - 1] == 0;
                    odd_ok && even_ok
                })
            })
            .map(Digits)
            .collect();
        out.sort_by(|x, y| x.0.iter().rev().cmp(y.0.iter().rev()));
        out
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_admissible(&a("[2;2,2]")).len(), 17);
        assert_eq!(enumerate_admissible(&a("[0;1,3,1]")).len(), 9);
        // x = 1: r_2 = 2, and (0,1) saturates b_1 with b_0 = a_0
        assert_eq!(enumerate_admissible(&a("[0;1]")), vec![d("00"), d("01")]);
        for e in CfExpansion::all_bounded(6, 9) {
            let got = enumerate_admissible(&e);
            assert_eq!(got, brute(&e), "{e}");
            let rk = e.convergents().r(e.len() as isize).clone();
            assert_eq!(BigInt::from(got.len()), rk);
        }
    }

    #[test]
    fn partition_sizes() {
        let sizes = |s: &str| {
            let (f, e) = partition(&a(s));
            (f.len(), e.len())
        };
        assert_eq!(sizes("[0;1,3,1]"), (4, 5));
        assert_eq!(sizes("[1;1]"), (2, 1));
        assert_eq!(sizes("[0;2]"), (1, 2));
        for e in CfExpansion::all_bounded(8, 10).into_iter().filter(CfExpansion::is_even) {
            let t = e.convergents();
            let (f, m) = partition(&e);
            let k = e.len() as isize;
            assert_eq!((BigInt::from(f.len()), BigInt::from(m.len())), (t.p(k - 1).clone(), t.q(k - 1).clone()));
        }
    }

    #[test]
    fn val_rep_examples() {
        assert_eq!(val(&d("221"), &a("[2;2,2]")).unwrap(), n(3));
        assert_eq!(val(&d("2222"), &a("[2;2,2,2]")).unwrap(), n(-24));
        assert_eq!(val(&d("101010"), &a("[1;1,1,1,1,1]")).unwrap(), n(12));
        assert_eq!(rep(&n(10), &a("[2;2,2]")).unwrap(), d("222"));
        assert_eq!(rep(&n(-8), &a("[1;1,1,1,1,1]")).unwrap(), d("111111"));
        assert_eq!(rep(&n(0), &a("[2;2,2,2]")).unwrap(), d("0000"));
        assert!(rep(&n(17), &a("[2;2,2]")).is_err());
        assert!(val(&d("0100"), &a("[0;1,3,1]")).is_err());
    }

    #[test]
    fn z_examples() {
        let z = |s: &str| {
            let z = z_interval(&a(s));
            (z.lo, z.hi)
        };
        assert_eq!(z("[2;2,2]"), (n(0), n(17)));
        assert_eq!(z("[2;2,2,2]"), (n(-24), n(17)));
        assert_eq!(z("[1;1,1,1,1,1]"), (n(-8), n(13)));
    }

    #[test]
    fn bijection_onto_z() {
        for e in CfExpansion::all_bounded(12, 12) {
            let z = z_interval(&e);
            let vals: BTreeSet<BigInt> = enumerate_admissible(&e)
                .iter()
                .map(|b| {
                    let v = val(b, &e).unwrap();
                    assert_eq!(&rep(&v, &e).unwrap(), b);
                    v
                })
                .collect();
            assert_eq!(vals, z.iter().collect::<BTreeSet<_>>(), "{e}");
        }
    }

    #[test]
    fn statistics_examples() {
        let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
        assert_eq!(norm1_statistics(&a("[0;1,3,1]")).unwrap(), (p("q^2+q^3+q^4+q^5"), p("1+q+q^2+q^3+q^4")));
        assert_eq!(norm1_statistics(&a("[0;1]")).unwrap(), (p("q"), p("1")));
        assert_eq!(norm1_statistics(&a("[1;1]")).unwrap(), (p("q+q^2"), p("1")));
        let model = QModel::default();
        for e in CfExpansion::all_bounded(12, 12).into_iter().filter(CfExpansion::is_even) {
            assert_eq!(norm1_statistics(&e).unwrap(), model.statistics_pair(&e), "{e}");
        }
    }

    #[test]
    fn graded_connected_poset() {
        for e in CfExpansion::all_bounded(10, 10) {
            let bs = enumerate_admissible(&e);
            let set: BTreeSet<&Digits> = bs.iter().collect();
            // Covers are single-digit increments that stay admissible.
            let up = |b: &Digits| -> Vec<Digits> {
                (0..b.len())
                    .map(|i| {
                        let mut c = b.clone();
                        c.0[i] += 1;
                        c
                    })
                    .filter(|c| set.contains(c))
                    .collect()
            };
            let mut seen = BTreeSet::from([Digits::zero(e.len())]);
            let mut queue = VecDeque::from([Digits::zero(e.len())]);
            while let Some(b) = queue.pop_front() {
                let below: Vec<Digits> = (0..b.len())
                    .filter(|&i| b.0[i] > 0)
                    .map(|i| {
                        let mut c = b.clone();
                        c.0[i] -= 1;
                        c
                    })
                    .filter(|c| set.contains(c))
                    .collect();
                if b.norm1() > 0 {
                    assert!(!below.is_empty(), "{e}: {b:?} has no lower cover");
                }
                for c in up(&b).into_iter().chain(below) {
                    if seen.insert(c.clone()) {
                        queue.push_back(c);
                    }
                }
            }
            assert_eq!(seen.len(), bs.len(), "{e}");
        }
    }

    #[test]
    fn print_parse() {
        assert_eq!("2,2,1".parse::<Digits>().unwrap(), d("221"));
        assert_eq!(d("221").to_string(), "2,2,1");
        assert!("2,x".parse::<Digits>().is_err());
    }
}
