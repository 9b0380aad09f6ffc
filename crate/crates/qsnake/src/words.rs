//! Binary words over `{0,1}` with the involutions and morphisms used
//! throughout the crate, plus Christoffel words.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A finite word over `{0,1}`. The empty word prints as `""`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BinaryWord(Vec<bool>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryWord(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 0-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn count_zeros(&self) -> usize {
        self.0.iter().filter(|&&b| !b).count()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn push(&mut self, letter: bool) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord(self.0[..n].to_vec())
    }

    pub fn suffix(&self, n: usize) -> BinaryWord {
        BinaryWord(self.0[self.0.len() - n..].to_vec())
    }

    /// `w ↦ w̄`, letterwise swap.
    pub fn complement(&self) -> BinaryWord {
        BinaryWord(self.0.iter().map(|b| !b).collect())
    }

    pub fn reversal(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    /// Reversal composed with complement.
    pub fn hat(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().map(|b| !b).collect())
    }

    /// Flips every letter at even distance from the right end.
    pub fn theta(&self) -> BinaryWord {
        let n = self.0.len();
        BinaryWord(self.0.iter().enumerate().map(|(i, &b)| if (n - 1 - i) % 2 == 0 { !b } else { b }).collect())
    }

    /// Flips every letter at even distance from the left end.
    pub fn eta(&self) -> BinaryWord {
        BinaryWord(self.0.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { !b } else { b }).collect())
    }

    /// Morphism `0 ↦ 00`, `1 ↦ 0110`.
    pub fn gamma(&self) -> BinaryWord {
        self.substitute(&[false, false], &[false, true, true, false])
    }

    /// Morphism `0 ↦ 10`, `1 ↦ 1100`.
    pub fn gamma_prime(&self) -> BinaryWord {
        self.substitute(&[true, false], &[true, true, false, false])
    }

    fn substitute(&self, zero: &[bool], one: &[bool]) -> BinaryWord {
        let mut out = Vec::with_capacity(self.0.len() * 4);
        for &b in &self.0 {
            out.extend_from_slice(if b { one } else { zero });
        }
        BinaryWord(out)
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BinaryWord> {
        assert!(n < 64);
        (0u64..1 << n).map(move |m| BinaryWord((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0..=n).flat_map(BinaryWord::all_of_length)
    }
}

/// The lower Christoffel word with `p` zeros and `q` ones.
///
/// Digitizes the segment from `(0,0)` to `(p,q)`, with `0` a horizontal step.
/// `(1,0)` and `(0,1)` give the one-letter words.
pub fn christoffel(p: usize, q: usize) -> Result<BinaryWord, Error> {
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let n = p + q;
    let bits = (1..=n).map(|i| (i * q) / n > ((i - 1) * q) / n).collect();
    Ok(BinaryWord(bits))
}

pub fn is_christoffel(w: &BinaryWord) -> bool {
    match christoffel(w.count_zeros(), w.count_ones()) {
        Ok(c) => &c == w,
        Err(_) => false,
    }
}

/// Christoffel of length ≥ 2, i.e. of the form `0m1`.
pub fn is_proper_christoffel(w: &BinaryWord) -> bool {
    w.len() >= 2 && is_christoffel(w)
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("not a binary word: {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

impl From<BinaryWord> for String {
    fn from(w: BinaryWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for BinaryWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn basic_involutions() {
        assert_eq!(w("").complement(), w(""));
        assert_eq!(w("0111").complement(), w("1000"));
        assert_eq!(w("0001").complement(), w("1110"));
        assert_eq!(w("011").reversal(), w("110"));
        assert_eq!(w("01").hat(), w("01"));
        assert_eq!(w("001").hat(), w("011"));
    }

    #[test]
    fn theta_figures() {
        assert_eq!(w("0111").theta(), w("0010"));
        assert_eq!(w("1101100").theta(), w("0111001"));
        assert_eq!(w("011001011001").theta(), w("001100001100"));
    }

    // θ and η spelled out as the letter-by-letter recursions.
    fn theta_rec(v: &[bool]) -> Vec<bool> {
        match v.split_first() {
            None => vec![],
            Some((&a, rest)) => {
                let mut out = vec![if rest.len() % 2 == 0 { !a } else { a }];
                out.extend(theta_rec(rest));
                out
            }
        }
    }

    fn eta_rec(v: &[bool]) -> Vec<bool> {
        match v.split_last() {
            None => vec![],
            Some((&a, rest)) => {
                let mut out = eta_rec(rest);
                out.push(if rest.len() % 2 == 0 { !a } else { a });
                out
            }
        }
    }

    #[test]
    fn theta_eta_match_recursions() {
        for u in BinaryWord::all_up_to(10) {
            assert_eq!(u.theta().bits(), theta_rec(u.bits()).as_slice());
            assert_eq!(u.eta().bits(), eta_rec(u.bits()).as_slice());
        }
        assert_eq!(w("").eta(), w(""));
        assert_eq!(w("0").eta(), w("1"));
        assert_eq!(w("00").eta(), w("10"));
    }

    #[test]
    fn involutions_exhaustive() {
        for u in BinaryWord::all_up_to(16) {
            assert_eq!(u.complement().complement(), u);
            assert_eq!(u.reversal().reversal(), u);
            assert_eq!(u.hat().hat(), u);
            assert_eq!(u.theta().theta(), u);
            assert_eq!(u.eta().eta(), u);
            assert_eq!(u.hat(), u.complement().reversal());
            assert_eq!(u.theta().len(), u.len());
        }
    }

    #[test]
    fn hat_conjugates_theta_to_eta() {
        for u in BinaryWord::all_up_to(14) {
            assert_eq!(u.theta().hat(), u.hat().eta());
        }
    }

    #[test]
    fn morphisms() {
        assert_eq!(w("010").gamma(), w("00011000"));
        assert_eq!(w("01").gamma_prime(), w("101100"));
        assert_eq!(w("").gamma(), w(""));
        for u in BinaryWord::all_up_to(8) {
            assert_eq!(u.gamma().len(), 2 * u.count_zeros() + 4 * u.count_ones());
            let lhs = w("0").concat(&u.gamma()).concat(&w("0")).theta();
            let rhs = w("0").concat(&u.gamma_prime()).concat(&w("1"));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn christoffel_examples() {
        assert_eq!(christoffel(1, 1).unwrap(), w("01"));
        assert_eq!(christoffel(2, 1).unwrap(), w("001"));
        assert_eq!(christoffel(3, 2).unwrap(), w("00101"));
        assert!(christoffel(2, 4).is_err());
        assert!(is_christoffel(&w("01011")));
        assert!(!is_christoffel(&w("0110")));
        assert!(is_christoffel(&w("0")));
        assert!(is_christoffel(&w("1")));
        assert!(!is_christoffel(&w("")));
    }

    /// Closure of {0, 1, 01} under (u, v, uv) ↦ uuv, uvv, truncated at `max_len`.
    fn closure(max_len: usize) -> BTreeSet<BinaryWord> {
        let mut set: BTreeSet<BinaryWord> = [w("0"), w("1"), w("01")].into_iter().collect();
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let mut added = false;
            for u in &snapshot {
                for v in &snapshot {
                    if !set.contains(&u.concat(v)) {
                        continue;
                    }
                    for c in [u.concat(u).concat(v), u.concat(v).concat(v)] {
                        if c.len() <= max_len && set.insert(c) {
                            added = true;
                        }
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn christoffel_matches_closure() {
        let n = 20;
        let oracle = closure(n);
        let mut generated = BTreeSet::new();
        for p in 0..=n {
            for q in 0..=n - p {
                if p + q > 0 && p.gcd(&q) == 1 {
                    let c = christoffel(p, q).unwrap();
                    assert!(is_christoffel(&c));
                    generated.insert(c);
                }
            }
        }
        assert_eq!(generated, oracle);
        for u in BinaryWord::all_up_to(12) {
            assert_eq!(is_christoffel(&u), oracle.contains(&u), "{u}");
        }
    }

    #[test]
    fn parse_print() {
        assert_eq!(w("").to_string(), "");
        assert_eq!(w("ε"), w(""));
        assert!("012".parse::<BinaryWord>().is_err());
        let json = serde_json::to_string(&w("0110")).unwrap();
        assert_eq!(json, "\"0110\"");
        assert_eq!(serde_json::from_str::<BinaryWord>(&json).unwrap(), w("0110"));
    }
}
