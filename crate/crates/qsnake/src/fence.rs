//! Fence posets `F(w)`, their order ideals, and the bijection `Ψ` onto
//! admissible digit sequences.
//!
//! Element `y_i` sits at position `i`; letter `w_i` (1-based) joins `y_{i-1}`
//! and `y_i`, going up on `1` and down on `0`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cf::{cf_even, word_of, CfExpansion, Rational};
use crate::error::Error;
use crate::numeration::Digits;
use crate::qpoly::LaurentPoly;
use crate::words::BinaryWord;

/// Largest fence whose ideals fit in an [`OrderIdeal`] mask.
pub const MAX_ELEMENTS: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FencePoset {
    word: BinaryWord,
}

/// A downset, as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct OrderIdeal(pub u128);

impl OrderIdeal {
    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> Self {
        OrderIdeal(ix.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, o: &OrderIdeal) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..128).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl FencePoset {
    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn size(&self) -> usize {
        self.word.len() + 1
    }

    /// `y_{i-1} ◁ y_i` (true) or `y_{i-1} ▷ y_i` (false), for `1 ≤ i ≤ n`.
    pub fn rises(&self, i: usize) -> bool {
        self.word.get(i - 1)
    }

    /// Cover relations as `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (1..self.size()).map(|i| if self.rises(i) { (i - 1, i) } else { (i, i - 1) }).collect()
    }

    /// Height of each element when the fence is drawn as a mountain range.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64];
        for &b in self.word.bits() {
            let last = *h.last().unwrap();
            h.push(if b { last + 1 } else { last - 1 });
        }
        h
    }

    /// Shape such as `y0◁y1▷y2`.
    pub fn shape(&self) -> String {
        let mut s = "y0".to_string();
        for i in 1..self.size() {
            s.push(if self.rises(i) { '◁' } else { '▷' });
            s.push_str(&format!("y{i}"));
        }
        s
    }

    pub fn is_ideal(&self, i: &OrderIdeal) -> bool {
        if self.size() < 128 && i.0 >> self.size() != 0 {
            return false;
        }
        self.covers().iter().all(|&(lo, up)| !i.contains(up) || i.contains(lo))
    }

    fn check_size(&self) -> Result<(), Error> {
        if self.size() > MAX_ELEMENTS {
            Err(Error::TooLarge)
        } else {
            Ok(())
        }
    }

    /// Every order ideal, ordered by `(size, mask)`.
    ///
    /// Scans the path left to right; the only state carried across a cover is
    /// whether the previous element was taken.
    pub fn enumerate_ideals(&self) -> Result<Vec<OrderIdeal>, Error> {
        self.check_size()?;
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u128)];
        while let Some((i, mask)) = stack.pop() {
            if i == self.size() {
                out.push(OrderIdeal(mask));
                continue;
            }
            for take in [false, true] {
                if i > 0 {
                    let prev = mask >> (i - 1) & 1 == 1;
                    // rise: y_i in ⇒ y_{i-1} in; fall: y_{i-1} in ⇒ y_i in
                    let ok = if self.rises(i) { !take || prev } else { !prev || take };
                    if !ok {
                        continue;
                    }
                }
                stack.push((i + 1, if take { mask | 1 << i } else { mask }));
            }
        }
        out.sort_by_key(|m| (m.len(), m.0));
        Ok(out)
    }

    /// Ideal count by the same left-to-right scan, without listing ideals.
    pub fn count_ideals(&self) -> BigInt {
        // (ideals with last element out, with last element in)
        let (mut out_, mut in_) = (BigInt::from(1), BigInt::from(1));
        for i in 1..self.size() {
            let total = &out_ + &in_;
            (out_, in_) = if self.rises(i) { (total, in_) } else { (out_, total) };
        }
        out_ + in_
    }

    /// `(Σ_{J•} q^{|I|}, Σ_{J∘} q^{|I|})`, split by whether `y_0 ∈ I`.
    pub fn rank_polynomials(&self) -> Result<(LaurentPoly, LaurentPoly), Error> {
        let mut filled = LaurentPoly::zero();
        let mut empty = LaurentPoly::zero();
        for i in self.enumerate_ideals()? {
            let t = if i.contains(0) { &mut filled } else { &mut empty };
            t.add_term(i.len() as i64, BigInt::from(1));
        }
        Ok((filled, empty))
    }
}

pub fn fence_of_word(w: &BinaryWord) -> FencePoset {
    FencePoset { word: w.clone() }
}

/// `F(W(x))`.
pub fn fence_of_rational(x: &Rational) -> Result<FencePoset, Error> {
    Ok(fence_of_word(&word_of(&cf_even(x)?)?))
}

pub fn rank_polynomials(x: &Rational) -> Result<(LaurentPoly, LaurentPoly), Error> {
    fence_of_rational(x)?.rank_polynomials()
}

/// `C_i(a) = [a_0+⋯+a_{i-1}, a_0+⋯+a_i)`.
pub fn chains(a: &CfExpansion) -> Vec<std::ops::Range<usize>> {
    let mut start = 0usize;
    a.quotients()
        .iter()
        .map(|&ai| {
            let r = start..start + ai as usize;
            start = r.end;
            r
        })
        .collect()
}

/// `Ψ(I)_i = |I ∩ C_i(a)|`.
pub fn psi(ideal: &OrderIdeal, a: &CfExpansion) -> Digits {
    Digits(chains(a).into_iter().map(|c| c.filter(|&j| ideal.contains(j)).count() as u64).collect())
}

/// Takes the `b_i` left-most elements of `C_i` for even `i`, right-most for odd `i`.
pub fn psi_inverse(b: &Digits, a: &CfExpansion) -> Result<OrderIdeal, Error> {
    if b.len() != a.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    let mut mask = 0u128;
    for (i, c) in chains(a).into_iter().enumerate() {
        let n = b.0[i] as usize;
        if n > c.len() || c.end > MAX_ELEMENTS {
            return Err(Error::NotAdmissible(b.to_string()));
        }
        let picked = if i % 2 == 0 { c.start..c.start + n } else { c.end - n..c.end };
        for j in picked {
            mask |= 1 << j;
        }
    }
    Ok(OrderIdeal(mask))
}
