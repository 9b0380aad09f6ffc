//! Markoff triples, the matrix maps `μ` and `μ_q` on Christoffel words, and
//! the q-Markoff / snake-area identity.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::cf::IntMat2;
use crate::error::Error;
use crate::qpoly::{mu_q, LaurentPoly};
use crate::snake::SnakeGraph;
use crate::words::{is_christoffel, is_proper_christoffel, BinaryWord};

/// `x² + y² + z² = 3xyz`, written with the largest entry in the middle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkoffTriple(pub u128, pub u128, pub u128);

impl MarkoffTriple {
    pub fn is_valid(&self) -> bool {
        let MarkoffTriple(x, y, z) = *self;
        x * x + y * y + z * z == 3 * x * y * z
    }

    /// `(x, 3xy−z, y)` and `(y, 3yz−x, z)`.
    pub fn children(&self) -> [MarkoffTriple; 2] {
        let MarkoffTriple(x, y, z) = *self;
        [MarkoffTriple(x, 3 * x * y - z, y), MarkoffTriple(y, 3 * y * z - x, z)]
    }
}

/// Every Markoff number `≤ bound`, sorted, from the tree rooted at
/// `(1,1,1)`, `(1,2,1)`, `(1,5,2)`.
pub fn markoff_numbers_upto(bound: u64) -> Vec<u64> {
    let bound = bound as u128;
    let mut found = BTreeSet::new();
    let mut queue: VecDeque<MarkoffTriple> =
        [MarkoffTriple(1, 1, 1), MarkoffTriple(1, 2, 1), MarkoffTriple(1, 5, 2)].into();
    while let Some(t) = queue.pop_front() {
        debug_assert!(t.is_valid());
        for v in [t.0, t.1, t.2] {
            if v <= bound {
                found.insert(v as u64);
            }
        }
        // Roots are listed explicitly; only expand the branching root.
        if t == MarkoffTriple(1, 1, 1) || t == MarkoffTriple(1, 2, 1) || t.1 > bound {
            continue;
        }
        queue.extend(t.children().into_iter().filter(|c| c.1 <= bound));
    }
    found.into_iter().collect()
}

/// `μ(0) = [[2,1],[1,1]]`
pub fn mu_zero() -> IntMat2 {
    IntMat2::from_i64([[2, 1], [1, 1]])
}

/// `μ(1) = [[5,2],[2,1]]`
pub fn mu_one() -> IntMat2 {
    IntMat2::from_i64([[5, 2], [2, 1]])
}

/// The integer morphism, computed on its own (not as `μ_q` at `q = 1`).
pub fn mu(w: &BinaryWord) -> IntMat2 {
    let (z, o) = (mu_zero(), mu_one());
    w.bits().iter().fold(IntMat2::identity(), |acc, &b| acc.mul(if b { &o } else { &z }))
}

fn require_christoffel(w: &BinaryWord) -> Result<(), Error> {
    if is_christoffel(w) {
        Ok(())
    } else {
        Err(Error::NotChristoffel(w.to_string()))
    }
}

/// `μ(w)₁₂` for a Christoffel word `w`.
pub fn markoff_of(w: &BinaryWord) -> Result<BigInt, Error> {
    require_christoffel(w)?;
    Ok(mu(w).0[0][1].clone())
}

/// `μ_q(w)₁₂` for a Christoffel word `w`.
pub fn q_markoff(w: &BinaryWord) -> Result<LaurentPoly, Error> {
    require_christoffel(w)?;
    Ok(mu_q(w).entry(0, 1).clone())
}

/// For `w = 0m1`, the snake word `0γ(m)0`.
pub fn snake_word(w: &BinaryWord) -> Result<BinaryWord, Error> {
    if !is_proper_christoffel(w) {
        return Err(Error::NotChristoffel(w.to_string()));
    }
    let m = BinaryWord::from_bits(w.bits()[1..w.len() - 1].to_vec());
    let zero = BinaryWord::from_bits(vec![false]);
    Ok(zero.concat(&m.gamma()).concat(&zero))
}

/// `Σ q^{area(m Δ 𝔟)}` over every perfect matching of `G(v)`.
pub fn area_polynomial(v: &BinaryWord) -> Result<LaurentPoly, Error> {
    let (perp, par) = SnakeGraph::new(v).area_statistics()?;
    Ok(&perp + &par)
}

/// `μ_q(0m1)₁₂ = Σ_{M(G(0γ(m)0))} q^{area}` for the proper Christoffel word `0m1`.
pub fn verify_area_theorem(m: &BinaryWord) -> Result<bool, Error> {
    let w = BinaryWord::from_bits(vec![false]).concat(m).concat(&BinaryWord::from_bits(vec![true]));
    let snake = snake_word(&w)?;
    Ok(q_markoff(&w)? == area_polynomial(&snake)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChristoffelRow {
    pub word: BinaryWord,
    pub markoff: String,
    pub q_markoff: LaurentPoly,
    pub snake_word: Option<BinaryWord>,
    pub matchings: Option<String>,
}

/// One row per Christoffel word of length `1..=max_len`, by length then word.
pub fn christoffel_table(max_len: usize) -> Result<Vec<ChristoffelRow>, Error> {
    let mut rows = Vec::new();
    for w in BinaryWord::all_up_to(max_len).filter(is_christoffel) {
        let snake = snake_word(&w).ok();
        let matchings = snake.as_ref().map(|s| SnakeGraph::new(s).count_matchings().to_string());
        rows.push(ChristoffelRow {
            markoff: markoff_of(&w)?.to_string(),
            q_markoff: q_markoff(&w)?,
            word: w,
            snake_word: snake,
            matchings,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::QMat2;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn numbers() {
        assert_eq!(markoff_numbers_upto(200), vec![1, 2, 5, 13, 29, 34, 89, 169, 194]);
        assert_eq!(markoff_numbers_upto(1), vec![1]);
        let up = markoff_numbers_upto(433);
        assert!(up.contains(&233) && up.contains(&433));
        assert_eq!(
            markoff_numbers_upto(5000),
            vec![1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985, 1325, 1597, 2897, 4181]
        );
    }

    /// Brute-force search of x ≤ y ≤ z ≤ bound on the Diophantine equation.
    #[test]
    fn numbers_match_brute_force() {
        let bound = 700u128;
        let mut brute = BTreeSet::new();
        for x in 1..=bound {
            for y in x..=bound {
                // z solves z² − 3xy z + (x² + y²) = 0
                let b = 3 * x * y;
                let disc = b * b - 4 * (x * x + y * y);
                let r = (disc as f64).sqrt() as u128;
                for s in r.saturating_sub(1)..=r + 1 {
                    if s * s == disc && (b + s) % 2 == 0 {
                        for z in [(b - s) / 2, (b + s) / 2] {
                            if z >= y && z <= bound && MarkoffTriple(x, y, z).is_valid() {
                                brute.extend([x as u64, y as u64, z as u64]);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(markoff_numbers_upto(bound as u64), brute.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&w("00101")), IntMat2::from_i64([[463, 194], [284, 119]]));
        assert_eq!(markoff_of(&w("00101")).unwrap(), BigInt::from(194));
        assert_eq!(markoff_of(&w("0")).unwrap(), BigInt::from(1));
        assert_eq!(markoff_of(&w("01011")).unwrap(), BigInt::from(433));
        assert!(markoff_of(&w("0110")).is_err());
    }

    #[test]
    fn q_markoff_examples() {
        assert_eq!(q_markoff(&w("0")).unwrap(), LaurentPoly::one());
        assert_eq!(q_markoff(&w("1")).unwrap(), "1+q".parse().unwrap());
        assert_eq!(q_markoff(&w("01")).unwrap().eval_at_one(), BigInt::from(5));
    }

    fn to_int(m: [[BigInt; 2]; 2]) -> IntMat2 {
        IntMat2(m)
    }

    #[test]
    fn q_one_specialisation_and_coverage() {
        let mut attained = BTreeSet::new();
        for u in BinaryWord::all_up_to(10).filter(is_christoffel) {
            assert_eq!(to_int(mu_q(&u).eval_at_one()), mu(&u), "{u}");
            assert_eq!(q_markoff(&u).unwrap().eval_at_one(), markoff_of(&u).unwrap());
            if u.len() <= 9 {
                attained.insert(markoff_of(&u).unwrap());
            }
        }
        let bound = attained.iter().max().unwrap().clone();
        let listed: BTreeSet<BigInt> =
            markoff_numbers_upto(u64::try_from(&bound).unwrap()).into_iter().map(BigInt::from).collect();
        assert!(attained.is_subset(&listed));
        // Conversely everything below the smallest value missed at length 10 is hit.
        let longer: BTreeSet<BigInt> =
            BinaryWord::all_of_length(10).filter(is_christoffel).map(|u| markoff_of(&u).unwrap()).collect();
        let cut = longer.iter().min().unwrap();
        assert!(listed.iter().filter(|n| *n < cut).all(|n| attained.contains(n)));
        assert_eq!(mu_q(&w("")), QMat2::identity());
    }

    #[test]
    fn area_theorem() {
        assert_eq!(snake_word(&w("01011")).unwrap(), w("001100001100"));
        assert_eq!(snake_word(&w("001")).unwrap(), w("0000"));
        assert_eq!(SnakeGraph::new(&w("0000")).count_matchings(), BigInt::from(13));
        assert_eq!(SnakeGraph::new(&w("001100")).count_matchings(), BigInt::from(29));
        assert!(verify_area_theorem(&w("101")).unwrap());
        assert!(verify_area_theorem(&w("0")).unwrap());
        assert!(verify_area_theorem(&w("1")).unwrap());
        assert!(verify_area_theorem(&w("10")).is_err());
        for u in BinaryWord::all_up_to(8).filter(is_proper_christoffel) {
            let m = BinaryWord::from_bits(u.bits()[1..u.len() - 1].to_vec());
            assert!(verify_area_theorem(&m).unwrap(), "{u}");
        }
    }

    #[test]
    fn table() {
        let rows = christoffel_table(5).unwrap();
        let r = rows.iter().find(|r| r.word == w("00101")).unwrap();
        assert_eq!(r.markoff, "194");
        assert_eq!(r.matchings.as_deref(), Some("194"));
        assert!(rows.iter().find(|r| r.word == w("0")).unwrap().snake_word.is_none());
    }
}
