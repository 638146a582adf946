//! Bounded brute-force oracles, independent of the leading-term division
//! path: they set up the full linear system on candidate coefficients and
//! solve it exactly.

use std::collections::HashMap;

use num::{BigRational, Zero};

use crate::groupring::{GroupRingElem, Side};
use crate::linalg;
use crate::magnus::{bergman_cmp, OrderVerdict};
use crate::words::{ball, Word};

/// Searches for a quotient `q` with support inside the ball of the given
/// radius such that `d * q = w` (Left) or `q * d = w` (Right), by one exact
/// linear solve over all admissible support words.
///
/// The admissible words are those between the forced Bergman extremes
/// `bot(d)^{-1} bot(w)` and `top(d)^{-1} top(w)` (sides mirrored for Right);
/// any quotient must contain both extremes and stay inside the interval.
/// `None` certifies that no quotient supported in the ball exists.
pub fn brute_divide_search(
    w: &GroupRingElem,
    d: &GroupRingElem,
    side: Side,
    radius: usize,
) -> Option<GroupRingElem> {
    assert!(!d.is_zero(), "zero divisor");
    if w.is_zero() {
        return Some(GroupRingElem::zero(w.rank()));
    }
    let rank = w.rank();
    let top_d = d.bergman_max().unwrap().0.clone();
    let bot_d = d.bergman_min().unwrap().0.clone();
    let top_w = w.bergman_max().unwrap().0.clone();
    let bot_w = w.bergman_min().unwrap().0.clone();
    let (q_top, q_bot) = match side {
        Side::Left => (
            top_d.inv().mul(&top_w).expect("same rank"),
            bot_d.inv().mul(&bot_w).expect("same rank"),
        ),
        Side::Right => (
            top_w.mul(&top_d.inv()).expect("same rank"),
            bot_w.mul(&bot_d.inv()).expect("same rank"),
        ),
    };
    if q_top.len() > radius || q_bot.len() > radius {
        return None;
    }
    let candidates: Vec<Word> = ball(rank, radius)
        .into_iter()
        .filter(|s| {
            !matches!(
                bergman_cmp(s, &q_bot).expect("comparable"),
                OrderVerdict::Less(_)
            ) && !matches!(
                bergman_cmp(s, &q_top).expect("comparable"),
                OrderVerdict::Greater(_)
            )
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }

    let mut row_of: HashMap<Word, usize> = HashMap::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    let mut row_index = |word: Word,
                         rows: &mut Vec<Vec<BigRational>>,
                         rhs: &mut Vec<BigRational>| {
        *row_of.entry(word.clone()).or_insert_with(|| {
            rows.push(vec![BigRational::zero(); candidates.len()]);
            rhs.push(w.coeff(&word));
            rows.len() - 1
        })
    };
    for (t, ct) in d.terms() {
        for (j, s) in candidates.iter().enumerate() {
            let prod = match side {
                Side::Left => t.mul(s),
                Side::Right => s.mul(t),
            }
            .expect("same rank");
            let r = row_index(prod, &mut rows, &mut rhs);
            rows[r][j] += ct.clone();
        }
    }
    // Words of w that no product reaches make the system inconsistent.
    for (word, _) in w.terms() {
        row_index(word.clone(), &mut rows, &mut rhs);
    }

    let x = linalg::solve(rows, rhs)?;
    let mut q = GroupRingElem::zero(rank);
    for (j, s) in candidates.iter().enumerate() {
        q.insert(s.clone(), x[j].clone());
    }
    let prod = match side {
        Side::Left => d.mul(&q),
        Side::Right => q.mul(d),
    }
    .expect("same rank");
    if prod == *w {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{divide_exact, DivisionVerdict};
    use crate::words::reduce;

    fn w2(letters: &[i32]) -> Word {
        reduce(2, letters).unwrap()
    }

    #[test]
    fn confirms_divisibility() {
        let one = GroupRingElem::one(2);
        let a = one.sub(&GroupRingElem::from_word(w2(&[1]))).unwrap();
        let b = one.sub(&GroupRingElem::from_word(w2(&[2]))).unwrap();
        let prod = a.mul(&b).unwrap();
        let q = brute_divide_search(&prod, &a, Side::Left, 3).unwrap();
        assert_eq!(a.mul(&q).unwrap(), prod);
        assert_eq!(q, b);
    }

    #[test]
    fn agrees_with_division_on_non_divisible() {
        let one = GroupRingElem::one(2);
        let f = one.sub(&GroupRingElem::from_word(w2(&[2]))).unwrap();
        let d = one.sub(&GroupRingElem::from_word(w2(&[1]))).unwrap();
        assert!(brute_divide_search(&f, &d, Side::Left, 3).is_none());
        assert_eq!(
            divide_exact(&f, &d, Side::Left, 4096).unwrap(),
            DivisionVerdict::NotDivisible
        );
    }
}
