//! Marker words, A-blocks, and the sequence codecs: the word codec `w_t`
//! (encode and full decode), the element encoding `f_q` with its condition
//! checker, and the `(a_m, m)` pairing chain.
//!
//! A code is carried as its list of *stages*: the head block followed by one
//! `payload * block` product per step, each stage expanded exactly. The fully
//! expanded product of all stages is the element the constructions talk
//! about, but its support grows factorially with the payload count (the
//! block exponents increase stage by stage), so the staged form is the
//! workable representation; [`expand`](WordCode::expand) multiplies the
//! stages out when the size permits. Decoding runs honest ring division
//! stage by stage.

use num::{BigRational, One, Zero};
use thiserror::Error;

use crate::groupring::{
    divide_exact, irreducibility_certificate, is_trivial_unit, Certificate, DivisionVerdict,
    GroupRingElem, RingError, Side,
};
use crate::linalg;
use crate::magnus::{bergman_cmp, OrderVerdict};
use crate::words::{ball, reduce, Word, WordError};

/// Budget for the per-stage divisions; true candidates finish in one step.
const STAGE_BUDGET: usize = 256;

/// Refuse to expand staged products beyond this many term-by-term products.
const EXPAND_LIMIT: u128 = 4_000_000;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum CodecError {
    #[error("rank must be at least 2 for the marker construction")]
    RankTooSmall,
    #[error("marker family invariant violated: {0}")]
    BadMarkerFamily(&'static str),
    #[error("payload length must be at least 1")]
    EmptyTuple,
    #[error("tuple is not freely reduced at position {0}")]
    Unreduced(usize),
    #[error("chain length must be at least 2")]
    ChainTooShort,
    #[error("element is zero")]
    ZeroElement,
    #[error("identity word in the support")]
    IdentityInSupport,
    #[error("malformed code: {0}")]
    Malformed(&'static str),
    #[error("no candidate letter divides at step {0}")]
    NoCandidate(usize),
    #[error("more than one candidate letter divides at step {0}")]
    AmbiguousCandidate(usize),
    #[error("stage scalars do not multiply to one")]
    ScalarMismatch,
    #[error("expansion would exceed the size limit")]
    ExpansionTooLarge,
    #[error("multiple distinct preimages decode the same element code")]
    MultiplePreimages,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The marker words `a, b, c` for payload length `m`:
/// `b = x1^m x2^{m+1}`, `c = x1^{m+1} x2^{m+2}`, `a = x1^{m+2} x2^{m+3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkerFamily {
    pub m: usize,
    pub a: Word,
    pub b: Word,
    pub c: Word,
}

fn power_word(rank: u32, letter: i32, count: usize) -> Word {
    let letters = vec![letter; count];
    reduce(rank, &letters).expect("valid letters")
}

fn marker_word(rank: u32, e1: usize, e2: usize) -> Word {
    power_word(rank, 1, e1)
        .mul(&power_word(rank, 2, e2))
        .expect("same rank")
}

/// Builds and validates the marker family for payload length `m`.
pub fn markers(rank: u32, m: usize) -> Result<MarkerFamily, CodecError> {
    if rank < 2 {
        return Err(CodecError::RankTooSmall);
    }
    if m == 0 {
        return Err(CodecError::EmptyTuple);
    }
    let fam = MarkerFamily {
        m,
        a: marker_word(rank, m + 2, m + 3),
        b: marker_word(rank, m, m + 1),
        c: marker_word(rank, m + 1, m + 2),
    };
    validate_markers(&fam)?;
    Ok(fam)
}

fn validate_markers(fam: &MarkerFamily) -> Result<(), CodecError> {
    let words = [&fam.a, &fam.b, &fam.c];
    for w in words {
        match irreducibility_certificate(&GroupRingElem::one_minus(w)) {
            Certificate::Irreducible => {}
            _ => return Err(CodecError::BadMarkerFamily("1 - marker not irreducible")),
        }
    }
    for (i, u) in words.iter().enumerate() {
        for v in words.iter().skip(i + 1) {
            if u.mul(v).expect("same rank") == v.mul(u).expect("same rank") {
                return Err(CodecError::BadMarkerFamily("markers commute"));
            }
        }
    }
    // Bergman dominance over short payload words. Markers have exponent pairs
    // at least (m, m+1) while a word of length < m/2 has all exponent sums
    // below m/2, so the degree-1 components already decide; enumerate when
    // the ball is small enough to check literally.
    let short = fam.m / 2;
    if short > 0 && fam.m <= 12 {
        for w in ball(fam.a.rank(), short.saturating_sub(1)) {
            for marker in words {
                if !matches!(
                    bergman_cmp(&w, marker).expect("comparable"),
                    OrderVerdict::Less(_)
                ) {
                    return Err(CodecError::BadMarkerFamily("marker not dominant"));
                }
            }
        }
    }
    Ok(())
}

/// `A_{m,i} = (1 - c)(1 - a)^{1+i}(1 - b)`, fully expanded.
pub fn a_block(fam: &MarkerFamily, i: usize) -> GroupRingElem {
    let rank = fam.a.rank();
    let one_minus_a = GroupRingElem::one_minus(&fam.a);
    let mut mid = GroupRingElem::one(rank);
    for _ in 0..=i {
        mid = mid.mul(&one_minus_a).expect("same rank");
    }
    GroupRingElem::one_minus(&fam.c)
        .mul(&mid)
        .expect("same rank")
        .mul(&GroupRingElem::one_minus(&fam.b))
        .expect("same rank")
}

/// The word code `w_t`: head block `A_{m,0}` followed by the stages
/// `(1 - M_i) A_{m,i}` for the prefixes `M_i` of the encoded word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordCode {
    pub rank: u32,
    pub m: usize,
    pub stages: Vec<GroupRingElem>,
}

impl WordCode {
    /// Product of all stages. Fails when the expansion would be too large.
    pub fn expand(&self) -> Result<GroupRingElem, CodecError> {
        expand_stages(self.rank, &self.stages)
    }
}

pub(crate) fn expand_stages(
    rank: u32,
    stages: &[GroupRingElem],
) -> Result<GroupRingElem, CodecError> {
    let mut bound: u128 = 1;
    for s in stages {
        bound = bound.saturating_mul(s.num_terms() as u128);
    }
    if bound > EXPAND_LIMIT {
        return Err(CodecError::ExpansionTooLarge);
    }
    let mut acc = GroupRingElem::one(rank);
    for s in stages {
        acc = acc.mul(s)?;
    }
    Ok(acc)
}

fn validate_tuple(rank: u32, t: &[i32]) -> Result<(), CodecError> {
    if t.is_empty() {
        return Err(CodecError::EmptyTuple);
    }
    for (i, &l) in t.iter().enumerate() {
        if l == 0 {
            return Err(CodecError::Word(WordError::ZeroLetter(l)));
        }
        if l.unsigned_abs() > rank {
            return Err(CodecError::Word(WordError::LetterOutOfRange {
                letter: l,
                rank,
            }));
        }
        if i > 0 && t[i - 1] == -l {
            return Err(CodecError::Unreduced(i));
        }
    }
    Ok(())
}

/// Encodes a reduced tuple of letters as the staged product
/// `A_{m,0} (1 - M_1) A_{m,1} ... (1 - M_m) A_{m,m}`.
pub fn encode_word(rank: u32, t: &[i32]) -> Result<WordCode, CodecError> {
    validate_tuple(rank, t)?;
    let m = t.len();
    let fam = markers(rank, m)?;
    let mut stages = Vec::with_capacity(m + 1);
    stages.push(a_block(&fam, 0));
    for i in 1..=m {
        let prefix = reduce(rank, &t[..i])?;
        let stage = GroupRingElem::one_minus(&prefix)
            .mul(&a_block(&fam, i))
            .expect("same rank");
        stages.push(stage);
    }
    Ok(WordCode { rank, m, stages })
}

/// Divides `r` by `divisor` on the left and returns the scalar quotient, if
/// the quotient is a nonzero scalar.
fn scalar_quotient(
    r: &GroupRingElem,
    divisor: &GroupRingElem,
) -> Result<Option<BigRational>, CodecError> {
    match divide_exact(r, divisor, Side::Left, STAGE_BUDGET)? {
        DivisionVerdict::Quotient(q) => match is_trivial_unit(&q) {
            Some((c, w)) if w.is_identity() => Ok(Some(c)),
            _ => Ok(None),
        },
        _ => Ok(None),
    }
}

/// Recovers the encoded tuple from a word code.
///
/// At step `i` the previous prefix is known, so at most `2 rank - 1` letters
/// can extend it without cancellation; each candidate suggests the divisor
/// `(1 - M_{i-1} x_j^±) A_{m,i}` and exactly one left division may succeed.
/// The payload scalar is read off the constant coefficient before dividing,
/// and the stage scalars must multiply to one.
pub fn decode_word(code: &WordCode) -> Result<Vec<i32>, CodecError> {
    let m = code.m;
    if m == 0 || code.stages.len() != m + 1 {
        return Err(CodecError::Malformed("stage count does not match m"));
    }
    let rank = code.rank;
    let fam = markers(rank, m)?;
    let head = a_block(&fam, 0);
    let Some(delta0) = scalar_quotient(&code.stages[0], &head)? else {
        return Err(CodecError::NoCandidate(0));
    };
    let mut scalar_product = delta0;
    let mut letters: Vec<i32> = Vec::with_capacity(m);
    let mut prefix = Word::identity(rank);
    for i in 1..=m {
        let r = &code.stages[i];
        let beta = r.constant_coeff();
        if beta.is_zero() {
            return Err(CodecError::NoCandidate(i));
        }
        let block = a_block(&fam, i);
        let mut hits: Vec<(i32, BigRational)> = Vec::new();
        for letter in candidate_letters(rank, letters.last().copied()) {
            let cand = prefix
                .mul(&Word::generator(rank, letter)?)
                .expect("same rank");
            let divisor = GroupRingElem::one_minus(&cand)
                .mul(&block)
                .expect("same rank");
            if let Some(delta) = scalar_quotient(r, &divisor)? {
                hits.push((letter, delta));
            }
        }
        match hits.len() {
            0 => return Err(CodecError::NoCandidate(i)),
            1 => {
                let (letter, delta) = hits.pop().unwrap();
                if delta != beta {
                    return Err(CodecError::Malformed("stage scalar disagrees with constant"));
                }
                prefix = prefix
                    .mul(&Word::generator(rank, letter)?)
                    .expect("same rank");
                letters.push(letter);
                scalar_product *= delta;
            }
            _ => return Err(CodecError::AmbiguousCandidate(i)),
        }
    }
    if !scalar_product.is_one() {
        return Err(CodecError::ScalarMismatch);
    }
    Ok(letters)
}

fn candidate_letters(rank: u32, last: Option<i32>) -> Vec<i32> {
    (1..=rank as i32)
        .flat_map(|i| [i, -i])
        .filter(|&l| last != Some(-l))
        .collect()
}

/// Literal decode on the fully expanded product: global left divisions by
/// `A_{m,0}` and then by each candidate `(1 - M_i) A_{m,i}`. Feasible only at
/// small `m`; used to cross-check the staged decoder.
pub fn decode_word_expanded(
    w: &GroupRingElem,
    m: usize,
) -> Result<Vec<i32>, CodecError> {
    if m == 0 {
        return Err(CodecError::EmptyTuple);
    }
    let rank = w.rank();
    let fam = markers(rank, m)?;
    let head = a_block(&fam, 0);
    let mut rest = match divide_exact(w, &head, Side::Left, 1 << 20)? {
        DivisionVerdict::Quotient(q) => q,
        _ => return Err(CodecError::NoCandidate(0)),
    };
    let mut letters: Vec<i32> = Vec::with_capacity(m);
    let mut prefix = Word::identity(rank);
    for i in 1..=m {
        let block = a_block(&fam, i);
        let mut hits: Vec<(i32, GroupRingElem)> = Vec::new();
        for letter in candidate_letters(rank, letters.last().copied()) {
            let cand = prefix
                .mul(&Word::generator(rank, letter)?)
                .expect("same rank");
            let divisor = GroupRingElem::one_minus(&cand)
                .mul(&block)
                .expect("same rank");
            if let DivisionVerdict::Quotient(q) =
                divide_exact(&rest, &divisor, Side::Left, 1 << 20)?
            {
                hits.push((letter, q));
            }
        }
        match hits.len() {
            0 => return Err(CodecError::NoCandidate(i)),
            1 => {
                let (letter, q) = hits.pop().unwrap();
                prefix = prefix
                    .mul(&Word::generator(rank, letter)?)
                    .expect("same rank");
                letters.push(letter);
                rest = q;
            }
            _ => return Err(CodecError::AmbiguousCandidate(i)),
        }
    }
    if rest != GroupRingElem::one(rank) {
        return Err(CodecError::Malformed("leftover factor after the last block"));
    }
    Ok(letters)
}

/// The element code `f_q`: stages `A_{m,1}`, then `h_i A_{m,i+1}` for the
/// running payloads `h_1 = a_1 - a_1 M_1`, `h_{i+1} = h_i + a_{i+1} - a_{i+1} M_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FqCode {
    pub rank: u32,
    pub s: usize,
    pub m: usize,
    pub stages: Vec<GroupRingElem>,
}

impl FqCode {
    pub fn expand(&self) -> Result<GroupRingElem, CodecError> {
        expand_stages(self.rank, &self.stages)
    }
}

/// Support of `f` in shortlex order with coefficients.
fn sorted_support(f: &GroupRingElem) -> Vec<(Word, BigRational)> {
    f.sorted_terms()
}

/// Packs a nonzero element with identity-free support.
pub fn pack_fq(f: &GroupRingElem) -> Result<FqCode, CodecError> {
    if f.is_zero() {
        return Err(CodecError::ZeroElement);
    }
    let rank = f.rank();
    if !f.constant_coeff().is_zero() {
        return Err(CodecError::IdentityInSupport);
    }
    let terms = sorted_support(f);
    let s = terms.len();
    let max_len = terms.iter().map(|(w, _)| w.len()).max().unwrap();
    let m = 2 * max_len;
    let fam = markers(rank, m)?;
    let mut stages = Vec::with_capacity(s + 1);
    stages.push(a_block(&fam, 1));
    let mut h = GroupRingElem::zero(rank);
    for (i, (word, alpha)) in terms.iter().enumerate() {
        let mut step = GroupRingElem::scalar(rank, alpha.clone());
        step.insert(word.clone(), -alpha.clone());
        h = h.add(&step)?;
        stages.push(h.mul(&a_block(&fam, i + 2))?);
    }
    Ok(FqCode {
        rank,
        s,
        m,
        stages,
    })
}

/// Right-strips the block from a stage, recovering the payload.
fn strip_block_right(
    stage: &GroupRingElem,
    block: &GroupRingElem,
) -> Result<Option<GroupRingElem>, CodecError> {
    match divide_exact(stage, block, Side::Right, STAGE_BUDGET)? {
        DivisionVerdict::Quotient(q) => Ok(Some(q)),
        _ => Ok(None),
    }
}

/// Verifies that `code` is the encoding of `f`: recomputes the packing and
/// compares, then independently re-derives the payloads by block stripping
/// (head condition via the left strip of `A_{m,1}`, tail via the right strip
/// of `A_{m,s+1}`) and checks every payload increment has the shape
/// `alpha_{i+1} (1 - M_{i+1})`.
pub fn check_fq(code: &FqCode, f: &GroupRingElem) -> bool {
    let Ok(repacked) = pack_fq(f) else {
        return false;
    };
    if repacked != *code {
        return false;
    }
    let rank = code.rank;
    let Ok(fam) = markers(rank, code.m) else {
        return false;
    };
    // condition i): the head stage is exactly A_{m,1}.
    let Ok(Some(head_scalar)) = scalar_quotient(&code.stages[0], &a_block(&fam, 1)) else {
        return false;
    };
    if !head_scalar.is_one() {
        return false;
    }
    // conditions iii)/iv): strip each block on the right and check the
    // payload increments; the final strip is by A_{m,s+1}.
    let terms = sorted_support(f);
    let mut prev = GroupRingElem::zero(rank);
    for (i, stage) in code.stages.iter().enumerate().skip(1) {
        let block = a_block(&fam, i + 1);
        let Ok(Some(h)) = strip_block_right(stage, &block) else {
            return false;
        };
        let inc = match h.sub(&prev) {
            Ok(v) => v,
            Err(_) => return false,
        };
        // increment must be alpha (1 - M) for the i-th support term
        let (word, alpha) = &terms[i - 1];
        let mut expected = GroupRingElem::scalar(rank, alpha.clone());
        expected.insert(word.clone(), -alpha.clone());
        if inc != expected {
            return false;
        }
        prev = h;
    }
    // h_s = sum(alpha) - f
    let total: BigRational = terms
        .iter()
        .fold(BigRational::zero(), |acc, (_, a)| acc + a);
    let expected_last = GroupRingElem::scalar(rank, total).sub(f).expect("same rank");
    prev == expected_last
}

/// Brute-force inversion of `pack_fq` over bounded supports: enumerates the
/// candidate supports and solves for the coefficients stage by stage (each
/// stage is linear in the running payload), verifying the full packing.
/// Errors if two distinct preimages match.
pub fn decode_fq_small(
    code: &FqCode,
    max_len: usize,
    max_terms: usize,
) -> Result<Option<GroupRingElem>, CodecError> {
    let rank = code.rank;
    let mut found: Option<GroupRingElem> = None;
    let words: Vec<Word> = {
        let mut v: Vec<Word> = ball(rank, max_len)
            .into_iter()
            .filter(|w| !w.is_identity())
            .collect();
        v.sort_by(|a, b| a.shortlex_cmp(b));
        v
    };
    for k in 1..=max_terms {
        if k > words.len() || k != code.s {
            continue;
        }
        let mut indices: Vec<usize> = (0..k).collect();
        loop {
            let support: Vec<Word> = indices.iter().map(|&i| words[i].clone()).collect();
            if 2 * support.iter().map(|w| w.len()).max().unwrap() == code.m {
                if let Some(f) = solve_support(code, &support)? {
                    if let Some(prev) = &found {
                        if *prev != f {
                            return Err(CodecError::MultiplePreimages);
                        }
                    } else {
                        found = Some(f);
                    }
                }
            }
            if !crate::groupring::next_combination(&mut indices, words.len()) {
                break;
            }
        }
    }
    Ok(found)
}

/// Solves for coefficients on a fixed candidate support by linear algebra on
/// the stage equations, then verifies by repacking.
fn solve_support(
    code: &FqCode,
    support: &[Word],
) -> Result<Option<GroupRingElem>, CodecError> {
    let rank = code.rank;
    let k = support.len();
    // Unknowns alpha_1..alpha_k; stage i (1-based) is
    // (sum_{j<=i} alpha_j (1 - M_j)) * A_{m,i+1}, linear in alpha.
    let fam = markers(rank, code.m)?;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for (i, stage) in code.stages.iter().enumerate().skip(1) {
        let block = a_block(&fam, i + 1);
        // Basis products: (1 - M_j) * block for j <= i.
        let basis: Vec<GroupRingElem> = support[..i]
            .iter()
            .map(|wj| {
                GroupRingElem::one_minus(wj)
                    .mul(&block)
                    .expect("same rank")
            })
            .collect();
        // Row space: all words appearing in the basis or the stage.
        let mut wordset: Vec<Word> = Vec::new();
        {
            use std::collections::HashSet;
            let mut seen: HashSet<Word> = HashSet::new();
            for b in &basis {
                for (w, _) in b.terms() {
                    if seen.insert(w.clone()) {
                        wordset.push(w.clone());
                    }
                }
            }
            for (w, _) in stage.terms() {
                if seen.insert(w.clone()) {
                    wordset.push(w.clone());
                }
            }
        }
        for w in &wordset {
            let mut row = vec![BigRational::zero(); k];
            for (j, b) in basis.iter().enumerate() {
                row[j] = b.coeff(w);
            }
            rows.push(row);
            rhs.push(stage.coeff(w));
        }
    }
    let Some(x) = linalg::solve(rows, rhs) else {
        return Ok(None);
    };
    let mut f = GroupRingElem::zero(rank);
    for (j, w) in support.iter().enumerate() {
        f.insert(w.clone(), x[j].clone());
    }
    if f.is_zero() || !f.constant_coeff().is_zero() {
        return Ok(None);
    }
    match pack_fq(&f) {
        Ok(repacked) if repacked == *code => Ok(Some(f)),
        _ => Ok(None),
    }
}

/// The `(a_m, m)` chain `C_1 (1 - a_2) C_2 (1 - a_3) ... C_{m-1} (1 - a_m) C_m`
/// with `C_i = (1 - c)(1 - a)^{1+i}(1 - b)` over the fixed base markers
/// `a = x1 x2^2`, `b = x1^2 x2^3`, `c = x1^3 x2^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCode {
    pub rank: u32,
    pub m: usize,
    pub stages: Vec<GroupRingElem>,
}

impl ChainCode {
    pub fn expand(&self) -> Result<GroupRingElem, CodecError> {
        expand_stages(self.rank, &self.stages)
    }
}

fn base_markers(rank: u32) -> Result<MarkerFamily, CodecError> {
    if rank < 2 {
        return Err(CodecError::RankTooSmall);
    }
    let fam = MarkerFamily {
        m: 1,
        a: marker_word(rank, 1, 2),
        b: marker_word(rank, 2, 3),
        c: marker_word(rank, 3, 4),
    };
    validate_markers(&fam)?;
    Ok(fam)
}

/// Builds the chain; stages are `C_1` then `(1 - a_i) C_i` for `i = 2..=m`.
pub fn am_chain(rank: u32, m: usize) -> Result<ChainCode, CodecError> {
    if m < 2 {
        return Err(CodecError::ChainTooShort);
    }
    let base = base_markers(rank)?;
    let mut stages = Vec::with_capacity(m);
    stages.push(a_block(&base, 1));
    for i in 2..=m {
        let a_i = markers(rank, i)?.a;
        let stage = GroupRingElem::one_minus(&a_i)
            .mul(&a_block(&base, i))
            .expect("same rank");
        stages.push(stage);
    }
    Ok(ChainCode { rank, m, stages })
}

/// Verifies the chain against `m` by head/tail stripping and stepwise
/// recursion: each payload scalar is recovered as the constant coefficient
/// and the stage must divide exactly by `(1 - a_i) C_i`.
pub fn am_chain_verify(chain: &ChainCode, m: usize) -> Result<bool, CodecError> {
    if m < 2 {
        return Err(CodecError::ChainTooShort);
    }
    if chain.stages.len() != m {
        return Ok(false);
    }
    let rank = chain.rank;
    let base = base_markers(rank)?;
    // head: the first stage is C_1.
    let Some(head_scalar) = scalar_quotient(&chain.stages[0], &a_block(&base, 1))? else {
        return Ok(false);
    };
    let mut scalar_product = head_scalar;
    for (idx, stage) in chain.stages.iter().enumerate().skip(1) {
        let i = idx + 1;
        let beta = stage.constant_coeff();
        if beta.is_zero() {
            return Ok(false);
        }
        let a_i = markers(rank, i)?.a;
        let divisor = GroupRingElem::one_minus(&a_i)
            .mul(&a_block(&base, i))
            .expect("same rank");
        let Some(delta) = scalar_quotient(stage, &divisor)? else {
            return Ok(false);
        };
        if delta != beta {
            return Ok(false);
        }
        scalar_product *= delta;
    }
    Ok(scalar_product.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn w2(letters: &[i32]) -> Word {
        reduce(2, letters).unwrap()
    }

    #[test]
    fn marker_examples() {
        let fam = markers(2, 3).unwrap();
        assert_eq!(fam.b, w2(&[1, 1, 1, 2, 2, 2, 2]));
        assert_eq!(fam.c, w2(&[1, 1, 1, 1, 2, 2, 2, 2, 2]));
        assert_eq!(fam.a, w2(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2]));
    }

    #[test]
    fn a_block_structure() {
        let fam = markers(2, 1).unwrap();
        let block0 = a_block(&fam, 0);
        // (1-c)(1-a)(1-b): eight terms, augmentation zero
        assert_eq!(block0.num_terms(), 8);
        assert_eq!(block0.augmentation(), q(0));
        for i in 0..=3 {
            assert_eq!(a_block(&fam, i).augmentation(), q(0));
        }
    }

    #[test]
    fn rank_too_small() {
        assert_eq!(markers(1, 2), Err(CodecError::RankTooSmall));
    }

    #[test]
    fn encode_single_letter_structure() {
        let code = encode_word(2, &[1]).unwrap();
        assert_eq!(code.m, 1);
        assert_eq!(code.stages.len(), 2);
        let fam = markers(2, 1).unwrap();
        assert_eq!(code.stages[0], a_block(&fam, 0));
        let expected = GroupRingElem::one_minus(&w2(&[1]))
            .mul(&a_block(&fam, 1))
            .unwrap();
        assert_eq!(code.stages[1], expected);
    }

    #[test]
    fn encode_rejects_unreduced() {
        assert_eq!(encode_word(2, &[1, -1]), Err(CodecError::Unreduced(1)));
        assert_eq!(encode_word(2, &[]), Err(CodecError::EmptyTuple));
    }

    #[test]
    fn roundtrip_small() {
        for t in [vec![1], vec![2, 2], vec![1, 2, -1], vec![-2, 1, 1, 2]] {
            let code = encode_word(2, &t).unwrap();
            assert_eq!(decode_word(&code).unwrap(), t, "tuple {t:?}");
        }
    }

    #[test]
    fn staged_decode_matches_expanded_decode() {
        for t in [vec![1], vec![1, 2], vec![-2, -2]] {
            let code = encode_word(2, &t).unwrap();
            let w = code.expand().unwrap();
            assert_eq!(decode_word_expanded(&w, t.len()).unwrap(), t);
            assert_eq!(decode_word(&code).unwrap(), t);
        }
    }

    #[test]
    fn decode_perturbed_fails() {
        let code = encode_word(2, &[1, 2]).unwrap();
        // perturb one coefficient of the last stage
        let mut bad = code.clone();
        let (some_word, _) = bad.stages[2].sorted_terms()[1].clone();
        bad.stages[2].insert(some_word, q(1));
        match decode_word(&bad) {
            Err(CodecError::NoCandidate(_)) | Err(CodecError::Malformed(_)) => {}
            other => panic!("expected decode failure, got {other:?}"),
        }
    }

    #[test]
    fn pack_fq_examples() {
        // f = 3 x1: single payload h1 = 3 - 3 x1
        let f = GroupRingElem::monomial(q(3), w2(&[1]));
        let code = pack_fq(&f).unwrap();
        assert_eq!(code.s, 1);
        assert_eq!(code.m, 2);
        let fam = markers(2, 2).unwrap();
        let mut h1 = GroupRingElem::scalar(2, q(3));
        h1.insert(w2(&[1]), q(-3));
        assert_eq!(code.stages[1], h1.mul(&a_block(&fam, 2)).unwrap());

        // f = x1 - x2: h2 = -x1 + x2 ... plus the constant cancellation
        let f = GroupRingElem::from_word(w2(&[1]))
            .sub(&GroupRingElem::from_word(w2(&[2])))
            .unwrap();
        let code = pack_fq(&f).unwrap();
        assert_eq!(code.s, 2);
        let mut h2 = GroupRingElem::zero(2);
        h2.insert(w2(&[1]), q(-1));
        h2.insert(w2(&[2]), q(1));
        let fam = markers(2, 2).unwrap();
        assert_eq!(code.stages[2], h2.mul(&a_block(&fam, 3)).unwrap());
    }

    #[test]
    fn pack_fq_rejects_bad_inputs() {
        assert_eq!(pack_fq(&GroupRingElem::zero(2)), Err(CodecError::ZeroElement));
        assert_eq!(
            pack_fq(&GroupRingElem::one(2)),
            Err(CodecError::IdentityInSupport)
        );
    }

    #[test]
    fn pack_recovers_f_from_last_payload() {
        // h_s = sum(alpha_i) - f on random-ish elements
        let mut f = GroupRingElem::zero(2);
        f.insert(w2(&[1]), q(2));
        f.insert(w2(&[2, 1]), q(-3));
        f.insert(w2(&[-2]), q(1));
        let code = pack_fq(&f).unwrap();
        let fam = markers(2, code.m).unwrap();
        let h_s = strip_block_right(&code.stages[code.s], &a_block(&fam, code.s + 1))
            .unwrap()
            .unwrap();
        let total = f.augmentation();
        assert_eq!(
            h_s,
            GroupRingElem::scalar(2, total).sub(&f).unwrap()
        );
    }

    #[test]
    fn check_fq_roundtrip_and_mismatch() {
        let f = GroupRingElem::from_word(w2(&[1]))
            .scalar_mul(&q(2))
            .sub(&GroupRingElem::from_word(w2(&[2])))
            .unwrap();
        let code = pack_fq(&f).unwrap();
        assert!(check_fq(&code, &f));
        let other = GroupRingElem::from_word(w2(&[1]));
        assert!(!check_fq(&code, &other));
        let zero_code = FqCode {
            rank: 2,
            s: 0,
            m: 2,
            stages: vec![GroupRingElem::zero(2)],
        };
        assert!(!check_fq(&zero_code, &f));
    }

    #[test]
    fn decode_fq_small_inverts() {
        let f = GroupRingElem::from_word(w2(&[1]))
            .scalar_mul(&q(2))
            .sub(&GroupRingElem::from_word(w2(&[2])))
            .unwrap();
        let code = pack_fq(&f).unwrap();
        let decoded = decode_fq_small(&code, 1, 2).unwrap().unwrap();
        assert_eq!(decoded, f);
    }

    #[test]
    fn decode_fq_rejects_non_codes() {
        let junk = FqCode {
            rank: 2,
            s: 1,
            m: 2,
            stages: vec![GroupRingElem::one(2), GroupRingElem::one(2)],
        };
        assert_eq!(decode_fq_small(&junk, 1, 2).unwrap(), None);
    }

    /// The expanded products of `f` and `-f` coincide when `s` is even: every
    /// payload flips sign, and the product of an even number of sign flips is
    /// the identity. The staged code distinguishes them.
    #[test]
    fn expanded_fq_sign_symmetry() {
        let f = GroupRingElem::from_word(w2(&[1]))
            .sub(&GroupRingElem::from_word(w2(&[2])))
            .unwrap();
        let code_pos = pack_fq(&f).unwrap();
        let code_neg = pack_fq(&f.neg()).unwrap();
        assert_ne!(code_pos, code_neg);
        assert_eq!(
            code_pos.expand().unwrap(),
            code_neg.expand().unwrap()
        );
    }

    #[test]
    fn am_chain_roundtrip() {
        let chain = am_chain(2, 3).unwrap();
        assert!(am_chain_verify(&chain, 3).unwrap());
        assert!(!am_chain_verify(&chain, 4).unwrap());
        assert_eq!(am_chain(2, 1), Err(CodecError::ChainTooShort));
    }

    #[test]
    fn am_chain_head_strip() {
        // am_chain(2) head-strips by C_1 leaving (1 - a_2) C_2.
        let chain = am_chain(2, 2).unwrap();
        let base = base_markers(2).unwrap();
        let expanded = chain.expand().unwrap();
        let rest = match divide_exact(&expanded, &a_block(&base, 1), Side::Left, 1 << 16).unwrap()
        {
            DivisionVerdict::Quotient(q) => q,
            other => panic!("expected quotient, got {other:?}"),
        };
        let a_2 = markers(2, 2).unwrap().a;
        let expected = GroupRingElem::one_minus(&a_2)
            .mul(&a_block(&base, 2))
            .unwrap();
        assert_eq!(rest, expected);
    }
}
