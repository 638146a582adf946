//! Reduced words of a finitely generated free group.
//!
//! A [`Word`] is a freely reduced sequence of nonzero signed letters over the
//! generators `x1..xn`: the letter `i` stands for `x_i`, the letter `-i` for
//! `x_i^{-1}`. The empty sequence is the identity.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("letter {0} is zero")]
    ZeroLetter(i32),
    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: i32, rank: u32 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("operation requires a nonidentity word")]
    IdentityInput,
}

/// A freely reduced word in `F(x1..xn)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<i32>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(r{}, {:?})", self.rank, self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &l in &self.letters {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

fn check_letter(letter: i32, rank: u32) -> Result<(), WordError> {
    if letter == 0 {
        return Err(WordError::ZeroLetter(letter));
    }
    if letter.unsigned_abs() > rank {
        return Err(WordError::LetterOutOfRange { letter, rank });
    }
    Ok(())
}

/// Freely reduce a raw letter sequence. Idempotent.
pub fn reduce(rank: u32, raw: &[i32]) -> Result<Word, WordError> {
    let mut letters: Vec<i32> = Vec::with_capacity(raw.len());
    for &l in raw {
        check_letter(l, rank)?;
        if letters.last() == Some(&-l) {
            letters.pop();
        } else {
            letters.push(l);
        }
    }
    Ok(Word { rank, letters })
}

impl Word {
    pub fn identity(rank: u32) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Single generator `x_i` (or its inverse for negative `letter`).
    pub fn generator(rank: u32, letter: i32) -> Result<Self, WordError> {
        check_letter(letter, rank)?;
        Ok(Word {
            rank,
            letters: vec![letter],
        })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn inv(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base).expect("equal ranks");
        }
        out
    }

    /// Splits `u = conjugator * core * conjugator^{-1}` with `core` cyclically
    /// reduced and the conjugator of minimal length.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == -self.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[lo..hi].to_vec(),
        };
        let conjugator = Word {
            rank: self.rank,
            letters: self.letters[..lo].to_vec(),
        };
        (core, conjugator)
    }

    /// Returns `(root, exponent)` with `self = root^exponent` and `root` not a
    /// proper power. Cyclic reduction plus failure-function period detection.
    pub fn primitive_root(&self) -> Result<(Word, u32), WordError> {
        if self.is_identity() {
            return Err(WordError::IdentityInput);
        }
        let (core, conj) = self.cyclic_reduce();
        let n = core.letters.len();
        let period = smallest_period(&core.letters);
        let exponent = if n % period == 0 { (n / period) as u32 } else { 1 };
        let period = if n % period == 0 { period } else { n };
        let root_core = Word {
            rank: self.rank,
            letters: core.letters[..period].to_vec(),
        };
        let root = conj
            .mul(&root_core)
            .and_then(|w| w.mul(&conj.inv()))
            .expect("equal ranks");
        Ok((root, exponent))
    }

    /// Exponent-sum vector: component `i` is the total exponent of `x_{i+1}`.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for &l in &self.letters {
            let idx = (l.unsigned_abs() - 1) as usize;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }

    /// Shortlex comparison: length first, then lexicographic on letters with
    /// the order `1 < -1 < 2 < -2 < ...`.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| {
                for (&a, &b) in self.letters.iter().zip(&other.letters) {
                    let ka = letter_key(a);
                    let kb = letter_key(b);
                    if ka != kb {
                        return ka.cmp(&kb);
                    }
                }
                Ordering::Equal
            })
    }
}

fn letter_key(l: i32) -> (u32, u8) {
    (l.unsigned_abs(), if l > 0 { 0 } else { 1 })
}

/// Smallest `p` such that `letters` is `p`-periodic (`letters[j] == letters[j+p]`
/// wherever both sides exist). The word is a full power of its length-`p`
/// prefix iff `p` divides the length.
fn smallest_period(letters: &[i32]) -> usize {
    let n = letters.len();
    if n == 0 {
        return 1;
    }
    // KMP failure function.
    let mut fail = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && letters[i] != letters[k] {
            k = fail[k - 1];
        }
        if letters[i] == letters[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

/// All words of length exactly `len` over the given rank, in lexicographic
/// order of the letter sequence (letter order `1 < -1 < 2 < -2 < ...`).
pub fn words_of_length(rank: u32, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let alphabet: Vec<i32> = (1..=rank as i32).flat_map(|i| [i, -i]).collect();
    let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in &stack {
            for &l in &alphabet {
                if prefix.last() == Some(&-l) {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(l);
                next.push(p);
            }
        }
        stack = next;
    }
    for letters in stack {
        out.push(Word { rank, letters });
    }
    out
}

/// All words of length at most `radius`, identity first, then by length.
pub fn ball(rank: u32, radius: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=radius {
        out.extend(words_of_length(rank, len));
    }
    out
}
