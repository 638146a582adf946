//! Truncated free power series over `Y = {y1..yn}`, the embedding
//! `x_i -> 1 + y_i`, and the induced total order on the free group.
//!
//! Monomials in `Y` are index sequences; for a fixed degree they are ordered
//! left-lexicographically with `y1 < y2 < ... < yn`, so `y1^2 < y1*y2 < y2*y1`.
//! Two series are compared at the first degree where their homogeneous
//! components disagree: the sign of the coefficient of the smallest differing
//! monomial decides. This reproduces `x1 > x2` and
//! `1 + 2y1 + 3y2 < 1 + 3y1 + 2y2`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::words::{Word, WordError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SeriesError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("degree bound mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("no disagreement found up to the degree cap; Magnus embedding injectivity violated")]
    NoDisagreement,
}

/// Y-monomial: sequence of generator indices in `1..=rank`.
pub type Monomial = Vec<u8>;

/// Degree-truncated element of the free power series ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    rank: u32,
    degree_bound: u32,
    terms: HashMap<Monomial, BigRational>,
}

impl PowerSeries {
    pub fn zero(rank: u32, degree_bound: u32) -> Self {
        PowerSeries {
            rank,
            degree_bound,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: u32, degree_bound: u32) -> Self {
        let mut s = Self::zero(rank, degree_bound);
        s.terms.insert(Vec::new(), BigRational::one());
        s
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, m: &[u8]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if m.len() as u32 > self.degree_bound || c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Homogeneous component of the given degree, as sorted (monomial, coeff)
    /// pairs in ascending left-lex order.
    pub fn homogeneous(&self, degree: u32) -> Vec<(Monomial, BigRational)> {
        let mut part: Vec<(Monomial, BigRational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.len() as u32 == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        part.sort_by(|a, b| a.0.cmp(&b.0));
        part
    }

    /// Multiply by `1 + y_i` (positive `sign`) or by `sum_k (-1)^k y_i^k`
    /// (negative `sign`), truncating at the degree bound.
    fn mul_generator(&self, index: u8, sign: bool) -> PowerSeries {
        let mut out = PowerSeries::zero(self.rank, self.degree_bound);
        for (m, c) in &self.terms {
            if sign {
                out.insert(m.clone(), c.clone());
                let mut m2 = m.clone();
                m2.push(index);
                out.insert(m2, c.clone());
            } else {
                let room = self.degree_bound as usize - m.len();
                let mut mk = m.clone();
                for k in 0..=room {
                    let coeff = if k % 2 == 0 { c.clone() } else { -c.clone() };
                    out.insert(mk.clone(), coeff);
                    mk.push(index);
                }
            }
        }
        out.normalize();
        out
    }
}

/// Image of a word under `x_i -> 1 + y_i`, truncated beyond `degree_bound`.
pub fn embed_word(u: &Word, degree_bound: u32) -> PowerSeries {
    let mut s = PowerSeries::one(u.rank(), degree_bound);
    for &l in u.letters() {
        s = s.mul_generator(l.unsigned_abs() as u8, l > 0);
    }
    s
}

pub fn ps_add(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    check_compat(f, g)?;
    let mut out = f.clone();
    for (m, c) in &g.terms {
        out.insert(m.clone(), c.clone());
    }
    out.normalize();
    Ok(out)
}

pub fn ps_neg(f: &PowerSeries) -> PowerSeries {
    let mut out = f.clone();
    for c in out.terms.values_mut() {
        *c = -c.clone();
    }
    out
}

fn check_compat(f: &PowerSeries, g: &PowerSeries) -> Result<(), SeriesError> {
    if f.rank != g.rank {
        return Err(SeriesError::RankMismatch(f.rank, g.rank));
    }
    if f.degree_bound != g.degree_bound {
        return Err(SeriesError::DegreeMismatch(f.degree_bound, g.degree_bound));
    }
    Ok(())
}

/// Truncated product.
pub fn ps_mul(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    check_compat(f, g)?;
    let mut out = PowerSeries::zero(f.rank, f.degree_bound);
    for (mf, cf) in &f.terms {
        for (mg, cg) in &g.terms {
            if mf.len() + mg.len() > f.degree_bound as usize {
                continue;
            }
            let mut m = mf.clone();
            m.extend_from_slice(mg);
            out.insert(m, cf * cg);
        }
    }
    out.normalize();
    Ok(out)
}

/// Truncated two-sided inverse via the geometric series; requires a nonzero
/// constant term.
pub fn ps_inv(f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let c = f.constant_term();
    if c.is_zero() {
        return Err(SeriesError::NotInvertible);
    }
    // u = 1 - f/c has no constant term, so u^k vanishes beyond degree k.
    let cinv = BigRational::one() / c;
    let mut u = ps_neg(f);
    for coeff in u.terms.values_mut() {
        *coeff *= &cinv;
    }
    u.insert(Vec::new(), BigRational::one());
    u.normalize();

    let mut acc = PowerSeries::one(f.rank, f.degree_bound);
    let mut power = PowerSeries::one(f.rank, f.degree_bound);
    for _ in 0..f.degree_bound {
        power = ps_mul(&power, &u)?;
        if power.terms.is_empty() {
            break;
        }
        acc = ps_add(&acc, &power)?;
    }
    for coeff in acc.terms.values_mut() {
        *coeff *= &cinv;
    }
    acc.normalize();
    Ok(acc)
}

/// Outcome of a Bergman comparison, carrying the first degree of disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVerdict {
    Less(u32),
    Equal,
    Greater(u32),
}

impl OrderVerdict {
    pub fn as_ordering(self) -> Ordering {
        match self {
            OrderVerdict::Less(_) => Ordering::Less,
            OrderVerdict::Equal => Ordering::Equal,
            OrderVerdict::Greater(_) => Ordering::Greater,
        }
    }

    pub fn degree(self) -> Option<u32> {
        match self {
            OrderVerdict::Less(d) | OrderVerdict::Greater(d) => Some(d),
            OrderVerdict::Equal => None,
        }
    }
}

/// Compare two homogeneous components; `Less` means the first series is
/// smaller. Looks at the smallest monomial of the difference `g - f`.
fn cmp_homogeneous(
    f: &PowerSeries,
    g: &PowerSeries,
    degree: u32,
) -> Option<Ordering> {
    let fpart = f.homogeneous(degree);
    let gpart = g.homogeneous(degree);
    // Merge the two sorted lists, find the smallest monomial where they differ.
    let mut i = 0;
    let mut j = 0;
    loop {
        match (fpart.get(i), gpart.get(j)) {
            (None, None) => return None,
            (Some((_, cf)), None) => {
                // diff coefficient is -cf
                return Some(if cf.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                });
            }
            (None, Some((_, cg))) => {
                return Some(if cg.is_positive() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                });
            }
            (Some((mf, cf)), Some((mg, cg))) => match mf.cmp(mg) {
                Ordering::Less => {
                    return Some(if cf.is_negative() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    });
                }
                Ordering::Greater => {
                    return Some(if cg.is_positive() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    });
                }
                Ordering::Equal => {
                    if cf != cg {
                        let diff = cg - cf;
                        return Some(if diff.is_positive() {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        });
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

/// Series-level Bergman comparison: first degree of disagreement, then the
/// sign of the smallest differing monomial's coefficient in `g - f`.
pub fn ps_bergman_cmp(f: &PowerSeries, g: &PowerSeries) -> Result<OrderVerdict, SeriesError> {
    check_compat(f, g)?;
    for d in 0..=f.degree_bound {
        if let Some(ord) = cmp_homogeneous(f, g, d) {
            return Ok(match ord {
                Ordering::Less => OrderVerdict::Less(d),
                Ordering::Greater => OrderVerdict::Greater(d),
                Ordering::Equal => unreachable!(),
            });
        }
    }
    Ok(OrderVerdict::Equal)
}

/// Total bi-invariant order on the free group via the Magnus embedding.
///
/// Embeddings are computed at increasing degree bounds until the homogeneous
/// components differ; distinct reduced words must disagree by degree
/// `|u| + |v|`.
pub fn bergman_cmp(u: &Word, v: &Word) -> Result<OrderVerdict, SeriesError> {
    if u.rank() != v.rank() {
        return Err(SeriesError::RankMismatch(u.rank(), v.rank()));
    }
    if u == v {
        return Ok(OrderVerdict::Equal);
    }
    // Degree-1 components are the abelianization vectors.
    let au = u.abelianize();
    let av = v.abelianize();
    if au != av {
        for (a, b) in au.iter().zip(&av) {
            match a.cmp(b) {
                Ordering::Less => return Ok(OrderVerdict::Less(1)),
                Ordering::Greater => return Ok(OrderVerdict::Greater(1)),
                Ordering::Equal => {}
            }
        }
    }
    let cap = (u.len() + v.len()) as u32;
    for d in 2..=cap {
        let fu = embed_word(u, d);
        let fv = embed_word(v, d);
        if let Some(ord) = cmp_homogeneous(&fu, &fv, d) {
            return Ok(match ord {
                Ordering::Less => OrderVerdict::Less(d),
                Ordering::Greater => OrderVerdict::Greater(d),
                Ordering::Equal => unreachable!(),
            });
        }
    }
    Err(SeriesError::NoDisagreement)
}

/// `true` iff `u > 1` in the Bergman order.
pub fn is_positive(u: &Word) -> bool {
    matches!(
        bergman_cmp(u, &Word::identity(u.rank())).expect("identity comparison"),
        OrderVerdict::Greater(_)
    )
}
