//! JSON wire formats. Numeric values are exact `{num, den}` pairs; terms are
//! sorted canonically (shortlex on words, graded-lex on exponents) so the
//! round trip is bit-exact.

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::{ChainCode, FqCode, WordCode};
use crate::geometry::CoreGraph;
use crate::groupring::GroupRingElem;
use crate::laurent::{LaurentPoly, TupleCode};
use crate::words::{reduce, Word};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum JsonError {
    #[error("coefficient does not fit in 64-bit integers")]
    CoefficientOverflow,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero coefficient in terms")]
    ZeroCoefficient,
    #[error("bad word: {0}")]
    BadWord(String),
    #[error("exponent vector has wrong length")]
    BadExponents,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl RationalJson {
    pub fn from_rational(c: &BigRational) -> Result<Self, JsonError> {
        let num: i64 = c
            .numer()
            .try_into()
            .map_err(|_| JsonError::CoefficientOverflow)?;
        let den: i64 = c
            .denom()
            .try_into()
            .map_err(|_| JsonError::CoefficientOverflow)?;
        Ok(RationalJson { num, den })
    }

    pub fn to_rational(&self) -> Result<BigRational, JsonError> {
        if self.den == 0 {
            return Err(JsonError::ZeroDenominator);
        }
        Ok(BigRational::new(
            BigInt::from(self.num),
            BigInt::from(self.den),
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupRingTermJson {
    pub num: i64,
    pub den: i64,
    pub word: Vec<i32>,
}

/// `{"rank": n, "terms": [{"num", "den", "word"}, ...]}` sorted shortlex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupRingElemJson {
    pub rank: u32,
    pub terms: Vec<GroupRingTermJson>,
}

impl GroupRingElemJson {
    pub fn from_elem(f: &GroupRingElem) -> Result<Self, JsonError> {
        let mut terms = Vec::with_capacity(f.num_terms());
        for (word, coeff) in f.sorted_terms() {
            let r = RationalJson::from_rational(&coeff)?;
            terms.push(GroupRingTermJson {
                num: r.num,
                den: r.den,
                word: word.letters().to_vec(),
            });
        }
        Ok(GroupRingElemJson {
            rank: f.rank(),
            terms,
        })
    }

    pub fn to_elem(&self) -> Result<GroupRingElem, JsonError> {
        let mut f = GroupRingElem::zero(self.rank);
        for t in &self.terms {
            let c = RationalJson {
                num: t.num,
                den: t.den,
            }
            .to_rational()?;
            if c.is_zero() {
                return Err(JsonError::ZeroCoefficient);
            }
            let w = parse_word(self.rank, &t.word)?;
            f.insert(w, c);
        }
        Ok(f)
    }
}

pub fn parse_word(rank: u32, letters: &[i32]) -> Result<Word, JsonError> {
    let w = reduce(rank, letters).map_err(|e| JsonError::BadWord(e.to_string()))?;
    if w.letters() != letters {
        return Err(JsonError::BadWord("word is not freely reduced".into()));
    }
    Ok(w)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentTermJson {
    pub num: i64,
    pub den: i64,
    pub exps: Vec<i64>,
}

/// `{"nvars": k, "terms": [{"num", "den", "exps"}, ...]}` sorted graded-lex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentPolyJson {
    pub nvars: u32,
    pub terms: Vec<LaurentTermJson>,
}

impl LaurentPolyJson {
    pub fn from_poly(p: &LaurentPoly) -> Result<Self, JsonError> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (exps, coeff) in p.sorted_terms() {
            let r = RationalJson::from_rational(&coeff)?;
            terms.push(LaurentTermJson {
                num: r.num,
                den: r.den,
                exps,
            });
        }
        Ok(LaurentPolyJson {
            nvars: p.nvars(),
            terms,
        })
    }

    pub fn to_poly(&self) -> Result<LaurentPoly, JsonError> {
        let mut p = LaurentPoly::zero(self.nvars);
        for t in &self.terms {
            let c = RationalJson {
                num: t.num,
                den: t.den,
            }
            .to_rational()?;
            if c.is_zero() {
                return Err(JsonError::ZeroCoefficient);
            }
            if t.exps.len() != self.nvars as usize {
                return Err(JsonError::BadExponents);
            }
            p.insert(t.exps.clone(), c);
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleCodeJson {
    pub value: LaurentPolyJson,
    pub marker: LaurentPolyJson,
    pub base: LaurentPolyJson,
}

impl TupleCodeJson {
    pub fn from_code(c: &TupleCode) -> Result<Self, JsonError> {
        Ok(TupleCodeJson {
            value: LaurentPolyJson::from_poly(&c.value)?,
            marker: LaurentPolyJson::from_poly(&c.marker)?,
            base: LaurentPolyJson::from_poly(&c.base)?,
        })
    }

    pub fn to_code(&self) -> Result<TupleCode, JsonError> {
        Ok(TupleCode {
            value: self.value.to_poly()?,
            marker: self.marker.to_poly()?,
            base: self.base.to_poly()?,
        })
    }
}

/// Word code: `{"m", "rank", "stages"}`, or `{"m", "rank", "w"}` when carrying
/// the fully expanded product (small `m` only).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordCodeJson {
    pub rank: u32,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<GroupRingElemJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<GroupRingElemJson>,
}

impl WordCodeJson {
    pub fn from_code(c: &WordCode) -> Result<Self, JsonError> {
        Ok(WordCodeJson {
            rank: c.rank,
            m: c.m,
            stages: Some(
                c.stages
                    .iter()
                    .map(GroupRingElemJson::from_elem)
                    .collect::<Result<_, _>>()?,
            ),
            w: None,
        })
    }

    pub fn from_code_expanded(c: &WordCode, w: &GroupRingElem) -> Result<Self, JsonError> {
        Ok(WordCodeJson {
            rank: c.rank,
            m: c.m,
            stages: None,
            w: Some(GroupRingElemJson::from_elem(w)?),
        })
    }
}

/// Element code: the spec's `{"s", "m", "const", ...}` envelope with staged
/// or expanded payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FqCodeJson {
    pub rank: u32,
    pub s: usize,
    pub m: usize,
    #[serde(rename = "const")]
    pub constant: RationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<GroupRingElemJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<GroupRingElemJson>,
}

impl FqCodeJson {
    pub fn from_code(c: &FqCode, constant: &BigRational) -> Result<Self, JsonError> {
        Ok(FqCodeJson {
            rank: c.rank,
            s: c.s,
            m: c.m,
            constant: RationalJson::from_rational(constant)?,
            stages: Some(
                c.stages
                    .iter()
                    .map(GroupRingElemJson::from_elem)
                    .collect::<Result<_, _>>()?,
            ),
            w: None,
        })
    }

    pub fn to_code(&self) -> Result<Option<FqCode>, JsonError> {
        let Some(stages) = &self.stages else {
            return Ok(None);
        };
        Ok(Some(FqCode {
            rank: self.rank,
            s: self.s,
            m: self.m,
            stages: stages
                .iter()
                .map(GroupRingElemJson::to_elem)
                .collect::<Result<_, _>>()?,
        }))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainCodeJson {
    pub rank: u32,
    pub m: usize,
    pub stages: Vec<GroupRingElemJson>,
}

impl ChainCodeJson {
    pub fn from_code(c: &ChainCode) -> Result<Self, JsonError> {
        Ok(ChainCodeJson {
            rank: c.rank,
            m: c.m,
            stages: c
                .stages
                .iter()
                .map(GroupRingElemJson::from_elem)
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn to_code(&self) -> Result<ChainCode, JsonError> {
        Ok(ChainCode {
            rank: self.rank,
            m: self.m,
            stages: self
                .stages
                .iter()
                .map(GroupRingElemJson::to_elem)
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `{"vertices": n, "base": 0, "edges": [[src, dst, label], ...]}` with
/// vertices renumbered canonically by BFS from the base.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoreGraphJson {
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl CoreGraphJson {
    pub fn from_graph(g: &CoreGraph) -> Self {
        CoreGraphJson {
            vertices: g.num_vertices(),
            base: 0,
            edges: g.edges(),
        }
    }
}

impl WordCodeJson {
    pub fn to_code(&self) -> Result<Option<WordCode>, JsonError> {
        let Some(stages) = &self.stages else {
            return Ok(None);
        };
        Ok(Some(WordCode {
            rank: self.rank,
            m: self.m,
            stages: stages
                .iter()
                .map(GroupRingElemJson::to_elem)
                .collect::<Result<_, _>>()?,
        }))
    }
}
