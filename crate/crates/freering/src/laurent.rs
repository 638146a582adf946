//! Commutative multivariate Laurent polynomials over the rationals, with the
//! definable-subring membership tests, the psi-formula checker, tuple codes
//! `(sum a_i P^i, P^n)`, and their transport between bases.

use std::collections::HashMap;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

pub type Coefficient = BigRational;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("invalid parameter P: {0}")]
    InvalidP(&'static str),
    #[error("exponent vector g must be nonzero")]
    ZeroVector,
    #[error("g must be a non-constant monomial")]
    NotMonomial,
    #[error("tuple must be nonempty")]
    EmptyTuple,
    #[error("marker is not a power of the base")]
    MarkerNotPower,
    #[error("value is not a polynomial in the base")]
    NotInKP,
    #[error("value degree exceeds the marker power")]
    ValueExceedsMarker,
    #[error("both exponents are zero")]
    BothZero,
}

/// Finite map from integer exponent vectors to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    nvars: u32,
    terms: HashMap<Vec<i64>, Coefficient>,
}

impl LaurentPoly {
    pub fn zero(nvars: u32) -> Self {
        LaurentPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(nvars: u32, c: Coefficient) -> Self {
        let mut p = Self::zero(nvars);
        p.insert(vec![0; nvars as usize], c);
        p
    }

    pub fn one(nvars: u32) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn monomial(nvars: u32, exps: Vec<i64>, c: Coefficient) -> Self {
        assert_eq!(exps.len(), nvars as usize, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.insert(exps, c);
        p
    }

    /// Single variable `X^e` in one variable.
    pub fn var_pow(e: i64) -> Self {
        Self::monomial(1, vec![e], BigRational::one())
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn coeff(&self, exps: &[i64]) -> Coefficient {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coefficient)> {
        self.terms.iter()
    }

    /// Terms sorted by graded-lex exponent order (total degree, then lex).
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, Coefficient)> {
        let mut v: Vec<(Vec<i64>, Coefficient)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| graded_lex(&a.0, &b.0));
        v
    }

    pub fn insert(&mut self, exps: Vec<i64>, c: Coefficient) {
        assert_eq!(exps.len(), self.nvars as usize, "exponent vector length");
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(exps) {
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

    fn check(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Coefficient) -> LaurentPoly {
        if s.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same nvars");
        }
        out
    }

    /// Componentwise minimum exponent over all terms (None for zero).
    pub fn min_exps(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    /// Single-variable max/min exponent (only meaningful for nvars == 1).
    pub fn max_exp1(&self) -> Option<i64> {
        self.terms.keys().map(|e| e[0]).max()
    }

    pub fn min_exp1(&self) -> Option<i64> {
        self.terms.keys().map(|e| e[0]).min()
    }
}

fn graded_lex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// `d * q = f` for some Laurent polynomial `q`, if one exists.
///
/// Clears denominators by shifting both operands into the polynomial subring,
/// then runs single-divisor multivariate division with graded-lex leading-term
/// peeling; the quotient is shifted back.
pub fn divides_exact(d: &LaurentPoly, f: &LaurentPoly) -> Result<Option<LaurentPoly>, LaurentError> {
    d.check(f)?;
    if d.is_zero() {
        return Err(LaurentError::ZeroDivisor);
    }
    if f.is_zero() {
        return Ok(Some(LaurentPoly::zero(f.nvars)));
    }
    let shift_d = d.min_exps().unwrap();
    let shift_f = f.min_exps().unwrap();
    let unshift: Vec<i64> = shift_f.iter().zip(&shift_d).map(|(a, b)| a - b).collect();

    let dp = shift_poly(d, &shift_d);
    let mut r = shift_poly(f, &shift_f);
    let mut q = LaurentPoly::zero(f.nvars);

    let lt_d = leading_term(&dp);
    while !r.is_zero() {
        let lt_r = leading_term(&r);
        if !lt_d.0.iter().zip(&lt_r.0).all(|(a, b)| a <= b) {
            return Ok(None);
        }
        let te: Vec<i64> = lt_r.0.iter().zip(&lt_d.0).map(|(a, b)| a - b).collect();
        let tc = &lt_r.1 / &lt_d.1;
        let t = LaurentPoly::monomial(f.nvars, te, tc);
        q = q.add(&t)?;
        r = r.sub(&dp.mul(&t)?)?;
    }
    let shift_mono = LaurentPoly::monomial(f.nvars, unshift, BigRational::one());
    Ok(Some(q.mul(&shift_mono)?))
}

fn shift_poly(p: &LaurentPoly, shift: &[i64]) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.nvars);
    for (e, c) in &p.terms {
        let ne: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a - b).collect();
        out.insert(ne, c.clone());
    }
    out
}

fn leading_term(p: &LaurentPoly) -> (Vec<i64>, Coefficient) {
    p.terms
        .iter()
        .max_by(|a, b| graded_lex(a.0, b.0))
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("nonzero polynomial")
}

/// `1 - x1^m x2^n` is irreducible in the two-variable Laurent algebra iff
/// `m` and `n` are relatively prime (with `gcd(k, 0) = |k|`).
pub fn binomial_irreducible(m: i64, n: i64) -> Result<bool, LaurentError> {
    if m == 0 && n == 0 {
        return Err(LaurentError::BothZero);
    }
    Ok(num_integer::gcd(m.unsigned_abs(), n.unsigned_abs()) == 1)
}

fn validate_p(p: &LaurentPoly) -> Result<(), LaurentError> {
    if p.nvars != 1 {
        return Err(LaurentError::NvarsMismatch(p.nvars, 1));
    }
    if p.is_zero() || p.is_monomial() {
        return Err(LaurentError::InvalidP("P must be a non-unit"));
    }
    if p.num_terms() < 3 {
        return Err(LaurentError::InvalidP("P must be the sum of at least three monomials"));
    }
    Ok(())
}

/// Membership of `Q` in the polynomial subring `K[P]` of `K[X, X^{-1}]`:
/// returns the coefficients `(c_0, ..., c_N)` with `Q = sum c_i P^i`, or
/// `None`.
///
/// The representation is unique (spans of the powers of `P` strictly
/// increase), so the top coefficient is forced at every step: the linear
/// system on coefficient vectors is triangular and is solved by peeling the
/// extreme exponent.
pub fn in_kp(q: &LaurentPoly, p: &LaurentPoly) -> Result<Option<Vec<Coefficient>>, LaurentError> {
    validate_p(p)?;
    if q.nvars != 1 {
        return Err(LaurentError::NvarsMismatch(q.nvars, 1));
    }
    if let Some(c) = q.as_constant() {
        return Ok(Some(vec![c]));
    }
    let max_p = p.max_exp1().unwrap();
    let min_p = p.min_exp1().unwrap();
    // Anchor on whichever extreme exponent of P is nonzero; spans of P^i
    // grow strictly, so the anchored exponent identifies the top power.
    let top_anchor = max_p > 0;
    let (anchor_p, anchor_coeff) = if top_anchor {
        (max_p, p.coeff(&[max_p]))
    } else {
        // max_p <= 0 forces min_p < 0 since P has at least three terms.
        (min_p, p.coeff(&[min_p]))
    };

    let mut coeffs: HashMap<u32, Coefficient> = HashMap::new();
    let mut r = q.clone();
    let mut powers: Vec<LaurentPoly> = vec![LaurentPoly::one(1), p.clone()];
    let mut top_n = 0u32;
    loop {
        if let Some(c) = r.as_constant() {
            if !c.is_zero() {
                coeffs.insert(0, c);
            }
            break;
        }
        let e = if top_anchor {
            r.max_exp1().unwrap()
        } else {
            r.min_exp1().unwrap()
        };
        if e == 0 || e % anchor_p != 0 {
            return Ok(None);
        }
        let i = e / anchor_p;
        if i < 1 || (top_anchor && e < 0) || (!top_anchor && e > 0) {
            return Ok(None);
        }
        let i = i as u32;
        while powers.len() <= i as usize {
            let next = powers.last().unwrap().mul(p)?;
            powers.push(next);
        }
        let lead_pow = num::pow::pow(anchor_coeff.clone(), i as usize);
        let ci = r.coeff(&[e]) / lead_pow;
        r = r.sub(&powers[i as usize].scalar_mul(&ci))?;
        if coeffs.insert(i, ci).is_some() {
            // The anchored exponent strictly decreases, so each power is
            // peeled at most once.
            unreachable!("power peeled twice");
        }
        top_n = top_n.max(i);
    }
    let mut out = vec![BigRational::zero(); top_n as usize + 1];
    for (i, c) in coeffs {
        out[i as usize] = c;
    }
    Ok(Some(out))
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsiOutcome {
    Pass,
    Fail { witness: Coefficient },
}

/// Sampled check of `psi(Q, P) = forall a in K exists b in K (P - a | Q - b)`.
///
/// Each sample is decided exactly: `Q` is reduced in the quotient
/// `K[X, X^{-1}] / (P - a)` (a finite-dimensional algebra once the generator
/// is shifted to a polynomial with nonzero constant term), and a suitable `b`
/// exists iff the residue is a constant. Pass on a finite sample set is
/// corroborative; Fail refutes membership in `K[P]`.
pub fn psi_check(
    q: &LaurentPoly,
    p: &LaurentPoly,
    samples: &[Coefficient],
) -> Result<PsiOutcome, LaurentError> {
    validate_p(p)?;
    if q.nvars != 1 {
        return Err(LaurentError::NvarsMismatch(q.nvars, 1));
    }
    for alpha in samples {
        if !divisible_by_p_minus_alpha_up_to_constant(q, p, alpha)? {
            return Ok(PsiOutcome::Fail {
                witness: alpha.clone(),
            });
        }
    }
    Ok(PsiOutcome::Pass)
}

fn divisible_by_p_minus_alpha_up_to_constant(
    q: &LaurentPoly,
    p: &LaurentPoly,
    alpha: &Coefficient,
) -> Result<bool, LaurentError> {
    let pa = p.sub(&LaurentPoly::constant(1, alpha.clone()))?;
    if pa.is_zero() {
        // P is constant; excluded by validate_p.
        return Ok(false);
    }
    let min = pa.min_exp1().unwrap();
    // g = X^{-min} (P - alpha): polynomial with nonzero constant term.
    let g: Vec<Coefficient> = {
        let deg = (pa.max_exp1().unwrap() - min) as usize;
        let mut v = vec![BigRational::zero(); deg + 1];
        for (e, c) in pa.terms() {
            v[(e[0] - min) as usize] = c.clone();
        }
        v
    };
    let d = g.len() - 1;
    if d == 0 {
        // P - alpha is a monomial: divides everything minus a suitable beta
        // only when Q itself is a multiple plus constant; a unit divides all.
        return Ok(true);
    }
    // Residues are polynomials of degree < d.
    let reduce = |v: &mut Vec<Coefficient>| {
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = v.len() - d;
            let factor = top / &g[d];
            for j in 0..d {
                let idx = k + j;
                let delta = &factor * &g[j];
                v[idx] -= delta;
            }
        }
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    // X^{-1} mod g = -g0^{-1} (g1 + g2 X + ... + gd X^{d-1}).
    let g0_inv = BigRational::one() / &g[0];
    let x_inv: Vec<Coefficient> = (1..=d).map(|j| -(&g0_inv * &g[j])).collect();

    let mul_mod = |a: &[Coefficient], b: &[Coefficient]| -> Vec<Coefficient> {
        let mut v = vec![BigRational::zero(); a.len() + b.len()];
        for (i, ca) in a.iter().enumerate() {
            for (j, cb) in b.iter().enumerate() {
                v[i + j] += ca * cb;
            }
        }
        let mut v = v;
        reduce(&mut v);
        v
    };

    let max_e = q.max_exp1().unwrap().max(0);
    let min_e = q.min_exp1().unwrap().min(0);
    // Precompute X^e mod g for the needed exponent range.
    let mut pos_powers: Vec<Vec<Coefficient>> = vec![vec![BigRational::one()]];
    for _ in 1..=max_e {
        let prev = pos_powers.last().unwrap();
        let mut next = vec![BigRational::zero(); prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = c.clone();
        }
        reduce(&mut next);
        pos_powers.push(next);
    }
    let mut neg_powers: Vec<Vec<Coefficient>> = vec![vec![BigRational::one()]];
    for _ in 1..=(-min_e) {
        let prev = neg_powers.last().unwrap().clone();
        neg_powers.push(mul_mod(&prev, &x_inv));
    }

    let mut residue = vec![BigRational::zero(); d];
    for (e, c) in q.terms() {
        let basis = if e[0] >= 0 {
            &pos_powers[e[0] as usize]
        } else {
            &neg_powers[(-e[0]) as usize]
        };
        for (i, bc) in basis.iter().enumerate() {
            residue[i] += c * bc;
        }
    }
    Ok(residue.iter().skip(1).all(|c| c.is_zero()))
}

/// Membership of `Q` in `K[g, g^{-1}]` for a monomial `g = X^gamma`: returns
/// the window half-width `N` and the coefficients indexed `-N..=N`, or `None`.
pub fn in_k_g(
    q: &LaurentPoly,
    gamma: &[i64],
) -> Result<Option<(i64, Vec<Coefficient>)>, LaurentError> {
    if gamma.iter().all(|&x| x == 0) {
        return Err(LaurentError::ZeroVector);
    }
    if gamma.len() != q.nvars as usize {
        return Err(LaurentError::NvarsMismatch(q.nvars, gamma.len() as u32));
    }
    let pivot = gamma.iter().position(|&x| x != 0).unwrap();
    let mut found: HashMap<i64, Coefficient> = HashMap::new();
    for (e, c) in q.terms() {
        if e[pivot] % gamma[pivot] != 0 {
            return Ok(None);
        }
        let i = e[pivot] / gamma[pivot];
        let on_line = e.iter().zip(gamma).all(|(&ee, &gg)| ee == i * gg);
        if !on_line {
            return Ok(None);
        }
        found.insert(i, c.clone());
    }
    let n = found.keys().map(|i| i.abs()).max().unwrap_or(0);
    let mut out = vec![BigRational::zero(); (2 * n + 1) as usize];
    for (i, c) in found {
        out[(i + n) as usize] = c;
    }
    Ok(Some((n, out)))
}

/// The powers predicate: `x` is a unit outside `K` with `(g - 1) | (x - 1)`.
/// For `g` not a proper power this holds exactly when `x = g^k`, `k != 0`.
pub fn powers_predicate(x: &LaurentPoly, g: &LaurentPoly) -> Result<bool, LaurentError> {
    if !g.is_monomial() || g.is_constant() {
        return Err(LaurentError::NotMonomial);
    }
    x.check(g)?;
    if !x.is_monomial() || x.is_constant() {
        return Ok(false);
    }
    let one = LaurentPoly::one(x.nvars);
    let gm1 = g.sub(&one)?;
    let xm1 = x.sub(&one)?;
    Ok(divides_exact(&gm1, &xm1)?.is_some())
}

/// The pair `(sum a_i P^i, P^n)` encoding a tuple of field elements.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleCode {
    pub value: LaurentPoly,
    pub marker: LaurentPoly,
    pub base: LaurentPoly,
}

pub fn tuple_encode(alphas: &[Coefficient], p: &LaurentPoly) -> Result<TupleCode, LaurentError> {
    validate_p(p)?;
    if alphas.is_empty() {
        return Err(LaurentError::EmptyTuple);
    }
    let n = alphas.len() - 1;
    let mut value = LaurentPoly::zero(1);
    let mut power = LaurentPoly::one(1);
    for (i, a) in alphas.iter().enumerate() {
        value = value.add(&power.scalar_mul(a))?;
        if i < n {
            power = power.mul(p)?;
        }
    }
    let marker = p.pow(n as u32);
    Ok(TupleCode {
        value,
        marker,
        base: p.clone(),
    })
}

pub fn tuple_decode(code: &TupleCode) -> Result<Vec<Coefficient>, LaurentError> {
    validate_p(&code.base)?;
    let n = marker_power(&code.marker, &code.base)?;
    let coeffs = in_kp(&code.value, &code.base)?.ok_or(LaurentError::NotInKP)?;
    if coeffs.len() > n as usize + 1 {
        return Err(LaurentError::ValueExceedsMarker);
    }
    let mut out = coeffs;
    out.resize(n as usize + 1, BigRational::zero());
    Ok(out)
}

fn marker_power(marker: &LaurentPoly, base: &LaurentPoly) -> Result<u32, LaurentError> {
    if marker.is_zero() {
        return Err(LaurentError::MarkerNotPower);
    }
    if let Some(c) = marker.as_constant() {
        if c.is_one() {
            return Ok(0);
        }
        return Err(LaurentError::MarkerNotPower);
    }
    let span_base = base.max_exp1().unwrap() - base.min_exp1().unwrap();
    let span_marker = marker.max_exp1().unwrap() - marker.min_exp1().unwrap();
    if span_base == 0 || span_marker % span_base != 0 {
        return Err(LaurentError::MarkerNotPower);
    }
    let n = (span_marker / span_base) as u32;
    if base.pow(n) != *marker {
        return Err(LaurentError::MarkerNotPower);
    }
    Ok(n)
}

/// Re-expresses a tuple code over a new base; the decoded tuple is invariant.
pub fn nu_transport(code: &TupleCode, q: &LaurentPoly) -> Result<TupleCode, LaurentError> {
    let tuple = tuple_decode(code)?;
    tuple_encode(&tuple, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> Coefficient {
        BigRational::from_i64(n).unwrap()
    }

    fn x_poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(1);
        for &(e, c) in pairs {
            p.insert(vec![e], q(c));
        }
        p
    }

    #[test]
    fn arith_examples() {
        let x = LaurentPoly::var_pow(1);
        let one = LaurentPoly::one(1);
        // (1 - X)(1 + X) = 1 - X^2
        let lhs = one.sub(&x).unwrap().mul(&one.add(&x).unwrap()).unwrap();
        assert_eq!(lhs, one.sub(&x.pow(2)).unwrap());
        // X * X^{-1} = 1
        assert_eq!(x.mul(&LaurentPoly::var_pow(-1)).unwrap(), one);
        // f + (-f) = 0
        let f = x_poly(&[(0, 1), (2, -3)]);
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn divides_examples() {
        // (X - 2) | (X^2 - 4) with quotient X + 2
        let d = x_poly(&[(1, 1), (0, -2)]);
        let f = x_poly(&[(2, 1), (0, -4)]);
        assert_eq!(divides_exact(&d, &f).unwrap(), Some(x_poly(&[(1, 1), (0, 2)])));

        // (X - 1) | (X - X^{-1}) with quotient 1 + X^{-1}
        let d = x_poly(&[(1, 1), (0, -1)]);
        let f = x_poly(&[(1, 1), (-1, -1)]);
        let quotient = divides_exact(&d, &f).unwrap().unwrap();
        assert_eq!(quotient, x_poly(&[(0, 1), (-1, 1)]));
        assert_eq!(d.mul(&quotient).unwrap(), f);

        // (X - 1) does not divide (X - 2)
        let f = x_poly(&[(1, 1), (0, -2)]);
        assert_eq!(divides_exact(&d, &f).unwrap(), None);
    }

    #[test]
    fn divides_zero_divisor() {
        let z = LaurentPoly::zero(1);
        let f = x_poly(&[(1, 1)]);
        assert_eq!(divides_exact(&z, &f), Err(LaurentError::ZeroDivisor));
    }

    #[test]
    fn binomial_irreducible_examples() {
        assert!(binomial_irreducible(2, 3).unwrap());
        assert!(!binomial_irreducible(2, 4).unwrap());
        assert!(binomial_irreducible(1, 0).unwrap());
        assert_eq!(binomial_irreducible(0, 0), Err(LaurentError::BothZero));
    }

    fn standard_p() -> LaurentPoly {
        // P = X + X^2 + X^3
        x_poly(&[(1, 1), (2, 1), (3, 1)])
    }

    #[test]
    fn in_kp_constructed_membership() {
        let p = standard_p();
        // Q = P^2 + 3P + 1
        let q_poly = p
            .pow(2)
            .add(&p.scalar_mul(&q(3)))
            .unwrap()
            .add(&LaurentPoly::one(1))
            .unwrap();
        assert_eq!(in_kp(&q_poly, &p).unwrap(), Some(vec![q(1), q(3), q(1)]));
    }

    #[test]
    fn in_kp_non_membership() {
        let p = x_poly(&[(0, 1), (1, 1), (2, 1)]); // 1 + X + X^2
        let x = LaurentPoly::var_pow(1);
        assert_eq!(in_kp(&x, &p).unwrap(), None);
    }

    #[test]
    fn in_kp_constants() {
        let p = standard_p();
        assert_eq!(in_kp(&LaurentPoly::constant(1, q(5)), &p).unwrap(), Some(vec![q(5)]));
    }

    #[test]
    fn in_kp_rejects_bad_p() {
        let x = LaurentPoly::var_pow(1);
        assert!(matches!(
            in_kp(&x, &LaurentPoly::var_pow(2)),
            Err(LaurentError::InvalidP(_))
        ));
        let two_terms = x_poly(&[(0, 1), (1, 1)]);
        assert!(matches!(in_kp(&x, &two_terms), Err(LaurentError::InvalidP(_))));
    }

    #[test]
    fn in_kp_negative_anchor() {
        // P with all exponents <= 0: anchored at the bottom.
        let p = x_poly(&[(0, 1), (-1, 1), (-2, 1)]);
        let q_poly = p.pow(2).add(&p.scalar_mul(&q(-1))).unwrap();
        assert_eq!(in_kp(&q_poly, &p).unwrap(), Some(vec![q(0), q(-1), q(1)]));
    }

    #[test]
    fn psi_member_passes() {
        let p = standard_p();
        let q_poly = p.pow(2).add(&p).unwrap();
        let samples: Vec<Coefficient> = (1..=20).map(q).collect();
        assert_eq!(psi_check(&q_poly, &p, &samples).unwrap(), PsiOutcome::Pass);
    }

    #[test]
    fn psi_constant_always_passes() {
        let p = standard_p();
        let samples: Vec<Coefficient> = (1..=20).map(q).collect();
        assert_eq!(
            psi_check(&LaurentPoly::constant(1, q(7)), &p, &samples).unwrap(),
            PsiOutcome::Pass
        );
    }

    #[test]
    fn psi_non_member_fails_with_witness() {
        // Q = X is not in K[P] for P = X + X^2 + X^3; brute-search the
        // failing alpha among the first positive integers.
        let p = standard_p();
        let x = LaurentPoly::var_pow(1);
        let samples: Vec<Coefficient> = (1..=100).map(q).collect();
        match psi_check(&x, &p, &samples).unwrap() {
            PsiOutcome::Fail { witness } => {
                // Confirm the witness by direct division: no beta works.
                let pa = p.sub(&LaurentPoly::constant(1, witness.clone())).unwrap();
                for beta in (-10..=10).map(q) {
                    let qb = x.sub(&LaurentPoly::constant(1, beta)).unwrap();
                    assert!(divides_exact(&pa, &qb).unwrap().is_none());
                }
            }
            PsiOutcome::Pass => panic!("expected failure"),
        }
    }

    #[test]
    fn psi_agrees_with_in_kp_on_members() {
        let p = standard_p();
        let samples: Vec<Coefficient> = (1..=20).map(q).collect();
        for coeffs in [vec![q(2)], vec![q(1), q(-2)], vec![q(0), q(3), q(1)]] {
            let mut qq = LaurentPoly::zero(1);
            for (i, c) in coeffs.iter().enumerate() {
                qq = qq.add(&p.pow(i as u32).scalar_mul(c)).unwrap();
            }
            assert!(in_kp(&qq, &p).unwrap().is_some());
            assert_eq!(psi_check(&qq, &p, &samples).unwrap(), PsiOutcome::Pass);
        }
    }

    #[test]
    fn in_k_g_examples() {
        // g = X1 X2^2 in two variables
        let gamma = [1i64, 2];
        let mut qq = LaurentPoly::zero(2);
        qq.insert(vec![1, 2], q(1));
        qq.insert(vec![-1, -2], q(1));
        let (n, coeffs) = in_k_g(&qq, &gamma).unwrap().unwrap();
        assert_eq!(n, 1);
        assert_eq!(coeffs, vec![q(1), q(0), q(1)]);

        let x1 = LaurentPoly::monomial(2, vec![1, 0], q(1));
        assert_eq!(in_k_g(&x1, &gamma).unwrap(), None);

        let one = LaurentPoly::one(2);
        assert_eq!(in_k_g(&one, &gamma).unwrap(), Some((0, vec![q(1)])));

        assert_eq!(in_k_g(&one, &[0, 0]), Err(LaurentError::ZeroVector));
    }

    #[test]
    fn powers_predicate_examples() {
        let g = LaurentPoly::monomial(2, vec![1, 2], q(1));
        let g3 = g.pow(3);
        assert!(powers_predicate(&g3, &g).unwrap());

        let five = LaurentPoly::constant(2, q(5));
        assert!(!powers_predicate(&five, &g).unwrap());

        let x1 = LaurentPoly::monomial(2, vec![1, 0], q(1));
        assert!(!powers_predicate(&x1, &g).unwrap());

        assert_eq!(
            powers_predicate(&g, &five),
            Err(LaurentError::NotMonomial)
        );
    }

    #[test]
    fn powers_predicate_negative_power() {
        let g = LaurentPoly::monomial(2, vec![1, 2], q(1));
        let mut ginv = LaurentPoly::zero(2);
        ginv.insert(vec![-2, -4], q(1));
        assert!(powers_predicate(&ginv, &g).unwrap());
    }

    #[test]
    fn tuple_roundtrip_examples() {
        let p = standard_p();
        // (2, 0, 3) -> (2 + 3P^2, P^2)
        let code = tuple_encode(&[q(2), q(0), q(3)], &p).unwrap();
        let expected_value = p.pow(2).scalar_mul(&q(3)).add(&LaurentPoly::constant(1, q(2))).unwrap();
        assert_eq!(code.value, expected_value);
        assert_eq!(code.marker, p.pow(2));
        assert_eq!(tuple_decode(&code).unwrap(), vec![q(2), q(0), q(3)]);

        let half = BigRational::new(1.into(), 2.into());
        let code = tuple_encode(&[q(-1), half.clone()], &p).unwrap();
        assert_eq!(tuple_decode(&code).unwrap(), vec![q(-1), half]);
    }

    #[test]
    fn tuple_decode_rejects_bad_value() {
        let p = standard_p();
        let code = TupleCode {
            value: LaurentPoly::var_pow(1),
            marker: p.pow(2),
            base: p,
        };
        assert_eq!(tuple_decode(&code), Err(LaurentError::NotInKP));
    }

    #[test]
    fn tuple_decode_rejects_bad_marker() {
        let p = standard_p();
        let code = TupleCode {
            value: p.clone(),
            marker: p.add(&LaurentPoly::one(1)).unwrap(),
            base: p,
        };
        assert_eq!(tuple_decode(&code), Err(LaurentError::MarkerNotPower));
    }

    #[test]
    fn nu_transport_examples() {
        let p = standard_p();
        let qq = x_poly(&[(0, 2), (1, 1), (4, 1)]);
        let code = tuple_encode(&[q(1), q(2), q(3)], &p).unwrap();
        let moved = nu_transport(&code, &qq).unwrap();
        assert_eq!(moved, tuple_encode(&[q(1), q(2), q(3)], &qq).unwrap());

        // transport to the same base is the identity
        assert_eq!(nu_transport(&code, &p).unwrap(), code);

        // round trip P -> Q -> P
        let back = nu_transport(&moved, &p).unwrap();
        assert_eq!(back, code);
    }
}
