//! Exact integer engine for the cubic recurrence
//! `x_n = a·x_{n-1} + b·x_{n-2} + c·x_{n-3}`.
//!
//! Sequences are indexed from 1. The basis triple `(p_k, q_k, r_k)` expresses
//! the k-th term as `p_k·x_1 + q_k·x_2 + r_k·x_3`; it is itself the k-th term of
//! the three sequences seeded with the unit vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients `(a, b, c)` of `x_n = a·x_{n-1} + b·x_{n-2} + c·x_{n-3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecurrenceParams {
    a: u32,
    b: u32,
    c: u32,
}

impl RecurrenceParams {
    pub const TRIBONACCI: RecurrenceParams = RecurrenceParams { a: 1, b: 1, c: 1 };

    /// Requires `c ≥ 1` and `a + b + c ≥ 2`.
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParams {
                a,
                b,
                c,
                reason: "c must be at least 1",
            });
        }
        if u64::from(a) + u64::from(b) + u64::from(c) < 2 {
            return Err(Error::InvalidParams {
                a,
                b,
                c,
                reason: "a+b+c must be at least 2",
            });
        }
        Ok(RecurrenceParams { a, b, c })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn is_tribonacci(&self) -> bool {
        *self == Self::TRIBONACCI
    }

    /// Next term after `(x1, x2, x3)`.
    pub fn step(&self, x1: &BigInt, x2: &BigInt, x3: &BigInt) -> BigInt {
        x3 * self.a + x2 * self.b + x1 * self.c
    }

    /// Same as [`step`](Self::step) on machine integers; `None` on overflow.
    pub fn step_u64(&self, x1: u64, x2: u64, x3: u64) -> Option<u64> {
        let t = u64::from(self.a).checked_mul(x3)?;
        let t = t.checked_add(u64::from(self.b).checked_mul(x2)?)?;
        t.checked_add(u64::from(self.c).checked_mul(x1)?)
    }

    /// Exact discriminant of `x^3 - a·x^2 - b·x - c`.
    ///
    /// Negative exactly when the cubic has one real root and a complex pair.
    pub fn discriminant(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        &a * &a * &b * &b + 4 * b.pow(3) - 4 * a.pow(3) * &c - 27 * &c * &c - 18 * &a * &b * &c
    }

    /// Coefficients `[c0, c1, c2, c3]` of the characteristic cubic, lowest degree first.
    pub fn characteristic(&self) -> [i64; 4] {
        [-i64::from(self.c), -i64::from(self.b), -i64::from(self.a), 1]
    }
}

impl fmt::Display for RecurrenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for RecurrenceParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(format!(
                "expected three comma-separated coefficients, got {s:?}"
            )));
        }
        let mut coeffs = [0u32; 3];
        for (slot, part) in coeffs.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coefficient {part:?}")))?;
        }
        RecurrenceParams::new(coeffs[0], coeffs[1], coeffs[2])
    }
}

/// A finite integer sequence satisfying the recurrence, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSequence {
    params: RecurrenceParams,
    terms: Vec<BigInt>,
}

impl IntSequence {
    /// Checks the recurrence on every window.
    pub fn new(params: RecurrenceParams, terms: Vec<BigInt>) -> Result<Self> {
        if terms.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "sequence needs at least 3 terms, got {}",
                terms.len()
            )));
        }
        for (i, w) in terms.windows(4).enumerate() {
            if params.step(&w[0], &w[1], &w[2]) != w[3] {
                return Err(Error::InvalidArgument(format!(
                    "term {} breaks the recurrence ({params})",
                    i + 4
                )));
            }
        }
        Ok(IntSequence { params, terms })
    }

    pub fn params(&self) -> RecurrenceParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// 1-based access.
    pub fn term(&self, i: usize) -> &BigInt {
        assert!(i >= 1 && i <= self.terms.len(), "index {i} out of 1..={}", self.terms.len());
        &self.terms[i - 1]
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn last(&self) -> &BigInt {
        self.terms.last().expect("length >= 3")
    }

    /// The first three terms.
    pub fn seed(&self) -> [BigInt; 3] {
        [self.terms[0].clone(), self.terms[1].clone(), self.terms[2].clone()]
    }

    /// The last three terms, in forward order.
    pub fn tail(&self) -> [BigInt; 3] {
        let n = self.terms.len();
        [
            self.terms[n - 3].clone(),
            self.terms[n - 2].clone(),
            self.terms[n - 1].clone(),
        ]
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// The unique sequence of the given length starting with `seed`.
pub fn extend_forward(params: RecurrenceParams, seed: &[BigInt; 3], length: usize) -> Result<IntSequence> {
    if length < 3 {
        return Err(Error::InvalidArgument(format!("length must be at least 3, got {length}")));
    }
    let mut terms = Vec::with_capacity(length);
    terms.extend(seed.iter().cloned());
    while terms.len() < length {
        let n = terms.len();
        let next = params.step(&terms[n - 3], &terms[n - 2], &terms[n - 1]);
        terms.push(next);
    }
    Ok(IntSequence { params, terms })
}

/// Prepends `steps` terms before `tail` by solving
/// `c·x_i = x_{i+3} - a·x_{i+2} - b·x_{i+1}`.
///
/// Fails with [`Error::Divisibility`] when a step has no integer solution. The
/// reported index is relative to the tail, whose first entry has index 1.
pub fn extend_backward(params: RecurrenceParams, tail: &[BigInt; 3], steps: usize) -> Result<IntSequence> {
    // Built in reverse then flipped.
    let mut rev: Vec<BigInt> = tail.iter().rev().cloned().collect();
    let c = BigInt::from(params.c);
    for s in 0..steps {
        let n = rev.len();
        let (x3, x2, x1) = (&rev[n - 3], &rev[n - 2], &rev[n - 1]);
        let numer = x3 - x2 * params.a - x1 * params.b;
        let (q, rem) = numer.div_rem(&c);
        if !rem.is_zero() {
            return Err(Error::Divisibility {
                index: -(s as i64),
                numerator: numer.to_string(),
                divisor: params.c,
            });
        }
        rev.push(q);
    }
    rev.reverse();
    Ok(IntSequence { params, terms: rev })
}

/// Coefficients of the k-th term in terms of the seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisTriple {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl BasisTriple {
    pub fn dot(&self, seed: &[BigInt; 3]) -> BigInt {
        &self.p * &seed[0] + &self.q * &seed[1] + &self.r * &seed[2]
    }

    pub fn sum(&self) -> BigInt {
        &self.p + &self.q + &self.r
    }

    pub fn gcd(&self) -> BigInt {
        self.p.gcd(&self.q).gcd(&self.r)
    }

    /// Entries as machine integers, when they all fit.
    pub fn to_u64(&self) -> Option<[u64; 3]> {
        Some([self.p.to_u64()?, self.q.to_u64()?, self.r.to_u64()?])
    }

    pub fn to_i128(&self) -> Option<[i128; 3]> {
        Some([self.p.to_i128()?, self.q.to_i128()?, self.r.to_i128()?])
    }

    pub fn entries(&self) -> [&BigInt; 3] {
        [&self.p, &self.q, &self.r]
    }
}

impl fmt::Display for BasisTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

fn seed_row(k: usize) -> BasisTriple {
    let unit = |j: usize| if j == k { BigInt::one() } else { BigInt::zero() };
    BasisTriple {
        k,
        p: unit(1),
        q: unit(2),
        r: unit(3),
    }
}

fn next_row(params: RecurrenceParams, r1: &BasisTriple, r2: &BasisTriple, r3: &BasisTriple) -> BasisTriple {
    BasisTriple {
        k: r3.k + 1,
        p: params.step(&r1.p, &r2.p, &r3.p),
        q: params.step(&r1.q, &r2.q, &r3.q),
        r: params.step(&r1.r, &r2.r, &r3.r),
    }
}

/// `(p_k, q_k, r_k)` for `k ≥ 1`.
pub fn basis_triple(params: RecurrenceParams, k: usize) -> BasisTriple {
    assert!(k >= 1, "basis index starts at 1");
    if k <= 3 {
        return seed_row(k);
    }
    let mut window = [seed_row(1), seed_row(2), seed_row(3)];
    for _ in 4..=k {
        let next = next_row(params, &window[0], &window[1], &window[2]);
        window.rotate_left(1);
        window[2] = next;
    }
    window[2].clone()
}

/// The k-th term of the sequence seeded with `seed`, without materializing it.
pub fn terminus(params: RecurrenceParams, seed: &[BigInt; 3], k: usize) -> BigInt {
    basis_triple(params, k).dot(seed)
}

/// Smallest terminus of a positive length-k sequence: the seed `(1,1,1)`.
pub fn min_terminus(params: RecurrenceParams, k: usize) -> BigInt {
    basis_triple(params, k).sum()
}

/// Basis triples for `1..=k_max`, computed once.
#[derive(Debug, Clone)]
pub struct BasisTable {
    params: RecurrenceParams,
    rows: Vec<BasisTriple>,
}

impl BasisTable {
    pub fn new(params: RecurrenceParams, k_max: usize) -> Self {
        let k_max = k_max.max(3);
        let mut rows = vec![seed_row(1), seed_row(2), seed_row(3)];
        while rows.len() < k_max {
            let n = rows.len();
            let next = next_row(params, &rows[n - 3], &rows[n - 2], &rows[n - 1]);
            rows.push(next);
        }
        BasisTable { params, rows }
    }

    /// Table reaching the first length whose minimal terminus exceeds `n_max`,
    /// plus `extra` further rows.
    pub fn covering(params: RecurrenceParams, n_max: u64, extra: usize) -> Self {
        let bound = BigInt::from(n_max);
        let mut table = BasisTable::new(params, 4);
        while table.rows.last().is_none_or(|r| r.sum() <= bound) {
            table.push_row();
        }
        for _ in 0..extra {
            table.push_row();
        }
        table
    }

    fn push_row(&mut self) {
        let n = self.rows.len();
        let next = next_row(self.params, &self.rows[n - 3], &self.rows[n - 2], &self.rows[n - 1]);
        self.rows.push(next);
    }

    pub fn params(&self) -> RecurrenceParams {
        self.params
    }

    pub fn k_max(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, k: usize) -> Option<&BasisTriple> {
        if k == 0 {
            None
        } else {
            self.rows.get(k - 1)
        }
    }

    pub fn rows(&self) -> &[BasisTriple] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints<const N: usize>(v: [i64; N]) -> [BigInt; N] {
        v.map(BigInt::from)
    }

    fn as_i64(seq: &IntSequence) -> Vec<i64> {
        seq.terms().iter().map(|t| t.to_i64().unwrap()).collect()
    }

    const TRIB: RecurrenceParams = RecurrenceParams::TRIBONACCI;

    #[test]
    fn params_validation() {
        assert!(RecurrenceParams::new(1, 1, 0).is_err());
        assert!(RecurrenceParams::new(0, 0, 1).is_err());
        assert!(RecurrenceParams::new(0, 1, 1).is_ok());
        assert_eq!("1, 1,2".parse::<RecurrenceParams>().unwrap(), RecurrenceParams::new(1, 1, 2).unwrap());
        assert!("1,1".parse::<RecurrenceParams>().is_err());
    }

    #[test]
    fn forward_examples() {
        let s = extend_forward(TRIB, &ints([1, 1, 1]), 6).unwrap();
        assert_eq!(as_i64(&s), vec![1, 1, 1, 3, 5, 9]);
        let s = extend_forward(TRIB, &ints([8, 1, 1]), 4).unwrap();
        assert_eq!(as_i64(&s), vec![8, 1, 1, 10]);
        let p112 = RecurrenceParams::new(1, 1, 2).unwrap();
        let s = extend_forward(p112, &ints([1, 0, 0]), 6).unwrap();
        assert_eq!(as_i64(&s), vec![1, 0, 0, 2, 2, 4]);
        assert!(extend_forward(TRIB, &ints([1, 1, 1]), 2).is_err());
    }

    #[test]
    fn backward_examples() {
        let s = extend_backward(TRIB, &ints([1, 0, 0]), 1).unwrap();
        assert_eq!(as_i64(&s), vec![-1, 1, 0, 0]);
        let s = extend_backward(TRIB, &ints([-1, 1, 0]), 2).unwrap();
        assert_eq!(as_i64(&s), vec![2, 0, -1, 1, 0]);
        let p112 = RecurrenceParams::new(1, 1, 2).unwrap();
        let err = extend_backward(p112, &ints([0, 0, 1]), 1).unwrap_err();
        assert!(matches!(err, Error::Divisibility { divisor: 2, .. }));
        // zero steps is the tail itself
        let s = extend_backward(TRIB, &ints([4, 5, 6]), 0).unwrap();
        assert_eq!(as_i64(&s), vec![4, 5, 6]);
    }

    #[test]
    fn basis_examples() {
        let b = basis_triple(TRIB, 7);
        assert_eq!((b.p, b.q, b.r), (4.into(), 6.into(), 7.into()));
        let b = basis_triple(TRIB, 3);
        assert_eq!((b.p, b.q, b.r), (0.into(), 0.into(), 1.into()));
        let b = basis_triple(TRIB, 10);
        assert_eq!((b.p, b.q, b.r), (24.into(), 37.into(), 44.into()));
        let p112 = RecurrenceParams::new(1, 1, 2).unwrap();
        let b = basis_triple(p112, 5);
        assert_eq!((b.p, b.q, b.r), (2.into(), 3.into(), 2.into()));
    }

    #[test]
    fn terminus_examples() {
        assert_eq!(terminus(TRIB, &ints([1, 1, 1]), 6), 9.into());
        assert_eq!(terminus(TRIB, &ints([2, 0, -1]), 5), 0.into());
        assert_eq!(terminus(TRIB, &ints([1, 2, 3]), 10), 230.into());
    }

    #[test]
    fn min_terminus_examples() {
        assert_eq!(min_terminus(TRIB, 4), 3.into());
        assert_eq!(min_terminus(TRIB, 6), 9.into());
        assert_eq!(min_terminus(TRIB, 7), 17.into());
        let mut prev = min_terminus(TRIB, 4);
        for k in 5..40 {
            let m = min_terminus(TRIB, k);
            assert!(m > prev);
            prev = m;
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(TRIB.discriminant(), BigInt::from(-44));
        assert_eq!(RecurrenceParams::new(1, 1, 2).unwrap().discriminant(), BigInt::from(-147));
        assert_eq!(RecurrenceParams::new(0, 1, 1).unwrap().discriminant(), BigInt::from(-23));
    }

    #[test]
    fn basis_is_primitive() {
        for k in 1..=60 {
            assert!(basis_triple(TRIB, k).gcd().is_one(), "k={k}");
        }
    }

    #[test]
    fn basis_table_matches_direct() {
        let table = BasisTable::new(TRIB, 30);
        for k in 1..=30 {
            assert_eq!(table.get(k).unwrap(), &basis_triple(TRIB, k));
        }
        assert!(table.get(0).is_none());
        let cover = BasisTable::covering(TRIB, 100, 0);
        let last = cover.rows().last().unwrap();
        assert!(last.sum() > BigInt::from(100));
        assert!(cover.get(cover.k_max() - 1).unwrap().sum() <= BigInt::from(100));
    }

    #[test]
    fn sequence_validation() {
        assert!(IntSequence::new(TRIB, ints([1, 1, 1, 3]).to_vec()).is_ok());
        assert!(IntSequence::new(TRIB, ints([1, 1, 1, 4]).to_vec()).is_err());
        assert!(IntSequence::new(TRIB, ints([1, 1]).to_vec()).is_err());
    }
}
