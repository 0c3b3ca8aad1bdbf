//! Representation thresholds for three generators and sign-patterned null
//! vectors of basis triples.
//!
//! `n` is the terminus of a positive length-`k` sequence exactly when
//! `n - (p_k + q_k + r_k)` is a non-negative combination of `p_k, q_k, r_k`,
//! so the largest unreachable terminus is the Frobenius number plus the sum
//! of the generators.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, RootEnclosure};
use crate::recurrence::{basis_triple, extend_backward, extend_forward, BasisTriple, IntSequence, RecurrenceParams};
use crate::spectral::{self, TableRow};

/// Largest residue class modulus `apery_frobenius` will allocate.
pub const MAX_APERY_MODULUS: u64 = 1 << 27;

fn check_generators(g: [u64; 3]) -> Result<()> {
    if g.contains(&0) {
        return Err(Error::InvalidArgument(format!("generators must be positive: {g:?}")));
    }
    if g[0].gcd(&g[1]).gcd(&g[2]) != 1 {
        return Err(Error::NotCoprime(g.to_vec()));
    }
    Ok(())
}

/// Smallest representable value in each residue class modulo the smallest
/// generator (the Apéry set), by Dijkstra on the residue graph.
pub fn apery_set(p: u64, q: u64, r: u64) -> Result<Vec<u128>> {
    check_generators([p, q, r])?;
    let mut g = [p, q, r];
    g.sort_unstable();
    let m = g[0];
    if m > MAX_APERY_MODULUS {
        return Err(Error::ResourceLimit(format!("residue graph of size {m}")));
    }
    let mut dist = vec![u128::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u128, 0u64)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &w in &g[1..] {
            let u = (v + w % m) % m;
            let nd = d + w as u128;
            if nd < dist[u as usize] {
                dist[u as usize] = nd;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    Ok(dist)
}

/// Largest integer with no non-negative representation; `-1` when there is
/// none.
pub fn apery_frobenius(p: u64, q: u64, r: u64) -> Result<i128> {
    let dist = apery_set(p, q, r)?;
    let m = p.min(q).min(r) as i128;
    Ok(*dist.iter().max().expect("modulus ≥ 1") as i128 - m)
}

/// Frobenius number by sieving representable values up to the Schur bound
/// `(min-1)(max-1)-1`, with a run of `min` consecutive representable values
/// confirming nothing larger is missed.
pub fn naive_frobenius(p: u64, q: u64, r: u64) -> Result<i128> {
    check_generators([p, q, r])?;
    let (lo, hi) = (p.min(q).min(r) as usize, p.max(q).max(r) as usize);
    let limit = (lo - 1) * (hi.saturating_sub(1)) + 2 * lo + 1;
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for v in 1..=limit {
        reach[v] = [p, q, r].iter().any(|&g| v >= g as usize && reach[v - g as usize]);
    }
    let last_gap = (0..=limit).rev().find(|&v| !reach[v]);
    let frob = last_gap.map_or(-1, |v| v as i128);
    let run_start = (frob + 1) as usize;
    assert!(
        run_start + lo <= limit + 1 && reach[run_start..run_start + lo].iter().all(|&b| b),
        "sieve bound too small for {p},{q},{r}"
    );
    Ok(frob)
}

/// Largest `n` with no representation `x·p + y·q + z·r`, `x, y, z ≥ 1`.
pub fn positive_frobenius(p: u64, q: u64, r: u64) -> Result<i128> {
    Ok(apery_frobenius(p, q, r)? + (p + q + r) as i128)
}

/// Whether `n = x·p + y·q + z·r` has a solution with `x, y, z ≥ 1`, given the
/// Apéry set of `(p, q, r)`.
pub fn positively_representable(apery: &[u128], p: u64, q: u64, r: u64, n: i128) -> bool {
    let m = n - (p + q + r) as i128;
    if m < 0 {
        return false;
    }
    let modulus = apery.len() as i128;
    apery[(m % modulus) as usize] as i128 <= m
}

/// Which generator a relation isolates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isolated {
    P,
    Q,
}

/// For [`Isolated::P`]: `a·p = b·q + c·r`; for [`Isolated::Q`]:
/// `a·q = b·p + c·r`. Requires `a, c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub which: Isolated,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Relation {
    pub fn validate(&self, p: u64, q: u64, r: u64) -> Result<()> {
        if self.a == 0 || self.c == 0 {
            return Err(Error::InvalidRelation(format!("{self}: leading and r coefficients must be positive")));
        }
        let (lead, other) = match self.which {
            Isolated::P => (p, q),
            Isolated::Q => (q, p),
        };
        let lhs = self.a as u128 * lead as u128;
        let rhs = self.b as u128 * other as u128 + self.c as u128 * r as u128;
        if lhs != rhs {
            return Err(Error::InvalidRelation(format!("{self} fails for ({p},{q},{r}): {lhs} != {rhs}")));
        }
        Ok(())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.which {
            Isolated::P => write!(f, "{}·p = {}·q + {}·r", self.a, self.b, self.c),
            Isolated::Q => write!(f, "{}·q = {}·p + {}·r", self.a, self.b, self.c),
        }
    }
}

/// The relation with the smallest leading coefficient; among those, the
/// smallest `b`.
pub fn find_relation(p: u64, q: u64, r: u64, which: Isolated) -> Result<Relation> {
    check_generators([p, q, r])?;
    let (lead, other) = match which {
        Isolated::P => (p, q),
        Isolated::Q => (q, p),
    };
    let (lead, other, r128) = (lead as u128, other as u128, r as u128);
    // a = other·r always works with b = 0, c = other
    for a in 1..=(other * r128) {
        let target = a * lead;
        let mut b = 0u128;
        while b * other + r128 <= target {
            let rest = target - b * other;
            if rest.is_multiple_of(r128) {
                return Ok(Relation {
                    which,
                    a: a as u64,
                    b: b as u64,
                    c: (rest / r128) as u64,
                });
            }
            b += 1;
        }
    }
    unreachable!("a relation exists for every positive triple")
}

/// `a·p + d·q + r`; every integer at least this large is positively
/// representable.
pub fn killingbergtro_bound(p: u64, q: u64, r: u64, rel_p: &Relation, rel_q: &Relation) -> Result<u128> {
    if rel_p.which != Isolated::P || rel_q.which != Isolated::Q {
        return Err(Error::InvalidRelation("expected one p-relation and one q-relation".into()));
    }
    rel_p.validate(p, q, r)?;
    rel_q.validate(p, q, r)?;
    Ok(rel_p.a as u128 * p as u128 + rel_q.a as u128 * q as u128 + r as u128)
}

/// Constraint on the sign of one seed coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignConstraint {
    Positive,
    Negative,
    NonPositive,
    NonNegative,
    Any,
}

impl SignConstraint {
    pub fn admits(&self, v: &BigInt) -> bool {
        match self {
            SignConstraint::Positive => v.is_positive(),
            SignConstraint::Negative => v.is_negative(),
            SignConstraint::NonPositive => !v.is_positive(),
            SignConstraint::NonNegative => !v.is_negative(),
            SignConstraint::Any => true,
        }
    }

    fn admits_i64(&self, v: i64) -> bool {
        match self {
            SignConstraint::Positive => v > 0,
            SignConstraint::Negative => v < 0,
            SignConstraint::NonPositive => v <= 0,
            SignConstraint::NonNegative => v >= 0,
            SignConstraint::Any => true,
        }
    }

    /// Admissible value of smallest magnitude.
    fn smallest(&self) -> i64 {
        match self {
            SignConstraint::Positive => 1,
            SignConstraint::Negative => -1,
            _ => 0,
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            SignConstraint::Positive => "+",
            SignConstraint::Negative => "-",
            SignConstraint::NonPositive => "0-",
            SignConstraint::NonNegative => "0+",
            SignConstraint::Any => "*",
        }
    }
}

/// Sign constraints on the first three terms of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern(pub [SignConstraint; 3]);

impl SignPattern {
    /// `a1 > 0 ≥ a2, 0 > a3`.
    pub const A: SignPattern = SignPattern([SignConstraint::Positive, SignConstraint::NonPositive, SignConstraint::Negative]);
    /// `b2 > 0 ≥ b1, 0 > b3`.
    pub const B: SignPattern = SignPattern([SignConstraint::NonPositive, SignConstraint::Positive, SignConstraint::Negative]);
    pub const ANY: SignPattern = SignPattern([SignConstraint::Any; 3]);

    pub fn admits(&self, seed: &[BigInt]) -> bool {
        self.0.iter().zip(seed).all(|(c, v)| c.admits(v))
    }

    fn admits_i64(&self, seed: [i64; 3]) -> bool {
        self.0.iter().zip(seed).all(|(c, v)| c.admits_i64(v))
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0].symbol(), self.0[1].symbol(), self.0[2].symbol())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => return Ok(SignPattern::A),
            "B" | "b" => return Ok(SignPattern::B),
            _ => {}
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(format!("sign pattern needs three entries: {s:?}")));
        }
        let mut out = [SignConstraint::Any; 3];
        for (slot, part) in out.iter_mut().zip(parts) {
            *slot = match part {
                "+" => SignConstraint::Positive,
                "-" => SignConstraint::Negative,
                "0-" | "-0" => SignConstraint::NonPositive,
                "0+" | "+0" => SignConstraint::NonNegative,
                "*" => SignConstraint::Any,
                other => return Err(Error::InvalidArgument(format!("unknown sign {other:?}"))),
            };
        }
        Ok(SignPattern(out))
    }
}

/// A sequence satisfying the recurrence and ending at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSequence {
    pub sequence: IntSequence,
    pub pattern: SignPattern,
}

impl NullSequence {
    /// Checks the terminus, the basis dot product and the sign pattern.
    pub fn new(sequence: IntSequence, pattern: SignPattern) -> Result<Self> {
        let length = sequence.len();
        let fail = |reason: String| Err(Error::PatternViolation { length, reason });
        if !sequence.last().is_zero() {
            return fail(format!("ends at {} instead of 0", sequence.last()));
        }
        let basis = basis_triple(sequence.params(), length);
        if !basis.dot(&sequence.seed()).is_zero() {
            return fail("seed is not orthogonal to the basis triple".into());
        }
        if !pattern.admits(&sequence.seed()) {
            return fail(format!("seed {:?} does not match {pattern}", sequence.seed()));
        }
        Ok(NullSequence { sequence, pattern })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn seed(&self) -> [BigInt; 3] {
        self.sequence.seed()
    }
}

impl fmt::Display for NullSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sequence.fmt(f)
    }
}

/// The two tribonacci constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `a1 > 0 ≥ a2, 0 > a3` with `a1 < 0.81·φ^(n/2)`.
    A,
    /// `b2 > 0 ≥ b1, 0 > b3` with `b2 < 0.64·φ^(n/2)`.
    B,
}

impl Variant {
    pub fn pattern(&self) -> SignPattern {
        match self {
            Variant::A => SignPattern::A,
            Variant::B => SignPattern::B,
        }
    }

    /// Index of the bounded coordinate and the bound's numerator over 100.
    fn magnitude(&self) -> (usize, u64) {
        match self {
            Variant::A => (0, 81),
            Variant::B => (1, 64),
        }
    }

    fn table(&self) -> (u8, &'static [TableRow]) {
        match self {
            Variant::A => (1, &spectral::TABLE_1),
            Variant::B => (2, &spectral::TABLE_2),
        }
    }

    fn short(&self, n: usize) -> &'static [i64] {
        match (self, n) {
            (Variant::A, 4) => &[1, 0, -1, 0],
            (Variant::A, 5) => &[2, 0, -1, 1, 0],
            (Variant::A, 6) => &[2, 0, -1, 1, 0, 0],
            (Variant::B, 4) => &[0, 1, -1, 0],
            (Variant::B, 5) => &[0, 1, -1, 0, 0],
            (Variant::B, 6) => &[-1, 2, -1, 0, 1, 0],
            _ => &[],
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            _ => Err(Error::InvalidArgument(format!("variant must be A or B, got {s:?}"))),
        }
    }
}

/// Table rows whose `[t0, t1)` interval may contain `frac(δ·n/2π)`, most
/// likely first.
fn candidate_rows(n: usize, rows: &'static [TableRow]) -> Vec<&'static TableRow> {
    let turns = spectral::tribonacci().delta * (n as f64) / (crate::ball::Ball::pi() * 2.0);
    let frac = |x: f64| x - x.floor();
    let mut out: Vec<&TableRow> = Vec::new();
    for x in [turns.mid(), turns.lo(), turns.hi()] {
        let f = frac(x);
        if let Some(row) = rows.iter().find(|r| r.t0 <= f && (f < r.t1 || r.t1 >= 1.0)) {
            if !out.contains(&row) {
                out.push(row);
            }
        }
    }
    out
}

/// Sign-patterned tribonacci null sequence of length `n ≥ 4` with the
/// magnitude bound of its variant, verified exactly.
pub fn yates_null_vector(n: usize, variant: Variant) -> Result<NullSequence> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("length must be at least 4, got {n}")));
    }
    let params = RecurrenceParams::TRIBONACCI;
    if n < 7 {
        let terms = variant.short(n).iter().map(|&v| BigInt::from(v)).collect();
        let seq = NullSequence::new(IntSequence::new(params, terms)?, variant.pattern())?;
        check_magnitude(&seq, variant)?;
        return Ok(seq);
    }
    let (table, rows) = variant.table();
    let mut last_err = None;
    for row in candidate_rows(n, rows) {
        let tail = [BigInt::from(row.l), BigInt::from(row.k), BigInt::zero()];
        let seq = extend_backward(params, &tail, n - 3)?;
        match NullSequence::new(seq, variant.pattern()).and_then(|s| check_magnitude(&s, variant).map(|_| s)) {
            Ok(s) => return Ok(s),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::PatternViolation {
        length: n,
        reason: format!("no row of table {table} covers this length"),
    }))
}

fn check_magnitude(seq: &NullSequence, variant: Variant) -> Result<()> {
    let (idx, num) = variant.magnitude();
    let n = seq.len();
    let v = &seq.seed()[idx];
    if exact::tribonacci().below_scaled_half_power(v, num, 100, n as u32)? {
        Ok(())
    } else {
        Err(Error::PatternViolation {
            length: n,
            reason: format!("|{v}| is not below 0.{num}·φ^({n}/2)"),
        })
    }
}

fn max_abs(seed: [i64; 3]) -> i64 {
    seed.iter().map(|v| v.abs()).max().unwrap_or(0)
}

/// Non-zero seeds `(a1, a2, a3)` with every coordinate in `[-bound, bound]`,
/// matching `pattern`, whose length-`n` terminus is 0.
pub fn null_vectors_in_box(params: RecurrenceParams, n: usize, pattern: SignPattern, bound: i64) -> Result<Vec<[i64; 3]>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("length must be at least 4, got {n}")));
    }
    let basis = basis_triple(params, n);
    let [p, q, r] = basis
        .to_i128()
        .ok_or_else(|| Error::ResourceLimit(format!("basis at length {n} exceeds 128 bits")))?;
    let mut out = Vec::new();
    for a1 in -bound..=bound {
        if !pattern.0[0].admits_i64(a1) {
            continue;
        }
        for a2 in -bound..=bound {
            if !pattern.0[1].admits_i64(a2) {
                continue;
            }
            let partial = a1 as i128 * p + a2 as i128 * q;
            let a3 = if r == 0 {
                if partial != 0 {
                    continue;
                }
                pattern.0[2].smallest()
            } else {
                if partial % r != 0 {
                    continue;
                }
                let v = -partial / r;
                if v.abs() > bound as i128 {
                    continue;
                }
                v as i64
            };
            let seed = [a1, a2, a3];
            if seed != [0, 0, 0] && pattern.admits_i64(seed) {
                out.push(seed);
            }
        }
    }
    Ok(out)
}

fn materialize(params: RecurrenceParams, seed: [i64; 3], n: usize, pattern: SignPattern) -> Result<NullSequence> {
    let seed = seed.map(BigInt::from);
    NullSequence::new(extend_forward(params, &seed, n)?, pattern)
}

/// Smallest (in max-norm, then lexicographically) pattern-matching null
/// sequence with seed in the box, or `None`.
pub fn null_vector_search(params: RecurrenceParams, n: usize, pattern: SignPattern, box_bound: i64) -> Result<Option<NullSequence>> {
    let found = null_vectors_in_box(params, n, pattern, box_bound)?;
    match found.into_iter().min_by_key(|s| (max_abs(*s), *s)) {
        Some(seed) => materialize(params, seed, n, pattern).map(Some),
        None => Ok(None),
    }
}

/// Pattern-matching null sequence built backward from tails `(…, l, k, 0)`
/// with `|k|, |l| ≤ tail_bound`, choosing the smallest seed in max-norm.
/// Needs `c = 1` so every backward step is integral.
pub fn null_vector_by_tail(params: RecurrenceParams, n: usize, pattern: SignPattern, tail_bound: i64) -> Result<Option<NullSequence>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("length must be at least 4, got {n}")));
    }
    if params.c() != 1 {
        return Err(Error::InvalidArgument(format!("tail search needs c = 1, got {params}")));
    }
    let mut best: Option<(BigInt, IntSequence)> = None;
    for k in -tail_bound..=tail_bound {
        for l in -tail_bound..=tail_bound {
            if k == 0 && l == 0 {
                continue;
            }
            let tail = [BigInt::from(l), BigInt::from(k), BigInt::zero()];
            let seq = extend_backward(params, &tail, n - 3)?;
            if !pattern.admits(&seq.seed()) {
                continue;
            }
            let norm = seq.seed().iter().map(|v| v.abs()).max().unwrap_or_default();
            if best.as_ref().is_none_or(|(b, _)| norm < *b) {
                best = Some((norm, seq));
            }
        }
    }
    best.map(|(_, seq)| NullSequence::new(seq, pattern)).transpose()
}

/// Outcome of the `0.01·φ^(n/2)` lower bound on tribonacci null vectors.
#[derive(Debug, Clone)]
pub struct PollyReport {
    pub box_bound: i64,
    pub n_lo: usize,
    pub n_hi: usize,
    pub vectors_checked: usize,
    pub violations: Vec<(usize, [i64; 3])>,
}

impl PollyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every non-zero tribonacci null vector with `|a1|, |a2| ≤ box_bound`
/// and length in `[n_lo, n_hi]`: `|a1| > 0.01·φ^(n/2)` or
/// `|a2| > 0.01·φ^((n-1)/2)`.
pub fn polly_scan(box_bound: i64, n_lo: usize, n_hi: usize) -> Result<PollyReport> {
    let enc = exact::tribonacci();
    let mut report = PollyReport {
        box_bound,
        n_lo,
        n_hi,
        vectors_checked: 0,
        violations: Vec::new(),
    };
    for n in n_lo.max(4)..=n_hi {
        // |v| > x  <=>  |v| > floor(x) for integer v
        let f1 = enc.floor_scaled_half_power(1, 100, n as u32)?.to_i64().unwrap_or(i64::MAX);
        let f2 = enc.floor_scaled_half_power(1, 100, n as u32 - 1)?.to_i64().unwrap_or(i64::MAX);
        let [p, q, r] = basis_triple(RecurrenceParams::TRIBONACCI, n).to_i128().expect("small length");
        for a1 in -box_bound..=box_bound {
            for a2 in -box_bound..=box_bound {
                let partial = a1 as i128 * p + a2 as i128 * q;
                if partial % r != 0 || (a1 == 0 && a2 == 0) {
                    continue;
                }
                report.vectors_checked += 1;
                if !(a1.abs() > f1 || a2.abs() > f2) {
                    report.violations.push((n, [a1, a2, (-partial / r) as i64]));
                }
            }
        }
    }
    Ok(report)
}

/// Largest length `ian_threshold_check` accepts by default.
pub const DEFAULT_IAN_CAP: usize = 30;

/// Exact threshold against `0.2·φ^(3k/2)`, plus the threshold obtained from
/// the two sign-patterned null vectors.
#[derive(Debug, Clone)]
pub struct IanReport {
    pub k: usize,
    pub basis: BasisTriple,
    /// Largest `n` with `f_k(n) = 0`.
    pub exact_threshold: i128,
    /// `floor(0.2·φ^(3k/2))`.
    pub bound_floor: BigInt,
    /// `exact_threshold < 0.2·φ^(3k/2)`, certified.
    pub pass: bool,
    pub rel_p: Relation,
    pub rel_q: Relation,
    /// `a1·p + b2·q + r` from the null vectors.
    pub pipeline_bound: u128,
    /// `pipeline_bound` is itself below `0.2·φ^(3k/2)`.
    pub pipeline_below: bool,
    /// `r_k < 0.11·φ^k`.
    pub basis_below: bool,
}

pub fn ian_threshold_check(k: usize, cap: usize) -> Result<IanReport> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("threshold check needs k ≥ 4, got {k}")));
    }
    if k > cap {
        return Err(Error::ResourceLimit(format!("k = {k} exceeds the configured cap {cap}")));
    }
    let enc: &RootEnclosure = exact::tribonacci();
    let basis = basis_triple(RecurrenceParams::TRIBONACCI, k);
    let [p, q, r] = basis.to_u64().ok_or_else(|| Error::ResourceLimit(format!("basis at k = {k} exceeds 64 bits")))?;
    let exact_threshold = positive_frobenius(p, q, r)?;
    let e = 3 * k as u32;
    let pass = exact_threshold < 0 || enc.below_scaled_half_power(&BigInt::from(exact_threshold), 1, 5, e)?;

    let a = yates_null_vector(k, Variant::A)?.seed();
    let b = yates_null_vector(k, Variant::B)?.seed();
    let small = |v: &BigInt| v.to_i64().map(|x| x.unsigned_abs()).ok_or_else(|| Error::ResourceLimit("null vector entry".into()));
    let rel_p = Relation {
        which: Isolated::P,
        a: small(&a[0])?,
        b: small(&a[1])?,
        c: small(&a[2])?,
    };
    let rel_q = Relation {
        which: Isolated::Q,
        a: small(&b[1])?,
        b: small(&b[0])?,
        c: small(&b[2])?,
    };
    let pipeline_bound = killingbergtro_bound(p, q, r, &rel_p, &rel_q)?;
    let pipeline_below = enc.below_scaled_half_power(&BigInt::from(pipeline_bound), 1, 5, e)?;
    // r < 0.11·φ^k  <=>  100·r < 11·φ^k
    let basis_below = enc.cmp_scaled_power(&BigInt::from(11), k as u32, &(BigInt::from(r) * 100))? == Ordering::Greater;
    Ok(IanReport {
        k,
        basis,
        exact_threshold,
        bound_floor: enc.floor_scaled_half_power(1, 5, e)?,
        pass,
        rel_p,
        rel_q,
        pipeline_bound,
        pipeline_below,
        basis_below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: RecurrenceParams = RecurrenceParams::TRIBONACCI;

    #[test]
    fn frobenius_examples() {
        assert_eq!(apery_frobenius(3, 5, 7).unwrap(), 4);
        assert_eq!(apery_frobenius(4, 6, 7).unwrap(), 9);
        assert_eq!(apery_set(4, 6, 7).unwrap(), vec![0, 13, 6, 7]);
        assert_eq!(apery_frobenius(1, 8, 9).unwrap(), -1);
        assert_eq!(positive_frobenius(2, 3, 4).unwrap(), 10);
        assert_eq!(positive_frobenius(4, 6, 7).unwrap(), 26);
        assert_eq!(positive_frobenius(1, 1, 1).unwrap(), 2);
        assert_eq!(apery_frobenius(4, 6, 8), Err(Error::NotCoprime(vec![4, 6, 8])));
        assert!(apery_frobenius(0, 1, 2).is_err());
    }

    #[test]
    fn sieve_agrees_small() {
        for p in 1..=15u64 {
            for q in p..=15 {
                for r in q..=15 {
                    if p.gcd(&q).gcd(&r) == 1 {
                        assert_eq!(apery_frobenius(p, q, r).unwrap(), naive_frobenius(p, q, r).unwrap(), "{p},{q},{r}");
                    }
                }
            }
        }
    }

    #[test]
    fn relation_examples() {
        let rp = find_relation(3, 5, 7, Isolated::P).unwrap();
        assert_eq!((rp.a, rp.b, rp.c), (4, 1, 1));
        let rq = find_relation(3, 5, 7, Isolated::Q).unwrap();
        assert_eq!((rq.a, rq.b, rq.c), (2, 1, 1));
        assert_eq!(killingbergtro_bound(3, 5, 7, &rp, &rq).unwrap(), 29);
        assert_eq!(positive_frobenius(3, 5, 7).unwrap(), 19);
        let one = find_relation(1, 1, 1, Isolated::P).unwrap();
        assert_eq!((one.a, one.b, one.c), (1, 0, 1));
        let oneq = find_relation(1, 1, 1, Isolated::Q).unwrap();
        assert_eq!(killingbergtro_bound(1, 1, 1, &one, &oneq).unwrap(), 3);
        let rp = find_relation(4, 6, 7, Isolated::P).unwrap();
        let rq = find_relation(4, 6, 7, Isolated::Q).unwrap();
        assert!(killingbergtro_bound(4, 6, 7, &rp, &rq).unwrap() >= 27);
        let bad = Relation { which: Isolated::P, a: 1, b: 1, c: 1 };
        assert!(matches!(killingbergtro_bound(3, 5, 7, &bad, &rq), Err(Error::InvalidRelation(_))));
        assert!(killingbergtro_bound(3, 5, 7, &rq, &rp).is_err());
    }

    #[test]
    fn short_constructions() {
        let s = yates_null_vector(4, Variant::A).unwrap();
        assert_eq!(s.to_string(), "(1,0,-1,0)");
        let s = yates_null_vector(6, Variant::B).unwrap();
        assert_eq!(s.to_string(), "(-1,2,-1,0,1,0)");
        assert!(yates_null_vector(3, Variant::A).is_err());
    }

    #[test]
    fn table_constructions() {
        let enc = exact::tribonacci();
        for n in 4..=120 {
            for v in [Variant::A, Variant::B] {
                let s = yates_null_vector(n, v).unwrap_or_else(|e| panic!("n={n} {v:?}: {e}"));
                assert_eq!(s.len(), n);
                let (idx, num) = v.magnitude();
                assert!(enc.below_scaled_half_power(&s.seed()[idx], num, 100, n as u32).unwrap());
            }
        }
    }

    #[test]
    fn box_search_examples() {
        let s = null_vector_search(T, 5, SignPattern::A, 5).unwrap().unwrap();
        assert_eq!(s.to_string(), "(2,0,-1,1,0)");
        let s = null_vector_search(T, 4, SignPattern::B, 3).unwrap().unwrap();
        assert_eq!(s.to_string(), "(0,1,-1,0)");
        let plastic = RecurrenceParams::new(0, 1, 1).unwrap();
        if let Some(s) = null_vector_search(plastic, 10, SignPattern::ANY, 1000).unwrap() {
            assert!(basis_triple(plastic, 10).dot(&s.seed()).is_zero());
        }
        let pattern: SignPattern = "+,0-,-".parse().unwrap();
        assert_eq!(pattern, SignPattern::A);
        assert_eq!(pattern.to_string(), "+,0-,-");
    }

    #[test]
    fn tail_search_matches_box_search() {
        for n in 7..=14 {
            let by_tail = null_vector_by_tail(T, n, SignPattern::A, 3).unwrap().unwrap();
            let by_box = null_vector_search(T, n, SignPattern::A, 60).unwrap().unwrap();
            let norm = |s: &NullSequence| s.seed().iter().map(|v| v.abs()).max().unwrap();
            assert!(norm(&by_box) <= norm(&by_tail));
        }
    }

    #[test]
    fn polly_small() {
        let r = polly_scan(20, 4, 16).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.vectors_checked > 0);
    }

    #[test]
    fn ian_examples() {
        let r = ian_threshold_check(4, DEFAULT_IAN_CAP).unwrap();
        assert_eq!(r.exact_threshold, 2);
        assert!(r.pass);
        let r = ian_threshold_check(7, DEFAULT_IAN_CAP).unwrap();
        assert_eq!(r.exact_threshold, 26);
        assert_eq!(r.bound_floor, BigInt::from(120));
        assert!(r.pass && r.pipeline_bound as i128 > r.exact_threshold);
        let r = ian_threshold_check(10, DEFAULT_IAN_CAP).unwrap();
        assert_eq!(r.basis.to_string(), "(24,37,44)");
        assert!(r.pass);
        assert!(matches!(ian_threshold_check(40, DEFAULT_IAN_CAP), Err(Error::ResourceLimit(_))));
    }
}
