//! Exact counts `f_k(n)` of positive sequences of length `k` ending at `n`,
//! the maximal length `t(n)`, and `p(n) = f_{t(n)}(n)`.
//!
//! A positive length-`k` sequence is determined by its seed, and its terminus
//! is `x·p_k + y·q_k + z·r_k`, so `f_k(n)` counts positive solutions of that
//! linear equation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact;
use crate::recurrence::{basis_triple, BasisTable, BasisTriple, RecurrenceParams};

/// `f_k(n)`: a finite count or infinitely many sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountResult {
    Finite(u128),
    Infinite,
}

impl CountResult {
    pub fn is_positive(&self) -> bool {
        !matches!(self, CountResult::Finite(0))
    }

    pub fn finite(&self) -> Option<u128> {
        match self {
            CountResult::Finite(v) => Some(*v),
            CountResult::Infinite => None,
        }
    }
}

impl fmt::Display for CountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountResult::Finite(v) => write!(f, "{v}"),
            CountResult::Infinite => f.write_str("infinite"),
        }
    }
}

/// `f_k(n)` for `k ≥ 1`. Lengths 2 and 3 (and, for general parameters, any
/// length whose basis has a zero entry) leave a free seed coordinate and give
/// infinitely many sequences whenever one exists.
pub fn count_terminations(params: RecurrenceParams, k: usize, n: i64) -> CountResult {
    assert!(k >= 1, "lengths start at 1");
    match k {
        _ if n <= 0 => CountResult::Finite(0),
        1 => CountResult::Finite(1),
        2 | 3 => CountResult::Infinite,
        _ => count_for_basis(&basis_triple(params, k), n),
    }
}

/// Positive solutions of `x·p + y·q + z·r = n` for a basis row.
pub fn count_for_basis(basis: &BasisTriple, n: i64) -> CountResult {
    match basis.to_i128() {
        Some(g) => count_positive(g, n as i128),
        // every coordinate is at least 1, so a huge entry overshoots n
        None => CountResult::Finite(0),
    }
}

/// Positive solutions of `x·g0 + y·g1 + z·g2 = n` for non-negative `g`.
pub fn count_positive(g: [i128; 3], n: i128) -> CountResult {
    let m = n - g.iter().sum::<i128>();
    if m < 0 {
        return CountResult::Finite(0);
    }
    count_nonnegative(g, m)
}

/// Non-negative solutions of `x·g0 + y·g1 + z·g2 = m`.
pub fn count_nonnegative(g: [i128; 3], m: i128) -> CountResult {
    if m < 0 {
        return CountResult::Finite(0);
    }
    let mut nonzero: Vec<i128> = g.iter().copied().filter(|&v| v > 0).collect();
    nonzero.sort_unstable();
    if nonzero.len() < 3 {
        let reachable = match nonzero.as_slice() {
            [] => m == 0,
            [a] => m % a == 0,
            [a, b] => TwoGen::new(*a, *b).count(m) > 0,
            _ => unreachable!(),
        };
        return if reachable { CountResult::Infinite } else { CountResult::Finite(0) };
    }
    let (two, g3) = (TwoGen::new(nonzero[0], nonzero[1]), nonzero[2]);
    let mut total: u128 = 0;
    let mut rem = m;
    while rem >= 0 {
        total += two.count(rem);
        rem -= g3;
    }
    CountResult::Finite(total)
}

/// Counts non-negative `(x, y)` with `x·g1 + y·g2 = rem` in O(1).
struct TwoGen {
    d: i128,
    a: i128,
    b: i128,
    inv_b: i128,
}

impl TwoGen {
    fn new(g1: i128, g2: i128) -> Self {
        let d = g1.gcd(&g2);
        let (a, b) = (g1 / d, g2 / d);
        let inv_b = if a == 1 { 0 } else { b.extended_gcd(&a).x.rem_euclid(a) };
        TwoGen { d, a, b, inv_b }
    }

    fn count(&self, rem: i128) -> u128 {
        if rem % self.d != 0 {
            return 0;
        }
        let r = rem / self.d;
        // y·b ≡ r (mod a); the smallest such y, then every a-th one
        let y0 = (r % self.a) * self.inv_b % self.a;
        let used = y0 * self.b;
        if used > r {
            0
        } else {
            ((r - used) / (self.a * self.b) + 1) as u128
        }
    }
}

/// Terminus of a seed by direct forward iteration, saturating on overflow.
fn forward_terminus(params: RecurrenceParams, seed: [i128; 3], k: usize) -> i128 {
    let (a, b, c) = (params.a() as i128, params.b() as i128, params.c() as i128);
    let mut w = seed;
    for _ in 4..=k {
        let next = a
            .saturating_mul(w[2])
            .saturating_add(b.saturating_mul(w[1]))
            .saturating_add(c.saturating_mul(w[0]));
        w = [w[1], w[2], next];
    }
    w[2]
}

/// Default number of seeds `brute_force_count` may visit.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1 << 32;

/// `f_k(n)` by enumerating seeds directly, pruning on monotonicity of the
/// terminus in each seed coordinate. Independent of the basis-triple path.
pub fn brute_force_count(params: RecurrenceParams, k: usize, n: i64, cap: u64) -> Result<CountResult> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("brute force needs length ≥ 4, got {k}")));
    }
    if n <= 0 {
        return Ok(CountResult::Finite(0));
    }
    let n = n as i128;
    let run = |s: [i128; 3]| forward_terminus(params, s, k);
    // coordinates that do not influence the terminus stay at 1
    let base = run([1, 1, 1]);
    let free: Vec<bool> = (0..3)
        .map(|i| {
            let mut s = [1, 1, 1];
            s[i] = 2;
            run(s) == base
        })
        .collect();
    let limit = |i: usize| if free[i] { 1 } else { i128::MAX };

    let mut visited: u64 = 0;
    let mut count: u128 = 0;
    let mut a1 = 1;
    while a1 <= limit(0) && run([a1, 1, 1]) <= n {
        let mut a2 = 1;
        while a2 <= limit(1) && run([a1, a2, 1]) <= n {
            let mut a3 = 1;
            while a3 <= limit(2) {
                let t = run([a1, a2, a3]);
                if t > n {
                    break;
                }
                visited += 1;
                if visited > cap {
                    return Err(Error::ResourceLimit(format!("brute force over {cap} seeds at k={k}, n={n}")));
                }
                if t == n {
                    count += 1;
                }
                a3 += 1;
            }
            a2 += 1;
        }
        a1 += 1;
    }
    if count > 0 && free.iter().any(|&f| f) {
        Ok(CountResult::Infinite)
    } else {
        Ok(CountResult::Finite(count))
    }
}

/// One scanned value of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRecord {
    pub n: i64,
    pub t_of_n: usize,
    pub p_of_n: CountResult,
}

/// Memoized basis rows plus, for tribonacci, the `floor(0.2·φ^(3k/2))`
/// thresholds above which length `k` is always reachable.
#[derive(Debug, Clone)]
pub struct Census {
    params: RecurrenceParams,
    table: BasisTable,
    reach_floors: Vec<i128>,
}

impl Census {
    /// Covers every `n ≤ n_max`.
    pub fn new(params: RecurrenceParams, n_max: i64) -> Result<Self> {
        let table = BasisTable::covering(params, n_max.max(1) as u64, 2);
        let mut reach_floors = Vec::new();
        if params.is_tribonacci() {
            let enc = exact::tribonacci();
            for k in 0..=table.k_max() as u32 {
                let f = if k < 4 { 0 } else { enc.floor_scaled_half_power(1, 5, 3 * k)?.to_i128().unwrap_or(i128::MAX) };
                reach_floors.push(f);
            }
        }
        Ok(Census {
            params,
            table,
            reach_floors,
        })
    }

    pub fn params(&self) -> RecurrenceParams {
        self.params
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    pub fn count(&self, k: usize, n: i64) -> CountResult {
        assert!(k >= 1, "lengths start at 1");
        if n <= 0 {
            return CountResult::Finite(0);
        }
        match k {
            1 => CountResult::Finite(1),
            2 | 3 => CountResult::Infinite,
            _ => match self.table.get(k) {
                Some(row) => count_for_basis(row, n),
                None => count_terminations(self.params, k, n),
            },
        }
    }

    /// `t(n)`. Starts from the largest length guaranteed reachable and walks
    /// up while the next length is still reachable; support in `k` is an
    /// initial segment because dropping the first term of a positive
    /// sequence leaves a positive sequence.
    pub fn max_length(&self, n: i64) -> Result<usize> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("t(n) needs n ≥ 1, got {n}")));
        }
        let guaranteed = self
            .reach_floors
            .iter()
            .rposition(|&f| f > 0 && (n as i128) > f)
            .unwrap_or(3);
        let mut k = guaranteed.max(3);
        while k > 3 && !self.count(k, n).is_positive() {
            k -= 1;
        }
        while k < self.table.k_max() && self.count(k + 1, n).is_positive() {
            k += 1;
        }
        Ok(k)
    }

    pub fn p_of_n(&self, n: i64) -> Result<CountResult> {
        let t = self.max_length(n)?;
        Ok(self.count(t, n))
    }

    pub fn record(&self, n: i64) -> Result<CensusRecord> {
        let t_of_n = self.max_length(n)?;
        Ok(CensusRecord {
            n,
            t_of_n,
            p_of_n: self.count(t_of_n, n),
        })
    }
}

/// `t(n)`.
pub fn max_length(params: RecurrenceParams, n: i64) -> Result<usize> {
    Census::new(params, n)?.max_length(n)
}

/// `p(n)`.
pub fn p_of_n(params: RecurrenceParams, n: i64) -> Result<CountResult> {
    Census::new(params, n)?.p_of_n(n)
}

/// Summary of a `p(n)` scan.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub params: RecurrenceParams,
    pub n_lo: i64,
    pub n_hi: i64,
    pub records: Vec<CensusRecord>,
    /// Largest finite `p(n)`; ties go to the smaller `n`.
    pub max_p: u128,
    pub argmax: i64,
    pub histogram: BTreeMap<u128, u64>,
    pub infinite: u64,
}

/// Computes `p(n)` for every `n` in `[n_lo, n_hi]` on `threads` workers;
/// the result does not depend on the thread count.
pub fn scan_max_p(params: RecurrenceParams, n_lo: i64, n_hi: i64, threads: usize) -> Result<ScanReport> {
    if n_lo < 3 || n_hi < n_lo {
        return Err(Error::InvalidArgument(format!("scan range [{n_lo}, {n_hi}] must satisfy 3 ≤ lo ≤ hi")));
    }
    let census = Census::new(params, n_hi)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?;
    let records: Vec<CensusRecord> =
        pool.install(|| (n_lo..=n_hi).into_par_iter().map(|n| census.record(n)).collect::<Result<_>>())?;

    let mut report = ScanReport {
        params,
        n_lo,
        n_hi,
        records: Vec::new(),
        max_p: 0,
        argmax: n_lo,
        histogram: BTreeMap::new(),
        infinite: 0,
    };
    for rec in &records {
        match rec.p_of_n {
            CountResult::Infinite => report.infinite += 1,
            CountResult::Finite(v) => {
                *report.histogram.entry(v).or_default() += 1;
                if v > report.max_p {
                    report.max_p = v;
                    report.argmax = rec.n;
                }
            }
        }
    }
    report.records = records;
    Ok(report)
}

/// `f_k(n)` against `ceil(1500·n/φ^(3k/2))²` for tribonacci.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SusanCheck {
    pub k: usize,
    pub n: i64,
    pub count: u128,
    pub bound: BigInt,
    pub pass: bool,
}

/// `ceil(1500·n/φ^(3k/2))`, certified: a ball evaluation decides when its
/// enclosure sits strictly inside one unit interval, exact integer
/// comparisons otherwise.
pub fn susan_ceiling(k: usize, n: i64) -> Result<BigInt> {
    let enc = exact::tribonacci();
    let e = 3 * k as u32;
    let num = 1500 * n.max(0);
    let x = crate::ball::Ball::exact(num as f64) / enc.ball().sqrt().powi(e);
    let c = x.hi().ceil();
    if x.lo() > c - 1.0 && c < 9.0e15 {
        return Ok(BigInt::from(c as i64));
    }
    enc.ceil_over_half_power(&BigInt::from(num), e)
}

pub fn susan_bound_check(k: usize, n: i64, count: u128) -> Result<SusanCheck> {
    if k < 4 || n < 1 {
        return Err(Error::InvalidArgument(format!("bound applies to k ≥ 4, n ≥ 1 (got k={k}, n={n})")));
    }
    let ceil = susan_ceiling(k, n)?;
    let bound = &ceil * &ceil;
    Ok(SusanCheck {
        k,
        n,
        count,
        pass: BigInt::from(count) <= bound,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::min_terminus;

    const T: RecurrenceParams = RecurrenceParams::TRIBONACCI;

    #[test]
    fn count_examples() {
        assert_eq!(count_terminations(T, 4, 5), CountResult::Finite(6));
        assert_eq!(count_terminations(T, 5, 7), CountResult::Finite(3));
        assert_eq!(count_terminations(T, 6, 10), CountResult::Finite(0));
        assert_eq!(count_terminations(T, 1, 7), CountResult::Finite(1));
        assert_eq!(count_terminations(T, 2, 7), CountResult::Infinite);
        assert_eq!(count_terminations(T, 3, 1), CountResult::Infinite);
        assert_eq!(count_terminations(T, 3, 0), CountResult::Finite(0));
        assert_eq!(count_terminations(T, 9, -4), CountResult::Finite(0));
    }

    #[test]
    fn zero_basis_entry_gives_infinite() {
        // x4 = x2 + x1 leaves x3 free
        let p = RecurrenceParams::new(0, 1, 1).unwrap();
        assert_eq!(count_terminations(p, 4, 5), CountResult::Infinite);
        assert_eq!(brute_force_count(p, 4, 5, 1 << 20).unwrap(), CountResult::Infinite);
        assert_eq!(count_terminations(p, 4, 1), CountResult::Finite(0));
        assert_eq!(brute_force_count(p, 4, 1, 1 << 20).unwrap(), CountResult::Finite(0));
    }

    #[test]
    fn two_generator_counts() {
        for g1 in 1..12i128 {
            for g2 in g1..15 {
                let two = TwoGen::new(g1, g2);
                for rem in 0..120 {
                    let naive = (0..=rem / g2).filter(|y| (rem - y * g2) % g1 == 0).count() as u128;
                    assert_eq!(two.count(rem), naive, "{g1},{g2},{rem}");
                }
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(T, 4, 5, 1 << 20).unwrap(), CountResult::Finite(6));
        assert_eq!(brute_force_count(T, 7, 26, 1 << 20).unwrap(), CountResult::Finite(0));
        assert!(brute_force_count(T, 7, 27, 1 << 20).unwrap().is_positive());
        assert!(matches!(brute_force_count(T, 4, 200, 10), Err(Error::ResourceLimit(_))));
        assert!(brute_force_count(T, 3, 5, 10).is_err());
    }

    #[test]
    fn oracle_agreement_small() {
        for k in 4..=9 {
            for n in 1..=60 {
                assert_eq!(count_terminations(T, k, n), brute_force_count(T, k, n, 1 << 24).unwrap(), "k={k} n={n}");
            }
        }
        let p = RecurrenceParams::new(1, 1, 2).unwrap();
        for k in 4..=8 {
            for n in 1..=60 {
                assert_eq!(count_terminations(p, k, n), brute_force_count(p, k, n, 1 << 24).unwrap());
            }
        }
    }

    #[test]
    fn max_length_examples() {
        assert_eq!(max_length(T, 1).unwrap(), 3);
        assert_eq!(max_length(T, 2).unwrap(), 3);
        assert_eq!(max_length(T, 3).unwrap(), 4);
        assert_eq!(max_length(T, 9).unwrap(), 6);
        assert!(max_length(T, 0).is_err());
    }

    #[test]
    fn max_length_matches_linear_walk() {
        let census = Census::new(T, 3000).unwrap();
        for n in 1..=3000 {
            let mut k = 3;
            while count_terminations(T, k + 1, n).is_positive() {
                k += 1;
            }
            assert_eq!(census.max_length(n).unwrap(), k, "n={n}");
        }
    }

    #[test]
    fn p_of_n_examples() {
        assert_eq!(p_of_n(T, 3).unwrap(), CountResult::Finite(1));
        assert_eq!(p_of_n(T, 4).unwrap(), CountResult::Finite(3));
        assert_eq!(p_of_n(T, 1).unwrap(), CountResult::Infinite);
    }

    #[test]
    fn scan_examples() {
        let r = scan_max_p(T, 3, 3, 1).unwrap();
        assert_eq!((r.max_p, r.argmax), (1, 3));
        assert!(scan_max_p(T, 1, 2, 1).is_err());
        let one = scan_max_p(T, 3, 2000, 1).unwrap();
        let four = scan_max_p(T, 3, 2000, 4).unwrap();
        assert_eq!(one.records, four.records);
        assert_eq!((one.max_p, one.argmax), (four.max_p, four.argmax));
        assert!(one.max_p <= 561_001);
    }

    #[test]
    fn susan_examples() {
        let c = susan_bound_check(4, 5, 6).unwrap();
        assert_eq!(c.bound, BigInt::from(194 * 194));
        assert!(c.pass);
        assert!(susan_bound_check(6, 10, 0).unwrap().pass);
        assert!(min_terminus(T, 12) > BigInt::from(100));
        assert!(susan_bound_check(12, 100, 0).unwrap().pass);
        for k in 4..20 {
            for n in [1, 7, 99, 12345] {
                let exact = exact::tribonacci().ceil_over_half_power(&BigInt::from(1500 * n), 3 * k as u32).unwrap();
                assert_eq!(susan_ceiling(k, n).unwrap(), exact);
            }
        }
    }

    #[test]
    fn seed_sum_bound() {
        // n ≥ p_k·(a1+a2+a3) since p_k is the smallest basis entry; the
        // sharper 11·n/φ^k fails already for the seed (30,1,1) at k = 4
        let phi = 1.839_286_755_214_161_f64;
        let mut worst: f64 = 0.0;
        for k in 4..=30 {
            let basis = basis_triple(T, k).to_i128().unwrap();
            let smallest = *basis.iter().min().unwrap();
            assert_eq!(smallest, basis[0]);
            for seed in [[1i128, 1, 1], [30, 1, 1], [1, 30, 1], [7, 3, 11]] {
                let n: i128 = seed.iter().zip(basis).map(|(s, b)| s * b).sum();
                assert!(seed.iter().sum::<i128>() * smallest <= n);
            }
            worst = worst.max(phi.powi(k as i32) / smallest as f64);
        }
        assert!(worst > 11.0 && worst < 21.05);
        let n = 32.0;
        assert!(32.0 > 11.0 * n / phi.powi(4));
    }
}
