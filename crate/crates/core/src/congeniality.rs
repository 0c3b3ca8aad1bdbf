//! Experiments on general recurrences `x_n = a·x_{n-1} + b·x_{n-2} + c·x_{n-3}`:
//! the affability test, maximal-length probes, the non-congenial family
//! `(1,1,2)`, and empirical versions of the threshold and count constants.
//!
//! A recurrence is congenial when the count at the maximal length is
//! uniformly bounded wherever it is finite. Existence arguments for the
//! constants are replaced here by explicit searches with reported fits.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ball::Ball;
use crate::census::{Census, CountResult};
use crate::error::{Error, Result};
use crate::exact::RootEnclosure;
use crate::frobenius::{self, null_vector_by_tail, null_vector_search, positive_frobenius, SignPattern};
use crate::recurrence::{basis_triple, BasisTriple, RecurrenceParams};
use crate::spectral::{cubic_roots, SpectralData};

/// Discriminant sign, root and verdict for one cubic.
#[derive(Debug, Clone)]
pub struct AffabilityVerdict {
    pub params: RecurrenceParams,
    pub discriminant: BigInt,
    /// Present when the cubic has exactly one real root.
    pub eta1: Option<Ball>,
    pub is_affable: bool,
}

/// Affable: `c = 1` and exactly one real root, which exceeds 1.
pub fn is_affable(params: RecurrenceParams) -> AffabilityVerdict {
    let discriminant = params.discriminant();
    let enclosure = RootEnclosure::real_root(params).ok();
    // P(1) = 1 - a - b - c < 0 puts the root above 1; checked exactly
    let above_one = enclosure.as_ref().is_some_and(|e| {
        let (lo, _, shift) = e.bounds();
        let one = BigInt::from(1) << shift as usize;
        lo > one || (!e.is_exact() && lo == one)
    });
    AffabilityVerdict {
        params,
        is_affable: params.c() == 1 && enclosure.is_some() && above_one,
        eta1: enclosure.map(|e| e.ball()),
        discriminant,
    }
}

/// Discriminant of `x^3 - a·x^2 - b·x - c` as `-Res(P, P')`, by fraction-free
/// elimination of the 5×5 Sylvester matrix. Independent of the closed formula.
pub fn sylvester_discriminant(params: RecurrenceParams) -> BigInt {
    let [c0, c1, c2, _] = params.characteristic();
    let p = [1, c2, c1, c0];
    let dp = [3, 2 * c2, c1];
    let mut m = vec![vec![BigInt::zero(); 5]; 5];
    for row in 0..2 {
        for (j, v) in p.iter().enumerate() {
            m[row][row + j] = BigInt::from(*v);
        }
    }
    for row in 0..3 {
        for (j, v) in dp.iter().enumerate() {
            m[2 + row][row + j] = BigInt::from(*v);
        }
    }
    -bareiss_determinant(m)
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// A probe value that exceeded its cap is reported as `Capped`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeCount {
    Count(CountResult),
    Capped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeRecord {
    pub n: i64,
    /// Largest length reaching `n`.
    pub max_length: usize,
    pub count: ProbeCount,
}

#[derive(Debug, Clone)]
pub struct CongenialityProbe {
    pub params: RecurrenceParams,
    pub n_lo: i64,
    pub n_hi: i64,
    pub records: Vec<ProbeRecord>,
    /// Largest finite uncapped count and where it occurs.
    pub observed_max: Option<(u128, i64)>,
}

/// Largest `n` a probe accepts.
pub const MAX_PROBE_N: i64 = 50_000_000;

/// Maximal length and the count there, for every `n` in range.
pub fn congeniality_probe(params: RecurrenceParams, n_lo: i64, n_hi: i64, count_cap: u128) -> Result<CongenialityProbe> {
    if params.a() + params.b() == 0 {
        return Err(Error::InvalidArgument("probe needs a + b > 0".into()));
    }
    if n_lo < 1 || n_hi < n_lo {
        return Err(Error::InvalidArgument(format!("bad range [{n_lo}, {n_hi}]")));
    }
    if n_hi > MAX_PROBE_N {
        return Err(Error::ResourceLimit(format!("probe range up to {n_hi} exceeds {MAX_PROBE_N}")));
    }
    let census = Census::new(params, n_hi)?;
    let mut records = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    let mut observed_max: Option<(u128, i64)> = None;
    for n in n_lo..=n_hi {
        let k = census.max_length(n)?;
        let raw = census.count(k, n);
        let count = match raw {
            CountResult::Finite(v) if v > count_cap => ProbeCount::Capped,
            other => ProbeCount::Count(other),
        };
        if let ProbeCount::Count(CountResult::Finite(v)) = count {
            if observed_max.is_none_or(|(m, _)| v > m) {
                observed_max = Some((v, n));
            }
        }
        records.push(ProbeRecord { n, max_length: k, count });
    }
    Ok(CongenialityProbe {
        params,
        n_lo,
        n_hi,
        records,
        observed_max,
    })
}

/// `max{f_L(m) : f_{L+1}(m) = 0}`: the largest count at length `L` among
/// values that length `L + 1` cannot reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalStat {
    pub params: RecurrenceParams,
    pub length: usize,
    pub max_count: u64,
    /// Smallest maximizing `m`.
    pub argmax: i64,
    /// Values `m` considered: every `m` up to the last one unreachable at `L + 1`.
    pub scanned_up_to: i64,
}

/// Largest representation table `terminal_statistic` will build.
pub const MAX_TERMINAL_RANGE: i128 = 200_000_000;

pub fn terminal_statistic(params: RecurrenceParams, length: usize) -> Result<TerminalStat> {
    if length < 4 {
        return Err(Error::InvalidArgument(format!("length must be at least 4, got {length}")));
    }
    let positive = |b: &BasisTriple| -> Result<[u64; 3]> {
        match b.to_u64() {
            Some(g) if !g.contains(&0) => Ok(g),
            _ => Err(Error::InvalidArgument(format!("basis {b} at length {} is degenerate", b.k))),
        }
    };
    let here = positive(&basis_triple(params, length))?;
    let next = positive(&basis_triple(params, length + 1))?;
    let last_gap = positive_frobenius(next[0], next[1], next[2])?;
    if last_gap > MAX_TERMINAL_RANGE {
        return Err(Error::ResourceLimit(format!("representation table of size {last_gap}")));
    }
    let apery = frobenius::apery_set(next[0], next[1], next[2])?;
    let size = last_gap.max(0) as usize;
    // ways[v]: non-negative solutions of x·p + y·q + z·r = v
    let mut ways = vec![0u64; size + 1];
    ways[0] = 1;
    for &g in &here {
        let g = g as usize;
        for v in g..=size {
            ways[v] = ways[v].saturating_add(ways[v - g]);
        }
    }
    let shift = here.iter().sum::<u64>() as usize;
    let mut best = (0u64, 0i64);
    for m in shift..=size {
        let count = ways[m - shift];
        if count > best.0 && !frobenius::positively_representable(&apery, next[0], next[1], next[2], m as i128) {
            best = (count, m as i64);
        }
    }
    Ok(TerminalStat {
        params,
        length,
        max_count: best.0,
        argmax: best.1,
        scanned_up_to: last_gap as i64,
    })
}

/// The `(1,1,2)` statistic at lengths `3t, 3t+1, 3t+2` (those ≥ 4), with the
/// tribonacci statistic at the same lengths as control.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub t_index: usize,
    pub stats: Vec<TerminalStat>,
    pub control: Vec<TerminalStat>,
}

impl FamilyReport {
    pub fn strictly_increasing(&self) -> bool {
        self.stats.windows(2).all(|w| w[0].max_count < w[1].max_count)
    }
}

/// `x_n = x_{n-1} + x_{n-2} + 2·x_{n-3}`.
pub fn noncongenial_params() -> RecurrenceParams {
    RecurrenceParams::new(1, 1, 2).expect("valid parameters")
}

pub fn noncongenial_family(t_index: usize) -> Result<FamilyReport> {
    if t_index == 0 {
        return Err(Error::InvalidArgument("t_index starts at 1".into()));
    }
    let lengths: Vec<usize> = (3 * t_index..=3 * t_index + 2).filter(|&l| l >= 4).collect();
    let stats = lengths.iter().map(|&l| terminal_statistic(noncongenial_params(), l)).collect::<Result<Vec<_>>>()?;
    let control = lengths
        .iter()
        .map(|&l| terminal_statistic(RecurrenceParams::TRIBONACCI, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport { t_index, stats, control })
}

/// One length in a [`ForemanReport`].
#[derive(Debug, Clone)]
pub struct ForemanRow {
    pub k: usize,
    pub basis: BasisTriple,
    /// Largest `n` with no positive length-`k` sequence; `None` when the basis
    /// has a zero entry.
    pub threshold: Option<i128>,
    /// `threshold / η1^(3k/2)`.
    pub u_k: Option<f64>,
    pub count_stat: Option<TerminalStat>,
}

#[derive(Debug, Clone)]
pub struct ForemanReport {
    pub params: RecurrenceParams,
    pub rows: Vec<ForemanRow>,
    pub sup_u: f64,
    pub sup_count: u64,
}

pub fn foreman_check(params: RecurrenceParams, k_lo: usize, k_hi: usize) -> Result<ForemanReport> {
    if !is_affable(params).is_affable {
        return Err(Error::NotAffable {
            a: params.a(),
            b: params.b(),
            c: params.c(),
        });
    }
    if k_lo < 4 || k_hi < k_lo {
        return Err(Error::InvalidArgument(format!("bad length range [{k_lo}, {k_hi}]")));
    }
    let eta1 = RootEnclosure::real_root(params)?.ball().mid();
    let mut rows = Vec::new();
    let (mut sup_u, mut sup_count) = (0.0f64, 0u64);
    for k in k_lo..=k_hi {
        let basis = basis_triple(params, k);
        let threshold = match basis.to_u64() {
            Some(g) if !g.contains(&0) => Some(positive_frobenius(g[0], g[1], g[2])?),
            _ => None,
        };
        let u_k = threshold.map(|t| t as f64 / eta1.powf(1.5 * k as f64));
        let count_stat = match terminal_statistic(params, k) {
            Ok(s) => Some(s),
            Err(Error::InvalidArgument(_)) => None,
            Err(e) => return Err(e),
        };
        if let Some(u) = u_k {
            sup_u = sup_u.max(u);
        }
        if let Some(s) = &count_stat {
            sup_count = sup_count.max(s.max_count);
        }
        rows.push(ForemanRow {
            k,
            basis,
            threshold,
            u_k,
            count_stat,
        });
    }
    Ok(ForemanReport {
        params,
        rows,
        sup_u,
        sup_count,
    })
}

/// `det [[Re ψ2, Re ζ2], [Im ψ2, Im ζ2]]`; non-zero means `k·ψ2 + l·ζ2 = 0`
/// forces `k = l = 0`.
pub fn kamelion_determinant(spec: &SpectralData) -> Ball {
    let (psi, zeta) = (spec.psi2(), spec.zeta2());
    psi.re * zeta.im - zeta.re * psi.im
}

/// A certified point of an angle window and its margin.
#[derive(Debug, Clone, Copy)]
pub struct WindowPoint {
    pub t: f64,
    /// Certified lower bound on the smallest of the three margins.
    pub epsilon: f64,
    /// Grid points inside the window that fail the sign conditions.
    pub failures: usize,
}

const WINDOW_GRID: usize = 4096;

fn window_search(lo: f64, hi: f64, margins: impl Fn(Ball) -> [Ball; 3]) -> Option<WindowPoint> {
    let mut best: Option<WindowPoint> = None;
    let mut failures = 0;
    for i in 1..WINDOW_GRID {
        let t = lo + (hi - lo) * i as f64 / WINDOW_GRID as f64;
        let m = margins(Ball::exact(t));
        let eps = m.iter().map(|b| b.lo()).fold(f64::INFINITY, f64::min);
        if eps <= 0.0 {
            failures += 1;
            continue;
        }
        if best.is_none_or(|b| eps > b.epsilon) {
            best = Some(WindowPoint { t, epsilon: eps, failures: 0 });
        }
    }
    best.map(|b| WindowPoint { failures, ..b })
}

/// `t ∈ (π/2 - δ, 3π/2 - 2δ)` with `cos t > 0 > cos(t+δ), cos(t+2δ)`.
pub fn window_a(delta: Ball) -> Option<WindowPoint> {
    let (lo, hi) = (PI / 2.0 - delta.mid(), 1.5 * PI - 2.0 * delta.mid());
    if hi <= lo {
        return None;
    }
    window_search(lo, hi, |t| [t.cos(), -(t + delta).cos(), -(t + delta * 2.0).cos()])
}

/// `u ∈ (π/2 - 2δ, -π/2)` with `cos(u+δ) > 0 > cos u, cos(u+2δ)`.
pub fn window_b(delta: Ball) -> Option<WindowPoint> {
    let (lo, hi) = (PI / 2.0 - 2.0 * delta.mid(), -PI / 2.0);
    if hi <= lo {
        return None;
    }
    window_search(lo, hi, |u| [(u + delta).cos(), -u.cos(), -(u + delta * 2.0).cos()])
}

/// Parameter grid `0 ≤ a, b ≤ 4`, `a + b ≥ 1`, `c = 1`, filtered by affability.
pub fn affable_grid() -> Vec<RecurrenceParams> {
    let mut out = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 {
            if a + b >= 1 {
                let p = RecurrenceParams::new(a, b, 1).expect("c = 1, a + b ≥ 1");
                if is_affable(p).is_affable {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Sign-patterned null vectors for one parameter set over a length range,
/// with the fitted constant `C = max |lead| / η1^(n/2)`.
#[derive(Debug, Clone)]
pub struct NullFit {
    pub params: RecurrenceParams,
    pub n_lo: usize,
    pub n_hi: usize,
    pub missing: Vec<(usize, char)>,
    pub c_a: f64,
    pub c_b: f64,
}

/// Tail search first, box search as a fallback.
pub fn null_vector_fit(params: RecurrenceParams, n_lo: usize, n_hi: usize, tail_bound: i64, box_bound: i64) -> Result<NullFit> {
    let eta1 = RootEnclosure::real_root(params)?.ball().mid();
    let mut fit = NullFit {
        params,
        n_lo,
        n_hi,
        missing: Vec::new(),
        c_a: 0.0,
        c_b: 0.0,
    };
    for n in n_lo..=n_hi {
        for (label, pattern, idx) in [('A', SignPattern::A, 0usize), ('B', SignPattern::B, 1usize)] {
            let found = match null_vector_by_tail(params, n, pattern, tail_bound)? {
                Some(s) => Some(s),
                None => null_vector_search(params, n, pattern, box_bound)?,
            };
            match found {
                Some(s) => {
                    let lead = s.seed()[idx].abs().to_f64().unwrap_or(f64::INFINITY);
                    let ratio = lead / eta1.powf(n as f64 / 2.0);
                    let slot = if label == 'A' { &mut fit.c_a } else { &mut fit.c_b };
                    *slot = slot.max(ratio);
                }
                None => fit.missing.push((n, label)),
            }
        }
    }
    Ok(fit)
}

/// `δ` for a parameter set, when the cubic has one real root.
pub fn rotation_angle(params: RecurrenceParams) -> Result<Ball> {
    Ok(cubic_roots(params)?.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::RecurrenceParams as P;

    fn p(a: u32, b: u32, c: u32) -> P {
        P::new(a, b, c).unwrap()
    }

    #[test]
    fn affability_examples() {
        let v = is_affable(P::TRIBONACCI);
        assert!(v.is_affable);
        assert_eq!(v.discriminant, BigInt::from(-44));
        assert!(v.eta1.unwrap().contains(1.839_286_755_214_161));
        let v = is_affable(p(1, 1, 2));
        assert!(!v.is_affable);
        assert_eq!(v.discriminant, BigInt::from(-147));
        assert_eq!(v.eta1.unwrap().mid(), 2.0);
        let v = is_affable(p(0, 1, 1));
        assert!(v.is_affable && v.discriminant == BigInt::from(-23));
        let v = is_affable(p(0, 3, 1));
        assert!(!v.is_affable && v.eta1.is_none());
    }

    #[test]
    fn discriminant_matches_resultant() {
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 1..=5 {
                    if let Ok(params) = P::new(a, b, c) {
                        assert_eq!(params.discriminant(), sylvester_discriminant(params), "{params}");
                    }
                }
            }
        }
    }

    #[test]
    fn probe_matches_census() {
        let probe = congeniality_probe(P::TRIBONACCI, 3, 100, u128::MAX).unwrap();
        let scan = crate::census::scan_max_p(P::TRIBONACCI, 3, 100, 1).unwrap();
        assert_eq!(probe.observed_max, Some((scan.max_p, scan.argmax)));
        let capped = congeniality_probe(P::TRIBONACCI, 3, 100, 1).unwrap();
        assert!(capped.records.iter().any(|r| r.count == ProbeCount::Capped));
        assert!(congeniality_probe(p(0, 0, 2), 1, 10, 10).is_err());
        let plastic = congeniality_probe(p(0, 1, 1), 1, 200, u128::MAX).unwrap();
        assert_eq!(plastic.records.len(), 200);
    }

    #[test]
    fn noncongenial_statistic_grows() {
        let expected = [9u64, 15, 50, 57, 111, 370, 441, 879];
        for (l, want) in (4..).zip(expected) {
            assert_eq!(terminal_statistic(noncongenial_params(), l).unwrap().max_count, want, "L={l}");
        }
        let first = noncongenial_family(1).unwrap();
        assert_eq!(first.stats.len(), 2);
        assert!(first.stats.iter().any(|s| s.max_count >= 2));
        let second = noncongenial_family(2).unwrap();
        assert!(first.stats.last().unwrap().max_count < second.stats[0].max_count);
        assert!(second.strictly_increasing());
    }

    #[test]
    fn tribonacci_control_matches_scan() {
        let scan = crate::census::scan_max_p(P::TRIBONACCI, 3, 5000, 1).unwrap();
        for l in 4..=9 {
            let s = terminal_statistic(P::TRIBONACCI, l).unwrap();
            // same quantity as max p(m) over m with t(m) = L
            let via_scan = scan
                .records
                .iter()
                .filter(|r| r.t_of_n == l && r.n <= s.scanned_up_to)
                .filter_map(|r| r.p_of_n.finite())
                .max()
                .unwrap_or(0);
            assert_eq!(s.max_count as u128, via_scan, "L={l}");
        }
    }

    #[test]
    fn foreman_examples() {
        let r = foreman_check(P::TRIBONACCI, 4, 10).unwrap();
        assert!(r.sup_u <= 0.2);
        assert!(r.sup_count <= 561_001);
        let r = foreman_check(p(0, 1, 1), 4, 10).unwrap();
        assert!(r.rows.iter().any(|row| row.threshold.is_none()));
        assert!(matches!(foreman_check(p(1, 1, 2), 4, 6), Err(Error::NotAffable { .. })));
    }

    #[test]
    fn affable_grid_properties() {
        let grid = affable_grid();
        assert_eq!(grid.len(), 17);
        for params in grid {
            let spec = cubic_roots(params).unwrap();
            assert!(spec.delta.gt(PI / 2.0) && spec.delta.lt(PI), "{params}");
            let det = kamelion_determinant(&spec);
            assert!(!det.contains_zero(), "{params}");
            let a = window_a(spec.delta).unwrap();
            assert!(a.epsilon > 0.0 && a.failures == 0);
            let b = window_b(spec.delta).unwrap();
            assert!(b.epsilon > 0.0 && b.failures == 0);
        }
    }

    #[test]
    fn null_fit_tribonacci() {
        let fit = null_vector_fit(P::TRIBONACCI, 7, 16, 12, 50).unwrap();
        assert!(fit.missing.is_empty());
        assert!(fit.c_a < 0.81 && fit.c_b < 0.64);
    }
}
