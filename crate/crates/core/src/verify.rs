//! The acceptance suite: every quantitative claim checked at desk scale.
//!
//! Each criterion returns a [`CriterionResult`] with a one-line detail; none
//! of them panics on failure.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{self, brute_force_count, count_terminations, susan_bound_check, CountResult, DEFAULT_BRUTE_FORCE_CAP};
use crate::congeniality::{noncongenial_params, terminal_statistic};
use crate::error::{Error, Result};
use crate::exact;
use crate::frobenius::{
    self, apery_frobenius, find_relation, ian_threshold_check, killingbergtro_bound, naive_frobenius, polly_scan, positive_frobenius,
    yates_null_vector, Isolated, Variant,
};
use crate::recurrence::{basis_triple, extend_backward, extend_forward, RecurrenceParams};
use crate::spectral::{self, closed_form_eval, jamie_scan, verify_all_tables, victoria_scan, zoe_gap};

const T: RecurrenceParams = RecurrenceParams::TRIBONACCI;

/// Upper bound on `p(n)` for tribonacci.
pub const BARBARA_BOUND: u128 = 561_001;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// Stated runtime budget.
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2}s, budget {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Knobs shared by the criteria.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub threads: usize,
    pub seed: u64,
    /// Upper end of the `p(n)` scan.
    pub scan_hi: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            threads: 1,
            seed: 0x7269_6263,
            scan_hi: 100_000,
        }
    }
}

fn run(id: u8, name: &'static str, budget_s: u64, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_s),
    }
}

pub fn table_reproduction() -> CriterionResult {
    run(1, "table reproduction", 1, || {
        let rows = verify_all_tables()?;
        let worst = rows.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
        let claims = rows.iter().filter(|r| r.claims_hold).count();
        Ok((
            rows.len() == 20 && claims == 20,
            format!("{} rows within 5e-4 (worst deviation {worst:.2e}); sign/margin claims hold on {claims}/20", rows.len()),
        ))
    })
}

pub fn spectral_constants() -> CriterionResult {
    run(2, "spectral constants", 1, || {
        let s = spectral::tribonacci();
        // the printed root carries ten decimals
        let phi_ok = (s.eta1.mid() - 1.839_286_755_2).abs() <= 0.5e-10 + s.eta1.rad();
        let near = |b: crate::ball::Ball, v: f64| (b.mid() - v).abs() + b.rad() <= 5e-4;
        let delta_ok = near(s.delta, 2.176);
        let psi_ok = near(s.psi1.re, 0.02267) && near(s.psi1.im, -0.217);
        let zeta_ok = near(s.zeta1.re, 0.1908) && near(s.zeta1.im, -0.0187);
        let v = victoria_scan(100)?;
        let mixed = v.min_mixed_ratio.unwrap_or(f64::NAN);
        let victoria_ok = v.passed() && mixed > 1.0 / 31.0;
        Ok((
            phi_ok && delta_ok && psi_ok && zeta_ok && victoria_ok,
            format!(
                "phi={} delta={} psi1={}{:+}i zeta1={}{:+}i; |alpha|<=|k|+|l| and beta>=(|k|+|l|)/31 on {} pairs, min beta/(k-l)={mixed:.5} at {:?}",
                s.eta1.mid(),
                s.delta.mid(),
                s.psi1.re.mid(),
                s.psi1.im.mid(),
                s.zeta1.re.mid(),
                s.zeta1.im.mid(),
                v.pairs_checked,
                v.argmin_mixed.unwrap_or_default()
            ),
        ))
    })
}

pub fn oracle_equivalence() -> CriterionResult {
    run(3, "oracle equivalence", 30, || {
        let mut cells = 0;
        let mut mismatches = Vec::new();
        for k in 4..=12 {
            for n in 3..=200 {
                cells += 1;
                let fast = count_terminations(T, k, n);
                let slow = brute_force_count(T, k, n, DEFAULT_BRUTE_FORCE_CAP)?;
                if fast != slow {
                    mismatches.push((k, n, fast, slow));
                }
            }
        }
        Ok((
            mismatches.is_empty(),
            format!("{cells} cells compared, {} mismatches {:?}", mismatches.len(), mismatches.iter().take(3).collect::<Vec<_>>()),
        ))
    })
}

pub fn ian_thresholds() -> CriterionResult {
    run(4, "reachability threshold", 60, || {
        let mut failures = Vec::new();
        let mut summary = Vec::new();
        let mut k7 = None;
        for k in 4..=14 {
            let r = ian_threshold_check(k, frobenius::DEFAULT_IAN_CAP)?;
            let [p, q, r3] = r.basis.to_u64().expect("small basis");
            let sieve = naive_frobenius(p, q, r3)? + (p + q + r3) as i128;
            if !r.pass || sieve != r.exact_threshold || !r.pipeline_below || r.pipeline_bound as i128 <= r.exact_threshold {
                failures.push(k);
            }
            if k == 7 {
                k7 = Some(r.exact_threshold);
            }
            summary.push(format!("{}:{}<{}", k, r.exact_threshold, r.bound_floor + 1));
        }
        Ok((
            failures.is_empty() && k7 == Some(26),
            format!("k=7 threshold {:?}; thresholds vs ceil(0.2·phi^(3k/2)) {}; failures {:?}", k7, summary.join(" "), failures),
        ))
    })
}

pub fn susan_grid() -> CriterionResult {
    run(5, "count bound grid", 120, || {
        let mut checked = 0u64;
        let mut failures = Vec::new();
        let mut tightest = (f64::INFINITY, 0usize, 0i64);
        for k in 4..=12usize {
            let basis = basis_triple(T, k);
            for n in 3..=10_000i64 {
                let count = match census::count_for_basis(&basis, n) {
                    CountResult::Finite(v) => v,
                    CountResult::Infinite => return Err(Error::InvalidArgument("infinite count at k ≥ 4".into())),
                };
                let c = susan_bound_check(k, n, count)?;
                checked += 1;
                if !c.pass {
                    failures.push((k, n));
                }
                if count > 0 {
                    let slack = num_traits::ToPrimitive::to_f64(&c.bound).unwrap_or(f64::INFINITY) / count as f64;
                    if slack < tightest.0 {
                        tightest = (slack, k, n);
                    }
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!(
                "{checked} cells, {} failures; smallest bound/count ratio {:.1} at k={}, n={}",
                failures.len(),
                tightest.0,
                tightest.1,
                tightest.2
            ),
        ))
    })
}

/// Returns the criterion and the observed maximum of `p(n)`.
pub fn barbara_scan(cfg: &SuiteConfig) -> (CriterionResult, Option<u128>) {
    let mut observed = None;
    let res = run(6, "maximal-length count scan", 600, || {
        let r = census::scan_max_p(T, 3, cfg.scan_hi, cfg.threads)?;
        observed = Some(r.max_p);
        Ok((
            r.max_p <= BARBARA_BOUND && r.infinite == 0,
            format!(
                "n in [3, {}]: max p(n) = {} at n = {} (bound {BARBARA_BOUND}); {} distinct values",
                cfg.scan_hi,
                r.max_p,
                r.argmax,
                r.histogram.len()
            ),
        ))
    });
    (res, observed)
}

pub fn yates_constructions() -> CriterionResult {
    run(7, "null sequence constructions", 5, || {
        let mut failures = Vec::new();
        let mut worst = [0.0f64; 2];
        let phi = exact::tribonacci().ball().mid();
        for n in 4..=200usize {
            for (i, v) in [Variant::A, Variant::B].into_iter().enumerate() {
                match yates_null_vector(n, v) {
                    Ok(s) => {
                        let lead = &s.seed()[i];
                        let ratio = num_traits::ToPrimitive::to_f64(lead).unwrap_or(f64::INFINITY) / phi.powf(n as f64 / 2.0);
                        worst[i] = worst[i].max(ratio);
                    }
                    Err(e) => failures.push(format!("n={n} {v:?}: {e}")),
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!(
                "394 sequences verified exactly; max a1/phi^(n/2) = {:.4} (< 0.81), max b2/phi^(n/2) = {:.4} (< 0.64); failures {:?}",
                worst[0],
                worst[1],
                failures.iter().take(3).collect::<Vec<_>>()
            ),
        ))
    })
}

pub fn lower_bound_suite() -> CriterionResult {
    run(8, "null sequence lower bounds", 60, || {
        let jamie = jamie_scan(100, 2, 40)?;
        let polly = polly_scan(50, 4, 30)?;
        Ok((
            jamie.passed() && polly.passed(),
            format!(
                "reverse sequences: {} cells, {} violations, min scaled {:.4}; null vectors in box 50: {} checked, {} violations",
                jamie.cells_checked,
                jamie.violations.len(),
                jamie.min_scaled,
                polly.vectors_checked,
                polly.violations.len()
            ),
        ))
    })
}

pub fn frobenius_machinery(cfg: &SuiteConfig) -> CriterionResult {
    run(9, "frobenius machinery", 60, || {
        let mut triples = 0;
        let mut mismatches = Vec::new();
        for p in 1..=60u64 {
            for q in p..=60 {
                let pq = p.gcd(&q);
                for r in q..=60 {
                    if pq.gcd(&r) != 1 {
                        continue;
                    }
                    triples += 1;
                    if apery_frobenius(p, q, r)? != naive_frobenius(p, q, r)? {
                        mismatches.push((p, q, r));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut seen = HashSet::new();
        let mut bound_failures = Vec::new();
        while seen.len() < 200 {
            let mut g = [rng.gen_range(2..=150u64), rng.gen_range(2..=150u64), rng.gen_range(2..=150u64)];
            g.sort_unstable();
            if g[0].gcd(&g[1]).gcd(&g[2]) != 1 || !seen.insert(g) {
                continue;
            }
            let [p, q, r] = g;
            let rel_p = find_relation(p, q, r, Isolated::P)?;
            let rel_q = find_relation(p, q, r, Isolated::Q)?;
            let bound = killingbergtro_bound(p, q, r, &rel_p, &rel_q)? as i128;
            let apery = frobenius::apery_set(p, q, r)?;
            let sound = (bound..=bound + (p * q) as i128).all(|n| frobenius::positively_representable(&apery, p, q, r, n));
            if bound < positive_frobenius(p, q, r)? + 1 || !sound {
                bound_failures.push(g);
            }
        }
        Ok((
            mismatches.is_empty() && bound_failures.is_empty(),
            format!(
                "{triples} coprime triples vs sieve, {} mismatches; 200 random triples, {} relation-bound failures",
                mismatches.len(),
                bound_failures.len()
            ),
        ))
    })
}

pub fn noncongeniality(scan_max: Option<u128>) -> CriterionResult {
    run(10, "non-congeniality evidence", 300, || {
        let params = noncongenial_params();
        let mut stats = Vec::new();
        let mut control = Vec::new();
        for l in 4..=12 {
            stats.push(terminal_statistic(params, l)?.max_count);
            control.push(terminal_statistic(T, l)?.max_count);
        }
        let increasing = stats.windows(2).all(|w| w[0] < w[1]);
        let cap = scan_max.map_or(BARBARA_BOUND, |m| m.min(BARBARA_BOUND));
        let control_ok = control.iter().all(|&c| (c as u128) <= cap);
        Ok((
            increasing && stats.len() >= 3 && control_ok,
            format!("(1,1,2) lengths 4..12: {stats:?}; tribonacci control: {control:?} (cap {cap})"),
        ))
    })
}

pub fn property_suites(cfg: &SuiteConfig) -> CriterionResult {
    run(11, "property suites", 60, || {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
        let mut zoe_fail = 0;
        for _ in 0..100_000 {
            let p = rng.gen_range(-10.0..10.0);
            let q = rng.gen_range(PI / 2.0..PI);
            if zoe_gap(p, q) < -1e-12 {
                zoe_fail += 1;
            }
        }

        let spec = spectral::tribonacci();
        let mut closed_fail = 0;
        let mut closed_cells = 0;
        for k in -20i64..=20 {
            for l in -20i64..=20 {
                let tail = [BigInt::from(l), BigInt::from(k), BigInt::from(0)];
                let seq = extend_backward(T, &tail, 38)?;
                let n = seq.len() as i64;
                for i in 1..=n {
                    closed_cells += 1;
                    let want = num_traits::ToPrimitive::to_f64(seq.term(i as usize)).unwrap_or(f64::NAN);
                    if !closed_form_eval(spec, k, l, i, n)?.contains(want) {
                        closed_fail += 1;
                    }
                }
            }
        }

        let mut trip_fail = 0;
        for _ in 0..1000 {
            let params = RecurrenceParams::new(rng.gen_range(0..4), rng.gen_range(0..4), 1).unwrap_or(T);
            let seed = [0; 3].map(|_: i32| BigInt::from(rng.gen_range(-1000i64..1000)));
            let len = rng.gen_range(3..40usize);
            let fwd = extend_forward(params, &seed, len)?;
            let back = extend_backward(params, &fwd.tail(), len - 3)?;
            if back.terms() != fwd.terms() {
                trip_fail += 1;
            }
        }

        let gcd_fail = (1..=60).filter(|&k| !basis_triple(T, k).gcd().is_one()).count();
        Ok((
            zoe_fail == 0 && closed_fail == 0 && trip_fail == 0 && gcd_fail == 0,
            format!(
                "trig inequality 100000 samples ({zoe_fail} failures); closed form {closed_cells} cells ({closed_fail} failures); round trip 1000 ({trip_fail}); gcd k<=60 ({gcd_fail})"
            ),
        ))
    })
}

/// All eleven criteria in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    let mut out = vec![table_reproduction(), spectral_constants(), oracle_equivalence(), ian_thresholds(), susan_grid()];
    let (scan, observed) = barbara_scan(cfg);
    out.push(scan);
    out.push(yates_constructions());
    out.push(lower_bound_suite());
    out.push(frobenius_machinery(cfg));
    out.push(noncongeniality(observed));
    out.push(property_suites(cfg));
    out
}
