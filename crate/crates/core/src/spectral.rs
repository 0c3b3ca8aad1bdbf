//! Roots of the characteristic cubic and the eigen-decomposition of sequences
//! terminating at zero.
//!
//! For a sequence with `x_n = 0`, `x_{n-1} = k`, `x_{n-2} = l`, write
//! `j = n + 1 - i` for the distance from the end (so `j = 1` is the zero).
//! Then
//!
//! ```text
//! x_i = α·η1^(-j) + 2·Re((k·ψ1 + l·ζ1)·η2^(-j))
//!     = α·η1^(-j) + β·|η2|^(-j)·cos(γ - δ·j)
//! ```
//!
//! where `η1` is the real root, `η2` the complex root with positive imaginary
//! part, `δ = arg η2`, `α = k·A + l·B` and `β·e^(iγ) = 2(k·ψ1 + l·ζ1)`. When
//! `c = 1`, `|η2|^(-1) = η1^(1/2)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::ball::{Ball, ComplexBall};
use crate::error::{Error, Result};
use crate::exact::RootEnclosure;
use crate::recurrence::RecurrenceParams;

/// Certified roots and decomposition constants for one recurrence.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub params: RecurrenceParams,
    pub enclosure: RootEnclosure,
    /// Real root.
    pub eta1: Ball,
    /// Complex root with positive imaginary part.
    pub eta2: ComplexBall,
    /// `|η2|`.
    pub modulus: Ball,
    /// `arg η2`, in `(0, π)`.
    pub delta: Ball,
    /// `α = k·alpha_k + l·alpha_l`.
    pub alpha_k: Ball,
    pub alpha_l: Ball,
    pub psi1: ComplexBall,
    pub zeta1: ComplexBall,
}

impl SpectralData {
    pub fn psi2(&self) -> ComplexBall {
        self.psi1.conj()
    }

    pub fn zeta2(&self) -> ComplexBall {
        self.zeta1.conj()
    }

    pub fn eta3(&self) -> ComplexBall {
        self.eta2.conj()
    }

    /// The three roots, real one first.
    pub fn roots(&self) -> [ComplexBall; 3] {
        [ComplexBall::real(self.eta1), self.eta2, self.eta3()]
    }

    /// `P(root)` for each root; each ball should contain zero.
    pub fn residuals(&self) -> [ComplexBall; 3] {
        self.roots().map(|z| eval_cubic(self.params, z))
    }

    /// Largest radius among the root enclosures.
    pub fn root_radius(&self) -> f64 {
        self.eta1.rad().max(self.eta2.re.rad()).max(self.eta2.im.rad())
    }
}

fn eval_cubic(params: RecurrenceParams, z: ComplexBall) -> ComplexBall {
    let a = Ball::exact(params.a() as f64);
    let b = Ball::exact(params.b() as f64);
    let c = Ball::exact(params.c() as f64);
    let z2 = z * z;
    let z3 = z2 * z;
    z3 - z2.scale(a) - z.scale(b) - ComplexBall::real(c)
}

/// Roots of `x^3 - a·x^2 - b·x - c` with certified radii, plus the
/// decomposition constants obtained by solving the 3×3 system.
///
/// Fails with [`Error::MultipleRealRoots`] when the discriminant is `≥ 0`.
pub fn cubic_roots(params: RecurrenceParams) -> Result<SpectralData> {
    let enclosure = RootEnclosure::real_root(params)?;
    let eta1 = enclosure.ball();
    // x^3 - a x^2 - b x - c = (x - η1)(x^2 + s x + t), s = η1 - a, t = c/η1
    let s = eta1 - Ball::exact(params.a() as f64);
    let t = Ball::exact(params.c() as f64) / eta1;
    let disc = t * 4.0 - s.sqr();
    assert!(disc.gt(0.0), "negative discriminant implies a complex pair");
    let eta2 = ComplexBall::new(-s * 0.5, disc.sqrt() * 0.5);
    let modulus = t.sqrt();
    let delta = eta2.arg();

    let (alpha_k, alpha_l, psi1, zeta1) = solve_constants(eta1, eta2);
    Ok(SpectralData {
        params,
        enclosure,
        eta1,
        eta2,
        modulus,
        delta,
        alpha_k,
        alpha_l,
        psi1,
        zeta1,
    })
}

/// Shared tribonacci data.
pub fn tribonacci() -> &'static SpectralData {
    static DATA: OnceLock<SpectralData> = OnceLock::new();
    DATA.get_or_init(|| cubic_roots(RecurrenceParams::TRIBONACCI).expect("tribonacci cubic has one real root"))
}

/// Coefficients `(ψ_m, ζ_m)` of `C_m = k·ψ_m + l·ζ_m` for each root, from the
/// conditions `y_1 = 0, y_2 = k, y_3 = l` on `y_j = Σ C_m·η_m^(-j)`.
fn solve_constants(eta1: Ball, eta2: ComplexBall) -> (Ball, Ball, ComplexBall, ComplexBall) {
    let lam = [ComplexBall::real(eta1).recip(), eta2.recip(), eta2.conj().recip()];
    let sigma = lam[0] + lam[1] + lam[2];
    let coeffs = |m: usize| {
        let mut d = lam[m];
        for (s, other) in lam.iter().enumerate() {
            if s != m {
                d = d * (lam[m] - *other);
            }
        }
        let zeta = d.recip();
        let psi = -(sigma - lam[m]) * zeta;
        (psi, zeta)
    };
    let (psi_r, zeta_r) = coeffs(0);
    let (psi_c, zeta_c) = coeffs(1);
    (psi_r.re, zeta_r.re, psi_c, zeta_c)
}

/// How to obtain `(ψ1, ζ1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantRoute {
    /// Explicit rational expressions in the roots; tribonacci only.
    ClosedForm,
    /// The 3×3 Vandermonde solve, valid for any parameters with one real root.
    LinearSolve,
}

#[derive(Debug, Clone, Copy)]
pub struct BensonConstants {
    pub psi1: ComplexBall,
    pub zeta1: ComplexBall,
    pub alpha_k: Ball,
    pub alpha_l: Ball,
}

/// `(ψ1, ζ1)` and the real-root coefficients of `α`, by the chosen route.
pub fn benson_constants(spec: &SpectralData, route: ConstantRoute) -> Result<BensonConstants> {
    match route {
        ConstantRoute::LinearSolve => Ok(BensonConstants {
            psi1: spec.psi1,
            zeta1: spec.zeta1,
            alpha_k: spec.alpha_k,
            alpha_l: spec.alpha_l,
        }),
        ConstantRoute::ClosedForm => {
            if !spec.params.is_tribonacci() {
                return Err(Error::InvalidArgument(format!(
                    "closed-form constants only apply to tribonacci, not {}",
                    spec.params
                )));
            }
            let three = ComplexBall::real(Ball::exact(3.0));
            let z = spec.eta2;
            let z2 = z * z;
            let z3 = z2 * z;
            let denom = z2 + z + z + three;
            let f = spec.eta1;
            let f2 = f.sqr();
            let f3 = f2 * f;
            let fden = f2 + f * 2.0 + Ball::exact(3.0);
            Ok(BensonConstants {
                psi1: (z3 + z2) / denom,
                zeta1: z3 / denom,
                alpha_k: (f2 + f3) / fden,
                alpha_l: f3 / fden,
            })
        }
    }
}

/// `α`, `β`, `γ` for a tail `(k, l)`.
#[derive(Debug, Clone, Copy)]
pub struct AlphaBetaGamma {
    pub k: i64,
    pub l: i64,
    pub alpha: Ball,
    pub beta: Ball,
    /// Principal value in `(-π, π]`; fixed to 0 when `k = l = 0`.
    pub gamma: Ball,
}

pub fn alpha_beta_gamma(spec: &SpectralData, k: i64, l: i64) -> AlphaBetaGamma {
    let kb = Ball::from_i64(k);
    let lb = Ball::from_i64(l);
    let alpha = spec.alpha_k * kb + spec.alpha_l * lb;
    if k == 0 && l == 0 {
        return AlphaBetaGamma {
            k,
            l,
            alpha,
            beta: Ball::exact(0.0),
            gamma: Ball::exact(0.0),
        };
    }
    let z = (spec.psi1.scale(kb) + spec.zeta1.scale(lb)).scale(Ball::exact(2.0));
    AlphaBetaGamma {
        k,
        l,
        alpha,
        beta: z.abs(),
        gamma: z.arg(),
    }
}

/// Enclosure of `x_i` for the sequence ending `(…, l, k, 0)` at index `n`.
pub fn closed_form_eval(spec: &SpectralData, k: i64, l: i64, i: i64, n: i64) -> Result<Ball> {
    if i > n {
        return Err(Error::InvalidArgument(format!("index {i} is past the terminal index {n}")));
    }
    let j = u32::try_from(n + 1 - i).map_err(|_| Error::InvalidArgument("distance too large".into()))?;
    let abg = alpha_beta_gamma(spec, k, l);
    let real_part = abg.alpha * spec.eta1.recip().powi(j);
    let angle = abg.gamma - spec.delta * Ball::from_i64(j as i64);
    let oscillating = abg.beta * spec.modulus.recip().powi(j) * angle.cos();
    Ok(real_part + oscillating)
}

/// Outcome of checking `|α| ≤ |k|+|l|` and `β ≥ (|k|+|l|)/31` on a grid.
#[derive(Debug, Clone)]
pub struct VictoriaReport {
    pub grid_bound: i64,
    pub pairs_checked: usize,
    pub alpha_violations: Vec<(i64, i64)>,
    pub beta_violations: Vec<(i64, i64)>,
    /// Minimum of `β/(|k|+|l|)` over the grid and where it occurs.
    pub min_ratio: f64,
    pub argmin: (i64, i64),
    /// Minimum of `β/(k-l)` over `k > 0 > l`, and where it occurs.
    pub min_mixed_ratio: Option<f64>,
    pub argmin_mixed: Option<(i64, i64)>,
}

impl VictoriaReport {
    pub fn passed(&self) -> bool {
        self.alpha_violations.is_empty() && self.beta_violations.is_empty()
    }
}

pub fn victoria_scan(grid_bound: i64) -> Result<VictoriaReport> {
    if grid_bound < 1 {
        return Err(Error::InvalidArgument("grid bound must be at least 1".into()));
    }
    let spec = cubic_roots(RecurrenceParams::TRIBONACCI)?;
    let mut report = VictoriaReport {
        grid_bound,
        pairs_checked: 0,
        alpha_violations: Vec::new(),
        beta_violations: Vec::new(),
        min_ratio: f64::INFINITY,
        argmin: (0, 0),
        min_mixed_ratio: None,
        argmin_mixed: None,
    };
    for k in -grid_bound..=grid_bound {
        for l in -grid_bound..=grid_bound {
            if k == 0 && l == 0 {
                continue;
            }
            report.pairs_checked += 1;
            let abg = alpha_beta_gamma(&spec, k, l);
            let size = (k.abs() + l.abs()) as f64;
            if abg.alpha.abs().hi() > size {
                report.alpha_violations.push((k, l));
            }
            if abg.beta.lo() < size / 31.0 {
                report.beta_violations.push((k, l));
            }
            let ratio = abg.beta.mid() / size;
            if ratio < report.min_ratio {
                report.min_ratio = ratio;
                report.argmin = (k, l);
            }
            if k > 0 && l < 0 && report.min_mixed_ratio.is_none_or(|m| ratio < m) {
                report.min_mixed_ratio = Some(ratio);
                report.argmin_mixed = Some((k, l));
            }
        }
    }
    Ok(report)
}

/// One printed row of the sign tables used to build null sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub t0: f64,
    pub t1: f64,
    pub k: i64,
    pub l: i64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

const fn row(t0: f64, t1: f64, k: i64, l: i64, v: [f64; 6]) -> TableRow {
    TableRow {
        t0,
        t1,
        k,
        l,
        alpha: v[0],
        beta: v[1],
        gamma: v[2],
        x0: v[3],
        x1: v[4],
        x2: v[5],
    }
}

/// Rows for sequences with `a1 > 0 ≥ a2, 0 > a3`.
pub const TABLE_1: [TableRow; 11] = [
    row(0.00, 0.06, 0, 1, [0.6184, 0.3834, -0.0977, 0.3410, -0.0500, -0.1694]),
    row(0.06, 0.16, -1, 2, [0.2822, 0.8027, 0.4640, 0.6879, -0.0515, -0.2163]),
    row(0.16, 0.22, -1, 1, [-0.3362, 0.5200, 0.8677, 0.4526, -0.0471, -0.2482]),
    row(0.22, 0.35, -1, 0, [-0.9546, 0.4364, 1.6749, 0.3778, -0.0354, -0.0294]),
    row(0.35, 0.45, -1, -1, [-1.5731, 0.6360, 2.3067, 0.5517, -0.0538, -0.1588]),
    row(0.45, 0.56, 0, -1, [-0.6184, 0.3834, 3.0439, 0.3410, -0.0500, -0.0548]),
    row(0.56, 0.66, 1, -2, [-0.2822, 0.8027, -2.6776, 0.6879, -0.0515, -0.2163]),
    row(0.66, 0.72, 1, -1, [0.3362, 0.5200, -2.2739, 0.4526, -0.0471, -0.2482]),
    row(0.72, 0.85, 1, 0, [0.9546, 0.4364, -1.4667, 0.3778, -0.0354, -0.0294]),
    row(0.85, 0.95, 1, 1, [1.5731, 0.6360, -0.8349, 0.5517, -0.0538, -0.1588]),
    row(0.95, 1.00, 0, 1, [0.6184, 0.3834, -0.0977, 0.3745, -0.1864, -0.0548]),
];

/// Rows for sequences with `b2 > 0 ≥ b1, 0 > b3`. The printed `γ` uses the
/// conjugate convention, i.e. it is the negated principal argument.
pub const TABLE_2: [TableRow; 9] = [
    row(0.00, 0.06, 1, -1, [0.3362, 0.5200, 2.2739, -0.3362, 0.4625, -0.0678]),
    row(0.06, 0.19, 1, 0, [0.9546, 0.4364, 1.4667, -0.1176, 0.3862, -0.0528]),
    row(0.19, 0.29, 1, 1, [1.5731, 0.6360, 0.8349, -0.2812, 0.5639, -0.0791]),
    row(0.29, 0.41, 0, 1, [0.6184, 0.3834, 0.0977, -0.1311, 0.3369, -0.0413]),
    row(0.41, 0.56, -1, 1, [-0.3362, 0.5200, -0.8677, -0.0714, 0.4625, -0.0678]),
    row(0.56, 0.69, -1, 0, [-0.9546, 0.4364, -1.6749, -0.1176, 0.3862, -0.0528]),
    row(0.69, 0.79, -1, -1, [-1.5731, 0.6360, -2.3067, -0.2812, 0.5639, -0.0791]),
    row(0.79, 0.91, 0, -1, [-0.6184, 0.3834, -3.0439, -0.1311, 0.3369, -0.0413]),
    row(0.91, 1.00, 1, -1, [0.3362, 0.5200, 2.2739, -0.0714, 0.4641, -0.2528]),
];

/// Printed values carry four decimals.
pub const TABLE_TOLERANCE: f64 = 5e-4;

pub fn table_rows(table: u8) -> Result<&'static [TableRow]> {
    match table {
        1 => Ok(&TABLE_1),
        2 => Ok(&TABLE_2),
        _ => Err(Error::InvalidArgument(format!("no table {table}"))),
    }
}

/// Recomputed values for one table row.
#[derive(Debug, Clone)]
pub struct RowVerification {
    pub table: u8,
    /// 1-based.
    pub row: usize,
    pub printed: TableRow,
    pub alpha: Ball,
    pub beta: Ball,
    /// In the table's own sign convention.
    pub gamma: Ball,
    pub x0: Ball,
    pub x1: Ball,
    pub x2: Ball,
    pub max_deviation: f64,
    /// The row's sign and margin claims hold across its whole interval.
    pub claims_hold: bool,
}

/// Range of `cos` over the angle interval `[u, v]`, as `(min, max)` balls.
fn cos_range(u: Ball, v: Ball) -> (Ball, Ball) {
    let cu = u.cos();
    let cv = v.cos();
    let mut lo = cu.min(cv);
    let mut hi = cu.max(cv);
    let (a, b) = (u.lo(), v.hi());
    // interior critical points m·π
    let first = (a / PI).ceil() as i64;
    let last = (b / PI).floor() as i64;
    for m in first..=last {
        if m.rem_euclid(2) == 0 {
            hi = Ball::exact(1.0);
        } else {
            lo = Ball::exact(-1.0);
        }
    }
    (lo, hi)
}

/// Range of `β·cos(γ + m·δ - 2πt)` for `t` in the row's interval.
fn shifted_range(spec: &SpectralData, abg: &AlphaBetaGamma, tr: &TableRow, m: u32) -> (Ball, Ball) {
    let two_pi = Ball::pi() * 2.0;
    let base = abg.gamma + spec.delta * Ball::exact(m as f64);
    let u = base - two_pi * Ball::exact(tr.t1);
    let v = base - two_pi * Ball::exact(tr.t0);
    let (lo, hi) = cos_range(u, v);
    (abg.beta * lo, abg.beta * hi)
}

/// Recomputes one printed row and checks it to within [`TABLE_TOLERANCE`].
pub fn verify_table_row(table: u8, row: usize) -> Result<RowVerification> {
    let spec = cubic_roots(RecurrenceParams::TRIBONACCI)?;
    verify_table_row_with(&spec, table, row)
}

pub fn verify_table_row_with(spec: &SpectralData, table: u8, row: usize) -> Result<RowVerification> {
    let rows = table_rows(table)?;
    let tr = *rows
        .get(row.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidArgument(format!("table {table} has no row {row}")))?;
    let abg = alpha_beta_gamma(spec, tr.k, tr.l);
    let gamma = if table == 2 { -abg.gamma } else { abg.gamma };
    let r0 = shifted_range(spec, &abg, &tr, 0);
    let r1 = shifted_range(spec, &abg, &tr, 1);
    let r2 = shifted_range(spec, &abg, &tr, 2);
    let (x0, x1, x2, claims_hold) = if table == 1 {
        // β cos(γ-δn) ≥ x0 > 0.34, β cos(γ-δ(n-1)) ≤ x1 < -0.035, β cos(γ-δ(n-2)) ≤ x2 < -0.029
        let ok = r0.0.gt(0.34) && r1.1.lt(-0.035) && r2.1.lt(-0.029);
        (r0.0, r1.1, r2.1, ok)
    } else {
        // β cos(γ-δn) ≤ x0 < -0.071, β cos(γ-δ(n-1)) ≥ x1 > 0.33, β cos(γ-δ(n-2)) ≤ x2 < -0.041
        let ok = r0.1.lt(-0.071) && r1.0.gt(0.33) && r2.1.lt(-0.041);
        (r0.1, r1.0, r2.1, ok)
    };
    let claims_hold = claims_hold && abg.alpha.abs().lt(1.58);

    let fields = [
        ("alpha", abg.alpha, tr.alpha),
        ("beta", abg.beta, tr.beta),
        ("gamma", gamma, tr.gamma),
        ("x0", x0, tr.x0),
        ("x1", x1, tr.x1),
        ("x2", x2, tr.x2),
    ];
    let mut max_deviation: f64 = 0.0;
    for (field, computed, printed) in fields {
        let dev = (computed.mid() - printed).abs() + computed.rad();
        if dev > TABLE_TOLERANCE {
            return Err(Error::RowMismatch {
                table,
                row,
                field,
                computed: computed.mid(),
                printed,
            });
        }
        max_deviation = max_deviation.max(dev);
    }
    Ok(RowVerification {
        table,
        row,
        printed: tr,
        alpha: abg.alpha,
        beta: abg.beta,
        gamma,
        x0,
        x1,
        x2,
        max_deviation,
        claims_hold,
    })
}

/// Every row of both tables.
pub fn verify_all_tables() -> Result<Vec<RowVerification>> {
    let spec = cubic_roots(RecurrenceParams::TRIBONACCI)?;
    let mut out = Vec::with_capacity(TABLE_1.len() + TABLE_2.len());
    for (table, len) in [(1u8, TABLE_1.len()), (2u8, TABLE_2.len())] {
        for row in 1..=len {
            out.push(verify_table_row_with(&spec, table, row)?);
        }
    }
    Ok(out)
}

/// `max(|cos p|, |cos(p+q)|) - cos(q/2)`; non-negative for `π/2 < q < π`.
pub fn zoe_gap(p: f64, q: f64) -> f64 {
    p.cos().abs().max((p + q).cos().abs()) - (q / 2.0).cos()
}

/// Result of checking the `0.01·η1^(n/2)` lower bound on reverse sequences
/// starting `(0, k, l)`.
#[derive(Debug, Clone)]
pub struct JamieReport {
    pub grid_bound: i64,
    pub n_lo: u32,
    pub n_hi: u32,
    pub cells_checked: usize,
    pub violations: Vec<(i64, i64, u32)>,
    /// Smallest observed `max(|b_n|/η1^(n/2), |b_{n+1}|/η1^((n+1)/2))`.
    pub min_scaled: f64,
}

impl JamieReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `(k, l) ≠ (0, 0)` with `|k|, |l| ≤ grid_bound` and `n_lo ≤ n ≤ n_hi`,
/// checks that `|b_n| > 0.01·φ^(n/2)` or `|b_{n+1}| > 0.01·φ^((n+1)/2)` for the
/// reverse-tribonacci sequence `b = (0, k, l, …)`.
pub fn jamie_scan(grid_bound: i64, n_lo: u32, n_hi: u32) -> Result<JamieReport> {
    if n_lo < 2 || n_hi < n_lo {
        return Err(Error::InvalidArgument(format!("bad index range [{n_lo}, {n_hi}]")));
    }
    let enc = RootEnclosure::real_root(RecurrenceParams::TRIBONACCI)?;
    let phi = enc.ball().mid();
    // |b| > 0.01·φ^(e/2)  <=>  |b| > floor(0.01·φ^(e/2))
    let mut floors = vec![0i128; n_hi as usize + 2];
    for e in n_lo..=n_hi + 1 {
        let f = enc.floor_scaled_half_power(1, 100, e)?;
        floors[e as usize] = i128::try_from(f).map_err(|_| Error::ResourceLimit("threshold overflow".into()))?;
    }
    let mut report = JamieReport {
        grid_bound,
        n_lo,
        n_hi,
        cells_checked: 0,
        violations: Vec::new(),
        min_scaled: f64::INFINITY,
    };
    let len = n_hi as usize + 2;
    let mut b = vec![0i128; len];
    for k in -grid_bound..=grid_bound {
        for l in -grid_bound..=grid_bound {
            if k == 0 && l == 0 {
                continue;
            }
            b[1] = 0;
            b[2] = k as i128;
            b[3] = l as i128;
            for j in 4..len {
                b[j] = b[j - 3] - b[j - 2] - b[j - 1];
            }
            for n in n_lo..=n_hi {
                let (u, v) = (b[n as usize].abs(), b[n as usize + 1].abs());
                report.cells_checked += 1;
                if !(u > floors[n as usize] || v > floors[n as usize + 1]) {
                    report.violations.push((k, l, n));
                }
                let scaled = (u as f64 / phi.powf(n as f64 / 2.0)).max(v as f64 / phi.powf((n + 1) as f64 / 2.0));
                report.min_scaled = report.min_scaled.min(scaled);
            }
        }
    }
    Ok(report)
}

/// Exact reverse sequence `b_1 = 0, b_2 = k, b_3 = l, …` up to `b_len`, for
/// any parameters with `c = 1`.
pub fn reverse_sequence(params: RecurrenceParams, k: i64, l: i64, len: usize) -> Result<Vec<BigInt>> {
    let tail = [BigInt::from(l), BigInt::from(k), BigInt::from(0)];
    let seq = crate::recurrence::extend_backward(params, &tail, len.saturating_sub(3))?;
    Ok(seq.into_terms().into_iter().rev().collect())
}
