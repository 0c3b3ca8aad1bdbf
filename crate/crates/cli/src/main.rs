//! `tribcensus`: command-line front end.
//!
//! Every subcommand prints one record per line, followed by a `manifest`
//! record carrying the command line, library version, precision settings,
//! wall time and a SHA-256 digest of the preceding records.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use tribcensus::ball::Ball;
use tribcensus::census::{self, Census};
use tribcensus::congeniality::{self, ProbeCount};
use tribcensus::exact::{self, DEFAULT_BITS, MAX_BITS};
use tribcensus::frobenius::{self, Isolated, SignPattern, Variant};
use tribcensus::recurrence::basis_triple;
use tribcensus::report::{Format, Record, RecordWriter};
use tribcensus::spectral;
use tribcensus::verify::{self, SuiteConfig};
use tribcensus::{Error, RecurrenceParams};

const TRIB: RecurrenceParams = RecurrenceParams::TRIBONACCI;

#[derive(Parser)]
#[command(name = "tribcensus", version, about = "Counting and certifying positive sequences of linear recurrences")]
struct Cli {
    /// Record format: `kv` (key:value) or `tsv`.
    #[arg(long, global = true, default_value = "kv")]
    format: Format,

    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for scans.
    #[arg(long, global = true, env = "TRIBCENSUS_THREADS", default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis triples (p_k, q_k, r_k).
    Basis {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        /// Length or inclusive range `lo..hi`.
        #[arg(long)]
        k: Span,
    },
    /// Number of positive sequences of length k ending at n.
    Count {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Maximal length t(n).
    Tn {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        n: Span,
    },
    /// Number p(n) of sequences of maximal length.
    Pn {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        n: Span,
    },
    /// Largest p(n) over a range, with the value histogram.
    ScanMaxP {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        n: Span,
        /// Also emit one record per n.
        #[arg(long)]
        each: bool,
    },
    /// Frobenius number, relations and relation bound of a triple.
    Frobenius {
        /// Generators `p,q,r`.
        #[arg(long, conflicts_with_all = ["params", "k"])]
        triple: Option<Triple>,
        #[arg(long)]
        params: Option<RecurrenceParams>,
        /// Use the basis triple at this length.
        #[arg(long, requires = "params")]
        k: Option<usize>,
    },
    /// Largest unreachable n per length, against 0.2·φ^(3k/2) for tribonacci.
    Threshold {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        k: Span,
        /// Largest k accepted.
        #[arg(long, default_value_t = frobenius::DEFAULT_IAN_CAP)]
        cap: usize,
    },
    /// Certified roots and decomposition constants.
    Spectral {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        /// Recompute both printed tables (tribonacci only).
        #[arg(long)]
        verify_tables: bool,
    },
    /// A null sequence: positive-basis dot product zero, with a sign pattern.
    NullVector {
        #[arg(long, default_value = "1,1,1")]
        params: RecurrenceParams,
        #[arg(long)]
        n: usize,
        /// `A`, `B`, or three constraints such as `+,0-,-`.
        #[arg(long, default_value = "A")]
        pattern: String,
        /// Exhaustive search over |a1|,|a2| ≤ this bound.
        #[arg(long = "box")]
        box_bound: Option<i64>,
        /// Backward search from tails (l, k, 0) with |k|,|l| ≤ this bound.
        #[arg(long)]
        tail: Option<i64>,
    },
    /// Affability verdict, rotation angle and sign windows.
    Affable {
        #[arg(long)]
        params: RecurrenceParams,
    },
    /// Maximal length and its count across a range.
    Probe {
        #[arg(long)]
        params: RecurrenceParams,
        #[arg(long)]
        n: Span,
        /// Counts above this are reported as capped.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
    },
    /// Terminal statistics for (1,1,2) with a tribonacci control.
    Noncongenial {
        #[arg(long)]
        t: Span,
    },
    /// The full acceptance suite.
    VerifyAll {
        /// Upper end of the p(n) scan.
        #[arg(long, default_value_t = 100_000)]
        scan_hi: i64,
    },
}

/// Inclusive range `lo..hi`, or a single value.
#[derive(Clone, Copy, Debug)]
struct Span {
    lo: i64,
    hi: i64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    fn lengths(self) -> Result<std::ops::RangeInclusive<usize>, Error> {
        if self.lo < 0 {
            return Err(Error::InvalidArgument(format!("lengths must be non-negative, got {}", self.lo)));
        }
        Ok(self.lo as usize..=self.hi as usize)
    }
}

#[derive(Clone, Copy, Debug)]
struct Triple([u64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad generator {t:?}")))
            .collect::<Result<_, _>>()?;
        <[u64; 3]>::try_from(parts).map(Triple).map_err(|_| format!("expected three generators, got {s:?}"))
    }
}

/// Records of one run, plus the first failing record if any check failed.
#[derive(Default)]
struct Outcome {
    echo: String,
    records: Vec<Record>,
    failure: Option<Record>,
}

impl Outcome {
    fn new(echo: impl Into<String>) -> Self {
        Outcome {
            echo: echo.into(),
            ..Outcome::default()
        }
    }

    fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    fn check(&mut self, ok: bool, r: Record) {
        if !ok && self.failure.is_none() {
            self.failure = Some(r.clone());
        }
        self.records.push(r);
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(_) | Error::Uncertified(_) => Failure::Resource(e.to_string()),
            Error::RowMismatch { .. } | Error::PatternViolation { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Resource(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = dispatch(&cli).and_then(|outcome| emit(&cli, outcome, start));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(3)
        }
    }
}

/// Writes records and the manifest; returns whether every check passed.
fn emit(cli: &Cli, outcome: Outcome, start: Instant) -> Result<bool, Failure> {
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = RecordWriter::new(BufWriter::new(sink), cli.format);
    let mut hasher = Sha256::new();
    for r in &outcome.records {
        out.write(r)?;
        hasher.update(r.render(Format::Kv).as_bytes());
        hasher.update(b"\n");
    }
    let digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let manifest = Record::new("manifest")
        .field("command", argv.join(" "))
        .field("params", &outcome.echo)
        .field("version", env!("CARGO_PKG_VERSION"))
        .field("precision_bits", DEFAULT_BITS)
        .field("max_precision_bits", MAX_BITS)
        .field("threads", cli.threads)
        .field("records", outcome.records.len())
        .field("digest", digest)
        .field("wall_time", format!("{:.3}s", start.elapsed().as_secs_f64()));
    out.write(&manifest)?;
    out.flush()?;
    if let Some(r) = &outcome.failure {
        eprintln!("verification failed: {}", r.render(Format::Kv));
        return Ok(false);
    }
    Ok(true)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Basis { params, k } => basis(*params, *k),
        Command::Count { params, k, n } => {
            let mut o = Outcome::new(params.to_string());
            let count = census::count_terminations(*params, *k, *n);
            o.push(Record::new("count").field("params", params).field("k", k).field("n", n).field("count", count));
            Ok(o)
        }
        Command::Tn { params, n } => lengths(*params, *n, false),
        Command::Pn { params, n } => lengths(*params, *n, true),
        Command::ScanMaxP { params, n, each } => scan(*params, *n, *each, cli.threads),
        Command::Frobenius { triple, params, k } => frobenius_cmd(*triple, *params, *k),
        Command::Threshold { params, k, cap } => threshold(*params, *k, *cap),
        Command::Spectral { params, verify_tables } => spectral_cmd(*params, *verify_tables),
        Command::NullVector {
            params,
            n,
            pattern,
            box_bound,
            tail,
        } => null_vector(*params, *n, pattern, *box_bound, *tail),
        Command::Affable { params } => affable(*params),
        Command::Probe { params, n, cap } => probe(*params, *n, *cap),
        Command::Noncongenial { t } => noncongenial(*t),
        Command::VerifyAll { scan_hi } => verify_all(cli.threads, *scan_hi),
    }
}

fn basis(params: RecurrenceParams, k: Span) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    for k in k.lengths()? {
        let b = basis_triple(params, k);
        o.push(Record::new("basis").field("params", params).field("k", k).field("p", &b.p).field("q", &b.q).field("r", &b.r));
    }
    Ok(o)
}

fn lengths(params: RecurrenceParams, n: Span, with_count: bool) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let census = Census::new(params, n.hi)?;
    for n in n.lo..=n.hi {
        let rec = census.record(n)?;
        let mut r = Record::new(if with_count { "pn" } else { "tn" }).field("params", params).field("n", n).field("t", rec.t_of_n);
        if with_count {
            r = r.field("p", rec.p_of_n);
        }
        o.push(r);
    }
    Ok(o)
}

fn scan(params: RecurrenceParams, n: Span, each: bool, threads: usize) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let report = census::scan_max_p(params, n.lo, n.hi, threads)?;
    if each {
        for rec in &report.records {
            o.push(Record::new("pn").field("params", params).field("n", rec.n).field("t", rec.t_of_n).field("p", rec.p_of_n));
        }
    }
    for (value, freq) in &report.histogram {
        o.push(Record::new("histogram").field("p", value).field("frequency", freq));
    }
    let mut summary = Record::new("scan")
        .field("params", params)
        .field("n_lo", report.n_lo)
        .field("n_hi", report.n_hi)
        .field("max_p", report.max_p)
        .field("argmax", report.argmax)
        .field("infinite", report.infinite);
    if params.is_tribonacci() {
        let ok = report.max_p <= verify::BARBARA_BOUND && report.infinite == 0;
        summary = summary.field("bound", verify::BARBARA_BOUND).field("pass", ok);
        o.check(ok, summary);
    } else {
        o.push(summary);
    }
    Ok(o)
}

fn frobenius_cmd(triple: Option<Triple>, params: Option<RecurrenceParams>, k: Option<usize>) -> Result<Outcome, Failure> {
    let ([p, q, r], echo) = match (triple, params, k) {
        (Some(Triple(g)), _, _) => (g, format!("{},{},{}", g[0], g[1], g[2])),
        (None, Some(params), Some(k)) => {
            let b = basis_triple(params, k);
            let g = b.to_u64().ok_or_else(|| Failure::Usage(format!("basis {b} is not a triple of non-negative 64-bit integers")))?;
            (g, format!("{params} k={k}"))
        }
        _ => return Err(Failure::Usage("give --triple, or --params with --k".into())),
    };
    let mut o = Outcome::new(echo);
    let f = frobenius::apery_frobenius(p, q, r)?;
    let rel_p = frobenius::find_relation(p, q, r, Isolated::P)?;
    let rel_q = frobenius::find_relation(p, q, r, Isolated::Q)?;
    let bound = frobenius::killingbergtro_bound(p, q, r, &rel_p, &rel_q)?;
    let positive = f + i128::from(p + q + r);
    o.check(
        bound as i128 > positive,
        Record::new("frobenius")
            .field("generators", format!("{p},{q},{r}"))
            .field("frobenius", f)
            .field("positive_frobenius", positive)
            .field("relation_p", rel_p)
            .field("relation_q", rel_q)
            .field("relation_bound", bound),
    );
    Ok(o)
}

fn threshold(params: RecurrenceParams, k: Span, cap: usize) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let ks = k.lengths()?;
    if !params.is_tribonacci() {
        let report = congeniality::foreman_check(params, *ks.start(), *ks.end())?;
        for row in &report.rows {
            o.push(
                Record::new("threshold")
                    .field("params", params)
                    .field("k", row.k)
                    .field("basis", &row.basis)
                    .field("exact", row.threshold.map_or("none".to_string(), |t| t.to_string()))
                    .field("scaled", row.u_k.map_or("none".to_string(), |u| format!("{u:.6}"))),
            );
        }
        o.push(Record::new("threshold_summary").field("params", params).field("sup_scaled", format!("{:.6}", report.sup_u)));
        return Ok(o);
    }
    let phi = exact::tribonacci().ball();
    for k in ks {
        let rep = frobenius::ian_threshold_check(k, cap)?;
        let bound: Ball = phi.sqrt().powi(3 * k as u32) * 0.2;
        o.check(
            rep.pass,
            Record::new("threshold")
                .field("params", params)
                .field("k", k)
                .field("basis", &rep.basis)
                .field("exact", rep.exact_threshold)
                .real("bound", bound)
                .field("bound_floor", &rep.bound_floor)
                .field("pass", rep.pass)
                .field("relation_p", rep.rel_p)
                .field("relation_q", rep.rel_q)
                .field("relation_bound", rep.pipeline_bound)
                .field("relation_bound_below", rep.pipeline_below)
                .field("r_below_0.11phi^k", rep.basis_below),
        );
    }
    Ok(o)
}

fn spectral_cmd(params: RecurrenceParams, verify_tables: bool) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let s = spectral::cubic_roots(params)?;
    o.push(
        Record::new("spectral")
            .field("params", params)
            .real("eta1", s.eta1)
            .real("eta2_re", s.eta2.re)
            .real("eta2_im", s.eta2.im)
            .real("modulus", s.modulus)
            .real("delta", s.delta)
            .real("alpha_k", s.alpha_k)
            .real("alpha_l", s.alpha_l)
            .real("psi1_re", s.psi1.re)
            .real("psi1_im", s.psi1.im)
            .real("zeta1_re", s.zeta1.re)
            .real("zeta1_im", s.zeta1.im)
            .field("root_radius", format!("{:.3e}", s.root_radius())),
    );
    if verify_tables {
        if !params.is_tribonacci() {
            return Err(Failure::Usage("--verify-tables applies to 1,1,1 only".into()));
        }
        for (table, rows) in [(1u8, spectral::TABLE_1.len()), (2u8, spectral::TABLE_2.len())] {
            for row in 1..=rows {
                let v = spectral::verify_table_row_with(&s, table, row)?;
                o.check(
                    v.claims_hold,
                    Record::new("table_row")
                        .field("table", table)
                        .field("row", row)
                        .field("k", v.printed.k)
                        .field("l", v.printed.l)
                        .field("t0", v.printed.t0)
                        .field("t1", v.printed.t1)
                        .real("alpha", v.alpha)
                        .real("beta", v.beta)
                        .real("gamma", v.gamma)
                        .real("x0", v.x0)
                        .real("x1", v.x1)
                        .real("x2", v.x2)
                        .field("max_deviation", format!("{:.3e}", v.max_deviation))
                        .field("pass", v.claims_hold),
                );
            }
        }
    }
    Ok(o)
}

fn null_vector(params: RecurrenceParams, n: usize, pattern: &str, box_bound: Option<i64>, tail: Option<i64>) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let pat: SignPattern = pattern.parse()?;
    let variant = Variant::from_str(pattern).ok();
    let (found, method) = match (variant, box_bound, tail) {
        (Some(v), None, None) if params.is_tribonacci() => (Some(frobenius::yates_null_vector(n, v)?), "construction"),
        (_, b, t) => {
            let mut found = None;
            let mut method = "none";
            if let Some(t) = t {
                found = frobenius::null_vector_by_tail(params, n, pat, t)?;
                method = "tail";
            }
            if found.is_none() {
                let b = b.unwrap_or(if t.is_none() { 50 } else { 0 });
                if b > 0 {
                    found = frobenius::null_vector_search(params, n, pat, b)?;
                    method = "box";
                }
            }
            (found, method)
        }
    };
    let base = Record::new("null_vector").field("params", params).field("n", n).field("pattern", pat);
    match found {
        Some(s) => {
            let [a1, a2, a3]: [BigInt; 3] = s.seed();
            o.push(
                base.field("method", method)
                    .field("found", true)
                    .field("a1", a1)
                    .field("a2", a2)
                    .field("a3", a3)
                    .field("sequence", &s),
            );
        }
        None => o.check(false, base.field("method", method).field("found", false)),
    }
    Ok(o)
}

fn affable(params: RecurrenceParams) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let v = congeniality::is_affable(params);
    let mut r = Record::new("affable")
        .field("params", params)
        .field("discriminant", &v.discriminant)
        .field("affable", v.is_affable);
    if let Some(e) = v.eta1 {
        r = r.real("eta1", e);
    }
    if v.is_affable {
        let s = spectral::cubic_roots(params)?;
        r = r.real("delta", s.delta).real("determinant", congeniality::kamelion_determinant(&s));
        for (name, w) in [("window_a", congeniality::window_a(s.delta)), ("window_b", congeniality::window_b(s.delta))] {
            r = match w {
                Some(w) => r.field(&format!("{name}_t"), format!("{:.6}", w.t)).field(&format!("{name}_margin"), format!("{:.3e}", w.epsilon)),
                None => r.field(&format!("{name}_t"), "none"),
            };
        }
    }
    o.push(r);
    Ok(o)
}

fn probe(params: RecurrenceParams, n: Span, cap: u128) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(params.to_string());
    let p = congeniality::congeniality_probe(params, n.lo, n.hi, cap)?;
    for rec in &p.records {
        let count = match rec.count {
            ProbeCount::Count(c) => c.to_string(),
            ProbeCount::Capped => format!(">{cap}"),
        };
        o.push(Record::new("probe").field("params", params).field("n", rec.n).field("t", rec.max_length).field("count", count));
    }
    let mut summary = Record::new("probe_summary").field("params", params).field("n_lo", p.n_lo).field("n_hi", p.n_hi);
    summary = match p.observed_max {
        Some((m, at)) => summary.field("max_count", m).field("argmax", at),
        None => summary.field("max_count", "none"),
    };
    o.push(summary);
    Ok(o)
}

fn noncongenial(t: Span) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(congeniality::noncongenial_params().to_string());
    if t.lo < 1 {
        return Err(Failure::Usage(format!("t starts at 1, got {}", t.lo)));
    }
    for t in t.lo..=t.hi {
        let fam = congeniality::noncongenial_family(t as usize)?;
        for (label, stats) in [("family", &fam.stats), ("control", &fam.control)] {
            for s in stats.iter() {
                o.push(
                    Record::new("terminal")
                        .field("t", t)
                        .field("set", label)
                        .field("params", s.params)
                        .field("length", s.length)
                        .field("max_count", s.max_count)
                        .field("argmax", s.argmax)
                        .field("scanned_up_to", s.scanned_up_to),
                );
            }
        }
        let inc = fam.strictly_increasing();
        o.check(inc, Record::new("family").field("t", t).field("strictly_increasing", inc));
    }
    Ok(o)
}

fn verify_all(threads: usize, scan_hi: i64) -> Result<Outcome, Failure> {
    let mut o = Outcome::new(TRIB.to_string());
    let cfg = SuiteConfig {
        threads,
        scan_hi,
        ..SuiteConfig::default()
    };
    for r in verify::run_all(&cfg) {
        eprintln!("{}", r.line());
        o.check(
            r.passed,
            Record::new("criterion")
                .field("id", r.id)
                .field("name", r.name)
                .field("pass", r.passed)
                .field("budget", format!("{}s", r.budget.as_secs()))
                .field("detail", r.detail.replace('\t', " ")),
        );
    }
    Ok(o)
}
