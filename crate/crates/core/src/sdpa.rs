//! Sparse SDPA files, the solver subprocess, and the integer bound report.
//!
//! The maximization `max q^n y(singleton)` is written as the minimization
//! `min c·x` with `c` the negated objective, subject to
//! `Σ F_i x_i - F_0 ⪰ 0`.

use std::cmp::Ordering;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::block::{Conditioning, SdpProblem};
use crate::error::{invalid, Error, Result};

/// An exact decimal `mantissa · 10^-scale`, kept normalized (no trailing
/// zeros in the mantissa when `scale > 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        let mut d = Decimal { mantissa, scale };
        let ten = BigInt::from(10);
        while d.scale > 0 && (&d.mantissa % &ten).is_zero() {
            d.mantissa /= &ten;
            d.scale -= 1;
        }
        if d.mantissa.is_zero() {
            d.scale = 0;
        }
        d
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Decimal::new(v.into(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn neg(&self) -> Self {
        Decimal { mantissa: -&self.mantissa, scale: self.scale }
    }

    pub fn abs(&self) -> Self {
        Decimal { mantissa: self.mantissa.abs(), scale: self.scale }
    }

    /// Divided by `10^s`.
    pub fn shifted(&self, s: u32) -> Self {
        Decimal::new(self.mantissa.clone(), self.scale + s)
    }

    pub fn to_f64(&self) -> f64 {
        format!("{self}").parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let digits = self.mantissa.abs().to_string();
        let s = self.scale as usize;
        let padded = if digits.len() <= s { format!("{}{}", "0".repeat(s + 1 - digits.len()), digits) } else { digits };
        let (int, frac) = padded.split_at(padded.len() - s);
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for Decimal {
    type Err = Error;

    /// Accepts `-12`, `3.25`, `.5`, `1e3`, `2.5E-4`; the value is kept exact.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let mut mantissa: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            mantissa = -mantissa;
        }
        let scale = frac.len() as i64 - exp;
        if scale < 0 {
            mantissa *= BigInt::from(10).pow((-scale) as u32);
            Ok(Decimal::new(mantissa, 0))
        } else {
            Ok(Decimal::new(mantissa, u32::try_from(scale).map_err(|_| bad())?))
        }
    }
}

/// One nonzero entry `matno blockno i j value` (1-based, `i ≤ j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpaEntry {
    pub matrix: usize,
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: Decimal,
}

impl SdpaEntry {
    fn key(&self) -> (usize, usize, usize, usize) {
        (self.matrix, self.block, self.row, self.col)
    }
}

/// A parsed or generated sparse SDPA problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpaFile {
    pub comment: Option<String>,
    /// Negative sizes are diagonal blocks.
    pub block_sizes: Vec<i64>,
    pub objective: Vec<Decimal>,
    pub entries: Vec<SdpaEntry>,
}

/// Power-of-two rescaling applied by the writer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// Blocks as assembled.
    None,
    /// Reference density from the Hamming ball volume.
    Auto,
    /// Reference density `2^k`.
    Density(i32),
}

#[derive(Clone, Debug)]
pub struct WriteOptions {
    /// Blocks whose largest coefficient exceeds this are divided by a power
    /// of ten (written as exact decimals).
    pub magnitude_cap: BigInt,
    pub scaling: Scaling,
}

impl Default for WriteOptions {
    fn default() -> Self {
        WriteOptions { magnitude_cap: BigInt::one() << 53, scaling: Scaling::Auto }
    }
}

/// What the writer did to the assembled problem.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WriteSummary {
    /// Power of ten each block was divided by.
    pub decimal_shifts: Vec<u32>,
    pub conditioning: Conditioning,
}

/// `v · 2^e` as an exact decimal.
fn scaled(v: &BigInt, e: i32) -> Decimal {
    if e >= 0 {
        Decimal::new(v << e as u32, 0)
    } else {
        Decimal::new(v * BigInt::from(5).pow(e.unsigned_abs()), e.unsigned_abs())
    }
}

impl SdpaFile {
    pub fn from_problem(problem: &SdpProblem, options: &WriteOptions) -> (Self, WriteSummary) {
        let conditioning = match options.scaling {
            Scaling::None => Conditioning::identity(problem),
            Scaling::Auto => problem.conditioning(problem.default_density_log2()),
            Scaling::Density(k) => problem.conditioning(k),
        };
        let m = problem.num_variables();
        let mut objective = vec![Decimal::integer(0); m];
        for (v, c) in &problem.objective {
            objective[*v] = scaled(&-c, conditioning.variable_exponents[*v]);
        }
        let cap = Decimal::integer(options.magnitude_cap.clone());
        let mut entries = Vec::new();
        let mut shifts = Vec::with_capacity(problem.blocks.len());
        for (b, block) in problem.blocks.iter().enumerate() {
            let rows = &conditioning.row_exponents[b];
            let mut written = Vec::new();
            for r in 0..block.size() {
                for c in r..block.size() {
                    let f = block.entry(r, c);
                    let e = rows[r] + rows[c];
                    if !f.constant.is_zero() {
                        written.push((0, r, c, scaled(&-&f.constant, e)));
                    }
                    for (o, k) in &f.terms {
                        let v = problem.variable_of_orbit(*o).expect("block orbits are variables");
                        written.push((v + 1, r, c, scaled(k, e + conditioning.variable_exponents[v])));
                    }
                }
            }
            let max = written.iter().map(|w| w.3.abs()).max_by(compare).unwrap_or_else(|| Decimal::integer(0));
            let mut shift = 0u32;
            while compare(&max.shifted(shift), &cap) == Ordering::Greater {
                shift += 1;
            }
            shifts.push(shift);
            entries.extend(written.into_iter().map(|(matrix, r, c, value)| SdpaEntry {
                matrix,
                block: b + 1,
                row: r + 1,
                col: c + 1,
                value: value.shifted(shift),
            }));
        }
        let nonneg = problem.blocks.len() + 1;
        for v in 0..m {
            entries.push(SdpaEntry { matrix: v + 1, block: nonneg, row: v + 1, col: v + 1, value: Decimal::integer(1) });
        }
        entries.sort_by_key(|e| e.key());
        let mut block_sizes: Vec<i64> = problem.blocks.iter().map(|b| b.size() as i64).collect();
        block_sizes.push(-(m as i64));
        let comment = Some(format!("quadbound {} q={} n={} d={}", problem.origin, problem.q, problem.n, problem.d));
        (SdpaFile { comment, block_sizes, objective, entries }, WriteSummary { decimal_shifts: shifts, conditioning })
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn write(&self, sink: &mut impl Write) -> Result<()> {
        if let Some(c) = &self.comment {
            writeln!(sink, "* {c}")?;
        }
        writeln!(sink, "{}", self.num_variables())?;
        writeln!(sink, "{}", self.block_sizes.len())?;
        let sizes: Vec<String> = self.block_sizes.iter().map(|s| s.to_string()).collect();
        writeln!(sink, "{}", sizes.join(" "))?;
        let obj: Vec<String> = self.objective.iter().map(|c| c.to_string()).collect();
        writeln!(sink, "{}", obj.join(" "))?;
        for e in &self.entries {
            writeln!(sink, "{} {} {} {} {}", e.matrix, e.block, e.row, e.col, e.value)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses the sparse format. Comment lines start with `*` or `"`;
    /// separators `, ( ) { }` are treated as blanks. Entries are stored in
    /// canonical order with `i ≤ j`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut comment = None;
        let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
            let t = l.trim();
            if t.starts_with('*') || t.starts_with('"') {
                if comment.is_none() && i == 0 {
                    comment = Some(t.trim_start_matches(['*', '"']).trim().to_string());
                }
                None
            } else if t.is_empty() {
                None
            } else {
                Some((i + 1, t.replace([',', '(', ')', '{', '}'], " ")))
            }
        });
        let err = |line: usize, message: String| Error::SdpaParse { line, message };
        let mut header = |what: &str| -> Result<(usize, String)> {
            lines.next().ok_or_else(|| err(0, format!("missing {what}")))
        };
        let (l1, s1) = header("variable count")?;
        let m: usize = first_token(&s1).parse().map_err(|_| err(l1, format!("bad variable count {s1:?}")))?;
        let (l2, s2) = header("block count")?;
        let nb: usize = first_token(&s2).parse().map_err(|_| err(l2, format!("bad block count {s2:?}")))?;
        let (l3, s3) = header("block sizes")?;
        let block_sizes: Vec<i64> = s3
            .split_whitespace()
            .take(nb)
            .map(|t| t.parse::<i64>().map_err(|_| err(l3, format!("bad block size {t:?}"))))
            .collect::<Result<_>>()?;
        if block_sizes.len() != nb || block_sizes.contains(&0) {
            return Err(err(l3, format!("expected {nb} nonzero block sizes")));
        }
        let (l4, s4) = header("objective vector")?;
        let objective: Vec<Decimal> = s4
            .split_whitespace()
            .take(m)
            .map(|t| t.parse::<Decimal>().map_err(|_| err(l4, format!("bad objective value {t:?}"))))
            .collect::<Result<_>>()?;
        if objective.len() != m {
            return Err(err(l4, format!("expected {m} objective values")));
        }
        let mut entries: Vec<SdpaEntry> = Vec::new();
        for (ln, s) in lines {
            let t: Vec<&str> = s.split_whitespace().collect();
            if t.len() != 5 {
                return Err(err(ln, format!("expected 5 fields, found {}", t.len())));
            }
            let idx = |k: usize| t[k].parse::<usize>().map_err(|_| err(ln, format!("bad index {:?}", t[k])));
            let (matrix, block, i, j) = (idx(0)?, idx(1)?, idx(2)?, idx(3)?);
            let value: Decimal = t[4].parse().map_err(|_| err(ln, format!("bad value {:?}", t[4])))?;
            if matrix > m || block == 0 || block > nb {
                return Err(err(ln, "matrix or block number out of range".into()));
            }
            let size = block_sizes[block - 1].unsigned_abs() as usize;
            if i == 0 || j == 0 || i > size || j > size || (block_sizes[block - 1] < 0 && i != j) {
                return Err(err(ln, format!("position ({i},{j}) outside block {block}")));
            }
            if !value.is_zero() {
                entries.push(SdpaEntry { matrix, block, row: i.min(j), col: i.max(j), value });
            }
        }
        entries.sort_by_key(|e| e.key());
        if entries.windows(2).any(|w| w[0].key() == w[1].key()) {
            return Err(err(0, "duplicate entry".into()));
        }
        Ok(SdpaFile { comment, block_sizes, objective, entries })
    }
}

fn first_token(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or("")
}

/// Writes `problem` in sparse SDPA format; deterministic byte for byte.
pub fn write_sdpa(problem: &SdpProblem, sink: &mut impl Write, options: &WriteOptions) -> Result<WriteSummary> {
    let (file, summary) = SdpaFile::from_problem(problem, options);
    file.write(sink)?;
    Ok(summary)
}

pub fn read_sdpa(path: &Path) -> Result<SdpaFile> {
    SdpaFile::parse(&std::fs::read_to_string(path)?)
}

/// Environment variable consulted for the default solver.
pub const SOLVER_ENV: &str = "QUADBOUND_SOLVER";

#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    pub executable: PathBuf,
    pub args: Vec<String>,
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
    pub tolerance: f64,
    /// Treat exit status 3 (partial success, reduced accuracy) as a
    /// completed run; the gap check still decides whether it is trusted.
    pub accept_partial: bool,
}

impl SolverConfig {
    pub fn new(executable: impl Into<PathBuf>) -> Self {
        SolverConfig { executable: executable.into(), args: Vec::new(), time_limit: None, tolerance: 1e-4, accept_partial: true }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(invalid(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.time_limit.is_some_and(|t| t.is_nan() || t <= 0.0) {
            return Err(invalid("time limit must be positive"));
        }
        Ok(())
    }
}

/// Captured output of one solver run.
#[derive(Clone, Debug, Serialize)]
pub struct SolverRun {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: Option<i32>,
    pub wall_time: f64,
    pub solution_path: PathBuf,
}

fn drain(mut pipe: impl Read + Send + 'static) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = pipe.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    })
}

/// Runs `executable [args] problem solution` with the configured time
/// limit. The solution file goes next to the problem with extension `.sol`.
pub fn run_solver(problem_path: &Path, config: &SolverConfig) -> Result<SolverRun> {
    config.validate()?;
    let solution_path = problem_path.with_extension("sol");
    let start = Instant::now();
    let mut child = Command::new(&config.executable)
        .args(&config.args)
        .arg(problem_path)
        .arg(&solution_path)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound | std::io::ErrorKind::PermissionDenied => {
                Error::SolverNotFound(config.executable.clone())
            }
            _ => Error::Io(e),
        })?;
    let out = drain(child.stdout.take().expect("piped stdout"));
    let err = drain(child.stderr.take().expect("piped stderr"));
    let limit = config.time_limit.map(Duration::from_secs_f64);
    let status = loop {
        if let Some(s) = child.try_wait()? {
            break Some(s);
        }
        if limit.is_some_and(|l| start.elapsed() >= l) {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        thread::sleep(Duration::from_millis(20));
    };
    let stdout = out.join().unwrap_or_default();
    let stderr = err.join().unwrap_or_default();
    let wall_time = start.elapsed().as_secs_f64();
    match status {
        None => Err(Error::SolverTimeout { seconds: config.time_limit.unwrap_or(0.0), stdout, stderr }),
        Some(s) if !(s.success() || config.accept_partial && s.code() == Some(3)) => {
            Err(Error::SolverFailed { code: s.code(), stdout, stderr })
        }
        Some(s) => Ok(SolverRun { stdout, stderr, exit_code: s.code(), wall_time, solution_path }),
    }
}

/// Objective values as printed by a CSDP-style solver.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverObjectives {
    /// `tr(F_0 X)`.
    pub primal: Option<f64>,
    /// `c·x`.
    pub dual: Option<f64>,
    pub status: String,
}

fn value_after(line: &str, key: &str) -> Option<f64> {
    let rest = line.trim().strip_prefix(key)?;
    rest.trim_start_matches([':', '=', ' ']).split_whitespace().next()?.parse().ok()
}

pub fn parse_solver_output(stdout: &str) -> Result<SolverObjectives> {
    let mut obj = SolverObjectives { primal: None, dual: None, status: String::new() };
    for line in stdout.lines() {
        if let Some(v) = value_after(line, "Primal objective value") {
            obj.primal = Some(v);
        } else if let Some(v) = value_after(line, "Dual objective value") {
            obj.dual = Some(v);
        } else if line.starts_with("Success") || line.starts_with("Partial Success") || line.starts_with("Failure") {
            obj.status = line.trim().to_string();
        }
    }
    if obj.primal.is_none() && obj.dual.is_none() {
        return Err(Error::SolverOutput { message: "no objective values found".into(), raw: stdout.to_string() });
    }
    Ok(obj)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProblemStats {
    pub variables: usize,
    pub blocks: usize,
    pub max_block_size: usize,
}

/// Integer upper bound on `A_q(n,d)` derived from a solver run.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub q: usize,
    pub n: usize,
    pub d: usize,
    /// The upper-bounding objective `-tr(F_0 X)` when available.
    pub objective: f64,
    /// The objective at the solver's `y`, `-c·x`.
    pub feasible_objective: Option<f64>,
    pub gap: Option<f64>,
    pub tolerance: f64,
    /// `floor(objective + tolerance)`.
    pub bound: i64,
    pub trusted: bool,
    pub status: String,
    pub wall_time: f64,
    pub stats: ProblemStats,
    pub statement: String,
}

/// Builds the bound from parsed objectives. Uses the upper-bounding value
/// if present, otherwise the feasible value plus the unknown gap flagged
/// as untrusted.
pub fn bound_from_objectives(obj: &SolverObjectives, problem: &SdpProblem, tolerance: f64, wall_time: f64) -> Result<BoundReport> {
    let upper = obj.primal.map(|p| -p);
    let feasible = obj.dual.map(|v| -v);
    let objective = upper.or(feasible).ok_or_else(|| Error::SolverOutput { message: "no objective".into(), raw: String::new() })?;
    if !objective.is_finite() {
        return Err(Error::SolverOutput { message: format!("objective {objective} is not finite"), raw: String::new() });
    }
    let gap = upper.zip(feasible).map(|(u, f)| (u - f).abs());
    let trusted = gap.is_some_and(|g| g <= tolerance) && !obj.status.starts_with("Failure");
    let bound = (objective + tolerance).floor() as i64;
    Ok(BoundReport {
        q: problem.q,
        n: problem.n,
        d: problem.d,
        objective,
        feasible_objective: feasible,
        gap,
        tolerance,
        bound,
        trusted,
        status: obj.status.clone(),
        wall_time,
        stats: ProblemStats {
            variables: problem.num_variables(),
            blocks: problem.blocks.len(),
            max_block_size: problem.max_block_size(),
        },
        statement: format!(
            "A_{}({},{}) <= {} (semidefinite upper bound from numerical solver output, floor(objective + {tolerance}); not a claim of exactness)",
            problem.q, problem.n, problem.d, bound
        ),
    })
}

pub fn bound_report(run: &SolverRun, problem: &SdpProblem, config: &SolverConfig) -> Result<BoundReport> {
    let obj = parse_solver_output(&run.stdout).map_err(|e| match e {
        Error::SolverOutput { message, .. } => Error::SolverOutput { message, raw: format!("{}\n{}", run.stdout, run.stderr) },
        other => other,
    })?;
    bound_from_objectives(&obj, problem, config.tolerance, run.wall_time)
}

/// Orders decimals numerically.
pub fn compare(a: &Decimal, b: &Decimal) -> Ordering {
    let s = a.scale.max(b.scale);
    let ten = BigInt::from(10);
    let x = &a.mantissa * ten.pow(s - a.scale);
    let y = &b.mantissa * ten.pow(s - b.scale);
    x.cmp(&y)
}

/// `|v|` as `f64` for magnitude checks.
pub fn magnitude(v: &Decimal) -> f64 {
    v.to_f64().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::assemble_problem;

    #[test]
    fn decimal_parse_and_display() {
        let cases = [
            ("12", "12"),
            ("-3.2500", "-3.25"),
            (".5", "0.5"),
            ("1e3", "1000"),
            ("2.5E-4", "0.00025"),
            ("-0.0", "0"),
            ("+7.", "7"),
            ("1.234e2", "123.4"),
        ];
        for (input, shown) in cases {
            assert_eq!(input.parse::<Decimal>().unwrap().to_string(), shown, "{input}");
        }
        for bad in ["", "1.2.3", "abc", "1e", "--1", "."] {
            assert!(bad.parse::<Decimal>().is_err(), "{bad}");
        }
        assert_eq!(Decimal::new(BigInt::from(-5), 3).to_string(), "-0.005");
        assert_eq!(compare(&"0.1".parse().unwrap(), &"1e-1".parse().unwrap()), Ordering::Equal);
    }

    #[test]
    fn hand_checkable_file() {
        let text = "1\n2\n1 -1\n-1\n0 1 1 1 -1\n1 1 1 1 1\n1 2 1 1 1\n";
        let f = SdpaFile::parse(text).unwrap();
        assert_eq!(f.block_sizes, vec![1, -1]);
        assert_eq!(f.entries.len(), 3);
        assert_eq!(SdpaFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match SdpaFile::parse("1\n1\n2\n1\n1 1 3 1 1\n") {
            Err(Error::SdpaParse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(SdpaFile::parse("1\n1\n-2\n1\n1 1 1 2 1\n").is_err());
        assert!(SdpaFile::parse("1\n").is_err());
    }

    #[test]
    fn problem_roundtrip_and_determinism() {
        let p = assemble_problem(2, 4, 3).unwrap();
        let (file, _) = SdpaFile::from_problem(&p, &WriteOptions::default());
        let text = file.to_text();
        let back = SdpaFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_text(), text);
        let mut again = Vec::new();
        write_sdpa(&assemble_problem(2, 4, 3).unwrap(), &mut again, &WriteOptions::default()).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), text);
        assert!(text.lines().filter(|l| !l.starts_with('*')).skip(4).all(|l| {
            let t: Vec<usize> = l.split_whitespace().take(4).map(|x| x.parse().unwrap()).collect();
            t[2] <= t[3]
        }));
    }

    #[test]
    fn magnitude_cap_triggers_decimal_shift() {
        let p = assemble_problem(2, 4, 3).unwrap();
        let (plain, s0) = SdpaFile::from_problem(&p, &WriteOptions::default());
        assert!(s0.decimal_shifts.iter().all(|&s| s == 0));
        let (small, s1) = SdpaFile::from_problem(&p, &WriteOptions { magnitude_cap: BigInt::from(1), ..Default::default() });
        assert!(s1.decimal_shifts.iter().any(|&s| s > 0));
        let cap_ok = small.entries.iter().filter(|e| e.block <= p.blocks.len()).all(|e| magnitude(&e.value) <= 1.0);
        assert!(cap_ok);
        assert_eq!(plain.entries.len(), small.entries.len());
    }

    #[test]
    fn scaling_is_a_congruence() {
        let p = assemble_problem(3, 3, 3).unwrap();
        let opts = WriteOptions { scaling: Scaling::Density(-3), ..Default::default() };
        let (file, summary) = SdpaFile::from_problem(&p, &opts);
        let cond = &summary.conditioning;
        assert!(!cond.is_identity());
        let (plain, _) = SdpaFile::from_problem(&p, &WriteOptions { scaling: Scaling::None, ..Default::default() });
        assert!(plain.entries.iter().all(|e| e.value.scale == 0));
        assert_eq!(file.entries.len(), plain.entries.len());
        for (e, f) in file.entries.iter().zip(&plain.entries) {
            assert_eq!((e.matrix, e.block, e.row, e.col), (f.matrix, f.block, f.row, f.col));
            if e.block > p.blocks.len() {
                assert_eq!(e.value, f.value);
                continue;
            }
            let rows = &cond.row_exponents[e.block - 1];
            let mut exp = rows[e.row - 1] + rows[e.col - 1];
            if e.matrix > 0 {
                exp += cond.variable_exponents[e.matrix - 1];
            }
            assert_eq!(e.value, scaled(&f.value.mantissa, exp), "{e:?}");
        }
        let singleton = p.objective[0].0;
        assert_eq!(file.objective[singleton], scaled(&BigInt::from(-27), cond.variable_exponents[singleton]));
    }

    #[test]
    fn output_parsing_and_bounds() {
        let p = assemble_problem(2, 4, 3).unwrap();
        let out = "Success: SDP solved\nPrimal objective value: -1.7600001300e+02\nDual objective value: -1.7599999e+02\n";
        let obj = parse_solver_output(out).unwrap();
        let r = bound_from_objectives(&obj, &p, 1e-4, 0.0).unwrap();
        assert_eq!(r.bound, 176);
        assert!(r.trusted);
        let obj = SolverObjectives { primal: Some(-2.0000001), dual: Some(-2.0), status: "Success".into() };
        assert_eq!(bound_from_objectives(&obj, &p, 1e-4, 0.0).unwrap().bound, 2);
        let obj = SolverObjectives { primal: Some(-176.5), dual: Some(-176.0), status: "Success".into() };
        assert!(!bound_from_objectives(&obj, &p, 1e-4, 0.0).unwrap().trusted);
        match parse_solver_output("garbage") {
            Err(Error::SolverOutput { raw, .. }) => assert_eq!(raw, "garbage"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_solver_reported() {
        let cfg = SolverConfig::new("/nonexistent/solver-binary");
        match run_solver(Path::new("/tmp/none.dat-s"), &cfg) {
            Err(Error::SolverNotFound(p)) => assert_eq!(p, PathBuf::from("/nonexistent/solver-binary")),
            other => panic!("{other:?}"),
        }
        let mut bad = SolverConfig::new("x");
        bad.tolerance = 0.0;
        assert!(bad.validate().is_err());
    }
}
