//! Command-line front end over the invariant library.
//!
//! Every subcommand builds its whole report as one string from the run
//! configuration alone and prints it once, so repeated runs with the
//! same configuration are byte-identical.
//!
//! Exit codes:
//! - 0 — success; all internal cross-checks agree;
//! - 1 — a computed inconsistency (oracle disagreement, failed
//!   certificate); the report is still printed;
//! - 2 — invalid input (bad flags, malformed configuration file,
//!   out-of-range parameters);
//! - 3 — a well-formed query rejected by a local check; the failing
//!   place is named on stderr.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use shimura::arith::prime_divisors;
use shimura::fixtures::{classification, example_lattice, surface_table};
use shimura::{
    arithmetic_genus, count_elliptic, covolume, elliptic_form_survey, elliptic_point_classes,
    euler_orbifold, f_n, first_local_obstruction, kappa, lambda_beta_discriminant,
    represents_globally, represents_locally_p, s_phi_detailed, zeta_k_minus1, BinaryForm,
    Rational, SurfaceClass, SurfaceParams,
};
use shimura_cli::config::{Format, RunConfig};

/// Exact invariants of a family of compact arithmetic quotient surfaces.
#[derive(Parser)]
#[command(name = "shimura", version, about)]
struct Cli {
    /// Field discriminant `D` (positive, fundamental, coprime to 6).
    #[arg(long = "D", global = true, allow_negative_numbers = true, value_name = "D")]
    d_field: Option<i64>,

    /// Reduced discriminant `dL` of the level (positive, `dL * B` coprime to `D`).
    #[arg(long = "dL", global = true, allow_negative_numbers = true, value_name = "DL")]
    d_lambda: Option<i64>,

    /// Norm parameter `B` of the twisting algebra (positive).
    #[arg(long = "B", global = true, allow_negative_numbers = true, value_name = "B")]
    norm_b: Option<i64>,

    /// Largest curve parameter `N` covered by tables and sweeps.
    #[arg(long = "max-N", global = true, value_name = "N")]
    max_n: Option<i64>,

    /// Coordinate bound for brute-force lattice sweeps.
    #[arg(long, global = true, value_name = "BOUND")]
    bound: Option<i64>,

    /// Output format.
    #[arg(long, global = true, value_enum, value_name = "FORMAT")]
    format: Option<Format>,

    /// Configuration file of `key = value` lines; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume, Euler numbers, and (at the bundled parameters) the
    /// smooth-model table.
    Invariants,
    /// Component counts of the embedded curves for `N = 1..=max-N`.
    FnTable,
    /// Weighted special-point count of the binary form `[A, B, C]`.
    Sphi {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Elliptic-point classes with weighted and actual counts.
    Elliptic {
        /// Also list candidate forms rejected by a local check.
        #[arg(long)]
        verbose: bool,
    },
    /// Brute-force lattice cross-check of the component-count formula.
    Oracle,
    /// Certified classification of the four bundled surfaces.
    Classify,
}

/// A failed run: the process exit code, a message for stderr, and any
/// partial report that should still reach stdout (e.g. the local-check
/// lines preceding a rejection).
struct Failure {
    code: u8,
    message: String,
    report: String,
}

impl Failure {
    fn with_report(mut self, report: String) -> Failure {
        self.report = report;
        self
    }
}

/// Exit 2: the request itself is malformed.
fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into(), report: String::new() }
}

/// Exit 1: the computation uncovered an inconsistency.
fn inconsistent(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into(), report: String::new() }
}

/// Exit 3: a well-formed query was rejected by a local check.
fn rejected(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into(), report: String::new() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => emit(&report),
        Err(failure) => {
            if !failure.report.is_empty() {
                // Best effort: the exit code already carries the outcome.
                let _ = write_stdout(&failure.report);
            }
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Prints the report, treating a closed pipe (e.g. `| head`) as success.
fn emit(report: &str) -> ExitCode {
    match write_stdout(report) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            ExitCode::from(1)
        }
    }
}

fn write_stdout(report: &str) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(report.as_bytes())?;
    stdout.flush()
}

fn run(cli: Cli) -> Result<String, Failure> {
    let config = resolve_config(&cli)?;
    match cli.command {
        Command::Invariants => cmd_invariants(&config),
        Command::FnTable => cmd_fn_table(&config),
        Command::Sphi { a, b, c } => cmd_sphi(&config, a, b, c),
        Command::Elliptic { verbose } => cmd_elliptic(&config, verbose),
        Command::Oracle => cmd_oracle(&config),
        Command::Classify => cmd_classify(&config),
    }
}

/// Defaults, overlaid by the `--config` file, overlaid by flags.
fn resolve_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        config
            .apply_file(&text)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    if let Some(v) = cli.d_field {
        config.d_field = v;
    }
    if let Some(v) = cli.d_lambda {
        config.d_lambda = v;
    }
    if let Some(v) = cli.norm_b {
        config.b = v;
    }
    if let Some(v) = cli.max_n {
        config.max_n = v;
    }
    if let Some(v) = cli.bound {
        config.bound = v;
    }
    if let Some(v) = cli.format {
        config.format = v;
    }
    if !(1..=100_000).contains(&config.max_n) {
        return Err(invalid(format!(
            "max-N must be between 1 and 100000, got {}",
            config.max_n
        )));
    }
    if !(1..=10_000).contains(&config.bound) {
        return Err(invalid(format!(
            "bound must be between 1 and 10000, got {}",
            config.bound
        )));
    }
    Ok(config)
}

fn params_from(config: &RunConfig) -> Result<SurfaceParams, Failure> {
    SurfaceParams::new(config.d_field, config.d_lambda, config.b)
        .map_err(|e| invalid(format!("invalid parameters: {e}")))
}

/// The bundled example the lattice fixture and surface table encode.
fn is_bundled_example(config: &RunConfig) -> bool {
    (config.d_field, config.d_lambda, config.b) == (13, 3, 2)
}

fn param_line(config: &RunConfig) -> String {
    format!(
        "parameters: D={} dL={} B={}",
        config.d_field, config.d_lambda, config.b
    )
}

/// `0`, `1 component`, or `k components` for a component count.
fn describe_count(count: Rational) -> String {
    if count == Rational::from(0) {
        "0".to_string()
    } else if count == Rational::from(1) {
        "1 component".to_string()
    } else {
        format!("{count} components")
    }
}

fn cmd_invariants(config: &RunConfig) -> Result<String, Failure> {
    let params = params_from(config)?;
    let zeta = zeta_k_minus1(config.d_field)
        .map_err(|e| inconsistent(format!("zeta value: {e}")))?;
    let volume = covolume(&params).map_err(|e| inconsistent(format!("covolume: {e}")))?;
    let e2 = count_elliptic(&params, 2)
        .map_err(|e| inconsistent(format!("order-2 count: {e}")))?;
    let e3 = count_elliptic(&params, 3)
        .map_err(|e| inconsistent(format!("order-3 count: {e}")))?;
    let e = euler_orbifold(volume, &[(2, e2), (3, e3)]);
    let chi = arithmetic_genus(e);
    let mut out = String::new();
    match config.format {
        Format::Text => {
            out.push_str(&param_line(config));
            out.push('\n');
            out.push_str(&format!("zeta={zeta} vol={volume} e={e} chi={chi}\n"));
            out.push_str(&format!("elliptic points: e_2={e2} e_3={e3}\n"));
            if is_bundled_example(config) {
                let table =
                    surface_table().map_err(|e| inconsistent(format!("surface table: {e}")))?;
                out.push_str("surface table:\n");
                out.push_str(&format!(
                    "{:<8}{:>6}{:>6}{:>6}{:>6}{:>6}\n",
                    "surface", "e", "chi", "K2", "q", "pg"
                ));
                for (label, inv) in &table {
                    out.push_str(&format!(
                        "{:<8}{:>6}{:>6}{:>6}{:>6}{:>6}\n",
                        label,
                        inv.e(),
                        inv.chi(),
                        inv.k2(),
                        inv.q(),
                        inv.pg()
                    ));
                }
            }
        }
        Format::Csv => {
            out.push_str("key,value\n");
            out.push_str(&format!("D,{}\n", config.d_field));
            out.push_str(&format!("dL,{}\n", config.d_lambda));
            out.push_str(&format!("B,{}\n", config.b));
            out.push_str(&format!("zeta,{zeta}\n"));
            out.push_str(&format!("vol,{volume}\n"));
            out.push_str(&format!("e,{e}\n"));
            out.push_str(&format!("chi,{chi}\n"));
            out.push_str(&format!("e2,{e2}\n"));
            out.push_str(&format!("e3,{e3}\n"));
            if is_bundled_example(config) {
                let table =
                    surface_table().map_err(|e| inconsistent(format!("surface table: {e}")))?;
                out.push('\n');
                out.push_str("surface,e,chi,K2,q,pg\n");
                for (label, inv) in &table {
                    out.push_str(&format!(
                        "{label},{},{},{},{},{}\n",
                        inv.e(),
                        inv.chi(),
                        inv.k2(),
                        inv.q(),
                        inv.pg()
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn cmd_fn_table(config: &RunConfig) -> Result<String, Failure> {
    let params = params_from(config)?;
    let mut out = String::new();
    match config.format {
        Format::Text => {
            out.push_str(&param_line(config));
            out.push_str(&format!(" max-N={}\n", config.max_n));
            out.push_str(&format!("{:>6} {:>5} {:>5} {:>6}\n", "N", "kappa", "f_N", "disc"));
        }
        Format::Csv => out.push_str("N,kappa,f_N,disc\n"),
    }
    for n in 1..=config.max_n {
        let k = kappa(n, &params).map_err(|e| inconsistent(format!("kappa({n}): {e}")))?;
        let f = f_n(n, &params).map_err(|e| inconsistent(format!("f({n}): {e}")))?;
        let disc = lambda_beta_discriminant(n, &params)
            .map_err(|e| inconsistent(format!("disc({n}): {e}")))?;
        match config.format {
            Format::Text => {
                // Pad the rendered value: fraction displays ignore the
                // formatter's width flag.
                out.push_str(&format!("{n:>6} {k:>5} {:>5} {disc:>6}\n", f.to_string()));
            }
            Format::Csv => out.push_str(&format!("{n},{k},{f},{disc}\n")),
        }
    }
    Ok(out)
}

fn cmd_sphi(config: &RunConfig, a: i64, b: i64, c: i64) -> Result<String, Failure> {
    let params = params_from(config)?;
    let phi =
        BinaryForm::new(a, b, c).map_err(|e| invalid(format!("invalid form: {e}")))?;
    if !phi.is_positive_definite() {
        return Err(invalid(format!("form {phi} is not positive definite")));
    }
    let d = phi.discriminant();
    let m = phi.content();
    let mut places: BTreeSet<i64> = BTreeSet::new();
    places.insert(2);
    for value in [params.d_field(), params.d_lambda(), d.abs(), m] {
        let primes =
            prime_divisors(value).map_err(|e| inconsistent(format!("factorization: {e}")))?;
        places.extend(primes);
    }
    let mut out = String::new();
    if config.format == Format::Text {
        out.push_str(&param_line(config));
        out.push('\n');
        out.push_str(&format!("form {phi}: d={d} m={m}\n"));
        out.push_str("local checks:\n");
    }
    let mut anywhere_rejected = false;
    for &p in &places {
        let ok = represents_locally_p(&phi, p, &params)
            .map_err(|e| inconsistent(format!("local check at {p}: {e}")))?;
        anywhere_rejected |= !ok;
        if config.format == Format::Text {
            let verdict = if ok { "represented" } else { "not represented" };
            out.push_str(&format!("  p={p}: {verdict}\n"));
        }
    }
    if anywhere_rejected {
        let failure = first_local_obstruction(&phi, &params)
            .map_err(|e| inconsistent(format!("obstruction scan: {e}")))?
            .ok_or_else(|| inconsistent("local scan found no obstruction on re-run"))?;
        return Err(rejected(failure.to_string()).with_report(out));
    }
    let breakdown =
        s_phi_detailed(&phi, &params).map_err(|e| inconsistent(format!("breakdown: {e}")))?;
    match config.format {
        Format::Text => {
            out.push_str(&format!(
                "content split: m1={} m2={} m3={}\n",
                breakdown.m1, breakdown.m2, breakdown.m3
            ));
            out.push_str(&format!(
                "factors: power={} h'({})={} ramified={} level={}\n",
                breakdown.power_factor,
                breakdown.class_argument,
                breakdown.class_term,
                breakdown.ramified_factor,
                breakdown.level_factor
            ));
            out.push_str(&format!("s(phi) = {}\n", breakdown.value));
        }
        Format::Csv => {
            out.push_str("a,b,c,d,m,m1,m2,m3,power,class_argument,class_term,ramified,level,s\n");
            out.push_str(&format!(
                "{a},{b},{c},{d},{m},{},{},{},{},{},{},{},{},{}\n",
                breakdown.m1,
                breakdown.m2,
                breakdown.m3,
                breakdown.power_factor,
                breakdown.class_argument,
                breakdown.class_term,
                breakdown.ramified_factor,
                breakdown.level_factor,
                breakdown.value
            ));
        }
    }
    Ok(out)
}

fn cmd_elliptic(config: &RunConfig, verbose: bool) -> Result<String, Failure> {
    let params = params_from(config)?;
    let mut out = String::new();
    if config.format == Format::Text {
        out.push_str(&param_line(config));
        out.push('\n');
    } else {
        out.push_str("order,a,b,c,s,w,points\n");
    }
    let mut totals = Vec::new();
    for n in [2i64, 3] {
        let classes = elliptic_point_classes(&params, n)
            .map_err(|e| inconsistent(format!("order-{n} classes: {e}")))?;
        let total = count_elliptic(&params, n)
            .map_err(|e| inconsistent(format!("order-{n} count: {e}")))?;
        totals.push(total);
        match config.format {
            Format::Text => {
                out.push_str(&format!("order {n} classes:\n"));
                for cls in &classes {
                    out.push_str(&format!(
                        "  {} s={} w={} points={}\n",
                        cls.form, cls.s, cls.automorphisms, cls.count
                    ));
                }
            }
            Format::Csv => {
                for cls in &classes {
                    out.push_str(&format!(
                        "{n},{},{},{},{},{},{}\n",
                        cls.form.a(),
                        cls.form.b(),
                        cls.form.c(),
                        cls.s,
                        cls.automorphisms,
                        cls.count
                    ));
                }
            }
        }
    }
    if verbose {
        if config.format == Format::Csv {
            out.push('\n');
            out.push_str("rejected_order,a,b,c,reason\n");
        }
        for n in [2i64, 3] {
            let survey = elliptic_form_survey(&params, n)
                .map_err(|e| inconsistent(format!("order-{n} survey: {e}")))?;
            match config.format {
                Format::Text => {
                    out.push_str(&format!("order {n} rejected:\n"));
                    if survey.rejected.is_empty() {
                        out.push_str("  (none)\n");
                    }
                    for (form, why) in &survey.rejected {
                        out.push_str(&format!("  {form}: {why}\n"));
                    }
                }
                Format::Csv => {
                    for (form, why) in &survey.rejected {
                        out.push_str(&format!(
                            "{n},{},{},{},\"{why}\"\n",
                            form.a(),
                            form.b(),
                            form.c()
                        ));
                    }
                }
            }
        }
    }
    if config.format == Format::Text {
        out.push_str(&format!("totals: e_2={} e_3={}\n", totals[0], totals[1]));
    }
    Ok(out)
}

fn cmd_oracle(config: &RunConfig) -> Result<String, Failure> {
    let params = params_from(config)?;
    let lattice = example_lattice();
    let flags = lattice
        .representable_flags(config.max_n, config.bound)
        .map_err(|e| invalid(format!("lattice sweep: {e}")))?;
    // The rank-2 harvest grows much faster with the bound than the vector
    // sweep does (it scans pairs), so it is capped separately.
    let harvest_bound = config.bound.min(6);
    let forms = lattice
        .binary_sublattice_forms(harvest_bound)
        .map_err(|e| invalid(format!("sublattice harvest: {e}")))?;
    let mut out = String::new();
    let mut norm_agreements = 0i64;
    let mut form_agreements = 0usize;
    if config.format == Format::Text {
        out.push_str(&param_line(config));
        out.push_str(&format!(" max-N={} bound={}\n", config.max_n, config.bound));
        out.push_str(&format!(
            "lattice sweep bound: {}\nsublattice harvest bound: {harvest_bound}\n",
            config.bound
        ));
    } else {
        out.push_str("N,formula,oracle,agree\n");
    }
    for n in 1..=config.max_n {
        let f = f_n(n, &params).map_err(|e| inconsistent(format!("f({n}): {e}")))?;
        let formula_positive = f != Rational::from(0);
        let attained = flags[n as usize];
        let agree = formula_positive == attained;
        if agree {
            norm_agreements += 1;
        }
        match config.format {
            Format::Text => {
                let witness = if attained { "nonempty" } else { "empty" };
                let verdict = if agree { "agree" } else { "DISAGREE" };
                out.push_str(&format!(
                    "N={n}: formula: {}, oracle: {witness} — {verdict}\n",
                    describe_count(f)
                ));
            }
            Format::Csv => {
                let witness = if attained { "nonempty" } else { "empty" };
                out.push_str(&format!("{n},{f},{witness},{agree}\n"));
            }
        }
    }
    if config.format == Format::Text {
        out.push_str(&format!("sublattice forms ({}):\n", forms.len()));
    } else {
        out.push('\n');
        out.push_str("form_a,form_b,form_c,represented\n");
    }
    // The text report lists only the first few agreeing forms (the harvest
    // can run to thousands); disagreements are always listed. CSV output
    // stays complete.
    const TEXT_FORM_LINES: usize = 20;
    let mut shown = 0usize;
    for entry in &forms {
        let ok = represents_globally(&entry.form, &params)
            .map_err(|e| inconsistent(format!("global check for {}: {e}", entry.form)))?;
        if ok {
            form_agreements += 1;
        }
        match config.format {
            Format::Text => {
                if ok && shown < TEXT_FORM_LINES {
                    out.push_str(&format!("  {}: globally represented — agree\n", entry.form));
                    shown += 1;
                } else if !ok {
                    out.push_str(&format!(
                        "  {}: not globally represented — DISAGREE\n",
                        entry.form
                    ));
                }
            }
            Format::Csv => {
                out.push_str(&format!(
                    "{},{},{},{ok}\n",
                    entry.form.a(),
                    entry.form.b(),
                    entry.form.c()
                ));
            }
        }
    }
    if config.format == Format::Text {
        let suppressed = form_agreements.saturating_sub(shown);
        if suppressed > 0 {
            out.push_str(&format!("  ... {suppressed} more forms agree\n"));
        }
    }
    if config.format == Format::Text {
        out.push_str(&format!(
            "oracle agreement: {norm_agreements}/{} norms, {form_agreements}/{} sublattice forms\n",
            config.max_n,
            forms.len()
        ));
    }
    if norm_agreements != config.max_n || form_agreements != forms.len() {
        return Err(inconsistent(format!(
            "oracle disagreement: {}/{} norms, {}/{} sublattice forms agree",
            norm_agreements,
            config.max_n,
            form_agreements,
            forms.len()
        ))
        .with_report(out));
    }
    Ok(out)
}

fn cmd_classify(config: &RunConfig) -> Result<String, Failure> {
    let surfaces =
        classification().map_err(|e| inconsistent(format!("classification: {e}")))?;
    let mut out = String::new();
    if config.format == Format::Csv {
        out.push_str("surface,class,e,chi,K2,q,pg\n");
    }
    for fs in &surfaces {
        match config.format {
            Format::Text => {
                let note = match fs.class {
                    SurfaceClass::MinimalGeneralType => {
                        format!("K effective, K^2={}", fs.invariants.k2())
                    }
                    SurfaceClass::K3BlownUp(_) => {
                        "invariants double the Enriques quotient".to_string()
                    }
                    SurfaceClass::EnriquesBlownUp(n) => {
                        format!("2K=0 after blow-down, e={}", fs.invariants.e() - n)
                    }
                    SurfaceClass::Rational => "Castelnuovo contraction certificate".to_string(),
                };
                out.push_str(&format!("{}: {} ({note})\n", fs.label, fs.class));
            }
            Format::Csv => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    fs.label,
                    fs.class,
                    fs.invariants.e(),
                    fs.invariants.chi(),
                    fs.invariants.k2(),
                    fs.invariants.q(),
                    fs.invariants.pg()
                ));
            }
        }
    }
    Ok(out)
}
