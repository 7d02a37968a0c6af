use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use descent_forge::builtin::SHIPPED;
use descent_forge::descent::Mutation;
use descent_forge::instance::render_builtin;
use descent_forge::report::TableSummary;
use descent_forge::{
    fuzz, parse_instance, run_suite_with, Error, FuzzConfig, InstanceSpec, RunOptions, Status, Suite,
    VerificationReport,
};

const BUDGET_ENV: &str = "DESCENT_FORGE_BUDGET_MB";

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

/// Verify descent isomorphisms for finite-dimensional algebra extensions.
#[derive(Parser)]
#[command(name = "descent-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite on an instance and print every verdict.
    Check {
        #[command(flatten)]
        run: RunArgs,
        /// all, gamma, comatrix, prop31 or comonadicity.
        #[arg(long, default_value = "all")]
        which: Suite,
    },
    /// List the one-sided invertible subbimodules and the coring endomorphisms.
    Endos {
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the invertible subbimodules and the coring automorphisms.
    Invertibles {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the comatrix suite on an instance with a [comatrix] block.
    Comatrix {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generate random certified extensions and check every verdict on them.
    Fuzz {
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Bound on the dimensions of both algebras.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the fuzz report as JSON to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Corrupt one entry of Gamma to check that the harness notices.
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// Run every built-in instance and the mutation self-test.
    Selftest,
    /// Print the instance file of a built-in, e.g. `split2(3)`.
    Builtin {
        /// Omit to list the available names.
        name: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// An instance file, or the name of a built-in such as `mat2(2)`.
    file: String,
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record per-section wall-clock timings in the report.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[arg(long, hide = true)]
    mutate: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of subspaces to enumerate.
    #[arg(long)]
    subspace_budget: Option<u128>,
    /// Maximum number of endomorphism candidates to enumerate.
    #[arg(long)]
    endo_budget: Option<u128>,
}

enum Failure {
    Input(Vec<String>),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Instance(messages) => Failure::Input(messages),
            e if e.is_budget() => Failure::Guard(e.to_string()),
            e => Failure::Input(vec![e.to_string()]),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(messages)) => {
            for m in messages {
                eprintln!("error: {m}");
            }
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("resource guard: {m}");
            ExitCode::from(EXIT_GUARD)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check { run, which } => verify(&run, which, print_verdicts),
        Command::Endos { run } => verify(&run, Suite::Gamma, |r| {
            if let Some(m) = &r.monoids {
                print_table("I^l", &m.left_invertible);
                print_table("I^r", &m.right_invertible);
                print_table("End", &m.end);
            }
            print_selected(r, &["gamma_monoid_iso", "gamma_prime_anti_iso"]);
        }),
        Command::Invertibles { run } => verify(&run, Suite::Gamma, |r| {
            if let Some(m) = &r.monoids {
                print_table("Inv", &m.inv);
                print_table("Aut", &m.aut);
                println!("Inv = I^l n I^r: {}", m.inv_equals_left_right_intersection);
            }
            print_selected(r, &["gamma_group_iso"]);
        }),
        Command::Comatrix { run } => verify(&run, Suite::Comatrix, |r| {
            match &r.gamma0 {
                Some(s) => {
                    println!("dim M = {}, dim Sigma = {}", s.module_dim, s.sigma_dim);
                    println!("xi bijective: {}", s.xi_bijective);
                    print_table("End(Sigma)", &s.sigma_end);
                    print_table("Aut(Sigma)", &s.sigma_aut);
                }
                None => println!("no [comatrix] block"),
            }
            print_selected(
                r,
                &[
                    "hat_injective_multiplicative",
                    "triangle_commutes",
                    "gamma0_monoid_iso",
                    "gamma0_prime_anti_iso",
                    "gamma0_group_iso",
                    "gamma0_group_iso_module_conditions",
                ],
            );
        }),
        Command::Fuzz {
            p,
            max_dim,
            count,
            seed,
            json,
            budgets,
            mutate,
        } => {
            let mut config = FuzzConfig::new(p, max_dim, count, seed);
            budgets.apply(&mut config.budgets);
            config.mutation = mutate.then_some(Mutation::FlipGammaEntry);
            let report = fuzz(&config)?;
            if let Some(path) = &json {
                write_json(path, &serde_json::to_string_pretty(&report).expect("fuzz reports serialize"))?;
            }
            if !is_stdout(json.as_deref()) {
                println!(
                    "p = {p}, seed = {seed}: {} certified instances from {} draws ({} uncertified)",
                    report.cases.len(),
                    report.draws,
                    report.uncertified
                );
                for case in report.failing_cases() {
                    println!("case {} (dim B = {}, dim S = {}):", case.index, case.base_dim, case.top_dim);
                    for v in &case.violations {
                        println!("  {v}");
                    }
                }
                println!("{} violations", report.violations());
            }
            Ok(if report.violations() == 0 { 0 } else { EXIT_FAIL })
        }
        Command::Selftest => selftest(),
        Command::Builtin { name: None } => {
            for name in SHIPPED {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Builtin { name: Some(name) } => {
            print!("{}", render_builtin(&name)?);
            Ok(0)
        }
    }
}

impl BudgetArgs {
    fn apply(&self, budgets: &mut descent_forge::descent::Budgets) {
        if let Some(n) = self.subspace_budget {
            budgets.subspaces = n;
        }
        if let Some(n) = self.endo_budget {
            budgets.endos = n;
        }
    }
}

fn load(source: &str) -> Result<InstanceSpec, Failure> {
    let path = Path::new(source);
    if !path.exists() {
        if let Ok(spec) = InstanceSpec::builtin(source) {
            return Ok(spec);
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(vec![format!("{source}: {e}")]))?;
    parse_instance(&text).map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(m.into_iter().map(|m| format!("{source}: {m}")).collect()),
        other => other,
    })
}

fn memory_guard(spec: &InstanceSpec) -> Result<(), Failure> {
    let Ok(raw) = std::env::var(BUDGET_ENV) else {
        return Ok(());
    };
    let mb: u128 = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Input(vec![format!("{BUDGET_ENV}: expected a number of megabytes, got `{raw}`")]))?;
    let need = spec.estimated_bytes();
    if need > mb << 20 {
        return Err(Failure::Guard(format!(
            "estimated {} MB exceeds {BUDGET_ENV} = {mb}",
            need.div_ceil(1 << 20)
        )));
    }
    Ok(())
}

fn verify(args: &RunArgs, suite: Suite, show: impl Fn(&VerificationReport)) -> Result<u8, Failure> {
    let mut spec = load(&args.file)?;
    args.budgets.apply(&mut spec.budgets);
    memory_guard(&spec)?;
    let options = RunOptions {
        timing: args.timing,
        mutation: args.mutate.then_some(Mutation::FlipGammaEntry),
    };
    let report = run_suite_with(&spec, suite, options)?;
    if let Some(path) = &args.json {
        write_json(path, &report.to_json())?;
    }
    if !is_stdout(args.json.as_deref()) {
        println!(
            "{} (p = {}, dim B = {}, dim S = {}), certificate: {}",
            report.instance.name,
            report.instance.p,
            report.instance.base_dim,
            report.instance.top_dim,
            report.certificate.selected.unwrap_or("none")
        );
        show(&report);
        if let Some(guard) = &report.guard {
            println!("resource guard: {guard}");
        }
    }
    Ok(report.exit_code() as u8)
}

fn is_stdout(path: Option<&Path>) -> bool {
    path.is_some_and(|p| p == Path::new("-"))
}

fn write_json(path: &Path, json: &str) -> Result<(), Failure> {
    if is_stdout(Some(path)) {
        println!("{json}");
        return Ok(());
    }
    std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Input(vec![format!("{}: {e}", path.display())]))
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Observed => "observed",
        Status::Skipped => "skipped",
    }
}

fn print_verdicts(r: &VerificationReport) {
    for v in &r.verdicts {
        println!("  {:<36} {:<8} {}", v.name, status_word(v.status), v.detail);
    }
}

fn print_selected(r: &VerificationReport, names: &[&str]) {
    for v in r.verdicts.iter().filter(|v| names.contains(&v.name)) {
        println!("  {:<36} {:<8} {}", v.name, status_word(v.status), v.detail);
    }
}

fn print_table(title: &str, t: &TableSummary) {
    println!("{title} ({}): {}", t.labels.len(), t.labels.join(", "));
}

fn selftest() -> Result<u8, Failure> {
    let mut code = 0;
    for name in SHIPPED {
        let spec = InstanceSpec::builtin(name)?;
        let r = run_suite_with(&spec, Suite::All, RunOptions::default())?;
        let passed = r.verdicts.iter().filter(|v| v.status == Status::Pass).count();
        let failed = r.failures();
        println!("{name:<24} {passed} pass, {} fail", failed.len());
        for v in failed {
            println!("  {}: {}", v.name, v.detail);
        }
        code = code.max(r.exit_code() as u8);
    }
    let mut config = FuzzConfig::new(2, 2, 20, 0);
    let clean = fuzz(&config)?;
    println!("fuzz: {} instances, {} violations", clean.cases.len(), clean.violations());
    if clean.violations() > 0 {
        code = code.max(EXIT_FAIL);
    }
    config.mutation = Some(Mutation::FlipGammaEntry);
    let mutated = fuzz(&config)?;
    let caught = mutated.failing_cases().len();
    println!("mutation: caught in {caught} of {} instances", mutated.cases.len());
    if caught < mutated.cases.len() || mutated.cases.is_empty() {
        code = code.max(EXIT_FAIL);
    }
    Ok(code)
}
