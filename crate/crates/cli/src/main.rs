//! `wreath` — exact order statistics of wreath products of finite groups.
//!
//! Every subcommand evaluates in exact rational arithmetic and prints either
//! human-readable text, CSV (trajectory commands), or single-line JSON with
//! `--json`. Exit codes: 0 success, 1 usage/parse error, 2 precondition
//! violation, 3 resource cap, 4 cross-method disagreement.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wreath_cli::output::{
    csv_row, print_json, rational_human, rational_json, spectrum_json, CSV_HEADER,
};
use wreath_cli::spec::{parse_spec, SpecError};
use wreath_core::exact::{rat_int, to_decimal, BitBudget};
use wreath_core::formulas::{
    psi, psi_tower, psi_tower_float, theorem1_average, theorem2_average, theorem5_distribution,
    theorem6_check, theorem7_sequence, PGroupProfile,
};
use wreath_core::oracle::{brute_force_spectrum_with, orbit_spectrum, OracleOptions};
use wreath_core::spectra::{r_distribution, spectrum};
use wreath_core::{BigRational, Error as CoreError};

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Exact average orders and order distributions of wreath products of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit single-line JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Fractional digits in decimal renderings
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=50))]
    digits: u8,

    /// log2 of the enumeration cap for the brute-force oracle
    #[arg(long, global = true, default_value_t = 21, value_parser = clap::value_parser!(u8).range(1..=40))]
    oracle_cap: u8,

    /// log2 of the exact-arithmetic bit budget
    #[arg(long, global = true, default_value_t = 22, value_parser = clap::value_parser!(u8).range(4..=48))]
    bit_budget: u8,

    /// Worker threads for oracle enumeration (results are bit-identical for
    /// any count)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=64))]
    workers: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Average element order of a group
    Avg { spec: String },
    /// Maximum element order of a group
    Maxorder { spec: String },
    /// Exact order spectrum of a group
    Spectrum { spec: String },
    /// Average order of W(A, B), by one method or all of them
    WreathAvg {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Cumulative order distribution of W(A, B) for p-groups A, B
    Dist {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Cross-check the distribution against brute-force enumeration
        #[arg(long)]
        check_oracle: bool,
    },
    /// ψ(A_n, B) along the tower A_0 = A, A_n = A_{n-1} ≀ C_p (CSV)
    Tower {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// ψ(A, B) = a(A≀B) / (m(A)·a(B)) for p-groups
    Psi {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// ψ, Δ and their bounds for abelian A against a p-group B
    AbelianCheck {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// a((Z/pZ)^n ≀ B) for n = 1..nmax, with the limit p·a(B) (CSV)
    Limits {
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Theorem1,
    Theorem2,
    Oracle,
    Orbit,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Theorem2 => "theorem2",
            Method::Oracle => "oracle",
            Method::Orbit => "orbit",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

struct CliError {
    code: i32,
    kind: &'static str,
    message: String,
}

impl CliError {
    fn precondition(message: impl Into<String>) -> Self {
        CliError { code: 2, kind: "precondition", message: message.into() }
    }

    fn disagreement(message: impl Into<String>) -> Self {
        CliError { code: 4, kind: "disagreement", message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let (code, kind) = match e {
            CoreError::SizeCap { .. } | CoreError::BitBudget { .. } => (3, "resource"),
            _ => (2, "precondition"),
        };
        CliError { code, kind, message: e.to_string() }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(_) => CliError { code: 1, kind: "parse", message: e.to_string() },
            SpecError::Semantic(_) => {
                CliError { code: 2, kind: "precondition", message: e.to_string() }
            }
        }
    }
}

struct Ctx {
    json: bool,
    digits: usize,
    opts: OracleOptions,
    budget: BitBudget,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let ctx = Ctx {
        json: cli.json,
        digits: cli.digits as usize,
        opts: OracleOptions { cap: 1u128 << cli.oracle_cap, workers: cli.workers as usize },
        budget: BitBudget::new(1u64 << cli.bit_budget),
    };
    if let Err(err) = run(cli.command, &ctx) {
        if ctx.json {
            print_json(&json!({
                "error": {"code": err.code, "kind": err.kind, "message": err.message}
            }));
        } else {
            eprintln!("error: {}", err.message);
        }
        std::process::exit(err.code);
    }
}

fn run(command: Command, ctx: &Ctx) -> Result<(), CliError> {
    match command {
        Command::Avg { spec } => cmd_avg(&spec, ctx),
        Command::Maxorder { spec } => cmd_maxorder(&spec, ctx),
        Command::Spectrum { spec } => cmd_spectrum(&spec, ctx),
        Command::WreathAvg { a, b, method } => cmd_wreath_avg(&a, &b, method, ctx),
        Command::Dist { a, b, check_oracle } => cmd_dist(&a, &b, check_oracle, ctx),
        Command::Tower { a, b, steps, mode } => cmd_tower(&a, &b, steps, mode, ctx),
        Command::Psi { a, b } => cmd_psi(&a, &b, ctx),
        Command::AbelianCheck { a, b } => cmd_abelian_check(&a, &b, ctx),
        Command::Limits { b, p, nmax } => cmd_limits(&b, p, nmax, ctx),
    }
}

fn cmd_avg(text: &str, ctx: &Ctx) -> Result<(), CliError> {
    let ast = parse_spec(text)?;
    let value = ast.spectrum_of(&ctx.opts)?.average_order();
    if ctx.json {
        print_json(&json!({
            "command": "avg",
            "inputs": {"spec": ast.to_string()},
            "method": "enumeration",
            "value": rational_json(&value, ctx.digits),
        }));
    } else {
        println!("{}", rational_human(&value, ctx.digits));
    }
    Ok(())
}

fn cmd_maxorder(text: &str, ctx: &Ctx) -> Result<(), CliError> {
    let ast = parse_spec(text)?;
    let value = ast.spectrum_of(&ctx.opts)?.max_order();
    if ctx.json {
        print_json(&json!({
            "command": "maxorder",
            "inputs": {"spec": ast.to_string()},
            "method": "enumeration",
            "value": value,
        }));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn cmd_spectrum(text: &str, ctx: &Ctx) -> Result<(), CliError> {
    let ast = parse_spec(text)?;
    let spec = ast.spectrum_of(&ctx.opts)?;
    if ctx.json {
        print_json(&json!({
            "command": "spectrum",
            "inputs": {"spec": ast.to_string()},
            "method": "enumeration",
            "group_size": spec.group_size().to_string(),
            "spectrum": spectrum_json(&spec),
        }));
    } else {
        for (order, count) in spec.orders() {
            println!("{order}: {count}");
        }
    }
    Ok(())
}

fn cmd_wreath_avg(a: &str, b: &str, method: Method, ctx: &Ctx) -> Result<(), CliError> {
    let ast_a = parse_spec(a)?;
    let ast_b = parse_spec(b)?;
    let mat_a = ast_a.materialize()?;
    let mat_b = ast_b.materialize()?;
    let spec_a = spectrum(&mat_a);
    let spec_b = spectrum(&mat_b);

    let mut results: Vec<(&'static str, BigRational)> = Vec::new();
    let mut skipped: Vec<(&'static str, String)> = Vec::new();

    let wants = |m: Method| method == m || method == Method::All;
    if wants(Method::Theorem1) {
        results.push(("theorem1", theorem1_average(&spec_a, &spec_b)?));
    }
    if wants(Method::Theorem2) {
        let outcome = PGroupProfile::from_spectrum(&spec_a)
            .and_then(|profile| theorem2_average(&profile, &spec_b));
        match outcome {
            Ok(value) => results.push(("theorem2", value)),
            Err(e) if method == Method::All => skipped.push(("theorem2", e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    if wants(Method::Oracle) {
        let spec = brute_force_spectrum_with(&mat_a, &mat_b, &ctx.opts)?;
        results.push(("oracle", spec.average_order()));
    }
    if wants(Method::Orbit) {
        results.push(("orbit", orbit_spectrum(&mat_a, &mat_b)?.average_order()));
    }

    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    if ctx.json {
        let mut map = serde_json::Map::new();
        for (name, value) in &results {
            map.insert(name.to_string(), rational_json(value, ctx.digits));
        }
        let mut doc = json!({
            "command": "wreath-avg",
            "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string()},
            "method": method.name(),
            "results": map,
            "agree": agree,
        });
        if !skipped.is_empty() {
            let mut sk = serde_json::Map::new();
            for (name, reason) in &skipped {
                sk.insert(name.to_string(), json!(reason));
            }
            doc["skipped"] = serde_json::Value::Object(sk);
        }
        print_json(&doc);
    } else {
        for (name, value) in &results {
            println!("{name}: {}", rational_human(value, ctx.digits));
        }
        for (name, reason) in &skipped {
            println!("{name}: skipped ({reason})");
        }
        if method == Method::All {
            println!("agreement: {}", if agree { "ok" } else { "MISMATCH" });
        }
    }
    if !agree {
        return Err(CliError::disagreement("methods disagree on a(A≀B)"));
    }
    Ok(())
}

fn cmd_dist(a: &str, b: &str, check_oracle: bool, ctx: &Ctx) -> Result<(), CliError> {
    let ast_a = parse_spec(a)?;
    let ast_b = parse_spec(b)?;
    let mat_a = ast_a.materialize()?;
    let mat_b = ast_b.materialize()?;
    let spec_a = spectrum(&mat_a);
    let spec_b = spectrum(&mat_b);
    let p = spec_a.p_group_prime()?;
    let r_a = r_distribution(&spec_a, p)?;
    let r_b = r_distribution(&spec_b, p)?;
    let dist = theorem5_distribution(&r_a, &r_b, ctx.budget)?;

    let oracle_match = if check_oracle {
        let enumerated = brute_force_spectrum_with(&mat_a, &mat_b, &ctx.opts)?;
        Some(r_distribution(&enumerated, p)? == dist)
    } else {
        None
    };

    if ctx.json {
        print_json(&json!({
            "command": "dist",
            "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string()},
            "method": "theorem5",
            "p": p,
            "size_exponent": dist.a.to_string(),
            "max_order_exponent": dist.d,
            "r": dist.r.iter().map(|x| rational_json(x, ctx.digits)).collect::<Vec<_>>(),
            "oracle_match": oracle_match,
        }));
    } else {
        println!("p = {p}, |G| = {p}^{}, m(G) = {p}^{}", dist.a, dist.d);
        for (k, value) in dist.r.iter().enumerate() {
            println!("r[{k}] = {}", rational_human(value, ctx.digits));
        }
        if let Some(ok) = oracle_match {
            println!("oracle: {}", if ok { "match" } else { "MISMATCH" });
        }
    }
    if oracle_match == Some(false) {
        return Err(CliError::disagreement(
            "theorem5 distribution disagrees with brute-force enumeration",
        ));
    }
    Ok(())
}

fn cmd_tower(a: &str, b: &str, steps: usize, mode: Mode, ctx: &Ctx) -> Result<(), CliError> {
    let ast_a = parse_spec(a)?;
    let ast_b = parse_spec(b)?;
    let spec_a = spectrum(&ast_a.materialize()?);
    let spec_b = spectrum(&ast_b.materialize()?);
    let p = spec_a.p_group_prime()?;
    let r0 = r_distribution(&spec_a, p)?;

    match mode {
        Mode::Exact => {
            let values = psi_tower(&r0, &spec_b, steps, ctx.budget)?;
            if ctx.json {
                print_json(&json!({
                    "command": "tower",
                    "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string(), "steps": steps},
                    "method": "exact",
                    "values": values.iter().map(|x| rational_json(x, ctx.digits)).collect::<Vec<_>>(),
                }));
            } else {
                println!("{CSV_HEADER}");
                for (n, value) in values.iter().enumerate() {
                    println!("{}", csv_row(n, Some(value), &to_decimal(value, ctx.digits)));
                }
            }
        }
        Mode::Float => {
            let values = psi_tower_float(&r0, &spec_b, steps)?;
            if ctx.json {
                print_json(&json!({
                    "command": "tower",
                    "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string(), "steps": steps},
                    "method": "float",
                    "values": values,
                }));
            } else {
                println!("{CSV_HEADER}");
                for (n, value) in values.iter().enumerate() {
                    println!("{}", csv_row(n, None, &format!("{value:.*}", ctx.digits)));
                }
            }
        }
    }
    Ok(())
}

fn cmd_psi(a: &str, b: &str, ctx: &Ctx) -> Result<(), CliError> {
    let ast_a = parse_spec(a)?;
    let ast_b = parse_spec(b)?;
    let spec_a = spectrum(&ast_a.materialize()?);
    let spec_b = spectrum(&ast_b.materialize()?);
    let profile = PGroupProfile::from_spectrum(&spec_a)?;
    let a_wreath = theorem2_average(&profile, &spec_b)?;
    let value = psi(&a_wreath, spec_a.max_order(), &spec_b.average_order())?;
    if ctx.json {
        print_json(&json!({
            "command": "psi",
            "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string()},
            "method": "theorem2",
            "value": rational_json(&value, ctx.digits),
        }));
    } else {
        println!("{}", rational_human(&value, ctx.digits));
    }
    Ok(())
}

fn cmd_abelian_check(a: &str, b: &str, ctx: &Ctx) -> Result<(), CliError> {
    let ast_a = parse_spec(a)?;
    let ast_b = parse_spec(b)?;
    let (p_a, exponents) = ast_a.abelian_exponents().ok_or_else(|| {
        CliError::precondition(format!(
            "{ast_a} is not an abelian p-group description (use C p^k, E(p, k), A(p; ...), or products of these)"
        ))
    })?;
    let spec_b = spectrum(&ast_b.materialize()?);
    let p_b = spec_b.p_group_prime()?;
    if p_a != p_b {
        return Err(CoreError::PrimeMismatch { left: p_a, right: p_b }.into());
    }
    let chk = theorem6_check(&exponents, &spec_b)?;
    let bounds_hold = chk.delta >= BigRational::from_integer(0.into())
        && chk.delta <= chk.delta_bound
        && chk.psi <= BigRational::from_integer(1.into())
        && (chk.cyclic_b || chk.psi >= chk.lower);

    if ctx.json {
        print_json(&json!({
            "command": "abelian-check",
            "inputs": {"a": ast_a.to_string(), "b": ast_b.to_string()},
            "method": "theorem6",
            "t": chk.t,
            "cyclic_b": chk.cyclic_b,
            "psi": rational_json(&chk.psi, ctx.digits),
            "lower": rational_json(&chk.lower, ctx.digits),
            "delta": rational_json(&chk.delta, ctx.digits),
            "delta_bound": rational_json(&chk.delta_bound, ctx.digits),
            "bounds_hold": bounds_hold,
        }));
    } else {
        println!("t = {}", chk.t);
        println!("cyclic_b = {}", chk.cyclic_b);
        println!("psi = {}", rational_human(&chk.psi, ctx.digits));
        println!("lower = {}", rational_human(&chk.lower, ctx.digits));
        println!("delta = {}", rational_human(&chk.delta, ctx.digits));
        println!("delta_bound = {}", rational_human(&chk.delta_bound, ctx.digits));
        println!("bounds: {}", if bounds_hold { "ok" } else { "VIOLATED" });
    }
    if !bounds_hold {
        return Err(CliError::disagreement("abelian inequality chain violated"));
    }
    Ok(())
}

fn cmd_limits(b: &str, p: u64, nmax: u32, ctx: &Ctx) -> Result<(), CliError> {
    let ast_b = parse_spec(b)?;
    let spec_b = spectrum(&ast_b.materialize()?);
    let values = theorem7_sequence(&spec_b, p, nmax)?;
    let limit = rat_int(p) * spec_b.average_order();
    if ctx.json {
        print_json(&json!({
            "command": "limits",
            "inputs": {"b": ast_b.to_string(), "p": p, "nmax": nmax},
            "method": "theorem7",
            "values": values.iter().map(|x| rational_json(x, ctx.digits)).collect::<Vec<_>>(),
            "limit": rational_json(&limit, ctx.digits),
        }));
    } else {
        println!("{CSV_HEADER}");
        for (i, value) in values.iter().enumerate() {
            println!("{}", csv_row(i + 1, Some(value), &to_decimal(value, ctx.digits)));
        }
    }
    Ok(())
}
