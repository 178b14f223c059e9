use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dyckx::genfun::{constant_genfun, constant_residual, ConstantParams};
use dyckx::identities::{
    check_family_instance, diag_conditions, sweep_cubic, validate_family_form, verify_diagonal, verify_cubic,
    FamilyForm, Triplet,
};
use dyckx::kernel::{canonicalize, diagnostics};
use dyckx::presentations::{
    build_presentation, enumerate_t_with, export_classification, export_graph, swap_indices, time_reverse,
};
use dyckx::zeta::{periodic_census_with_budget, zeta_parts_with, DEFAULT_CENSUS_BUDGET};
use dyckx::{solve_genfun, Format, LabelRule, RationalSeries, SpecFile, SubshiftSpec, ZetaError, ZetaVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod input;

use input::SpecArgs;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    /// A verification ran and something failed; the report is still printed.
    Failed(String),
}

#[derive(Parser, Debug)]
#[command(name = "dyckx", version, about = "Zeta functions, generating functions and presentations of Dyck subshifts")]
struct Cli {
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Excursion generating functions g_n
    Genfun {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 24)]
        order: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Zeta factors, checked against the periodic-point census up to --nmax
    Zeta {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 24)]
        order: usize,
        /// Census depth for the cross-check; 0 skips it
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
        variant: VariantArg,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u64,
    },
    /// Periodic-point counts by multiplier class
    Census {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Check an identity; the first output line is `ok=<bool> checked=<n> order=<K>`
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Classify all 0-1 triplets admitting a presentation with g₀ = g₁
    #[command(name = "enumerate-T")]
    EnumerateT {
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Order of the direct g₀ = g₁ comparison; 0 skips it
        #[arg(long, default_value_t = 24)]
        slow_order: usize,
    },
    /// Two-block presentation graph of a 0-1 triplet
    Presentation {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = LabelArg::Middle)]
        label: LabelArg,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Interval-subset form of a spec, with dead-symbol diagnostics
    Canonicalize {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Balanced diagonals of A⁻AᵏA⁺ for k ≤ kmax
    Diagonal {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
        /// Balanced random triplets to draw when none is given
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Two-class coupled system and cubic; all 4096 0-1 triplets when none is given
    Cubic {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 24)]
        order: usize,
    },
    /// Zeta factors against the census; D₂ plus random specs when none is given
    Zeta {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
        variant: VariantArg,
    },
    /// Constant-case quadratic; the whole grid [1,3] when no parameters are given
    Constant {
        #[arg(long = "cm")]
        m: Option<i64>,
        #[arg(long)]
        kminus: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        kplus: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, default_value_t = 24)]
        order: usize,
    },
    /// Random validation of the structural families
    Families {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time reversal and index swap on 0-1 triplets
    Reversal {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableFormat {
    Json,
    Tsv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Derived,
    Swapped,
    Bare,
}

impl From<VariantArg> for ZetaVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Derived => ZetaVariant::Derived,
            VariantArg::Swapped => ZetaVariant::Swapped,
            VariantArg::Bare => ZetaVariant::WithoutTransitions,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LabelArg {
    Middle,
    ThreeCase,
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn census_error(e: ZetaError) -> CliError {
    CliError::Input(e.to_string())
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn coeffs(s: &RationalSeries) -> Vec<String> {
    s.coeff_strings()
}

/// Summary line plus JSON report; fails with exit code 1 when `ok` is false.
fn verdict(ok: bool, checked: usize, order: usize, report: Value) -> Result<String, CliError> {
    let text = format!("ok={ok} checked={checked} order={order}\n{}", pretty(&report));
    if ok {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

fn genfun(spec: &SubshiftSpec, order: usize, format: TableFormat) -> Result<String, CliError> {
    let sol = solve_genfun(spec, order).map_err(input)?;
    Ok(match format {
        TableFormat::Json => {
            let g: Vec<Vec<String>> = sol.g.iter().map(coeffs).collect();
            pretty(&json!({ "order": order, "g": g }))
        }
        TableFormat::Tsv => {
            let mut out = String::from("class\tdegree\tcoefficient\n");
            for (n, g) in sol.g.iter().enumerate() {
                for (d, c) in coeffs(g).iter().enumerate() {
                    writeln!(out, "{n}\t{d}\t{c}").unwrap();
                }
            }
            out
        }
    })
}

fn zeta(spec: &SubshiftSpec, order: usize, nmax: usize, variant: ZetaVariant, budget: u64) -> Result<String, CliError> {
    let parts = zeta_parts_with(spec, order, variant).map_err(input)?;
    let mut report = json!({
        "order": order,
        "neutral": coeffs(&parts.neutral),
        "non_positive": coeffs(&parts.non_positive),
        "non_negative": coeffs(&parts.non_negative),
        "total": coeffs(&parts.total),
    });
    if nmax == 0 {
        return Ok(pretty(&report));
    }
    let oracle = periodic_census_with_budget(spec, nmax, budget).map_err(census_error)?.to_zeta();
    let k = nmax.min(order);
    let derived = parts.truncate(k);
    let oracle = oracle.truncate(k);
    let matches = json!({
        "total": derived.total == oracle.total,
        "neutral": derived.neutral == oracle.neutral,
        "non_positive": derived.non_positive == oracle.non_positive,
        "non_negative": derived.non_negative == oracle.non_negative,
    });
    let ok = derived == oracle;
    report["census_check"] = json!({ "nmax": nmax, "status": if ok { "OK" } else { "MISMATCH" }, "matches": matches });
    if ok {
        Ok(pretty(&report))
    } else {
        Err(CliError::Failed(pretty(&report)))
    }
}

fn census(spec: &SubshiftSpec, nmax: usize, budget: u64, format: TableFormat) -> Result<String, CliError> {
    let c = periodic_census_with_budget(spec, nmax, budget).map_err(census_error)?;
    Ok(match format {
        TableFormat::Json => pretty(&c),
        TableFormat::Tsv => {
            let mut out = String::from("n\ttotal\tneutral\tnon_positive\tnon_negative\n");
            for i in 0..nmax {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", i + 1, c.total[i], c.neutral[i], c.non_positive[i], c.non_negative[i])
                    .unwrap();
            }
            out
        }
    })
}

fn verify_diagonal_cmd(spec: &SpecArgs, kmax: u32, trials: usize, seed: u64) -> Result<String, CliError> {
    let triplets: Vec<Triplet> = match spec.triplet()? {
        Some(t) => vec![t],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(trials);
            while out.len() < trials {
                let t = Triplet::random(&mut rng, 3);
                if diag_conditions(&t) == (true, true) {
                    out.push(t);
                }
            }
            out
        }
    };
    let reports: Vec<_> = triplets.iter().map(|t| verify_diagonal(t, kmax)).collect();
    let applicable = reports.iter().filter(|r| r.applicable).count();
    let failures: Vec<_> = reports.iter().filter(|r| !r.holds()).collect();
    let mut report = json!({ "applicable": applicable, "failures": failures });
    if let [single] = reports.as_slice() {
        report["triplet"] = json!(single.triplet);
        report["diag_conditions"] = json!(diag_conditions(&single.triplet));
    }
    verdict(failures.is_empty(), reports.len(), kmax as usize, report)
}

fn verify_cubic_cmd(spec: &SpecArgs, order: usize) -> Result<String, CliError> {
    match spec.triplet()? {
        None => {
            let sweep = sweep_cubic(order).map_err(input)?;
            let ok = sweep.failures.is_empty();
            verdict(ok, sweep.checked, order, json!(sweep))
        }
        Some(t) => {
            let r = verify_cubic(&t, spec.m as i64, order).map_err(input)?;
            let cubic = r.cubic.as_ref().map(|c| {
                json!({
                    "trA": c.tr_a, "detA": c.det_a, "eta4": c.eta4, "eta6": c.eta6,
                    "B": coeffs(&c.b), "C": coeffs(&c.c), "D": coeffs(&c.d),
                })
            });
            let report = json!({
                "triplet": t,
                "M": spec.m,
                "diag_conditions": r.diag,
                "low_coefficients_agree": r.low_coefficients_agree,
                "equivalence_holds": r.equivalence_holds,
                "series_equal": r.series_equal,
                "cubic_residual_vanishes": r.residual_vanishes,
                "cubic": cubic,
                "g0": coeffs(&r.g0),
                "g1": coeffs(&r.g1),
            });
            verdict(r.ok(), 1, r.order, report)
        }
    }
}

fn random_spec(rng: &mut ChaCha8Rng) -> SubshiftSpec {
    SubshiftSpec::random(rng, 2, 2)
}

fn verify_zeta_cmd(spec: &SpecArgs, nmax: usize, trials: usize, seed: u64, variant: ZetaVariant) -> Result<String, CliError> {
    let specs = match spec.spec_opt()? {
        Some(s) => vec![s],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = vec![SubshiftSpec::dyck(2)];
            v.extend((0..trials).map(|_| random_spec(&mut rng)));
            v
        }
    };
    let mut mismatches = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        let derived = zeta_parts_with(s, nmax, variant).map_err(input)?;
        let oracle = periodic_census_with_budget(s, nmax, DEFAULT_CENSUS_BUDGET).map_err(census_error)?.to_zeta();
        let bad: Vec<&str> = [
            ("total", derived.total == oracle.total),
            ("neutral", derived.neutral == oracle.neutral),
            ("non_positive", derived.non_positive == oracle.non_positive),
            ("non_negative", derived.non_negative == oracle.non_negative),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect();
        if !bad.is_empty() {
            mismatches.push(json!({ "index": i, "spec": SpecFile::from_spec(s), "factors": bad }));
        }
    }
    verdict(mismatches.is_empty(), specs.len(), nmax, json!({ "mismatches": mismatches }))
}

fn verify_constant_cmd(params: [Option<i64>; 5], order: usize) -> Result<String, CliError> {
    let grid: Vec<ConstantParams> = match params {
        [Some(m), Some(k_minus), Some(k), Some(k_plus), Some(n)] => vec![ConstantParams { m, k_minus, k, k_plus, n }],
        [None, None, None, None, None] => {
            let mut v = Vec::new();
            for n in 1..=3 {
                for m in 1..=3 {
                    for k_minus in 1..=m {
                        for k in 1..=m {
                            for k_plus in 1..=m {
                                v.push(ConstantParams { m, k_minus, k, k_plus, n });
                            }
                        }
                    }
                }
            }
            v
        }
        _ => return Err(CliError::Input("give all of --cm, --kminus, --k, --kplus, --n or none".into())),
    };
    let mut failures = Vec::new();
    for p in &grid {
        let spec = p.to_spec().map_err(input)?;
        let sol = solve_genfun(&spec, order).map_err(input)?;
        let closed = constant_genfun(p, order).map_err(input)?;
        let residual_zero = sol.g.iter().all(|g| constant_residual(p, g).is_zero());
        if !residual_zero || sol.g.iter().any(|g| *g != closed) {
            failures.push(json!({ "M": p.m, "K-": p.k_minus, "K": p.k, "K+": p.k_plus, "N": p.n }));
        }
    }
    verdict(failures.is_empty(), grid.len(), order, json!({ "failures": failures }))
}

fn verify_families_cmd(trials: usize, kmax: u32, seed: u64) -> Result<String, CliError> {
    let reports: Vec<_> = FamilyForm::ALL.iter().map(|&f| validate_family_form(f, trials, kmax, seed)).collect();
    let ok = reports.iter().filter(|r| FamilyForm::VALIDATED.contains(&r.form)).all(|r| r.holds());
    let known = [
        Triplet::m2([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [1, 0]]),
        Triplet::m2([[1, 0], [1, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ];
    let counterexamples: Vec<_> = known.iter().filter_map(|t| check_family_instance(t, kmax)).collect();
    let report = json!({ "forms": reports, "loose_form_counterexamples": counterexamples });
    verdict(ok, trials * FamilyForm::VALIDATED.len(), kmax as usize, report)
}

fn verify_reversal_cmd(spec: &SpecArgs, nmax: usize, trials: usize, seed: u64) -> Result<String, CliError> {
    let triplets = match spec.triplet()? {
        Some(t) => vec![t],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials).map(|_| Triplet::from_bits(rng.gen_range(0..4096))).collect()
        }
    };
    let mut failures = Vec::new();
    for t in &triplets {
        if t.max_entry() > 1 || t.a_minus.min_entry() < 0 || t.a.min_entry() < 0 || t.a_plus.min_entry() < 0 {
            return Err(CliError::Input(format!("{t}: time reversal is defined here for 0-1 triplets only")));
        }
        let r = time_reverse(t);
        let s = swap_indices(t);
        let spec_of = |x: &Triplet| x.to_spec(1).map_err(input);
        let census = |x: &Triplet| -> Result<_, CliError> {
            periodic_census_with_budget(&spec_of(x)?, nmax, DEFAULT_CENSUS_BUDGET).map_err(census_error)
        };
        let base = census(t)?;
        let checks = [
            ("reversal_involution", time_reverse(&r) == *t),
            ("swap_involution", swap_indices(&s) == *t),
            ("reversal_census", census(&r)? == base.with_sides_swapped()),
            ("swap_census", census(&s)? == base),
        ];
        let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        if !bad.is_empty() {
            failures.push(json!({ "triplet": t, "failed": bad }));
        }
    }
    verdict(failures.is_empty(), triplets.len(), nmax, json!({ "failures": failures }))
}

fn enumerate(format: TableFormat, slow_order: usize) -> Result<String, CliError> {
    let slow = (slow_order > 0).then_some(slow_order);
    let c = enumerate_t_with(slow).map_err(input)?;
    let fmt = match format {
        TableFormat::Json => Format::Json,
        TableFormat::Tsv => Format::Tsv,
    };
    let text = export_classification(&c, fmt).map_err(input)?;
    if c.slow_path_mismatches.is_empty() && c.listed_failures().is_empty() {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

fn presentation(spec: &SpecArgs, label: LabelArg, format: &str) -> Result<String, CliError> {
    let format: Format = format.parse().map_err(input)?;
    let t = spec.triplet()?.ok_or_else(|| CliError::Input("no triplet given".into()))?;
    let rule = match label {
        LabelArg::Middle => LabelRule::Middle,
        LabelArg::ThreeCase => LabelRule::ThreeCase,
    };
    let g = build_presentation(&t, rule).map_err(input)?;
    export_graph(&g, format).map_err(input)
}

fn canonical(spec: &SubshiftSpec) -> Result<String, CliError> {
    let (canon, map) = canonicalize(spec).map_err(input)?;
    Ok(pretty(&json!({
        "spec": SpecFile::from_spec(&canon),
        "already_canonical": map.is_identity(),
        "diagnostics": diagnostics(spec),
    })))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Genfun { spec, order, format } => genfun(&spec.spec()?, *order, *format),
        Command::Zeta { spec, order, nmax, variant, budget } => zeta(&spec.spec()?, *order, *nmax, (*variant).into(), *budget),
        Command::Census { spec, nmax, budget, format } => census(&spec.spec()?, *nmax, *budget, *format),
        Command::Verify { what } => match what {
            Verify::Diagonal { spec, kmax, trials, seed } => verify_diagonal_cmd(spec, *kmax, *trials, *seed),
            Verify::Cubic { spec, order } => verify_cubic_cmd(spec, *order),
            Verify::Zeta { spec, nmax, trials, seed, variant } => {
                verify_zeta_cmd(spec, *nmax, *trials, *seed, (*variant).into())
            }
            Verify::Constant { m, kminus, k, kplus, n, order } => verify_constant_cmd([*m, *kminus, *k, *kplus, *n], *order),
            Verify::Families { trials, kmax, seed } => verify_families_cmd(*trials, *kmax, *seed),
            Verify::Reversal { spec, nmax, trials, seed } => verify_reversal_cmd(spec, *nmax, *trials, *seed),
        },
        Command::EnumerateT { format, slow_order } => enumerate(*format, *slow_order),
        Command::Presentation { spec, label, format } => presentation(spec, *label, format),
        Command::Canonicalize { spec } => canonical(&spec.spec()?),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (text, code) = match result {
        Ok(text) => (text, 0),
        Err(CliError::Failed(text)) => (text, 1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(CliError::Input(msg)) = emit(&cli.out, &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
