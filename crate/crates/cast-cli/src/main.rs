//! `cast`: command-line surface for the cyclotomic substitution-tiling
//! engine. Exit codes: 0 success, 1 verification failure, 2 usage error.

use cast_core::builtins::{builtin, builtin_names};
use cast_core::diag::DiagElem;
use cast_core::edge::{alpha_constraints, minimal_sequence, multiplier_even_config, multiplier_odd_config, CaseTag};
use cast_core::gaps::{self, EdgeSpec, GapLimits, GapsOutcome, RuleSymmetry};
use cast_core::ksk::{ksk_check, KskBoundary};
use cast_core::matrix::{compose, is_primitive, min_lambda, verify_min};
use cast_core::render::{render_svg, RenderSpec};
use cast_core::tiling::{self, BoundaryClass, Patch, RuleSet};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cast", about = "Exact engine for cyclotomic aperiodic substitution tilings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose a substitution matrix from diagonal coefficients and print it
    Matrix {
        #[arg(long)]
        n: usize,
        /// Coefficients c_1,c_2,... of lambda = sum c_k mu_{n,k}
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<i64>,
    },
    /// Minimal inflation multiplier for an order, optionally with the
    /// exhaustive smaller-candidate scan
    MinLambda {
        #[arg(long)]
        n: usize,
        /// Run the exhaustive rejection scan of smaller candidates
        #[arg(long)]
        verify: bool,
    },
    /// Verify the substitution rules of a rule set
    Verify {
        #[arg(long, conflicts_with = "builtin")]
        rules: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Iterate the substitution from a seed tile and write the patch
    Substitute {
        #[arg(long, conflicts_with = "builtin")]
        rules: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 1)]
        steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a patch (or an iterated seed) to SVG
    Render {
        #[arg(long, conflicts_with = "builtin")]
        rules: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        patch: Option<PathBuf>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 3)]
        steps: u32,
        #[arg(long)]
        out: PathBuf,
        /// Coordinate precision (decimal places)
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Minimal rhomb edge sequence and inflation multiplier for a case
    Edge {
        /// Case tag: 1a, 1b, 2a, 2b, 3a, 3b, 4a, 4b
        #[arg(long)]
        case: String,
        #[arg(long)]
        n: usize,
    },
    /// Evaluate the parallelogram-tileability criterion on a boundary file
    Ksk {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run the gaps-to-prototiles search
    Gaps {
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Even edge configuration, e.g. 0,2,4,0,2
        #[arg(long, value_delimiter = ',', conflicts_with = "odd_unit")]
        edge: Option<Vec<usize>>,
        /// Odd configuration: the single bisected rhomb index per edge
        #[arg(long)]
        odd_unit: Option<usize>,
        /// Rule symmetry: d1 or d2
        #[arg(long, default_value = "d2")]
        sym: String,
        #[arg(long, default_value_t = 12)]
        max_rounds: u32,
        #[arg(long, default_value_t = 64)]
        max_prototiles: usize,
        #[arg(long, default_value_t = 10_000)]
        fill_budget: u64,
        /// Write the resulting rule set (on closure) to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dump the search state here when limits are reached
        #[arg(long)]
        dump_state: Option<PathBuf>,
        /// Resume from a dumped state file instead of starting fresh
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// List built-in rule sets
    BuiltinList,
}

fn main() -> ExitCode {
    if let Ok(bits) = std::env::var("CAST_PRECISION_BITS") {
        match bits.parse::<u32>() {
            Ok(b) => cast_core::cyclo::set_default_embed_bits(b),
            Err(_) => {
                eprintln!("invalid CAST_PRECISION_BITS");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn load_ruleset(rules: &Option<PathBuf>, name: &Option<String>) -> Result<RuleSet, Box<dyn std::error::Error>> {
    match (rules, name) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            let rs: RuleSet = serde_json::from_str(&text)?;
            rs.validate()?;
            Ok(rs)
        }
        (None, Some(n)) => Ok(builtin(n)?),
        (None, None) => Err("either --rules or --builtin is required".into()),
    }
}

fn lambda_line(lam: &DiagElem) -> String {
    format!("{} = {:.6}", lam, lam.value_f64())
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Matrix { n, coeffs } => {
            let c: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
            let m = compose(n, &c)?;
            print!("{}", m.to_grid_string());
            let lam = DiagElem::new(n, c)?;
            println!("lambda = {}", lambda_line(&lam));
            println!("primitive: {}", is_primitive(&m));
            Ok(ExitCode::SUCCESS)
        }
        Command::MinLambda { n, verify } => {
            let lam = min_lambda(n)?;
            println!("lambda_min({}) = {}", n, lambda_line(&lam));
            println!("|eta_min| = sqrt({:.6}) = {:.6}", lam.value_f64(), lam.value_f64().sqrt());
            if verify {
                let report = verify_min(n)?;
                print!("{}", report);
                if !report.all_rejected {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { rules, builtin } => {
            let rs = load_ruleset(&rules, &builtin)?;
            let lam = tiling::lambda_of(&rs)?;
            println!("rule set {} (n = {}), lambda = {}", rs.name, rs.n, lambda_line(&lam));
            let reports = tiling::verify_ruleset(&rs)?;
            let mut ok = true;
            for rep in &reports {
                let boundary = match &rep.boundary {
                    BoundaryClass::Exact => "exact".to_string(),
                    BoundaryClass::Fringed { residue_segments } => {
                        format!("fringed ({} residue segments)", residue_segments)
                    }
                    BoundaryClass::Broken(msg) => format!("BROKEN: {}", msg),
                };
                println!(
                    "rule {:<10} area {}  boundary {}  containment {}",
                    rep.parent,
                    if rep.area_ok { "ok" } else { "FAIL" },
                    boundary,
                    if rep.containment_ok { "ok" } else { "(crossing)" },
                );
                for msg in &rep.messages {
                    println!("    note: {}", msg);
                }
                ok &= rep.consistent();
            }
            let m = tiling::extract_matrix(&rs)?;
            println!("substitution matrix:\n{}", m.to_grid_string());
            let verdict = tiling::aperiodicity_check(&rs)?;
            match verdict.verdict {
                Some(v) => println!(
                    "aperiodicity: {} (primitive: {}, rotated pair: {})",
                    v,
                    verdict.primitive,
                    verdict.witness.is_some()
                ),
                None => println!("aperiodicity: undecided for n < 4"),
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Substitute { rules, builtin, seed, steps, out } => {
            let rs = load_ruleset(&rules, &builtin)?;
            let seed = seed.unwrap_or_else(|| rs.prototiles[0].id.clone());
            let patch = tiling::iterate(&rs, &seed, steps)?;
            println!("patch: {} tiles at generation {}", patch.tiles.len(), patch.generation);
            let json = serde_json::to_string_pretty(&patch)?;
            match out {
                Some(path) => std::fs::write(path, json)?,
                None => println!("{}", json),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { rules, builtin, patch, seed, steps, out, precision } => {
            let rs = load_ruleset(&rules, &builtin)?;
            let patch: Patch = match patch {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                None => {
                    let seed = seed.unwrap_or_else(|| rs.prototiles[0].id.clone());
                    tiling::iterate(&rs, &seed, steps)?
                }
            };
            let spec = RenderSpec { precision, ..RenderSpec::default() };
            let svg = render_svg(&rs, &patch, &spec)?;
            std::fs::write(&out, svg)?;
            println!("wrote {} ({} tiles)", out.display(), patch.tiles.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Edge { case, n } => {
            let tag = CaseTag::parse(&case)?;
            let seq = minimal_sequence(tag, n)?;
            let entries: Vec<String> = seq.entries.iter().map(|k| k.to_string()).collect();
            println!(
                "case {} n={} minimal edge sequence: {}{}",
                tag,
                n,
                entries.join("-"),
                if seq.extrapolated { "  (extrapolated)" } else { "" }
            );
            if tag.even_config() {
                let eta = multiplier_even_config(&seq)?;
                println!("eta_min = {} = {:.6}", eta, eta.value_f64());
            } else {
                let eta = multiplier_odd_config(&seq)?;
                println!("eta_min = {} = {:.6}", eta.table, eta.table.value);
            }
            for item in alpha_constraints(&seq) {
                println!("  {}  {}", if item.holds { "ok  " } else { "FAIL" }, item.name);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ksk { file } => {
            let b: KskBoundary = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            let rep = ksk_check(&b)?;
            if rep.ok {
                println!("KSK criterion satisfied");
                Ok(ExitCode::SUCCESS)
            } else {
                let v = rep.violation.unwrap();
                println!("KSK violated: worms {:?} x {:?}: {}", v.pair_a, v.pair_b, v.reason);
                Ok(ExitCode::from(1))
            }
        }
        Command::Gaps {
            n,
            edge,
            odd_unit,
            sym,
            max_rounds,
            max_prototiles,
            fill_budget,
            out,
            dump_state,
            resume,
        } => {
            let sym = match sym.as_str() {
                "d1" => RuleSymmetry::D1,
                "d2" => RuleSymmetry::D2,
                _ => return Err("--sym must be d1 or d2".into()),
            };
            let limits = GapLimits { max_rounds, max_prototiles, max_fill_nodes: fill_budget };
            let outcome = if let Some(path) = resume {
                let state: gaps::SearchState = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                gaps::resume(state, &limits)?
            } else {
                let spec = match (edge, odd_unit) {
                    (Some(seq), None) => EdgeSpec::Even(seq),
                    (None, Some(k)) => EdgeSpec::OddUnit(k),
                    _ => return Err("exactly one of --edge or --odd-unit is required".into()),
                };
                if n < 4 {
                    return Err("--n must be at least 4".into());
                }
                gaps::run(n, spec, sym, &limits)?
            };
            match outcome {
                GapsOutcome::Closed(rs) => {
                    let lam = tiling::lambda_of(&rs)?;
                    println!(
                        "closed: {} prototiles, {} rules, lambda = {}",
                        rs.prototiles.len(),
                        rs.rules.len(),
                        lambda_line(&lam)
                    );
                    if let Some(path) = out {
                        std::fs::write(path, serde_json::to_string_pretty(&rs)?)?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                GapsOutcome::Failed { reason, state } => {
                    println!("failed: {}", reason);
                    if let Some(path) = dump_state {
                        std::fs::write(path, serde_json::to_string_pretty(&state)?)?;
                    }
                    Ok(ExitCode::from(1))
                }
                GapsOutcome::LimitReached(state) => {
                    println!(
                        "limits reached after round {}: {} prototiles, {} pending",
                        state.round,
                        state.ruleset.prototiles.len(),
                        state.pending.len()
                    );
                    for note in &state.notes {
                        println!("  note: {}", note);
                    }
                    if let Some(path) = dump_state {
                        std::fs::write(path, serde_json::to_string_pretty(&state)?)?;
                        println!("state dumped for --resume");
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::BuiltinList => {
            for name in builtin_names() {
                let rs = builtin(&name)?;
                let lam = tiling::lambda_of(&rs)?;
                println!(
                    "{:<18} n={}  {} prototiles  lambda = {}",
                    name,
                    rs.n,
                    rs.prototiles.len(),
                    lambda_line(&lam)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
