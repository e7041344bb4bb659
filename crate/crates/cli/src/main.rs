use std::path::PathBuf;
use std::process::ExitCode;

use chevrest_cli::{catalog_rows, run, run_many, smoke_configs, CampaignConfig, Format, Lemma};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chevrest", version, about = "Exact checks of the restriction theorem for symmetric pairs")]
struct Cli {
    /// Key-value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// json or tsv.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Overridden by CHEVREST_WORKERS.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Leave wall times out so reports compare byte for byte.
    #[arg(long, global = true)]
    golden: bool,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Scope {
    /// Pair id; repeat for several.
    #[arg(long = "pair")]
    pairs: Vec<String>,
    #[arg(long = "copies")]
    copies: Vec<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    monomial_cap: Option<usize>,
    #[arg(long)]
    module_cap: Option<usize>,
    #[arg(long)]
    tensor_cap: Option<usize>,
    #[arg(long)]
    group_cap: Option<usize>,
    #[arg(long)]
    box_bound: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog of symmetric pairs.
    Catalog,
    /// Surjectivity of the restriction map and the θ apparatus.
    Verify(Scope),
    /// Covering of Q by W₀-translates of Q₊ on a box.
    Lemma12(Scope),
    /// Spherical vectors and their weight supports.
    Lemma13(Scope),
    /// Cartan components in V_λ ⊗ V_µ and injectivity of the projection.
    Claim(Scope),
    /// W₀-invariant dimensions against the Molien series.
    Molien(Scope),
    /// Lemmas from the config file (or every lemma).
    Run(Scope),
    /// Every lemma; `--smoke` runs the acceptance-scale profile.
    All {
        #[arg(long)]
        smoke: bool,
        #[command(flatten)]
        scope: Scope,
    },
}

fn apply(cfg: &mut CampaignConfig, cli: &Cli, scope: &Scope) -> Result<(), chevrest::Error> {
    if let Some(f) = &cli.format {
        cfg.format = f.parse()?;
    }
    if let Some(o) = &cli.output {
        cfg.output = Some(o.clone());
    }
    if cli.workers.is_some() {
        cfg.workers = cli.workers;
    }
    cfg.sequential |= cli.sequential;
    if !scope.pairs.is_empty() {
        cfg.pairs = scope.pairs.clone();
    }
    if !scope.copies.is_empty() {
        cfg.copies = scope.copies.clone();
    }
    if let Some(d) = scope.max_degree {
        cfg.max_degree = d;
        cfg.degree_overrides.clear();
    }
    let caps = &mut cfg.caps;
    caps.monomial = scope.monomial_cap.unwrap_or(caps.monomial);
    caps.module = scope.module_cap.unwrap_or(caps.module);
    caps.tensor = scope.tensor_cap.unwrap_or(caps.tensor);
    caps.group = scope.group_cap.unwrap_or(caps.group);
    cfg.box_bound = scope.box_bound.unwrap_or(cfg.box_bound);
    if cfg.pairs.is_empty() {
        cfg.pairs = ["AI:2", "AI:3", "AIII:2,1", "CI:2", "ADJ:sl2", "ADJ:sl3"].map(String::from).to_vec();
    }
    cfg.validate()
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| chevrest::Error::Config(format!("{}: {e}", path.display())))
            .and_then(|t| CampaignConfig::parse(&t))
        {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => CampaignConfig::default(),
    };

    let (lemmas, scope): (Vec<Lemma>, Option<&Scope>) = match &cli.command {
        Command::Catalog => (Vec::new(), None),
        Command::Verify(s) => (vec![Lemma::Theorem, Lemma::Lemma11], Some(s)),
        Command::Lemma12(s) => (vec![Lemma::Lemma12], Some(s)),
        Command::Lemma13(s) => (vec![Lemma::Lemma13], Some(s)),
        Command::Claim(s) => (vec![Lemma::Claim], Some(s)),
        Command::Molien(s) => (vec![Lemma::Molien], Some(s)),
        Command::Run(s) => {
            let l = if cfg.lemmas.is_empty() { Lemma::ALL.to_vec() } else { cfg.lemmas.clone() };
            (l, Some(s))
        }
        Command::All { scope, .. } => (Lemma::ALL.to_vec(), Some(scope)),
    };

    let default_scope = Scope::default();
    if let Err(e) = apply(&mut cfg, &cli, scope.unwrap_or(&default_scope)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    if let Command::Catalog = cli.command {
        let rows = catalog_rows(cfg.caps.group);
        let text = match cfg.format {
            Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
            Format::Tsv => {
                let mut s = String::from("id\tdim_g\tdim_k\tdim_p\trank\tw0_order\n");
                for r in &rows {
                    s.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        r["id"].as_str().unwrap_or(""),
                        r["dim_g"],
                        r["dim_k"],
                        r["dim_p"],
                        r["rank"],
                        r["w0_order"]
                    ));
                }
                s
            }
        };
        return match emit(&text, cfg.output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    cfg.lemmas = lemmas;
    let report = match &cli.command {
        Command::All { smoke: true, .. } => {
            let cfgs: Vec<CampaignConfig> = smoke_configs()
                .into_iter()
                .map(|mut c| {
                    c.workers = cfg.workers;
                    c.sequential = cfg.sequential;
                    c
                })
                .collect();
            run_many(&cfgs)
        }
        _ => run(&cfg),
    };
    let report = if cli.golden { report.golden() } else { report };
    if let Err(e) = emit(&report.render(cfg.format), cfg.output.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
