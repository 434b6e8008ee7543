//! Thin CLI over the experiment drivers: one subcommand per study, flags
//! overriding an optional JSON config. Exit codes: 0 success, 2 for
//! configuration errors, 1 for runtime failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use norastab::experiments::{
    cmd_distance_scaling, cmd_distance_vs_depth, cmd_distance_vs_k, cmd_entropy, cmd_growth,
    cmd_weights, ExperimentConfig, ExperimentError, Outputs,
};
use norastab::nora::NoraMode;
use norastab::thermo::ThermoParams;

#[derive(Parser)]
#[command(
    name = "norastab",
    about = "Layered random-Clifford stabilizer code experiments",
    version
)]
struct Cli {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Encoder samples per data point.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Regions drawn per size in each distance sweep.
    #[arg(long, global = true)]
    distance_samples: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write SVG plots (default on); --no-plot disables.
    #[arg(long, global = true, overrides_with = "no_plot")]
    plot: bool,
    #[arg(long = "no-plot", global = true)]
    no_plot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NoraArgs {
    /// Qudit dimension (odd prime).
    #[arg(long)]
    d: Option<u8>,
    /// Gate arity.
    #[arg(long)]
    q: Option<usize>,
    /// Layer growth rate.
    #[arg(long)]
    r: Option<u64>,
    /// Sub-layers per layer circuit (the depth D).
    #[arg(long)]
    depth: Option<usize>,
    /// Logical qudits (fixed mode, together with --layers).
    #[arg(long)]
    k: Option<u64>,
    /// Layer count L (fixed mode).
    #[arg(long)]
    layers: Option<u32>,
    /// Scaling-mode exponent a (k = r^a).
    #[arg(long)]
    a: Option<u32>,
    /// Scaling-mode exponent b (L = a + b).
    #[arg(long)]
    b: Option<u32>,
}

impl NoraArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<(), String> {
        if let Some(d) = self.d {
            cfg.nora.d = d;
        }
        if let Some(q) = self.q {
            cfg.nora.q = q;
        }
        if let Some(r) = self.r {
            cfg.nora.r = r;
        }
        if let Some(depth) = self.depth {
            cfg.nora.depth = depth;
        }
        match (self.k, self.layers, self.a, self.b) {
            (None, None, None, None) => {}
            (k, layers, None, None) => {
                let (k0, l0) = match cfg.nora.mode {
                    NoraMode::Fixed { k, layers } => (k, layers),
                    NoraMode::Syk { .. } => (2, 7),
                };
                cfg.nora.mode = NoraMode::Fixed {
                    k: k.unwrap_or(k0),
                    layers: layers.unwrap_or(l0),
                };
            }
            (None, None, a, b) => {
                let (a0, b0) = match cfg.nora.mode {
                    NoraMode::Syk { a, b } => (a, b),
                    NoraMode::Fixed { .. } => (2, 1),
                };
                cfg.nora.mode = NoraMode::Syk {
                    a: a.unwrap_or(a0),
                    b: b.unwrap_or(b0),
                };
            }
            _ => {
                return Err("--k/--layers and --a/--b are mutually exclusive".to_string());
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct ThermoArgs {
    #[arg(long = "thermo-d")]
    thermo_d: Option<u32>,
    #[arg(long = "thermo-k")]
    thermo_k: Option<u64>,
    #[arg(long = "thermo-layers")]
    thermo_layers: Option<u32>,
    #[arg(long = "thermo-r")]
    thermo_r: Option<u64>,
    /// UV energy scale.
    #[arg(long)]
    lambda: Option<f64>,
    /// Energy decay rate.
    #[arg(long)]
    gamma: Option<f64>,
    /// Level-density exponent; defaults to ln r.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    /// Temperature grid points.
    #[arg(long)]
    points: Option<usize>,
}

impl ThermoArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<(), String> {
        let g = &mut cfg.thermo;
        let p = g.params;
        let mut params = ThermoParams::new(
            self.thermo_d.unwrap_or(p.d),
            self.thermo_k.unwrap_or(p.k),
            self.thermo_layers.unwrap_or(p.layers),
            self.thermo_r.unwrap_or(p.r),
            self.lambda.unwrap_or(p.lambda),
            self.gamma.unwrap_or(p.gamma),
            p.beta,
        )
        .map_err(|e| e.to_string())?;
        // Keep an explicitly configured alpha unless r replaced it.
        if let Some(alpha) = self.alpha {
            params.alpha = alpha;
        } else if self.thermo_r.is_none() {
            params.alpha = p.alpha;
        }
        g.params = params;
        if let Some(t) = self.t_min {
            g.t_min = t;
        }
        if let Some(t) = self.t_max {
            g.t_max = t;
        }
        if let Some(n) = self.points {
            g.points = n;
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Mean code distance against the layer-circuit depth D.
    DistanceVsDepth {
        #[command(flatten)]
        nora: NoraArgs,
        /// Comma-separated depth list, e.g. 1,2,3,4.
        #[arg(long, value_delimiter = ',')]
        depths: Option<Vec<usize>>,
    },
    /// Relative distance against the (inverse) system size.
    DistanceScaling {
        #[command(flatten)]
        nora: NoraArgs,
        /// L values (fixed mode) or a values (syk mode).
        #[arg(long, value_delimiter = ',')]
        scaling: Option<Vec<u32>>,
    },
    /// Mean distance against the number of logical qudits.
    DistanceVsK {
        #[command(flatten)]
        nora: NoraArgs,
        #[arg(long)]
        k_min: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Stabilizer weight distributions per layer (or per a).
    Weights {
        #[command(flatten)]
        nora: NoraArgs,
        #[arg(long, value_delimiter = ',')]
        depths: Option<Vec<usize>>,
    },
    /// Weight growth of a single string under random sub-layers.
    Growth {
        #[command(flatten)]
        nora: NoraArgs,
        /// Fixed register size.
        #[arg(long)]
        sites: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        growth_samples: Option<usize>,
    },
    /// Gibbs entropy of the layered projector Hamiltonian vs temperature.
    Entropy {
        #[command(flatten)]
        thermo: ThermoArgs,
    },
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, ExperimentError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.nora.seed = seed;
    }
    if let Some(samples) = cli.samples {
        cfg.samples = samples;
    }
    if let Some(ds) = cli.distance_samples {
        cfg.distance_samples = ds;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if cli.no_plot {
        cfg.plot = false;
    } else if cli.plot {
        cfg.plot = true;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Outputs, ExperimentError> {
    let mut cfg = build_config(cli)?;
    let apply = |r: Result<(), String>| r.map_err(ExperimentError::Config);
    match &cli.command {
        Command::DistanceVsDepth { nora, depths } => {
            apply(nora.apply(&mut cfg))?;
            if let Some(depths) = depths {
                cfg.depths = depths.clone();
            }
            cfg.validate()?;
            cmd_distance_vs_depth(&cfg)
        }
        Command::DistanceScaling { nora, scaling } => {
            apply(nora.apply(&mut cfg))?;
            if let Some(scaling) = scaling {
                cfg.scaling = scaling.clone();
            }
            cfg.validate()?;
            cmd_distance_scaling(&cfg)
        }
        Command::DistanceVsK { nora, k_min, k_max } => {
            apply(nora.apply(&mut cfg))?;
            if let Some(k) = k_min {
                cfg.k_min = *k;
            }
            if let Some(k) = k_max {
                cfg.k_max = *k;
            }
            cfg.validate()?;
            cmd_distance_vs_k(&cfg)
        }
        Command::Weights { nora, depths } => {
            apply(nora.apply(&mut cfg))?;
            if let Some(depths) = depths {
                cfg.depths = depths.clone();
            }
            cfg.validate()?;
            cmd_weights(&cfg)
        }
        Command::Growth {
            nora,
            sites,
            steps,
            growth_samples,
        } => {
            apply(nora.apply(&mut cfg))?;
            if let Some(n) = sites {
                cfg.growth_sites = *n;
            }
            if let Some(s) = steps {
                cfg.growth_steps = *s;
            }
            if let Some(s) = growth_samples {
                cfg.growth_samples = *s;
            }
            cfg.validate()?;
            cmd_growth(&cfg)
        }
        Command::Entropy { thermo } => {
            apply(thermo.apply(&mut cfg))?;
            cfg.validate()?;
            cmd_entropy(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outputs) => {
            println!("wrote {}", outputs.csv.display());
            println!("wrote {}", outputs.json.display());
            if let Some(svg) = outputs.svg {
                println!("wrote {}", svg.display());
            }
            ExitCode::SUCCESS
        }
        Err(err @ (ExperimentError::Config(_) | ExperimentError::Json(_))) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
