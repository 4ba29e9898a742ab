use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use helios_uf::harness::{emit_plots, run_experiment, write_trials, ExperimentConfig};

/// Run a seeded batch of decoding trials and write trials.csv, summary.csv,
/// histogram.csv and SVG plots. Flags override values from --config.
#[derive(Parser, Debug)]
#[command(name = "helios", version)]
struct Args {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    rounds: Option<usize>,
    /// phenomenological, circuit or erasure.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    /// Erasure probability.
    #[arg(long)]
    pe: Option<f64>,
    /// Standard deviation of per-edge error probabilities.
    #[arg(long)]
    p_sd: Option<f64>,
    #[arg(long)]
    wmax: Option<u32>,
    /// serial or distributed.
    #[arg(long)]
    decoder: Option<String>,
    #[arg(long)]
    context_n: Option<usize>,
    #[arg(long)]
    sliding_window: bool,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    clock_ns: Option<f64>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

impl Args {
    fn flag_pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let mut put = |k, x: Option<String>| {
            if let Some(x) = x {
                v.push((k, x));
            }
        };
        put("d", self.d.map(|x| x.to_string()));
        put("rounds", self.rounds.map(|x| x.to_string()));
        put("model", self.model.clone());
        put("p", self.p.map(|x| x.to_string()));
        put("p_e", self.pe.map(|x| x.to_string()));
        put("p_sd", self.p_sd.map(|x| x.to_string()));
        put("w_max", self.wmax.map(|x| x.to_string()));
        put("decoder", self.decoder.clone());
        put("context_n", self.context_n.map(|x| x.to_string()));
        put("sliding_window", self.sliding_window.then(|| "true".to_string()));
        put("trials", self.trials.map(|x| x.to_string()));
        put("seed", self.seed.map(|x| x.to_string()));
        put("clock_ns", self.clock_ns.map(|x| x.to_string()));
        v
    }
}

fn run(args: &Args) -> helios_uf::Result<()> {
    let mut text = match &args.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| helios_uf::Error::Io {
            path: path.clone(),
            source: e,
        })?,
        None => String::new(),
    };
    let pairs = args.flag_pairs();
    for (k, v) in &pairs {
        text.push_str(&format!("\n{k} = {v}"));
    }
    let cfg = ExperimentConfig::parse(&text)?;
    let ex = run_experiment(&cfg)?;

    std::fs::create_dir_all(&args.out_dir).map_err(|e| helios_uf::Error::Io {
        path: args.out_dir.clone(),
        source: e,
    })?;
    let trials_path = args.out_dir.join("trials.csv");
    let file = std::fs::File::create(&trials_path).map_err(|e| helios_uf::Error::Io {
        path: trials_path.clone(),
        source: e,
    })?;
    write_trials(std::io::BufWriter::new(file), &cfg, &ex.records)?;
    let mut written = vec![trials_path];
    if ex.summary.is_some() {
        written.extend(emit_plots(&args.out_dir, std::slice::from_ref(&ex))?);
    }

    print!("{}", cfg.emit());
    match &ex.summary {
        Some(s) => println!(
            "mean {:.2} cycles ({:.1} ns, {:.2} ns/round), p50 {} p97 {} p99.99 {} max {} cycles, \
             {:.3} iterations, {} logical errors",
            s.mean_cycles,
            s.mean_ns,
            s.mean_ns_per_round,
            s.p50_cycles,
            s.p97_cycles,
            s.p9999_cycles,
            s.max_cycles,
            s.mean_iterations,
            s.logical_errors
        ),
        None => println!("no trials"),
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            ExitCode::FAILURE
        }
    }
}
