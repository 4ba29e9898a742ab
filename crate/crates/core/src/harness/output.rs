use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::{Experiment, ExperimentConfig, TrialRecord};

pub const TRIALS_SCHEMA: &str = "# helios-uf trials v1";
pub const SUMMARY_SCHEMA: &str = "# helios-uf summary v1";
pub const HISTOGRAM_SCHEMA: &str = "# helios-uf histogram v1";

const SUMMARY_COLUMNS: [&str; 26] = [
    "d",
    "rounds",
    "model",
    "p",
    "p_e",
    "p_sd",
    "w_max",
    "decoder",
    "context_n",
    "sliding_window",
    "trials",
    "seed",
    "clock_ns",
    "mean_cycles",
    "p50_cycles",
    "p97_cycles",
    "p9999_cycles",
    "max_cycles",
    "mean_ns",
    "p50_ns",
    "p97_ns",
    "p9999_ns",
    "mean_ns_per_round",
    "mean_iterations",
    "logical_errors",
    "logical_error_rate",
];

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn config_comment(cfg: &ExperimentConfig) -> String {
    let pairs: Vec<String> = cfg
        .emit()
        .lines()
        .map(|l| l.replace(" = ", "="))
        .collect();
    format!("# config {}", pairs.join(" "))
}

/// Writes one row per trial after the schema line and a comment carrying the
/// config, which together are enough to recompute the summary.
pub fn write_trials<W: Write>(mut out: W, cfg: &ExperimentConfig, records: &[TrialRecord]) -> Result<()> {
    let io = |e| Error::io("<trials>", e);
    writeln!(out, "{TRIALS_SCHEMA}").map_err(io)?;
    writeln!(out, "{}", config_comment(cfg)).map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record([
            "trial",
            "defects",
            "cycles",
            "ns",
            "iterations",
            "clusters",
            "logical_flip",
            "annihilated",
        ])?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

/// Reads a trials CSV back into its config and records.
pub fn read_trials<R: Read>(mut input: R) -> Result<(ExperimentConfig, Vec<TrialRecord>)> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::io("<trials>", e))?;
    let mut lines = text.lines();
    if lines.next() != Some(TRIALS_SCHEMA) {
        return Err(Error::Format(format!("trials CSV must start with `{TRIALS_SCHEMA}`")));
    }
    let cfg_line = lines
        .next()
        .and_then(|l| l.strip_prefix("# config "))
        .ok_or_else(|| Error::Format("missing `# config` line".into()))?;
    let cfg_text: String = cfg_line.split(' ').map(|kv| format!("{kv}\n")).collect();
    let cfg = ExperimentConfig::parse(&cfg_text)?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let records = rdr.deserialize().collect::<std::result::Result<Vec<TrialRecord>, _>>()?;
    Ok((cfg, records))
}

pub fn write_summary<W: Write>(mut out: W, experiments: &[Experiment]) -> Result<()> {
    writeln!(out, "{SUMMARY_SCHEMA}").map_err(|e| Error::io("<summary>", e))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_COLUMNS)?;
    for ex in experiments {
        let Some(s) = &ex.summary else { continue };
        let c = &ex.config;
        w.write_record([
            c.d.to_string(),
            c.rounds.to_string(),
            c.model.to_string(),
            c.p.to_string(),
            c.p_e.to_string(),
            c.p_sd.to_string(),
            c.w_max.to_string(),
            c.decoder.to_string(),
            c.context_n.to_string(),
            c.sliding_window.to_string(),
            s.trials.to_string(),
            c.seed.to_string(),
            c.clock_ns.to_string(),
            s.mean_cycles.to_string(),
            s.p50_cycles.to_string(),
            s.p97_cycles.to_string(),
            s.p9999_cycles.to_string(),
            s.max_cycles.to_string(),
            s.mean_ns.to_string(),
            s.p50_ns.to_string(),
            s.p97_ns.to_string(),
            s.p9999_ns.to_string(),
            s.mean_ns_per_round.to_string(),
            s.mean_iterations.to_string(),
            s.logical_errors.to_string(),
            s.logical_error_rate.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<summary>", e))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramBin {
    pub cycles: u64,
    pub count: u64,
}

/// Trial counts per cycle value, ascending, without empty bins.
pub fn histogram(records: &[TrialRecord]) -> Vec<HistogramBin> {
    let mut counts = BTreeMap::new();
    for r in records {
        *counts.entry(r.cycles).or_insert(0u64) += 1;
    }
    counts
        .into_iter()
        .map(|(cycles, count)| HistogramBin { cycles, count })
        .collect()
}

fn write_histogram<W: Write>(mut out: W, experiments: &[Experiment]) -> Result<()> {
    writeln!(out, "{HISTOGRAM_SCHEMA}").map_err(|e| Error::io("<histogram>", e))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["experiment", "d", "p", "cycles", "ns", "count"])?;
    for (i, ex) in experiments.iter().enumerate() {
        for b in histogram(&ex.records) {
            w.write_record([
                i.to_string(),
                ex.config.d.to_string(),
                ex.config.p.to_string(),
                b.cycles.to_string(),
                (b.cycles as f64 * ex.config.clock_ns).to_string(),
                b.count.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<histogram>", e))?;
    Ok(())
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn svg_frame(title: &str, xlabel: &str, ylabel: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        W / 2.0
    );
    let (x0, y0, x1) = (MARGIN, H - MARGIN, W - MARGIN / 2.0);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{}" stroke="black"/>"#, MARGIN / 2.0);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        (x0 + x1) / 2.0,
        H - 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{ylabel}</text>"#,
        H / 2.0,
        H / 2.0
    );
    s
}

fn ticks(s: &mut String, lo: f64, hi: f64, horizontal: bool) {
    for k in 0..=4 {
        let v = lo + (hi - lo) * k as f64 / 4.0;
        let label = if hi - lo >= 10.0 { format!("{v:.0}") } else { format!("{v:.2}") };
        if horizontal {
            let x = MARGIN + (W - 1.5 * MARGIN) * k as f64 / 4.0;
            let _ = writeln!(s, r#"<text x="{x}" y="{}" text-anchor="middle">{label}</text>"#, H - MARGIN + 16.0);
        } else {
            let y = H - MARGIN - (H - 1.5 * MARGIN) * k as f64 / 4.0;
            let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#, MARGIN - 4.0, y + 4.0);
        }
    }
}

/// Latency distribution of each experiment as a step outline, log-scaled counts.
pub fn render_histogram_svg(experiments: &[Experiment]) -> String {
    let mut s = svg_frame("Latency distribution", "latency (ns)", "log10(trials)");
    let hists: Vec<(f64, Vec<HistogramBin>)> = experiments
        .iter()
        .map(|e| (e.config.clock_ns, histogram(&e.records)))
        .collect();
    let max_ns = hists
        .iter()
        .flat_map(|(c, h)| h.iter().map(move |b| b.cycles as f64 * c))
        .fold(1.0, f64::max);
    let max_log = hists
        .iter()
        .flat_map(|(_, h)| h.iter().map(|b| (b.count as f64).log10()))
        .fold(1.0, f64::max);
    ticks(&mut s, 0.0, max_ns, true);
    ticks(&mut s, 0.0, max_log, false);
    let px = |ns: f64| MARGIN + (W - 1.5 * MARGIN) * ns / max_ns;
    let py = |l: f64| H - MARGIN - (H - 1.5 * MARGIN) * l / max_log;
    for (i, (clock, h)) in hists.iter().enumerate() {
        let points: Vec<String> = h
            .iter()
            .map(|b| format!("{:.1},{:.1}", px(b.cycles as f64 * clock), py((b.count as f64).log10())))
            .collect();
        let colour = COLOURS[i % COLOURS.len()];
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let c = &experiments[i].config;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{colour}" text-anchor="end">d={} p={}</text>"#,
            W - MARGIN,
            MARGIN + 14.0 * i as f64,
            c.d,
            c.p
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Mean ns per round against distance, one series per distinct (model, p, w_max, n).
pub fn render_scaling_svg(experiments: &[Experiment]) -> String {
    let mut s = svg_frame("Decoding time per round", "code distance d", "mean ns / round");
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for e in experiments {
        let Some(sum) = &e.summary else { continue };
        let c = &e.config;
        let key = format!("{} p={} wmax={} n={}", c.model, c.p, c.w_max, c.context_n);
        series.entry(key).or_default().push((c.d as f64, sum.mean_ns_per_round));
    }
    let pts = series.values().flatten();
    let (dmin, dmax) = pts.clone().fold((f64::MAX, f64::MIN), |(a, b), &(d, _)| (a.min(d), b.max(d)));
    let ymax = pts.fold(1.0, |a, &(_, y)| f64::max(a, y)) * 1.1;
    let (dmin, dmax) = if dmin >= dmax { (dmin - 1.0, dmin + 1.0) } else { (dmin, dmax) };
    ticks(&mut s, dmin, dmax, true);
    ticks(&mut s, 0.0, ymax, false);
    let px = |d: f64| MARGIN + (W - 1.5 * MARGIN) * (d - dmin) / (dmax - dmin);
    let py = |y: f64| H - MARGIN - (H - 1.5 * MARGIN) * y / ymax;
    for (i, (label, mut pts)) in series.into_iter().enumerate() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let colour = COLOURS[i % COLOURS.len()];
        let line: Vec<String> = pts.iter().map(|&(d, y)| format!("{:.1},{:.1}", px(d), py(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            line.join(" ")
        );
        for &(d, y) in &pts {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{colour}"/>"#, px(d), py(y));
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{colour}" text-anchor="end">{label}</text>"#,
            W - MARGIN,
            MARGIN + 14.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes `summary.csv`, `histogram.csv`, `latency.svg` and `scaling.svg`
/// into `dir` and returns the paths written.
pub fn emit_plots(dir: &Path, experiments: &[Experiment]) -> Result<Vec<PathBuf>> {
    if experiments.is_empty() {
        return Err(Error::EmptyInput);
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut emit = |name: &str, f: &dyn Fn(&mut BufWriter<File>) -> Result<()>| -> Result<()> {
        let path = dir.join(name);
        let mut out = create(&path)?;
        f(&mut out).map_err(|e| relabel(e, &path))?;
        out.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };
    emit("summary.csv", &|o| write_summary(o, experiments))?;
    emit("histogram.csv", &|o| write_histogram(o, experiments))?;
    emit("latency.svg", &|o| {
        o.write_all(render_histogram_svg(experiments).as_bytes())
            .map_err(|e| Error::io("", e))
    })?;
    emit("scaling.svg", &|o| {
        o.write_all(render_scaling_svg(experiments).as_bytes())
            .map_err(|e| Error::io("", e))
    })?;
    Ok(written)
}

fn relabel(e: Error, path: &Path) -> Error {
    match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}
