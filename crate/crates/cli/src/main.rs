mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use sl3web::error::{Error, FormatError};
use sl3web::generator::{dominant_path_count, generate_closed, generate_non_elliptic};
use sl3web::kuperberg::{bracket_with_order, classify, decompose, ReductionOrder, Verdict};
use sl3web::redgraph::{
    count_fitting_orientations, dual_graph, enumerate_pairings, enumerate_red_graphs, find_exact_red_graph,
    g_reduction, is_admissible, is_exact, projection_degree_shift, RedGraph,
};
use sl3web::sign::SignSequence;
use sl3web::verify::{run_all, VerifyConfig};
use sl3web::web::dot::{dual_to_dot, web_to_dot};
use sl3web::web::io::{parse_web, web_to_json, write_corpus, write_web};
use sl3web::web::{canonical_form, fixtures, Web};

use report::{Format, Report};

/// Webs in a file are JSON; `@name` loads a bundled example and `-` reads stdin.
#[derive(Parser)]
#[command(name = "sl3web", version, about = "sl3 webs: brackets, red graphs and decompositions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Vertex bound: red graph size, generated web size or stress search size.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[arg(long, global = true)]
    max_boundary: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write a Graphviz drawing here.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the structural invariants of a web.
    Validate { input: String },
    /// Kuperberg bracket of a closed web; `--seed` picks faces at random.
    Bracket { input: String },
    /// Virtual (in)decomposability from the bracket of the closure.
    Classify { input: String },
    /// Red graphs of a web, with their level and fitting orientations.
    Redgraphs {
        input: String,
        /// Only exact red graphs.
        #[arg(long)]
        exact: bool,
    },
    /// Reduce along a red graph (an exact one by default).
    Reduce {
        input: String,
        /// Region ids of the red faces, comma separated.
        #[arg(long, value_delimiter = ',')]
        faces: Vec<usize>,
        /// Index into the enumerated pairings.
        #[arg(long, default_value_t = 0)]
        pairing: usize,
        /// Write the reduced web here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a web-module into summands.
    Decompose {
        input: String,
        /// Write the factor webs here, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate non-elliptic webs, or draw random closed webs with `--closed`.
    Generate {
        /// Boundary sequence such as `+-+-`; every admissible one up to `--max-boundary` when absent.
        #[arg(long)]
        signs: Option<SignSequence>,
        /// Number of random closed webs instead of an enumeration.
        #[arg(long)]
        closed: Option<usize>,
        /// Directory for corpus files and `manifest.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Verify {
        /// Time budget of the stress search in seconds.
        #[arg(long)]
        stress_secs: Option<u64>,
    },
    /// Write a web in normal form.
    Export {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command that ran but whose answer is a failure.
#[derive(Debug)]
struct Outcome {
    code: u8,
    message: String,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Outcome {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == 4 {
                eprintln!("!!! THEOREM VIOLATED !!!");
            }
            eprintln!("error: {}", chain(&e));
            ExitCode::from(code)
        }
    }
}

/// The error chain, leaving out causes already quoted by their parent.
fn chain(e: &anyhow::Error) -> String {
    let mut parts: Vec<String> = Vec::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !parts.last().is_some_and(|p| p.ends_with(&msg)) {
            parts.push(msg);
        }
    }
    parts.join(": ")
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(o) = e.downcast_ref::<Outcome>() {
        return o.code;
    }
    if e.downcast_ref::<FormatError>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_contradiction() => 4,
        _ => 3,
    }
}

fn load(input: &str) -> Result<Web> {
    if let Some(name) = input.strip_prefix('@') {
        return fixtures::by_name(name).ok_or_else(|| {
            anyhow!(FormatError::Reference(format!("no bundled web {name:?}; known: {}", fixtures::NAMES.join(", "))))
        });
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    Ok(parse_web(&text).with_context(|| format!("parsing {input}"))?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn hex(bytes: &[u8]) -> String {
    // FNV-1a, enough to compare webs by eye.
    let h = bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    format!("{h:016x}")
}

fn describe(r: &mut Report, w: &Web) {
    r.put("boundary", w.signs().to_string())
        .put("vertices", w.num_vertices())
        .put("edges", w.num_edges())
        .put("circles", w.circle_count())
        .put("canonical", hex(&canonical_form(w)));
}

fn run(cli: &Cli) -> Result<String> {
    let mut r = Report::new();
    match &cli.verb {
        Verb::Validate { input } => {
            let w = load(input)?;
            let violations = w.validate();
            r.put("valid", violations.is_empty());
            if violations.is_empty() {
                describe(&mut r, &w);
                r.put("non_elliptic", w.is_non_elliptic()?);
                dot_web(cli, &w)?;
            }
            r.put("violation", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            if !violations.is_empty() {
                print!("{}", r.render(cli.format));
                return Err(Outcome { code: 3, message: format!("{} violation(s)", violations.len()) }.into());
            }
        }
        Verb::Bracket { input } => {
            let w = load(input)?;
            let order = cli.seed.map_or(ReductionOrder::Deterministic, ReductionOrder::Random);
            let b = bracket_with_order(&w, &order)?;
            r.put("bracket", b.to_string()).put("value_at_one", b.eval_at_one().to_string());
            dot_web(cli, &w)?;
        }
        Verb::Classify { input } => {
            let w = load(input)?;
            let c = classify(&w)?;
            let summary = match c.verdict {
                Verdict::Indecomposable => format!("indecomposable, bracket {}", c.bracket),
                Verdict::Decomposable => {
                    format!("decomposable, level {}, bracket {}", c.level.expect("decomposable has a level"), c.bracket)
                }
            };
            r.put("verdict", c.verdict)
                .put("level", c.level)
                .put("bracket", c.bracket.to_string())
                .put("boundary_length", c.boundary_length)
                .put("summary", summary);
            dot_web(cli, &w)?;
        }
        Verb::Redgraphs { input, exact } => {
            let w = load(input)?;
            let graphs = enumerate_red_graphs(&w, cli.max_vertices.unwrap_or(usize::MAX))?;
            let shown: Vec<&RedGraph> = graphs.iter().filter(|g| !exact || is_exact(g)).collect();
            let mut lines = Vec::new();
            for g in &shown {
                lines.push(json!({
                    "faces": g.faces,
                    "edges": g.num_edges(),
                    "level": g.level,
                    "fair": g.is_fair(),
                    "admissible": is_admissible(g),
                    "exact": is_exact(g),
                    "fitting": count_fitting_orientations(g)?,
                }));
            }
            r.put("count", shown.len()).put("graph", lines);
            if let Some(path) = &cli.dot {
                let red = shown.first().map_or(&[][..], |g| &g.faces[..]);
                write_file(path, &dual_to_dot(&w, red)?)?;
            }
        }
        Verb::Reduce { input, faces, pairing, out } => {
            let w = load(input)?;
            let g = if faces.is_empty() {
                find_exact_red_graph(&w)?
                    .ok_or_else(|| Error::Precondition("no exact red graph; pass --faces".into()))?
            } else {
                RedGraph::new(&w, &dual_graph(&w)?, faces)?
            };
            let pairings = enumerate_pairings(&w, &g)?;
            let p = pairings.get(*pairing).ok_or_else(|| {
                Error::Precondition(format!("pairing {pairing} requested, {} available", pairings.len()))
            })?;
            let reduced = g_reduction(&w, &g, p)?;
            r.put("faces", &g.faces)
                .put("level", g.level)
                .put("exact", is_exact(&g))
                .put("pairings", pairings.len())
                .put("shift", projection_degree_shift(&g, p))
                .put("vertices_before", w.num_vertices())
                .put("vertices_after", reduced.num_vertices())
                .put("canonical", hex(&canonical_form(&reduced)));
            if let Some(path) = out {
                write_file(path, &write_web(&reduced))?;
            } else {
                r.put("web", serde_json::to_string(&web_to_json(&reduced))?);
            }
            dot_web(cli, &reduced)?;
        }
        Verb::Decompose { input, out } => {
            let w = load(input)?;
            let d = decompose(&w)?;
            let factors: Vec<_> = d
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "shift": f.shift,
                        "status": f.status,
                        "boundary": f.web.signs().to_string(),
                        "vertices": f.web.num_vertices(),
                        "canonical": hex(&canonical_form(&f.web)),
                    })
                })
                .collect();
            r.put("factors", d.factors.len())
                .put("shifts", d.shifts())
                .put("remainder", d.remainder)
                .put("steps", d.steps.len())
                .put("factor", factors);
            if let Some(path) = out {
                write_file(path, &write_corpus(d.factors.iter().map(|f| &f.web)))?;
            }
            dot_web(cli, &w)?;
        }
        Verb::Generate { signs, closed, out } => {
            if let Some(raw) = generate(cli, &mut r, signs.as_ref(), *closed, out.as_deref())? {
                return Ok(raw);
            }
        }
        Verb::Verify { stress_secs } => {
            let mut cfg = VerifyConfig::default();
            if let Some(b) = cli.max_boundary {
                cfg.max_boundary = b;
            }
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(v) = cli.max_vertices {
                cfg.stress_max_vertices = v;
            }
            if let Some(s) = stress_secs {
                cfg.stress_budget = Duration::from_secs(*s);
            }
            let reports = run_all(&cfg)?;
            let failed = reports.iter().filter(|c| !c.passed).count();
            match cli.format {
                Format::Text => {
                    let mut s = String::new();
                    for c in &reports {
                        s.push_str(&c.summary_line());
                        s.push('\n');
                        for f in c.failures.iter() {
                            s.push_str(&format!("    counterexample: {f}\n"));
                        }
                    }
                    s.push_str(&format!("passed: {}/{}\n", reports.len() - failed, reports.len()));
                    print!("{s}");
                }
                Format::Structured => println!("{}", serde_json::to_string_pretty(&reports)?),
            }
            if failed > 0 {
                return Err(Outcome { code: 4, message: format!("{failed} criterion(s) failed") }.into());
            }
            return Ok(String::new());
        }
        Verb::Export { input, out } => {
            let w = load(input)?;
            w.ensure_valid()?;
            dot_web(cli, &w)?;
            let text = write_web(&w) + "\n";
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    describe(&mut r, &w);
                    r.put("written", path.display().to_string());
                }
                None => return Ok(text),
            }
        }
    }
    Ok(r.render(cli.format))
}

fn dot_web(cli: &Cli, w: &Web) -> Result<()> {
    match &cli.dot {
        Some(path) => write_file(path, &web_to_dot(w)),
        None => Ok(()),
    }
}

fn generate(
    cli: &Cli,
    r: &mut Report,
    signs: Option<&SignSequence>,
    closed: Option<usize>,
    out: Option<&Path>,
) -> Result<Option<String>> {
    let seed = cli.seed.unwrap_or(0);
    if let Some(count) = closed {
        let max_v = cli.max_vertices.unwrap_or(20);
        let webs = generate_closed(max_v, count, seed);
        let corpus = write_corpus(&webs);
        r.put("seed", seed).put("count", webs.len()).put("max_vertices", max_v);
        match out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                write_file(&dir.join("closed.webs"), &corpus)?;
                let manifest = json!({"kind": "closed", "seed": seed, "max_vertices": max_v, "files": [
                    {"file": "closed.webs", "count": webs.len()}
                ]});
                write_file(&dir.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
            }
            None if cli.format == Format::Text => return Ok(Some(corpus)),
            None => {
                r.put("webs", webs.iter().map(web_to_json).collect::<Vec<_>>());
            }
        }
        return Ok(None);
    }
    let max_v = cli.max_vertices.unwrap_or(12);
    let sequences: Vec<SignSequence> = match signs {
        Some(s) => {
            if !s.is_admissible() {
                return Err(Error::NotAdmissible(s.clone()).into());
            }
            vec![s.clone()]
        }
        None => {
            let max_b = cli.max_boundary.unwrap_or(6);
            (0..=max_b).flat_map(SignSequence::all_of_length).filter(SignSequence::is_admissible).collect()
        }
    };
    let results: Vec<(SignSequence, Vec<Web>)> = sequences
        .par_iter()
        .map(|s| generate_non_elliptic(s, max_v).map(|w| (s.clone(), w)))
        .collect::<std::result::Result<_, _>>()?;
    let mut entries = Vec::new();
    for (s, webs) in &results {
        let paths = dominant_path_count(s);
        if webs.len() as u64 > paths {
            bail!(Error::Contradiction(format!("{} webs for {s}, more than {paths} dominant paths", webs.len())));
        }
        let compact: String = s.iter().map(|x| x.to_string()).collect();
        let file = format!("{}.webs", if s.is_empty() { "empty" } else { &compact });
        if let Some(dir) = out {
            fs::create_dir_all(dir)?;
            write_file(&dir.join(&file), &write_corpus(webs))?;
        }
        entries.push(json!({
            "signs": compact,
            "file": file,
            "count": webs.len(),
            "paths": paths,
            "complete": webs.len() as u64 == paths,
        }));
    }
    if let Some(dir) = out {
        let manifest = json!({"kind": "non-elliptic", "max_vertices": max_v, "files": entries});
        write_file(&dir.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
    } else if signs.is_some() && cli.format == Format::Text {
        return Ok(Some(write_corpus(&results[0].1)));
    }
    r.put("max_vertices", max_v).put("sequence", entries);
    Ok(None)
}
