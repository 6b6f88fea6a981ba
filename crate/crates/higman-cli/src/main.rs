//! Command-line explorer for Higman-like groups acting on their CAT(0)
//! square complexes.
//!
//! Exit codes: 0 = success / affirmative answer, 1 = negative answer
//! (nontrivial word, failed check, nothing found), 2 = usage, parse or
//! resource errors. Diagnostics go to standard error; results to standard
//! output. Output is deterministic for a fixed configuration and seed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use higman_core::complex::{Explorer, ResourceCaps, VertexId};
use higman_core::diagram::{
    diagram_from_json, diagram_to_json, fill_bounded, gauss_bonnet, is_reduced, FillResult,
};
use higman_core::export;
use higman_core::flats::{FlatBuilder, FlatSpec};
use higman_core::morphism::{
    automorphism_decompose, exponent_probe, hom_check, special_image_check, EndoCandidate,
    HomCheck,
};
use higman_core::words::{Gen, HElem, HWord, HigmanGroup};
use higman_core::Error;

#[derive(Parser)]
#[command(name = "higman", version, about = "word problem, balls, flats, diagrams and morphisms for squares of Baumslag-Solitar groups")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Group parameters m0,m1,m2,m3 (each >= 2)
    #[arg(long, global = true, value_name = "M0,M1,M2,M3")]
    params: Option<String>,
    /// Optional config file with key=value lines (params, truncation,
    /// radius, max_squares, format, seed); explicit flags win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    /// Output format for exports
    #[arg(long, global = true, value_parser = ["text", "json", "dot"])]
    format: Option<String>,
    /// Seed for randomized audits
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on the number of squares any construction may hold
    #[arg(long, global = true)]
    max_squares: Option<usize>,
}

#[derive(Clone)]
struct Config {
    params: [u32; 4],
    format: String,
    seed: u64,
    max_squares: usize,
    default_radius: u32,
    default_truncation: u32,
}

impl Config {
    fn resolve(args: &ConfigArgs) -> Result<Config, String> {
        let mut cfg = Config {
            params: [2, 2, 2, 2],
            format: "text".into(),
            seed: 0,
            max_squares: 50_000,
            default_radius: 2,
            default_truncation: 3,
        };
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config file {path}: {e}"))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
                let (key, value) = (key.trim(), value.trim());
                match key {
                    "params" => cfg.params = parse_params(value)?,
                    "m0" | "m1" | "m2" | "m3" => {
                        let idx = key[1..].parse::<usize>().unwrap();
                        cfg.params[idx] =
                            value.parse().map_err(|_| format!("bad {key}: {value}"))?;
                    }
                    "format" => cfg.format = value.to_string(),
                    "seed" => {
                        cfg.seed = value.parse().map_err(|_| format!("bad seed: {value}"))?
                    }
                    "max_squares" => {
                        cfg.max_squares =
                            value.parse().map_err(|_| format!("bad max_squares: {value}"))?
                    }
                    "radius" => {
                        cfg.default_radius =
                            value.parse().map_err(|_| format!("bad radius: {value}"))?
                    }
                    "truncation" => {
                        cfg.default_truncation =
                            value.parse().map_err(|_| format!("bad truncation: {value}"))?
                    }
                    _ => return Err(format!("{path}:{}: unknown key {key}", lineno + 1)),
                }
            }
        }
        if let Some(p) = &args.params {
            cfg.params = parse_params(p)?;
        }
        if let Some(f) = &args.format {
            cfg.format = f.clone();
        }
        if let Some(s) = args.seed {
            cfg.seed = s;
        }
        if let Some(m) = args.max_squares {
            cfg.max_squares = m;
        }
        Ok(cfg)
    }

    fn group(&self) -> Result<HigmanGroup, String> {
        HigmanGroup::new(self.params).map_err(|e| e.to_string())
    }

    fn explorer(&self) -> Result<Explorer, String> {
        Ok(Explorer::with_caps(self.group()?, ResourceCaps { max_squares: self.max_squares }))
    }
}

fn parse_params(s: &str) -> Result<[u32; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated parameters, got {}", parts.len()));
    }
    let mut m = [0u32; 4];
    for (i, p) in parts.iter().enumerate() {
        m[i] = p.parse().map_err(|_| format!("bad parameter {p}"))?;
    }
    Ok(m)
}

#[derive(Subcommand)]
enum Command {
    /// Word problem: is the word trivial? (exit 0 trivial, 1 nontrivial)
    Wp { word: String },
    /// Reduced block decomposition of a word
    Nf { word: String },
    /// Build a ball of the complex and audit its invariants
    Ball {
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
        /// Export instead of the text summary
        #[arg(long, value_parser = ["dot", "json"])]
        export: Option<String>,
    },
    /// Truncated link of a vertex with its girth report
    Link {
        /// Corner type 0..3 of the vertex
        #[arg(short = 'v', long)]
        corner: u8,
        /// Representative square word (defaults to the fundamental square)
        #[arg(long, default_value = "")]
        word: String,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Enumerate 2x2 grids in a ball and audit the label law
    Grids {
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
    },
    /// Intersection graphs and the oriented-skeleton comparison
    Gamma {
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
    },
    /// Build a flat patch: local isometry audit and label growth
    Flat {
        /// Base type i in 0..3
        #[arg(short = 'i', long, default_value_t = 0)]
        base: u8,
        /// Axis sequence entries, e.g. 1,1,1 (used for all four axes)
        #[arg(long, value_name = "K1,K2,..")]
        seq: Option<String>,
        /// Per-axis overrides
        #[arg(long)]
        seq0: Option<String>,
        #[arg(long)]
        seq1: Option<String>,
        #[arg(long)]
        seq2: Option<String>,
        #[arg(long)]
        seq3: Option<String>,
        #[arg(short, long, default_value_t = 3)]
        radius: u32,
    },
    /// Disc diagram operations
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Classify an isometry as elliptic / hyperbolic / unknown
    Classify {
        word: String,
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
    },
    /// Fixed vertices and edges of an element within a ball
    Fixset {
        word: String,
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
    },
    /// Weak-acylindricity audit on a ball
    Acyl {
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
        #[arg(long, default_value_t = 200)]
        spot_checks: usize,
    },
    /// Free-subgroup certificate from two elliptic elements
    Freecert {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(short, default_value_t = 1)]
        k: u32,
        #[arg(short, default_value_t = 1)]
        l: u32,
        #[arg(short = 'L', long, default_value_t = 6)]
        max_length: u32,
        #[arg(short, long)]
        radius: Option<u32>,
        #[arg(short = 'N', long)]
        truncation: Option<u32>,
    },
    /// Check whether four images define a homomorphism
    Hom {
        w0: String,
        w1: String,
        w2: String,
        w3: String,
        /// Also search the ball for the image vertices of the corners
        #[arg(long)]
        images: bool,
    },
    /// Exhaustive exponent probe over n_i in [-range, range] \ {0}
    ProbeExponents {
        #[arg(long, default_value_t = 3)]
        range: i64,
    },
    /// Decompose an automorphism candidate as inner * shift
    Decompose {
        w0: String,
        w1: String,
        w2: String,
        w3: String,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// Search for a reduced filling of a trivial word
    Fill {
        word: String,
        #[arg(long, default_value_t = 64)]
        max_squares: usize,
    },
    /// Audit a diagram JSON file: Gauss-Bonnet and reducedness
    Audit { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_word(s: &str) -> Result<HWord, String> {
    HWord::parse(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = Config::resolve(&cli.config)?;
    let group = cfg.group()?;
    let ok = ExitCode::SUCCESS;
    let negative = ExitCode::from(1);
    match &cli.command {
        Command::Wp { word } => {
            let w = parse_word(word)?;
            if group.is_trivial(&w) {
                println!("trivial");
                Ok(ok)
            } else {
                println!("nontrivial");
                Ok(negative)
            }
        }
        Command::Nf { word } => {
            let w = parse_word(word)?;
            let elem = group.h_reduce(&w);
            match &elem {
                HElem::Identity => println!("identity"),
                other => println!("{}", other.describe()),
            }
            println!("blocks: {}", elem.block_count());
            println!(
                "abelianization: {:?}",
                group.abelianization_class(&w)
            );
            Ok(ok)
        }
        Command::Ball { radius, truncation, export: exp } => {
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            match exp.as_deref().unwrap_or(match cfg.format.as_str() {
                "dot" => "dot",
                "json" => "json",
                _ => "text",
            }) {
                "dot" => print!("{}", export::ball_to_dot(&ball)),
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&export::ball_to_json(&ball))
                        .map_err(|e| e.to_string())?
                ),
                _ => {
                    // audit: every dual edge reproduces its adjacency
                    for de in &ball.dual_edges {
                        let lhs = ball.squares[de.from]
                            .word
                            .concat(&HWord::gen_pow(de.gen, de.exp));
                        if !group.equal(&lhs, &ball.squares[de.to].word) {
                            return Err(format!(
                                "dual edge {}->{} fails to reproduce adjacency",
                                de.from, de.to
                            ));
                        }
                    }
                    println!(
                        "ball r={r} N={n}: {} squares, {} dual edges, {} vertices, {} edges; adjacency audit clean",
                        ball.squares.len(),
                        ball.dual_edges.len(),
                        ball.vertices.len(),
                        ball.edges.len()
                    );
                }
            }
            Ok(ok)
        }
        Command::Link { corner, word, truncation, depth } => {
            if *corner > 3 {
                return Err("corner must be 0..3".into());
            }
            let x = cfg.explorer()?;
            let v = VertexId { word: parse_word(word)?, corner: Gen::new(*corner) };
            let n = truncation.unwrap_or(cfg.default_truncation);
            let link = x.link_graph(&v, n, *depth);
            match cfg.format.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&export::link_to_json(&link))
                        .map_err(|e| e.to_string())?
                ),
                "dot" => print!("{}", export::link_to_dot(&link)),
                _ => {
                    println!(
                        "link at corner {corner}: {}+{} cosets, {} squares, simple={}, connected={}, 4-cycle found={}",
                        link.lo_cosets.len(),
                        link.hi_cosets.len(),
                        link.link_edges.len(),
                        link.simple,
                        link.connected,
                        link.four_cycle.is_some()
                    );
                    println!(
                        "girth: {}",
                        if link.four_cycle.is_some() { "exactly 4" } else { ">= 4 (no cycle in range)" }
                    );
                }
            }
            if link.simple {
                Ok(ok)
            } else {
                Ok(negative)
            }
        }
        Command::Grids { radius, truncation } => {
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            let grids = x.enumerate_grids(&ball);
            let mut violations = 0;
            for g in &grids {
                let check = x.classify_grid(g);
                if !check.law_holds || !check.bs_product_trivial {
                    violations += 1;
                    eprintln!("violating grid: {g:?}");
                }
            }
            println!("{} grids enumerated, {} label-law violations", grids.len(), violations);
            Ok(if violations == 0 { ok } else { negative })
        }
        Command::Gamma { radius, truncation } => {
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            let report = x.build_intersection_graphs(&ball);
            match cfg.format.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&export::gamma_to_json(&report))
                        .map_err(|e| e.to_string())?
                ),
                _ => {
                    println!(
                        "vertices: {}, oriented edges: {}, algebraic/skeleton isomorphic: {}",
                        report.vertex_count,
                        report.skeleton_edges.len(),
                        report.isomorphic
                    );
                    match &report.gamma_edge {
                        Some(w) => println!(
                            "distance-2 undistorted pair: v{} -- v{} through v{} via {}",
                            w.v1,
                            w.v2,
                            w.through,
                            w.common_element
                        ),
                        None => println!("no distance-2 undistorted pair in range"),
                    }
                }
            }
            Ok(if report.isomorphic { ok } else { negative })
        }
        Command::Flat { base, seq, seq0, seq1, seq2, seq3, radius } => {
            if *base > 3 {
                return Err("base must be 0..3".into());
            }
            let parse_seq = |s: &str| -> Result<Vec<u64>, String> {
                s.split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad entry {p}")))
                    .collect()
            };
            let default_seq = match seq {
                Some(s) => parse_seq(s)?,
                None => vec![1; *radius as usize],
            };
            let mut seqs = [
                default_seq.clone(),
                default_seq.clone(),
                default_seq.clone(),
                default_seq,
            ];
            for (i, over) in [seq0, seq1, seq2, seq3].into_iter().enumerate() {
                if let Some(s) = over {
                    seqs[i] = parse_seq(s)?;
                }
            }
            let spec = FlatSpec::new(Gen::new(*base), seqs, *radius).map_err(display_err)?;
            let fb = FlatBuilder::new(group);
            let patch = fb.build(&spec).map_err(display_err)?;
            match cfg.format.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&export::flat_to_json(&patch))
                        .map_err(|e| e.to_string())?
                ),
                "dot" => print!("{}", export::flat_to_dot(&patch)),
                _ => {
                    let iso = fb.verify_local_isometry(&patch);
                    let growth = fb.label_growth(&patch);
                    println!(
                        "patch radius {radius}: {} cells, local isometry at {} interior vertices: {}",
                        patch.cells.len(),
                        iso.vertices_checked,
                        if iso.passed() { "clean" } else { "VIOLATIONS" }
                    );
                    for v in &iso.violations {
                        eprintln!("violation: {v}");
                    }
                    let shown: Vec<String> = growth
                        .iter()
                        .map(|g| {
                            let s = g.to_string();
                            if s.len() > 24 {
                                format!("~10^{}", s.len() - 1)
                            } else {
                                s
                            }
                        })
                        .collect();
                    println!("label growth by L1 radius: {}", shown.join(", "));
                    if !iso.passed() {
                        return Ok(negative);
                    }
                }
            }
            Ok(ok)
        }
        Command::Diagram(cmd) => match cmd {
            DiagramCmd::Fill { word, max_squares } => {
                let w = parse_word(word)?;
                match fill_bounded(&group, &w, *max_squares) {
                    FillResult::NotTrivial => {
                        println!("word is nontrivial; no filling exists");
                        Ok(negative)
                    }
                    FillResult::Filled(d) => {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&diagram_to_json(&d))
                                .map_err(|e| e.to_string())?
                        );
                        eprintln!(
                            "filled with {} squares; reduced: {}",
                            d.squares.len(),
                            is_reduced(&group, &d)
                        );
                        Ok(ok)
                    }
                    FillResult::Exhausted { max_squares, reason } => {
                        println!("no filling found within {max_squares} squares: {reason}");
                        Ok(negative)
                    }
                }
            }
            DiagramCmd::Audit { file } => {
                let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
                let v: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                let d = diagram_from_json(&v).map_err(display_err)?;
                let report = gauss_bonnet(&d).map_err(display_err)?;
                if cfg.format == "dot" {
                    // 1-skeleton with curvature annotations
                    print!("{}", higman_core::export::diagram_to_dot(&d));
                } else {
                    println!(
                        "Gauss-Bonnet total: {} half-pi units (2 pi = 4); corners: {:?}; interior nonpositive: {}; reduced: {}; degenerate: {}",
                        report.total,
                        report.corners,
                        report.interior_nonpositive,
                        is_reduced(&group, &d),
                        report.degenerate
                    );
                }
                Ok(ok)
            }
        },
        Command::Classify { word, radius, truncation, max_power } => {
            let w = parse_word(word)?;
            if group.is_trivial(&w) {
                return Err("the identity is not classified".into());
            }
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            match x.classify(&ball, &w, *max_power).map_err(display_err)? {
                higman_core::action::IsometryClass::Elliptic { fixed_vertex, fixed } => {
                    println!(
                        "elliptic: fixes vertex v{fixed_vertex} ({} fixed vertices, {} fixed edges in ball)",
                        fixed.vertices.len(),
                        fixed.edges.len()
                    );
                    Ok(ok)
                }
                higman_core::action::IsometryClass::HyperbolicCertified { witness, .. } => {
                    println!(
                        "hyperbolic: conjugate (by {}) of the axis translation (a{} a{})^-1 power {}, gallery advanced {} steps",
                        if witness.conjugator.is_empty() { "1".to_string() } else { witness.conjugator.to_string() },
                        witness.axis_base.index(),
                        witness.axis_base.shift(2).index(),
                        witness.power,
                        witness.steps_checked
                    );
                    Ok(ok)
                }
                higman_core::action::IsometryClass::Unknown { search_radius } => {
                    println!("unknown at radius {search_radius}");
                    Ok(negative)
                }
            }
        }
        Command::Fixset { word, radius, truncation } => {
            let w = parse_word(word)?;
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            let fs = x.fixed_set(&ball, &w).map_err(display_err)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "element": w.to_string(),
                    "fixed_vertices": fs.vertices,
                    "fixed_edges": fs.edges,
                    "star_center": fs.star_center,
                }))
                .map_err(|e| e.to_string())?
            );
            Ok(if fs.is_empty() { negative } else { ok })
        }
        Command::Acyl { radius, truncation, spot_checks } => {
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            let report = x.acylindricity_audit(&ball, cfg.seed, *spot_checks);
            println!(
                "{} 3-paths checked, {} violations; {} spot checks, {} violations",
                report.paths_checked,
                report.path_violations.len(),
                report.spot_checks,
                report.spot_violations
            );
            Ok(if report.passed() { ok } else { negative })
        }
        Command::Freecert { a, b, k, l, max_length, radius, truncation } => {
            let x = cfg.explorer()?;
            let r = radius.unwrap_or(cfg.default_radius);
            let n = truncation.unwrap_or(cfg.default_truncation);
            let ball = x.build_ball(r, n).map_err(display_err)?;
            let wa = parse_word(a)?;
            let wb = parse_word(b)?;
            let report = x
                .free_certificate(&ball, &wa, &wb, *k, *l, *max_length)
                .map_err(display_err)?;
            println!(
                "g = {}, h = {}",
                report.generator_g, report.generator_h
            );
            println!(
                "checked {} reduced words up to length {} (per length: {:?})",
                report.total_checked, report.max_length, report.counts
            );
            if report.passed() {
                println!("all nontrivial: free subgroup certified at this depth");
                Ok(ok)
            } else {
                println!("TRIVIAL WORDS FOUND: {:?}", report.trivial_words);
                Ok(negative)
            }
        }
        Command::Hom { w0, w1, w2, w3, images } => {
            let c = EndoCandidate {
                images: [parse_word(w0)?, parse_word(w1)?, parse_word(w2)?, parse_word(w3)?],
            };
            match hom_check(&group, &c) {
                HomCheck::Hom => {
                    println!("homomorphism");
                    if *images {
                        let x = cfg.explorer()?;
                        let ball = x.build_ball(cfg.default_radius, cfg.default_truncation)
                            .map_err(display_err)?;
                        let found = special_image_check(&x, &ball, &c);
                        for (i, f) in found.iter().enumerate() {
                            match f {
                                Some(v) => println!("corner {i} image vertex: v{v}"),
                                None => println!("corner {i} image vertex: unknown at this radius"),
                            }
                        }
                    }
                    Ok(ok)
                }
                HomCheck::TrivialHom => {
                    println!("trivial homomorphism (all images trivial)");
                    Ok(ok)
                }
                HomCheck::NotHom { relator, witness } => {
                    println!("not a homomorphism: relator {relator} maps to nontrivial {witness}");
                    Ok(negative)
                }
            }
        }
        Command::ProbeExponents { range } => {
            let vals: Vec<i64> = (-range..=*range).filter(|&v| v != 0).collect();
            let mut homs = Vec::new();
            let mut checked = 0usize;
            for &a in &vals {
                for &b in &vals {
                    for &c in &vals {
                        for &d in &vals {
                            checked += 1;
                            if exponent_probe(&group, [a, b, c, d]).is_hom() {
                                homs.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            println!("{checked} exponent tuples probed; homomorphisms at: {homs:?}");
            Ok(if homs == vec![[1, 1, 1, 1]] { ok } else { negative })
        }
        Command::Decompose { w0, w1, w2, w3, radius } => {
            let c = EndoCandidate {
                images: [parse_word(w0)?, parse_word(w1)?, parse_word(w2)?, parse_word(w3)?],
            };
            match hom_check(&group, &c) {
                HomCheck::Hom => {}
                HomCheck::TrivialHom => return Err("candidate is the trivial morphism".into()),
                HomCheck::NotHom { relator, .. } => {
                    return Err(format!("not a homomorphism (relator {relator} fails)"))
                }
            }
            match automorphism_decompose(&group, &c, *radius) {
                Some((k, g)) => {
                    println!(
                        "inner * shift decomposition: shift k={k}, conjugator {}",
                        if g.is_empty() { "1".to_string() } else { g.to_string() }
                    );
                    Ok(ok)
                }
                None => {
                    println!("no decomposition found with conjugator length <= {radius}");
                    Ok(negative)
                }
            }
        }
    }
}

fn display_err(e: Error) -> String {
    e.to_string()
}
