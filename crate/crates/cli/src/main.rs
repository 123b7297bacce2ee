use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use indcomplex::edgelist;
use indcomplex::pipeline::{self, Budget, TiledLattice, DEFAULT_SEED};
use indcomplex::reproduce::{self, Target, LITERATURE_CONTEXT};
use indcomplex_core::bounds::{lower_bound, residual_betti, upper_bound, BoundReport, HomologyMemo, ResidualClassTable};
use indcomplex_core::cross::validated_pairs;
use indcomplex_core::lattice::{LatticeKind, LatticeSpec};
use indcomplex_core::{Graph, VertexSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "indcomplex", version, about = "Homology of independence complexes of graphs and lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Largest number of faces any enumeration may produce.
    #[arg(long, global = true, env = "INDCOMPLEX_CAP_FACES", default_value_t = indcomplex_core::DEFAULT_FACE_CAP)]
    cap_faces: usize,
    /// Worker threads for censuses and random suites.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for the random suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock timings (reports are otherwise byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct LatticeArgs {
    /// kagome, triangular, delta (with --d), delta3, delta4 or cycle.
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Line-removal modulus for `delta`.
    #[arg(long)]
    d: Option<u32>,
}

impl LatticeArgs {
    fn spec(&self) -> Result<LatticeSpec> {
        let kind = match (self.kind.as_str(), self.d) {
            ("delta", Some(3)) => LatticeKind::Delta3,
            ("delta", Some(4)) => LatticeKind::Delta4,
            ("delta", d) => bail!("delta needs --d 3 or --d 4, got {d:?}"),
            (k, _) => k.parse()?,
        };
        Ok(LatticeSpec::new(kind, self.n, self.m))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Lower,
    Upper,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Write a lattice quotient as an edge list with coordinates.
    Gen {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Fail unless the quotient admits the standard tiling.
        #[arg(long)]
        tiled: bool,
    },
    /// Reduced Betti numbers and f-vector of the independence complex.
    Betti { input: PathBuf },
    /// Lower and upper bounds for a tileable lattice or an edge-list file.
    Bounds {
        kind: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        /// Edge-list file instead of a lattice.
        #[arg(long = "in", conflicts_with = "kind")]
        input: Option<PathBuf>,
        /// Separator vertex ids for file input, comma separated.
        #[arg(long, value_delimiter = ',')]
        separator: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Tile template search and the tiling of a lattice quotient.
    Tiles {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Recompute published values and compare.
    Reproduce {
        /// c6, kagome, delta3, delta4, forests, filtration, join, splitting, absolute or all.
        target: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<bool> {
    let common = &cli.common;
    if common.cap_faces == 0 || common.workers == 0 {
        bail!("--cap-faces and --workers must be positive");
    }
    let budget = Budget { cap_faces: common.cap_faces, workers: common.workers };
    match &cli.command {
        Command::Gen { lattice, tiled } => {
            let spec = lattice.spec()?;
            let g = if *tiled { spec.tiling()?.0.graph } else { spec.graph()? };
            emit(common, &edgelist::write(&g))?;
        }
        Command::Betti { input } => {
            let g = edgelist::read_file(input)?;
            emit(common, &betti_report(&g, common)?)?;
        }
        Command::Bounds { kind, n, m, d, input, separator, mode } => {
            let text = match (kind, input) {
                (Some(kind), None) => {
                    let args = LatticeArgs {
                        kind: kind.clone(),
                        n: n.context("--n is required for lattice bounds")?,
                        m: m.unwrap_or(0),
                        d: *d,
                    };
                    lattice_bounds(&args.spec()?, *mode, &budget, common)?
                }
                (None, Some(path)) => file_bounds(&edgelist::read_file(path)?, separator, *mode, &budget, common.format)?,
                _ => bail!("give either a lattice kind or --in FILE"),
            };
            emit(common, &text)?;
        }
        Command::Tiles { lattice } => emit(common, &json_text(&tiles_json(&lattice.spec()?)?))?,
        Command::Reproduce { target } => {
            let targets: Vec<Target> = if target == "all" { Target::ALL.to_vec() } else { vec![target.parse()?] };
            let mut ok = true;
            let mut reports = Vec::new();
            for t in targets {
                let mut r = reproduce::run(t, common.seed, &budget)?;
                if !common.timings {
                    r.elapsed_ms = None;
                }
                ok &= r.ok();
                reports.push(r);
            }
            let text = match common.format {
                Format::Json => json_text(&json!({ "schema": 1, "seed": common.seed, "pass": ok, "targets": reports })),
                _ => reports.iter().map(|r| r.render_text()).collect::<Vec<_>>().join("\n"),
            };
            emit(common, &text)?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn betti_report(g: &Graph, common: &Common) -> Result<String> {
    let mut f_vector: Vec<u64> = Vec::new();
    g.for_each_independent_set(common.cap_faces, |s| {
        if f_vector.len() <= s.len() {
            f_vector.resize(s.len() + 1, 0);
        }
        f_vector[s.len()] += 1;
    })?;
    let b = residual_betti(g, &mut HomologyMemo::new(), common.cap_faces)?;
    let betti: serde_json::Map<String, Value> = b.iter().filter(|&(_, x)| x > 0).map(|(d, x)| (d.to_string(), json!(x))).collect();
    Ok(match common.format {
        Format::Json => json_text(&json!({
            "schema": 1,
            "vertices": g.n(),
            "edges": g.edge_count(),
            "f_vector": f_vector,
            "betti": betti,
            "total": b.total(),
            "witten_index": b.witten_index(),
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["degree", "betti"])?;
            for (d, x) in b.iter() {
                w.write_record([d.to_string(), x.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => format!(
            "{} vertices, {} edges\nf-vector (from the empty face): {:?}\nreduced Betti: {}\ntotal {}, Witten index {}\n",
            g.n(),
            g.edge_count(),
            f_vector,
            reproduce::betti_string(&b),
            b.total(),
            b.witten_index()
        ),
    })
}

fn report_line(r: &BoundReport, form: Option<&str>) -> String {
    format!(
        "{:?} bound: {} = {}  per vertex {}  rate {}  ({})",
        r.kind,
        r.symbolic(),
        r.raw,
        form.unwrap_or("-"),
        r.rate_6dp.as_deref().unwrap_or("-"),
        r.descriptor
    )
}

fn census_csv(table: &ResidualClassTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["class", "vertices", "edges", "multiplicity", "total_betti", "betti", "witness"])?;
    for (i, c) in table.classes.iter().enumerate() {
        w.write_record([
            i.to_string(),
            c.representative.n().to_string(),
            c.representative.edge_count().to_string(),
            c.multiplicity.to_string(),
            c.total().map_or(String::new(), |t| t.to_string()),
            c.betti.as_ref().map_or(String::new(), reproduce::betti_string),
            c.witness.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn lattice_bounds(spec: &LatticeSpec, mode: Mode, budget: &Budget, common: &Common) -> Result<String> {
    let format = common.format;
    let t = TiledLattice::new(*spec)?;
    let mut lower = matches!(mode, Mode::Lower | Mode::Both).then(|| pipeline::lower(&t)).transpose()?;
    let mut upper = matches!(mode, Mode::Upper | Mode::Both).then(|| pipeline::upper(&t, budget)).transpose()?;
    if !common.timings {
        if let Some(l) = &mut lower {
            l.report.timing_ms = None;
        }
        if let Some(u) = &mut upper {
            u.report.timing_ms = None;
        }
    }
    let context: Vec<String> = if spec.kind == LatticeKind::Kagome { vec![LITERATURE_CONTEXT.to_string()] } else { vec![] };
    Ok(match format {
        Format::Json => {
            let mut reports = Vec::new();
            if let Some(l) = &lower {
                reports.push(json!({ "report": l.report, "per_vertex_form": l.form, "templates": {
                    "matching_size": l.pair.matching_size, "rule": l.pair.rule, "b_escapes_a": l.pair.b_escapes_a } }));
            }
            if let Some(u) = &upper {
                reports.push(json!({ "report": u.report, "per_vertex_form": u.form }));
            }
            json_text(&json!({
                "schema": 1,
                "lattice": { "kind": spec.kind.name(), "n": spec.n, "m": spec.m, "vertices": t.vertices(), "tiles": t.tiling.k(),
                             "separator": t.tiling.separator.len() },
                "bounds": reports,
                "context": context,
            }))
        }
        Format::Csv => match &upper {
            Some(u) => census_csv(&u.table)?,
            None => bail!("csv output carries the residual census; use --mode upper or both"),
        },
        Format::Text => {
            let mut out = format!(
                "{} {}x{}: {} vertices, {} tiles, |U| = {}\n",
                spec.kind.name(),
                spec.n,
                spec.m,
                t.vertices(),
                t.tiling.k(),
                t.tiling.separator.len()
            );
            if let Some(l) = &lower {
                out += &report_line(&l.report, Some(&l.form));
                out.push('\n');
            }
            if let Some(u) = &upper {
                out += &report_line(&u.report, Some(&u.form));
                out.push('\n');
                out += &format!(
                    "per-tile census: {} residuals, {} classes, max total Betti {}\n",
                    u.table.enumerated,
                    u.table.classes.len(),
                    u.table.max_total().unwrap_or(0)
                );
            }
            if let (Some(l), Some(u)) = (&lower, &upper) {
                out += &format!(
                    "{} ≤ rate ≤ {}\n",
                    l.report.rate_6dp.as_deref().unwrap_or("-"),
                    u.report.rate_6dp.as_deref().unwrap_or("-")
                );
            }
            for c in &context {
                out += &format!("[context] {c}\n");
            }
            out
        }
    })
}

fn file_bounds(g: &Graph, separator: &[usize], mode: Mode, budget: &Budget, format: Format) -> Result<String> {
    let mut reports = Vec::new();
    if matches!(mode, Mode::Lower | Mode::Both) {
        // the largest validated pairs found, as one family
        let pairs = validated_pairs(g, 4);
        let top = pairs.iter().map(|p| p.size()).max().unwrap_or(0);
        let family: Vec<_> = pairs.into_iter().filter(|p| p.size() == top).take(64).collect();
        if !family.is_empty() {
            reports.push(lower_bound(g, &family, None)?);
        }
    }
    if matches!(mode, Mode::Upper | Mode::Both) {
        let u = VertexSet::from_ids(g.n(), separator.iter().copied())?;
        reports.push(upper_bound(g, &u, budget.cap_faces)?);
    }
    Ok(match format {
        Format::Json => json_text(&json!({ "schema": 1, "vertices": g.n(), "bounds": reports })),
        Format::Csv => bail!("csv output is only available for lattice censuses"),
        Format::Text => reports.iter().map(|r| report_line(r, None) + "\n").collect(),
    })
}

fn tiles_json(spec: &LatticeSpec) -> Result<Value> {
    let t = TiledLattice::new(*spec)?;
    let pair = indcomplex_core::templates::search_tile_templates(&t.tiling.shape, pipeline::template_size(spec.kind))?;
    indcomplex_core::templates::verify_templates(&t.lattice.graph, &t.tiling, &pair)?;
    let shape = &t.tiling.shape;
    let tiles: Vec<Value> = (0..t.tiling.k())
        .map(|i| json!({ "centre": t.tiling.centres[i], "vertices": t.tiling.tiles[i], "boundary": t.tiling.boundaries[i] }))
        .collect();
    Ok(json!({
        "schema": 1,
        "lattice": { "kind": spec.kind.name(), "n": spec.n, "m": spec.m, "vertices": t.vertices() },
        "tile": {
            "name": shape.name,
            "offsets": shape.offsets,
            "edges": shape.graph.edges(),
            "boundary_slots": shape.boundary,
            "slot_neighbors": shape.slot_neighbors,
            "geometry_digest": format!("{:016x}", shape.geometry_digest()),
        },
        "templates": {
            "matching_size": pair.matching_size,
            "rule": pair.rule,
            "b_escapes_a": pair.b_escapes_a,
            "candidates": pair.candidates,
            "A": { "edges": pair.a.edges, "transversal": pair.a.transversal },
            "B": { "edges": pair.b.edges, "transversal": pair.b.transversal },
        },
        "tiles": tiles,
        "separator": t.tiling.separator.iter().collect::<Vec<_>>(),
    }))
}
