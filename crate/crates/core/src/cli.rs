//! Command-line front end. [`run`] parses arguments, reads the graph and
//! writes a report; the binary is a thin wrapper around it.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::field::DEFAULT_PRIME;
use crate::graph::Graph;
use crate::partition::DEFAULT_PARTITION_CAP;
use crate::picture::irreducible_components;
use crate::rigidity::{
    coupled_spanning_trees, rigidity_circuits, rigidity_report, DEFAULT_EDGE_CAP,
};
use crate::treepoly::{ideal_generators, tree_polynomial};
use crate::verify::{verify_graph, DEFAULT_SAMPLES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANALYSIS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Independence, rank, rigidity and circuits of the edge set
    Rigidity,
    /// All rigidity circuits
    Circuits,
    /// Coupled spanning trees (two-tree decompositions)
    Cpl,
    /// The tree polynomial of a graph with |E| = 2|V| - 2
    Treepoly,
    /// One tree polynomial per rigidity circuit
    Ideal,
    /// Irreducible components of the picture space
    Components,
    /// Randomized finite-field checks on generic pictures
    Verify,
}

/// Rigidity and picture-space invariants of planar graphs.
///
/// The graph is an edge list: one `u v` pair per line, a lone `v` for an
/// isolated vertex, `#` starts a comment.
#[derive(Debug, Parser)]
#[command(name = "graphvar", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,

    /// Edge-list file, or `-` for standard input
    #[arg(conflicts_with = "edges", required_unless_present = "edges")]
    pub input: Option<String>,

    /// Inline edge list, pairs separated by commas: "1 2, 2 3, 3 1"
    #[arg(long)]
    pub edges: Option<String>,

    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,

    /// Seed for random sampling
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Prime modulus for finite-field checks
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,

    /// Pictures sampled by `verify`
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Largest vertex count for partition enumeration
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    pub max_partitions: usize,

    /// Largest edge count for circuit enumeration
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    pub max_edges: usize,
}

struct Report {
    json: Value,
    text: String,
}

fn pairs_text(g: &Graph, f: crate::graph::EdgeSet) -> String {
    let labels: Vec<String> = f.iter().map(|e| g.edge_label(e)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn analyse(cli: &Cli, g: &Graph) -> crate::Result<Report> {
    let report = match cli.verb {
        Verb::Rigidity => {
            let r = rigidity_report(g);
            let circuits = rigidity_circuits(g, cli.max_edges)?;
            let mut json = r.to_json(g);
            json["circuits"] = circuits.iter().map(|&c| json!(g.edge_pairs(c))).collect();
            let mut text = format!(
                "independent: {}\nrank: {}\nrigid: {}\n",
                r.independent, r.rank, r.rigid
            );
            if let Some(c) = r.violating_set {
                text.push_str(&format!("violating set: {}\n", pairs_text(g, c)));
            }
            text.push_str(&format!("circuits: {}\n", circuits.len()));
            Report { json, text }
        }
        Verb::Circuits => {
            let circuits = rigidity_circuits(g, cli.max_edges)?;
            let json = json!({
                "circuits": circuits.iter().map(|&c| g.edge_pairs(c)).collect::<Vec<_>>()
            });
            let mut text = format!("{} circuits\n", circuits.len());
            for &c in &circuits {
                text.push_str(&format!("{}\n", pairs_text(g, c)));
            }
            Report { json, text }
        }
        Verb::Cpl => {
            let trees = coupled_spanning_trees(g);
            let all = g.all_edges();
            let json = json!({
                "coupled_trees": trees
                    .iter()
                    .map(|&t| json!({
                        "tree": g.edge_pairs(t),
                        "complement": g.edge_pairs(all.difference(t)),
                    }))
                    .collect::<Vec<_>>()
            });
            let mut text = format!("{} coupled spanning trees\n", trees.len());
            for &t in &trees {
                text.push_str(&format!(
                    "{} | {}\n",
                    pairs_text(g, t),
                    pairs_text(g, all.difference(t))
                ));
            }
            Report { json, text }
        }
        Verb::Treepoly => {
            let tau = tree_polynomial(g)?;
            let pretty = tau.pretty(g);
            let json = json!({
                "polynomial": tau.to_json(g),
                "pretty": pretty,
                "terms": tau.num_terms(),
                "degree": tau.degree(),
            });
            let text = format!("tau = {pretty}\n{} terms\n", tau.num_terms());
            Report { json, text }
        }
        Verb::Ideal => {
            let ig = ideal_generators(g, cli.max_edges)?;
            let mut text = format!("{} generators\n", ig.generators.len());
            for (c, p) in &ig.generators {
                text.push_str(&format!("{}: {}\n", pairs_text(g, *c), p.pretty(g)));
            }
            Report {
                json: ig.to_json(g),
                text,
            }
        }
        Verb::Components => {
            let report = irreducible_components(g, cli.max_partitions)?;
            let mut text = format!("{} irreducible components\n", report.components.len());
            for c in &report.components {
                let blocks: Vec<String> = c
                    .partition
                    .blocks()
                    .iter()
                    .map(|b| {
                        let ids: Vec<&str> = b.iter().map(|&v| g.vertex_id(v)).collect();
                        format!("{{{}}}", ids.join(","))
                    })
                    .collect();
                text.push_str(&format!("{}  dim {}\n", blocks.join(" "), c.dimension));
            }
            text.push_str(&format!(
                "cohen-macaulay certificate: {}\n",
                report.cm_certificate
            ));
            Report {
                json: report.to_json(g),
                text,
            }
        }
        Verb::Verify => {
            let r = verify_graph(g, cli.samples, cli.prime, cli.seed)?;
            let text = format!(
                "tree polynomials vanish on pictures: {}\npolygon relations hold: {}\n\
                 ranks: combinatorial {}, slope {}, length {}\nmatroids agree: {}\n\
                 seed {}, prime {}\n",
                r.vanishing,
                r.polygons,
                r.combinatorial,
                r.slope,
                r.length,
                r.matroids_agree,
                r.seed,
                r.prime
            );
            Report {
                json: r.to_json(),
                text,
            }
        }
    };
    Ok(report)
}

fn read_graph(cli: &Cli, stdin: &mut dyn Read) -> Result<Graph, String> {
    let text = match (&cli.edges, cli.input.as_deref()) {
        (Some(inline), _) => inline.replace([',', ';'], "\n"),
        (None, Some("-")) => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            s
        }
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        (None, None) => return Err("no input graph".into()),
    };
    Graph::parse(&text).map_err(|e| e.to_string())
}

/// Runs one command. Returns the exit status: 0 on success, 1 when the
/// analysis fails (a cap is exceeded, the invariant is undefined for the
/// graph), 2 on bad arguments or unreadable or malformed input.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let g = match read_graph(&cli, stdin) {
        Ok(g) => g,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match analyse(&cli, &g) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return EXIT_ANALYSIS;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ANALYSIS
        }
    }
}
