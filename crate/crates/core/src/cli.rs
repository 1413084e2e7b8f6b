//! Command-line front end: DIMACS-style graph files in, JSON result
//! documents out.
//!
//! Files use 1-based vertex ids; everything internal is 0-based, and the
//! parser/serializer pair is the only place the offset is applied. Output
//! formatting is byte-stable: same input, same bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificates::{
    check_induced_tree, check_k4_certificate_with_reduction,
    check_k_certificate_with_reduction, InducedTree, K4Structure, KStructure, SolveResult,
};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, InstanceSpec};
use crate::solver::{k_in_a_tree, SolveError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("header `p <n> <m>` missing or repeated")]
    BadHeader,
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("vertex id {0} outside 1..={1}")]
    IdOutOfRange(u32, usize),
    #[error("graph rejected: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// Parsed graph file: the graph plus `t`-line terminals, both 0-based.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub terminals: Vec<u32>,
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut terminals: Vec<u32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| ParseError::Malformed(lineno, msg.to_string());
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::BadHeader);
                }
                if fields.len() != 3 {
                    return Err(bad("expected `p <n> <m>`"));
                }
                let n = fields[1].parse().map_err(|_| bad("bad vertex count"))?;
                let m = fields[2].parse().map_err(|_| bad("bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(bad("expected `e <u> <v>`"));
                }
                let u: u32 = fields[1].parse().map_err(|_| bad("bad endpoint"))?;
                let v: u32 = fields[2].parse().map_err(|_| bad("bad endpoint"))?;
                edges.push((u, v));
            }
            "t" => {
                if fields.len() != 2 {
                    return Err(bad("expected `t <v>`"));
                }
                terminals.push(fields[1].parse().map_err(|_| bad("bad terminal"))?);
            }
            _ => return Err(bad("unknown record type")),
        }
    }
    let (n, m) = header.ok_or(ParseError::BadHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let to_internal = |v: u32| -> Result<u32, ParseError> {
        if v == 0 || v as usize > n {
            Err(ParseError::IdOutOfRange(v, n))
        } else {
            Ok(v - 1)
        }
    };
    let edges = edges
        .into_iter()
        .map(|(u, v)| Ok((to_internal(u)?, to_internal(v)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let terminals = terminals
        .into_iter()
        .map(to_internal)
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(GraphFile {
        graph: Graph::new(n, &edges)?,
        terminals,
    })
}

/// Canonical serialization: header, edges sorted with u < v, then terminals
/// in order. Parsing this output and serializing again is the identity.
pub fn serialize_graph_file(g: &Graph, terminals: &[u32]) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for &t in terminals {
        writeln!(out, "t {}", t + 1).unwrap();
    }
    out
}

/// Serialized certificate, 1-based ids. Exactly one of the payload shapes
/// is populated depending on `kind`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDoc {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Vec<u32>>,
    pub paths: Vec<Vec<u32>>,
}

/// The result document emitted by `solve`; field names are frozen.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultDoc {
    pub status: String,
    pub k: usize,
    pub terminals: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultDoc {
    fn base(k: usize, terminals: &[u32]) -> Self {
        ResultDoc {
            status: String::new(),
            k,
            terminals: terminals.iter().map(|&t| t + 1).collect(),
            vertices: None,
            certificate: None,
            components: None,
            error: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

fn external_paths(paths: &[Vec<u32>]) -> Vec<Vec<u32>> {
    paths
        .iter()
        .map(|p| p.iter().map(|&v| v + 1).collect())
        .collect()
}

fn certificate_doc(result: &SolveResult) -> Option<CertificateDoc> {
    match result {
        SolveResult::NoTreeK(s) => Some(CertificateDoc {
            kind: "k_structure".into(),
            branch: None,
            paths: external_paths(s.paths()),
        }),
        SolveResult::NoTreeK4(s) => Some(CertificateDoc {
            kind: "k4_structure".into(),
            branch: Some(s.branch.iter().map(|&v| v + 1).collect()),
            paths: external_paths(&s.paths),
        }),
        _ => None,
    }
}

/// Builds the solve result document; the exit code follows the document:
/// 0 for any decided status, 2 for input errors, 3 for unsupported k
/// without the oracle fallback.
pub fn solve_document(
    gf: &GraphFile,
    terminals: &[u32],
    oracle_fallback: bool,
    max_oracle_n: usize,
) -> (ResultDoc, i32) {
    let k = terminals.len();
    let mut doc = ResultDoc::base(k, terminals);
    match k_in_a_tree(&gf.graph, terminals) {
        Ok(SolveResult::Tree(t)) => {
            doc.status = "tree".into();
            doc.vertices = Some(t.vertices.iter().map(|v| v + 1).collect());
            (doc, 0)
        }
        Ok(result @ (SolveResult::NoTreeK(_) | SolveResult::NoTreeK4(_))) => {
            doc.status = "no_tree".into();
            doc.certificate = certificate_doc(&result);
            (doc, 0)
        }
        Ok(SolveResult::Disconnected(groups)) => {
            doc.status = "disconnected".into();
            doc.components = Some(
                groups
                    .iter()
                    .map(|g| g.iter().map(|&v| v + 1).collect())
                    .collect(),
            );
            (doc, 0)
        }
        Err(SolveError::UnsupportedK(_)) if oracle_fallback => {
            match oracle::brute_force_tree_witness(&gf.graph, terminals, max_oracle_n) {
                Ok(Some(witness)) => {
                    doc.status = "tree".into();
                    doc.vertices = Some(witness.iter().map(|v| v + 1).collect());
                    (doc, 0)
                }
                Ok(None) => {
                    doc.status = "no_tree".into();
                    (doc, 0)
                }
                Err(e) => {
                    doc.status = "error".into();
                    doc.error = Some(e.to_string());
                    (doc, 2)
                }
            }
        }
        Err(e @ SolveError::UnsupportedK(_)) => {
            doc.status = "error".into();
            doc.error = Some(e.to_string());
            (doc, 3)
        }
        Err(e) => {
            doc.status = "error".into();
            doc.error = Some(e.to_string());
            (doc, 2)
        }
    }
}

/// Checks a result document against a graph. Exit 0 when the certificate
/// (tree or structure) verifies, 1 when it fails, 2 when the document
/// carries nothing checkable.
pub fn verify_document(g: &Graph, doc: &ResultDoc) -> (String, i32) {
    let to_internal = |v: u32| v.checked_sub(1);
    let internal_list = |ext: &[u32]| -> Option<Vec<u32>> {
        ext.iter().map(|&v| to_internal(v)).collect()
    };
    match doc.status.as_str() {
        "tree" => {
            let Some(ext) = &doc.vertices else {
                return ("tree document without vertices".into(), 2);
            };
            let (Some(vertices), Some(terminals)) =
                (internal_list(ext), internal_list(&doc.terminals))
            else {
                return ("vertex id 0 in a 1-based document".into(), 2);
            };
            let t = InducedTree::new(vertices.into_iter().collect::<VertexSet>(), terminals);
            match check_induced_tree(g, &t) {
                Ok(()) => ("ok".into(), 0),
                Err(e) => (format!("tree rejected: {e}"), 1),
            }
        }
        "no_tree" => {
            let Some(cert) = &doc.certificate else {
                return ("no_tree document without certificate".into(), 2);
            };
            let Some(paths) = cert
                .paths
                .iter()
                .map(|p| internal_list(p))
                .collect::<Option<Vec<_>>>()
            else {
                return ("vertex id 0 in a 1-based document".into(), 2);
            };
            if paths.iter().any(|p| p.is_empty()) {
                return ("certificate with an empty path".into(), 2);
            }
            match cert.kind.as_str() {
                "k_structure" => {
                    if paths.len() < 3 {
                        return ("k-structure with fewer than 3 paths".into(), 2);
                    }
                    match check_k_certificate_with_reduction(g, &KStructure::new(paths)) {
                        Ok(()) => ("ok".into(), 0),
                        Err(e) => (format!("k-structure rejected: {e}"), 1),
                    }
                }
                "k4_structure" => {
                    let Some(branch_ext) = &cert.branch else {
                        return ("k4_structure without branch vertices".into(), 2);
                    };
                    let Some(branch) = internal_list(branch_ext) else {
                        return ("vertex id 0 in a 1-based document".into(), 2);
                    };
                    let (Ok(branch), Ok(paths)) = (
                        <[u32; 4]>::try_from(branch),
                        <[Vec<u32>; 6]>::try_from(paths),
                    ) else {
                        return ("k4_structure needs 4 branch vertices and 6 paths".into(), 2);
                    };
                    let k4 = K4Structure { branch, paths };
                    match check_k4_certificate_with_reduction(g, &k4) {
                        Ok(()) => ("ok".into(), 0),
                        Err(e) => (format!("K4-structure rejected: {e}"), 1),
                    }
                }
                other => (format!("unknown certificate type `{other}`"), 2),
            }
        }
        other => (format!("document status `{other}` has no certificate to verify"), 2),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kitree",
    about = "Certifying solver for the k-in-a-tree problem on graphs of girth >= k"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve k-in-a-tree for a graph file and print a result document.
    Solve {
        file: PathBuf,
        /// Expected terminal count; must match the terminals given.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated 1-based terminals, overriding the file's t lines.
        #[arg(long, value_delimiter = ',')]
        terminals: Option<Vec<u32>>,
        /// Answer k <= 4 instances with the brute-force oracle instead of
        /// exiting with code 3.
        #[arg(long)]
        oracle_fallback: bool,
        /// Vertex cap for the oracle fallback.
        #[arg(long, default_value_t = 20)]
        max_oracle_n: usize,
    },
    /// Check a previously emitted result document against a graph file.
    Verify {
        file: PathBuf,
        certificate: PathBuf,
    },
    /// Write a generated instance in graph-file format.
    Gen {
        /// One of: minimal-k-structure, subdivided-k4, spider, random-girth.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        path_len: usize,
        #[arg(long, default_value_t = 2)]
        leg_len: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the brute-force decider on a small graph file.
    Oracle {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        terminals: Option<Vec<u32>>,
        #[arg(long, default_value_t = 20)]
        max_oracle_n: usize,
    },
}

fn fail(msg: impl std::fmt::Display) -> (String, i32) {
    (format!("error: {msg}\n"), 2)
}

fn load_graph_file(path: &PathBuf) -> Result<GraphFile, (String, i32)> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    parse_graph_file(&text).map_err(|e| fail(e))
}

/// Resolves solve/oracle terminals: the flag wins, the file's t lines are
/// the default. Flag values are 1-based like the file.
fn resolve_terminals(
    gf: &GraphFile,
    flag: &Option<Vec<u32>>,
    k: Option<usize>,
) -> Result<Vec<u32>, (String, i32)> {
    let terms: Vec<u32> = match flag {
        Some(ext) => ext
            .iter()
            .map(|&v| {
                if v == 0 || v as usize > gf.graph.n() {
                    Err(fail(ParseError::IdOutOfRange(v, gf.graph.n())))
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<_, _>>()?,
        None => gf.terminals.clone(),
    };
    if terms.is_empty() {
        return Err(fail("no terminals: give --terminals or t lines"));
    }
    if let Some(k) = k {
        if k != terms.len() {
            return Err(fail(format!("--k {} but {} terminals", k, terms.len())));
        }
    }
    Ok(terms)
}

fn dispatch(cli: &Cli) -> (String, i32) {
    match &cli.command {
        Command::Solve {
            file,
            k,
            terminals,
            oracle_fallback,
            max_oracle_n,
        } => {
            let gf = match load_graph_file(file) {
                Ok(gf) => gf,
                Err(out) => return out,
            };
            let terms = match resolve_terminals(&gf, terminals, *k) {
                Ok(t) => t,
                Err(out) => return out,
            };
            let (doc, code) = solve_document(&gf, &terms, *oracle_fallback, *max_oracle_n);
            (doc.render(), code)
        }
        Command::Verify { file, certificate } => {
            let gf = match load_graph_file(file) {
                Ok(gf) => gf,
                Err(out) => return out,
            };
            let text = match std::fs::read_to_string(certificate) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", certificate.display())),
            };
            let doc: ResultDoc = match serde_json::from_str(&text) {
                Ok(d) => d,
                Err(e) => return fail(format!("bad result document: {e}")),
            };
            let (msg, code) = verify_document(&gf.graph, &doc);
            (format!("{msg}\n"), code)
        }
        Command::Gen {
            kind,
            k,
            n,
            seed,
            path_len,
            leg_len,
            output,
        } => {
            let spec = match kind.as_str() {
                "minimal-k-structure" => InstanceSpec::MinimalKStructure {
                    k: k.unwrap_or(5),
                    path_len: *path_len,
                },
                "subdivided-k4" => InstanceSpec::SubdividedK4 {
                    path_len: *path_len,
                },
                "spider" => InstanceSpec::Spider {
                    k: k.unwrap_or(5),
                    leg_len: *leg_len,
                },
                "random-girth" => InstanceSpec::RandomGirth {
                    k: k.unwrap_or(5),
                    n: n.unwrap_or(12),
                    seed: *seed,
                },
                other => return fail(format!("unknown kind `{other}`")),
            };
            let inst = match oracle::generate(&spec) {
                Ok(i) => i,
                Err(e) => return fail(e),
            };
            let text = serialize_graph_file(&inst.graph, &inst.terminals);
            match output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (String::new(), 0),
                    Err(e) => fail(format!("{}: {e}", path.display())),
                },
                None => (text, 0),
            }
        }
        Command::Oracle {
            file,
            terminals,
            max_oracle_n,
        } => {
            let gf = match load_graph_file(file) {
                Ok(gf) => gf,
                Err(out) => return out,
            };
            let terms = match resolve_terminals(&gf, terminals, None) {
                Ok(t) => t,
                Err(out) => return out,
            };
            match oracle::brute_force_k_in_a_tree(&gf.graph, &terms, *max_oracle_n) {
                Ok(answer) => (format!("{answer}\n"), 0),
                Err(e) => fail(e),
            }
        }
    }
}

pub fn run(cli: &Cli) -> i32 {
    let (out, code) = dispatch(cli);
    print!("{out}");
    code
}
