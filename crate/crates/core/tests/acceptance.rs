//! End-to-end acceptance suite. Runs all seven criteria in order inside a
//! single test so the diagnostic counters span exactly the random corpus,
//! and prints one pass/fail line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kitree::certificates::{
    verify_induced_tree, verify_k4_decomposition, verify_k4_structure, verify_k_decomposition,
    verify_k_structure, InducedTree, SolveResult,
};
use kitree::cli;
use kitree::diagnostics;
use kitree::graph::{girth, Girth, Graph};
use kitree::oracle::{brute_force_k_in_a_tree, generate, InstanceSpec};
use kitree::solver::{
    absorb_into_k_structure, grow_initial_tree, k_in_a_tree, AbsorbOutcome, GrowOutcome,
};

/// Instance grid for the random corpus: all (k, core size, seed) triples
/// with total vertex count <= 14. 5,400 instances.
fn corpus() -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for k in [5usize, 6, 7] {
        for core in k..=(14 - k) {
            for seed in 0..600u64 {
                out.push((k, core, seed));
            }
        }
    }
    out
}

fn criterion_1_reference_obstructions() {
    // C_7 with 7 pendant tips, k = 7
    let c7 = generate(&InstanceSpec::MinimalKStructure { k: 7, path_len: 1 }).unwrap();
    match k_in_a_tree(&c7.graph, &c7.terminals).unwrap() {
        SolveResult::NoTreeK(cert) => {
            assert_eq!(cert.k(), 7);
            assert!(verify_k_structure(&c7.graph, &cert));
            assert!(verify_k_decomposition(&c7.graph, &cert));
        }
        other => panic!("expected a 7-structure, got {other:?}"),
    }
    // subdivided K4 with 6 pendant tips, k = 6
    let sk4 = generate(&InstanceSpec::SubdividedK4 { path_len: 1 }).unwrap();
    assert_eq!(girth(&sk4.graph), Girth::Finite(6));
    match k_in_a_tree(&sk4.graph, &sk4.terminals).unwrap() {
        SolveResult::NoTreeK4(cert) => {
            assert!(verify_k4_structure(&sk4.graph, &cert));
            assert!(verify_k4_decomposition(&sk4.graph, &cert));
        }
        other => panic!("expected a K4-structure, got {other:?}"),
    }
}

fn criterion_2_oracle_equivalence() {
    let mut solved = 0usize;
    for &(k, core, seed) in &corpus() {
        let inst = generate(&InstanceSpec::RandomGirth { k, n: core, seed }).unwrap();
        let g = &inst.graph;
        assert!(g.n() <= 14);
        let expected = brute_force_k_in_a_tree(g, &inst.terminals, 14).unwrap();
        match k_in_a_tree(g, &inst.terminals).unwrap() {
            SolveResult::Tree(t) => {
                assert!(expected, "k={k} n={core} seed={seed}: tree but oracle says no");
                assert!(verify_induced_tree(g, &t));
            }
            SolveResult::NoTreeK(cert) => {
                assert!(!expected, "k={k} n={core} seed={seed}: missed a tree");
                assert!(verify_k_structure(g, &cert));
                assert!(verify_k_decomposition(g, &cert));
            }
            SolveResult::NoTreeK4(cert) => {
                assert!(!expected, "k={k} n={core} seed={seed}: missed a tree");
                assert!(verify_k4_structure(g, &cert));
                assert!(verify_k4_decomposition(g, &cert));
            }
            SolveResult::Disconnected(_) => {
                panic!("k={k} n={core} seed={seed}: generator promises connectivity")
            }
        }
        solved += 1;
    }
    assert!(solved >= 5000, "corpus too small: {solved}");
}

fn criterion_3_escalation_relabelling() {
    let inst = generate(&InstanceSpec::SubdividedK4 { path_len: 1 }).unwrap();
    let g = &inst.graph;
    let structure = match grow_initial_tree(g, &inst.terminals, 6).unwrap() {
        GrowOutcome::Structure(s) => s,
        other => panic!("expected a 6-structure, got {other:?}"),
    };
    let esc = match absorb_into_k_structure(g, structure).unwrap() {
        AbsorbOutcome::Escalate(esc) => esc,
        other => panic!("expected escalation, got {other:?}"),
    };
    // a <- w, b <- s_1, c <- s_3, d <- s_5 (1-based labels of the base
    // 6-structure) and the pendant path reassignment that goes with it
    let base = &esc.base;
    assert_eq!(
        esc.k4.branch,
        [esc.new_vertex, base.s(0), base.s(2), base.s(4)]
    );
    let trim = |p: &[u32]| p[..p.len() - 1].to_vec();
    assert_eq!(esc.k4.paths[0], trim(base.path(0)), "s_ab <- s'_1");
    assert_eq!(esc.k4.paths[1], trim(base.path(2)), "s_ac <- s'_3");
    assert_eq!(esc.k4.paths[2], trim(base.path(4)), "s_ad <- s'_5");
    assert_eq!(esc.k4.paths[3], base.path(1).to_vec(), "s_bc <- s_2");
    assert_eq!(esc.k4.paths[4], base.path(5).to_vec(), "s_bd <- s_6");
    assert_eq!(esc.k4.paths[5], base.path(3).to_vec(), "s_cd <- s_4");
    assert!(verify_k4_structure(g, &esc.k4));
}

fn criterion_4_leaf_branch_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..1000 {
        let n = rng.random_range(2..=50usize);
        let edges: Vec<(u32, u32)> = (1..n as u32)
            .map(|v| (rng.random_range(0..v), v))
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        let t = InducedTree::new(g.vertices().collect(), Vec::new());
        let (leaves, branches) = t.leaf_and_branch_vertices(&g);
        assert!(
            branches.len() <= leaves.len().saturating_sub(2),
            "tree with {} leaves and {} branch vertices",
            leaves.len(),
            branches.len()
        );
        if branches.len() == leaves.len() - 2 {
            for &b in &branches {
                assert_eq!(g.degree(b), 3, "tight case with a branch of degree != 3");
            }
        }
    }
}

fn criterion_5_unreachable_branches() {
    // counters were reset before the corpus run in criterion 2
    assert_eq!(
        diagnostics::counters(),
        (0, 0),
        "(square case, small-k linker) fired on the corpus"
    );
}

fn criterion_6_scaling() {
    let mut points = Vec::new();
    for n in [200usize, 400, 800] {
        let inst = generate(&InstanceSpec::RandomGirth { k: 5, n, seed: 11 }).unwrap();
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let start = Instant::now();
            let result = k_in_a_tree(&inst.graph, &inst.terminals).unwrap();
            best = best.min(start.elapsed().as_secs_f64());
            assert!(!matches!(result, SolveResult::Disconnected(_)));
        }
        points.push(((n as f64).ln(), best.max(1e-6).ln()));
    }
    // least-squares slope of ln(time) against ln(n)
    let mean_x: f64 = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let mean_y: f64 = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let num: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let slope = num / den;
    assert!(slope <= 4.5, "scaling exponent {slope:.2} exceeds 4.5");

    let inst = generate(&InstanceSpec::RandomGirth { k: 5, n: 1000, seed: 13 }).unwrap();
    let start = Instant::now();
    k_in_a_tree(&inst.graph, &inst.terminals).unwrap();
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "n = 1000 took {secs:.1}s");
}

fn criterion_7_determinism() {
    // in-process: identical documents on a corpus slice
    for &(k, core, seed) in corpus().iter().step_by(97) {
        let inst = generate(&InstanceSpec::RandomGirth { k, n: core, seed }).unwrap();
        let gf = cli::GraphFile {
            graph: inst.graph,
            terminals: inst.terminals,
        };
        let (a, ca) = cli::solve_document(&gf, &gf.terminals, false, 20);
        let (b, cb) = cli::solve_document(&gf, &gf.terminals, false, 20);
        assert_eq!((a.render(), ca), (b.render(), cb));
    }
    // end to end: the binary's bytes on the two reference obstructions
    let bin = env!("CARGO_BIN_EXE_kitree");
    let dir = std::env::temp_dir();
    for (name, spec) in [
        ("kitree-acc-c7.graph", InstanceSpec::MinimalKStructure { k: 7, path_len: 1 }),
        ("kitree-acc-sk4.graph", InstanceSpec::SubdividedK4 { path_len: 1 }),
    ] {
        let inst = generate(&spec).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, cli::serialize_graph_file(&inst.graph, &inst.terminals))
            .unwrap();
        let run = || {
            let out = std::process::Command::new(bin)
                .arg("solve")
                .arg(&path)
                .output()
                .expect("binary runs");
            (out.stdout, out.status.code())
        };
        let (out1, code1) = run();
        let (out2, code2) = run();
        assert_eq!(code1, Some(0));
        assert_eq!((out1, code1), (out2, code2));
        let _ = std::fs::remove_file(&path);
    }
}

#[test]
fn acceptance() {
    diagnostics::reset_counters();
    let criteria: [(&str, fn()); 7] = [
        ("1 reference obstruction certificates", criterion_1_reference_obstructions),
        ("2 oracle equivalence on 5400 random instances", criterion_2_oracle_equivalence),
        ("3 K4 escalation relabelling", criterion_3_escalation_relabelling),
        ("4 leaf/branch-vertex bound on 1000 random trees", criterion_4_leaf_branch_bound),
        ("5 unreachable proof branches stay cold", criterion_5_unreachable_branches),
        ("6 scaling exponent and n=1000 budget", criterion_6_scaling),
        ("7 byte-identical repeated solves", criterion_7_determinism),
    ];
    let mut failed = false;
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(()) => println!("criterion {name}: pass"),
            Err(e) => {
                failed = true;
                let msg = e
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| e.downcast_ref::<&str>().copied())
                    .unwrap_or("panic");
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    assert!(!failed, "at least one acceptance criterion failed");
}
