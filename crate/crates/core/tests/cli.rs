use clap::Parser;
use lpsurf::cli::{cmd_explore, cmd_mutate, cmd_verify, Command, RunConfig};
use lpsurf::laurent::parse;
use lpsurf::lp::{seed_from_json, seeds_equal};

const SEED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/normalization_seed.json");
const RANK_ONE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/rank_one_seed.json");

fn config(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("lpsurf").chain(args.iter().copied())).unwrap()
}

fn mutate(args: &[&str]) -> String {
    match config(args).command {
        Command::Mutate(a) => cmd_mutate(&a).unwrap(),
        _ => unreachable!(),
    }
}

fn explore(args: &[&str]) -> (serde_json::Value, String) {
    let cfg = config(args);
    match cfg.command {
        Command::Explore(a) => cmd_explore(&a, cfg.rand_seed).unwrap(),
        _ => unreachable!(),
    }
}

fn verify(args: &[&str]) -> lpsurf::cli::suites::SuiteReport {
    let cfg = config(args);
    match cfg.command {
        Command::Verify(a) => cmd_verify(&a, cfg.rand_seed).unwrap(),
        _ => unreachable!(),
    }
}

#[test]
fn mutate_seed_file() {
    let out = seed_from_json(&mutate(&["mutate", "--seed-file", SEED, "b"])).unwrap();
    let t = out.table();
    assert_eq!(t.name(1), "b'");
    assert_eq!(out.exchange()[2], parse("b'^2 + a", t).unwrap());
    assert_eq!(out.exchange()[0], parse("b' + c", t).unwrap());
}

#[test]
fn empty_and_repeated_sequences() {
    let input = seed_from_json(&std::fs::read_to_string(SEED).unwrap()).unwrap();
    let echo = seed_from_json(&mutate(&["mutate", "--seed-file", SEED])).unwrap();
    assert!(seeds_equal(&echo, &input));
    let twice = seed_from_json(&mutate(&["mutate", "--seed-file", SEED, "b,b"])).unwrap();
    assert!(seeds_equal(&twice, &input));
}

#[test]
fn mutate_surface_state_by_name() {
    let out = mutate(&["mutate", "--surface", "mobius(1)", "x2"]);
    let s = lpsurf::surface::state_from_json(&out).unwrap();
    assert_eq!(s.records().len(), 1);
    let text = mutate(&["mutate", "--surface", "mobius", "--params", "k=1", "x2,x2'"]);
    assert!(lpsurf::surface::state_from_json(&text).unwrap().is_triangulation());
}

#[test]
fn unknown_direction_is_an_error() {
    match config(&["mutate", "--seed-file", SEED, "z"]).command {
        Command::Mutate(a) => assert!(cmd_mutate(&a).is_err()),
        _ => unreachable!(),
    }
}

#[test]
fn explore_counts() {
    let (s, _) = explore(&["explore", "--surface", "polygon(6)"]);
    assert_eq!((s["nodes"].as_u64(), s["edges"].as_u64(), s["closed"].as_bool()), (Some(14), Some(21), Some(true)));
    let (s, _) = explore(&["explore", "--seed-file", RANK_ONE]);
    assert_eq!((s["nodes"].as_u64(), s["edges"].as_u64()), (Some(2), Some(1)));
    let (s, _) = explore(&["explore", "--surface", "mobius(2)"]);
    assert_eq!((s["nodes"].as_u64(), s["edges"].as_u64(), s["closed"].as_bool()), (Some(16), Some(24), Some(true)));
    let (s, _) = explore(&["explore", "--surface", "annulus(1,1)", "--max-nodes", "30"]);
    assert_eq!((s["closed"].as_bool(), s["partial"].as_bool()), (Some(false), Some(true)));
}

#[test]
fn dot_output_is_stable() {
    let args = ["explore", "--surface", "mobius(1)", "--format", "dot"];
    let (_, a) = explore(&args);
    let (_, b) = explore(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("graph exchange {"));
    assert_eq!(a.matches(" -- ").count(), 4);
    let (_, table) = explore(&["explore", "--surface", "polygon(6)", "--format", "table"]);
    assert_eq!(table.lines().count(), 14);
    assert!(table.lines().all(|l| l.contains("degree 3")));
}

#[test]
fn verify_suites() {
    for args in [
        vec!["verify", "paper-examples"],
        vec!["verify", "rank", "--rand-seed", "42", "--samples", "1000"],
        vec!["verify", "flip-lp", "--surface", "polygon(6)"],
        vec!["verify", "involution", "--samples", "50"],
        vec!["verify", "distinctness", "--surface", "mobius(2)"],
        vec!["verify", "laurent", "--surface", "mobius(1)"],
    ] {
        let r = verify(&args);
        assert!(r.passed, "{args:?}: {:?}", r.checks.iter().find(|c| !c.passed));
        assert!(!r.checks.is_empty());
    }
    let r = verify(&["verify", "rank", "--rand-seed", "7", "--samples", "20"]);
    assert_eq!(r.rand_seed, 7);
    assert_eq!(r, verify(&["verify", "rank", "--rand-seed", "7", "--samples", "20"]));
}

#[test]
fn verify_reports_failures() {
    let r = verify(&["verify", "distinctness", "--surface", "once-punctured-disk(2)", "--unlaminated"]);
    assert!(!r.passed);
    assert!(RunConfig::try_parse_from(["lpsurf", "verify", "nonsense"]).is_err());
}
