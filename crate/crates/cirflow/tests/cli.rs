//! End-to-end tests of the cirflow binary: exit codes, output shapes, and
//! the rule that every emitted file re-parses and re-verifies.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cirflow"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

#[test]
fn algebra_matches_the_documented_examples() {
    for (expr, want) in [
        ("(4,1)+(4,1)", "(3,2) amp=4 me=4"),
        ("~(4,1)", "(1,4) amp=3 me=3"),
        ("empty+(1,4)", "empty amp=0 me=0"),
    ] {
        let out = bin().args(["algebra", "-k", "5", expr]).output().unwrap();
        assert_eq!(code(&out), 0, "algebra {expr}");
        assert_eq!(stdout(&out).trim(), want, "algebra {expr}");
    }
    let out = bin().args(["algebra", "-k", "5", "(4,1)+"]).output().unwrap();
    assert_eq!(code(&out), 2, "malformed expression is an error");
}

#[test]
fn decide_rejects_the_petersen_graph_at_5() {
    let dir = scratch("decide_petersen");
    let g6 = dir.join("petersen.g6");
    let status = bin()
        .args(["construct", "petersen", "--out"])
        .arg(dir.join("petersen.cfnet"))
        .status()
        .unwrap();
    assert!(status.success());
    // Also exercise the graph6 input path.
    let net = cirflow::constructions::petersen();
    std::fs::write(&g6, cirflow::graph6::encode_graph6(&net).unwrap()).unwrap();
    for file in [dir.join("petersen.cfnet"), g6] {
        let out = bin().args(["decide", "--r", "5"]).arg(&file).output().unwrap();
        assert_eq!(code(&out), 1, "{}", file.display());
        assert!(stdout(&out).contains("no sub-5-mcnzf"));
    }
}

#[test]
fn capacity_of_the_petersen_minus_edge_gadget_is_41() {
    let dir = scratch("capacity_pme");
    let file = dir.join("pme.cfnet");
    assert!(bin()
        .args(["construct", "petersen_minus_edge", "--out"])
        .arg(&file)
        .status()
        .unwrap()
        .success());
    let out = bin().args(["capacity", "--r", "5"]).arg(&file).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "(4,1)");
}

#[test]
fn reduce_decide_verify_round_trip() {
    let dir = scratch("round_trip");
    let h = dir.join("h.txt");
    std::fs::write(&h, "1 2 3\n").unwrap();
    for r in ["5", "9/2"] {
        let net = dir.join(format!("gh_{}.cfnet", r.replace('/', "_")));
        let cert = dir.join(format!("cert_{}.txt", r.replace('/', "_")));
        assert!(bin()
            .args(["reduce", "--r", r, "--out"])
            .arg(&net)
            .arg(&h)
            .status()
            .unwrap()
            .success());
        assert!(net.with_extension("cfnet.layout").exists() || {
            // The sidecar appends ".layout" to the full output path.
            let mut s = net.clone().into_os_string();
            s.push(".layout");
            PathBuf::from(s).exists()
        });
        let out = bin()
            .args(["decide", "--r", r, "--out"])
            .arg(&cert)
            .arg(&net)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "single triplet is 2-colorable at r={r}");
        assert!(stdout(&out).contains("feasible"));
        let out = bin().args(["verify"]).arg(&net).arg(&cert).output().unwrap();
        assert_eq!(code(&out), 0, "emitted certificate re-verifies at r={r}");
        assert!(stdout(&out).contains("certificate verifies"));

        // A tampered certificate is a false verdict, not an error.
        let text = std::fs::read_to_string(&cert).unwrap();
        let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
        let (index, _) = lines[1].split_once(' ').unwrap();
        lines[1] = format!("{index} 0");
        std::fs::write(&cert, lines.join("\n")).unwrap();
        let out = bin().args(["verify"]).arg(&net).arg(&cert).output().unwrap();
        assert_eq!(code(&out), 1, "tampered certificate is rejected at r={r}");
    }
}

#[test]
fn zero_budget_reports_unknown_with_exit_3() {
    let dir = scratch("zero_budget");
    let g6 = dir.join("s28.g6");
    let net = cirflow::constructions::s28();
    std::fs::write(&g6, cirflow::graph6::encode_graph6(&net).unwrap()).unwrap();
    let out = bin()
        .args(["decide", "--r", "5", "--budget", "0"])
        .arg(&g6)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("unknown"));
}

#[test]
fn strength_outside_the_window_is_an_error() {
    let dir = scratch("bad_r");
    let g6 = dir.join("petersen.g6");
    let net = cirflow::constructions::petersen();
    std::fs::write(&g6, cirflow::graph6::encode_graph6(&net).unwrap()).unwrap();
    for r in ["7/2", "6", "4"] {
        let out = bin().args(["decide", "--r", r]).arg(&g6).output().unwrap();
        assert_eq!(code(&out), 2, "r={r}");
    }
}

#[test]
fn verify_snark_distinguishes_snarks_from_colorable_graphs() {
    let dir = scratch("snark");
    let petersen = dir.join("petersen.g6");
    std::fs::write(
        &petersen,
        cirflow::graph6::encode_graph6(&cirflow::constructions::petersen()).unwrap(),
    )
    .unwrap();
    let out = bin().args(["verify-snark"]).arg(&petersen).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("is_snark: true"));

    let prism = dir.join("gp61.g6");
    let net = cirflow::analysis::generalized_petersen(6, 1).unwrap();
    std::fs::write(&prism, cirflow::graph6::encode_graph6(&net).unwrap()).unwrap();
    let out = bin().args(["verify-snark"]).arg(&prism).output().unwrap();
    assert_eq!(code(&out), 1, "3-edge-colorable graph is not a snark");
    assert!(stdout(&out).contains("is_snark: false"));
}

#[test]
fn corpus_files_reparse_and_the_manifest_is_line_oriented() {
    let dir = scratch("corpus_mr");
    let out_dir = dir.join("mr");
    assert!(bin()
        .args(["corpus", "mr", "--depth", "1", "--seed", "7", "--out"])
        .arg(&out_dir)
        .status()
        .unwrap()
        .success());
    let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
    for line in manifest.lines() {
        assert!(line.contains(": "), "manifest line is key: value, got {line:?}");
    }
    assert!(manifest.contains("family: mr"));
    assert!(manifest.contains("seed: 7"));
    assert!(manifest.contains("mr_0.g6: 10 vertices, 15 edges"));
    assert!(manifest.contains("mr_1.g6: 50 vertices, 75 edges"));
    for name in ["mr_0.g6", "mr_1.g6"] {
        let text = std::fs::read_to_string(out_dir.join(name)).unwrap();
        let net = cirflow::graph6::decode_auto(&text).unwrap();
        assert!(net.n_edges() > 0, "{name} re-parses");
    }
}

#[test]
fn constructed_gadgets_reparse_with_their_terminals() {
    let dir = scratch("construct_gadgets");
    for name in ["thick14", "k4_gadget", "butterfly", "qr"] {
        let file = dir.join(format!("{name}.cfnet"));
        assert!(bin()
            .args(["construct", name, "--r", "5", "--out"])
            .arg(&file)
            .status()
            .unwrap()
            .success());
        let text = std::fs::read_to_string(&file).unwrap();
        let (_, terminals) = cirflow::network::Network::parse(&text).unwrap();
        assert!(terminals.is_some(), "{name} declares terminals");
    }
}
