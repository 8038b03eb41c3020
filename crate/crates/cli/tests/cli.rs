use std::path::PathBuf;
use std::process::Command as Proc;

use tsgeom_cli::report::Status;
use tsgeom_cli::{load_manifest, parse_manifest, run_command, Command, CommandError, Manifest};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn load(name: &str) -> Manifest {
    load_manifest(&fixture(name)).unwrap()
}

fn status(r: &tsgeom_cli::Report, id: &str) -> Status {
    r.entry(id).unwrap_or_else(|| panic!("no entry {id}")).status
}

#[test]
fn shipped_example_parses() {
    let m = load("example5d.toml");
    assert_eq!(m.dim(), 5);
    assert_eq!(m.submanifolds.len(), 2);
    assert!(m.structure.is_some());
    assert_eq!(m.reference.as_ref().unwrap().connection.len(), 4);
    for f in [
        "example5d_leaf.toml",
        "corrupted_phi.toml",
        "flat5d.toml",
        "negcontrol5d.toml",
    ] {
        load(f);
    }
}

#[test]
fn parse_errors_have_distinct_codes() {
    let text = std::fs::read_to_string(fixture("example5d.toml")).unwrap();
    let four_fields = text.replacen("  [\"0\", \"0\", \"0\", \"0\", \"1\"],\n]", "]", 1);
    assert_eq!(parse_manifest(&four_fields).unwrap_err().code(), "M003");
    let asym = text.replacen(
        "[\"1\", \"0\", \"0\", \"0\", \"0\"],\n  [\"0\", \"1\"",
        "[\"1\", \"x1\", \"0\", \"0\", \"0\"],\n  [\"0\", \"1\"",
        1,
    );
    assert_eq!(parse_manifest(&asym).unwrap_err().code(), "M005");
    let singular = text.replacen(
        "[\"0\", \"t\", \"0\", \"0\", \"0\"]",
        "[\"t\", \"0\", \"0\", \"0\", \"t*x2\"]",
        1,
    );
    assert_eq!(parse_manifest(&singular).unwrap_err().code(), "M004");
}

#[test]
fn command_errors() {
    let ex = load("example5d.toml");
    assert!(matches!(
        run_command(&Command::Theorem(10, "D".into()), &ex, 0),
        Err(CommandError::TheoremIndex(10))
    ));
    assert!(matches!(
        run_command(&Command::SubmanifoldReport("Z".into()), &ex, 0),
        Err(CommandError::UnknownSubmanifold(_))
    ));
    let flat = load("flat5d.toml");
    assert!(matches!(
        run_command(&Command::Prop1, &flat, 0),
        Err(CommandError::MissingStructure)
    ));
}

#[test]
fn theorem_two_on_the_distribution_and_its_leaf() {
    let ex = load("example5d.toml");
    let r = run_command(&Command::Theorem(2, "D".into()), &ex, 0).unwrap();
    assert_eq!(status(&r, "T2 D: Q(S,sigma)"), Status::Nonzero);
    assert_eq!(status(&r, "T2 D: totally geodesic"), Status::False);
    assert_eq!(status(&r, "T2 D: verdict"), Status::Pass);
    let leaf = load("example5d_leaf.toml");
    let r = run_command(&Command::Theorem(2, "D0".into()), &leaf, 0).unwrap();
    assert_eq!(status(&r, "T2 D0: Q(S,sigma)"), Status::Zero);
    assert_eq!(status(&r, "T2 D0: totally geodesic"), Status::True);
    assert_eq!(status(&r, "T2 D0: verdict"), Status::Pass);
}

#[test]
fn non_invariant_distribution_is_refused() {
    let ex = load("example5d.toml");
    let r = run_command(&Command::Theorem(3, "N".into()), &ex, 0).unwrap();
    let e = r.entry("N: theorems").unwrap();
    assert_eq!(e.status, Status::Fail);
    assert!(!e.witnesses.is_empty());
}

#[test]
fn structure_check_flags_the_example() {
    let r = run_command(&Command::StructureCheck, &load("example5d.toml"), 0).unwrap();
    assert_eq!(status(&r, "eta(xi)=-1"), Status::Pass);
    assert_eq!(status(&r, "g(phiX,phiY)=g(X,Y)+eta(X)eta(Y)"), Status::Pass);
    assert_eq!(status(&r, "phi^2=I+eta(x)xi"), Status::Fail);
    assert_eq!(status(&r, "nabla xi = -alpha phi - beta phi^2"), Status::Pass);
    assert_eq!(r.entry("classification").unwrap().detail, "trans-Sasakian (general)");
    let a = r.entry("alpha vs reference").unwrap();
    assert_eq!(a.status, Status::Pass);
    assert!(a.values.iter().any(|v| v.name == "sign agrees" && v.value == "no"));
    let b = r.entry("beta vs reference").unwrap();
    assert!(b.values.iter().any(|v| v.name == "sign agrees" && v.value == "yes"));
    assert!(r
        .entry("reference sign pattern")
        .unwrap()
        .detail
        .contains("(-alpha, beta)"));
}

#[test]
fn corrupted_structure_fails_with_witness() {
    let r = run_command(&Command::StructureCheck, &load("corrupted_phi.toml"), 0).unwrap();
    let e = r.entry("g(phiX,phiY)=g(X,Y)+eta(X)eta(Y)").unwrap();
    assert_eq!(e.status, Status::Fail);
    assert_eq!(e.witnesses[0].index, vec![1, 4]);
    assert_eq!(e.witnesses[0].value, "-1");
}

#[test]
fn flat_curvature_vanishes() {
    let r = run_command(&Command::Curvature, &load("flat5d.toml"), 0).unwrap();
    assert_eq!(status(&r, "riemann"), Status::Zero);
    assert_eq!(status(&r, "ricci"), Status::Zero);
    assert!(!r.has_failures());
}

#[test]
fn reports_are_deterministic_and_failures_carry_witnesses() {
    for f in [
        "example5d.toml",
        "example5d_leaf.toml",
        "corrupted_phi.toml",
        "flat5d.toml",
        "negcontrol5d.toml",
    ] {
        let m = load(f);
        let a = run_command(&Command::All, &m, 11).unwrap();
        let b = run_command(&Command::All, &m, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        for e in &a.entries {
            if e.status == Status::Fail {
                assert!(!e.witnesses.is_empty(), "{f}: {} has no witness", e.id);
            }
        }
        let human = a.to_human();
        for e in &a.entries {
            assert!(human.contains(&format!("[{:<7}] {}", e.status.label(), e.id)));
        }
    }
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_tsgeom"))
        .args(args)
        .env_remove("TSGEOM_MANIFEST")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn exit_codes() {
    let (code, out) = run_bin(&["curvature", "--manifest", &fixture("flat5d.toml")]);
    assert_eq!(code, 0);
    assert!(out.contains("conventions:"));
    let (code, _) = run_bin(&["structure-check", "--manifest", &fixture("example5d.toml")]);
    assert_eq!(code, 1);
    let (code, _) = run_bin(&["curvature", "--manifest", "/nonexistent.toml"]);
    assert_eq!(code, 2);
    let (code, _) = run_bin(&["theorem", "12", "D", "--manifest", &fixture("example5d.toml")]);
    assert_eq!(code, 2);
}

#[test]
fn machine_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("tsgeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let (code, stdout) = run_bin(&[
        "submanifold-report",
        "C",
        "--manifest",
        &fixture("negcontrol5d.toml"),
        "--format",
        "machine",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let file = std::fs::read_to_string(&out).unwrap();
    assert_eq!(stdout, file);
    let v: serde_json::Value = serde_json::from_str(&file).unwrap();
    assert_eq!(v["seed"], 3);
    assert!(v["conventions"]["curvature"].as_str().unwrap().contains("nabla_[X,Y]"));
    std::fs::remove_dir_all(&dir).unwrap();
}
