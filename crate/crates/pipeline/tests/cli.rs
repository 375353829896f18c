use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sclab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sclab"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SCLAB_OUT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

const CYCLES: &str = "family = cycles 48 96 192\nlambda = 1/24\ndegree = 2\nseed = 1\nintra_alphabet = 4096\n";

fn tree_bytes(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for e in fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.file_name().unwrap() != "timings.json" {
                out.push((p.strip_prefix(root).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn cycle_family_runs_green_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cfg"), CYCLES).unwrap();
    let a = sclab(&["run", "--config", "c.cfg", "--out", "a"], dir.path());
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    let b = sclab(&["run", "--config", "c.cfg", "--out", "b"], dir.path());
    assert_eq!(code(&b), 0);
    assert_eq!(tree_bytes(&dir.path().join("a")), tree_bytes(&dir.path().join("b")));

    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("a/report.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], "sclab.run/1");
    assert_eq!(report["green"], true);
    let cert: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("a/certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["certificate"]["pass"], true);
    assert_eq!(cert["certificate"]["relators"][0]["girth"], 96);

    let ok = sclab(&["report", "a"], dir.path());
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("GREEN"));

    let walls = dir.path().join("a/walls/00-C48.z2.walls");
    let mut text = fs::read_to_string(&walls).unwrap();
    text.push('\n');
    fs::write(&walls, text).unwrap();
    let tampered = sclab(&["report", "a"], dir.path());
    assert_eq!(code(&tampered), 3);
    assert!(String::from_utf8_lossy(&tampered.stdout).contains("HOLE [walls]"));

    fs::remove_file(dir.path().join("b/certificate.json")).unwrap();
    assert_eq!(code(&sclab(&["report", "b"], dir.path())), 3);
    assert_eq!(code(&sclab(&["report", "nowhere"], dir.path())), 3);
}

#[test]
fn large_lambda_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cfg"), "family = cycles 48\nlambda = 1/4\n").unwrap();
    let o = sclab(&["run", "--config", "c.cfg", "--out", "r"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda 1/4"));
    assert!(!dir.path().join("r").exists());
}

#[test]
fn halted_run_names_the_stage() {
    let dir = tempfile::tempdir().unwrap();
    // girth 5 gives lambda * girth <= 1
    fs::write(dir.path().join("c.cfg"), "family = cycles 5 12\nlambda = 1/6\ndegree = 2\n").unwrap();
    let o = sclab(&["run", "--config", "c.cfg", "--out", "r"], dir.path());
    assert_eq!(code(&o), 2);
    let r = sclab(&["report", "r"], dir.path());
    assert_eq!(code(&r), 2);
    assert!(String::from_utf8_lossy(&r.stdout).contains("HALTED at validate"));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("r/report.json")).unwrap()).unwrap();
    assert_eq!(report["stages"][1]["status"], "failed");
    assert_eq!(report["stages"][2]["status"], "skipped");
    // the partial family report is still on record
    assert_eq!(report["stages"][1]["artifacts"][0]["path"], "family.json");
}

#[test]
fn out_root_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cfg"), "family = cycles 5\nlambda = 1/6\ndegree = 2\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sclab"))
        .args(["run", "--config", "c.cfg"])
        .current_dir(dir.path())
        .env("SCLAB_OUT", dir.path().join("root"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(dir.path().join("root/run/report.json").exists());
}

#[test]
fn stage_subcommands_on_files() {
    let dir = tempfile::tempdir().unwrap();
    for n in [24, 36] {
        let o = sclab(&["generate", "--cycle", &n.to_string(), "--out", &format!("c{n}.graph")], dir.path());
        assert_eq!(code(&o), 0);
    }
    let o = sclab(
        &["label", "c24.graph", "c36.graph", "--lambda", "1/6", "--degree", "2", "--out", "lab"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let labeled: Vec<String> = ["lab/labeled/00-C24.lgraph", "lab/labeled/01-C36.lgraph"].map(String::from).to_vec();
    let mut args = vec!["verify"];
    args.extend(labeled.iter().map(String::as_str));
    args.extend(["--lambda", "1/6", "--degree", "2", "--out", "ver"]);
    let v = sclab(&args, dir.path());
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stdout));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("ver/report.json")).unwrap()).unwrap();
    assert_eq!(report["stages"][2]["summary"]["provided"], true);
    assert_eq!(report["stages"].as_array().unwrap().len(), 4);

    let bad = sclab(&["validate", "missing.graph", "--out", "x"], dir.path());
    assert_eq!(code(&bad), 2);
    assert_eq!(code(&sclab(&["generate", "--cycle", "0"], dir.path())), 1);
}

#[test]
fn presentation_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("r.lgraph"), "LGRAPH hex V 6 E 6 S 6\n0 1 1\n1 2 2\n2 3 3\n3 4 4\n4 5 5\n5 0 6\n").unwrap();
    let yes = sclab(&["triviality", "--relator", "r.lgraph", "--word", "3 4 5 6 1 2"], dir.path());
    assert_eq!(String::from_utf8_lossy(&yes.stdout).trim(), "yes");
    let no = sclab(&["triviality", "--relator", "r.lgraph", "--word", "1 2 -1 -2"], dir.path());
    assert_eq!(String::from_utf8_lossy(&no.stdout).trim(), "no");
    let bad = sclab(&["triviality", "--relator", "r.lgraph", "--word", "9"], dir.path());
    assert_eq!(code(&bad), 1);

    let free = sclab(&["cayley", "--alphabet", "2", "--radius", "2"], dir.path());
    assert_eq!(code(&free), 0);
    let text = String::from_utf8_lossy(&free.stdout);
    assert!(text.starts_with("PATCH radius 2 vertices 17 edges 16 exact true\n"));
    let capped = sclab(&["cayley", "--alphabet", "2", "--radius", "3", "--vertex-cap", "5"], dir.path());
    assert_eq!(code(&capped), 2);
}
