use std::path::Path;
use std::process::{Command, Output};

use helion_cli::artifact::Artifact;

fn helion(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helion"))
        .current_dir(dir)
        .env_remove("HELION_PRECISION_DIGITS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn solve_writes_an_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = helion(dir.path(), &["solve", "--state", "1s1s", "--omega", "8"]);
    assert!(out.status.success(), "{out:?}");
    let art = Artifact::read(&dir.path().join("1s1s-singlet.state")).unwrap();
    assert_eq!(art.omega, 8);
    assert!(
        (art.energy_f64() + 2.9037243146).abs() < 5e-9,
        "{}",
        art.energy
    );
    let again = Artifact::parse(&art.render()).unwrap();
    assert_eq!(again, art);
}

#[test]
fn triplet_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out = helion(
        dir.path(),
        &[
            "solve", "--state", "1s2s", "--spin", "triplet", "--omega", "10", "-o", "t.state",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let art = Artifact::read(&dir.path().join("t.state")).unwrap();
    assert!(
        (art.energy_f64() + 2.17522937531).abs() < 2e-10,
        "{}",
        art.energy
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_label = helion(dir.path(), &["solve", "--state", "1s0s"]);
    assert_eq!(bad_label.status.code(), Some(2));
    let no_triplet = helion(dir.path(), &["solve", "--spin", "triplet"]);
    assert_eq!(no_triplet.status.code(), Some(2));
    let too_few_terms = helion(
        dir.path(),
        &[
            "solve", "--state", "1s9s", "--omega", "1", "--alpha", "2", "--beta", "1",
        ],
    );
    assert_eq!(too_few_terms.status.code(), Some(3), "{too_few_terms:?}");
    let missing = helion(dir.path(), &["entropy", "--artifact", "nope.state"]);
    assert_eq!(missing.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("artifact not found"));
    let descending = helion(dir.path(), &["scan", "--axis", "l-max", "--values", "10,5"]);
    assert_eq!(descending.status.code(), Some(2));
    let empty = helion(dir.path(), &["figure", "--states", ""]);
    assert_eq!(empty.status.code(), Some(2));
    let absent = helion(dir.path(), &["figure", "--states", "1s2s,1s3s"]);
    assert_eq!(absent.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&absent.stderr).contains("1s3s"));
}

#[test]
fn entropy_and_scan_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert!(helion(dir.path(), &["solve", "--omega", "5"])
        .status
        .success());
    let out = helion(
        dir.path(),
        &[
            "entropy",
            "--artifact",
            "1s1s-singlet.state",
            "--l-max",
            "6",
            "--la-max",
            "15",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.starts_with("# helion"));
    let rows = data_rows(&text);
    let get = |q: &str| -> f64 { rows.iter().find(|r| r[0] == q).unwrap()[2].parse().unwrap() };
    assert!((get("s_linear") - 0.0159).abs() < 2e-4);
    assert!(get("trace") < 1.0 && get("trace") > 0.9999);
    assert_eq!(get("epsilon_linear"), get("s_linear"));

    let out = helion(
        dir.path(),
        &[
            "scan",
            "--axis",
            "la-max",
            "--values",
            "5..15:5",
            "--artifact",
            "1s1s-singlet.state",
            "--l-max",
            "6",
            "--format",
            "tsv",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let traces: Vec<f64> = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(traces.len(), 3);
    assert!(traces.windows(2).all(|w| w[0] <= w[1]), "{traces:?}");
}

#[test]
fn figure_over_stored_states() {
    let dir = tempfile::tempdir().unwrap();
    for s in ["1s1s", "1s2s", "1s3s"] {
        let out = helion(dir.path(), &["solve", "--state", s, "--omega", "6"]);
        assert!(out.status.success(), "{out:?}");
    }
    let out = helion(
        dir.path(),
        &[
            "figure",
            "--states",
            "1s1s,1s2s,1s3s",
            "--l-max",
            "6",
            "--la-max",
            "15",
            "-o",
            "fig.csv",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(dir.path().join("fig.csv")).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(),
        ["1", "2", "3"]
    );
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        "# overrides\nomega = 4\noutput = from-file.state\n",
    )
    .unwrap();
    let out = helion(dir.path(), &["--config", "run.conf", "solve"]);
    assert!(out.status.success(), "{out:?}");
    let art = Artifact::read(&dir.path().join("from-file.state")).unwrap();
    assert_eq!(art.omega, 4);

    let out = Command::new(env!("CARGO_BIN_EXE_helion"))
        .current_dir(dir.path())
        .env("HELION_PRECISION_DIGITS", "60")
        .args(["solve", "--omega", "3", "-o", "env.state"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        Artifact::read(&dir.path().join("env.state"))
            .unwrap()
            .digits,
        60
    );

    let out = Command::new(env!("CARGO_BIN_EXE_helion"))
        .current_dir(dir.path())
        .env("HELION_PRECISION_DIGITS", "7")
        .args(["solve", "--omega", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
