//! End-to-end tests of the installed binary: output contracts, determinism,
//! seed resolution, config files, fixtures on disk, and exit codes.

use std::process::{Command, Output};

use mcl::sim::{ESTIMATE_CSV_HEADER, SWEEP_CSV_HEADER};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mcl"));
    // Hermetic by default: tests opt in to the environment seed explicitly.
    cmd.env_remove("MCL_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}):\n{}", stdout(out));
    })
}

#[test]
fn capacity_report_matches_the_closed_form() {
    let out = run(&["capacity", "--variant", "amc", "-q", "2", "-n", "2", "-m", "2", "-t", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v = json(&out);
    // 2x2 binary, one unit of additive rank: nm - log_q 9 = 4 - log2 9.
    let expected = 4.0 - 9.0f64.log2();
    assert!((v["exact"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(v["units"], "qary");
    assert_eq!(v["law"], "amc");

    // --bits rescales by log2 q; for q = 2 the two agree.
    let bits = run(&[
        "capacity", "--variant", "amc", "-q", "2", "-n", "2", "-m", "2", "-t", "1", "--bits",
    ]);
    let vb = json(&bits);
    assert_eq!(vb["units"], "bits");
    assert!((vb["exact"].as_f64().unwrap() - expected).abs() < 1e-12);

    // For q = 4 the bits number is exactly twice the q-ary number.
    let q4 = json(&run(&["capacity", "--variant", "mmc", "-q", "4", "-n", "2", "-m", "3"]));
    let q4b = json(&run(&[
        "capacity", "--variant", "mmc", "-q", "4", "-n", "2", "-m", "3", "--bits",
    ]));
    let ratio = q4b["exact"].as_f64().unwrap() / q4["exact"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn identical_invocations_are_byte_identical_on_stdout() {
    let args = [
        "simulate", "--scheme", "ammc-trap", "-q", "2", "-n", "4", "-m", "8", "-t", "1", "-v",
        "2", "--trials", "400", "--seed", "31",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same command line, same bytes");

    // Timing chatter stays on stderr, so stdout is pure payload.
    assert!(stderr(&first).contains("wall time"));
    assert!(!stdout(&first).contains("wall time"));
}

#[test]
fn seed_comes_from_flag_then_env_then_default() {
    let base = [
        "simulate", "--scheme", "amc-trap", "-q", "2", "-n", "4", "-m", "6", "-t", "1", "-v",
        "2", "--trials", "300",
    ];
    let flag = |seed: &str| {
        let mut args = base.to_vec();
        args.extend(["--seed", seed]);
        run(&args)
    };

    // MCL_SEED alone steers the run exactly like the flag would.
    let env_out = bin().args(base).env("MCL_SEED", "123").output().unwrap();
    assert!(env_out.status.success(), "stderr: {}", stderr(&env_out));
    assert_eq!(env_out.stdout, flag("123").stdout);

    // The flag wins over the environment.
    let both = bin().args(base).args(["--seed", "123"]).env("MCL_SEED", "999").output().unwrap();
    assert_eq!(both.stdout, flag("123").stdout);

    // No flag, no env: the default seed 0.
    assert_eq!(run(&base).stdout, flag("0").stdout);

    // Different seeds give different tallies for this lossy channel.
    assert_ne!(flag("123").stdout, flag("124").stdout);

    // Garbage in the environment is an invalid-configuration error.
    let bad = bin().args(base).env("MCL_SEED", "not-a-number").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_mirrors_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.json");
    std::fs::write(
        &path,
        r#"{"scheme": "amc-trap", "q": 2, "n": 4, "m": 6, "t": 1, "v": 2,
           "trials": 300, "seed": 123}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let from_config = run(&["simulate", "--config", cfg]);
    assert!(from_config.status.success(), "stderr: {}", stderr(&from_config));
    let from_flags = run(&[
        "simulate", "--scheme", "amc-trap", "-q", "2", "-n", "4", "-m", "6", "-t", "1", "-v",
        "2", "--trials", "300", "--seed", "123",
    ]);
    assert_eq!(from_config.stdout, from_flags.stdout);

    // An explicit flag overrides the same key in the file.
    let overridden = run(&["simulate", "--config", cfg, "--seed", "7"]);
    let direct = run(&[
        "simulate", "--scheme", "amc-trap", "-q", "2", "-n", "4", "-m", "6", "-t", "1", "-v",
        "2", "--trials", "300", "--seed", "7",
    ]);
    assert_eq!(overridden.stdout, direct.stdout);

    // Unknown keys are rejected, not ignored.
    let bad = dir.path().join("typo.json");
    std::fs::write(&bad, r#"{"sede": 1}"#).unwrap();
    let out = run(&["simulate", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sede"), "stderr should name the bad key");
}

#[test]
fn sweep_emits_the_stable_csv_schema() {
    let out = run(&[
        "sweep", "--scheme", "ammc-trap", "-q", "2,4", "-n", "4", "-m", "8", "-t", "1", "-v",
        "1,2", "--trials", "200", "--seed", "5",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4, "2 field orders x 2 trap sizes");
    for row in &rows {
        assert_eq!(row.split(',').count(), SWEEP_CSV_HEADER.split(',').count());
    }
    // q is the outermost axis, v the innermost.
    let key: Vec<(&str, &str)> = rows
        .iter()
        .map(|r| {
            let cells: Vec<&str> = r.split(',').collect();
            (cells[1], cells[5])
        })
        .collect();
    assert_eq!(key, [("2", "1"), ("2", "2"), ("4", "1"), ("4", "2")]);

    // The same sweep as JSON is an array with one object per grid point.
    let j = run(&[
        "sweep", "--scheme", "ammc-trap", "-q", "2,4", "-n", "4", "-m", "8", "-t", "1", "-v",
        "1,2", "--trials", "200", "--seed", "5", "--format", "json",
    ]);
    let arr = json(&j);
    assert_eq!(arr.as_array().unwrap().len(), 4);
    assert_eq!(arr[0]["scheme"], "ammc-trap");

    // --out writes the identical bytes to a file instead of stdout.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let filed = run(&[
        "sweep", "--scheme", "ammc-trap", "-q", "2,4", "-n", "4", "-m", "8", "-t", "1", "-v",
        "1,2", "--trials", "200", "--seed", "5", "--out", path.to_str().unwrap(),
    ]);
    assert!(filed.status.success());
    assert!(stdout(&filed).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn simulate_csv_format_uses_the_estimate_schema() {
    let out = run(&[
        "simulate", "--scheme", "amc-trap", "-q", "2", "-n", "4", "-m", "6", "-t", "1", "-v",
        "2", "--trials", "100", "--seed", "3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(ESTIMATE_CSV_HEADER));
    let row = lines.next().expect("one data row");
    assert_eq!(row.split(',').count(), ESTIMATE_CSV_HEADER.split(',').count());
    assert!(row.starts_with("100,"));
}

#[test]
fn oracle_agrees_with_the_formula_and_reports_the_sandwich() {
    let out = run(&[
        "oracle", "--variant", "mmc", "-q", "2", "-n", "2", "-m", "2", "--tolerance", "1e-6",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v = json(&out);
    // 2x2 binary: five reachable row spaces, capacity log2 5.
    assert!((v["ba_capacity"].as_f64().unwrap() - 5.0f64.log2()).abs() < 1e-4);
    assert!(v["delta"].as_f64().unwrap() < 1e-4);
    assert!(v["ba_lower"].as_f64().unwrap() <= v["ba_upper"].as_f64().unwrap());
    assert_eq!(v["inputs"].as_u64().unwrap(), 16);

    // The mixed law has no closed form: the report carries bounds instead.
    let out = run(&["oracle", "--variant", "ammc", "-q", "2", "-n", "2", "-m", "4", "-t", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v = json(&out);
    assert!(v.get("formula").is_none());
    assert_eq!(v["within_bounds"], true);
    assert!(
        v["ba_capacity"].as_f64().unwrap() <= v["formula_upper"].as_f64().unwrap() + 1e-9
    );
}

#[test]
fn gen_fixtures_writes_parseable_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fx");
    let out = run(&[
        "gen-fixtures", "--out", out_dir.to_str().unwrap(), "-q", "4", "-n", "3", "-m", "5",
        "-t", "2", "--count", "2", "--seed", "9",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let manifest = json(&out);
    let files: Vec<String> = manifest["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap().to_string())
        .collect();
    assert_eq!(files.len(), 6, "uniform, nonsingular, and rank-t, twice each");

    for name in &files {
        let mat = mcl::textio::read_matrix_file(&out_dir.join(name)).unwrap_or_else(|e| {
            panic!("{name} does not parse back: {e}");
        });
        assert_eq!(mat.field().q(), 4);
        if name.starts_with("uniform") {
            assert_eq!((mat.rows(), mat.cols()), (3, 5));
        } else if name.starts_with("nonsingular") {
            assert_eq!((mat.rows(), mat.cols()), (3, 3));
            assert_eq!(mat.rank(), 3);
        } else if name.starts_with("rank2") {
            assert_eq!((mat.rows(), mat.cols()), (3, 5));
            assert_eq!(mat.rank(), 2);
        } else {
            panic!("unexpected fixture {name}");
        }
    }

    // Same seed, fresh directory: identical files.
    let again_dir = dir.path().join("fx2");
    let again = run(&[
        "gen-fixtures", "--out", again_dir.to_str().unwrap(), "-q", "4", "-n", "3", "-m", "5",
        "-t", "2", "--count", "2", "--seed", "9",
    ]);
    assert!(again.status.success());
    for name in &files {
        assert_eq!(
            std::fs::read(out_dir.join(name)).unwrap(),
            std::fs::read(again_dir.join(name)).unwrap(),
            "{name} differs between identical seeds"
        );
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: success.
    let ok = run(&["capacity", "--variant", "mmc", "-q", "2", "-n", "2", "-m", "2"]);
    assert_eq!(ok.status.code(), Some(0));

    // 2: invalid parameters (6 is not a prime power).
    let invalid = run(&["capacity", "--variant", "amc", "-q", "6", "-n", "2", "-m", "2"]);
    assert_eq!(invalid.status.code(), Some(2));
    assert!(stdout(&invalid).is_empty(), "errors must not pollute stdout");
    assert!(stderr(&invalid).contains("6"));

    // 2: missing required parameter.
    let missing = run(&["capacity", "--variant", "amc", "-q", "2", "-n", "2"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("-m"));

    // 2: clap-level parse failures share the invalid-usage code.
    let unknown = run(&["capacity", "--no-such-flag"]);
    assert_eq!(unknown.status.code(), Some(2));

    // 3: measured rate provably above the bound (errors always rank 2 while
    // the trap budget assumes rank <= 1), and the estimate still prints first.
    let violated = run(&[
        "simulate", "--scheme", "amc-trap", "-q", "4", "-n", "4", "-m", "6", "-t", "1", "-v",
        "1", "--pmf", "0,0,1", "--trials", "200", "--seed", "7", "--check-bound",
    ]);
    assert_eq!(violated.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&violated)).unwrap();
    assert!(v["empirical_rate"].as_f64().unwrap() > v["bound"].as_f64().unwrap());
    assert!(stderr(&violated).contains("exceeds"));

    // The same campaign without --check-bound reports and exits 0.
    let tolerated = run(&[
        "simulate", "--scheme", "amc-trap", "-q", "4", "-n", "4", "-m", "6", "-t", "1", "-v",
        "1", "--pmf", "0,0,1", "--trials", "200", "--seed", "7",
    ]);
    assert_eq!(tolerated.status.code(), Some(0));

    // 4: the enumeration guard refuses 2^16 channel inputs.
    let guarded = run(&["oracle", "--variant", "amc", "-q", "2", "-n", "4", "-m", "4", "-t", "1"]);
    assert_eq!(guarded.status.code(), Some(4));
    assert!(stderr(&guarded).contains("65536"), "guard explains its arithmetic");
    assert!(stdout(&guarded).is_empty());
}

#[test]
fn fixture_files_round_trip_through_the_library() {
    // A fixture written by the binary is readable by the library and vice
    // versa, pinning the on-disk format from both sides.
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fx");
    let out = run(&[
        "gen-fixtures", "--out", out_dir.to_str().unwrap(), "-q", "3", "-n", "2", "-m", "4",
        "--count", "1", "--seed", "1",
    ]);
    assert!(out.status.success());

    let path = out_dir.join("uniform_00.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "3 2 4");
    for line in text.lines().skip(1) {
        assert_eq!(line.len(), 4);
        assert!(line.chars().all(|c| ('0'..'3').contains(&c)));
    }

    let mat = mcl::textio::read_matrix_file(&path).unwrap();
    let rewritten = dir.path().join("rewrite.txt");
    mcl::textio::write_matrix_file(&rewritten, &mat).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&rewritten).unwrap());
}
