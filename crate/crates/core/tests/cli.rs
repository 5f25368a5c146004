use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hybrid-rng"));
    cmd.env_remove("HYBRID_RNG_REPORT_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hybrid-rng")
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn gen_sha_first_block() {
    let out = run(&["gen", "--kind", "sha", "--stream", "0", "--words", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        hex(&out.stdout),
        "10cd3c7c7bc37ebb2679d346267462ae347a007fc815afaea715a782290530f3"
    );
}

#[test]
fn gen_lcg_first_word() {
    let out = run(&[
        "gen",
        "--kind",
        "lcg",
        "--lcg",
        "superduper",
        "--seed",
        "1",
        "--words",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, [0x59, 0x1C, 0x01, 0x00]);
}

#[test]
fn gen_zero_words() {
    let out = run(&["gen", "--words", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn gen_is_reproducible_and_file_matches_stdout() {
    let args = [
        "gen", "--kind", "hybrid", "--lcg", "glibc", "--k", "3", "--n", "5", "--seed", "9", "--words", "2^12",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout.len(), 4 << 12);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words.bin");
    let mut with_file: Vec<&str> = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let c = run(&with_file);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn gen_matches_library_stream() {
    use hybrid_rng::{HybridGenerator, HybridParams, Lcg32Config, WordSource};
    let out = run(&[
        "gen", "--k", "16", "--n", "16", "--stream", "4", "--seed", "2", "--words", "1000",
    ]);
    let mut g = HybridGenerator::new(HybridParams::new(16, 16).unwrap(), Lcg32Config::SUPER_DUPER, 2, 4);
    let expected: Vec<u8> = g.take_words(1000).iter().flat_map(|w| w.to_le_bytes()).collect();
    assert_eq!(out.stdout, expected);
}

#[test]
fn gen_unbounded_stops_quietly_on_closed_pipe() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = bin()
        .arg("gen")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut buf = [0u8; 1 << 16];
    child.stdout.as_mut().unwrap().read_exact(&mut buf).unwrap();
    drop(child.stdout.take());
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["gen", "--k", "0"][..],
        &["gen", "--kind", "xorshift"],
        &["gen", "--raw-states"],
        &["test", "--words", "1024"],
        &["test", "--alpha", "0.7"],
        &["sweep", "--k", "1,0", "--n", "16"],
        &["bench", "--words", "1000"],
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_runtime_error() {
    let out = run(&["gen", "--words", "4", "--output", "/nonexistent-dir/x/out.bin"]);
    assert_eq!(out.status.code(), Some(2));
}

fn failure_count(stderr: &[u8]) -> usize {
    let text = String::from_utf8_lossy(stderr);
    let tail = text.split("failure_count=").nth(1).expect("summary line");
    tail.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn raw_lcg_states_fail_the_battery() {
    let out = run(&["test", "--kind", "lcg", "--lcg", "superduper", "--raw-states"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(failure_count(&out.stderr) >= 3);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("test_name,params,statistic,p_value,verdict"));
    assert_eq!(csv.lines().count(), 18);
}

#[test]
fn report_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("HYBRID_RNG_REPORT_DIR", dir.path())
        .args(["test", "--kind", "sha", "--words", "2^20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("battery.csv")).unwrap();
    assert!(csv.starts_with("test_name,params,statistic,p_value,verdict\n"));
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn incomplete_battery_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.toml");
    // an interval this narrow yields too few gaps to test
    write(
        &manifest,
        "version = \"tiny-gap\"\n\n[[test]]\nname = \"gap_tiny\"\nkind = \"gap\"\nlo = 0.0\nhi = 1e-9\n\n[[test]]\nname = \"monobit\"\nkind = \"monobit\"\n",
    );
    let out = run(&[
        "test",
        "--kind",
        "sha",
        "--words",
        "2^20",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("INCOMPLETE"));

    write(&manifest, "version = 3\n");
    let out = run(&["test", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_size_grid() {
    let out = run(&["sweep", "--k", "1,16", "--n", "16", "--words", "2^21"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["k", "n", "failure_count", "mean_seconds"]);
    assert_eq!(rows.len(), 3);
    let failures = |row: &[&str]| row[2].parse::<usize>().unwrap();
    assert_eq!(rows[1][0], "1");
    assert_eq!(rows[2][0], "16");
    assert!(failures(&rows[2]) <= failures(&rows[1]));
}

#[test]
fn bench_schema_is_stable() {
    let args = ["bench", "--trials", "3", "--words", "2^21", "--kind", "lcg"];
    let a = String::from_utf8(run(&args).stdout).unwrap();
    let b = String::from_utf8(run(&args).stdout).unwrap();
    let header = "kind,lcg,k,n,words,trials,mean_seconds,throughput,sink";
    assert_eq!(a.lines().next(), Some(header));
    assert_eq!(b.lines().next(), Some(header));
    let cols = |s: &str| {
        s.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(str::to_owned)
            .collect::<Vec<_>>()
    };
    let (ra, rb) = (cols(&a), cols(&b));
    assert_eq!(ra.len(), 9);
    // identical work, so identical descriptor, counts and sink
    for i in [0, 1, 2, 3, 4, 5, 8] {
        assert_eq!(ra[i], rb[i]);
    }
    assert!(ra[6].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn bench_parallel_mode() {
    let out = run(&["bench", "--ci", "--streams", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "stream,words,trials,mean_seconds,throughput,sink");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("total,4194304,3,"));
    assert_eq!(
        run(&["bench", "--ci", "--streams", "2", "--kind", "sha"]).status.code(),
        Some(1)
    );
}
