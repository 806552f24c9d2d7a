use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wordstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn generate_periodic_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let p = path.to_str().unwrap();
    let meta = json(&wordstat(&[
        "generate", "--kind", "periodic", "--eta", "01", "--zeta", "111", "--length", "1000", "--output", p,
    ]));
    assert_eq!(meta["length"], 1000);
    assert_eq!(meta["config"]["generator"]["kind"], "periodic");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.len(), 1000);
    assert!(text.starts_with("11101010"));
}

#[test]
fn generate_sparse_to_stdout() {
    let out = wordstat(&["generate", "--kind", "sparse", "--k1", "1", "--ratio", "2", "--length", "10"]);
    assert_eq!(stdout(&out), "0100100001");
}

#[test]
fn generate_empty_random() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.txt");
    stdout(&wordstat(&[
        "generate", "--kind", "random", "--seed", "1", "--length", "0", "--output", path.to_str().unwrap(),
    ]));
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 0);
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (word, sigma, lambda, slack) in [("0101", 16, 128, 640), ("0", 1, 8, 40)] {
        let p = write(dir.path(), "w.txt", word);
        let v = json(&wordstat(&["analyze", "--input", &p]));
        assert_eq!(v["n"], word.len());
        assert_eq!(v["sigma"], sigma);
        assert_eq!(v["lambda"], lambda);
        assert_eq!(v["lemma1_slack"], slack);
        assert_eq!(v["config"]["command"], "analyze");
    }
}

#[test]
fn analyze_empty_reports_null_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "w.txt", " \n");
    let v = json(&wordstat(&["analyze", "--input", &p]));
    assert_eq!(v["sigma"], 0);
    assert!(v["lambda"].is_null());
    assert!(v["note"].is_string());
}

#[test]
fn parse_error_exit_code_names_offset() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "w.txt", "01 1x0");
    let out = wordstat(&["analyze", "--input", &p]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte offset 4"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(wordstat(&["analyze"]).status.code(), Some(2));
    assert_eq!(wordstat(&["frobnicate"]).status.code(), Some(2));
    let bad_scheme = wordstat(&["profile", "--kind", "fibonacci", "--length", "10", "--checkpoints", "list:0,20"]);
    assert_eq!(bad_scheme.status.code(), Some(2));
    let bad_ratio = wordstat(&["profile", "--kind", "fibonacci", "--length", "10", "--checkpoints", "geometric:1"]);
    assert_eq!(bad_ratio.status.code(), Some(2));
}

#[test]
fn dense_profile_of_constant_word() {
    let out = stdout(&wordstat(&[
        "profile", "--kind", "periodic", "--eta", "0", "--length", "3", "--checkpoints", "dense",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,sigma,sigma_over_n2,sigma_over_n3");
    let sigmas: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(sigmas, ["1", "5", "14"]);
}

#[test]
fn geometric_ratio_two_checkpoints() {
    let out = stdout(&wordstat(&[
        "profile", "--kind", "random", "--length", "1024", "--checkpoints", "geometric:2",
    ]));
    let ns: Vec<usize> = out.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, (0..=10).map(|j| 1usize << j).collect::<Vec<_>>());
}

#[test]
fn lambda_profile_csv() {
    let out = stdout(&wordstat(&[
        "profile", "--functional", "lambda", "--kind", "periodic", "--eta", "01", "--length", "4", "--checkpoints",
        "list:4",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,lambda,lambda_over_n3,witness_eta_len,witness_exponent,witness_pos");
    assert_eq!(lines[1], "4,128,2.000000000000e0,4,1,1");
}

#[test]
fn floats_carry_twelve_significant_digits() {
    let out = stdout(&wordstat(&["profile", "--kind", "fibonacci", "--length", "500"]));
    for line in out.lines().skip(1) {
        for field in line.split(',').skip(2) {
            let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
            assert!(mantissa.len() >= 12, "{field}");
        }
    }
}

#[test]
fn svg_is_well_formed_with_one_polyline_per_series() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    stdout(&wordstat(&[
        "profile", "--kind", "sparse", "--length", "4000", "--output", csv.to_str().unwrap(), "--emit", "svg",
    ]));
    let svg = std::fs::read_to_string(dir.path().join("p.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    let opens = svg.matches('<').count();
    let closes = svg.matches('>').count();
    assert_eq!(opens, closes);
    let self_closing = svg.matches("/>").count();
    let end_tags = svg.matches("</").count();
    assert_eq!(opens, self_closing + 2 * end_tags);

    assert_eq!(
        wordstat(&["profile", "--kind", "sparse", "--length", "100", "--emit", "svg"]).status.code(),
        Some(2)
    );
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let svg = dir.path().join(format!("{tag}.svg"));
        stdout(&wordstat(&[
            "profile", "--kind", "random", "--seed", "7", "--length", "3000", "--output", csv.to_str().unwrap(),
            "--emit", "svg", "--svg", svg.to_str().unwrap(),
        ]));
        (std::fs::read(csv).unwrap(), std::fs::read(svg).unwrap())
    };
    assert_eq!(render("a"), render("b"));
    let args = ["classify", "--kind", "random", "--seed", "3", "--length", "20000"];
    assert_eq!(stdout(&wordstat(&args)), stdout(&wordstat(&args)));
}

#[test]
fn classify_labels() {
    let periodic = json(&wordstat(&["classify", "--kind", "periodic", "--eta", "01", "--length", "50000"]));
    assert_eq!(periodic["label"], "eventually-periodic");
    assert_eq!(periodic["estimated_period"], 2);
    assert_eq!(periodic["run"]["command"], "classify");

    let random = json(&wordstat(&["classify", "--kind", "random", "--length", "100000"]));
    assert_eq!(random["label"], "not-eventually-periodic");

    let sparse = json(&wordstat(&["classify", "--kind", "sparse", "--length", "100000"]));
    assert_eq!(sparse["label"], "not-eventually-periodic");
    assert!(sparse["evidence"]["oscillation"].as_f64().unwrap() > 1.05);
}

#[test]
fn classify_short_input_advises_min_length() {
    let out = wordstat(&["classify", "--kind", "random", "--length", "100"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--min-length"));
    let ok = wordstat(&["classify", "--kind", "random", "--length", "100", "--min-length", "64"]);
    assert!(ok.status.success());
}

#[test]
fn generate_then_analyze_constant_word() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let p = path.to_str().unwrap();
    let n: u128 = 777;
    stdout(&wordstat(&["generate", "--kind", "periodic", "--eta", "1", "--length", "777", "--output", p]));
    let v = json(&wordstat(&["analyze", "--input", p]));
    assert_eq!(v["sigma"].as_u64().unwrap() as u128, n * (n + 1) * (2 * n + 1) / 6);
}

#[test]
fn bench_marks_skipped_naive_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let table = stdout(&wordstat(&[
        "bench", "--sizes", "200,100", "--naive-cutoff", "100", "--json", path.to_str().unwrap(),
    ]));
    assert!(table.contains("skipped"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let naive_200 = rows
        .iter()
        .find(|r| r["n"] == 200 && r["algorithm"] == "sigma_naive")
        .unwrap();
    assert_eq!(naive_200["skipped"], true);
    assert!(naive_200["seconds"].is_null());
    let naive_100 = rows
        .iter()
        .find(|r| r["n"] == 100 && r["algorithm"] == "sigma_naive")
        .unwrap();
    assert!(naive_100["seconds"].as_f64().is_some());
    assert_eq!(v["config"]["naive_cutoff"], 100);
}

#[test]
fn reproduce_single_criterion_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = stdout(&wordstat(&["reproduce", "--only", "lemma1", "--json", path.to_str().unwrap()]));
    assert_eq!(out.lines().filter(|l| l.starts_with('[')).count(), 1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["name"], "lemma1");
    assert_eq!(v["results"][0]["status"], "pass");
    assert_eq!(v["config"]["only"], "lemma1");
}

#[test]
fn reproduce_failing_criterion_exits_four() {
    let out = wordstat(&["reproduce", "--only", "sparse-oscillation"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(wordstat(&["reproduce", "--only", "nope"]).status.code(), Some(2));
}
