use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use compound_core::CollocationModel;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cnbracket"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("cnbracket-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str, content: &str) -> PathBuf {
        let path = self.0.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn built_model(dir: &TempDir) -> PathBuf {
    let model = dir.path("model.bin");
    let o = run(bin()
        .args(["build-model", "--thesaurus"])
        .arg(data("thesaurus.tsv"))
        .arg("--corpus")
        .arg(data("corpus.txt"))
        .arg("--output")
        .arg(&model));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    model
}

#[test]
fn build_model_reports_counts() {
    let dir = TempDir::new("build");
    let thesaurus = dir.file("t.tsv", "w1\t100\nw2\t200\nw3\t100\nw4\t200\n");
    let corpus = dir.file("c.txt", "w1w2\nw1w2\nw3w4\n");
    let model = dir.path("m.bin");
    let o = run(bin()
        .arg("build-model")
        .arg("--thesaurus")
        .arg(&thesaurus)
        .arg("--corpus")
        .arg(&corpus)
        .arg("-o")
        .arg(&model));
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("unique_word_pairs\t2\n"), "{report}");
    assert!(report.contains("duplicates\t1\n"), "{report}");
    let m = CollocationModel::load(&model).unwrap();
    assert_eq!(m.dump_tsv(), "100\t200\t2\n");

    let o = run(bin().arg("dump").arg("--model").arg(&model));
    assert_eq!(stdout(&o), "100\t200\t2\n");
}

#[test]
fn build_model_error_codes() {
    let dir = TempDir::new("build-errors");
    let thesaurus = dir.file("t.tsv", "w1\t100\nw6\t300\nw6\t400\n");
    let o = run(bin()
        .arg("build-model")
        .arg("--thesaurus")
        .arg(&thesaurus)
        .arg("--corpus")
        .arg(dir.path("missing.txt"))
        .arg("-o")
        .arg(dir.path("m.bin")));
    assert_eq!(o.status.code(), Some(2));

    let corpus = dir.file("c.txt", "w1w6\nw1w5\n");
    let o = run(bin()
        .arg("build-model")
        .arg("--thesaurus")
        .arg(&thesaurus)
        .arg("--corpus")
        .arg(&corpus)
        .arg("-o")
        .arg(dir.path("m.bin")));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no compound survived"));
    assert!(!dir.path("m.bin").exists());
}

#[test]
fn segment_worked_example() {
    let o = run(bin()
        .arg("segment")
        .arg("--thesaurus")
        .arg(data("thesaurus.tsv"))
        .args(["--no-prune", "新型間接税"]));
    assert_eq!(stdout(&o), "新/型/間接/税\n新型/間接/税\n");
    let o = run(bin()
        .arg("segment")
        .arg("--thesaurus")
        .arg(data("thesaurus.tsv"))
        .arg("新型間接税"));
    assert_eq!(stdout(&o), "新型/間接/税\n");
    let o = run(bin()
        .arg("segment")
        .arg("--thesaurus")
        .arg(data("thesaurus.tsv"))
        .arg("未知"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "∞\n");
}

#[test]
fn analyze_worked_example() {
    let dir = TempDir::new("analyze");
    let model = built_model(&dir);
    let base = || {
        let mut c = bin();
        c.arg("analyze")
            .arg("--thesaurus")
            .arg(data("thesaurus.tsv"))
            .arg("--model")
            .arg(&model);
        c
    };
    let o = run(base().arg("新型間接税"));
    assert_eq!(
        stdout(&o),
        "# 新型間接税\n1\t0.160000000000\t新型/間接/税\t[[118,311],137]\n2\t0.000000000000\t新型/間接/税\t[118,[311,137]]\n"
    );

    let o = run(base().args(["--no-prune", "新型間接税"]));
    let lines: Vec<_> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 17);

    let o = run(base().args(["--no-prune", "--per-segmentation", "--top-k", "1", "新型間接税"]));
    let text = stdout(&o);
    assert!(text.contains("## 新/型/間接/税\n"), "{text}");
    assert!(text.contains("## 新型/間接/税\n1\t0.160000000000"), "{text}");

    let o = run(base().args([
        "--labels",
        "words",
        "--exact",
        "--distance",
        "--top-k",
        "1",
        "新型間接税",
    ]));
    // 0.16 * 0.54^2
    assert_eq!(
        stdout(&o),
        "# 新型間接税\n1\t0.046656000000\t新型/間接/税\t[[新型,間接],税]\n"
    );

    let o = run(base().arg("未知税"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# 未知税\n∞\n");
}

#[test]
fn analyze_reads_standard_input_in_order() {
    let dir = TempDir::new("stdin");
    let model = built_model(&dir);
    let mut child = bin()
        .arg("analyze")
        .arg("--thesaurus")
        .arg(data("thesaurus.tsv"))
        .arg("--model")
        .arg(&model)
        .args(["--top-k", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("税\n\n新型間接税\n".as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(
        stdout(&o),
        "# 税\n1\t1.000000000000\t税\t137\n# 新型間接税\n1\t0.160000000000\t新型/間接/税\t[[118,311],137]\n"
    );
}

#[test]
fn analyze_is_deterministic() {
    let dir = TempDir::new("determinism");
    let model = built_model(&dir);
    let go = || {
        run(bin()
            .arg("analyze")
            .arg("--thesaurus")
            .arg(data("thesaurus.tsv"))
            .arg("--model")
            .arg(&model)
            .args([
                "--no-prune",
                "--measure",
                "cv2",
                "--labels",
                "both",
                "新型間接税",
                "新型直接税",
            ]))
        .stdout
    };
    assert_eq!(go(), go());
}

const TEN_RECORD_GOLD: &str = "abcd\t[a,[[b,c],d]]\n\
abcd\t[a,[[b,c],d]]\n\
abcd\t[a,[[b,c],d]]\n\
abcd\t[a,[b,[c,d]]]\n\
abcd\t[a,[b,[c,d]]]\n\
abcd\t[[[a,b],c],d]\n\
abcd\t[[a,b],[c,d]]\n\
abqd\t[[a,b],[q,d]]\n\
xyz\t[[x,y],z]\n\
abcd\t[a,[[b,c],d]]\n";

#[test]
fn evaluate_ten_record_fixture() {
    let dir = TempDir::new("evaluate");
    let thesaurus = dir.file("t.tsv", "a\t1\nb\t2\nc\t3\nd\t4\nx\t5\ny\t6\nz\t7\n");
    let model = dir.path("m.bin");
    CollocationModel::from_triples(
        1,
        [
            ("1", "2", 5),
            ("2", "3", 7),
            ("3", "4", 11),
            ("1", "3", 2),
            ("2", "4", 3),
            ("1", "4", 13),
            ("5", "6", 4),
            ("6", "7", 4),
            ("5", "7", 4),
        ],
    )
    .unwrap()
    .save(&model)
    .unwrap();
    let gold = dir.file("gold.tsv", TEN_RECORD_GOLD);
    let tsv = dir.path("table.tsv");
    let o = run(bin()
        .arg("evaluate")
        .arg("--thesaurus")
        .arg(&thesaurus)
        .arg("--model")
        .arg(&model)
        .arg("--gold")
        .arg(&gold)
        .args(["--measure", "cv1,cv2", "--exact"])
        .arg("--tsv")
        .arg(&tsv));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = stdout(&o);
    let rows: Vec<Vec<&str>> = table.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["rank", "cv1", "cv2"]);
    let cv1: Vec<&str> = rows[1..7].iter().map(|r| r[1]).collect();
    assert_eq!(cv1, ["40", "50", "70", "80", "10", "10"]);
    assert_eq!(rows[6][1], rows[6][2], "∞ differs between measures");
    assert_eq!(rows[7], ["n", "10", "10"]);
    let tsv = std::fs::read_to_string(&tsv).unwrap();
    assert_eq!(tsv.lines().count(), 13);
    assert!(tsv.contains("cv1\t~2\t7\t10\t70.0000"));
}

#[test]
fn flags_are_checked_before_files() {
    for args in [
        vec![
            "analyze",
            "--thesaurus",
            "/no/t",
            "--model",
            "/no/m",
            "--top-k",
            "0",
            "x",
        ],
        vec![
            "analyze",
            "--thesaurus",
            "/no/t",
            "--model",
            "/no/m",
            "--q-exponent",
            "-1",
            "x",
        ],
        vec![
            "analyze",
            "--thesaurus",
            "/no/t",
            "--model",
            "/no/m",
            "--level",
            "9",
            "x",
        ],
        vec![
            "evaluate",
            "--thesaurus",
            "/no/t",
            "--model",
            "/no/m",
            "--gold",
            "/no/g",
            "--measure",
            "cv3",
        ],
        vec!["segment", "--thesaurus", "/no/t", "--level", "0", "x"],
        vec![
            "build-model",
            "--thesaurus",
            "/no/t",
            "--corpus",
            "/no/c",
            "-o",
            "/no/m",
            "--level",
            "7",
        ],
    ] {
        let o = run(bin().args(&args));
        assert_eq!(
            o.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(bin().args(["analyze", "--thesaurus", "/no/t", "--model", "/no/m", "x"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["build-model", "segment", "analyze", "evaluate", "dump"] {
        let o = run(bin().args([sub, "--help"]));
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage:"), "{sub}");
    }
}

#[test]
fn corrupted_model_is_degenerate_data() {
    let dir = TempDir::new("corrupt");
    let model = built_model(&dir);
    let mut bytes = std::fs::read(&model).unwrap();
    let n = bytes.len();
    bytes[n - 6] ^= 0xff;
    std::fs::write(&model, bytes).unwrap();
    let o = run(bin().arg("dump").arg("--model").arg(&model));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
}
