use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use deid_core::corpus::parse_annotated;
use deid_core::Model;
use tempfile::TempDir;

fn deid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deid"))
        .args(args)
        .env_remove("DEID_THREADS")
        .output()
        .expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    /// A 50-document corpus plus a 35-document training subset and model.
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let f = Self { dir };
        let out = deid(&[
            "synth",
            "--docs",
            "50",
            "--seed",
            "42",
            "--out",
            p(&f.corpus()),
        ]);
        assert_eq!(status(&out), 0, "{out:?}");
        fs::create_dir(f.train_dir()).unwrap();
        for i in 1..=35 {
            let name = format!("ime_{i:04}.txt");
            fs::copy(f.corpus().join(&name), f.train_dir().join(&name)).unwrap();
        }
        let out = deid(&[
            "train",
            "--corpus",
            p(&f.train_dir()),
            "--out",
            p(&f.model()),
        ]);
        assert_eq!(status(&out), 0, "{out:?}");
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn corpus(&self) -> PathBuf {
        self.path("corpus")
    }

    fn train_dir(&self) -> PathBuf {
        self.path("train")
    }

    fn model(&self) -> PathBuf {
        self.path("model.txt")
    }

    /// Plain text of a held-out document.
    fn plain(&self) -> PathBuf {
        let doc = parse_annotated(
            "ime_0050",
            &fs::read_to_string(self.corpus().join("ime_0050.txt")).unwrap(),
        )
        .unwrap();
        let path = self.path("plain.txt");
        fs::write(&path, doc.text()).unwrap();
        path
    }
}

#[test]
fn synth_writes_corpus_and_manifest_deterministically() {
    let f = Fixture::new();
    let txt = fs::read_dir(f.corpus())
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "txt")
        })
        .count();
    assert_eq!(txt, 50);
    assert!(f.corpus().join("manifest.json").exists());

    let again = f.path("again");
    assert_eq!(
        status(&deid(&[
            "synth",
            "--docs",
            "50",
            "--seed",
            "42",
            "--out",
            p(&again)
        ])),
        0
    );
    for name in ["ime_0001.txt", "ime_0050.txt", "manifest.json"] {
        assert_eq!(
            fs::read(f.corpus().join(name)).unwrap(),
            fs::read(again.join(name)).unwrap()
        );
    }

    let varied = f.path("varied");
    let out = deid(&[
        "synth",
        "--docs",
        "5",
        "--seed",
        "1",
        "--varied",
        "--out",
        p(&varied),
    ]);
    assert_eq!(status(&out), 0);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(varied.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["structural_variants"], 12);
    let both = [
        "synth",
        "--docs",
        "5",
        "--varied",
        "--variants",
        "2",
        "--out",
        "x",
    ];
    assert_eq!(status(&deid(&both)), 2);
}

#[test]
fn usage_errors_exit_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("never");
    assert_eq!(
        status(&deid(&[
            "synth",
            "--docs",
            "1",
            "--seed",
            "42",
            "--out",
            p(&out_dir)
        ])),
        2
    );
    assert!(!out_dir.exists());
    assert_eq!(
        status(&deid(&["synth", "--docs", "many", "--out", p(&out_dir)])),
        2
    );
    assert_eq!(
        status(&deid(&["benchmark", "--corpus", ".", "--splits", "70:20"])),
        2
    );
    assert_eq!(status(&deid(&["frobnicate"])), 2);
    assert_eq!(status(&deid(&["--help"])), 0);

    let threads = Command::new(env!("CARGO_BIN_EXE_deid"))
        .args(["eval", "--identity", "--corpus", "."])
        .env("DEID_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(status(&threads), 2);
}

#[test]
fn train_reports_counts_and_is_deterministic() {
    let f = Fixture::new();
    let out = deid(&[
        "train",
        "--corpus",
        p(&f.train_dir()),
        "--out",
        p(&f.path("m2.txt")),
        "--stats",
    ]);
    assert_eq!(status(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("documents: 35"), "{text}");
    assert!(text.contains("\"snapped_spans\": 0"), "{text}");
    let checksum = |path: &Path| {
        fs::read_to_string(path)
            .unwrap()
            .lines()
            .last()
            .unwrap()
            .to_string()
    };
    assert_eq!(checksum(&f.model()), checksum(&f.path("m2.txt")));
    assert!(text.contains(&checksum(&f.model())));

    let empty = f.path("empty");
    fs::create_dir(&empty).unwrap();
    assert_eq!(
        status(&deid(&[
            "train",
            "--corpus",
            p(&empty),
            "--out",
            p(&f.path("m3.txt"))
        ])),
        1
    );
    assert!(!f.path("m3.txt").exists());

    let bad = f.path("bad");
    fs::create_dir(&bad).unwrap();
    fs::write(bad.join("broken.txt"), "Dr. <START:name>Smith").unwrap();
    let out = deid(&["train", "--corpus", p(&bad), "--out", p(&f.path("m4.txt"))]);
    assert_eq!(status(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("broken.txt") && err.contains("offset 4"),
        "{err}"
    );
}

#[test]
fn tag_writes_parseable_annotations() {
    let f = Fixture::new();
    let tagged = f.path("tagged.txt");
    let out = deid(&[
        "tag",
        "--model",
        p(&f.model()),
        "--in",
        p(&f.plain()),
        "--out",
        p(&tagged),
    ]);
    assert_eq!(status(&out), 0, "{out:?}");
    assert!(stdout(&out).contains(" ms"));
    let doc = parse_annotated("t", &fs::read_to_string(&tagged).unwrap()).unwrap();
    assert_eq!(doc.text(), fs::read_to_string(f.plain()).unwrap());
    assert!(!doc.spans.is_empty());

    let empty = f.path("empty.txt");
    fs::write(&empty, "").unwrap();
    let empty_out = f.path("empty_out.txt");
    assert_eq!(
        status(&deid(&[
            "tag",
            "--model",
            p(&f.model()),
            "--in",
            p(&empty),
            "--out",
            p(&empty_out)
        ])),
        0
    );
    assert_eq!(fs::read(&empty_out).unwrap(), b"");

    let crlf = f.path("crlf.txt");
    fs::write(&crlf, "Seen by Dr. Smith.\r\nNext line\r\n").unwrap();
    let out = deid(&[
        "tag",
        "--model",
        p(&f.model()),
        "--in",
        p(&crlf),
        "--out",
        p(&f.path("crlf_out.txt")),
    ]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("CRLF"));
    assert!(!fs::read_to_string(f.path("crlf_out.txt"))
        .unwrap()
        .contains('\r'));

    let mut corrupt = fs::read_to_string(f.model()).unwrap();
    corrupt = corrupt.replacen("\"bias\"", "\"bIas\"", 1);
    fs::write(f.path("corrupt.txt"), corrupt).unwrap();
    let out = deid(&[
        "tag",
        "--model",
        p(&f.path("corrupt.txt")),
        "--in",
        p(&f.plain()),
        "--out",
        p(&f.path("x.txt")),
    ]);
    assert_eq!(status(&out), 1);
    assert!(!f.path("x.txt").exists());
    assert_eq!(
        status(&deid(&[
            "tag",
            "--model",
            p(&f.path("missing")),
            "--in",
            p(&f.plain()),
            "--out",
            p(&f.path("x.txt"))
        ])),
        1
    );
}

#[test]
fn eval_formats_agree() {
    let f = Fixture::new();
    let out = deid(&[
        "eval",
        "--model",
        p(&f.model()),
        "--corpus",
        p(&f.train_dir()),
        "--format",
        "json",
    ]);
    assert_eq!(status(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let overall_f = json["overall"]["f_measure"].as_f64().unwrap();
    assert!(overall_f >= 0.95, "{overall_f}");

    let table = stdout(&deid(&[
        "eval",
        "--model",
        p(&f.model()),
        "--corpus",
        p(&f.train_dir()),
    ]));
    let last = table.lines().find(|l| l.starts_with("overall")).unwrap();
    assert!(last.ends_with(&format!("{overall_f:.4}")), "{last}");
    for (name, prf) in json["per_category"].as_object().unwrap() {
        let row = table
            .lines()
            .find(|l| l.starts_with(name.as_str()))
            .unwrap();
        let p = prf["precision"].as_f64().unwrap();
        assert!(row.contains(&format!("{p:.4}")), "{row}");
    }

    let identity = stdout(&deid(&[
        "eval",
        "--identity",
        "--corpus",
        p(&f.corpus()),
        "--format",
        "json",
    ]));
    let json: serde_json::Value = serde_json::from_str(&identity).unwrap();
    for key in ["precision", "recall", "f_measure"] {
        assert_eq!(json["overall"][key].as_f64(), Some(1.0));
    }
    assert_eq!(status(&deid(&["eval", "--corpus", p(&f.corpus())])), 2);
}

#[test]
fn benchmark_single_run_and_determinism() {
    let f = Fixture::new();
    let run = |out: &Path| {
        deid(&[
            "benchmark",
            "--corpus",
            p(&f.corpus()),
            "--splits",
            "50:50",
            "--trials",
            "1",
            "--seed",
            "3",
            "--out",
            p(out),
        ])
    };
    let first = run(&f.path("a.json"));
    assert_eq!(status(&first), 0, "{first:?}");
    assert_eq!(status(&run(&f.path("b.json"))), 0);
    let a = fs::read_to_string(f.path("a.json")).unwrap();
    assert_eq!(a, fs::read_to_string(f.path("b.json")).unwrap());

    let report: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["runs"].as_array().unwrap().len(), 1);
    let avg_f = report["averages"]["50:50"]["test"]["f"].as_f64().unwrap();
    let run_f = report["runs"][0]["test_eval"]["overall"]["f_measure"]
        .as_f64()
        .unwrap();
    assert_eq!(avg_f, run_f);

    let text = stdout(&first);
    for title in ["PRECISION", "RECALL", "F-MEASURE"] {
        assert!(
            text.contains(&format!("SUMMARIZED AVERAGE MODEL {title}")),
            "{text}"
        );
    }
    assert!(text.contains("50-50"));
}

#[test]
fn benchmark_defaults_print_three_tables_and_json() {
    let f = Fixture::new();
    let out = deid(&["benchmark", "--corpus", p(&f.corpus()), "--seed", "42"]);
    assert_eq!(status(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("15 runs"));
    for split in ["70-30", "66-34", "50-50"] {
        assert_eq!(
            text.lines().filter(|l| l.starts_with(split)).count(),
            3,
            "{text}"
        );
    }
    let json_start = text.find("{\n").unwrap();
    let report: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(report["runs"].as_array().unwrap().len(), 15);
}

#[test]
fn benchmark_rejects_degenerate_splits() {
    let f = Fixture::new();
    let tiny = f.path("tiny");
    fs::create_dir(&tiny).unwrap();
    for name in ["ime_0001.txt", "ime_0002.txt"] {
        fs::copy(f.corpus().join(name), tiny.join(name)).unwrap();
    }
    let out = deid(&["benchmark", "--corpus", p(&tiny), "--splits", "90:10"]);
    assert_eq!(status(&out), 1, "{out:?}");
}

#[test]
fn redact_modes() {
    let f = Fixture::new();
    let plain = f.plain();
    let original = fs::read_to_string(&plain).unwrap();

    let out = deid(&[
        "redact",
        "--model",
        p(&f.model()),
        "--mode",
        "placeholder",
        "--in",
        p(&plain),
        "--out",
        p(&f.path("r.txt")),
        "--map",
        p(&f.path("map.json")),
    ]);
    assert_eq!(status(&out), 2);
    assert!(!f.path("r.txt").exists() && !f.path("map.json").exists());

    assert_eq!(
        status(&deid(&[
            "redact",
            "--model",
            p(&f.model()),
            "--mode",
            "placeholder",
            "--in",
            p(&plain),
            "--out",
            p(&f.path("r.txt"))
        ])),
        0
    );
    let masked = fs::read_to_string(f.path("r.txt")).unwrap();
    assert!(masked.contains("[NAME]") && masked.contains("[DATE]"));

    let pseudo = |n: &str| {
        let out = deid(&[
            "redact",
            "--model",
            p(&f.model()),
            "--mode",
            "pseudonym",
            "--seed",
            "5",
            "--in",
            p(&plain),
            "--out",
            p(&f.path(&format!("p{n}.txt"))),
            "--map",
            p(&f.path(&format!("m{n}.json"))),
        ]);
        assert_eq!(status(&out), 0);
        (
            fs::read_to_string(f.path(&format!("p{n}.txt"))).unwrap(),
            fs::read_to_string(f.path(&format!("m{n}.json"))).unwrap(),
        )
    };
    let (text1, map1) = pseudo("1");
    assert_eq!((text1.clone(), map1.clone()), pseudo("2"));
    assert_ne!(text1, original);
    let map: serde_json::Value = serde_json::from_str(&map1).unwrap();
    assert!(!map["entries"].as_array().unwrap().is_empty());

    let empty_model = f.path("empty_model.txt");
    Model::empty().save(&empty_model).unwrap();
    assert_eq!(
        status(&deid(&[
            "redact",
            "--model",
            p(&empty_model),
            "--mode",
            "remove",
            "--in",
            p(&plain),
            "--out",
            p(&f.path("same.txt"))
        ])),
        0
    );
    assert_eq!(fs::read_to_string(f.path("same.txt")).unwrap(), original);

    assert_eq!(
        status(&deid(&[
            "redact",
            "--model",
            p(&f.model()),
            "--mode",
            "shred",
            "--in",
            p(&plain),
            "--out",
            p(&f.path("z.txt"))
        ])),
        2
    );
}
