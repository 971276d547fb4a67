use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use site_forge::document::{parse, serialize, Site};
use site_forge_core::topology::atomic_topology;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn site_forge(args: &[&str], guard: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_site-forge"));
    cmd.args(args).env_remove("SITE_FORGE_GUARD");
    if let Some(g) = guard {
        cmd.env("SITE_FORGE_GUARD", g);
    }
    let out = cmd.output().unwrap();
    Output {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    site_forge(&args, None)
}

const CANONICAL: [&str; 11] = [
    "monoid.site",
    "pair.site",
    "left-zero.site",
    "cospan.site",
    "chain2.site",
    "bad-stability.site",
    "big.site",
    "monoid.karoubi.site",
    "monoid.topologies.site",
    "pair.karoubi.site",
    "monoid.site",
];

#[test]
fn canonical_files_round_trip_byte_identically() {
    for f in CANONICAL {
        let out = on("validate", f, &["--canonical"]);
        assert_eq!(out.code, 0, "{f}: {}", out.stderr);
        assert_eq!(out.stdout, read(f), "{f}");
        let doc = parse(&read(f)).unwrap();
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }
}

#[test]
fn commented_documents_normalize() {
    let doc = parse(&read("monoid.transfer.site")).unwrap();
    let once = serialize(&doc);
    assert_eq!(serialize(&parse(&once).unwrap()), once);
    assert!(!once.contains('#'));
}

#[test]
fn golden_outputs() {
    for (cmd, input, golden) in [
        ("karoubi", "monoid.site", "monoid.karoubi.site"),
        ("karoubi", "pair.site", "pair.karoubi.site"),
        ("transfer", "monoid.site", "monoid.transfer.site"),
        ("enumerate-topologies", "monoid.site", "monoid.topologies.site"),
    ] {
        let out = on(cmd, input, &[]);
        assert_eq!(out.code, 0, "{cmd} {input}");
        assert_eq!(out.stdout, read(golden), "{cmd} {input}");
    }
}

#[test]
fn transferred_atomic_is_atomic_on_envelope() {
    let site = Site::load(&read("monoid.transfer.site")).unwrap();
    let (_, j) = &site.tables[0];
    assert_eq!(*j, atomic_topology(&site.category).unwrap());
    let envelope = Site::load(&read("monoid.karoubi.site")).unwrap();
    assert_eq!(*envelope.category, *site.category);
}

#[test]
fn emitted_documents_revalidate() {
    let cases: [(&str, &str, &[&str]); 4] = [
        ("karoubi", "pair.site", &[]),
        ("transfer", "pair.site", &[]),
        ("transfer", "monoid.site", &["--topology", "J"]),
        ("enumerate-topologies", "chain2.site", &[]),
    ];
    for (cmd, input, extra) in cases {
        let out = on(cmd, input, extra);
        assert_eq!(out.code, 0);
        let mut tmp = tempfile::NamedTempFile::new().unwrap();
        tmp.write_all(out.stdout.as_bytes()).unwrap();
        let check = site_forge(&["check-topology", tmp.path().to_str().unwrap()], None);
        let valid = site_forge(&["validate", tmp.path().to_str().unwrap()], None);
        assert_eq!(valid.code, 0, "{cmd} {input}");
        if cmd != "karoubi" {
            assert_eq!(check.code, 0, "{cmd} {input}: {}", check.stdout);
        }
    }
}

#[test]
fn exit_codes() {
    let cases: Vec<(Output, i32)> = vec![
        (on("validate", "monoid.site", &[]), 0),
        (on("validate", "bad-assoc.site", &[]), 1),
        (on("validate", "bad-syntax.site", &[]), 2),
        (on("validate", "missing.site", &[]), 2),
        (on("check-topology", "pair.site", &[]), 0),
        (on("check-topology", "bad-stability.site", &[]), 1),
        (on("check-topology", "left-zero.site", &[]), 1),
        (on("check-topology", "cospan.site", &[]), 2),
        (on("check-ore", "monoid.site", &[]), 0),
        (on("check-ore", "cospan.site", &[]), 1),
        (on("enumerate-topologies", "big.site", &[]), 3),
        (on("check-flat", "chain2.site", &["--functor", "R"]), 0),
        (on("check-flat", "chain2.site", &["--functor", "S"]), 1),
        (on("check-flat", "chain2.site", &["--functor", "X"]), 2),
        (on("yoneda-check", "chain2.site", &[]), 0),
        (on("transfer", "bad-stability.site", &[]), 1),
        (site_forge(&["check-homogeneous", "--site", "ordfm:5", "--model", "Q"], None), 0),
        (site_forge(&["check-homogeneous", "--site", "ordfm:3", "--model", "Z"], None), 1),
        (site_forge(&["check-homogeneous", "--site", "ordfm:3", "--model", "chain:4"], None), 1),
        (site_forge(&["check-homogeneous", "--site", "ordfm:8", "--model", "Q"], None), 3),
        (site_forge(&["check-homogeneous", "--site", "ordfm:3", "--model", "R"], None), 2),
        (site_forge(&["check-homogeneous", "--site", "ordfm:3"], None), 2),
        (site_forge(&["no-such-command"], None), 2),
    ];
    for (i, (out, code)) in cases.iter().enumerate() {
        assert_eq!(out.code, *code, "case {i}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn guard_variable_raises_limits() {
    let big = data("big.site");
    let out = site_forge(&["enumerate-topologies", big.to_str().unwrap()], Some("40"));
    assert_eq!(out.code, 0);
    let out = site_forge(&["check-homogeneous", "--site", "ordfm:8", "--model", "chain:2"], Some("8"));
    assert_eq!(out.code, 1);
    let out = site_forge(&["check-ore", big.to_str().unwrap()], Some("lots"));
    assert_eq!(out.code, 2);
}

#[test]
fn integer_witness_names_the_density_arrow() {
    let out = site_forge(&["check-homogeneous", "--site", "ordfm:3", "--model", "Z"], None);
    assert!(out.stdout.contains("  arrow: 02@3\n"));
    assert!(out.stdout.contains("  map: f(0)=0, f(1)=2\n"));
    assert!(out.stdout.contains("  y: (0,1)\n"));
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("{{{}}}", items.iter().map(render).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

#[test]
fn json_and_text_report_the_same_witness() {
    let runs: Vec<Vec<String>> = vec![
        vec!["check-ore".into(), data("cospan.site").display().to_string()],
        vec!["check-topology".into(), data("bad-stability.site").display().to_string()],
        vec!["check-flat".into(), data("chain2.site").display().to_string(), "--functor".into(), "S".into()],
        vec!["validate".into(), data("bad-assoc.site").display().to_string()],
        vec!["check-homogeneous".into(), "--site".into(), "ordfm:4".into(), "--model".into(), "chain:3".into()],
        vec!["check-homogeneous".into(), "--site".into(), "ordfm:3".into(), "--model".into(), "Z".into(), "--cotopology".into(), "atomic".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = site_forge(&args, None);
        let mut jargs = vec!["--json"];
        jargs.extend(&args);
        let json = site_forge(&jargs, None);
        assert_eq!(text.code, 1);
        assert_eq!(json.code, 1);
        let v: Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["exit_code"], 1);
        assert_eq!(v["outcome"], "fail");
        let w = v["witness"].as_object().unwrap();
        assert!(text.stdout.contains(&format!("witness: {}\n", render(&w["kind"]))));
        for (k, val) in w.iter().filter(|(k, _)| *k != "kind") {
            let line = format!("  {k}: {}\n", render(val));
            assert!(text.stdout.contains(&line), "{args:?}: missing {line:?} in\n{}", text.stdout);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        ["transfer", data("pair.site").to_str().unwrap()].iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        vec!["--json".into(), "check-homogeneous".into(), "--site".into(), "ordfm:4".into(), "--model".into(), "Q".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(site_forge(&args, None).stdout, site_forge(&args, None).stdout);
    }
}
