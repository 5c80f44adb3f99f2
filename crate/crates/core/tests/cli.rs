use std::path::PathBuf;

use kirbylab::cli::{run, Outcome};
use kirbylab::evaluator::tau_manifold;
use kirbylab::families::{hn_zd, radford_hn, HnSpec};
use kirbylab::io::AlgebraFile;
use kirbylab::kirby::Kirby;
use kirbylab::links::unknot;

fn kl(args: &[&str]) -> Outcome {
    run(std::iter::once("kirbylab").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kirbylab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn line<'a>(out: &'a Outcome, key: &str) -> &'a str {
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{}", out.stdout))
}

#[test]
fn documented_examples() {
    let k = kl(&["kirby", "check", "--algebra", "hn:3", "--z", "zd:1"]);
    assert_eq!(k.code, 0, "{}", k.stderr);
    assert_eq!(line(&k, "in I(H)^norm"), "true");
    let inv = kl(&["invariant", "--algebra", "hn:3", "--z", "zd:3", "--link", "unknot:+1"]);
    assert_eq!(inv.code, 0, "{}", inv.stderr);
    assert_eq!(line(&inv, "invariant"), "1");
    let v = kl(&["verify", "--algebra", "cyclic:5:q=1"]);
    assert_eq!(v.code, 0);
    assert_eq!(line(&v, "all checks pass"), "true");
}

#[test]
fn exit_codes() {
    assert_eq!(kl(&["invariant", "--algebra", "hn:3", "--zz", "1"]).code, 2);
    assert_eq!(kl(&["frobnicate"]).code, 2);
    let bad_uri = kl(&["verify", "--algebra", "hn3"]);
    assert_eq!(bad_uri.code, 2);
    assert!(bad_uri.stderr.contains("--algebra"), "{}", bad_uri.stderr);
    let bad_link = kl(&["invariant", "--algebra", "hn:1", "--z", "zd:1", "--link", "figure8:0"]);
    assert_eq!(bad_link.code, 2);
    assert!(bad_link.stderr.contains("--link"));
    // even n is a domain error, not a grammar error
    assert_eq!(kl(&["verify", "--algebra", "hn:2"]).code, 1);
    assert_eq!(kl(&["kirby", "check", "--algebra", "hn:3", "--z", "zd:2"]).code, 1);
    assert_eq!(kl(&["rt", "--algebra", "hn:1", "--link", "unknot:1"]).code, 1);
    assert_eq!(kl(&["--help"]).code, 0);
}

#[test]
fn invariant_refuses_non_kirby_unless_forced() {
    let refused = kl(&["invariant", "--algebra", "hn:1", "--z", "unit", "--link", "unknot:1"]);
    assert_eq!(refused.code, 1);
    assert!(refused.stderr.contains("--force"));
    let forced = kl(&["invariant", "--algebra", "hn:1", "--z", "unit", "--link", "unknot:1", "--force"]);
    assert_eq!(forced.code, 0, "{}", forced.stderr);
    assert_eq!(line(&forced, "status"), "not an invariant");
    assert!(!forced.stdout.lines().any(|l| l.starts_with("invariant:")));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["invariant", "--algebra", "hn:3", "--z", "zd:1", "--link", "hopf:1,-1", "--format", "json"][..],
        &["kirby", "subspaces", "--algebra", "hn:3", "--format", "json"][..],
        &["fusion", "pointed:6", "--format", "json"][..],
        &["traces", "--algebra", "cyclic:5:q=1"][..],
    ] {
        let a = kl(args);
        assert_eq!(a.code, 0, "{:?}: {}", args, a.stderr);
        assert_eq!(a, kl(args));
    }
}

#[test]
fn batch_lens_spaces() {
    let manifest = scratch("lens.txt");
    let mut text = String::from("# L(p,1) over hn:3 with z_1\n");
    for p in -3..=3 {
        text.push_str(&format!("hn:3 zd:1 unknot:{p}\n"));
    }
    std::fs::write(&manifest, text).unwrap();
    let out = kl(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let spec = HnSpec::new(3).unwrap();
    let rh = radford_hn(&spec).unwrap();
    let k = Kirby::new(&rh);
    let z = hn_zd(&spec, 1).unwrap();
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    for (row, p) in rows.iter().zip(-3..=3) {
        let value = row.rsplit('\t').next().unwrap();
        assert_eq!(value, tau_manifold(&k, &unknot(p), &z).unwrap().to_string(), "p = {p}");
    }

    let empty = scratch("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let e = kl(&["batch", empty.to_str().unwrap()]);
    assert_eq!((e.code, e.stdout.as_str()), (0, "row\talgebra\tz\tlink\tvalue\n"));

    let broken = scratch("broken.json");
    std::fs::write(
        &broken,
        r#"[{"algebra": "hn:1", "z": "zd:1", "link": "unknot:0"}, {"algebra": "hn:1", "link": "unknot:0"}, {"algebra": "hn:1", "z": "zd:1", "link": "unknot:-1"}]"#,
    )
    .unwrap();
    let b = kl(&["batch", broken.to_str().unwrap(), "--format", "json"]);
    assert_eq!(b.code, 1);
    let v: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[1]["error"].as_str().unwrap().contains("malformed row"));
    assert_eq!(rows[2]["value"], "1");
}

#[test]
fn algebra_files_and_out_flag() {
    let rh = radford_hn(&HnSpec::new(1).unwrap()).unwrap();
    let path = scratch("sweedler.json");
    std::fs::write(&path, serde_json::to_string_pretty(&AlgebraFile::from_ribbon(&rh).to_json()).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let from_file = kl(&["invariant", "--algebra", p, "--z", "s-integral", "--link", "hopf:0,0"]);
    let from_uri = kl(&["invariant", "--algebra", "sweedler", "--z", "s-integral", "--link", "hopf:0,0"]);
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(line(&from_file, "invariant"), line(&from_uri, "invariant"));

    let mut broken: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    broken["antipode"] = broken["mult"][0].clone();
    let bpath = scratch("broken-antipode.json");
    std::fs::write(&bpath, broken.to_string()).unwrap();
    let v = kl(&["verify", "--algebra", bpath.to_str().unwrap()]);
    assert_eq!(v.code, 1);
    assert!(line(&v, "hopf").starts_with("FAIL"), "{}", v.stdout);

    let out = scratch("report.json");
    let r = kl(&["integrals", "--algebra", "sweedler", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["g"], "a");
    assert_eq!(report["unimodular"], false);
}

#[test]
fn fusion_and_rt_verbs() {
    let f = kl(&["fusion", "--algebra", "cyclic:5:q=1", "--format", "json"]);
    assert_eq!(f.code, 0, "{}", f.stderr);
    let v: serde_json::Value = serde_json::from_str(&f.stdout).unwrap();
    assert_eq!(v["closed subsets"].as_array().unwrap().len(), 2);
    let rt = kl(&["rt", "--algebra", "cyclic:5:q=1", "--link", "unknot:1"]);
    assert_eq!(line(&rt, "rt"), "1");
    assert_eq!(kl(&["fusion"]).code, 2);
}
