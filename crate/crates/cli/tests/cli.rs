use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use homcoder::document::{parse, serialize, to_value, Document};
use homcoder::report::parse_reports;
use homcoder::run;
use homcoder_core::structures::{all_passed, check_bundle};
use homcoder_core::{int, Bundle, LinMap, Side, TensorSpace};
use proptest::prelude::*;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "bundle"))
        .collect();
    files.sort();
    files
}

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn homcoder(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("homcoder").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn corpus_round_trips_byte_identically() {
    let files = corpus_files();
    assert!(files.len() >= 10);
    for file in files {
        let text = fs::read_to_string(&file).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
        assert_eq!(serialize(&doc), text, "{}", file.display());
    }
}

#[test]
fn whitespace_and_key_order_do_not_survive_canonicalization() {
    let text = fs::read_to_string(corpus("l2.bundle")).unwrap();
    let doc = parse(&text).unwrap();
    let compact = serde_json::to_string(&to_value(&doc)).unwrap();
    assert_ne!(compact, text);
    assert_eq!(serialize(&parse(&compact).unwrap()), text);
}

#[test]
fn check_exit_code_matches_library_verdict() {
    for file in corpus_files() {
        let doc = parse(&fs::read_to_string(&file).unwrap()).unwrap();
        let expected = if all_passed(&check_bundle(&doc.bundle).unwrap()) {
            0
        } else {
            1
        };
        assert_eq!(
            homcoder(&["check", path_str(&file)]).code,
            expected,
            "{}",
            file.display()
        );
    }
}

#[test]
fn check_l2_passes_every_identity() {
    let o = homcoder(&["check", path_str(&corpus("l2.bundle"))]);
    assert_eq!(o.code, 0);
    assert_eq!(
        o.out,
        "skew_symmetry PASS\nhom_co_jacobi PASS\nmultiplicativity PASS\ncoderivation PASS\n"
    );
}

#[test]
fn check_perturbed_l2_fails_with_witness() {
    let o = homcoder(&["check", path_str(&corpus("l2-perturbed.bundle"))]);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("skew_symmetry FAIL at [1]"), "{}", o.out);
}

#[test]
fn check_input_errors_exit_2() {
    let o = homcoder(&["check", "definitely/not/here.bundle"]);
    assert_eq!(o.code, 2);
    assert!(o.err.starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(corpus("l2.bundle")).unwrap();
    let bad = dir.path().join("bad.bundle");
    fs::write(&bad, text.replace("\"-1\"", "\"1/0\"")).unwrap();
    let o = homcoder(&["check", path_str(&bad)]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("line 12"), "{}", o.err);
    assert!(o.err.contains("matrices.delta"), "{}", o.err);

    assert_eq!(homcoder(&["frobnicate"]).code, 2);
    assert_eq!(homcoder(&["--help"]).code, 0);
}

#[test]
fn json_reports_parse_back() {
    for file in corpus_files() {
        let o = homcoder(&["check", "--json", path_str(&file)]);
        let doc = parse(&fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!(
            parse_reports(&o.out).unwrap(),
            check_bundle(&doc.bundle).unwrap()
        );
    }
}

#[test]
fn constructed_bundles_repass_their_embedded_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["rb-twist", "l2ass.bundle", "--lambda=-1", "--R=identity"],
        &["rb-twist", "l2ass.bundle", "--lambda=0", "--R=zero"],
        &["dualize", "l2.bundle"],
        &["dualize", "l2-dual.bundle"],
        &["adjoint-comodule", "l2.bundle"],
        &["semidirect", "l2-adjoint.bundle"],
        &["semidirect", "l2-coadjoint-rep.bundle"],
        &["dsum", "l2.bundle", "heisenberg.bundle"],
        &["dsum-alg", "l2-dual.bundle", "l2-dual.bundle"],
        &["commutator-ass", "l2ass.bundle"],
        &["commutator-prelie", "l2ass-rb.bundle"],
        &["endo-twist", "l2ass.bundle", "--T=identity"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let out = dir.path().join(format!("{i}.bundle"));
        let mut args = vec!["construct".to_string(), case[0].to_string()];
        for arg in &case[1..] {
            if arg.starts_with("--") {
                args.push(arg.to_string());
            } else {
                args.push(corpus(arg).to_str().unwrap().to_string());
            }
        }
        args.push(format!("--out={}", out.display()));
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = homcoder(&argv);
        assert_eq!(o.code, 0, "{case:?}: {}", o.err);

        let text = fs::read_to_string(&out).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(serialize(&doc), text);
        let embedded = serde_json::to_string(&doc.metadata["reports"]).unwrap();
        assert_eq!(
            parse_reports(&embedded).unwrap(),
            check_bundle(&doc.bundle).unwrap()
        );
        assert_eq!(doc.metadata["construction"], case[0]);
    }
}

#[test]
fn rb_twist_of_l2ass_is_pre_lie() {
    let o = homcoder(&[
        "construct",
        "rb-twist",
        path_str(&corpus("l2ass.bundle")),
        "--lambda=-1",
        "--R=identity",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let doc = parse(&o.out).unwrap();
    assert_eq!(doc.bundle.flavor, "pre_lie");
    let names: Vec<&str> = doc.metadata["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["hom_pre_lie", "multiplicativity", "coderivation"]);
}

#[test]
fn dualize_l2_gives_a_der_pair_with_certificate() {
    let o = homcoder(&["construct", "dualize", path_str(&corpus("l2.bundle"))]);
    assert_eq!(o.code, 0);
    let doc = parse(&o.out).unwrap();
    assert!(matches!(doc.bundle.side, Side::Algebra { .. }));
    assert!(doc.bundle.der_pair().is_ok());
    assert_eq!(
        doc.metadata["certificate"]["direction"],
        "coalgebra_to_algebra"
    );
}

#[test]
fn construction_refusals_exit_1() {
    let o = homcoder(&[
        "construct",
        "dsum",
        path_str(&corpus("l2.bundle")),
        path_str(&corpus("l2ass.bundle")),
    ]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("flavor mismatch"));

    let o = homcoder(&[
        "construct",
        "commutator-prelie",
        path_str(&corpus("l2.bundle")),
    ]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("refused"), "{}", o.err);

    let o = homcoder(&[
        "construct",
        "rb-twist",
        path_str(&corpus("l2ass.bundle")),
        "--lambda=1",
        "--R=identity",
    ]);
    assert_eq!(o.code, 1);

    let o = homcoder(&[
        "construct",
        "rb-twist",
        path_str(&corpus("l2ass.bundle")),
        "--R=identity",
    ]);
    assert_eq!(o.code, 2);
    let o = homcoder(&["construct", "dsum", path_str(&corpus("l2.bundle"))]);
    assert_eq!(o.code, 2);
}

#[test]
fn semidirect_with_broken_comodule_writes_output_and_exits_1() {
    let text = fs::read_to_string(corpus("l2-adjoint.bundle")).unwrap();
    let mut doc = parse(&text).unwrap();
    let module = doc.bundle.module.as_mut().unwrap();
    let old = module.structure.entry(0, 0).clone();
    module.structure.set(0, 0, old + int(1));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("broken.bundle");
    fs::write(&input, serialize(&doc)).unwrap();
    assert_eq!(homcoder(&["check", path_str(&input)]).code, 1);
    let o = homcoder(&["construct", "semidirect", path_str(&input)]);
    assert_eq!(o.code, 1);
    let out = parse(&o.out).unwrap();
    assert!(!all_passed(&check_bundle(&out.bundle).unwrap()));
}

#[test]
fn solve_listings() {
    let o = homcoder(&["solve", "coder", path_str(&corpus("l2.bundle"))]);
    assert_eq!(o.code, 0);
    assert!(o.out.starts_with("dimension 2\n"));
    assert!(o
        .out
        .contains("basis 0: [\n  [\"0\", \"0\"],\n  [\"1\", \"0\"]\n]\n"));
    assert!(o
        .out
        .contains("basis 1: [\n  [\"0\", \"0\"],\n  [\"0\", \"1\"]\n]\n"));
    let o = homcoder(&["solve", "coder", path_str(&corpus("zero3.bundle"))]);
    assert!(o.out.starts_with("dimension 9\n"));
    assert_eq!(o.out.matches("basis").count(), 9);
    let o = homcoder(&["solve", "coder", path_str(&corpus("grouplike1.bundle"))]);
    assert_eq!(o.out, "dimension 0\n");
    let o = homcoder(&["solve", "der", path_str(&corpus("l2-dual.bundle"))]);
    assert!(o.out.starts_with("dimension 2\n"));
    assert_eq!(
        homcoder(&["solve", "der", path_str(&corpus("l2.bundle"))]).code,
        2
    );
    assert_eq!(homcoder(&["solve", "coder", "missing.bundle"]).code, 2);
}

fn stream(text: &str) -> Vec<Document> {
    let values = serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>();
    values
        .map(|v| parse(&serde_json::to_string(&v.unwrap()).unwrap()).unwrap())
        .collect()
}

#[test]
fn search_generates_valid_deterministic_bundles() {
    let a = homcoder(&["search", "lie", "--dim", "2", "--seed", "7"]);
    assert_eq!(a.code, 0, "{}", a.err);
    let b = homcoder(&["search", "lie", "--dim", "2", "--seed", "7"]);
    assert_eq!(a.out, b.out);
    let docs = stream(&a.out);
    assert_eq!(docs.len(), 1);
    assert_eq!(docs[0].bundle.flavor, "lie");
    assert!(all_passed(&check_bundle(&docs[0].bundle).unwrap()));

    let o = homcoder(&[
        "search",
        "coassociative",
        "--dim",
        "3",
        "--seed",
        "1",
        "--count",
        "4",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    for doc in stream(&o.out) {
        assert_eq!(doc.bundle.dimension, 3);
        assert!(all_passed(&check_bundle(&doc.bundle).unwrap()));
    }
}

#[test]
fn rb_search_on_l2ass_includes_identity() {
    let o = homcoder(&[
        "search",
        "--kind",
        "rb",
        "--lambda=-1",
        "--grid=0,1,-1",
        "--dim",
        "2",
        "--input",
        path_str(&corpus("l2ass.bundle")),
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let id = LinMap::identity(TensorSpace::power(2, 1));
    let docs = stream(&o.out);
    assert!(docs.iter().any(|d| d.bundle.r.as_ref() == Some(&id)));
    for doc in docs {
        assert!(all_passed(&check_bundle(&doc.bundle).unwrap()));
    }
}

#[test]
fn search_guard_reports_candidate_count() {
    let o = homcoder(&["search", "lie", "--dim", "9", "--kind", "endo"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("3^81 candidates"), "{}", o.err);
    let o = homcoder(&["search", "lie", "--dim", "4", "--kind", "rb", "--lambda=0"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("43046721 candidates"), "{}", o.err);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_homcoder");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", path_str(&corpus("l2.bundle"))]), Some(0));
    assert_eq!(
        status(&["check", path_str(&corpus("l2-perturbed.bundle"))]),
        Some(1)
    );
    assert_eq!(status(&["check", "missing.bundle"]), Some(2));
}

fn small_rational() -> impl Strategy<Value = homcoder_core::Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| homcoder_core::ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_parse_is_identity(
        n in 1usize..=3,
        entries in proptest::collection::vec(small_rational(), 27 + 9),
        with_phi in any::<bool>(),
    ) {
        let line = TensorSpace::power(n, 1);
        let delta = LinMap::from_fn(line.clone(), TensorSpace::power(n, 2), |r, c| entries[r * n + c].clone());
        let phi = LinMap::from_fn(line.clone(), line, |r, c| entries[27 + r * n + c].clone());
        let mut bundle = Bundle::from_coalgebra(
            &homcoder_core::HomCoalgebra::classical(delta, homcoder_core::CoalgebraFlavor::Unchecked).unwrap(),
        );
        if with_phi {
            bundle.phi = Some(phi);
        }
        let text = serialize(&Document::new(bundle.clone()));
        let doc = parse(&text).unwrap();
        prop_assert_eq!(&doc.bundle, &bundle);
        prop_assert_eq!(serialize(&doc), text);
    }
}
