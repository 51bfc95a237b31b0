use flagcoh::cli::{run, CohomologyReport, GeneratorsReport, ResolutionReport, ScanReport};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flagcoh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_call(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert!(code != 0 || err.is_empty(), "{err}");
    (code, out)
}

#[test]
fn cohomology_json_round_trip() {
    let (code, out) = json_call(&["cohomology", "--flag", "1,2,3", "--lambda", "4,4", "--mu", "2"]);
    assert_eq!(code, 0);
    let report: CohomologyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.schema, "1");
    assert_eq!(report.status, "exact");
    assert_eq!(report.cohomology.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    assert_eq!(report.cohomology[&3][0].weight.entries(), &[2, 2, 2]);
    assert_eq!(serde_json::to_string(&report).unwrap(), out.trim_end());
}

#[test]
fn cohomology_json_shape() {
    let (_, out) = json_call(&["cohomology", "--flag", "1,2,3", "--lambda", "4,1", "--mu", "4,1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["flag"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["lambda"], serde_json::json!([4, 1]));
    assert_eq!(v["cohomology"]["2"][0], serde_json::json!({"weight": [2, 0, -2], "mult": 1}));
    for key in ["schema", "method", "path", "status"] {
        assert!(v[key].is_string(), "{key}");
    }
}

#[test]
fn empty_partitions_and_zero_cohomology() {
    let (code, out) = json_call(&["cohomology", "--flag", "1,2,3", "--lambda", "", "--mu", ""]);
    assert_eq!(code, 0);
    let report: CohomologyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.cohomology[&0][0].weight.entries(), &[0, 0, 0]);
    let (_, out) = json_call(&["cohomology", "--flag", "1,2,3", "--lambda", "3,2", "--mu", "3,1"]);
    let report: CohomologyReport = serde_json::from_str(&out).unwrap();
    assert!(report.cohomology.is_empty());
}

#[test]
fn split_only_reports_ambiguity() {
    let args = ["cohomology", "--flag", "1,3,4", "--lambda", "3,1", "--mu", "3,1", "--method", "split-only"];
    let (code, out) = json_call(&args);
    assert_eq!(code, 0);
    let report: CohomologyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.status, "ambiguous");
    assert_eq!(report.path, "reconcile");
}

#[test]
fn text_output() {
    let (code, out, _) = call(&["cohomology", "--flag", "1,2,3", "--lambda", "4,4", "--mu", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("H^2: S(3,3,0)"), "{out}");
    assert!(out.contains("H^3: S(2,2,2)"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--max-n", "3", "--max-part", "2"];
    let (c1, a) = json_call(&args);
    let (c2, b) = json_call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let report: ScanReport = serde_json::from_str(&a).unwrap();
    assert!(report.violations.is_empty());
    assert!(report.timing.is_none());
    assert_eq!(serde_json::to_string(&report).unwrap(), a.trim_end());

    let args = ["resolution", "--dim", "2,2,2", "--ranks", "1,1,0"];
    let (_, a) = json_call(&args);
    let (_, b) = json_call(&args);
    assert_eq!(a, b);
}

#[test]
fn resolution_and_generators() {
    let (code, out) = json_call(&["resolution", "--dim", "1,1,1", "--ranks", "0,0,0"]);
    assert_eq!(code, 0);
    let report: ResolutionReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.codim, 2);
    let counts: Vec<u64> = (0..=2)
        .map(|i| report.terms.iter().filter(|t| t.i == i).flat_map(|t| &t.summands).map(|s| s.mult).sum())
        .collect();
    assert_eq!(counts, vec![1, 2, 1]);

    let (code, out) = json_call(&["generators", "--dim", "3,4,3", "--ranks", "1,1,0"]);
    assert_eq!(code, 0);
    let report: GeneratorsReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.verdict, "PASS");
    let kinds: Vec<&str> = report.families.iter().map(|f| f.kind.as_str()).collect();
    assert_eq!(kinds, vec!["X", "Y", "YX"]);
}

#[test]
fn exit_codes() {
    let bad_partition = call(&["cohomology", "--flag", "1,2,3", "--lambda", "1,2", "--mu", ""]);
    assert_eq!(bad_partition.0, 2);
    assert!(!bad_partition.2.is_empty());

    let bad_flag = call(&["cohomology", "--flag", "2,1,3", "--lambda", "1", "--mu", ""]);
    assert_eq!(bad_flag.0, 2);

    let too_long = call(&["cohomology", "--flag", "1,2,3", "--lambda", "1,1,1", "--mu", ""]);
    assert_eq!(too_long.0, 2);

    let infeasible = call(&["resolution", "--dim", "1,1,1", "--ranks", "2,0,0"]);
    assert_eq!(infeasible.0, 2);
    assert!(infeasible.2.contains("infeasible"), "{}", infeasible.2);

    let capped = call(&["--cap", "1", "cohomology", "--flag", "1,3,4", "--lambda", "3,1", "--mu", "3,1"]);
    assert_eq!(capped.0, 3, "{}", capped.2);
    assert!(capped.2.contains("cap"), "{}", capped.2);

    let unknown = call(&["frobnicate"]);
    assert_eq!(unknown.0, 2);
}

#[test]
fn cache_directory_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["--cache-dir", path, "cohomology", "--flag", "1,3,4", "--lambda", "3,1", "--mu", "2"];
    let (code, first, _) = call(&args);
    assert_eq!(code, 0);
    let cache = dir.path().join("lr-cache.txt");
    assert!(cache.exists());
    let (code, second, err) = call(&args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(first, second);
}
