//! Fixed demo invocations. Text and CSV output is compared byte for byte with
//! the files in `tests/golden/`; set `UPDATE_GOLDEN=1` to rewrite them. JSON
//! output is validated against the schemas in `schema/`.

use std::path::{Path, PathBuf};

use regemb::cli::run;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("regemb").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn map_file() -> String {
    root().join("data/moment_curve_4.json").display().to_string()
}

/// (golden name, args, expected exit code, schema for the json form)
fn demos() -> Vec<(&'static str, Vec<String>, i32, &'static str)> {
    let map = map_file();
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("bounds_table", v(&["bounds", "table"]), 0, "bounds_table"),
        ("bounds_table_rows", v(&["bounds", "table", "--rows", "3,3,3", "3,9,3"]), 0, "bounds_table"),
        ("bounds_query_chisholm", v(&["bounds", "query", "--theorem", "kregular-chisholm", "--d", "3", "--k", "8", "--p", "3"]), 0, "bound_report"),
        ("bounds_query_skew", v(&["bounds", "query", "--theorem", "skew-prime", "--d", "4", "--l", "5"]), 0, "bound_report"),
        ("bounds_query_cat", v(&["bounds", "query", "--theorem", "cat-lower", "--d", "2", "--k", "12"]), 0, "bound_report"),
        ("classes_cyclic", v(&["classes", "cyclic", "--p", "5", "--d", "3", "--mult", "2"]), 0, "classes"),
        ("classes_config", v(&["classes", "config", "--p", "3", "--t", "1", "--k", "3"]), 0, "classes"),
        ("newton_plain", v(&["newton", "check", "--p", "3", "--d", "5"]), 0, "newton"),
        ("newton_extended", v(&["newton", "check", "--p", "3", "--d", "7", "--n", "3"]), 0, "newton"),
        ("dl_stats", v(&["dl", "stats", "--p", "2", "--seq", "2,1"]), 0, "dl_stats"),
        ("dl_stats_odd", v(&["dl", "stats", "--p", "3", "--seq", "1,3,0,1"]), 0, "dl_stats"),
        ("heights", v(&["heights", "--d", "3", "--p", "3", "--k", "3"]), 0, "heights"),
        ("heights_bound_only", v(&["heights", "--d", "4", "--p", "2"]), 0, "heights"),
        ("verify_vandermonde", v(&["verify", "vandermonde", "--k", "4", "--samples", "20", "--seed", "7"]), 0, "verify"),
        ("verify_truncated", v(&["verify", "vandermonde", "--k", "4", "--samples", "5", "--seed", "7", "--truncated"]), 1, "verify"),
        ("verify_map", vec!["verify".into(), "map".into(), "--file".into(), map, "--k".into(), "4".into(), "--samples".into(), "10".into(), "--seed".into(), "3".into()], 0, "verify"),
    ]
}

fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name} differs from golden file\n--- expected\n{expected}\n--- actual\n{actual}"))
    }
}

/// Absolute paths leak into outputs that echo `--file`; strip them.
fn scrub(s: &str) -> String {
    s.replace(&map_file(), "data/moment_curve_4.json")
}

fn with_format(args: &[String], format: &str) -> Vec<String> {
    let mut a = args.to_vec();
    a.push("--format".into());
    a.push(format.into());
    a
}

#[test]
fn text_and_csv_match_golden_files() {
    let mut failures = Vec::new();
    for (name, args, code, _) in demos() {
        for (format, ext) in [("text", "txt"), ("csv", "csv")] {
            let argv = with_format(&args, format);
            let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
            let (got, out) = invoke(&refs);
            assert_eq!(got, code, "{name} --format {format}");
            if let Err(e) = check_golden(&format!("{name}.{ext}"), &scrub(&out)) {
                failures.push(e);
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (name, args, _, _) in demos() {
        for format in ["text", "csv", "json"] {
            let argv = with_format(&args, format);
            let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
            assert_eq!(invoke(&refs).1, invoke(&refs).1, "{name} --format {format}");
        }
    }
}

fn load_schema(name: &str) -> jsonschema::JSONSchema {
    let path = root().join("schema").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn json_output_validates_against_schema() {
    for (name, args, code, schema) in demos() {
        let argv = with_format(&args, "json");
        let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
        let (got, out) = invoke(&refs);
        assert_eq!(got, code, "{name}");
        let value: serde_json::Value =
            serde_json::from_str(&out).unwrap_or_else(|e| panic!("{name}: {e}\n{out}"));
        assert!(value.is_object(), "{name}: top level must be an object");
        let compiled = load_schema(schema);
        if let Err(errors) = compiled.validate(&value) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{name} violates {schema}: {}", msgs.join("; "));
        };
    }
}

#[test]
fn schemas_reject_obvious_garbage() {
    for schema in ["bounds_table", "bound_report", "classes", "newton", "dl_stats", "heights", "verify"] {
        let compiled = load_schema(schema);
        assert!(!compiled.is_valid(&serde_json::json!({"unexpected": true})), "{schema}");
    }
}

#[test]
fn spec_examples() {
    let (code, out) = invoke(&["bounds", "table", "--rows", "3,3,3", "3,9,3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "d,k,p,thmA,thmB,thmC,notes");
    assert_eq!(lines[1], "3,3,3,4,7,7,");
    assert_eq!(lines[2], "3,9,3,22,,25,");

    let (code, out) = invoke(&["newton", "check", "--p", "3", "--d", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("2*x_2 + 2*x_1^2") || out.contains("2*x_1^2 + 2*x_2"), "{out}");
    assert!(out.contains("overall: PASS"));

    let (code, out) = invoke(&["dl", "stats", "--p", "2", "--seq", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "degree 3\nlength 2\nexcess 1\nb 0\nadmissible\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["bounds", "table", "--rows", "3,3"]).0, 2);
    assert_eq!(invoke(&["verify", "vandermonde", "--k", "3"]).0, 2, "seed is mandatory");
    assert_eq!(invoke(&["newton", "check", "--p", "4", "--d", "5"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("regemb-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: &Path = &dir.join("dl.json");
    let p = path.display().to_string();
    let (code, stdout) = invoke(&["dl", "stats", "--p", "2", "--seq", "2,1", "--format", "json", "--out", &p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["degree"], 3);
    std::fs::remove_dir_all(&dir).ok();
}
