use std::process::Command;

fn fga(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fga")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn worked_invocations() {
    assert_eq!(fga(&["commutes", "a", "b"]).1, "false\n");
    assert_eq!(fga(&["factorize", "abab", "--weights", "1,1", "--r", "1"]).1, "(a, ba, b)\n");
    assert_eq!(fga(&["parse", "a*B + 3/2"]).1, "3/2 + ab^-1\n");
    assert_eq!(fga(&["parse", "(a+b)^2"]).1, "a^2 + ab + ba + b^2\n");
    assert_eq!(fga(&["magnus", "ab - ba", "--trunc", "2"]).1, "x_a*x_b - x_b*x_a\n");
    assert_eq!(fga(&["primitive-root", "A^3"]).1, "root: a^-1\nexponent: 3\n");
    assert_eq!(
        fga(&["split", "a^2b^2a^2b^2", "--weights", "1,1", "--r", "1", "--ell", "4"]).1,
        "(ab, ba, ab)\n"
    );
}

#[test]
fn analyze_reports_the_laurent_case() {
    let (code, out, _) = fga(&["analyze", "a + a^-1", "--max-len", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("case: LaurentCase\nroot: a\n"), "{out}");
    let (code, out, _) = fga(&["analyze", "a+b", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["case", "root", "weights", "basisDim", "degrees", "discrete", "nonnegative", "polyGenerator"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["polyGenerator"], "a + b");
}

#[test]
fn json_outputs_parse() {
    for args in [
        &["tmember", "abab", "--weights", "1,1", "--r", "1", "--json"][..],
        &["grade", "a+b^2+A", "--weights", "1,1", "--json"],
        &["construct-h", "ab+b", "--json"],
        &["centralizer", "a+b", "--max-len", "2", "--json"],
        &["subgroup", "--gens", "ab,ba", "abab", "--json"],
        &["factorize", "a^2b^2", "--weights", "1,1", "--r", "1", "--json"],
    ] {
        let (code, out, err) = fga(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        serde_json::from_str::<serde_json::Value>(&out).unwrap();
    }
    let (_, out, _) = fga(&["grade", "a+b^2+A", "--weights", "1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"]["2"], "b^2");
    assert_eq!(v["components"]["-1"], "a^-1");
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    let (code, out, err) = fga(&["parse", "a^"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("offset 2"), "{err}");
    assert_eq!(fga(&["parse", "q"]).0, 2);
    assert_eq!(fga(&["frobnicate"]).0, 2);
    assert_eq!(fga(&["factorize", "ab", "--weights", "1,1"]).0, 2);
    assert_eq!(fga(&["factorize", "ab", "--weights", "1,1", "--r", "1"]).0, 1);
    assert_eq!(fga(&["construct-h", "ab+ba"]).0, 1);
    assert_eq!(fga(&["centralizer", "7"]).0, 1);
    assert_eq!(fga(&["primitive-root", "1"]).0, 1);
    assert_eq!(fga(&["--rank", "27", "parse", "a"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", "ab+ba", "--max-len", "4", "--json"];
    assert_eq!(fga(&args), fga(&args));
}

#[test]
fn printed_elements_parse_back() {
    for s in ["a*B + 3/2", "(a+b)^3 - 2/3 A", "(ab)^-2 + c", "0", "-1/5"] {
        let (code, once, _) = fga(&["--rank", "3", "parse", s]);
        assert_eq!(code, 0, "{s}");
        let (_, twice, _) = fga(&["--rank", "3", "parse", once.trim()]);
        assert_eq!(once, twice);
    }
}
