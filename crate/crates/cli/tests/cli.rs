use std::io::Write;
use std::process::Command;

fn bindkit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bindkit"))
        .args(args)
        .env_remove("BINDKIT_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = bindkit(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

#[test]
fn term_operations() {
    assert_eq!(stdout_of(&["print", "\\x.x  (y)"]), "\\x. x y");
    assert_eq!(stdout_of(&["parse", "\\x. x y"]), "\\x0. x0 x1");
    assert_eq!(stdout_of(&["fv", "\\x. x y z"]), "y z");
    assert_eq!(stdout_of(&["fresh", "x0 x1"]), "x2");
    assert_eq!(stdout_of(&["swap", "\\x. x y", "--x1", "x", "--x2", "y"]), "\\y. y x");
    assert_eq!(stdout_of(&["subst", "\\y. x y", "--with", "z", "--var", "x"]), "\\y. z y");
    assert_eq!(stdout_of(&["psubst", "x y", "--map", "x=y", "--map", "y=\\z. z"]), "y (\\z. z)");
    assert_eq!(stdout_of(&["alphaeq", "\\x. x y", "\\z. z y"]), "true");
    assert_eq!(stdout_of(&["alphaeq", "\\x. x y", "\\y. y y"]), "false");
    assert_eq!(stdout_of(&["debruijn", "\\x. \\y. x y z"]), "\\ \\ 1 0 z");
    assert_eq!(stdout_of(&["perm", "x0 x1 x2", "--perm", "{\"0\":1,\"1\":2,\"2\":0}"]), "x1 x2 x0");
}

#[test]
fn substitution_avoids_capture() {
    let out = stdout_of(&["subst", "\\y. x y", "--with", "y", "--var", "x"]);
    assert_eq!(stdout_of(&["alphaeq", &out, "\\z. y z"]), "true");
}

#[test]
fn recursor_defined_functions() {
    assert_eq!(stdout_of(&["length", "\\x. x (y z)"]), "4");
    assert_eq!(stdout_of(&["clam", "(\\x. x) (\\y. \\z. y)"]), "3");
    assert_eq!(stdout_of(&["cfv", "x (\\x. x) x", "--var", "x"]), "2");
    assert_eq!(stdout_of(&["cbv", "\\x. \\y. x y x"]), "3");
    assert_eq!(stdout_of(&["caneta", "\\x. f x"]), "true");
    assert_eq!(stdout_of(&["caneta", "\\x. x x"]), "false");
}

#[test]
fn normalisation() {
    let two = "(\\f. \\x. f (f x))";
    let sum = stdout_of(&["normalize", &format!("(\\m. \\n. \\f. \\x. m f (n f x)) {two} {two}")]);
    assert_eq!(stdout_of(&["alphaeq", &sum, "\\f. \\x. f (f (f (f x)))"]), "true");
    let (code, _, err) = bindkit(&["normalize", "(\\x. x x) (\\x. x x)", "--fuel", "25"]);
    assert_eq!(code, 1);
    assert!(err.contains("fuel exhausted after 25"), "{err}");
    assert_eq!(bindkit(&["normalize", "x", "--fuel", "0"]).0, 1);
}

#[test]
fn law_suites_report_and_set_exit_codes() {
    let (code, out, _) = bindkit(&["laws", "prop4", "--trials", "200"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    let (code, out, _) = bindkit(&["laws", "fcb", "--trials", "50"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("PASS renaming-freshness of a binder"), "{out}");
    assert!(out.lines().nth(1).unwrap().starts_with("FAIL swap-freshness"), "{out}");
    assert_eq!(bindkit(&["laws", "fcb", "--target", "onepoint", "--trials", "50"]).0, 0);
    assert_eq!(bindkit(&["laws", "subst", "--target", "literal", "--trials", "300"]).0, 3);
    assert_eq!(bindkit(&["laws", "ce", "--target", "broken", "--trials", "300"]).0, 3);
}

#[test]
fn fixtures_file_is_read() {
    let dir = std::env::temp_dir().join(format!("bindkit-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.conf");
    std::fs::File::create(&good).unwrap().write_all(b"modulus = 97\nlm_points = 1 4\nlm_weights = 2 3\n").unwrap();
    let bad = dir.join("bad.conf");
    std::fs::File::create(&bad).unwrap().write_all(b"modulus = 97\ncolour = 3\n").unwrap();
    let good_s = good.to_str().unwrap();
    assert_eq!(bindkit(&["laws", "ce", "--target", "interp", "--trials", "40", "--fixtures", good_s]).0, 0);
    let (code, _, err) = bindkit(&["laws", "ce", "--target", "interp", "--fixtures", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(bindkit(&["laws", "fcb", "--fixtures", "/nonexistent/fixtures.conf"]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn crosscheck_command() {
    let (code, out, _) = bindkit(&["crosscheck", "cfv", "--max-size", "4", "--trials", "200", "--json"]);
    assert_eq!(code, 0);
    let reports: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(reports[0]["pass"], true);
    assert_eq!(bindkit(&["crosscheck", "nosuch"]).0, 2);
}

#[test]
fn usage_errors_are_one_line_diagnostics() {
    let (code, out, err) = bindkit(&["rename", "\\x. x"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--new"), "{err}");
    let (code, _, err) = bindkit(&["parse", "\\x. (x"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1, "{err}");
    let (code, _, err) = bindkit(&["cfv", "x", "--var", "x y"]);
    assert_eq!(code, 1);
    assert!(err.contains("expected a variable"), "{err}");
}

#[test]
fn json_is_seed_determined() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_bindkit"))
            .args(["laws", "nominal", "--trials", "300", "--json"])
            .env("BINDKIT_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}
