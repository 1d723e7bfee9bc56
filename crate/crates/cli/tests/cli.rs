use nil2_cli::report::Report;
use std::path::PathBuf;
use std::process::{Command, Output};

fn nil2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nil2")).args(args).env_remove("NIL2_MAX_ELEMENTS").output().unwrap()
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = nil2(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    // emit-then-parse is the identity on what the binary printed
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    (report, out.status.code().unwrap())
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn shipped_spec() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/specs/guidingex.spec").to_string()
}

#[test]
fn guiding_weak_failure_names_the_element() {
    let (r, code) = json(&["check-weak", "guidingex", "--variety", "4,2"]);
    assert_eq!((r.verdict, code), (Some(false), 1));
    let w = r.witness.unwrap();
    assert!(w.items.iter().any(|i| i.label == "element" && i.value == "x^2"));
    assert_eq!(r.variety.as_deref(), Some("(4,2)"));
}

#[test]
fn guiding_strong_success() {
    let (r, code) = json(&["check-strong", "guidingex", "--variety", "8,4", "--spec", &shipped_spec()]);
    assert_eq!((r.verdict, code), (Some(true), 0));
}

#[test]
fn dominion_in_relatively_free_overgroup() {
    let args = ["dominion", "--catalog", "advanceinboth", "--params", "p=2,a=1,b=1", "--group", "K", "--sub", "G", "--variety", "8,4"];
    let (r, code) = json(&args);
    assert_eq!(code, 0);
    let elems = &r.details.iter().find(|d| d.label == "dominion elements").unwrap().value;
    assert!(elems.split(", ").any(|e| e == "c^2"), "{elems}");
    assert_eq!(r.details.iter().find(|d| d.label == "closed").unwrap().value, "false");
}

#[test]
fn text_output_is_the_default() {
    let out = nil2(&["check-weak", "guidingex", "--variety", "4,2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: false") && text.contains("element=x^2"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nil2(&["check-weak", "nosuch", "--variety", "4,2"]).status.code(), Some(2));
    assert_eq!(nil2(&["check-weak", "guidingex", "--variety", "4,8"]).status.code(), Some(2));
    assert_eq!(nil2(&["check-weak", "guidingex"]).status.code(), Some(2));
    assert_eq!(nil2(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_flag_overrides_environment() {
    let args = ["oracle-weak", "guidingex", "--variety", "4,2"];
    let env_only = Command::new(env!("CARGO_BIN_EXE_nil2")).args(args).env("NIL2_MAX_ELEMENTS", "100").output().unwrap();
    assert_eq!(env_only.status.code(), Some(3));
    let both = Command::new(env!("CARGO_BIN_EXE_nil2"))
        .args(args)
        .args(["--max-elements", "10000000"])
        .env("NIL2_MAX_ELEMENTS", "100")
        .output()
        .unwrap();
    assert_eq!(both.status.code(), Some(1));
    assert_eq!(nil2(&["oracle-weak", "guidingex", "--variety", "4,2", "--max-elements", "10"]).status.code(), Some(3));
}

#[test]
fn cross_check_agrees_on_the_shipped_corpus() {
    for v in ["4,2", "8,2", "8,4", "16,4", "0,2", "0,4", "0,8", "0,0"] {
        for cmd in ["check-weak", "check-strong", "oracle-weak", "oracle-strong"] {
            let (r, code) = json(&[cmd, "guidingex", "--variety", v, "--cross-check"]);
            assert_ne!(code, 4, "{cmd} {v}");
            assert!(r.cross_check.unwrap().agrees);
        }
    }
    for sub in ["x", "x^2", "y", "x^2,y^2", "c"] {
        let (_, code) = json(&["dominion", "--group", "M", "--sub", sub, "--variety", "8,4", "--cross-check"]);
        assert_eq!(code, 0, "{sub}");
    }
    for name in ["guidingex", "notanideal", "newprimesquare"] {
        let (r, code) = json(&["catalog", name, "--cross-check"]);
        assert_eq!((r.verdict, code), (Some(true), 0), "{name}");
    }
}

#[test]
fn every_command_emits_a_parseable_report() {
    let cases: &[&[&str]] = &[
        &["filter-generator", "guidingex", "--kind", "weak"],
        &["oracle-dominion", "--group", "M", "--sub", "x^2", "--variety", "0,4"],
        &["adjoin-root", "--group", "A", "--element", "x^2", "--q", "2", "--variety", "8,4"],
        &["adjoin-roots2", "--group", "M", "--x", "x", "--y", "c", "--q", "2", "--variety", "8,4"],
        &["base-strong", "--catalog", "bsmall", "--group", "G", "--variety", "8,2"],
        &["base-special", "--catalog", "bbigspecial", "--group", "G", "--variety", "16,4"],
        &["catalog"],
        &["objects"],
    ];
    for args in cases {
        let (r, code) = json(args);
        assert!(code == 0 || code == 1, "{args:?}");
        assert_eq!(r.command, args.iter().map(|s| s.to_string()).chain(["--format".into(), "json".into()]).collect::<Vec<_>>());
    }
}

#[test]
fn spec_files_with_crlf_and_comments() {
    let text = std::fs::read_to_string(shipped_spec()).unwrap().replace('\n', "\r\n").replace("amalgam guidingex", "amalgam copy");
    let path = write_spec("crlf.spec", &text);
    let (r, code) = json(&["check-weak", "copy", "--variety", "4,2", "--spec", path.to_str().unwrap()]);
    assert_eq!((r.verdict, code), (Some(false), 1));
}

#[test]
fn empty_spec_file_loads_nothing_extra() {
    let path = write_spec("empty.spec", "");
    let (r, code) = json(&["objects", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // only the built-in objects remain
    assert_eq!(r.details.iter().filter(|d| d.label == "amalgam").count(), 1);
}

#[test]
fn class_three_presentation_is_diagnosed() {
    let path = write_spec(
        "bad.spec",
        "# not class two\ngroup Bad\ngens x y z\norder x 2\norder y 2\norder z 2\ncomm y x = z\ncomm z x = y\nend\n",
    );
    let out = nil2(&["objects", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("class exceeds 2"), "{err}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let path = write_spec("syntax.spec", "group G\ngens x\norder x 4\ncomm x x2 = e\nend\n");
    let err = String::from_utf8(nil2(&["objects", "--spec", path.to_str().unwrap()]).stderr).unwrap();
    assert!(err.contains("line 4, column 8"), "{err}");
}
