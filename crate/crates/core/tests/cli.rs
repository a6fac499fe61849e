use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frolicher")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rstep_on_example2() {
    let o = run(&["rstep", "--corpus", "example2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "r = 1"));
}

#[test]
fn corpus_run_torus3_has_zero_diffs() {
    let o = run(&["corpus", "run", "torus3", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torus3.diffs=0\n"));
}

#[test]
fn corpus_run_example2_exits_with_verdict_failure() {
    let o = run(&["corpus", "run", "example2", "--machine"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("example2.diffs=5\n"));
}

#[test]
fn iwasawa_pages_show_d1_but_no_d2() {
    let o = run(&["pages", "--corpus", "iwasawa", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rank_sum = |r: usize| -> usize {
        out.lines()
            .filter(|l| l.starts_with(&format!("rank_d{r}.")))
            .map(|l| l.rsplit('=').next().unwrap().parse::<usize>().unwrap())
            .sum()
    };
    assert!(rank_sum(1) > 0);
    assert_eq!(rank_sum(2), 0);
    assert!(out.contains("\nr=2\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [&["dolbeault", "--corpus", "nakamura"][..], &["selfcheck", "--seed", "5", "--count", "12"][..]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["rstep"]).status.code(), Some(2));
    let mut f = tempfile_path("bad.model");
    writeln!(f.1, "name = bad\n[scalars]\nh = 1//2\n").unwrap();
    let o = run(&["validate", "--model", f.0.to_str().unwrap(), "--machine"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("error.kind=parse") && err.contains("line 3"), "{err}");
}

#[test]
fn model_file_round_trips_through_validate() {
    let text = include_str!("../corpus/example2.model");
    let mut f = tempfile_path("example2.model");
    f.1.write_all(text.as_bytes()).unwrap();
    let o = run(&["validate", "--model", f.0.to_str().unwrap(), "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("generators=4\n") && out.contains("conjugates=4\n") && out.contains("base_characters=1\n"));
    assert!(out.contains("verdict.roundtrip=pass\n"));
}

#[test]
fn pipelines_and_euler_pass_on_their_models() {
    assert_eq!(run(&["pipeline-cos", "--corpus", "nakamura"]).status.code(), Some(0));
    assert_eq!(run(&["pipeline-sps", "--corpus", "example1-b2pi"]).status.code(), Some(0));
    assert_eq!(run(&["euler", "--corpus", "example2"]).status.code(), Some(0));
    // the complex parallelizable pipeline needs the flag
    assert_eq!(run(&["pipeline-cos", "--corpus", "example2"]).status.code(), Some(2));
}

#[test]
fn representatives_are_labelled() {
    let o = run(&["cohomology", "--corpus", "iwasawa", "--reps", "--machine"]);
    let out = stdout(&o);
    assert!(out.contains("betti.dim.k=1=4\n"));
    assert!(out.lines().any(|l| l.starts_with("rep.1.") && l.contains('w')));
}

fn tempfile_path(name: &str) -> (std::path::PathBuf, std::fs::File) {
    let dir = std::env::temp_dir().join(format!("frolicher-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    let f = std::fs::File::create(&p).unwrap();
    (p, f)
}
