use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["clonelab"];
    argv.extend_from_slice(args);
    let code = clonelab::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn verdict(out: &str) -> &str {
    let last = out.lines().last().unwrap_or("");
    last.split_whitespace().find_map(|f| f.strip_prefix("verdict=")).unwrap_or("")
}

#[test]
fn eval_semilattice() {
    let (code, out, _) = run(&["eval", "--op", "s", "--args", "a,b"]);
    assert_eq!((code, out.as_str()), (0, "c\n"));
    let (_, out, _) = run(&["--machine", "eval", "--op", "r", "--args", "abbb"]);
    assert_eq!(out, "eval op=r args=abbb value=b\n");
}

#[test]
fn preserves_reports_counterexample() {
    let (code, out, _) = run(&["--machine", "preserves", "--op", "s", "--rel", "{(a,b),(b,a)}"]);
    assert_eq!(code, 1);
    assert_eq!(out, "preserves op=s rel={(a,b),(b,a)} columns=ab;ba result=cc verdict=FALSE\n");
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["eval", "--op", "s", "--args", "a,b", "--nope"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["eval", "--op", "q", "--args", "a"]).0, 3);
    assert_eq!(run(&["eval", "--op", "s", "--args", "a,b,c"]).0, 3);
    assert_eq!(run(&["verify", "--lemma", "NOPE"]).0, 3);
    assert_eq!(run(&["--budget", "tables=x", "mingen", "-m", "2"]).0, 3);
    let (code, _, err) = run(&["collapsible", "--algebra", "s,t", "-m", "13", "-k", "1", "--source", "a"]);
    assert_eq!(code, 3);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn exit_codes_follow_verdicts() {
    let cases: &[(&[&str], i32)] = &[
        (&["collapsible", "--algebra", "s,t", "-m", "8", "-k", "7", "--source", "a,b"], 0),
        (&["collapsible", "--algebra", "s,t", "-m", "4", "-k", "1", "--source", "c"], 1),
        (&["switchable", "-m", "5", "-k", "2"], 0),
        (&["mingen", "-m", "2"], 0),
        (&["zhuk"], 0),
        (&["zhuk", "--algebra", "s"], 1),
        (&["projective", "--alpha", "a,c", "--beta", "b,c"], 1),
        (&["projective", "--algebra", "s", "--alpha", "a,c", "--beta", "b,c"], 0),
        (&["hubie", "--op", "fa:3", "--z", "b"], 0),
        (&["hubie", "--op", "fa:3", "--z", "a"], 1),
        (&["essential", "--rel", "{(a,b),(b,a)}"], 0),
        (&["essential", "--rel", "{(a,a),(a,b)}"], 1),
        (&["compose", "--op", "s", "--target", "c,c", "--sources", "a,b;b,a"], 0),
        (&["compose", "--op", "s", "--target", "a,c", "--sources", "a,b;b,a"], 1),
        (&["term-search", "--spec", "ab=a,ac=c"], 0),
        (&["term-search", "--algebra", "s", "--spec", "ab=a,ba=a"], 1),
        (&["gap-check", "--algebra", "s,t"], 0),
        (&["gap-check", "--algebra", "r"], 1),
        (&["clone", "--algebra", "s,t", "--arity", "2"], 0),
        (&["inv", "--algebra", "s", "--arity", "2"], 0),
        (&["verify-fn", "--n", "3", "--hmax", "2"], 0),
        (&["verify", "--lemma", "SUSHNABOR"], 0),
    ];
    for (args, want) in cases {
        let mut a = vec!["--machine"];
        a.extend_from_slice(args);
        let (code, out, err) = run(&a);
        assert_eq!(code, *want, "{args:?}: {out}{err}");
        if args[0] != "verify" {
            let v = verdict(&out);
            let expect = match code {
                0 => ["YES", "TRUE"],
                1 => ["NO", "FALSE"],
                _ => ["UNKNOWN", "UNKNOWN"],
            };
            assert!(expect.contains(&v), "{args:?}: verdict {v}");
        }
    }
}

#[test]
fn clone_counts_and_listing() {
    let (_, out, _) = run(&["--machine", "clone", "--algebra", "s,t", "--arity", "2", "--list"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("term ")).count(), 35);
    assert!(out.contains("table=acccbcccc witness=s(x0,x1)"));
}

#[test]
fn files_are_loaded() {
    let dir = std::env::temp_dir().join(format!("clonelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gap.alg");
    std::fs::write(
        &path,
        "# semilattice and a swap relation\ndomain 3 a b c\nop s 2 a c c c b c c c c\nrel swap 2 ab;ba\nalgebra gap s\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["--machine", "preserves", "--op", &format!("{p}:s"), "--rel", &format!("{p}:swap")]);
    assert_eq!(code, 1, "{out}");
    let (code, out, _) = run(&["--machine", "gap-check", "--algebra", &format!("{p}:gap")]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["--machine", "mingen", "--algebra", p, "-m", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lower=4"));
    std::fs::write(&path, "domain 3 a b c\nop s 2 a c c\n").unwrap();
    let (code, _, err) = run(&["eval", "--op", p, "--args", "ab"]);
    assert_eq!(code, 3);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn machine_output_independent_of_workers() {
    let args = ["collapsible", "--algebra", "s,t", "-m", "9", "-k", "7", "--source", "a,b"];
    let mut first = None;
    for w in ["1", "3"] {
        let mut a = vec!["--machine", "--workers", w];
        a.extend_from_slice(&args);
        let out = run(&a).1;
        if let Some(f) = &first {
            assert_eq!(f, &out);
        }
        first = Some(out);
    }
}

#[test]
fn binary_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_clonelab")).args(["eval", "--op", "s", "--args", "a,b"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "c\n");
    let out = Command::new(env!("CARGO_BIN_EXE_clonelab")).args(["eval", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_clonelab"))
        .env("CLONELAB_BUDGET", "work=10")
        .args(["--machine", "switchable", "-m", "6", "-k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
}
