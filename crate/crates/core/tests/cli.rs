use std::process::Command;

use fica_sata::cli::run_with;

fn fica(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fica").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn typecheck_and_normalize() {
    assert_eq!(fica(&["typecheck", "--ctx", "f:com->com", "f"]).1, "com -> com\n");
    let (code, out, _) = fica(&["normalize", "--ctx", "f:com->com", "f"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("fun "), "{out}");
}

#[test]
fn ill_typed_or_unparsable_input_exits_with_2() {
    let (code, _, err) = fica(&["typecheck", "skip; 3 +"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(fica(&["typecheck", "!skip"]).0, 2);
    assert_eq!(fica(&["compile", "--ctx", "x:var", "if 1 then x else x"]).0, 2);
    assert_eq!(fica(&["frobnicate"]).0, 2);
}

#[test]
fn interp_reports_each_verdict() {
    assert_eq!(fica(&["interp", "skip || skip"]), (0, "TERMINATES\n".into(), String::new()));
    assert_eq!(fica(&["interp", "while 1 do skip"]).1, "DIVERGES\n");
    assert_eq!(fica(&["interp", "while 1 do skip"]).0, 1);
    let (code, out, _) = fica(&["interp", "--budget", "2", "skip; skip; skip; skip"]);
    assert_eq!((code, out.as_str()), (3, "BUDGET-EXCEEDED\n"));
    assert_eq!(fica(&["interp", "--ctx", "c:com", "c"]).0, 2);
}

#[test]
fn compile_prints_a_reloadable_automaton_with_stats() {
    let (code, out, _) = fica(&["compile", "skip"]);
    assert_eq!(code, 0);
    assert!(out.contains("add-even † --run--> {skip0}"), "{out}");
    let stats = out.lines().find_map(|l| l.strip_prefix("# stats ")).unwrap();
    let v: serde_json::Value = serde_json::from_str(stats).unwrap();
    for key in ["states", "transitions", "transitionsExpanded", "k", "N", "millis"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["states"], 1);
    assert_eq!(v["transitions"], 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skip.sata");
    std::fs::write(&path, &out).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(fica(&["accepts", "--sata", p, "(run,0) (done,0)"]).0, 0);
    assert_eq!(fica(&["accepts", "--sata", p, "(run,0)"]).0, 1);
}

#[test]
fn compile_can_check_final_readiness() {
    let (_, out, _) = fica(&["compile", "--fa", "--max-len", "6", "--ctx", "c:com", "c || c"]);
    let inv = out.lines().find_map(|l| l.strip_prefix("# invariants ")).unwrap();
    let v: serde_json::Value = serde_json::from_str(inv).unwrap();
    assert_eq!(v["oa"], true);
    assert_eq!(v["pq"], true);
    assert_eq!(v["fa"]["holds"], true);
    assert_eq!(v["fa"]["bounds"]["maxWordLen"], 6);
}

#[test]
fn listings_restate_their_bounds() {
    let (code, out, _) = fica(&["traces", "--max-len", "3", "--ctx", "c:com", "c; c"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# bounds maxWordLen=3 maxCopies=2 maxEpsChain=unlimited (bounds reached; results are partial)"));
    assert_eq!(lines.next(), Some("# 4 traces"));
    assert_eq!(lines.next(), Some("ε"));
    let (_, out, _) = fica(&["language", "skip; skip"]);
    assert!(out.ends_with("# 1 accepted words\n(run,0) (done,0)\n"), "{out}");
}

#[test]
fn equivalence_verdicts() {
    let (code, out, _) = fica(&["equiv", "skip; skip", "skip"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("EQUAL-UP-TO-BOUNDS")), "{out}");
    let (code, out, _) = fica(&["equiv", "--max-len", "6", "--ctx", "c:com", "c; c", "c || c"]);
    assert_eq!(code, 1);
    assert!(out.contains("DIFFER: (run,0) (run^{c},1<0) (run^{c},2<0)"), "{out}");
    assert_eq!(fica(&["equiv", "skip", "0"]).0, 1);
}

#[test]
fn saturation_check_passes_on_compiled_terms() {
    let (code, out, _) = fica(&["saturation-check", "--max-len", "8", "--ctx", "f:com->com, c:com", "f(c) || c"]);
    assert_eq!(code, 0);
    assert!(out.contains("SATURATED"), "{out}");
}

#[test]
fn saturation_check_reads_serialized_automata() {
    let sata = "sata v1\nstates 0 a b x y\nstates 1 p q\n\
                add-even † --run--> {a, b}\n\
                add-odd a --run^{c}--> p\nadd-odd b --run^{d}--> q\n\
                del-odd p --done^{c}--> x\ndel-odd q --done^{d}--> y\n\
                del-even {x, y} --done--> †\n";
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.sata");
    std::fs::write(&path, sata).unwrap();
    let (code, out, _) = fica(&["saturation-check", "--sata", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("SATURATED: 26 traces, 6 accepted words"), "{out}");
    std::fs::write(&path, "sata v1\nadd-odd nowhere\n").unwrap();
    assert_eq!(fica(&["saturation-check", "--sata", path.to_str().unwrap()]).0, 2);
}

#[test]
fn dot_writes_one_cluster_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.dot");
    let (code, _, _) = fica(&["dot", "skip", "(run,0) (done,0)", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    assert_eq!(fica(&["dot", "skip", "(q,0)"]).0, 1);
}

#[test]
fn terms_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("race.fica");
    std::fs::write(&path, "newvar x := 0 in (f(x := 1) || if !x then c else div); !x\n").unwrap();
    let (code, out, _) = fica(&["typecheck", "--ctx", "f:com->com, c:com", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "exp\n"));
}

#[test]
fn the_binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_fica")).args(["interp", "skip"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "TERMINATES\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_fica")).args(["typecheck", "("]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
