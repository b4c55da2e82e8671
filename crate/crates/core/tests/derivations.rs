mod common;

use common::rng;
use context_calculus::workspace::{replay, Step, Workspace, WorkspaceError};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every label reachable under a root, excluding the root itself.
fn proper_terms(ws: &Workspace, root: &str) -> Vec<String> {
    let r = ws.roots().iter().find(|r| r.label() == root).unwrap();
    r.labels().into_iter().skip(1).map(str::to_string).collect()
}

#[test]
fn random_derivations_preserve_leaves() {
    let mut r = rng(21);
    for _ in 0..200 {
        let mut ws = Workspace::new();
        for name in ["a", "b", "c", "d", "e"] {
            ws = ws.lex(name).unwrap();
        }
        let leaves = ws.leaves();
        for step in 1..=10 {
            let roots: Vec<String> = ws.roots().iter().map(|x| x.label().to_string()).collect();
            let x = roots.choose(&mut r).unwrap().clone();
            let before = ws.roots().len();
            let inner = proper_terms(&ws, &x);
            let next = if roots.len() > 1 && (inner.is_empty() || r.gen_bool(0.6)) {
                let y = roots.iter().filter(|y| **y != x).collect::<Vec<_>>();
                let y = y.choose(&mut r).unwrap();
                let n = ws.merge(&x, y, None).unwrap();
                assert_eq!(n.roots().len(), before - 1);
                n
            } else if !inner.is_empty() {
                let root = ws.roots().iter().find(|o| o.label() == x).unwrap();
                let live: Vec<Vec<Step>> = inner
                    .iter()
                    .filter_map(|t| root.find(t))
                    .filter(|p| !p.is_empty())
                    .collect();
                let Some(path) = live.choose(&mut r) else { break };
                let n = ws.imerge(&x, path, None).unwrap();
                assert_eq!(n.roots().len(), before);
                n
            } else {
                break;
            };
            assert_eq!(next.leaves(), leaves);
            assert_eq!(next.stage(), step);
            assert_eq!(next.ws_stage().unwrap().to_nat(), step);
            ws = next;
        }
    }
}

#[test]
fn tampering_leaves_workspace_unchanged() {
    let ws = Workspace::new()
        .lex("a").unwrap()
        .lex("b").unwrap()
        .lex("x").unwrap()
        .merge("a", "b", Some("c")).unwrap();
    let snapshot = ws.clone();
    assert!(matches!(ws.merge("x", "b", None), Err(WorkspaceError::NoTampering { .. })));
    assert_eq!(ws, snapshot);
    assert_eq!(ws.to_string(), snapshot.to_string());
}

const TEN_STEPS: &str = "\
lex a
lex b
lex c
lex d
lex e
lex f
merge a b as ab
merge c d as cd
merge ab cd as x1
imerge x1 L/L as x2
merge e f as ef
merge x2 ef as x3
merge x3 c as x4
imerge x4 R as x5
merge x5 a as x6
imerge x6 R/L as x7
triple a
";

#[test]
fn replay_is_deterministic() {
    let first = replay(TEN_STEPS).unwrap();
    for _ in 0..5 {
        assert_eq!(replay(TEN_STEPS).unwrap().workspace.to_string(), first.workspace.to_string());
    }
    assert_eq!(first.workspace.stage(), 10);
    let leaves = first.history[5].leaves();
    for ws in &first.history[5..] {
        assert_eq!(ws.leaves(), leaves);
    }
    // seven positions of `a`, only one of them outside a copy
    assert_eq!(first.triples[0].paths.len(), 7);
    assert_eq!(first.workspace.leaves()["a"], 1);
}

#[test]
fn triple_after_one_merge() {
    let r = replay("lex a\nlex b\nmerge a b as c\ntriple a\n").unwrap();
    assert_eq!(r.triples[0].w, 1);
    assert_eq!(r.triples[0].paths, ["c/L"]);
}
