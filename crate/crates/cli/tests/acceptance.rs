//! Acceptance criteria, one line each. Run with
//! `cargo test -p context-calculus-cli --test acceptance -- --nocapture`
//! to see the report.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use context_calculus::heyting::{curry_check, FinitePoset, HeytingAlgebra};
use context_calculus::hfset::SubsetRing;
use context_calculus::kripke::{
    correspondence_check, countermodel_search, valid_in_frame, KripkeFrame, KripkeModel,
};
use context_calculus::logic::gen::random_formula;
use context_calculus::logic::{
    diag_table, fixed_point, nor_complete_survey, parse, to_n_form, Formula, TruthTable,
};
use context_calculus::machines::enumerate;
use context_calculus::subject::{affinity, homogeneity_flag, ledger, rearticulate, Homogeneity};
use context_calculus::workspace::{replay, Workspace, WorkspaceError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn f(s: &str) -> Formula {
    parse(s).expect("fixed formula parses")
}

fn ordinal_display() -> Check {
    let start = Instant::now();
    let expected = ["{}", "{{}}", "{{},{{}}}", "{{},{{}},{{},{{}}}}"];
    for (k, want) in expected.iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_context-calculus"))
            .args(["ordinal", &k.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let got = String::from_utf8_lossy(&out.stdout);
        ensure(got == format!("{want}\n"), format!("ordinal {k} printed {got:?}"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("ordinal 0..3 match".into())
}

fn boolean_ring() -> Check {
    let start = Instant::now();
    let u: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
    let all = SubsetRing::all(&u).map_err(|e| e.to_string())?;
    let zero = SubsetRing::zero(&u).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for x in &all {
        ensure(x.add(x).unwrap() == zero, format!("{x} + {x} != 0"))?;
        ensure(x.mul(x).unwrap() == *x, format!("{x}² != {x}"))?;
        for y in &all {
            pairs += 1;
            ensure(x.mul(y).unwrap() == y.mul(x).unwrap(), format!("{x}{y} != {y}{x}"))?;
            for z in &all {
                let l = x.mul(&y.add(z).unwrap()).unwrap();
                let r = x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap();
                ensure(l == r, format!("distributivity fails at {x},{y},{z}"))?;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} elements, {pairs} pairs", all.len()))
}

fn heyting_laws() -> Check {
    let start = Instant::now();
    let mut algebras: Vec<HeytingAlgebra> =
        (2..=6).map(|n| HeytingAlgebra::chain(n).unwrap()).collect();
    for n in 0..=4 {
        for p in FinitePoset::enumerate(n) {
            algebras.push(HeytingAlgebra::downset_algebra(&p).map_err(|e| e.to_string())?);
        }
    }
    for h in &algebras {
        let report = h.check_laws();
        ensure(report.passed(), format!("{:?}: {report}", h.poset()))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} algebras", algebras.len()))
}

fn chain_three_table() -> Check {
    let h = HeytingAlgebra::chain(3).unwrap();
    let mut rows = Vec::new();
    for a in h.elements() {
        for b in h.elements() {
            // the candidate above every other candidate
            let ok: Vec<usize> = h.elements().filter(|&x| h.leq(h.meet(a, x), b)).collect();
            let brute = *ok
                .iter()
                .find(|&&m| ok.iter().all(|&x| h.leq(x, m)))
                .ok_or("no largest candidate")?;
            ensure(h.imp(a, b) == brute, format!("{} -> {}", h.label(a), h.label(b)))?;
            rows.push(h.label(h.imp(a, b)).to_string());
        }
    }
    Ok(format!("9 pairs agree: {}", rows.join(" ")))
}

fn filters_and_quotients() -> Check {
    let h = HeytingAlgebra::chain(3).unwrap();
    let half = h.element("1/2").unwrap();
    let f = h.generate(&[half]).map_err(|e| e.to_string())?;
    ensure(f.labels(&h) == ["1/2", "1"], format!("generate({{1/2}}) = {:?}", f.labels(&h)))?;
    let empty = h.generate(&[]).map_err(|e| e.to_string())?;
    ensure(empty.members() == &BTreeSet::from([h.top()]), "generate(∅) != {top}")?;
    let q = h.quotient(&f).map_err(|e| e.to_string())?;
    ensure(
        q.algebra.is_isomorphic(&HeytingAlgebra::chain(2).unwrap()),
        "chain3 / ↑1/2 is not chain2",
    )?;
    let mut quotients = 0;
    let algebras = (2..=6)
        .map(|n| HeytingAlgebra::chain(n).unwrap())
        .chain((0..=4).flat_map(FinitePoset::enumerate).map(|p| HeytingAlgebra::downset_algebra(&p).unwrap()));
    for h in algebras {
        for f in h.filters() {
            let q = h.quotient(&f).map_err(|e| e.to_string())?;
            ensure(q.algebra.check_laws().passed(), format!("quotient of {:?}", h.poset()))?;
            quotients += 1;
        }
    }
    Ok(format!("{quotients} quotients pass the law suite"))
}

fn kripke() -> Check {
    let start = Instant::now();
    for s in ["p | ~p", "~~p -> p"] {
        let c = countermodel_search(&f(s), 2)
            .map_err(|e| e.to_string())?
            .ok_or(format!("no countermodel for {s}"))?;
        ensure(c.model.frame().len() <= 2, format!("{s}: {} worlds", c.model.frame().len()))?;
    }
    let frames: Vec<KripkeFrame> = (1..=4)
        .flat_map(FinitePoset::enumerate)
        .map(|p| KripkeFrame::with_world_names(&p).unwrap())
        .collect();
    for s in ["p -> p", "p & (p -> q) -> q"] {
        for fr in &frames {
            ensure(valid_in_frame(fr, &f(s)).unwrap(), format!("{s} fails on a frame"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let posets = FinitePoset::enumerate(n);
        let frame = KripkeFrame::with_world_names(&posets[rng.gen_range(0..posets.len())]).unwrap();
        let ups = frame.upsets();
        let val = ["p", "q"]
            .iter()
            .map(|a| (a.to_string(), ups[rng.gen_range(0..ups.len())]))
            .collect();
        let model = KripkeModel::new(frame, val).map_err(|e| e.to_string())?;
        let formula = random_formula(&mut rng, &["p", "q"], 4, true);
        for w in 0..n {
            if model.forces(w, &formula).unwrap() {
                for v in (0..n).filter(|&v| model.frame().order().leq(w, v)) {
                    ensure(model.forces(v, &formula).unwrap(), format!("{formula} not persistent"))?;
                }
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} frames, 500 random models", frames.len()))
}

fn correspondence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let formulas: Vec<Formula> = (0..200)
        .map(|_| random_formula(&mut rng, &["p", "q"], 3, true))
        .collect();
    let mut cases = 0;
    for p in (1..=3).flat_map(FinitePoset::enumerate) {
        for formula in &formulas {
            correspondence_check(&p, formula).map_err(|e| e.to_string())?;
            cases += 1;
        }
    }
    Ok(format!("{cases} poset/formula pairs agree"))
}

fn n_operator() -> Check {
    let survey = nor_complete_survey().map_err(|e| e.to_string())?;
    ensure(survey.all_verified(), "survey incomplete or unverified")?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let formula = random_formula(&mut rng, &["p", "q", "r"], 4, true);
        let n = to_n_form(&formula);
        let atoms: Vec<String> = formula.atoms().union(&n.atoms()).cloned().collect();
        let same = TruthTable::over(&formula, &atoms).unwrap() == TruthTable::over(&n, &atoms).unwrap();
        ensure(n.is_n_only() && same, format!("{formula} vs {n}"))?;
    }
    Ok("16/16 functions, 200 rewrites".into())
}

fn currying() -> Check {
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                let r = curry_check(a, b, c).map_err(|e| e.to_string())?;
                ensure(r.passed(), r.to_string())?;
            }
        }
    }
    let big = curry_check(3, 3, 3).unwrap();
    Ok(format!("largest {} = {}", big.uncurried_count, big.curried_count))
}

const DERIVATION: &str = "\
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
";

fn workspace() -> Check {
    let first = replay(DERIVATION).map_err(|e| e.to_string())?;
    let again = replay(DERIVATION).map_err(|e| e.to_string())?;
    ensure(first.workspace.to_string() == again.workspace.to_string(), "replay differs")?;
    let leaves = first.history[5].leaves();
    ensure(first.history[5..].iter().all(|w| w.leaves() == leaves), "leaf multiset changed")?;
    ensure(first.workspace.stage() == 10, "stage is not 10")?;
    ensure(first.workspace.ws_stage().unwrap().to_nat() == 10, "ordinal stage is not 10")?;
    let ws = Workspace::new().lex("a").unwrap().lex("b").unwrap().lex("x").unwrap();
    let ws = ws.merge("a", "b", Some("c")).unwrap();
    let before = ws.to_string();
    let err = ws.merge("x", "a", None);
    ensure(matches!(err, Err(WorkspaceError::NoTampering { .. })), "tampering accepted")?;
    ensure(ws.to_string() == before, "workspace changed after rejection")?;
    Ok("10 merges replayed, no tampering".into())
}

fn subject() -> Check {
    ensure(ledger(1) == 0, "ledger(1) != 0")?;
    ensure(homogeneity_flag(1) == Ok(Homogeneity::NonDeterminate), "n = 1 is determinate")?;
    for n in 0..=100u64 {
        let n2 = u128::from(n);
        ensure(ledger(n) == n2 * n2 - n2, format!("ledger({n})"))?;
    }
    let names = |p: &str| (1..=5).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let p = affinity(&names("f"), &names("e")).map_err(|e| e.to_string())?;
    let q = rearticulate(&p, 1).map_err(|e| e.to_string())?;
    ensure(q.pairs.len() + 1 == p.pairs.len(), "shift did not drop exactly one pair")?;
    Ok("ledger(1)=0, NON_DETERMINATE, n ≤ 100".into())
}

fn diagonalization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let m = rng.gen_range(0..10);
        let rows: Vec<Vec<u64>> = (0..=m)
            .map(|_| (0..=m).map(|_| rng.gen_range(0..100)).collect())
            .collect();
        let g = diag_table(&rows, m).map_err(|e| e.to_string())?;
        ensure(
            rows.iter().enumerate().all(|(n, row)| g.values[n] != row[n]),
            "antidiagonal agrees with a row",
        )?;
    }
    let fp = fixed_point(&f("x -> p"), "x").map_err(|e| e.to_string())?;
    ensure(fp.verify(), "fixed-point expansion check failed")?;
    Ok("100 tables, fixed point verified".into())
}

fn machines() -> Check {
    let start = Instant::now();
    let with_threads = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| enumerate(2, 2, 1000))
    };
    let report = with_threads(1).map_err(|e| e.to_string())?;
    let text = report.to_string();
    ensure(with_threads(4).unwrap().to_string() == text, "report differs across thread counts")?;
    ensure(enumerate(2, 2, 1000).unwrap().to_string() == text, "report differs across runs")?;
    ensure(
        report.halted_blank + report.halted_nonblank + report.exhausted == report.total,
        "categories do not partition the class",
    )?;
    within(start, Duration::from_secs(10))?;
    let frac = report.nonblank_fraction();
    Ok(format!(
        "{} machines; halted with nonblank output: {} ({:.4})",
        report.total,
        frac,
        report.halted_nonblank as f64 / report.total as f64
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("ordinal display", ordinal_display),
        ("Boolean ring", boolean_ring),
        ("Heyting laws", heyting_laws),
        ("chain(3) implication table", chain_three_table),
        ("filters and quotients", filters_and_quotients),
        ("Kripke semantics", kripke),
        ("frame/algebra correspondence", correspondence),
        ("N-operator completeness", n_operator),
        ("currying", currying),
        ("workspace replay", workspace),
        ("subject ledger", subject),
        ("diagonalization", diagonalization),
        ("machine enumeration", machines),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match &result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
