//! Exit criteria. Prints one line per criterion and fails if any criterion
//! fails. Every suite runs through the command line front end in machine
//! mode so that criterion 10 can compare raw output.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use clonelab::adversary::min_generating_size;
use clonelab::gallery::{algebra_rs, algebra_s, algebra_st, named, NamedOp};
use clonelab::Budget;

struct Run {
    out: String,
    code: i32,
    secs: f64,
}

fn verify(lemma: &str, workers: usize) -> Run {
    let w = workers.to_string();
    let args = ["clonelab", "--machine", "--workers", &w, "verify", "--lemma", lemma];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let t = Instant::now();
    let code = clonelab::cli::run(args, &mut out, &mut err);
    let secs = t.elapsed().as_secs_f64();
    let mut out = String::from_utf8(out).unwrap();
    out.push_str(&String::from_utf8(err).unwrap());
    Run { out, code, secs }
}

struct Verdict {
    n: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn suites_pass(runs: &HashMap<&str, Run>, ids: &[&str], limit: f64) -> (bool, String) {
    let secs: f64 = ids.iter().map(|i| runs[i].secs).sum();
    let mut bad = Vec::new();
    for id in ids {
        let r = &runs[id];
        if r.code != 0 {
            let failing: Vec<&str> =
                r.out.lines().filter(|l| l.contains("status=FAIL") || l.contains("status=UNKNOWN")).collect();
            bad.push(format!("{id} exit={} [{}]", r.code, failing.join(" | ")));
        }
        if r.out.contains("valid=false") {
            bad.push(format!("{id} has an invalid witness"));
        }
    }
    if secs >= limit {
        bad.push(format!("{secs:.1}s over the {limit}s limit"));
    }
    let detail = if bad.is_empty() { format!("{secs:.1}s") } else { format!("{secs:.1}s; {}", bad.join("; ")) };
    (bad.is_empty(), detail)
}

fn oracle_equivalences() -> Result<String, String> {
    let mut n = 0;
    for alg in [algebra_s(), algebra_st(), algebra_rs()] {
        n += common::sigma_grid_agrees(&alg, 3)?;
        n += common::power_generation_agrees(&alg, 30, 2015)?;
    }
    for op in [NamedOp::S, NamedOp::R, NamedOp::T, NamedOp::FA(3), NamedOp::FB(3), NamedOp::HFA(2), NamedOp::HFB(2)] {
        n += common::preservation_agrees(&named(op).map_err(|e| e.to_string())?)?;
    }
    let s = algebra_s();
    for (m, want) in [(2usize, 4usize), (3, 8)] {
        let oracle = common::semilattice_mingen_oracle(&s, m);
        let got = min_generating_size(&s, m, &Budget::default()).map_err(|e| e.to_string())?.value();
        if oracle != want || got != Some(want) {
            return Err(format!("mingen m={m}: engine {got:?} oracle {oracle} expected {want}"));
        }
    }
    Ok(format!("{n} instances agree; mingen(D;s) = 4, 8"))
}

fn main() {
    const SUITES: [&str; 11] = [
        "ST-COLLAPSE",
        "ST-NO-SINGLETON",
        "ST-AC-STRUCT",
        "ST-C-STRUCT",
        "CHEN",
        "ZHUK-CHEN",
        "FN-PRESERVE",
        "HFN-PRESERVE",
        "FN-HUBIE",
        "SUSHNABOR",
        "MICRO",
    ];
    let many = std::thread::available_parallelism().map_or(4, |n| n.get().max(4));
    let mut runs: HashMap<&str, Run> = HashMap::new();
    for id in SUITES {
        runs.insert(id, verify(id, many));
    }

    let mut verdicts = Vec::new();
    let mut add = |n, name, (pass, detail): (bool, String)| verdicts.push(Verdict { n, name, pass, detail });
    add(1, "ST-COLLAPSE", suites_pass(&runs, &["ST-COLLAPSE"], 60.0));
    add(2, "ST-NO-SINGLETON", suites_pass(&runs, &["ST-NO-SINGLETON", "ST-AC-STRUCT", "ST-C-STRUCT"], 300.0));
    add(3, "CHEN", suites_pass(&runs, &["CHEN"], 300.0));
    add(4, "ZHUK-CHEN", suites_pass(&runs, &["ZHUK-CHEN"], 60.0));
    add(5, "FN/HFN-PRESERVE", suites_pass(&runs, &["FN-PRESERVE", "HFN-PRESERVE"], 600.0));
    add(6, "FN-HUBIE", suites_pass(&runs, &["FN-HUBIE"], 60.0));
    add(7, "SUSHNABOR", suites_pass(&runs, &["SUSHNABOR"], 60.0));
    add(8, "MICRO", suites_pass(&runs, &["MICRO"], 60.0));

    let t = Instant::now();
    let oracle = oracle_equivalences();
    let secs = t.elapsed().as_secs_f64();
    let pass9 = oracle.is_ok() && secs < 300.0;
    add(9, "ORACLES", (pass9, format!("{secs:.1}s; {}", oracle.unwrap_or_else(|e| e))));

    let mut diffs = Vec::new();
    for id in SUITES {
        let again = verify(id, 1);
        if again.out != runs[id].out || again.code != runs[id].code {
            diffs.push(id);
        }
    }
    let detail = if diffs.is_empty() {
        format!("{} suites identical at workers={many} and workers=1", SUITES.len())
    } else {
        format!("output differs for {}", diffs.join(","))
    };
    add(10, "DETERMINISM", (diffs.is_empty(), detail));

    for v in &verdicts {
        println!("criterion {:>2} {:<16} {} {}", v.n, v.name, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
