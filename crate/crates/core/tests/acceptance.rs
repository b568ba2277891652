//! Acceptance criteria, one `PASS`/`FAIL` line each. Exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use pointfree::frame::{Frame, OmegaElem, OmegaFrame};
use pointfree::pointwise::check_pointwise_sup;
use pointfree::rl::{PrefixIndicators, Rl};
use pointfree::suites::{kernels_exhaustive, run_suite, Outcome, SuiteConfig, SuiteReport};
use pointfree::{q, Q};

fn suite(name: &str) -> SuiteReport {
    run_suite(name, &SuiteConfig::default()).expect("known suite")
}

fn extra(r: &SuiteReport, key: &str) -> usize {
    r.extra
        .iter()
        .find(|(k, _)| k == key)
        .and_then(|(_, v)| v.parse().ok())
        .unwrap_or(0)
}

fn detail(r: &SuiteReport) -> String {
    let mut s = format!("pass={} fail={} skipped={}", r.pass, r.fail, r.skipped);
    for (k, v) in &r.extra {
        s.push_str(&format!(" {}={v}", k.to_lowercase()));
    }
    if let Some(ce) = &r.counterexample {
        s.push_str(&format!(" counterexample={}", ce.replace('\n', "\\n")));
    }
    s
}

struct Criteria {
    failed: usize,
}

impl Criteria {
    fn report(&mut self, n: usize, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {n:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn main() {
    let mut c = Criteria { failed: 0 };

    let t = Instant::now();
    let lift = suite("lift-vs-arith");
    let took = t.elapsed();
    c.report(
        1,
        "lift agrees with closed-form arithmetic",
        lift.ok() && lift.pass >= 200 && took <= Duration::from_secs(60),
        format!("{} time={:.2}s", detail(&lift), took.as_secs_f64()),
    );

    let cor1 = suite("cor1");
    c.report(
        2,
        "truncation identities and stabilization",
        cor1.ok() && cor1.pass >= 500,
        detail(&cor1),
    );

    let spatial = suite("spatial-oracle");
    c.report(
        3,
        "frame verdicts equal coordinatewise verdicts",
        spatial.ok() && spatial.pass > 0,
        detail(&spatial),
    );

    let rl = Rl::new(&OmegaFrame);
    let v = check_pointwise_sup(rl, &rl.constant(Q::ONE), &PrefixIndicators).expect("valid family");
    let fail = v.failing.as_ref();
    let omega_ok = v.is_upper_bound
        && !v.is_pointwise
        && fail.is_some_and(|f| f.r == q(1, 2) && f.lhs == OmegaElem::cofin_nat([]) && OmegaFrame.is_top(&f.rhs));
    c.report(
        4,
        "prefix indicators on omega+1",
        omega_ok,
        format!(
            "upper_bound={} pointwise={} failing_ray={} lhs={}",
            v.is_upper_bound,
            v.is_pointwise,
            fail.map_or("none".into(), |f| f.r.to_string()),
            fail.map_or("none".into(), |f| OmegaFrame.render(&f.lhs)),
        ),
    );

    let sep = suite("separation");
    let certified = extra(&spatial, "SEPARATED") + extra(&sep, "UPPER_SEPARATED");
    c.report(
        5,
        "separating certificates validate",
        spatial.ok() && sep.ok() && certified >= 50,
        format!("certified={certified} spatial_fail={} {}", spatial.fail, detail(&sep)),
    );

    let chi = suite("chi");
    c.report(
        6,
        "characteristic witnesses validate",
        chi.ok() && chi.pass >= 50,
        detail(&chi),
    );

    let tr = suite("truncates");
    c.report(
        7,
        "truncate round trips and mutation rejection",
        tr.ok()
            && extra(&tr, "OMEGA") >= 100
            && extra(&tr, "FINITE") >= 100
            && extra(&tr, "CLASS1") > 0
            && extra(&tr, "CLASS2") > 0,
        detail(&tr),
    );

    let kernels: Vec<Outcome> = (1..=3).flat_map(kernels_exhaustive).collect();
    let kpass = kernels.iter().filter(|o| matches!(o, Outcome::Pass)).count();
    let kfail: Vec<&String> = kernels
        .iter()
        .filter_map(|o| match o {
            Outcome::Fail(s) => Some(s),
            _ => None,
        })
        .collect();
    c.report(
        8,
        "support subgroups, kernels and the kernel frame",
        kfail.is_empty() && kpass == 2 + 4 + 8,
        format!(
            "pass={kpass} fail={}{}",
            kfail.len(),
            kfail.first().map_or(String::new(), |s| format!(" first={s}"))
        ),
    );

    let mob = suite("mobility");
    c.report(
        9,
        "mobility of lattice downsets",
        mob.ok() && mob.pass >= 100,
        detail(&mob),
    );

    let fc = suite("frame-calculus");
    c.report(
        10,
        "booleanization and boolean embedding",
        fc.ok() && fc.pass >= 50,
        detail(&fc),
    );

    println!("{} of 10 criteria passed", 10 - c.failed);
    if c.failed > 0 {
        std::process::exit(1);
    }
}
