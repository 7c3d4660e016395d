//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use dhsep::checks::{self, Check, McSizes};

const SEED: u64 = 42;

fn report(id: usize, title: &str, check: &Check, elapsed: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = check.passed && in_time;
    let mut detail = check.detail.clone();
    if let Some(obj) = detail.as_object_mut() {
        obj.remove("M2_report");
    }
    println!(
        "{} criterion {id}: {title} [{:.2}s{}] {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.map(|l| format!(" / limit {}s", l.as_secs())).unwrap_or_default(),
        detail
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() {
    let sizes = McSizes::full();
    let secs = Duration::from_secs;
    let mut all = true;

    let (c, t) = timed(checks::check_probability);
    all &= report(1, "exact probability 8/33", &c, t, Some(secs(60)));

    let (c, t) = timed(checks::check_f);
    all &= report(2, "f(a) identity", &c, t, Some(secs(60)));

    let (c, t) = timed(checks::check_m_polynomials);
    all &= report(3, "M-polynomials", &c, t, None);
    if let Some(rows) = c.detail.get("M2_report").and_then(|r| r.as_array()) {
        for row in rows {
            println!("    M2 coefficient {row}");
        }
    }

    let (c, t) = timed(|| checks::check_density_triple(SEED, 300));
    all &= report(4, "DH density triple agreement", &c, t, None);

    let (c, t) = timed(|| checks::check_volumes(SEED));
    all &= report(5, "volume identities", &c, t, Some(secs(10)));

    let (c, t) = timed(|| checks::check_marginal_density(SEED));
    all &= report(6, "marginal density mass and oracle", &c, t, None);

    let (c, t) = timed(|| checks::check_global_mc(SEED, sizes.global, None));
    all &= report(7, "Monte Carlo global PPT fraction", &c, t, Some(secs(120)));

    let ((c8, c9), t) = timed(|| checks::check_conditioned(SEED, sizes.conditioned, sizes.chains, None));
    all &= report(8, "conditioned constancy", &c8, t, None);
    all &= report(9, "half-bound equivalence on D^0", &c9, t, None);

    let (c, t) = timed(|| checks::check_histogram(SEED, sizes.histogram, None));
    all &= report(10, "fixed-spectrum marginal law", &c, t, Some(secs(180)));

    if !all {
        std::process::exit(1);
    }
}
