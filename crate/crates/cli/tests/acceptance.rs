//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (no libtest harness) so that the summary lines are
//! always printed.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mobius_fq::correlations::{
    exponent_sweep, hankel_corr, linear_exponents, periodic_decomposition, quad_corr,
    reduction_check, vaughan_audit, vaughan_decompose, Domain, Experiment,
};
use mobius_fq::enumerate::Enumeration;
use mobius_fq::hayes::{
    ensure_exact, ensure_residuals, euler_inverse_check, l_polynomial, log_deriv_check,
    principal_check, principal_series, rh_check, ClassSums, HayesGroup, HayesModulus, CHECK_TOL,
};
use mobius_fq::laurent::{dirichlet_approx, LaurentSeries};
use mobius_fq::moments::{divisor_second_moment, mobius_sum, pnt_check, tau_squared_mean_closed_form};
use mobius_fq::quadform::{
    gauss_mean, hankel_matrix, hankel_pair_identity, isotropic_bound, isotropic_count, FqMatrix,
    PairForm, QuadPhase,
};
use mobius_fq::sieve::ArithTable;
use mobius_fq::{Budget, Error, FieldCtx, Fq, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const BIG: Budget = Budget(1 << 25);

fn field(p: u32, s: u32) -> FieldCtx {
    FieldCtx::new(p, s).expect("valid field")
}

fn random_symmetric<R: Rng>(rng: &mut R, n: usize, q: usize) -> FqMatrix {
    let mut m = FqMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = Fq(rng.gen_range(0..q) as u8);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn random_poly<R: Rng>(rng: &mut R, len: usize, q: usize) -> Poly {
    Poly::new((0..len).map(|_| Fq(rng.gen_range(0..q) as u8)).collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_pnt() -> Outcome {
    let mut checks = 0;
    for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let ctx = field(p, s);
        let table = ArithTable::build(&ctx, 10, BIG).map_err(|e| e.to_string())?;
        for l in 1..=10 {
            let (sum, want) = pnt_check(&table, l).map_err(|e| e.to_string())?;
            ensure(sum == want, || format!("q={} l={l}: sum {sum} != q^l {want}", ctx.q()))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (q, l) pairs, q in 2,3,4,5, l <= 10"))
}

fn c02_mobius() -> Outcome {
    for p in [2u32, 3] {
        let ctx = field(p, 1);
        let q = ctx.q() as i64;
        let table = ArithTable::build(&ctx, 12, BIG).map_err(|e| e.to_string())?;
        ensure(mobius_sum(&table, 1) == -q, || format!("q={q}: sum over A_1 is {}", mobius_sum(&table, 1)))?;
        for n in 2..=12 {
            let s = mobius_sum(&table, n);
            ensure(s == 0, || format!("q={q} n={n}: sum {s}"))?;
        }
    }
    Ok("q in 2,3, n <= 12".into())
}

/// Every (q, l, Q) of the Hayes sweep with `q^l phi(Q) <= 1000`.
fn hayes_sweep(mut visit: impl FnMut(&FieldCtx, &HayesGroup, &ClassSums, usize, usize) -> Result<(), String>) -> Result<usize, String> {
    let mut groups = 0;
    for p in [2u32, 3] {
        let ctx = field(p, 1);
        let q = ctx.q();
        let arith = ArithTable::build(&ctx, 9, BIG).map_err(|e| e.to_string())?;
        for m in 0..=3 {
            for modulus in Enumeration::monic(m, q).iter() {
                for l in 0..=2 {
                    let hm = HayesModulus::new(l, modulus.clone(), &ctx).map_err(|e| e.to_string())?;
                    let group = match HayesGroup::build(hm, &ctx, Budget(1000)) {
                        Ok(g) => g,
                        Err(Error::Budget { .. }) => continue,
                        Err(e) => return Err(e.to_string()),
                    };
                    let n_max = (l + m + 2).max(8);
                    let sums = ClassSums::build(&group, &arith, n_max, BIG).map_err(|e| e.to_string())?;
                    visit(&ctx, &group, &sums, l, m)?;
                    groups += 1;
                }
            }
        }
    }
    Ok(groups)
}

fn c03_hayes_grh() -> Outcome {
    let mut characters = 0;
    let groups = hayes_sweep(|ctx, g, sums, l, m| {
        for chi in g.characters().filter(|c| !c.is_principal()) {
            let tag = format!("q={} l={l} Q={} chi={}", ctx.q(), g.modulus().modulus(), chi.id);
            let lp = l_polynomial(g, sums, &chi).map_err(|e| format!("{tag}: {e}"))?;
            for n in l + m..=l + m + 2 {
                let c = lp.coeffs[n].norm();
                ensure(c < 1e-6, || format!("{tag}: |c_{n}| = {c}"))?;
            }
            rh_check(&lp, ctx.q()).ensure().map_err(|e| format!("{tag}: {e}"))?;
            characters += 1;
        }
        Ok(())
    })?;
    Ok(format!("{groups} groups, {characters} non-principal characters"))
}

fn c04_euler_principal() -> Outcome {
    let groups = hayes_sweep(|ctx, g, sums, l, _| {
        let tag = format!("q={} l={l} Q={}", ctx.q(), g.modulus().modulus());
        ensure_exact(&principal_check(g, sums)).map_err(|e| format!("{tag}: {e}"))?;
        for chi in g.characters().filter(|c| !c.is_principal()) {
            let lp = l_polynomial(g, sums, &chi).map_err(|e| e.to_string())?;
            let rows = euler_inverse_check(g, sums, &chi, &lp).map_err(|e| e.to_string())?;
            ensure_residuals(&rows, CHECK_TOL, &tag).map_err(|e| e.to_string())?;
        }
        Ok(())
    })?;
    // q = 2, Q = t: (1 - 2z) / (1 - z) = 1 - z - z^2 - ...
    let series = principal_series(2, &[1], 10);
    let want: Vec<i64> = (0..=10).map(|n| if n == 0 { 1 } else { -1 }).collect();
    ensure(series == want, || format!("closed form for Q = t: {series:?}"))?;
    let ctx = field(2, 1);
    let arith = ArithTable::build(&ctx, 10, BIG).map_err(|e| e.to_string())?;
    for l in 0..=2 {
        let hm = HayesModulus::new(l, Poly::t(), &ctx).map_err(|e| e.to_string())?;
        let g = HayesGroup::build(hm, &ctx, BIG).map_err(|e| e.to_string())?;
        let sums = ClassSums::build(&g, &arith, 10, BIG).map_err(|e| e.to_string())?;
        let rows = principal_check(&g, &sums);
        ensure(rows.iter().all(|r| r.enumerated == want[r.n]), || format!("Q = t, l = {l}: {rows:?}"))?;
    }
    Ok(format!("{groups} groups; Q = t closed form matches for l <= 2"))
}

fn c05_log_derivative() -> Outcome {
    let mut worst = 0f64;
    let groups = hayes_sweep(|ctx, g, sums, l, _| {
        for chi in g.characters().filter(|c| !c.is_principal()) {
            let lp = l_polynomial(g, sums, &chi).map_err(|e| e.to_string())?;
            let rows = log_deriv_check(g, sums, &chi, &lp).map_err(|e| e.to_string())?;
            let rows: Vec<_> = rows.into_iter().filter(|r| r.n <= 8).collect();
            ensure(rows.len() == 8, || "log-derivative rows do not reach degree 8".into())?;
            worst = rows.iter().map(|r| r.residual).fold(worst, f64::max);
            let tag = format!("q={} l={l} Q={} chi={}", ctx.q(), g.modulus().modulus(), chi.id);
            ensure_residuals(&rows, CHECK_TOL, &tag).map_err(|e| e.to_string())?;
        }
        Ok(())
    })?;
    Ok(format!("{groups} groups, degrees 1..8, max residual {worst:.2e}"))
}

fn c06_gauss() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in [3u32, 5] {
        let ctx = field(p, 1);
        let q = ctx.q();
        for i in 0..200 {
            let n = 1 + i % 6;
            let m = random_symmetric(&mut rng, n, q);
            let r = Fq(rng.gen_range(1..q) as u8);
            let pure = QuadPhase::pure(m.clone(), r).map_err(|e| e.to_string())?;
            let rep = gauss_mean(&pure, &ctx, BIG).map_err(|e| format!("p={p}: {e}"))?;
            let want = (q as f64).powf(-(m.rank(&ctx) as f64) / 2.0);
            ensure((rep.abs - want).abs() <= 1e-9, || format!("p={p}: |E| = {} vs {want}", rep.abs))?;
            let b = (0..n).map(|_| Fq(rng.gen_range(0..q) as u8)).collect();
            let c = Fq(rng.gen_range(0..q) as u8);
            let full = QuadPhase::new(m, b, c, r).map_err(|e| e.to_string())?;
            let rep = gauss_mean(&full, &ctx, BIG).map_err(|e| format!("p={p}: {e}"))?;
            ensure(rep.abs <= want + 1e-9, || format!("p={p}: |E| = {} > {want}", rep.abs))?;
        }
    }
    Ok("200 pure + 200 affine phases each over F_3 and F_5, n <= 6".into())
}

fn c07_isotropic() -> Outcome {
    let ctx = field(3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut min_margin = f64::INFINITY;
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let r = rng.gen_range(1..=2);
        let forms: Vec<FqMatrix> = (0..r).map(|_| random_symmetric(&mut rng, n, 3)).collect();
        let rep = isotropic_count(&forms, n, &ctx, BIG).map_err(|e| e.to_string())?;
        let bound = isotropic_bound(3, n, r);
        ensure(rep.count as f64 >= bound, || format!("n={n} r={r}: {} < {bound}", rep.count))?;
        min_margin = min_margin.min(rep.count as f64 - bound);
    }
    Ok(format!("100 systems, p = 3, n <= 10, r <= 2; min count - bound = {min_margin:.3}"))
}

fn c08_divisor_moment() -> Outcome {
    for p in [2u32, 3] {
        let ctx = field(p, 1);
        let table = ArithTable::build(&ctx, 12, BIG).map_err(|e| e.to_string())?;
        for n in 1..=12 {
            let m = divisor_second_moment(&table, n).map_err(|e| e.to_string())?;
            ensure(m.mean_series == m.mean_bruteforce, || {
                format!("q={p} n={n}: series {} != brute force {}", m.mean_series, m.mean_bruteforce)
            })?;
            ensure(m.mean_series <= num_rational::Ratio::from_integer(i128::from(m.bound)), || {
                format!("q={p} n={n}: {} > 4n^3", m.mean_series)
            })?;
            let closed = tau_squared_mean_closed_form(i128::from(p), n);
            ensure(closed == m.mean_series, || format!("q={p} n={n}: closed form {closed} != series"))?;
        }
    }
    Ok("q in 2,3, n <= 12: series, closed form and brute force agree, all <= 4n^3".into())
}

fn c09_hankel_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [3u32, 5] {
        let ctx = field(p, 1);
        for _ in 0..100 {
            let n = rng.gen_range(2..=16);
            let k = rng.gen_range(0..=6.min(n - 1));
            let alpha = LaurentSeries::sample_torus_with(&mut rng, 2 * n - 1, &ctx);
            let a = random_poly(&mut rng, k + 1, ctx.q());
            let b = random_poly(&mut rng, k + 1, ctx.q());
            hankel_pair_identity(&alpha, n, &a, &b, k, PairForm::Average, &ctx).map_err(|e| format!("p={p} n={n} k={k}: {e}"))?;
        }
    }
    Ok("100 triples each at q = 3 and q = 5, n <= 16, k <= 6".into())
}

fn c10_vaughan() -> Outcome {
    let mut audited = 0;
    for (p, deg_max) in [(2u32, 12), (3, 12)] {
        let ctx = field(p, 1);
        let audit = vaughan_audit(&ctx, deg_max, 3, BIG).map_err(|e| e.to_string())?;
        for u in 0..=3 {
            for v in 0..=3 {
                ensure(audit.holds_above_sum(u, v), || {
                    format!("q={p} u={u} v={v}: failures at degrees {:?}", audit.failing_degrees(u, v))
                })?;
            }
        }
        audited += audit.checked;
    }
    let ctx = field(2, 1);
    let n = 10;
    let arith = ArithTable::build(&ctx, n, BIG).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0f64;
    for _ in 0..20 {
        let alpha = LaurentSeries::sample_torus_with(&mut rng, n + 1, &ctx);
        let exps = linear_exponents(&alpha, n, Domain::All, &ctx, BIG).map_err(|e| e.to_string())?;
        for u in 0..=3 {
            for v in 0..=3 {
                let r = vaughan_decompose(&exps, n, u, v, &arith, &ctx, BIG).map_err(|e| e.to_string())?;
                ensure(r.restricted_residual < 1e-6, || format!("u={u} v={v}: residual {}", r.restricted_residual))?;
                worst = worst.max(r.restricted_residual);
            }
        }
    }
    Ok(format!(
        "{audited} monic f audited (failures only at deg f <= max(u,v)); 20 phases x 16 cutoffs, max restricted residual {worst:.1e}"
    ))
}

fn c11_dual_routes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ctx = field(3, 1);
    let arith = ArithTable::build(&ctx, 8, BIG).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for n in 2..=8 {
        for _ in 0..3 {
            let alpha = LaurentSeries::sample_torus_with(&mut rng, 2 * n, &ctx);
            let beta = LaurentSeries::sample_torus_with(&mut rng, n, &ctx);
            let direct = hankel_corr(&alpha, &beta, n, &arith, &ctx, BIG).map_err(|e| e.to_string())?;
            let m = hankel_matrix(&alpha, n).map_err(|e| e.to_string())?;
            let tail = beta.tail(n).map_err(|e| e.to_string())?;
            let phase = QuadPhase::new(m, tail, Fq::ZERO, Fq::ONE).map_err(|e| e.to_string())?;
            let quad = quad_corr(&phase, &arith, &ctx, BIG).map_err(|e| e.to_string())?;
            let gap = (direct.sum - quad.sum).norm();
            ensure(gap < 1e-9, || format!("n={n}: Hankel and quadratic routes differ by {gap}"))?;
            worst = worst.max(gap);
        }
    }
    for (p, n_max) in [(2u32, 10), (3, 6)] {
        let ctx = field(p, 1);
        let arith = ArithTable::build(&ctx, n_max, BIG).map_err(|e| e.to_string())?;
        for n in 1..=n_max {
            let alpha = LaurentSeries::sample_torus_with(&mut rng, n + 1, &ctx);
            let red = reduction_check(&alpha, n, &arith, &ctx, BIG).map_err(|e| e.to_string())?;
            ensure(red.exact, || format!("q={p} n={n}: reduction histograms differ"))?;
        }
    }
    let ctx = field(2, 1);
    let arith = ArithTable::build(&ctx, 8, BIG).map_err(|e| e.to_string())?;
    let mut periodic_gap = 0f64;
    for _ in 0..20 {
        let alpha = LaurentSeries::sample_torus_with(&mut rng, 9, &ctx);
        let r = periodic_decomposition(&alpha, 8, &arith, &ctx, BIG).map_err(|e| e.to_string())?;
        ensure(r.audit_passed(), || format!("alpha = {}: {} periodicity violations", alpha.to_text(), r.violations))?;
        ensure(r.difference < 1e-9, || format!("alpha = {}: routes differ by {}", alpha.to_text(), r.difference))?;
        periodic_gap = periodic_gap.max(r.difference);
    }
    Ok(format!(
        "Hankel/quadratic gap {worst:.1e}; reduction exact; periodic gap {periodic_gap:.1e} over 20 alpha"
    ))
}

fn c12_dirichlet() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..1000 {
        let ctx = field(if i % 2 == 0 { 2 } else { 3 }, 1);
        let n = rng.gen_range(1..=16);
        let alpha = LaurentSeries::sample_torus_with(&mut rng, n + 1, &ctx);
        let approx = dirichlet_approx(&alpha, n, &ctx).map_err(|e| e.to_string())?;
        let half = n / 2;
        let dg = approx.g.degree().ok_or("g = 0")?;
        ensure(approx.g.is_monic() && dg <= half, || format!("n={n}: g = {}", approx.g))?;
        // |alpha - a/g| < q^{-half}/|g|  <=>  alpha g - a has degree < -half.
        let ag = alpha.mul_poly(&approx.g, &ctx).map_err(|e| e.to_string())?;
        ensure(ag.polynomial_part() == approx.a, || format!("n={n}: a = {} is not the polynomial part of alpha g", approx.a))?;
        for d in 1..=half as i64 {
            let c = ag.coeff(-d).map_err(|e| e.to_string())?;
            ensure(c.is_zero(), || format!("n={n}: alpha g - a has a t^-{d} term for alpha = {}", alpha.to_text()))?;
        }
    }
    Ok("1000 alpha over F_2 and F_3, n <= 16".into())
}

const CLI_RUNS: [&[&str]; 16] = [
    &["pnt", "--field", "3", "--lmax", "8"],
    &["mobius-sums", "--field", "3", "--nmax", "10"],
    &["divisor-moments", "--field", "2", "--nmax", "10"],
    &["hayes-lfunc", "--field", "3", "--l", "2", "--Q", "1,0,1"],
    &["rh-check", "--field", "2", "--l", "2", "--Q", "1,1,0,1"],
    &["euler-check", "--field", "3", "--l", "1", "--Q", "2,0,1"],
    &["principal-check", "--field", "2", "--l", "2", "--Q", "0,1,1"],
    &["logderiv-check", "--field", "2", "--l", "2", "--Q", "1,1,1"],
    &["linear-corr", "--field", "2", "--n", "14", "--domain", "all", "--reduction"],
    &["quad-corr", "--field", "3", "--n", "8", "--linear"],
    &["hankel-corr", "--field", "3", "--n", "8", "--cross-check"],
    &["vaughan-audit", "--field", "2", "--n", "10", "--u", "2", "--v", "2"],
    &["gauss-sums", "--field", "3", "--n", "6", "--samples", "50", "--linear"],
    &["isotropic", "--field", "3", "--n", "8", "--r", "2", "--samples", "20"],
    &["rank-stats", "--field", "3", "--n", "8", "--k", "2", "--h", "4"],
    &["exponent-sweep", "--experiment", "hankel", "--field", "3", "--nmin", "4", "--nmax", "8", "--samples", "10"],
];

fn c13_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let exe = env!("CARGO_BIN_EXE_mobius-fq");
    let mut files = 0;
    for (i, args) in CLI_RUNS.iter().enumerate() {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for workers in ["1", "2", "4", "1"] {
                let path = dir.path().join(format!("{i}-{workers}-{}.{format}", outputs.len()));
                let status = Command::new(exe)
                    .args(*args)
                    .args(["--seed", "13", "--workers", workers, "--format", format, "--out"])
                    .arg(&path)
                    .status()
                    .map_err(|e| e.to_string())?;
                ensure(status.success(), || format!("{args:?} exited with {status}"))?;
                outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
                files += 1;
            }
            ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{args:?} ({format}) output depends on the worker count"))?;
            ensure(outputs[0].starts_with(b"# mobius-fq ") || format == "json", || format!("{args:?}: missing header line"))?;
        }
    }
    Ok(format!("16 subcommands x 2 formats x workers 1,2,4,1: {files} files, byte-identical per run"))
}

fn c14_sweeps() -> Outcome {
    let mut summary = Vec::new();
    for (p, n_max) in [(2u32, 16usize), (3, 10)] {
        let ctx = field(p, 1);
        for experiment in [Experiment::Linear, Experiment::Quadratic, Experiment::Hankel] {
            if experiment == Experiment::Quadratic && p == 2 {
                continue;
            }
            let ns: Vec<usize> = (4..=n_max).collect();
            let samples = if experiment == Experiment::Linear { 100 } else { 20 };
            let rows = exponent_sweep(experiment, &ns, samples, 14, &ctx, BIG).map_err(|e| e.to_string())?;
            ensure(rows.len() == ns.len(), || format!("{experiment} q={p}: {} rows", rows.len()))?;
            for r in &rows {
                ensure(r.triangle_ok, || format!("{experiment} q={p} n={}: |sum| > q^n", r.n))?;
                ensure(r.max_exponent.is_some_and(|e| e <= 1.0 + 1e-12), || {
                    format!("{experiment} q={p} n={}: exponent {:?}", r.n, r.max_exponent)
                })?;
            }
            let last = rows.last().expect("rows");
            summary.push(format!("{experiment} q={p} n={}: {:.3}", last.n, last.max_exponent.unwrap_or(f64::NAN)));
        }
    }
    Ok(format!("max empirical exponents at the largest n: {}", summary.join("; ")))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 14] = [
    (1, "prime polynomial theorem", 60, c01_pnt),
    (2, "Möbius column sums", 60, c02_mobius),
    (3, "Hayes degree bound and GRH", 300, c03_hayes_grh),
    (4, "Euler inverse and principal formulas", 300, c04_euler_principal),
    (5, "log-derivative identity", 300, c05_log_derivative),
    (6, "Gauss sums", 60, c06_gauss),
    (7, "isotropic counting", 120, c07_isotropic),
    (8, "divisor second moment", 120, c08_divisor_moment),
    (9, "Hankel pair identity", 60, c09_hankel_identity),
    (10, "Vaughan audit and decomposition", 600, c10_vaughan),
    (11, "dual-route and reduction consistency", 300, c11_dual_routes),
    (12, "Dirichlet approximation contract", 60, c12_dirichlet),
    (13, "determinism across worker counts", 600, c13_determinism),
    (14, "exponent sweeps", 1800, c14_sweeps),
];

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => Err(format!("{detail}; over the {limit}s limit")),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {id:>2} {tag} {name} [{:.1}s/{limit}s]: {detail}", elapsed.as_secs_f64());
        if result.is_err() {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
