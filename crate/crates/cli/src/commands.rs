use std::fs;

use mobius_fq::correlations::{
    default_cutoff, exponent_sweep, hankel_corr, linear_corr, linear_exponents, quad_corr,
    reduction_check, vaughan_audit, vaughan_decompose, CorrelationReport, Domain, Experiment,
    SweepRow,
};
use mobius_fq::hayes::{
    ensure_exact, ensure_residuals, euler_inverse_check, l_polynomial, log_deriv_check,
    principal_check, rh_check, ClassSums, HayesGroup, HayesModulus, Residual, CHECK_TOL,
};
use mobius_fq::laurent::LaurentSeries;
use mobius_fq::moments::{divisor_second_moment, mobius_sum, mobius_sum_expected, pnt_check};
use mobius_fq::quadform::{
    gauss_mean, hankel_matrix, isotropic_count, rank_stats, FqMatrix, PairForm, QuadPhase,
    RankMode,
};
use mobius_fq::sieve::ArithTable;
use mobius_fq::{Budget, Error, FieldCtx, Fq, Poly, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::*;
use crate::output::{complex, opt_real, real, Report};

/// A report and, when an exact identity failed, the counterexample.
pub struct Outcome {
    pub report: Report,
    pub violation: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, violation: None }
    }

    fn checked(report: Report, check: Result<()>) -> Result<Self> {
        match check {
            Ok(()) => Ok(Self::ok(report)),
            Err(Error::Identity(msg)) => Ok(Outcome {
                report,
                violation: Some(msg),
            }),
            Err(e) => Err(e),
        }
    }
}

pub struct Env {
    pub ctx: FieldCtx,
    pub budget: Budget,
    pub seed: u64,
}

impl Env {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn arith(&self, n: usize) -> Result<ArithTable> {
        ArithTable::build(&self.ctx, n, self.budget)
    }

    fn series(&self, text: Option<&str>, prec: usize, rng: &mut ChaCha8Rng) -> Result<LaurentSeries> {
        match text {
            Some(t) => LaurentSeries::parse(&self.ctx, t),
            None => Ok(LaurentSeries::sample_torus_with(rng, prec, &self.ctx)),
        }
    }

    fn elem<R: Rng>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.ctx.q()) as u8)
    }

    fn symmetric<R: Rng>(&self, rng: &mut R, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = self.elem(rng);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }
}

pub fn run(command: &Command, env: &Env) -> Result<Outcome> {
    match command {
        Command::Pnt(a) => pnt(a, env),
        Command::MobiusSums(a) => mobius_sums(a, env),
        Command::DivisorMoments(a) => divisor_moments(a, env),
        Command::HayesLfunc(a) => hayes_lfunc(a, env),
        Command::RhCheck(a) => rh(a, env),
        Command::EulerCheck(a) => residual_check(a, env, false),
        Command::PrincipalCheck(a) => principal(a, env),
        Command::LogderivCheck(a) => residual_check(a, env, true),
        Command::LinearCorr(a) => linear(a, env),
        Command::QuadCorr(a) => quad(a, env),
        Command::HankelCorr(a) => hankel(a, env),
        Command::VaughanAudit(a) => vaughan(a, env),
        Command::GaussSums(a) => gauss(a, env),
        Command::Isotropic(a) => isotropic(a, env),
        Command::RankStats(a) => ranks(a, env),
        Command::ExponentSweep(a) => sweep(a, env),
    }
}

fn identity(msg: String) -> Result<()> {
    Err(Error::Identity(msg))
}

fn pnt(a: &PntArgs, env: &Env) -> Result<Outcome> {
    #[derive(Serialize)]
    struct Row {
        l: usize,
        sum: u64,
        q_pow_l: u64,
    }
    let table = env.arith(a.lmax)?;
    let rows: Vec<Row> = (1..=a.lmax)
        .map(|l| pnt_check(&table, l).map(|(sum, q_pow_l)| Row { l, sum, q_pow_l }))
        .collect::<Result<_>>()?;
    let bad = rows.iter().find(|r| r.sum != r.q_pow_l);
    let check = match bad {
        Some(r) => identity(format!("sum of Lambda over A_{} is {}, expected {}", r.l, r.sum, r.q_pow_l)),
        None => Ok(()),
    };
    let csv = rows.iter().map(|r| vec![r.l.to_string(), r.sum.to_string(), r.q_pow_l.to_string()]).collect();
    Outcome::checked(Report::new(&["l", "sum", "q_pow_l"], csv, &rows), check)
}

fn mobius_sums(a: &NmaxArgs, env: &Env) -> Result<Outcome> {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        sum: i64,
        expected: i64,
    }
    let table = env.arith(a.nmax)?;
    let q = env.ctx.q();
    let rows: Vec<Row> = (0..=a.nmax)
        .map(|n| Row {
            n,
            sum: mobius_sum(&table, n),
            expected: mobius_sum_expected(q, n),
        })
        .collect();
    let check = match rows.iter().find(|r| r.sum != r.expected) {
        Some(r) => identity(format!("sum of mu over A_{} is {}, expected {}", r.n, r.sum, r.expected)),
        None => Ok(()),
    };
    let csv = rows.iter().map(|r| vec![r.n.to_string(), r.sum.to_string(), r.expected.to_string()]).collect();
    Outcome::checked(Report::new(&["n", "sum", "expected"], csv, &rows), check)
}

fn divisor_moments(a: &NmaxArgs, env: &Env) -> Result<Outcome> {
    let table = env.arith(a.nmax)?;
    let rows = (1..=a.nmax)
        .map(|n| divisor_second_moment(&table, n))
        .collect::<Result<Vec<_>>>()?;
    let mut check = Ok(());
    for r in &rows {
        if r.mean_series != r.mean_bruteforce {
            check = identity(format!("n = {}: series mean {} differs from brute force {}", r.n, r.mean_series, r.mean_bruteforce));
            break;
        }
        if r.mean_series > num_rational::Ratio::from_integer(i128::from(r.bound)) {
            check = identity(format!("n = {}: mean {} exceeds 4n^3 = {}", r.n, r.mean_series, r.bound));
            break;
        }
    }
    let csv = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.mean_series.to_string(), r.mean_bruteforce.to_string(), r.bound.to_string()])
        .collect();
    Outcome::checked(Report::new(&["n", "mean_series", "mean_bruteforce", "bound"], csv, &rows), check)
}

struct HayesSetup {
    group: HayesGroup,
    sums: ClassSums,
}

fn hayes_setup(a: &HayesArgs, env: &Env) -> Result<HayesSetup> {
    let ctx = &env.ctx;
    let modulus = HayesModulus::new(a.l, Poly::parse(ctx, &a.modulus)?, ctx)?;
    let n_max = a.nmax.unwrap_or(modulus.l() + modulus.m() + 2);
    let group = HayesGroup::build(modulus, ctx, env.budget)?;
    let arith = env.arith(n_max)?;
    let sums = ClassSums::build(&group, &arith, n_max, env.budget)?;
    Ok(HayesSetup { group, sums })
}

fn hayes_lfunc(a: &HayesArgs, env: &Env) -> Result<Outcome> {
    let s = hayes_setup(a, env)?;
    let mut polys = Vec::new();
    let mut csv = Vec::new();
    for chi in s.group.characters().filter(|c| !c.is_principal()) {
        let lp = l_polynomial(&s.group, &s.sums, &chi)?;
        for (n, c) in lp.polynomial().iter().enumerate() {
            let [re, im] = complex(*c);
            csv.push(vec![chi.id.to_string(), n.to_string(), re, im, lp.degree.to_string(), lp.degree_bound.to_string()]);
        }
        polys.push(lp);
    }
    Ok(Outcome::ok(Report::new(
        &["character", "n", "coeff_re", "coeff_im", "degree", "degree_bound"],
        csv,
        &polys,
    )))
}

fn rh(a: &HayesArgs, env: &Env) -> Result<Outcome> {
    let s = hayes_setup(a, env)?;
    let q = env.ctx.q();
    let mut reports = Vec::new();
    let mut csv = Vec::new();
    let mut check = Ok(());
    for chi in s.group.characters().filter(|c| !c.is_principal()) {
        let lp = l_polynomial(&s.group, &s.sums, &chi)?;
        let report = rh_check(&lp, q);
        for e in &report.entries {
            let [re, im] = complex(e.value);
            csv.push(vec![chi.id.to_string(), re, im, real(e.modulus), e.class.to_string(), e.multiplicity.to_string()]);
        }
        if check.is_ok() {
            check = report.ensure();
        }
        reports.push(report);
    }
    Outcome::checked(
        Report::new(&["character", "inverse_root_re", "inverse_root_im", "modulus", "class", "multiplicity"], csv, &reports),
        check,
    )
}

fn residual_check(a: &HayesArgs, env: &Env, log_deriv: bool) -> Result<Outcome> {
    #[derive(Serialize)]
    struct CharRows {
        character: usize,
        rows: Vec<Residual>,
    }
    let s = hayes_setup(a, env)?;
    let what = if log_deriv { "log-derivative identity" } else { "Euler product inverse" };
    let mut all = Vec::new();
    let mut csv = Vec::new();
    let mut check = Ok(());
    for chi in s.group.characters().filter(|c| !c.is_principal()) {
        let lp = l_polynomial(&s.group, &s.sums, &chi)?;
        let rows = if log_deriv {
            log_deriv_check(&s.group, &s.sums, &chi, &lp)?
        } else {
            euler_inverse_check(&s.group, &s.sums, &chi, &lp)?
        };
        for r in &rows {
            let [lr, li] = complex(r.lhs);
            let [rr, ri] = complex(r.rhs);
            csv.push(vec![chi.id.to_string(), r.n.to_string(), lr, li, rr, ri, real(r.residual)]);
        }
        if check.is_ok() {
            check = ensure_residuals(&rows, CHECK_TOL, &format!("{what}, character {}", chi.id));
        }
        all.push(CharRows { character: chi.id, rows });
    }
    Outcome::checked(
        Report::new(&["character", "n", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"], csv, &all),
        check,
    )
}

fn principal(a: &HayesArgs, env: &Env) -> Result<Outcome> {
    let s = hayes_setup(a, env)?;
    let rows = principal_check(&s.group, &s.sums);
    let check = ensure_exact(&rows);
    let csv = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.enumerated.to_string(), r.series.to_string()])
        .collect();
    Outcome::checked(Report::new(&["n", "enumerated", "series"], csv, &rows), check)
}

fn corr_row(r: &CorrelationReport) -> Vec<String> {
    let [re, im] = complex(r.sum);
    vec![
        r.n.to_string(),
        r.domain.to_string(),
        re,
        im,
        real(r.abs),
        opt_real(r.empirical_exponent),
        r.terms.to_string(),
        format!("\"{}\"", r.phase),
    ]
}

const CORR_COLUMNS: [&str; 8] = ["n", "domain", "sum_re", "sum_im", "abs", "empirical_exponent", "terms", "phase"];

fn linear(a: &LinearArgs, env: &Env) -> Result<Outcome> {
    let mut rng = env.rng();
    let alpha = env.series(a.alpha.as_deref(), a.n + 1, &mut rng)?;
    let domain = match a.domain {
        DomainArg::Monic => Domain::Monic,
        DomainArg::All => Domain::All,
    };
    let arith = env.arith(a.n)?;
    let report = linear_corr(&alpha, a.n, domain, &arith, &env.ctx, env.budget)?;
    let mut check = Ok(());
    if a.reduction {
        let red = reduction_check(&alpha, a.n, &arith, &env.ctx, env.budget)?;
        if !red.exact {
            check = identity(format!(
                "G_{} sum histogram {:?} differs from the reduced histogram {:?} at alpha = {}",
                a.n,
                red.direct,
                red.reduced,
                alpha.to_text()
            ));
        }
    }
    Outcome::checked(Report::new(&CORR_COLUMNS, vec![corr_row(&report)], &report), check)
}

fn quad(a: &QuadArgs, env: &Env) -> Result<Outcome> {
    let ctx = &env.ctx;
    let mut rng = env.rng();
    let m = match &a.matrix {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            FqMatrix::parse_csv(ctx, &text)?
        }
        None => env.symmetric(&mut rng, a.n),
    };
    if m.rows() != a.n {
        return Err(Error::Dimension(format!("matrix is {}x{}, n = {}", m.rows(), m.cols(), a.n)));
    }
    let (b, c) = if a.linear {
        ((0..a.n).map(|_| env.elem(&mut rng)).collect(), env.elem(&mut rng))
    } else {
        (vec![Fq::ZERO; a.n], Fq::ZERO)
    };
    let phase = QuadPhase::new(m, b, c, ctx.elem(a.r)?)?;
    let arith = env.arith(a.n)?;
    let report = quad_corr(&phase, &arith, ctx, env.budget)?;
    Ok(Outcome::ok(Report::new(&CORR_COLUMNS, vec![corr_row(&report)], &report)))
}

fn hankel(a: &HankelArgs, env: &Env) -> Result<Outcome> {
    let ctx = &env.ctx;
    let mut rng = env.rng();
    let alpha = env.series(a.alpha.as_deref(), 2 * a.n, &mut rng)?;
    let beta = env.series(a.beta.as_deref(), a.n, &mut rng)?;
    let arith = env.arith(a.n)?;
    let report = hankel_corr(&alpha, &beta, a.n, &arith, ctx, env.budget)?;
    let mut check = Ok(());
    if a.cross_check {
        let phase = QuadPhase::new(hankel_matrix(&alpha, a.n)?, beta.tail(a.n)?, Fq::ZERO, Fq::ONE)?;
        let other = quad_corr(&phase, &arith, ctx, env.budget)?;
        let gap = (other.sum - report.sum).norm();
        if gap >= 1e-9 {
            check = identity(format!("Hankel and quadratic routes differ by {gap} at alpha = {}, beta = {}", alpha.to_text(), beta.to_text()));
        }
    }
    Outcome::checked(Report::new(&CORR_COLUMNS, vec![corr_row(&report)], &report), check)
}

fn vaughan(a: &VaughanArgs, env: &Env) -> Result<Outcome> {
    #[derive(Serialize)]
    struct Out {
        audit: mobius_fq::correlations::PointwiseAudit,
        samples: Vec<mobius_fq::correlations::VaughanReport>,
    }
    let ctx = &env.ctx;
    let n = a.n;
    let u = a.u.unwrap_or_else(|| default_cutoff(n));
    let v = a.v.unwrap_or_else(|| default_cutoff(n));
    let audit = vaughan_audit(ctx, n, u.max(v), env.budget)?;
    let arith = env.arith(n)?;
    let mut rng = env.rng();
    let mut samples = Vec::new();
    let mut csv = Vec::new();
    let failing: Vec<String> = audit.failing_degrees(u, v).iter().map(usize::to_string).collect();
    let mut check = if audit.holds_above_sum(u, v) {
        Ok(())
    } else {
        let f = audit.failures.iter().find(|f| f.u == u && f.v == v && f.degree > u + v).expect("failure above u + v");
        identity(format!("pointwise identity fails at f = {} (degree {} > u + v = {})", f.example, f.degree, u + v))
    };
    for i in 0..a.samples {
        let alpha = LaurentSeries::sample_torus_with(&mut rng, n + 1, ctx);
        let exps = linear_exponents(&alpha, n, Domain::All, ctx, env.budget)?;
        let r = vaughan_decompose(&exps, n, u, v, &arith, ctx, env.budget)?;
        if check.is_ok() && r.restricted_residual >= 1e-6 {
            check = identity(format!("restricted residual {} at alpha = {}", r.restricted_residual, alpha.to_text()));
        }
        let [dr, di] = complex(r.direct);
        let [t1r, t1i] = complex(r.t1);
        let [t2r, t2i] = complex(r.t2);
        csv.push(vec![
            i.to_string(),
            u.to_string(),
            v.to_string(),
            dr,
            di,
            t1r,
            t1i,
            t2r,
            t2i,
            real(r.residual),
            real(r.restricted_residual),
            failing.join(" "),
        ]);
        samples.push(r);
    }
    let columns = [
        "sample",
        "u",
        "v",
        "direct_re",
        "direct_im",
        "t1_re",
        "t1_im",
        "t2_re",
        "t2_im",
        "residual",
        "restricted_residual",
        "failing_degrees",
    ];
    Outcome::checked(Report::new(&columns, csv, &Out { audit, samples }), check)
}

fn gauss(a: &GaussArgs, env: &Env) -> Result<Outcome> {
    let ctx = &env.ctx;
    let mut rng = env.rng();
    let mut reports = Vec::new();
    let mut csv = Vec::new();
    for i in 0..a.samples {
        let n = 1 + i % a.n.max(1);
        let m = env.symmetric(&mut rng, n);
        let r = Fq(rng.gen_range(1..ctx.q()) as u8);
        let phase = if a.linear {
            let b = (0..n).map(|_| env.elem(&mut rng)).collect();
            QuadPhase::new(m, b, env.elem(&mut rng), r)?
        } else {
            QuadPhase::pure(m, r)?
        };
        let rep = gauss_mean(&phase, ctx, env.budget)?;
        csv.push(vec![i.to_string(), rep.n.to_string(), rep.rank.to_string(), real(rep.abs), real(rep.bound), rep.equality_case.to_string()]);
        reports.push(rep);
    }
    Ok(Outcome::ok(Report::new(&["sample", "n", "rank", "abs", "bound", "equality_case"], csv, &reports)))
}

fn isotropic(a: &IsotropicArgs, env: &Env) -> Result<Outcome> {
    let mut rng = env.rng();
    let mut reports = Vec::new();
    let mut csv = Vec::new();
    for i in 0..a.samples {
        let forms: Vec<FqMatrix> = (0..a.r).map(|_| env.symmetric(&mut rng, a.n)).collect();
        let rep = isotropic_count(&forms, a.n, &env.ctx, env.budget)?;
        csv.push(vec![i.to_string(), rep.n.to_string(), rep.r.to_string(), rep.count.to_string(), real(rep.bound)]);
        reports.push(rep);
    }
    Ok(Outcome::ok(Report::new(&["sample", "n", "r", "count", "bound"], csv, &reports)))
}

fn ranks(a: &RankArgs, env: &Env) -> Result<Outcome> {
    let ctx = &env.ctx;
    let mut rng = env.rng();
    let alpha = env.series(a.alpha.as_deref(), 2 * a.n, &mut rng)?;
    let m = hankel_matrix(&alpha, a.n)?;
    let form = match a.form {
        Some(FormArg::Average) => PairForm::Average,
        Some(FormArg::Sum) => PairForm::Sum,
        Some(FormArg::Left) => PairForm::Left,
        None => PairForm::default_for(ctx),
    };
    let mode = if a.samples == 0 {
        RankMode::Exhaustive
    } else {
        RankMode::Sampled {
            samples: a.samples,
            seed: rng.gen(),
        }
    };
    let stats = rank_stats(&m, a.k, a.h, mode, form, ctx, env.budget)?;
    let text = stats.to_csv();
    let mut lines = text.lines();
    let mut columns: Vec<&str> = lines.next().expect("header line").split(',').collect();
    columns.push("form");
    let mut row: Vec<String> = lines.next().expect("data line").split(',').map(str::to_string).collect();
    row.push(form.name().to_string());
    Ok(Outcome::ok(Report::new(&columns, vec![row], &stats)))
}

fn sweep(a: &SweepArgs, env: &Env) -> Result<Outcome> {
    let experiment: Experiment = a.experiment.parse()?;
    let ns: Vec<usize> = (a.nmin..=a.nmax).collect();
    let rows: Vec<SweepRow> = exponent_sweep(experiment, &ns, a.samples, env.seed, &env.ctx, env.budget)?;
    let csv = rows.iter().map(|r| r.to_csv().split(',').map(str::to_string).collect()).collect();
    let columns: Vec<&str> = SweepRow::CSV_HEADER.split(',').collect();
    Ok(Outcome::ok(Report::new(&columns, csv, &rows)))
}
