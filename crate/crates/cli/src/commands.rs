//! Validation and dispatch of parsed commands onto `zf_core`.

use std::io::Write;

use zf_core::elliptic::{
    self, EllipticCurve, PointConvention, MAX_HEIGHT_BOUND, MAX_POINT_COUNT_PRIME,
};
use zf_core::primes::{self, PrimeTable, DEFAULT_MAX_SIEVE_LIMIT};
use zf_core::{dipole, prime_zeta, zeta, ComplexValue, SeriesTrace};

use crate::args::*;
use crate::output::{complex_cells, format_float, trace_table, Cell, Table};

/// Largest m accepted by `identity --name expansion-coeff`.
pub const MAX_EXPANSION_M: u64 = 10_000_000;
/// Largest prime bound accepted by `prime-zeta --method inclusion-exclusion`.
pub const MAX_PRIME_BOUND: u64 = 100_000;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or inputs; exit 2.
    Usage(String),
    /// Failure during computation; exit 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<zf_core::Error> for CliError {
    fn from(e: zf_core::Error) -> Self {
        if e.is_precondition() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("write failed: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        usage(msg())
    }
}

fn sieve_limit_ok(limit: u64) -> CliResult<()> {
    require((2..=DEFAULT_MAX_SIEVE_LIMIT).contains(&limit), || {
        format!("--limit must be in [2, {DEFAULT_MAX_SIEVE_LIMIT}], got {limit}")
    })
}

fn first_primes_ok(n: u64) -> CliResult<()> {
    require(
        primes::nth_prime_upper_bound(n.saturating_add(2)) <= DEFAULT_MAX_SIEVE_LIMIT,
        || format!("{n} primes exceed the sieve budget {DEFAULT_MAX_SIEVE_LIMIT}"),
    )
}

fn increasing(limits: &[u64], min: u64) -> CliResult<()> {
    require(!limits.is_empty(), || "--limits must not be empty".into())?;
    require(limits.windows(2).all(|w| w[0] < w[1]), || {
        "--limits must be strictly increasing".into()
    })?;
    require(limits[0] >= min, || {
        format!("--limits entries must be at least {min}")
    })
}

fn strip(z: ComplexValue) -> CliResult<()> {
    require(z.re > 0.5 && z.re < 1.0, || {
        format!("counterterm regularization needs 1/2 < Re z < 1, got {z}")
    })
}

fn not_pole(z: ComplexValue) -> CliResult<()> {
    require(z != ComplexValue::new(1.0, 0.0), || {
        "z = 1 is a pole".into()
    })
}

/// Checks every module precondition that can be decided from the arguments
/// alone, so violations exit before any work starts.
pub fn validate(cfg: &RunConfig) -> CliResult<()> {
    match &cfg.command {
        Command::Zeta(a) => {
            require(a.tol > 0.0 && a.tol.is_finite(), || {
                format!("--tol must be positive, got {}", a.tol)
            })?;
            match a.method {
                ZetaMethod::Eta | ZetaMethod::Auto => {
                    require(a.z.re > 0.0, || {
                        format!("{:?} needs Re z > 0, got {}", a.method, a.z)
                    })?;
                    not_pole(a.z)
                }
                ZetaMethod::Dirichlet => {
                    require(a.limit >= 1, || "--limit must be at least 1".into())
                }
                ZetaMethod::Counterterm => {
                    not_pole(a.z)?;
                    require(a.limit >= 1, || "--limit must be at least 1".into())
                }
                ZetaMethod::EulerProduct => {
                    require(a.z.re > 1.0, || {
                        format!("Euler product needs Re z > 1, got {}", a.z)
                    })?;
                    sieve_limit_ok(a.limit)
                }
            }
        }
        Command::PrimeZeta(a) => match a.method {
            PrimeZetaMethod::Direct => sieve_limit_ok(a.limit),
            PrimeZetaMethod::Mobius | PrimeZetaMethod::InclusionExclusion => {
                require(a.z.re > 0.5, || format!("needs Re z > 1/2, got {}", a.z))?;
                not_pole(a.z)?;
                require(a.tol > 0.0 && a.tol.is_finite(), || {
                    format!("--tol must be positive, got {}", a.tol)
                })?;
                if a.method == PrimeZetaMethod::Mobius {
                    require(a.depth >= 1, || "--depth must be at least 1".into())
                } else {
                    require(a.prime_bound <= MAX_PRIME_BOUND, || {
                        format!("--prime-bound must be at most {MAX_PRIME_BOUND}")
                    })
                }
            }
            PrimeZetaMethod::Counterterm => {
                strip(a.z)?;
                if a.limits.is_empty() {
                    sieve_limit_ok(a.limit)?;
                    require(a.limit >= 10, || "--limit must be at least 10".into())
                } else {
                    increasing(&a.limits, 2)?;
                    first_primes_ok(*a.limits.last().unwrap())
                }
            }
        },
        Command::Identity(a) => match a.name {
            IdentityName::EulerGamma => require(a.kmax >= 2, || "--kmax must be at least 2".into()),
            IdentityName::ArtinHasse => {
                require(a.z.re > 1.0, || {
                    format!("artin-hasse needs Re z > 1, got {}", a.z)
                })?;
                require(a.depth >= 1, || "--depth must be at least 1".into())?;
                sieve_limit_ok(a.limit)
            }
            IdentityName::LogSplit => require(a.z.re > 1.0, || {
                format!("log-split needs Re z > 1, got {}", a.z)
            }),
            IdentityName::ExpansionCoeff => {
                require((1..=MAX_EXPANSION_M).contains(&a.m_max), || {
                    format!("--m-max must be in [1, {MAX_EXPANSION_M}]")
                })
            }
        },
        Command::Dipole(a) => match a.mode {
            DipoleMode::Recurrence | DipoleMode::Regularized => {
                require(a.limit >= 2, || "--limit must be at least 2".into())?;
                first_primes_ok(a.limit)
            }
            DipoleMode::ClosedForm => {
                require(a.limit >= 1, || "--limit must be at least 1".into())?;
                first_primes_ok(a.limit)
            }
            DipoleMode::Scan => {
                increasing(&a.limits, 2)?;
                first_primes_ok(*a.limits.last().unwrap())
            }
        },
        Command::Curve(a) => match a.mode {
            CurveMode::Ap => require((3..=MAX_POINT_COUNT_PRIME + 1).contains(&a.limit), || {
                format!("--limit must be in [3, {}]", MAX_POINT_COUNT_PRIME + 1)
            }),
            CurveMode::Discriminant => Ok(()),
        },
        Command::Bsd(a) => {
            require((3..=MAX_POINT_COUNT_PRIME + 1).contains(&a.x), || {
                format!("--x must be in [3, {}]", MAX_POINT_COUNT_PRIME + 1)
            })?;
            require(a.per_decade >= 1, || {
                "--per-decade must be at least 1".into()
            })?;
            if a.fitting() {
                let n = elliptic::bsd_checkpoints(a.x, a.per_decade).len();
                require(n >= 3, || {
                    format!("--x {} gives {n} fit checkpoints, need at least 3", a.x)
                })?;
            }
            Ok(())
        }
        Command::Points(a) => require((1..=MAX_HEIGHT_BOUND).contains(&a.a), || {
            format!("--A must be in [1, {MAX_HEIGHT_BOUND}]")
        }),
    }
}

fn load_catalog(c: &CatalogArgs) -> CliResult<Vec<EllipticCurve>> {
    let curves = match &c.curve_file {
        Some(path) => elliptic::load_curve_catalog(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => elliptic::fixtures(),
    };
    let curves: Vec<EllipticCurve> = match &c.label {
        Some(label) => curves
            .into_iter()
            .filter(|cv| cv.label() == label)
            .collect(),
        None => curves,
    };
    if curves.is_empty() {
        return usage(match &c.label {
            Some(l) => format!("no curve labelled `{l}` in the catalog"),
            None => "the curve catalog is empty".into(),
        });
    }
    Ok(curves)
}

/// Result of a command: the table for standard output plus notes for standard error.
pub struct Report {
    pub table: Table,
    pub notes: Vec<String>,
}

impl Report {
    fn plain(table: Table) -> Self {
        Self {
            table,
            notes: Vec::new(),
        }
    }
}

pub fn execute(cfg: &RunConfig) -> CliResult<Report> {
    validate(cfg)?;
    match &cfg.command {
        Command::Zeta(a) => run_zeta(a),
        Command::PrimeZeta(a) => run_prime_zeta(a),
        Command::Identity(a) => run_identity(a),
        Command::Dipole(a) => run_dipole(a),
        Command::Curve(a) => run_curve(a),
        Command::Bsd(a) => run_bsd(a),
        Command::Points(a) => run_points(a),
    }
}

fn method_name<T: clap::ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn run_zeta(a: &ZetaArgs) -> CliResult<Report> {
    let value = match a.method {
        ZetaMethod::Eta => zeta::zeta_eta(a.z, a.tol)?,
        ZetaMethod::Auto => zeta::zeta_auto(a.z, a.tol)?,
        ZetaMethod::Dirichlet => zeta::zeta_dirichlet(a.z, a.limit)?,
        ZetaMethod::Counterterm => zeta::zeta_counterterm(a.z, a.limit)?,
        ZetaMethod::EulerProduct => zeta::euler_product_zeta(a.z, &primes::sieve(a.limit)?)?,
    };
    let mut t = Table::new(&["z_re", "z_im", "value_re", "value_im", "method"]);
    let [zr, zi] = complex_cells(a.z);
    let [vr, vi] = complex_cells(value);
    t.push(vec![zr, zi, vr, vi, method_name(&a.method).into()]);
    Ok(Report::plain(t))
}

fn run_prime_zeta(a: &PrimeZetaArgs) -> CliResult<Report> {
    if a.method == PrimeZetaMethod::Counterterm && !a.limits.is_empty() {
        return Ok(Report::plain(trace_table(&prime_zeta::phat_scan(
            a.z, &a.limits,
        )?)));
    }
    let (mut limit, mut depth, mut bound) = (None, None, None);
    let (value, diagnostic) = match a.method {
        PrimeZetaMethod::Direct => {
            limit = Some(a.limit);
            let table = primes::sieve(a.limit)?;
            let tail = if a.z.re > 1.0 {
                Some(prime_zeta::prime_tail_estimate(a.z, a.limit)?.norm())
            } else {
                None
            };
            (prime_zeta::prime_zeta_direct(a.z, &table)?, tail)
        }
        PrimeZetaMethod::Mobius => {
            depth = Some(a.depth);
            let est = prime_zeta::prime_zeta_mobius(a.z, a.depth, a.tol)?;
            (est.value, Some(est.last_term))
        }
        PrimeZetaMethod::InclusionExclusion => {
            depth = Some(a.depth);
            bound = Some(a.prime_bound);
            (
                prime_zeta::inclusion_exclusion_p(a.z, a.prime_bound, a.depth)?,
                None,
            )
        }
        PrimeZetaMethod::Counterterm => {
            limit = Some(a.limit);
            (
                prime_zeta::prime_zeta_regularized(a.z, &primes::sieve(a.limit)?)?,
                None,
            )
        }
    };
    let mut t = Table::new(&[
        "z_re",
        "z_im",
        "method",
        "limit",
        "depth",
        "prime_bound",
        "value_re",
        "value_im",
        "diagnostic",
    ]);
    let [zr, zi] = complex_cells(a.z);
    let [vr, vi] = complex_cells(value);
    t.push(vec![
        zr,
        zi,
        method_name(&a.method).into(),
        limit.into(),
        depth.into(),
        bound.into(),
        vr,
        vi,
        diagnostic.into(),
    ]);
    Ok(Report::plain(t))
}

const IDENTITY_COLUMNS: [&str; 9] = [
    "name",
    "z_re",
    "z_im",
    "param",
    "value_re",
    "value_im",
    "reference_re",
    "reference_im",
    "defect",
];

fn run_identity(a: &IdentityArgs) -> CliResult<Report> {
    let name = method_name(&a.name);
    let mut t = Table::new(&IDENTITY_COLUMNS);
    match a.name {
        IdentityName::EulerGamma => {
            let value = prime_zeta::euler_gamma_identity(a.kmax)?;
            let reference = 1.0 - prime_zeta::EULER_GAMMA;
            t.push(vec![
                name.into(),
                Cell::Empty,
                Cell::Empty,
                a.kmax.into(),
                value.into(),
                0.0.into(),
                reference.into(),
                0.0.into(),
                (value - reference).abs().into(),
            ]);
        }
        IdentityName::ArtinHasse => {
            let table = primes::sieve(a.limit)?;
            let check = prime_zeta::artin_hasse_check(a.z, a.depth, &table)?;
            let [zr, zi] = complex_cells(a.z);
            let [lr, li] = complex_cells(check.lhs);
            let [rr, ri] = complex_cells(check.rhs);
            t.push(vec![
                name.into(),
                zr,
                zi,
                a.depth.into(),
                lr,
                li,
                rr,
                ri,
                check.defect.into(),
            ]);
        }
        IdentityName::LogSplit => {
            let defect = prime_zeta::log_zeta_split_check(a.z)?;
            let [zr, zi] = complex_cells(a.z);
            t.push(vec![
                name.into(),
                zr,
                zi,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                defect.into(),
            ]);
        }
        IdentityName::ExpansionCoeff => {
            let mut t = Table::new(&["m", "coefficient"]);
            for m in 1..=a.m_max {
                let c = prime_zeta::expansion_coefficient(m)?;
                t.push(vec![m.into(), c.value.to_string().into()]);
            }
            return Ok(Report::plain(t));
        }
    }
    Ok(Report::plain(t))
}

fn first_table(n: u64) -> CliResult<PrimeTable> {
    Ok(primes::sieve_first(n + 2)?)
}

fn run_dipole(a: &DipoleArgs) -> CliResult<Report> {
    match a.mode {
        DipoleMode::Recurrence | DipoleMode::ClosedForm => {
            let n = a.limit as usize;
            let table = first_table(a.limit)?;
            let seq = if a.mode == DipoleMode::Recurrence {
                let alpha1 = match a.alpha1 {
                    Some(v) => v,
                    None => dipole::default_seed(a.z, &table)?,
                };
                dipole::solve_alpha_recurrence(a.z, n, alpha1, &table)?
            } else {
                dipole::closed_form_alpha(a.z, n, &table)?
            };
            let mut t = Table::new(&["k", "alpha_re", "alpha_im", "residual_re", "residual_im"]);
            for (i, &(k, alpha)) in seq.alphas.iter().enumerate() {
                let res = seq.residuals.get(i).map(|&(_, r)| r);
                t.push(vec![
                    k.into(),
                    alpha.re.into(),
                    alpha.im.into(),
                    res.map(|r| r.re).into(),
                    res.map(|r| r.im).into(),
                ]);
            }
            let mut notes = Vec::new();
            if a.mode == DipoleMode::Recurrence {
                let tel = dipole::telescoping_check(&seq, &table)?;
                notes.push(format!(
                    "telescoping defect {} scale {} relative {}",
                    format_float(tel.defect),
                    format_float(tel.scale),
                    format_float(tel.relative())
                ));
            } else {
                let max = seq
                    .residuals
                    .iter()
                    .map(|(_, r)| r.norm())
                    .fold(0.0, f64::max);
                let nonzero = seq
                    .residuals
                    .iter()
                    .filter(|(_, r)| r.norm() != 0.0)
                    .count();
                notes.push(format!(
                    "closed-form residuals: {nonzero} of {} nonzero, max modulus {}",
                    seq.residuals.len(),
                    format_float(max)
                ));
            }
            Ok(Report { table: t, notes })
        }
        DipoleMode::Regularized => {
            let table = first_table(a.limit)?;
            Ok(Report::plain(trace_table(&dipole::dipole_scan(
                a.z,
                &[a.limit],
                &table,
            )?)))
        }
        DipoleMode::Scan => {
            let table = first_table(*a.limits.last().unwrap())?;
            let trace: SeriesTrace = dipole::dipole_scan(a.z, &a.limits, &table)?;
            let notes = dipole::growth_exponent(&trace)
                .map(|g| vec![format!("growth exponent {}", format_float(g))])
                .unwrap_or_default();
            Ok(Report {
                table: trace_table(&trace),
                notes,
            })
        }
    }
}

fn run_curve(a: &CurveArgs) -> CliResult<Report> {
    let curves = load_catalog(&a.catalog)?;
    match a.mode {
        CurveMode::Discriminant => {
            let mut t = Table::new(&[
                "label",
                "a1",
                "a2",
                "a3",
                "a4",
                "a6",
                "discriminant",
                "reference_rank",
            ]);
            for c in &curves {
                let mut row: Vec<Cell> = vec![c.label().into()];
                row.extend(c.coeffs().iter().map(|&v| Cell::from(v)));
                row.push(c.discriminant().into());
                row.push(c.reference_rank().map(u64::from).into());
                t.push(row);
            }
            Ok(Report::plain(t))
        }
        CurveMode::Ap => {
            let table = primes::sieve(a.limit)?;
            let ps = table.primes_below(a.limit);
            let mut t = Table::new(&["label", "p", "Np", "ap", "good"]);
            let mut notes = Vec::new();
            for c in &curves {
                let data = elliptic::local_data_for(c, ps)?;
                let bad = elliptic::hasse_violations(&data);
                if !bad.is_empty() {
                    notes.push(format!(
                        "{}: {} Hasse bound violations",
                        c.label(),
                        bad.len()
                    ));
                }
                for d in data {
                    t.push(vec![
                        c.label().into(),
                        d.p.into(),
                        d.n_p.into(),
                        d.a_p.into(),
                        d.good.into(),
                    ]);
                }
            }
            Ok(Report { table: t, notes })
        }
    }
}

fn run_bsd(a: &BsdArgs) -> CliResult<Report> {
    let curves = load_catalog(&a.catalog)?;
    if a.trace && curves.len() != 1 {
        return usage("--trace needs exactly one curve; select it with --label");
    }
    let convention = if a.affine {
        PointConvention::Affine
    } else {
        PointConvention::Projective
    };
    let table = primes::sieve(a.x)?;
    let mut t = Table::new(&["label", "x", "log_product", "r_hat", "logC", "residual_rms"]);
    for c in &curves {
        let product = elliptic::bsd_product_with_grid(c, a.x, &table, convention, a.per_decade)?;
        if a.trace {
            return Ok(Report::plain(trace_table(&product.trace)));
        }
        let fit = if a.fitting() {
            Some(elliptic::fit_rank(&product.trace)?)
        } else {
            None
        };
        t.push(vec![
            c.label().into(),
            a.x.into(),
            product.log_product.into(),
            fit.as_ref().map(|f| f.r_hat).into(),
            fit.as_ref().map(|f| f.log_c).into(),
            fit.as_ref().map(|f| f.residual_rms).into(),
        ]);
    }
    Ok(Report::plain(t))
}

fn run_points(a: &PointsArgs) -> CliResult<Report> {
    let curves = load_catalog(&a.catalog)?;
    let mut t = Table::new(&["label", "A", "count"]);
    for c in &curves {
        t.push(vec![
            c.label().into(),
            a.a.into(),
            elliptic::count_rational_points(c, a.a)?.into(),
        ]);
    }
    Ok(Report::plain(t))
}

/// Runs a parsed configuration, writing the table to `out` and notes to `err`.
pub fn run<O: Write, E: Write>(cfg: &RunConfig, out: &mut O, err: &mut E) -> CliResult<()> {
    let report = zf_core::par::with_threads(cfg.threads, || execute(cfg))?;
    report.table.write(cfg.output_format, &mut *out)?;
    for note in &report.notes {
        writeln!(err, "{note}")?;
    }
    Ok(())
}
