use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use num_complex::Complex64;
use oscnet::beamsplitter::{self, BSParams};
use oscnet::charfn::{self, CharFunction};
use oscnet::fock;
use oscnet::lattice::{self, NetworkSpec, PermutationMatrix};
use oscnet::linalg::{self, CMatrix};
use oscnet::propagator::{self, Propagator};
use oscnet::synth::{self, BogoliubovPair, CouplingMatrix};

use crate::config::{Command, Format, InitialState, Options, Route, RunConfig};
use crate::error::CliError;
use crate::output::{self, MatrixDoc, Report, Value};

/// Tolerance for the structural identities reported by `validate`.
pub const VALIDATE_TOL: f64 = 1e-10;
/// A random unitary must miss the transfer equation by more than this.
pub const UNIQUENESS_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    /// A numerical check ran and failed.
    pub check_failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, check_failed: false }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let o = &config.options;
    match config.command {
        Command::Synthesize => synthesize(o),
        Command::Evolve => evolve(o),
        Command::SweepG => sweep_g(o),
        Command::TransferCheck => transfer_check(o),
        Command::FockDemo => fock_demo(o),
        Command::EntangleDemo => entangle_demo(o),
        Command::BsCascade => bs_cascade(o),
        Command::Validate => validate(o),
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write { path: p.to_owned(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("{what}: `{p}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_complex(text: &str, what: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| CliError::Usage(format!("{what}: `{p}` is not a number")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!("{what}: expected \"re,im\", got `{text}`"))),
    }
}

fn spec_from(o: &Options) -> Result<NetworkSpec, CliError> {
    let s = o.s.ok_or_else(|| CliError::Usage("--s is required".into()))?;
    let tau = o.tau.unwrap_or(1.0);
    let m = match o.m.as_deref() {
        None => vec![0; s],
        Some(text) => {
            let raw = parse_ints(text, "--m")?;
            let raw = if raw.len() == 1 { vec![raw[0]; s] } else { raw };
            raw.into_iter()
                .map(|x| u32::try_from(x).map_err(|_| CliError::Usage(format!("--m: {x} is too large"))))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(NetworkSpec::new(s, tau, m)?)
}

fn format_or(o: &Options, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = o.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("--format {f:?} is not available for this command").to_lowercase()))
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    }
}

fn synthesize(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Json, &[Format::Json, Format::Csv])?;
    let spec = spec_from(o)?;
    let lambda = match o.perm.as_deref() {
        Some(text) => {
            let image = parse_ints(text, "--perm")?.into_iter().map(|x| x as usize).collect::<Vec<_>>();
            let perm = PermutationMatrix::from_one_based(&image)?;
            synth::synthesize_for_permutation(spec.s(), spec.tau(), &perm, spec.m())?
        }
        None => synth::synthesize_couplings(&spec),
    };
    let doc = MatrixDoc::new(&spec, lambda.matrix());
    Ok(Outcome::ok(match format {
        Format::Csv => doc.to_csv(),
        _ => doc.to_json(),
    }))
}

fn propagator_for(spec: &NetworkSpec, route: Route, t: f64) -> Propagator {
    match route {
        Route::Closed => propagator::mu_closed_form(spec, t),
        Route::Spectral => propagator::mu_spectral(spec, t),
        Route::Oracle => {
            Propagator::number_conserving(t, propagator::mu_exponential_oracle(&synth::synthesize_couplings(spec), t))
        }
    }
}

fn evolve(o: &Options) -> Result<Outcome, CliError> {
    let (spec, mu) = match &o.lambda {
        Some(path) => {
            if o.s.is_some() || o.m.is_some() || o.tau.is_some() {
                return Err(CliError::Usage("--lambda carries s, tau and m; do not pass them as well".into()));
            }
            if matches!(o.route, Some(r) if r != Route::Oracle) {
                return Err(CliError::Usage("--lambda is evolved by the oracle route only".into()));
            }
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
            let doc = MatrixDoc::parse(&text)?;
            let spec = doc.spec()?;
            let lambda = CouplingMatrix::from_matrix(doc.matrix())?;
            let t = o.t.unwrap_or(1.0) * spec.tau();
            let mu = propagator::mu_exponential_oracle(&lambda, t);
            (spec, mu)
        }
        None => {
            let spec = spec_from(o)?;
            let t = o.t.unwrap_or(1.0) * spec.tau();
            let mu = propagator_for(&spec, o.route.unwrap_or(Route::Closed), t).mu().clone();
            (spec, mu)
        }
    };

    if let Some(alpha) = o.alpha.as_deref() {
        let format = format_or(o, Format::Csv, &[Format::Csv])?;
        let alpha = parse_complex(alpha, "--alpha")?;
        return Ok(Outcome::ok(format_char_values(o, &mu, alpha, format)?));
    }
    let format = format_or(o, Format::Json, &[Format::Json, Format::Csv])?;
    let doc = MatrixDoc::new(&spec, &mu);
    Ok(Outcome::ok(match format {
        Format::Csv => doc.to_csv(),
        _ => doc.to_json(),
    }))
}

/// `site,re,im` of every site's reduced characteristic function at `α`.
fn format_char_values(o: &Options, mu: &CMatrix, alpha: Complex64, _format: Format) -> Result<String, CliError> {
    let state = o.state.unwrap_or(InitialState::Fock);
    let n = o.n.unwrap_or(1);
    let beta = parse_complex(o.beta.as_deref().unwrap_or("1,0"), "--beta")?;
    let mut out = String::from("site,re,im\n");
    for j in 0..mu.nrows() {
        let amp = mu[(j, 0)];
        let f = match state {
            InitialState::Fock => CharFunction::Fock { n, g: amp.norm_sqr().min(1.0) },
            InitialState::Coherent => CharFunction::Coherent { beta, amp },
        };
        let v = f.eval(alpha);
        out.push_str(&format!("{},{},{}\n", j + 1, output::fmt_float(v.re), output::fmt_float(v.im)));
    }
    Ok(out)
}

fn sweep_g(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Csv, &[Format::Csv, Format::Json])?;
    let spec = spec_from(o)?;
    let tau = spec.tau();
    let t_min = o.t_min.unwrap_or(0.0);
    let t_max = o.t_max.unwrap_or(spec.s() as f64);
    let steps = o.steps.unwrap_or(100 * spec.s() + 1);
    let series = charfn::sweep_g(&spec, o.site.unwrap_or(1), t_min * tau, t_max * tau, steps)?;
    Ok(Outcome::ok(match format {
        Format::Json => output::g_series_json(&series),
        _ => output::g_series_csv(&series),
    }))
}

fn transfer_check(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Text, &[Format::Text, Format::Json])?;
    let spec = spec_from(o)?;
    let route = o.route.unwrap_or(Route::Closed);
    let t_over_tau = o.t.unwrap_or(1.0);
    let from = o.from.unwrap_or(1);
    let to = o.to.unwrap_or(from % spec.s() + 1);
    let prop = propagator_for(&spec, route, t_over_tau * spec.tau());
    let check = propagator::check_transfer_conditions(&prop, from, to)?;
    let mut r = Report::default();
    r.push("route", Value::Text(format!("{route:?}").to_lowercase()))
        .push("t_over_tau", Value::Float(t_over_tau))
        .push("from", Value::Int(from as i64))
        .push("to", Value::Int(to as i64))
        .push("residual", Value::Float(check.residual))
        .push("tolerance", Value::Float(propagator::TRANSFER_TOL))
        .push("unitarity_residual", Value::Float(prop.unitarity_residual()))
        .push("passed", Value::Bool(check.passed));
    Ok(Outcome { output: render(&r, format), check_failed: !check.passed })
}

fn fock_demo(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Text, &[Format::Text, Format::Json])?;
    let spec = spec_from(o)?;
    let n = o.n.unwrap_or(1);
    let fidelities = fock::fock_transfer_fidelities(&spec, n)?;
    let min = fidelities.iter().copied().fold(f64::INFINITY, f64::min);
    let passed = min >= 1.0 - fock::TRANSFER_FIDELITY_TOL;
    let mut r = Report::default();
    r.push("n", Value::Int(i64::from(n)))
        .push("sector_size", Value::Int(fock::sector_size(spec.s(), n) as i64))
        .push("fidelity_at_k_tau", Value::Floats(fidelities))
        .push("min_fidelity", Value::Float(min))
        .push("passed", Value::Bool(passed));
    Ok(Outcome { output: render(&r, format), check_failed: !passed })
}

fn entangle_demo(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Text, &[Format::Text, Format::Json])?;
    let spec = spec_from(o)?;
    let n = o.n.unwrap_or(1);
    let report = fock::entangled_transfer_check(&spec, n, o.samples.unwrap_or(8))?;
    let mut r = Report::default();
    r.push("n", Value::Int(i64::from(n)))
        .push("fidelity_at_k_tau", Value::Floats(report.lattice.iter().map(|&(_, f)| f).collect()))
        .push("min_intermediate_t_over_tau", Value::Float(report.min_intermediate.0 / spec.tau()))
        .push("min_intermediate_fidelity", Value::Float(report.min_intermediate.1))
        .push("passed", Value::Bool(report.passed));
    Ok(Outcome { output: render(&r, format), check_failed: !report.passed })
}

fn bs_cascade(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Text, &[Format::Text, Format::Json])?;
    let p1 = BSParams::from_angle(o.theta1.unwrap_or(FRAC_PI_4));
    let p2 = BSParams::from_angle(o.theta2.unwrap_or(FRAC_PI_4));
    let out = beamsplitter::cascade(p1, p2);
    let mut r = Report::default();
    r.push("t1", Value::Float(p1.transmission()))
        .push("r1", Value::Float(p1.reflection()))
        .push("t2", Value::Float(p2.transmission()))
        .push("r2", Value::Float(p2.reflection()))
        .push("c10_re", Value::Float(out.c10.re))
        .push("c10_im", Value::Float(out.c10.im))
        .push("c01_re", Value::Float(out.c01.re))
        .push("c01_im", Value::Float(out.c01.im))
        .push("perfect_transfer", Value::Bool(beamsplitter::perfect_transfer_condition(p1, p2)));
    Ok(Outcome::ok(render(&r, format)))
}

fn validate(o: &Options) -> Result<Outcome, CliError> {
    let format = format_or(o, Format::Text, &[Format::Text, Format::Json])?;
    let spec = spec_from(o)?;
    let s = spec.s();
    let tau = spec.tau();
    let w = lattice::dft_matrix(s)?.into_matrix();
    let bogoliubov = synth::validate_bogoliubov(&BogoliubovPair::new(w, CMatrix::zeros(s, s))?);
    let diag = synth::diagonalizer_residual(lattice::shift_diagonalizer(s)?.matrix(), &spec)?;
    let routes = linalg::max_abs_diff(
        synth::synthesize_couplings(&spec).matrix(),
        synth::synthesize_couplings_spectral(&spec).matrix(),
    );
    let c = lattice::cyclic_shift_matrix(s)?.to_matrix();
    let id = linalg::identity(s);
    let mut transfer: f64 = 0.0;
    let mut recurrence: f64 = 0.0;
    for route in [Route::Closed, Route::Spectral, Route::Oracle] {
        transfer = transfer.max(linalg::max_abs_diff(propagator_for(&spec, route, tau).mu(), &c));
        recurrence = recurrence.max(linalg::max_abs_diff(propagator_for(&spec, route, s as f64 * tau).mu(), &id));
    }
    let samples = o.samples.unwrap_or(100);
    // Every 1×1 unitary diagonalises the 1×1 shift, so the spot check needs s ≥ 2.
    let uniqueness = if s >= 2 && samples > 0 {
        Some(synth::uniqueness_spot_check(&spec, samples, o.seed.unwrap_or(0))?)
    } else {
        None
    };
    let passed = bogoliubov.passed
        && diag <= VALIDATE_TOL
        && routes <= VALIDATE_TOL
        && transfer <= VALIDATE_TOL
        && recurrence <= VALIDATE_TOL
        && uniqueness.is_none_or(|u| u > UNIQUENESS_FLOOR);

    let mut r = Report::default();
    r.push("bogoliubov_residuals", Value::Floats(bogoliubov.residuals.to_vec()))
        .push("bogoliubov_passed", Value::Bool(bogoliubov.passed))
        .push("diagonalizer_residual", Value::Float(diag))
        .push("coupling_route_disagreement", Value::Float(routes))
        .push("mu_tau_minus_shift", Value::Float(transfer))
        .push("mu_s_tau_minus_identity", Value::Float(recurrence));
    match uniqueness {
        Some(u) => r.push("random_unitary_min_residual", Value::Float(u)),
        None => r.push("random_unitary_min_residual", Value::Text("skipped".into())),
    };
    r.push("passed", Value::Bool(passed));
    Ok(Outcome { output: render(&r, format), check_failed: !passed })
}
