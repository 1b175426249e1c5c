use amphase_core::canonical::{canonical_transform, LinearOde2};
use amphase_core::ermakov::{integrate_ep, pinney_closed_form, second_order_residual, ComplexPair, EpParams};
use amphase_core::expr::Expr;
use amphase_core::kasner::{make_exponents, TimeOneForm};
use amphase_core::numerics::{IntegratorConfig, Interval, ScalarFunction};
use amphase_core::parametrix::{self, ParametrixParams, RecipeFields};
use num_complex::Complex64;

use crate::config::{GridSpec, RunConfig, Spacing, SubcommandKind};
use crate::output::{Cell, Table};
use crate::CliError;

/// A finished table and whether every checked residual stayed below `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub passed: bool,
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    match config.subcommand {
        SubcommandKind::Canonical => canonical(config),
        SubcommandKind::Ermakov => ermakov(config),
        SubcommandKind::Kasner => kasner(config),
        SubcommandKind::Parametrix => parametrix_table(config),
        SubcommandKind::Verify => verify(config),
    }
}

fn grid_of(config: &RunConfig) -> Result<(GridSpec, Vec<f64>), CliError> {
    let g = config.grid.clone().ok_or_else(|| CliError::Invalid("this subcommand needs a grid".into()))?;
    let span = Interval::new(g.t_min, g.t_max)?;
    let points = match g.spacing {
        Spacing::Linear => span.linspace(g.n_points),
        Spacing::Log => span.logspace(g.n_points)?,
    };
    Ok((g, points))
}

fn all_finite(table: &Table) -> bool {
    table.numbers().all(f64::is_finite)
}

fn expression(config: &RunConfig, key: &str, domain: Interval) -> Result<ScalarFunction, CliError> {
    let src = config.text(key)?;
    let e = Expr::parse(src).map_err(|err| CliError::Invalid(format!("--{key} '{src}': {err}")))?;
    Ok(ScalarFunction::new(domain, move |x| e.eval(x)))
}

fn canonical(config: &RunConfig) -> Result<Outcome, CliError> {
    let (g, xs) = grid_of(config)?;
    let domain = Interval::new(g.t_min, g.t_max)?;
    // coefficients are formulas, so they extend a little past the grid and
    // P' stays computable at both grid ends
    let margin = 1e-3 * domain.width();
    let wide = Interval::new(domain.lo() - margin, domain.hi() + margin)?;
    let p = expression(config, "p", wide)?;
    let q = expression(config, "q", wide)?;
    let cf = canonical_transform(&LinearOde2::new(p, q, domain)?)?;
    let mut table = Table::new(vec!["x", "J", "factor"]);
    for x in xs {
        table.push(vec![Cell::Num(x), Cell::Num(cf.j().eval(x)), Cell::Num(cf.integrating_factor().eval(x))]);
    }
    let passed = all_finite(&table);
    Ok(Outcome { table, passed })
}

fn ermakov(config: &RunConfig) -> Result<Outcome, CliError> {
    let (g, xs) = grid_of(config)?;
    let params = EpParams::new(config.number("tau")?)?;
    let (u0, du0) = (config.number("u0")?, config.number("du0")?);
    if !(u0 > 0.0) {
        return Err(CliError::Invalid(format!("--u0 must be positive, got {u0}")));
    }

    // constants matching (u0, du0) at the first grid point; W = τ
    let x0 = g.t_min;
    let b = Complex64::new(du0, params.tau() / u0);
    let pair = ComplexPair::new(Complex64::new(u0, 0.0) - b * x0, b);

    let span = Interval::new(g.t_min, g.t_max)?;
    // the closed form lives on a wider interval so residual stencils fit at the ends
    let wide = Interval::new(span.lo() - span.width(), span.hi() + span.width())?;
    let closed = pinney_closed_form(pair, params, wide)?;
    let numeric = integrate_ep(params, u0, du0, span, &IntegratorConfig::default())?;

    let mut table = Table::new(vec!["t", "u_closed", "u_numeric", "residual_2nd_order"]);
    let mut passed = true;
    for x in xs {
        let uc = closed.u().eval(x);
        let un = numeric.eval(x);
        let r = second_order_residual(closed.u(), params, x)?;
        passed &= r.abs() < config.tol && (uc - un).abs() < config.tol * uc.abs().max(1.0);
        table.push(vec![Cell::Num(x), Cell::Num(uc), Cell::Num(un), Cell::Num(r)]);
    }
    passed &= all_finite(&table);
    Ok(Outcome { table, passed })
}

fn kasner(config: &RunConfig) -> Result<Outcome, CliError> {
    let p1 = config.number("p1")?;
    let mut table = Table::new(vec!["p1", "p2", "p3", "sum_residual", "sphere_residual"]);
    let mut passed = true;
    for exps in make_exponents(p1)? {
        let [a, b, c] = exps.as_array();
        let (sum, sphere) = exps.constraint_residuals();
        passed &= sum.abs() < config.tol && sphere.abs() < config.tol;
        table.push([a, b, c, sum, sphere].into_iter().map(Cell::Num).collect());
    }
    Ok(Outcome { table, passed })
}

fn parametrix_params(config: &RunConfig) -> Result<ParametrixParams, CliError> {
    Ok(ParametrixParams::new(
        config.number("kappa")?,
        config.number("sigma")?,
        config.number("T")?,
        config.number("phi_T")?,
    )?)
}

fn check_inside(params: &ParametrixParams, g: &GridSpec) -> Result<(), CliError> {
    let d = params.domain();
    if d.contains(g.t_min) && d.contains(g.t_max) {
        Ok(())
    } else {
        Err(CliError::Invalid(format!(
            "grid [{}, {}] leaves the supported range [{}, {}] for this T",
            g.t_min,
            g.t_max,
            d.lo(),
            d.hi()
        )))
    }
}

fn parametrix_table(config: &RunConfig) -> Result<Outcome, CliError> {
    let params = parametrix_params(config)?;
    let (g, ts) = grid_of(config)?;
    check_inside(&params, &g)?;
    let alpha = parametrix::amplitude(&params);
    let phi = parametrix::phase(&params);
    let rho = parametrix::beta_closed_form(&params);
    let psi = parametrix::psi_kasner(&params);

    let mut table = Table::new(vec!["t", "alpha", "phi", "beta1", "beta2", "psi0"]);
    for t in ts {
        let row = [t, alpha.eval(t), phi.eval(t), rho.beta1().eval(t), rho.beta2().eval(t), psi.comp0().eval(t)];
        table.push(row.into_iter().map(Cell::Num).collect());
    }
    let passed = all_finite(&table);
    Ok(Outcome { table, passed })
}

fn verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let params = parametrix_params(config)?;
    let (g, ts) = grid_of(config)?;
    check_inside(&params, &g)?;

    let domain = params.domain();
    let kappa = params.kappa();
    let fields = RecipeFields::closed_form(&params);
    let fields = match config.text("control")? {
        "none" => fields,
        "psi" => fields.with_psi(TimeOneForm::new(ScalarFunction::new(domain, move |t| kappa / (t * t)))?),
        "alpha" => fields.with_alpha(ScalarFunction::constant(domain, 1.0)),
        other => return Err(CliError::Invalid(format!("unknown control '{other}'"))),
    };

    let reports = parametrix::verify_fields(&fields, &ts)?;
    let mut table = Table::new(vec!["equation", "max_abs", "rms"]);
    let mut passed = true;
    for r in &reports {
        passed &= r.passes(config.tol);
        table.push(vec![Cell::Text(r.tag.clone()), Cell::Num(r.max_abs), Cell::Num(r.rms)]);
    }
    Ok(Outcome { table, passed })
}
