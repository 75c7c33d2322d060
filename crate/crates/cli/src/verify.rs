//! The registered identity suite and the grid sweep that runs it.

use std::fmt;

use hallint_core::identities::{
    self, a_symmetry_residual, companion_residual, default_step, i_diagonal_residual,
    i_symmetry_residual, legendre_residual, operator_residual_d1, operator_residual_kernel,
    recip_residual, route_residual, snr_complement_residual, sqrt_kernel, vanishing_residual,
    wronskian_residual, CheckOptions, IdentityReport,
};
use rayon::prelude::*;

use crate::error::{exit, CliError};
use crate::report::{Format, Params, ReportRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    ASymmetry,
    ISymmetry,
    IDiagonal,
    RouteEquivalence,
    Reciprocity,
    Vanishing,
    Companion,
    Wronskian,
    Legendre,
    OperatorD1,
    OperatorKernel,
    SnrComplement,
}

/// Which grid points an identity is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Domain {
    /// `(p, q)` over the full grid square.
    ModulusSquare,
    /// `(alpha, beta)` with `beta < alpha`.
    OrderedPairs,
    /// `(alpha, beta)` over the full grid square.
    AllPairs,
    Alpha,
    Lambda,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::ASymmetry,
        Identity::ISymmetry,
        Identity::IDiagonal,
        Identity::RouteEquivalence,
        Identity::Reciprocity,
        Identity::Vanishing,
        Identity::Companion,
        Identity::Wronskian,
        Identity::Legendre,
        Identity::OperatorD1,
        Identity::OperatorKernel,
        Identity::SnrComplement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ASymmetry => "A-symmetry",
            Identity::ISymmetry => "I-symmetry",
            Identity::IDiagonal => "I-diagonal",
            Identity::RouteEquivalence => "route-equivalence",
            Identity::Reciprocity => "reciprocity",
            Identity::Vanishing => "vanishing",
            Identity::Companion => "companion",
            Identity::Wronskian => "wronskian",
            Identity::Legendre => "legendre",
            Identity::OperatorD1 => "operator-d1",
            Identity::OperatorKernel => "operator-kernel",
            Identity::SnrComplement => "snr-complement",
        }
    }

    pub fn from_name(name: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(name))
    }

    /// Tolerance used when `--tol` is not given.
    pub fn default_tol(self) -> f64 {
        match self {
            Identity::IDiagonal => 1e-9,
            Identity::RouteEquivalence => 1e-7,
            Identity::Wronskian => 1e-10,
            Identity::Legendre => 1e-12,
            Identity::OperatorD1 | Identity::OperatorKernel => identities::OPERATOR_TOL,
            _ => identities::QUADRATURE_TOL,
        }
    }

    fn domain(self) -> Domain {
        match self {
            Identity::ASymmetry => Domain::ModulusSquare,
            Identity::ISymmetry
            | Identity::RouteEquivalence
            | Identity::Reciprocity
            | Identity::SnrComplement => Domain::OrderedPairs,
            Identity::OperatorD1 | Identity::OperatorKernel => Domain::AllPairs,
            Identity::IDiagonal | Identity::Vanishing | Identity::Companion => Domain::Alpha,
            Identity::Wronskian | Identity::Legendre => Domain::Lambda,
        }
    }

    pub fn grid_points(self, grid: &[f64]) -> Vec<Params> {
        let square = |x: &str, y: &str, keep: &dyn Fn(f64, f64) -> bool| {
            grid.iter()
                .flat_map(|&a| grid.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| keep(a, b))
                .map(|(a, b)| Params::new(&[(x, a), (y, b)]))
                .collect()
        };
        match self.domain() {
            Domain::ModulusSquare => square("p", "q", &|_, _| true),
            Domain::OrderedPairs => square("alpha", "beta", &|a, b| b < a),
            Domain::AllPairs => square("alpha", "beta", &|_, _| true),
            Domain::Alpha => grid.iter().map(|&a| Params::new(&[("alpha", a)])).collect(),
            Domain::Lambda => grid.iter().map(|&l| Params::new(&[("lambda", l)])).collect(),
        }
    }

    pub fn evaluate(self, params: &Params, opts: CheckOptions) -> Result<IdentityReport, CliError> {
        let get = |name: &str| {
            params
                .get(name)
                .ok_or_else(|| CliError::usage(format!("{} needs parameter `{name}`", self.name())))
        };
        let report = match self {
            Identity::ASymmetry => a_symmetry_residual(get("p")?, get("q")?, opts)?,
            Identity::ISymmetry => i_symmetry_residual(get("alpha")?, get("beta")?, opts)?,
            Identity::IDiagonal => i_diagonal_residual(get("alpha")?, opts)?,
            Identity::RouteEquivalence => route_residual(get("alpha")?, get("beta")?, opts)?,
            Identity::Reciprocity => recip_residual(get("alpha")?, get("beta")?, opts)?,
            Identity::Vanishing => vanishing_residual(get("alpha")?, opts)?,
            Identity::Companion => companion_residual(get("alpha")?, opts)?,
            Identity::Wronskian => wronskian_residual(get("lambda")?, opts)?,
            Identity::Legendre => legendre_residual(get("lambda")?, opts)?,
            Identity::OperatorD1 => {
                let beta = get("beta")?;
                operator_residual_d1(get("alpha")?, beta, default_step(beta), opts)?
            }
            Identity::OperatorKernel => {
                let beta = get("beta")?;
                operator_residual_kernel(get("alpha")?, beta, sqrt_kernel, default_step(beta), opts)?
            }
            Identity::SnrComplement => snr_complement_residual(get("alpha")?, get("beta")?, opts)?,
        };
        Ok(report)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The default grid `{0.1, 0.2, ..., 0.9}`.
pub fn default_grid() -> Vec<f64> {
    (1..10).map(|i| f64::from(i) / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub grid_points: Vec<f64>,
    /// Overrides every identity's default tolerance when set.
    pub tolerance: Option<f64>,
    pub identities: Vec<Identity>,
    pub output_format: Format,
}

impl VerifyConfig {
    /// Resolves identity names and checks the grid and tolerance.
    pub fn new(
        grid_points: Vec<f64>,
        tolerance: Option<f64>,
        identity_names: &[String],
        output_format: Format,
    ) -> Result<Self, CliError> {
        let mut identities = Vec::new();
        for name in identity_names {
            let id = Identity::from_name(name).ok_or_else(|| {
                let known: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
                CliError::usage(format!("unknown identity `{name}` (known: {})", known.join(", ")))
            })?;
            if !identities.contains(&id) {
                identities.push(id);
            }
        }
        if identities.is_empty() {
            identities = Identity::ALL.to_vec();
        }
        let config = VerifyConfig {
            grid_points,
            tolerance,
            identities,
            output_format,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_points.is_empty() {
            return Err(CliError::usage("grid is empty"));
        }
        if let Some(bad) = self.grid_points.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
            return Err(CliError::usage(format!("grid value {bad} is outside (0, 1)")));
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::usage(format!("tolerance {tol} must be finite and > 0")));
            }
        }
        Ok(())
    }
}

/// A grid point whose evaluation raised an error instead of a report.
#[derive(Debug)]
pub struct FailedPoint {
    pub identity: Identity,
    pub params: Params,
    pub error: CliError,
}

#[derive(Debug, Default)]
pub struct VerifyOutcome {
    pub rows: Vec<ReportRow>,
    pub errors: Vec<FailedPoint>,
}

impl VerifyOutcome {
    /// 0 if every report passed, 1 if some failed; evaluation errors take
    /// precedence with their own codes (accuracy 3 over domain 2).
    pub fn exit_code(&self) -> i32 {
        if let Some(code) = self.errors.iter().map(|e| e.error.exit_code()).max() {
            return code;
        }
        if self.rows.iter().all(|r| r.passed) {
            exit::OK
        } else {
            exit::IDENTITY_FAILURE
        }
    }

    pub fn summary(&self) -> String {
        let failed = self.rows.iter().filter(|r| !r.passed).count();
        let worst = self
            .rows
            .iter()
            .max_by(|a, b| a.abs_residual.total_cmp(&b.abs_residual));
        let mut line = format!(
            "verify: {} reports, {} failed, {} errors",
            self.rows.len(),
            failed,
            self.errors.len()
        );
        if let Some(w) = worst {
            line.push_str(&format!(
                "; max abs residual {:.3e} ({} at {})",
                w.abs_residual, w.identity, w.params
            ));
        }
        line
    }
}

/// Evaluates every identity on its grid points, in parallel, and returns
/// the rows sorted by identity name and then parameter values.
pub fn run(config: &VerifyConfig, max_evals: usize) -> VerifyOutcome {
    let tasks: Vec<(Identity, Params)> = config
        .identities
        .iter()
        .flat_map(|&id| id.grid_points(&config.grid_points).into_iter().map(move |p| (id, p)))
        .collect();
    let results: Vec<_> = tasks
        .into_par_iter()
        .map(|(id, params)| {
            let opts = CheckOptions::from(config.tolerance.unwrap_or(id.default_tol())).with_max_evals(max_evals);
            let result = id.evaluate(&params, opts);
            (id, params, result)
        })
        .collect();
    let mut outcome = VerifyOutcome::default();
    for (identity, params, result) in results {
        match result {
            Ok(report) => outcome.rows.push(ReportRow::from_report(params, &report)),
            Err(error) => outcome.errors.push(FailedPoint {
                identity,
                params,
                error,
            }),
        }
    }
    outcome.rows.sort_by(ReportRow::cmp_key);
    outcome
        .errors
        .sort_by(|a, b| a.identity.name().cmp(b.identity.name()).then_with(|| a.params.cmp_lex(&b.params)));
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_name(id.name()), Some(id));
        }
        assert_eq!(Identity::from_name("a-SYMMETRY"), Some(Identity::ASymmetry));
        assert_eq!(Identity::from_name("nope"), None);
    }

    #[test]
    fn grid_domains() {
        let grid = [0.2, 0.5, 0.8];
        assert_eq!(Identity::ASymmetry.grid_points(&grid).len(), 9);
        let ordered = Identity::ISymmetry.grid_points(&grid);
        assert_eq!(ordered.len(), 3);
        assert!(ordered.iter().all(|p| p.get("beta").unwrap() < p.get("alpha").unwrap()));
        assert_eq!(Identity::OperatorD1.grid_points(&grid).len(), 9);
        assert_eq!(Identity::Wronskian.grid_points(&grid).len(), 3);
    }

    #[test]
    fn config_validation() {
        let names = vec!["bogus".to_string()];
        assert!(VerifyConfig::new(default_grid(), None, &names, Format::Csv).is_err());
        assert!(VerifyConfig::new(vec![0.0, 0.5], None, &[], Format::Csv).is_err());
        assert!(VerifyConfig::new(vec![0.5], Some(-1.0), &[], Format::Csv).is_err());
        let all = VerifyConfig::new(vec![0.5], None, &[], Format::Csv).unwrap();
        assert_eq!(all.identities.len(), Identity::ALL.len());
    }

    #[test]
    fn small_sweep_passes_and_is_sorted() {
        let names = vec!["wronskian".to_string(), "legendre".to_string()];
        let config = VerifyConfig::new(vec![0.7, 0.3], None, &names, Format::Csv).unwrap();
        let outcome = run(&config, hallint_core::quadrature::DEFAULT_MAX_EVALS);
        assert_eq!(outcome.exit_code(), exit::OK);
        let keys: Vec<String> = outcome.rows.iter().map(|r| format!("{} {}", r.identity, r.params)).collect();
        assert_eq!(
            keys,
            ["legendre lambda=0.3", "legendre lambda=0.7", "wronskian lambda=0.3", "wronskian lambda=0.7"]
        );
    }
}
