use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::Report;
use crate::algebra::{build_rep, verify_algebra, AlgebraInput, AlgebraReport, Backend, FloatMatrix, MatrixJson, Spin};
use crate::{Error, Result};

/// Matrices of a representation in JSON, for checking hand-supplied sets.
///
/// Missing reflections and weights default to those of the built-in
/// representation of the same spin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFixture {
    pub spin: Spin,
    pub gammas: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical_reflection: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartesian_reflection: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<[f64; 2]>>,
}

impl AlgebraFixture {
    /// The built-in matrices of `spin`.
    pub fn standard(spin: Spin) -> Self {
        let input = AlgebraInput::from_rep(&build_rep(spin)).to_float();
        AlgebraFixture {
            spin,
            gammas: input.gammas.iter().map(MatrixJson::from).collect(),
            spherical_reflection: Some(MatrixJson::from(&input.spherical_reflection)),
            cartesian_reflection: Some(MatrixJson::from(&input.cartesian_reflection)),
            weights: Some(input.weights.iter().map(|w| [w.re, w.im]).collect()),
        }
    }

    pub fn to_input(&self) -> Result<AlgebraInput<Complex64>> {
        if self.gammas.len() != 4 {
            return Err(Error::Shape(format!("fixture has {} gamma matrices, expected 4", self.gammas.len())));
        }
        let std = AlgebraInput::from_rep(&build_rep(self.spin)).to_float();
        let g: Vec<FloatMatrix> = self.gammas.iter().map(FloatMatrix::try_from).collect::<Result<_>>()?;
        let n = self.spin.dim();
        if g.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!("spin-{} matrices must be {n} x {n}", self.spin.label())));
        }
        let opt = |m: &Option<MatrixJson>, d: &FloatMatrix| m.as_ref().map_or(Ok(d.clone()), FloatMatrix::try_from);
        Ok(AlgebraInput {
            spin: self.spin,
            gammas: [g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
            spherical_reflection: opt(&self.spherical_reflection, &std.spherical_reflection)?,
            cartesian_reflection: opt(&self.cartesian_reflection, &std.cartesian_reflection)?,
            weights: match &self.weights {
                Some(w) => w.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
                None => std.weights,
            },
        })
    }
}

fn summarize(rep: &mut Report, a: &AlgebraReport) {
    for f in &a.families {
        let status = if f.passed() { "PASS" } else { "FAIL" };
        rep.check(
            f.passed(),
            format!(
                "spin {} {:<20} {status} ({} checked, max residual {:.1e})",
                a.spin.label(),
                f.family,
                f.checked,
                f.max_residual
            ),
        );
        for msg in f.failures.iter().take(5) {
            rep.line(format!("  failed identity {}: {msg}", f.family));
        }
    }
}

/// Runs the identity families on the built-in representations, or on the
/// matrices of `fixture` (JSON text) with the floating backend.
pub fn verify_algebra_cmd(backend: Backend, fixture: Option<&str>, seed: u64) -> Result<Report> {
    let mut rep = Report::new("verify-algebra", seed);
    let reports: Vec<AlgebraReport> = match fixture {
        Some(text) => {
            let fx: AlgebraFixture = serde_json::from_str(text)?;
            rep.set("fixture", true);
            rep.set("backend", Backend::Float);
            vec![verify_algebra(&fx.to_input()?, Backend::Float)]
        }
        None => {
            rep.set("backend", backend);
            [Spin::Half, Spin::One]
                .iter()
                .map(|&s| {
                    let input = AlgebraInput::from_rep(&build_rep(s));
                    match backend {
                        Backend::Exact => verify_algebra(&input, Backend::Exact),
                        Backend::Float => verify_algebra(&input.to_float(), Backend::Float),
                    }
                })
                .collect()
        }
    };
    rep.set("float_tolerance", 1e-12);
    for a in &reports {
        summarize(&mut rep, a);
    }
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|a| a.failing_identities().into_iter().map(|f| format!("spin {} {f}", a.spin.label())))
        .collect();
    if !failing.is_empty() {
        rep.line(format!("failing identities: {}", failing.join(", ")));
    }
    rep.data = serde_json::to_value(&reports)?;
    Ok(rep)
}
