use serde_json::json;

use super::report::Report;
use crate::algebra::Spin;
use crate::model::{Background, ModelConfig, Profile};
use crate::separation::golden::{branch_delta, corrections};
use crate::separation::{golden_system, reduce, separate_exact, systems_equal, systems_equal_on_support, GoldenName, GoldenParams, ReduceOptions, Variant};
use crate::symmetry::{build_discrete_operator, compatibility, eigen_constraints};
use crate::wigner::HalfInt;
use crate::{Error, Result};

/// Parses a monopole charge; anything but an integer or half-integer breaks
/// charge quantization.
pub fn parse_lambda(s: &str) -> Result<HalfInt> {
    HalfInt::parse(s).map_err(|_| Error::Quantization(format!("lambda = {s}: 2 lambda must be an integer")))
}

pub fn parse_j(s: &str) -> Result<HalfInt> {
    HalfInt::parse(s).map_err(|_| Error::Quantization(format!("j = {s} is not an integer or half-integer")))
}

#[derive(Clone, Debug)]
pub struct SeparateArgs {
    pub spin: Spin,
    pub lambda: Option<HalfInt>,
    pub j: HalfInt,
    pub doublet: bool,
    pub golden: Option<GoldenName>,
    pub variant: Variant,
    /// Eigenvalue sign for the reduced doublet system.
    pub delta: i64,
}

/// Model of the separation run; `m = j` throughout since the radial system
/// does not depend on `m`.
pub fn model_for(spin: Spin, lambda: Option<HalfInt>, doublet: bool, j: HalfInt) -> Result<ModelConfig> {
    let background = if doublet {
        if lambda.is_some() {
            return Err(Error::Config("--lambda does not apply to the doublet".into()));
        }
        Background::Doublet { profile: Profile::default() }
    } else {
        Background::Abelian {
            lambda: lambda.ok_or_else(|| Error::Config("--lambda is required without --doublet".into()))?,
        }
    };
    let cfg = ModelConfig {
        spin,
        background,
        mass: 1.0,
        energy: 0.5,
        j,
        m: j,
        grid: Default::default(),
        seed: 0,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn golden_params(name: GoldenName, a: &SeparateArgs) -> Result<GoldenParams> {
    match name {
        GoldenName::Dirac | GoldenName::DiracMinimal | GoldenName::Vector => Ok(GoldenParams::abelian(
            a.lambda.ok_or_else(|| Error::Config(format!("{name} needs --lambda")))?,
            a.j,
        )),
        GoldenName::VectorDoublet => Ok(GoldenParams::doublet(a.j)),
        GoldenName::ReducedDoublet => Ok(GoldenParams::reduced(a.j, a.delta)),
    }
}

pub fn separate_cmd(a: &SeparateArgs, seed: u64) -> Result<Report> {
    let cfg = model_for(a.spin, a.lambda, a.doublet, a.j)?;
    let op = cfg.operator()?;
    let ans = cfg.ansatz()?;
    let opts = ReduceOptions::default();
    let mut rep = Report::new("separate", seed);
    rep.set("spin", a.spin);
    rep.set("background", &cfg.background);
    rep.set("j", a.j);
    rep.set("angular_tolerance", opts.angular_tol);
    rep.set("snap_tolerance", opts.snap_tol);
    rep.set("max_denominator", opts.max_den);
    let red = reduce(&op, &ans, &opts)?;
    let grid_note = opts.grid.as_ref().map_or_else(|| "chosen from j".to_string(), |g| format!("{} nodes", g.len()));
    rep.set("sphere_grid", grid_note);
    rep.check(
        red.angular_residual <= opts.angular_tol,
        format!(
            "angular residual {:.1e}, snap error {:.1e}, radial check {:.1e}",
            red.angular_residual, red.snap_error, red.radial_residual
        ),
    );
    let exact = separate_exact(&op.data, &ans)?;
    let cross = systems_equal(&red.system, &exact, false);
    rep.check(
        cross.equal,
        format!("numerical and exact separation agree: {}", if cross.equal { "YES" } else { "NO" }),
    );
    rep.line(format!("recovered system: {}", red.system.name));
    let mut data = json!({ "reduction": red, "system": red.system.to_json() });

    if let Some(name) = a.golden {
        let g = golden_system(name, &golden_params(name, a)?, a.variant)?;
        let candidate = if name == GoldenName::ReducedDoublet {
            let n = build_discrete_operator(a.spin, &cfg.background);
            let branch = eigen_constraints(&n, &ans)?
                .into_iter()
                .find(|c| c.delta == branch_delta(a.delta))
                .ok_or_else(|| Error::Certification(format!("no eigen-relations with delta = {}", a.delta)))?;
            let c = compatibility(&branch, &red.system)?;
            c.reduced
                .ok_or_else(|| Error::Certification("eigen-relations are incompatible with the system".into()))?
        } else {
            red.system.clone()
        };
        let eq = systems_equal_on_support(&candidate, &g);
        let corrected = a.variant == Variant::Corrected && corrections().iter().any(|c| c.system == name);
        let verdict = match (eq.equal, corrected) {
            (true, true) => "MATCH (with documented corrections)".to_string(),
            (true, false) => "MATCH".to_string(),
            (false, _) => "MISMATCH".to_string(),
        };
        rep.check(eq.equal, format!("golden {name} ({:?}): {verdict}", a.variant));
        for d in eq.diffs.iter().take(12) {
            rep.line(format!("  row {}: {}", d.row, d.detail));
        }
        if corrected {
            for c in corrections().iter().filter(|c| c.system == name) {
                rep.line(format!("  correction {} row {}: printed {} -> {}", c.system, c.row, c.printed, c.corrected));
            }
        }
        data["golden"] = json!({ "name": name, "variant": a.variant, "verdict": verdict, "comparison": eq, "system": g.to_json() });
    }
    rep.data = data;
    Ok(rep)
}
