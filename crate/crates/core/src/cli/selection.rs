use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{Report, Table};
use crate::algebra::Spin;
use crate::matelem::{doublet_density_relation, eigenstate, halfsphere_consistency, matrix_element, parity_factor, position_decomposition, Adjoint, Probe};
use crate::model::{minimal_j, Background, GridConfig, Profile};
use crate::quadrature::RadialGrid;
use crate::symmetry::{build_discrete_operator, eigen_constraints};
use crate::wigner::{HalfInt, SphereGrid};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionKind {
    /// Zero charge: the half-sphere identity must hold.
    Neutral,
    /// Abelian monopole: no selection rule is expected.
    Abelian,
    /// Isotopic doublet: the mean position must vanish.
    Doublet,
}

fn default_spin() -> Spin {
    Spin::Half
}
fn default_j_max() -> HalfInt {
    HalfInt(5)
}
fn default_probes() -> Vec<Probe> {
    vec![Probe::Scalar, Probe::Pseudoscalar, Probe::Z]
}
fn default_tolerance() -> f64 {
    1e-8
}
fn default_violation() -> f64 {
    1e-3
}

/// JSON configuration of a selection-rule sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionConfig {
    pub kind: SelectionKind,
    #[serde(default = "default_spin")]
    pub spin: Spin,
    /// Abelian charge; required for `abelian`.
    #[serde(default)]
    pub lambda: Option<HalfInt>,
    #[serde(default = "default_j_max")]
    pub j_max: HalfInt,
    /// Common projection of bra and ket; the smallest allowed value when absent.
    #[serde(default)]
    pub m: Option<HalfInt>,
    #[serde(default = "default_probes")]
    pub probes: Vec<Probe>,
    #[serde(default)]
    pub adjoint: Adjoint,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub grid: GridConfig,
    /// Largest residual accepted where an identity must hold.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Smallest residual counted as a violation.
    #[serde(default = "default_violation")]
    pub violation: f64,
}

impl SelectionConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: SelectionConfig = serde_json::from_str(s)?;
        if c.kind == SelectionKind::Abelian && c.lambda.is_none_or(|l| l.0 == 0) {
            return Err(Error::Config("an abelian sweep needs a nonzero lambda".into()));
        }
        if c.kind != SelectionKind::Abelian && c.lambda.is_some() {
            return Err(Error::Config("lambda applies to abelian sweeps only".into()));
        }
        Ok(c)
    }

    fn background(&self) -> Background {
        match self.kind {
            SelectionKind::Neutral => Background::Abelian { lambda: HalfInt(0) },
            SelectionKind::Abelian => Background::Abelian {
                lambda: self.lambda.unwrap_or_default(),
            },
            SelectionKind::Doublet => Background::Doublet { profile: Profile::default() },
        }
    }

    /// Angular momenta of the sweep that carry reflection eigenstates.
    fn js(&self) -> Result<Vec<HalfInt>> {
        let bg = self.background();
        let start = match (&bg, self.spin) {
            (Background::Abelian { lambda }, s) => minimal_j(s, *lambda),
            (Background::Doublet { .. }, Spin::Half) => HalfInt(0),
            (Background::Doublet { .. }, Spin::One) => HalfInt(1),
        };
        let mut out = vec![];
        let mut j = start;
        while j <= self.j_max {
            let m = self.m.unwrap_or(HalfInt(start.0 % 2));
            if m.0.abs() <= j.0 {
                let cfg = crate::model::ModelConfig {
                    spin: self.spin,
                    background: bg.clone(),
                    mass: 1.0,
                    energy: 0.5,
                    j,
                    m,
                    grid: self.grid.clone(),
                    seed: 0,
                };
                cfg.validate()?;
                let n = build_discrete_operator(self.spin, &bg);
                if !eigen_constraints(&n, &cfg.ansatz()?)?.is_empty() {
                    out.push(j);
                }
            }
            j = j + HalfInt(2);
        }
        Ok(out)
    }
}

fn c(z: Complex64) -> String {
    format!("{:.6e}{:+.6e}i", z.re, z.im)
}

pub fn selection_rules_cmd(cfg: &SelectionConfig, seed: u64) -> Result<Report> {
    let seed = cfg.seed.unwrap_or(seed);
    let mut rep = Report::new("selection-rules", seed);
    rep.set("kind", cfg.kind);
    rep.set("spin", cfg.spin);
    rep.set("lambda", cfg.lambda);
    rep.set("j_max", cfg.j_max);
    rep.set("adjoint", cfg.adjoint);
    rep.set("grid", &cfg.grid);
    rep.set("tolerance", cfg.tolerance);
    rep.set("violation", cfg.violation);
    let radial = RadialGrid::trapezoid(cfg.grid.r_max, cfg.grid.n_r)?;
    let js = cfg.js()?;
    if js.is_empty() {
        return Err(Error::Config("no angular momentum in range carries reflection eigenstates".into()));
    }
    let jtop = *js.last().expect("nonempty");
    let sphere = SphereGrid::for_j(jtop + HalfInt(2)).refined();
    rep.set("sphere_nodes", sphere.len());
    let bg = cfg.background();
    let m = cfg.m.unwrap_or(HalfInt(js[0].0 % 2));
    let state = |j: HalfInt, delta: i64| {
        eigenstate(
            cfg.spin,
            &bg,
            j,
            m,
            delta,
            seed.wrapping_add((j.0 as u64) * 10 + (delta + 1) as u64),
            &radial,
            &sphere,
        )
    };
    let mut t = Table::new(&["configuration", "factor", "integral", "upper half", "residual", "verdict"]);
    match cfg.kind {
        SelectionKind::Neutral | SelectionKind::Abelian => {
            let mut worst: f64 = 0.0;
            let mut violations = 0;
            let mut count = 0;
            let mut forbidden_ok = true;
            for &probe in &cfg.probes {
                let omega = probe.omega(cfg.spin)?;
                for &j in &js {
                    for &jp in &js {
                        for delta in [1, -1] {
                            for dp in [1, -1] {
                                let factor = parity_factor(omega, delta, dp, j, jp)?;
                                let (bra, ket) = (state(j, delta)?, state(jp, dp)?);
                                let hs = halfsphere_consistency(&bra, probe, &ket, cfg.spin, cfg.adjoint, factor, &radial, &sphere)?;
                                let full = Complex64::new(hs.full[0], hs.full[1]);
                                worst = worst.max(hs.residual);
                                count += 1;
                                let verdict = match cfg.kind {
                                    SelectionKind::Neutral if factor == 0.0 => {
                                        let ok = full.norm() <= cfg.tolerance;
                                        forbidden_ok &= ok;
                                        if ok {
                                            "forbidden, vanishes"
                                        } else {
                                            "forbidden, nonzero"
                                        }
                                    }
                                    SelectionKind::Neutral => {
                                        if hs.residual <= cfg.tolerance {
                                            "allowed, identity holds"
                                        } else {
                                            "allowed, identity fails"
                                        }
                                    }
                                    _ => {
                                        if hs.residual > cfg.violation {
                                            violations += 1;
                                            "no selection rule"
                                        } else {
                                            "identity holds"
                                        }
                                    }
                                };
                                t.push(vec![
                                    format!("omega={omega:+} delta={delta:+} delta'={dp:+} j={j} j'={jp} probe={probe}"),
                                    format!("{factor}"),
                                    c(full),
                                    c(Complex64::new(hs.upper[0], hs.upper[1])),
                                    format!("{:.3e}", hs.residual),
                                    verdict.into(),
                                ]);
                            }
                        }
                    }
                }
            }
            match cfg.kind {
                SelectionKind::Neutral => {
                    rep.check(
                        worst <= cfg.tolerance,
                        format!("half-sphere identity: max residual {worst:.2e} over {count} rows"),
                    );
                    rep.check(
                        forbidden_ok,
                        format!("integrals with vanishing factor are zero: {}", if forbidden_ok { "YES" } else { "NO" }),
                    );
                }
                _ => {
                    rep.check(
                        worst > cfg.violation,
                        format!("half-sphere identity: max residual {worst:.2e}, {violations} of {count} rows violate it: no selection rule"),
                    );
                    // a generic state has a nonzero mean position
                    let f = state(jtop, 1)?;
                    let z = matrix_element(&f, Probe::Z, &f, cfg.spin, Adjoint::Dagger, &radial, &sphere)?;
                    rep.check(z.norm() > cfg.violation, format!("<z> of a seeded eigenstate at j = {jtop}: {}", c(z)));
                    t.push(vec![
                        format!("position <z> j={jtop} delta=+1"),
                        String::new(),
                        c(z),
                        String::new(),
                        String::new(),
                        "nonzero".into(),
                    ]);
                }
            }
        }
        SelectionKind::Doublet => {
            let mut worst_pos: f64 = 0.0;
            let mut worst_split: f64 = 0.0;
            let mut worst_density: f64 = 0.0;
            for &j in &js {
                for delta in [1, -1] {
                    let f = state(j, delta)?;
                    for probe in [Probe::X, Probe::Y, Probe::Z] {
                        for adj in [Adjoint::Dagger, Adjoint::Bar] {
                            let v = matrix_element(&f, probe, &f, cfg.spin, adj, &radial, &sphere)?;
                            worst_pos = worst_pos.max(v.norm());
                            let verdict = if v.norm() <= cfg.tolerance { "vanishes" } else { "nonzero" };
                            t.push(vec![
                                format!("<{probe}> j={j} delta={delta:+} adjoint={adj:?}"),
                                String::new(),
                                c(v),
                                String::new(),
                                format!("{:.3e}", v.norm()),
                                verdict.into(),
                            ]);
                        }
                    }
                    let d = position_decomposition(&f, cfg.spin, cfg.adjoint, &radial, &sphere)?;
                    worst_split = worst_split.max(d.residual);
                    t.push(vec![
                        format!("decomposition j={j} delta={delta:+}"),
                        String::new(),
                        format!("{:.3e}", d.magnitude),
                        String::new(),
                        format!("{:.3e}", d.residual),
                        if d.residual <= 1e-10 { "holds".into() } else { "fails".into() },
                    ]);
                    let rel = doublet_density_relation(&f, cfg.spin, cfg.adjoint, &sphere, &[0.6, 1.3, 2.4])?;
                    worst_density = worst_density.max(rel.residual);
                }
            }
            rep.check(worst_pos <= cfg.tolerance, format!("doublet <r> = 0: max |<x_k>| {worst_pos:.2e}"));
            rep.check(worst_split <= 1e-10, format!("isotopic decomposition of <r>: max residual {worst_split:.2e}"));
            rep.check(
                worst_density <= 1e-10,
                format!("pointwise density relation under reflection: max residual {worst_density:.2e}"),
            );
        }
    }
    rep.table = Some(t);
    Ok(rep)
}
