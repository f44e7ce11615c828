use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use cyon_core::algebra::constraints::{quantized_commutator, reduced_angular_momentum};
use cyon_core::algebra::{build_reduced_constraints, dirac_bracket, poisson_bracket, PhasePoly, SymbolicConfig};
use cyon_core::cyon::cyon_report;
use cyon_core::duality::dual_map;
use cyon_core::reduction::convergence_study;
use cyon_core::spectral::{SolverOptions, SpectrumTable};
use cyon_core::{Config, Error, FieldKind};

/// Files produced by one command, as `(relative path, contents)`.
pub type Artifacts = Vec<(String, String)>;

#[derive(Debug, Clone)]
pub enum Job {
    Spectrum { sectors: RangeInclusive<i64>, levels: usize },
    Reduce { schedule: Vec<f64>, band_size: usize },
    Dirac,
    Cyon { lambda_dot: Option<f64> },
    Duality,
}

impl Job {
    pub fn module(&self) -> &'static str {
        match self {
            Job::Spectrum { .. } => "spectral_solver",
            Job::Reduce { .. } => "band_reduction",
            Job::Dirac => "phase_algebra",
            Job::Cyon { .. } => "cyon_observables",
            Job::Duality => "params_fields",
        }
    }

    pub fn run(&self, cfg: &Config) -> Result<Artifacts, Error> {
        match self {
            Job::Spectrum { sectors, levels } => {
                let table = SpectrumTable::compute(cfg, sectors.clone(), *levels, &SolverOptions::default())?;
                Ok(vec![("spectrum.csv".into(), table.to_csv())])
            }
            Job::Reduce { schedule, band_size } => {
                let report = convergence_study(cfg, schedule, *band_size, &SolverOptions::default())?;
                let mut out = vec![
                    ("reduction.csv".to_string(), report.to_csv()),
                    ("reduction_summary.json".to_string(), report.to_json_string()),
                ];
                for (stem, body) in report.plot_series() {
                    out.push((format!("{stem}.dat"), body));
                }
                Ok(out)
            }
            Job::Dirac => Ok(vec![("dirac.txt".into(), dirac_report(cfg)?)]),
            Job::Cyon { lambda_dot } => {
                Ok(vec![("cyon.json".into(), cyon_report(cfg, *lambda_dot)?.to_json_string())])
            }
            Job::Duality => Ok(vec![("dual_config.json".into(), dual_map(cfg)?.to_json_string())]),
        }
    }
}

fn bracket_lines(title: &str, cfg: &SymbolicConfig) -> Result<String, Error> {
    let cs = build_reduced_constraints(cfg)?;
    let mut s = format!("# {title}\n");
    for (i, phi) in cs.constraints.iter().enumerate() {
        s += &format!("phi{} = {}\n", i + 1, phi);
    }
    for (a, row) in cs.bracket_matrix.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            s += &format!("{{phi{}, phi{}}} = {}\n", a + 1, b + 1, v);
        }
    }
    s += &format!("det = {}\n", cs.determinant);
    let vars = [
        ("x1", PhasePoly::x(1)),
        ("x2", PhasePoly::x(2)),
        ("p1", PhasePoly::p(1)),
        ("p2", PhasePoly::p(2)),
    ];
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let (ni, fi) = &vars[i];
            let (nj, fj) = &vars[j];
            let pb = poisson_bracket(fi, fj);
            let db = dirac_bracket(fi, fj, &cs)?;
            s += &format!("{{{ni}, {nj}}} = {pb}\n");
            s += &format!("{{{ni}, {nj}}}_D = {db}\n");
            s += &format!("[{ni}, {nj}] = {}\n", quantized_commutator(&db));
        }
    }
    s += &format!("J_r = {}\n", reduced_angular_momentum(&cs)?);
    Ok(s)
}

/// Constraints, bracket matrix and Dirac brackets: symbolic for the config's
/// family, then exact for the config's own values.
pub fn dirac_report(cfg: &Config) -> Result<String, Error> {
    let family = match cfg.field.kind {
        FieldKind::MagneticHMW => SymbolicConfig::hmw(),
        FieldKind::ElectricAC => SymbolicConfig::ac(),
    };
    let mut s = bracket_lines("symbolic", &family)?;
    s.push('\n');
    s += &bracket_lines("config", &SymbolicConfig::from_config(cfg)?)?;
    Ok(s)
}

pub fn parse_sectors(text: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{text}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad sector bound `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad sector bound `{b}`"))?;
    if a > b {
        return Err(format!("empty sector range {a}..{b}"));
    }
    Ok(a..=b)
}

pub fn parse_schedule(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad schedule entry `{t}`")))
        .collect()
}

pub fn parse_assignment(text: &str) -> Result<(String, String), String> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{text}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// `key=start:stop:count`, linearly spaced and inclusive.
pub fn parse_grid(text: &str) -> Result<(String, Vec<f64>), String> {
    let (k, spec) = parse_assignment(text)?;
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected key=start:stop:count, got `{text}`"));
    }
    let start: f64 = parts[0].parse().map_err(|_| format!("bad grid start `{}`", parts[0]))?;
    let stop: f64 = parts[1].parse().map_err(|_| format!("bad grid stop `{}`", parts[1]))?;
    let count: usize = parts[2].parse().map_err(|_| format!("bad grid count `{}`", parts[2]))?;
    if count == 0 {
        return Err("grid count must be positive".into());
    }
    let values = if count == 1 {
        vec![start]
    } else {
        (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect()
    };
    Ok((k, values))
}

/// Applies overrides in key order, except `alpha`, which goes last because it
/// is derived from the other values.
pub fn apply_overrides(cfg: &mut Config, overrides: &BTreeMap<String, String>) -> Result<(), Error> {
    for (k, v) in overrides.iter().filter(|(k, _)| k.as_str() != "alpha") {
        cfg.apply_override(k, v)?;
    }
    if let Some(v) = overrides.get("alpha") {
        cfg.apply_override("alpha", v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing_is_inclusive() {
        let (k, v) = parse_grid("alpha=0.1:0.3:3").unwrap();
        assert_eq!(k, "alpha");
        assert_eq!(v.len(), 3);
        assert!((v[1] - 0.2).abs() < 1e-15 && v[2] == 0.3);
        assert!(parse_grid("alpha=0.1:0.3").is_err());
    }

    #[test]
    fn sector_and_schedule_parsing() {
        assert_eq!(parse_sectors("-5..5").unwrap(), -5..=5);
        assert!(parse_sectors("3..1").is_err());
        assert_eq!(parse_schedule("0.1, 0.01").unwrap(), vec![0.1, 0.01]);
    }
}
