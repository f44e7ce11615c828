//! Spectra over a range of sectors.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::sector::{solve_sector, Discretization, RadialGrid, SectorProblem, SectorSolution};
use crate::error::Result;
use crate::params::Config;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub ell: i64,
    pub n: u32,
    /// Units of `hbar Omega`.
    pub energy: f64,
    /// Canonical angular momentum, `ell` exactly (units of hbar).
    pub j_canonical: i64,
    /// `<J_k>` in units of hbar.
    pub j_kinetic: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
}

pub const CSV_HEADER: &str = "ell,n,energy_hbarOmega,J_canonical_hbar,J_kinetic_hbar";

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverOptions {
    pub grid: RadialGrid,
    pub discretization: Discretization,
}

pub fn solve_sectors(
    cfg: &Config,
    sectors: RangeInclusive<i64>,
    n_levels: usize,
    opts: &SolverOptions,
) -> Result<Vec<SectorSolution>> {
    let ells: Vec<i64> = sectors.collect();
    ells.par_iter()
        .map(|&ell| {
            let sp = SectorProblem::from_config(cfg, ell)?
                .with_grid(opts.grid)
                .with_discretization(opts.discretization);
            solve_sector(&sp, n_levels)
        })
        .collect()
}

impl SpectrumTable {
    pub fn from_solutions(sols: &[SectorSolution]) -> Self {
        let mut rows: Vec<SpectrumRow> = sols
            .iter()
            .flat_map(|s| {
                (0..s.levels()).map(move |n| SpectrumRow {
                    ell: s.problem.ell,
                    n: n as u32,
                    energy: s.energies[n],
                    j_canonical: s.problem.ell,
                    j_kinetic: s.kinetic_j(n),
                })
            })
            .collect();
        rows.sort_by_key(|r| (r.ell, r.n));
        SpectrumTable { rows }
    }

    pub fn compute(
        cfg: &Config,
        sectors: RangeInclusive<i64>,
        n_levels: usize,
        opts: &SolverOptions,
    ) -> Result<Self> {
        Ok(SpectrumTable::from_solutions(&solve_sectors(cfg, sectors, n_levels, opts)?))
    }

    /// Energies strictly increase with `n` inside every sector.
    pub fn is_ordered(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[0].ell != w[1].ell || w[1].energy > w[0].energy)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 1));
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{:.16e},{},{:.16e}",
                r.ell, r.n, r.energy, r.j_canonical, r.j_kinetic
            )
            .unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::natural_hmw;

    #[test]
    fn csv_shape_and_precision() {
        let cfg = natural_hmw(0.3, 2.0, 1.0, 1.0);
        let t = SpectrumTable::compute(&cfg, -1..=1, 2, &SolverOptions::default()).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 7);
        let e: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(e, t.rows[0].energy);
        assert!(t.is_ordered());
    }
}
