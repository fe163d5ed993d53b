//! Figure presets: shape of the grids and location of the minima at the smallest ka.

use abscatter::sweep::{figure_preset, run_sweep, FIGURES};
use abscatter::Statistics;

fn on_lattice(st: Statistics, mu0: f64) -> bool {
    let r = mu0.rem_euclid(2.0);
    match st {
        Statistics::Distinguishable => (mu0.rem_euclid(1.0) - 0.5).abs() < 1e-12,
        Statistics::Boson => (r - 1.0).abs() < 1e-12,
        Statistics::Fermion => r < 1e-12 || (2.0 - r) < 1e-12,
    }
}

#[test]
fn grids_are_well_formed() {
    for name in FIGURES {
        let spec = figure_preset(name).unwrap();
        spec.validate().unwrap();
        assert!(!spec.comments.is_empty());
    }
    for (name, period) in [("fig2", 1.0), ("fig4", 2.0), ("fig6", 2.0)] {
        let g = figure_preset(name).unwrap().mu0_grid;
        assert!(
            g.last().unwrap() - g[0] >= 2.0 * period,
            "{name} spans two periods"
        );
    }
    let fig2 = figure_preset("fig2").unwrap();
    assert_eq!(fig2.ka_grid, vec![0.1, 0.3, 0.5]);
    assert_eq!(fig2.statistics, Statistics::Distinguishable);
    assert_eq!(figure_preset("fig4").unwrap().statistics, Statistics::Boson);
    assert_eq!(
        figure_preset("fig6").unwrap().statistics,
        Statistics::Fermion
    );
    assert!(figure_preset("fig7").is_err());
}

#[test]
fn minima_sit_where_the_captions_say() {
    for name in FIGURES {
        let mut spec = figure_preset(name).unwrap();
        let ka = spec.ka_grid[0];
        spec.ka_grid = vec![ka];
        let recs = run_sweep(&spec).unwrap();
        let s: Vec<f64> = recs.iter().map(|r| r.sigma_over_sigma0).collect();
        let lo = s.iter().cloned().fold(f64::INFINITY, f64::min);
        for r in recs
            .iter()
            .filter(|r| r.sigma_over_sigma0 <= lo * (1.0 + 1e-9))
        {
            assert!(
                on_lattice(spec.statistics, r.mu0),
                "{name}: global minimum at mu0 = {}",
                r.mu0
            );
        }
        for i in 1..s.len().saturating_sub(1) {
            let mu0 = recs[i].mu0;
            let local_min = s[i] < s[i - 1] && s[i] < s[i + 1];
            if local_min {
                assert!(
                    on_lattice(spec.statistics, mu0),
                    "{name}: local minimum at mu0 = {mu0}"
                );
            }
            if on_lattice(spec.statistics, mu0) {
                assert!(local_min, "{name}: no minimum at mu0 = {mu0}");
            }
        }
    }
}

#[test]
fn half_flux_suppresses_low_energy_scattering() {
    let mut spec = figure_preset("fig1").unwrap();
    spec.ka_grid.retain(|&ka| ka <= 1.0);
    let recs = run_sweep(&spec).unwrap();
    let half: Vec<f64> = recs
        .iter()
        .filter(|r| r.mu0 == 0.5)
        .map(|r| r.sigma_over_sigma0)
        .collect();
    let free: Vec<f64> = recs
        .iter()
        .filter(|r| r.mu0 == 0.0)
        .map(|r| r.sigma_over_sigma0)
        .collect();
    for (h, f) in half.iter().zip(&free) {
        assert!(h < f);
    }
    assert!(half[0] / free[0] < 0.05);
}
