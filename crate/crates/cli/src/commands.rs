//! `dist`, `finite-cdf` and `mc`.

use crate::config::TGrid;
use crate::error::CliError;
use std::fmt::Write;
use swl_core::finite_kernel::{finite_cdf_with_basis, SkewBasis};
use swl_core::limit_dists::{limit_cdf, Ensemble, Family, LimitFamily};
use swl_core::mc::{run_trials, PhaseLaws};
use swl_core::quaternion::SpikedParams;

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn dist(family: Family, grid: TGrid, nodes: usize) -> Result<String, CliError> {
    let lf = LimitFamily::new(family).with_nodes(nodes);
    let mut out = String::from("T,F\n");
    for t in grid.points() {
        let f = limit_cdf(&lf, t).map_err(|e| {
            CliError::from_core(e, &format!("{family} with m = {nodes} at T = {t}"))
        })?;
        writeln!(out, "{},{}", num(t), num(f)).expect("write to String");
    }
    Ok(out)
}

pub fn finite_cdf(params: SpikedParams, grid: TGrid, nodes: usize) -> Result<String, CliError> {
    let context = format!(
        "finite_cdf N = {}, M = {}, a = {}, m = {nodes}",
        params.n(),
        params.m(),
        params.a()
    );
    let basis = SkewBasis::new(params).map_err(|e| CliError::from_core(e, &context))?;
    let mut out = String::from("T,P\n");
    for t in grid.points() {
        let p = finite_cdf_with_basis(&basis, t, nodes)
            .map_err(|e| CliError::from_core(e, &format!("{context} at T = {t}")))?;
        writeln!(out, "{},{}", num(t), num(p)).expect("write to String");
    }
    Ok(out)
}

pub fn mc(
    params: SpikedParams,
    ensemble: Ensemble,
    trials: usize,
    seed: u64,
) -> Result<String, CliError> {
    let batch =
        run_trials(&params, ensemble, trials, seed).map_err(|e| CliError::from_core(e, "mc"))?;
    let laws = PhaseLaws::new().map_err(|e| CliError::from_core(e, "tabulating limit laws"))?;
    let gaussian = LimitFamily::new(Family::Gaussian);
    let ks_gse = batch.ks(|x| laws.gse.eval(x));
    let ks_goe = batch.ks(|x| laws.goe.eval(x));
    let ks_gaussian = batch.ks(|x| limit_cdf(&gaussian, x).unwrap_or(f64::NAN));
    let mut out = String::from("trial,raw_max,rescaled\n");
    for (k, (raw, r)) in batch.raw_maxima.iter().zip(&batch.rescaled).enumerate() {
        writeln!(out, "{k},{},{}", num(*raw), num(*r)).expect("write to String");
    }
    writeln!(
        out,
        "# ks_gse={} ks_goe={} ks_gaussian={} regime={}",
        num(ks_gse),
        num(ks_goe),
        num(ks_gaussian),
        batch.map.regime
    )
    .expect("write to String");
    Ok(out)
}
