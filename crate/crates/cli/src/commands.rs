//! Command implementations. Each returns a [`CommandOutput`] whose `ok` flag
//! distinguishes "ran fine but found a failure" (exit 1) from a clean pass
//! (exit 0); malformed input surfaces as an `Err` (exit 2).

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use sform_core::group::MetacyclicPresentation;
use sform_core::harness::run_harness;
use sform_core::lens::{extent_bound_scan, extent_upper_bound, optimize_extent, LensSpace,
    OptimizerParams, PI};
use sform_core::rep::{verify_pi1_invariance, LinearSpaceForm, SamplerParams};
use sform_core::torus::WeightMatrix;

use crate::config::RunConfig;
use crate::report::Report;

pub struct CommandOutput {
    pub report: Report,
    /// CSV rendering, for the commands that have a tabular form.
    pub csv: Option<String>,
    pub ok: bool,
}

impl CommandOutput {
    fn passing(report: Report) -> CommandOutput {
        CommandOutput { report, csv: None, ok: true }
    }
}

/// Parse `"1,1,-2;1,-2,1"` into rows of three integers.
pub fn parse_weights(text: &str) -> Result<WeightMatrix> {
    let rows: Vec<[i64; 3]> = text
        .split(';')
        .map(|row| {
            let entries: Vec<i64> = row
                .split(',')
                .map(|e| e.trim().parse::<i64>().map_err(|_| anyhow!("bad weight {e:?}")))
                .collect::<Result<_>>()?;
            let [a, b, c] = entries[..] else {
                bail!("each weight row needs exactly 3 entries, got {row:?}");
            };
            Ok([a, b, c])
        })
        .collect::<Result<_>>()?;
    WeightMatrix::new(rows).map_err(|e| anyhow!("{e}"))
}

/// Parse a small square integer matrix `"1,0;0,1"`.
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| e.trim().parse::<i64>().map_err(|_| anyhow!("bad entry {e:?}")))
                .collect()
        })
        .collect()
}

fn sampler(config: &RunConfig) -> SamplerParams {
    SamplerParams { restarts: config.restarts, iters: config.max_iters, seed: config.seed }
}

fn optimizer(config: &RunConfig) -> OptimizerParams {
    OptimizerParams {
        restarts: config.restarts,
        max_iters: config.max_iters,
        seed: config.seed,
        ..OptimizerParams::default()
    }
}

pub fn groups_check(config: &RunConfig, m: u64, n: u64, r: u64) -> Result<CommandOutput> {
    let group = MetacyclicPresentation::validate(m, n, r).map_err(|e| anyhow!("{e}"))?;
    let report = group.report().map_err(|e| anyhow!("{e}"))?;
    let payload = serde_json::to_value(&report)?;
    Ok(CommandOutput::passing(Report::new("groups check", config, payload)))
}

pub fn groups_enumerate(config: &RunConfig, max_order: u64) -> Result<CommandOutput> {
    if max_order == 0 || max_order > 100_000 {
        bail!("--max-order must be in 1..=100000");
    }
    let mut rows = Vec::new();
    for m in 1..=max_order {
        for n in 1..=(max_order / m) {
            for r in 0..m.max(1) {
                let Ok(group) = MetacyclicPresentation::validate(m, n, r) else { continue };
                let verdict = group.is_spherical_5_space_group();
                rows.push(json!({
                    "m": m, "n": n, "r": r,
                    "order": group.order(),
                    "cyclic": group.is_cyclic(),
                    "spherical": verdict,
                }));
            }
        }
    }
    let payload = json!({ "max_order": max_order, "presentations": rows });
    Ok(CommandOutput::passing(Report::new("groups enumerate", config, payload)))
}

pub fn groups_harness(config: &RunConfig, max_order: u64) -> Result<CommandOutput> {
    if max_order == 0 || max_order > 5000 {
        bail!("--max-order must be in 1..=5000");
    }
    let harness = run_harness(max_order);
    let ok = harness.ok();
    let payload = serde_json::to_value(&harness)?;
    let report = Report::new("groups harness", config, payload).with_pass(ok);
    Ok(CommandOutput { report, csv: None, ok })
}

pub fn extent_bound(config: &RunConfig, n: u64, q: usize) -> Result<CommandOutput> {
    if n < 2 || q < 2 {
        bail!("extent bound needs --n >= 2 and --q >= 2");
    }
    let bound = extent_upper_bound(n, q);
    let payload = json!({
        "n": n, "q": q,
        "bound": bound.radians,
        "threshold": PI / 3.0,
        "margin": PI / 3.0 - bound.radians,
        "verdict": bound.radians < PI / 3.0,
    });
    Ok(CommandOutput::passing(Report::new("extent bound", config, payload)))
}

pub fn extent_optimize(
    config: &RunConfig,
    n: u64,
    k: i64,
    l: i64,
    q: usize,
) -> Result<CommandOutput> {
    let space = LensSpace::new(n, k, l).map_err(|e| anyhow!("{e}"))?;
    let estimate = optimize_extent(&space, q, optimizer(config)).map_err(|e| anyhow!("{e}"))?;
    let payload = json!({
        "space": { "n": space.n, "k": space.k, "l": space.l },
        "estimate": estimate,
    });
    Ok(CommandOutput::passing(Report::new("extent optimize", config, payload)))
}

pub fn extent_scan(config: &RunConfig, q: usize, from: u64, to: u64) -> Result<CommandOutput> {
    if q < 2 || from < 2 || to < from {
        bail!("extent scan needs --q >= 2 and 2 <= --from <= --to");
    }
    let rows = extent_bound_scan(q, from, to);
    let all_true = rows.iter().all(|r| r.verdict);
    let mut csv = String::from("n,bound,verdict,margin\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{:.12},{},{:.12e}\n",
            row.n, row.bound, row.verdict, row.margin
        ));
    }
    let payload = json!({
        "q": q, "from": from, "to": to,
        "threshold": PI / 3.0,
        "all_below_threshold": all_true,
        "rows": rows,
    });
    let report = Report::new("extent scan", config, payload).with_pass(all_true);
    Ok(CommandOutput { report, csv: Some(csv), ok: all_true })
}

pub fn torus_analyze(
    config: &RunConfig,
    weights: &str,
    modulus: Option<u64>,
    angles: Option<&str>,
) -> Result<CommandOutput> {
    let w = parse_weights(weights)?;
    let class = w.classify().map_err(|e| anyhow!("{e}"))?;
    let mut payload = json!({
        "k": w.rank(),
        "weights": w.rows(),
        "effective": class.effective,
        "principal_isotropy": class.principal_isotropy,
        "strata": class.strata,
        "flags": {
            "free": class.free,
            "pseudo_free": class.pseudo_free,
            "fixed_point_free": class.fixed_point_free,
        },
        "singular_orbits": class.singular_orbits,
    });
    if w.rank() == 2 && class.fixed_point_free {
        let check = w.rank_sum_check().map_err(|e| anyhow!("{e}"))?;
        payload["rank_sum"] = serde_json::to_value(&check)?;
    }
    match (modulus, angles) {
        (Some(n), Some(text)) => {
            let parts: Vec<u64> = text
                .split(',')
                .map(|e| e.trim().parse().map_err(|_| anyhow!("bad angle residue {e:?}")))
                .collect::<Result<_>>()?;
            let [a, b, c] = parts[..] else { bail!("--angles needs 3 residues") };
            let membership = w.cyclic_in_torus(n, [a, b, c]).map_err(|e| anyhow!("{e}"))?;
            payload["cyclic_membership"] = serde_json::to_value(&membership)?;
        }
        (None, None) => {}
        _ => bail!("--modulus and --angles must be given together"),
    }
    Ok(CommandOutput::passing(Report::new("torus analyze", config, payload)))
}

pub fn rep_verify(config: &RunConfig, m: u64, n: u64, r: u64, c: u64) -> Result<CommandOutput> {
    let form = match LinearSpaceForm::build_standard(m, n, r, c) {
        Ok(form) => form,
        Err(e) => {
            // relation failures are findings, not usage errors
            let payload = json!({
                "parameters": { "m": m, "n": n, "r": r, "c": c },
                "relations_verified": false,
                "error": format!("{e}"),
            });
            let report = Report::new("rep verify", config, payload).with_pass(false);
            return Ok(CommandOutput { report, csv: None, ok: false });
        }
    };
    let verdict = form.is_free();
    let mut payload = json!({
        "parameters": { "m": m, "n": n, "r": r, "c": c },
        "relations_verified": true,
        "free": verdict.free,
        "order": form.presentation.order(),
    });
    if let Some(witness) = verdict.witness {
        payload["fixed_point_witness"] = serde_json::to_value(witness)?;
    }
    if verdict.free {
        let geo = form.injectivity_geometry(sampler(config)).map_err(|e| anyhow!("{e}"))?;
        payload["volume"] = json!(geo.volume);
        payload["min_injrad"] = json!(geo.min_injrad);
        payload["max_injrad"] = serde_json::to_value(&geo.max_injrad)?;
        payload["collapse_ratio"] = json!(geo.collapse_ratio);
    }
    let ok = verdict.free;
    let report = Report::new("rep verify", config, payload).with_pass(ok);
    Ok(CommandOutput { report, csv: None, ok })
}

pub fn rep_invariance(
    config: &RunConfig,
    m: u64,
    n: u64,
    r: u64,
    c: u64,
    weights: &str,
    hol_a: &str,
    hol_b: &str,
) -> Result<CommandOutput> {
    let form = LinearSpaceForm::build_standard(m, n, r, c).map_err(|e| anyhow!("{e}"))?;
    let w = parse_weights(weights)?;
    let ha = parse_int_matrix(hol_a).context("--hol-a")?;
    let hb = parse_int_matrix(hol_b).context("--hol-b")?;
    let invariant = verify_pi1_invariance(&form, &w, &ha, &hb).map_err(|e| anyhow!("{e}"))?;
    let payload = json!({
        "parameters": { "m": m, "n": n, "r": r, "c": c },
        "weights": w.rows(),
        "holonomy_a": ha,
        "holonomy_b": hb,
        "invariant": invariant,
    });
    let report = Report::new("rep invariance", config, payload).with_pass(invariant);
    Ok(CommandOutput { report, csv: None, ok: invariant })
}

pub fn verify_all(config: &RunConfig, corrupt_margin: Option<f64>) -> Result<CommandOutput> {
    let mut options = crate::acceptance::AcceptanceOptions::from_config(config);
    if let Some(margin) = corrupt_margin {
        options.margin_floor = margin;
    }
    let criteria = crate::acceptance::run_all(&options);
    let all_pass = criteria.iter().all(|c| c.pass);
    let payload = json!({
        "criteria": criteria,
        "all_pass": all_pass,
        "negative_control": corrupt_margin,
    });
    let report = Report::new("verify-all", config, payload).with_pass(all_pass);
    Ok(CommandOutput { report, csv: None, ok: all_pass })
}
