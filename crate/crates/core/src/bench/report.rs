use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{ratios, BenchmarkRecord, Status};

pub const CSV_HEADER: &str =
    "instance,index,status,s,k99,n_opt,n_total,optimal_value,best_value,chain_strength,t_proc_s,wall_t_reweight_s";

/// CSV columns holding measured wall-clock values; everything else is
/// reproducible from the seeds.
pub const WALL_CLOCK_COLUMNS: &[&str] = &["wall_t_reweight_s"];

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Solved => "solved",
        Status::Unsolved => "unsolved",
    }
}

/// One row per assignment, ordered by index, with a header line.
pub fn records_to_csv(records: &[BenchmarkRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for rec in records {
        for a in &rec.assignments {
            let k99 = a.k99.map(|k| k.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                rec.instance,
                a.index,
                status_str(a.status),
                a.s,
                k99,
                a.n_opt,
                a.n_total,
                a.optimal_value,
                a.best_value,
                a.chain_strength,
                a.t_proc.as_secs_f64(),
                a.t_reweight.as_secs_f64(),
            )
            .expect("writing to a String cannot fail");
        }
    }
    out
}

/// Instance-level summary. Measured quantities, and everything derived from
/// them, live under `"wall_clock"`; the rest is byte-stable for fixed seeds.
pub fn summary_json(rec: &BenchmarkRecord, manifest: Option<&Value>) -> Value {
    let unsolved = rec.unsolved();
    let device: std::time::Duration = rec.assignments.iter().map(|a| a.t_proc).sum();
    let (r_h, r_c, identity) = match ratios(rec) {
        Ok((r_h, r_c)) => (Some(r_h), Some(r_c), Some(rec.identity_holds())),
        Err(_) => (None, None, None),
    };
    let statuses: Vec<&str> = rec.assignments.iter().map(|a| status_str(a.status)).collect();
    let reembed: Option<Vec<f64>> = rec
        .reembed_times
        .as_ref()
        .map(|t| t.iter().map(|d| d.as_secs_f64()).collect());
    let mut summary = json!({
        "instance": rec.instance,
        "n": rec.n,
        "edges": rec.num_edges,
        "physical_n": rec.physical_n,
        "m": rec.m(),
        "embedding": rec.embedding,
        "timing_model": rec.timing,
        "statuses": statuses,
        "all_solved": unsolved.is_empty(),
        "unsolved": unsolved,
        "t_h_is_lower_bound": !unsolved.is_empty(),
        "device_time_s": device.as_secs_f64(),
        "wall_clock": {
            "t_embed_measured_s": rec.t_embed_measured.as_secs_f64(),
            "t_embed_s": rec.t_embed.as_secs_f64(),
            "T_H_s": rec.t_h.as_secs_f64(),
            "T_std_s": rec.t_std.as_secs_f64(),
            "T_C_s": rec.t_c.as_secs_f64(),
            "R_H": r_h,
            "R_C": r_c,
            "identity_holds": identity,
            "reembed_times_s": reembed,
        },
        "wall_clock_fields": ["wall_clock"],
    });
    if let Some(m) = manifest {
        summary["manifest"] = m.clone();
    }
    summary
}
