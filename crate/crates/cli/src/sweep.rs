use std::path::PathBuf;

use clap::Args;
use num_integer::Integer;
use rayon::prelude::*;
use satcert::certifier::certify_cable;
use satcert::schema::parse_companion_str;
use satcert::KnotFacts;
use serde::Serialize;

use crate::{read_arg, write_out, Failure, Format, Outcome};

#[derive(Args)]
pub struct SweepArgs {
    /// Largest cable winding p (from 2).
    #[arg(long, default_value_t = 12)]
    p_max: i64,
    /// Largest |q|.
    #[arg(long, default_value_t = 120)]
    q_max: i64,
    /// Companion JSON or shortcut; repeatable.
    #[arg(long, default_values_t = ["trefoil".to_string()])]
    companion: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Only print rows in the gap between the sufficient and exact criteria.
    #[arg(long)]
    gaps_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub p: i64,
    pub q: i64,
    pub companion: String,
    pub sufficient_verdict: String,
    pub exact_verdict: String,
    pub gap_flag: bool,
}

pub fn run(a: SweepArgs) -> Outcome {
    if a.p_max < 2 || a.q_max < 1 {
        return Err(Failure::input(
            "sweep bounds must satisfy p-max >= 2 and q-max >= 1",
        ));
    }
    let companions = a
        .companion
        .iter()
        .map(|c| {
            read_arg(c).and_then(|t| {
                parse_companion_str(&t).map_err(|e| Failure::input(format!("companion {c:?}: {e}")))
            })
        })
        .collect::<Result<Vec<KnotFacts>, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads)
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    let mut rows = pool.install(|| sweep_rows(&companions, a.p_max, a.q_max))?;
    if a.gaps_only {
        rows.retain(|r| r.gap_flag);
    }
    let text = render(&rows, a.format)?;
    match &a.out {
        Some(path) => write_out(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

/// All coprime cells, computed in parallel and returned in input order.
pub fn sweep_rows(companions: &[KnotFacts], p_max: i64, q_max: i64) -> Result<Vec<Row>, Failure> {
    let cells: Vec<(usize, i64, i64)> = (0..companions.len())
        .flat_map(|k| (2..=p_max).flat_map(move |p| (-q_max..=q_max).map(move |q| (k, p, q))))
        .filter(|&(_, p, q)| p.gcd(&q) == 1)
        .collect();
    cells
        .par_iter()
        .map(|&(k, p, q)| {
            let companion = &companions[k];
            let cmp = certify_cable(companion, p, q).map_err(|e| {
                Failure::input(format!("cable ({p}, {q}) of {}: {e}", companion.name()))
            })?;
            Ok(Row {
                p,
                q,
                companion: companion.name().to_string(),
                sufficient_verdict: cmp.certificate.verdict.label().to_string(),
                exact_verdict: if cmp.exact { "LSpace" } else { "NotLSpace" }.to_string(),
                gap_flag: cmp.is_gap(),
            })
        })
        .collect()
}

fn render(rows: &[Row], format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Failure::input(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::input(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut s = format!(
                "{:>4} {:>6}  {:<12} {:<13} {:<10} {}\n",
                "p", "q", "companion", "sufficient", "exact", "gap"
            );
            for r in rows {
                s.push_str(&format!(
                    "{:>4} {:>6}  {:<12} {:<13} {:<10} {}\n",
                    r.p,
                    r.q,
                    r.companion,
                    r.sufficient_verdict,
                    r.exact_verdict,
                    if r.gap_flag { "yes" } else { "" }
                ));
            }
            Ok(s)
        }
    }
}
