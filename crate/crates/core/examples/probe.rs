//! Runs the default battery (optionally filtered by instance name) and prints
//! slopes, fit quality and per-degree statistics for each instance.
//!
//! `cargo run --release -p hllab-core --example probe -- sharpness`

use hllab_core::suite::*;
use std::time::Instant;
fn main() {
    let filter: Vec<String> = std::env::args().skip(1).collect();
    for inst in default_battery() {
        if !filter.is_empty() && !filter.iter().any(|f| inst.name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let r = run_check(inst.check_id, &inst.params, &RunOptions::default());
        match r {
            Err(e) => println!("{} ERROR {e}", inst.name),
            Ok(r) => {
                println!("== {} {} ({:.1}s)", inst.name, r.verdict, t.elapsed().as_secs_f64());
                for (k, v) in &r.slope_fit {
                    println!("   slope {k} = {v:.4}");
                }
                for (k, v) in &r.fit_quality {
                    println!("   fit {k} = {v:.4e}");
                }
                for row in &r.statistics {
                    if row.role != Role::Exact {
                        println!(
                            "     {} d={} min={:.4e} max={:.4e} sup={:.4e} w={}",
                            row.series, row.degree, row.min_ratio, row.max_ratio, row.sup_ratio, row.witness
                        );
                    }
                }
            }
        }
    }
}
