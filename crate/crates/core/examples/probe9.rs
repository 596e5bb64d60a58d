//! High-precision MSE ordering for the V1 constants, 2000 replicates.
use std::time::Instant;
use survacc::data::KernelSpec;
use survacc::pipeline::Method;
use survacc::sim::*;

fn main() {
    let two = [Method::Proposed, Method::IpcwKm];
    let t0 = Instant::now();
    for level in [CensoringLevel::Medium, CensoringLevel::High] {
        for n in [300usize, 600] {
            let mut sc = ScenarioConfig::standard(0.70, level, CensoringMechanism::Independent, n, 2000, 424242);
            sc.kernel = KernelSpec::span(0.05).unwrap();
            sc.oracle_datasets = 2000;
            let r = run_scenario(&sc, &two).unwrap();
            let p = &r.methods[0];
            let k = &r.methods[1];
            println!(
                "{level}/{n}: A: p {:.4} km {:.4} ({}) | B: p {:.4} km {:.4} ({}) | bias_a p {:+.2}% km {:+.2}%",
                p.auc_a.mse_x1000, k.auc_a.mse_x1000,
                if p.auc_a.mse_x1000 <= k.auc_a.mse_x1000 { "P" } else { "K" },
                p.auc_b.mse_x1000, k.auc_b.mse_x1000,
                if p.auc_b.mse_x1000 <= k.auc_b.mse_x1000 { "P" } else { "K" },
                p.auc_a.bias_pct, k.auc_a.bias_pct,
            );
        }
    }
    println!("elapsed {:?}", t0.elapsed());
}
