//! Span-width sensitivity of the MSE ordering vs IPCW.KM.
use survacc::data::KernelSpec;
use survacc::pipeline::Method;
use survacc::sim::*;

fn main() {
    let two = [Method::Proposed, Method::IpcwKm];
    for span in [0.05, 0.10] {
        println!("== span {span} ==");
        for level in [CensoringLevel::Medium, CensoringLevel::High] {
            for n in [300usize, 600] {
                let mut sc = ScenarioConfig::standard(
                    0.70,
                    level,
                    CensoringMechanism::Independent,
                    n,
                    200,
                    20240820,
                );
                sc.kernel = KernelSpec::span(span).unwrap();
                let r = run_scenario(&sc, &two).unwrap();
                let p = &r.methods[0];
                let k = &r.methods[1];
                let ok_a = p.auc_a.mse_x1000 <= k.auc_a.mse_x1000;
                let ok_b = p.auc_b.mse_x1000 <= k.auc_b.mse_x1000;
                println!(
                    "{level}/{n}: bias_a {:+.2}% | mseA p {:.3} km {:.3} {} | mseB p {:.3} km {:.3} {}",
                    p.auc_a.bias_pct,
                    p.auc_a.mse_x1000, k.auc_a.mse_x1000, if ok_a { "<=" } else { ">" },
                    p.auc_b.mse_x1000, k.auc_b.mse_x1000, if ok_b { "<=" } else { ">" },
                );
            }
        }
    }
}
