//! Headroom scan over cause2_rate_scale for the high-censoring target.
use survacc::sim::*;

fn main() {
    for scale in [1.0, 0.7, 0.5, 0.4] {
        for frac in [0.30, 0.70] {
            let mut cfg = FineGrayConfig::with_event1_target(frac).unwrap();
            cfg.cause2_rate_scale = scale;
            let r = calibrate_censoring(&cfg, CensoringMechanism::Independent, 0.475, 7);
            match r {
                Ok((c, achieved)) => {
                    let tau = select_tau(&cfg, &c, 0.65, 100_000, 8).unwrap();
                    let t = true_values(&cfg, tau.value(), 1000, 1000, 9).unwrap();
                    println!(
                        "scale {scale} frac {frac}: high ok ({achieved:.4}), tau {:.3}, auc_a {:.4}, brier {:.4}",
                        tau.value(), t.auc_a, t.brier
                    );
                }
                Err(e) => println!("scale {scale} frac {frac}: {e}"),
            }
        }
    }
}
