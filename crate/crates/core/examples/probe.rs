//! Scratch probe of generator marginals and calibration headroom.

use survacc::sim::*;
use survacc::util::child_rng;

fn main() {
    for frac in [0.30, 0.50, 0.70] {
        let cfg = FineGrayConfig::with_event1_target(frac).unwrap();
        let mut rng = child_rng(1, 0);
        let mut cause1 = 0usize;
        let n = 100_000;
        let cens = CensoringConfig::NoCensoring;
        let (sample, latents) = generate_dataset_with_rng(&cfg, &cens, n, 2.0, &mut rng).unwrap();
        for l in &latents {
            if l.cause == 1 {
                cause1 += 1;
            }
        }
        let _ = sample;
        println!("target {frac}: cause-1 fraction = {:.4}", cause1 as f64 / n as f64);
    }

    let cfg = FineGrayConfig::with_event1_target(0.70).unwrap();
    for (name, mech) in [
        ("independent", CensoringMechanism::Independent),
        ("threshold", CensoringMechanism::threshold_weibull_default()),
        ("cox", CensoringMechanism::cox_on_score_default()),
    ] {
        for target in [0.275, 0.475] {
            match calibrate_censoring(&cfg, mech, target, 7) {
                Ok((c, achieved)) => {
                    let tau = select_tau(&cfg, &c, 0.65, 100_000, 8).unwrap();
                    println!(
                        "{name} target {target}: achieved {achieved:.4}, tau = {:.3}",
                        tau.value()
                    );
                }
                Err(e) => println!("{name} target {target}: ERROR {e}"),
            }
        }
    }

    // Truth at the medium-censoring tau for the 70% cell.
    let (cens, _) = calibrate_censoring(&cfg, CensoringMechanism::Independent, 0.275, 7).unwrap();
    let tau = select_tau(&cfg, &cens, 0.65, 100_000, 8).unwrap();
    let t = true_values(&cfg, tau.value(), 2000, 1000, 9).unwrap();
    println!(
        "truth 70%/medium: auc_a = {:.4} (se {:.5}), auc_b = {:.4}, brier = {:.4} (se {:.5})",
        t.auc_a, t.se_auc_a, t.auc_b, t.brier, t.se_brier
    );
}
