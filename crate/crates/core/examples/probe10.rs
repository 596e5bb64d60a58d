//! Win-probability of the MSE-ordering clause vs replicate count.
use survacc::data::KernelSpec;
use survacc::pipeline::Method;
use survacc::sim::*;

fn main() {
    let two = [Method::Proposed, Method::IpcwKm];
    for reps in [200usize, 1000, 1500] {
        let mut cell_wins = [0usize; 4];
        let mut full_wins = 0usize;
        let trials = 8;
        for trial in 0..trials {
            let mut wins = 0;
            for (ci, (level, n)) in [
                (CensoringLevel::Medium, 300usize),
                (CensoringLevel::Medium, 600),
                (CensoringLevel::High, 300),
                (CensoringLevel::High, 600),
            ]
            .into_iter()
            .enumerate()
            {
                let mut sc = ScenarioConfig::standard(
                    0.70, level, CensoringMechanism::Independent, n, reps,
                    1000 + trial as u64,
                );
                sc.kernel = KernelSpec::span(0.05).unwrap();
                sc.oracle_datasets = 1000;
                let r = run_scenario(&sc, &two).unwrap();
                if r.methods[0].auc_a.mse_x1000 <= r.methods[1].auc_a.mse_x1000 {
                    wins += 1;
                    cell_wins[ci] += 1;
                }
            }
            if wins >= 3 {
                full_wins += 1;
            }
        }
        println!(
            "reps {reps}: cell win rates {:?} / {trials}; criterion (>=3/4) passes {full_wins}/{trials}",
            cell_wins
        );
    }
}
