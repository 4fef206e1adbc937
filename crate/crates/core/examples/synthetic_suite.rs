//! Mean target accuracy of every solver on the rotated-Gaussians suite.
//!
//! `cargo run --release -p jpda-core --example synthetic_suite -- [degrees] [dim] [p] [lambda]`

use jpda_core::{fit, generate_pair, AdaptConfig, Algorithm, ShiftSpec};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();
    let degrees = args.first().copied().unwrap_or(15.0);
    let dim = args.get(1).copied().unwrap_or(10.0) as usize;
    let p = args.get(2).copied().unwrap_or(100.0) as usize;
    let lambda = args.get(3).copied().unwrap_or(0.1);
    let seeds = 20;
    let algos = [
        Algorithm::Tca,
        Algorithm::Jda,
        Algorithm::Bda,
        Algorithm::Jp,
        Algorithm::Jpda,
    ];
    let mut sums = vec![0.0; algos.len() + 1];
    for seed in 0..seeds {
        let spec = ShiftSpec {
            dim,
            ..ShiftSpec::rotation(degrees, seed)
        };
        let g = generate_pair(&spec).unwrap();
        sums[0] += g.raw_nn_accuracy;
        for (k, &algorithm) in algos.iter().enumerate() {
            let cfg = AdaptConfig {
                algorithm,
                p,
                lambda,
                seed,
                ..AdaptConfig::default()
            };
            let out = fit(&g.pair, &cfg, Some(&g.target_labels)).unwrap();
            sums[k + 1] += out.report.final_accuracy().unwrap();
        }
    }
    print!("raw {:.4}", sums[0] / seeds as f64);
    for (k, a) in algos.iter().enumerate() {
        print!("  {a} {:.4}", sums[k + 1] / seeds as f64);
    }
    println!();
}
