//! The sign test between two known distributions, with its empirical error
//! against the Hoeffding bound `exp(-n TV² / 2)`.

use arc_lab::seed::{mix64, rng_from_seed};
use arc_lab::stats::{discriminate, DistributionPair, TablePair, Verdict};
use rand::Rng;

fn main() -> arc_lab::Result<()> {
    let pair = TablePair::new(vec![0.4, 0.3, 0.2, 0.1], vec![0.1, 0.2, 0.3, 0.4])?;
    let contrast = pair.contrast()?;
    println!("TV {:.3}, mu_P {:.3}, mu_Q {:.3}", contrast.tv, contrast.mu_p, contrast.mu_q);

    let draw = |pmf: &[f64], rng: &mut rand_chacha::ChaCha8Rng| {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, &p) in pmf.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        pmf.len() - 1
    };

    let reps = 4000;
    for n in [5usize, 10, 20, 40] {
        let mut errors = 0;
        for r in 0..reps {
            let mut rng = rng_from_seed(mix64(n as u64, r));
            let samples: Vec<usize> = (0..n).map(|_| draw(pair.p(), &mut rng)).collect();
            if discriminate(&pair, &samples)? == Verdict::QChosen {
                errors += 1;
            }
        }
        let bound = (-(n as f64) * contrast.tv * contrast.tv / 2.0).exp();
        println!("n={n:>3}  error {:.4}  bound {:.4}", errors as f64 / reps as f64, bound);
    }
    Ok(())
}
