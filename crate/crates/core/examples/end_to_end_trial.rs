//! One trial by hand: train on sampled tasks, then recover a task that was
//! never seen in training from a few of its demonstrations.

use arc_lab::families::{make_parity_class, ParityConfig};
use arc_lab::generate_dataset;
use arc_lab::learner::{Learner, LearnerConfig};
use arc_lab::seed::rng_from_seed;

fn main() -> arc_lab::Result<()> {
    let class = make_parity_class(&ParityConfig::new(10, 3))?;
    let mut rng = rng_from_seed(2024);

    let tasks: Vec<_> = (0..60).map(|_| class.sample_task(&mut rng)).collect();
    let training: Vec<_> = tasks
        .iter()
        .map(|t| generate_dataset(&class, t, 200, &mut rng).map(|d| d.without_generator()))
        .collect::<arc_lab::Result<_>>()?;

    let learner = Learner::new(&class, LearnerConfig::default());
    let ident = learner.train(&training)?;
    for t in 0..class.steps() {
        println!("step {} identified {:?}", t + 1, ident.ids(t));
    }

    let unseen = loop {
        let t = class.sample_task(&mut rng);
        if !tasks.contains(&t) {
            break t;
        }
    };
    let demos = generate_dataset(&class, &unseen, 81, &mut rng)?;
    let selected = learner.infer(&ident, &demos.without_generator())?;
    println!("unseen task {:?}, selected {:?}", unseen.ids(), selected.ids());
    Ok(())
}
