//! Left-to-right chains of `+` and `×` over bits, with the running value
//! as the chain of thought.

use arc_lab::families::{estimate_margin, make_arithmetic_class, ArithmeticConfig};
use arc_lab::seed::rng_from_seed;
use arc_lab::Input;

fn main() -> arc_lab::Result<()> {
    let class = make_arithmetic_class(&ArithmeticConfig::new(6))?;
    // id 0 is `+`, id 1 is `×`
    let task = class.task(vec![0, 1, 0, 0, 1])?;
    let x = class.input_space().from_ints(&[1, 1, 0, 1, 1, 1])?;
    let y = class.generate_sequence(&task, &x, &mut rng_from_seed(0));
    println!("1 + 1 x 0 + 1 + 1 x 1, running values {y:?}");

    let x = Input::Bits(0b111111);
    println!("all ones under {:?}: {:?}", task.ids(), class.generate_sequence(&task, &x, &mut rng_from_seed(0)));

    // `+` and `×` differ only when the running value is nonzero and the
    // next bit is 0 (or the value is 0 and the bit is 1), which gets rarer.
    let margin = estimate_margin(&class, class.steps())?;
    for s in &margin.per_step {
        println!("step {} margin {:?}", s.step + 1, s.c);
    }
    println!("class margin {:?}", margin.c);
    Ok(())
}
