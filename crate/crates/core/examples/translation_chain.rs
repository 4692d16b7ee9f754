//! Multi-hop translation: a word in some language is translated step by step
//! through a chosen sequence of languages.

use arc_lab::families::{make_translation_class, TranslationConfig};
use arc_lab::generate_dataset;
use arc_lab::seed::rng_from_seed;

fn main() -> arc_lab::Result<()> {
    let class = make_translation_class(&TranslationConfig::new(4, 5, 8))?;
    let task = class.task(vec![1, 3, 0, 2, 1])?;
    println!("route through languages {}", task.one_indexed());

    let data = generate_dataset(&class, &task, 3, &mut rng_from_seed(1))?;
    for demo in data.iter() {
        let words: Vec<&str> = demo.y.iter().map(|&t| class.alphabet().label(t).unwrap_or("?")).collect();
        println!("  {:?} -> {}", class.input_space().to_ints(&demo.x), words.join(" -> "));
    }
    println!("{} routes, {} tokens", class.task_count(), class.alphabet().size());
    Ok(())
}
