//! Identifiability margins computed by brute force over the input space.

use arc_lab::families::{
    estimate_margin, make_arithmetic_class, make_parity_class, parity_margin, ArithmeticConfig, DecoyMode,
    ParityConfig,
};

fn main() -> arc_lab::Result<()> {
    let parity = make_parity_class(&ParityConfig::new(8, 3))?;
    let exact = estimate_margin(&parity, parity.steps())?;
    let closed = parity_margin(&parity)?;
    println!("parity d=8 k=3: c={:?} r={:?} (closed form c={:?})", exact.c, exact.r, closed.c);

    let decoyed = make_parity_class(&ParityConfig::new(8, 3).with_decoys(DecoyMode::Both))?;
    let m = estimate_margin(&decoyed, decoyed.steps())?;
    println!("with decoys: H={} c={:?} r={:?}", decoyed.max_hypotheses(), m.c, m.r);
    if let Some(w) = &m.r_witness {
        println!("  tightest pair at step {}: {} vs {}", w.step + 1, w.a, w.b);
    }

    for d in [4, 6, 8, 10] {
        let class = make_arithmetic_class(&ArithmeticConfig::new(d))?;
        let m = estimate_margin(&class, class.steps())?;
        println!("arithmetic d={d}: c={:?}", m.c);
    }
    Ok(())
}
