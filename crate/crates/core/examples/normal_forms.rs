//! Left-norming and reduction modulo the identities of `L_n` and `L_inf`.

use nullfil::rewrite::{left_norm_with_stats, reduce};
use nullfil::text::parse;
use nullfil::Algebra;

fn main() -> nullfil::Result<()> {
    let inputs = ["x1*(x2*x3)", "(x1 x2)(x3 x4)", "x2 x1 x3", "x1 x3 x2 - x1 x2 x3", "x1 x2 x3 x4"];
    let algebras = [Algebra::Finite(2), Algebra::Finite(3), Algebra::Finite(4), Algebra::Infinite];
    for text in inputs {
        let f = parse(text)?;
        let (ln, stats) = left_norm_with_stats(&f);
        println!("{text}");
        println!("  left-normed ({} steps): {ln}", stats.rule_applications);
        for algebra in algebras {
            println!("  on {algebra:<6} {}", reduce(&f, algebra));
        }
    }
    Ok(())
}
