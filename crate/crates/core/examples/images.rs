//! Image shapes of multihomogeneous polynomials.

use nullfil::images::classify;
use nullfil::text::parse;
use nullfil::Algebra;

fn main() -> nullfil::Result<()> {
    let polys = [
        "x1 x2",
        "x1 x2 - x2 x1",
        "x1 x2 x3 - x2 x1 x3",
        "x1^2",
        "x1 x2^2",
        "x1^2 x2^2 - 2 x2 x1 x2 x1",
        "x1*(x2*x3)",
    ];
    for algebra in [Algebra::Finite(3), Algebra::Finite(5), Algebra::Infinite] {
        println!("{algebra}");
        for text in polys {
            let cls = classify(&parse(text)?, algebra)?;
            let alphas: Vec<String> = cls.head.alphas.iter().map(|(v, a)| format!("{v}:{a}")).collect();
            println!(
                "  {text:<28} {:<22} case={:?} alphas=[{}]",
                cls.descriptor.to_string(),
                cls.case,
                alphas.join(" ")
            );
        }
    }
    Ok(())
}
