//! Identity testing by rewriting and by generic evaluation, with witnesses.

use nullfil::model::format_assignment;
use nullfil::oracle::{find_witness, identity_oracle};
use nullfil::rewrite::is_identity;
use nullfil::text::parse;
use nullfil::Algebra;

fn main() -> nullfil::Result<()> {
    let cases = [
        ("x1*(x2*x3)", Algebra::Infinite),
        ("x1 x2 - x2 x1", Algebra::Infinite),
        ("x1 x2 x3 - x2 x1 x3", Algebra::Finite(3)),
        ("x1 x2 x3 - x2 x1 x3", Algebra::Finite(4)),
        ("x1 x2 x3 x4 - x1 x4 x3 x2", Algebra::Finite(6)),
    ];
    for (text, algebra) in cases {
        let f = parse(text)?;
        let rewrite = is_identity(&f, algebra)?;
        let oracle = identity_oracle(&f, algebra)?;
        print!("{text:<28} on {algebra:<6} rewrite={rewrite} oracle={oracle}");
        if let Some((a, v)) = find_witness(&f, algebra, 1)? {
            print!("  witness {} -> {v}", format_assignment(&a));
        }
        println!();
    }
    Ok(())
}
