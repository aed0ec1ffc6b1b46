//! Constructing assignments that hit a target, over Q and over F_p.

use nullfil::images::{preimage, PreimageResult};
use nullfil::model::{evaluate, format_assignment, Element};
use nullfil::text::parse_in;
use nullfil::{Algebra, Domain};

fn show(f: &str, target: &str, algebra: Algebra, domain: Domain) -> nullfil::Result<()> {
    let poly = parse_in(f, domain)?;
    let u = Element::parse(target, algebra, domain)?;
    print!("{f:<16} -> {target:<14} on {algebra} over {domain}: ");
    match preimage(&poly, algebra, &u)? {
        PreimageResult::Assignment(a) => {
            let check = evaluate(&poly, algebra, &a)?;
            println!("{}  (evaluates to {check})", format_assignment(&a));
        }
        PreimageResult::NotInImage(reason) => println!("not in image ({})", reason.tag()),
        PreimageResult::NeedsRoot { exponent, value } => println!("needs r with r^{exponent} = {value}"),
    }
    Ok(())
}

fn main() -> nullfil::Result<()> {
    let q = Domain::Rational;
    let l3 = Algebra::Finite(3);
    show("x1 x2 - x2 x1", "e3", l3, q)?;
    show("x1 x2", "2*e2 - e3", l3, q)?;
    show("x1^2", "4*e2 + 6*e3", l3, q)?;
    show("x1^2", "e3", l3, q)?;
    show("x1^2", "2*e2", l3, q)?;
    show("x1^2", "2*e2", l3, Domain::prime(7)?)?;
    show("x1^2 x2^3", "5*e5 + e7", Algebra::Infinite, q)?;
    Ok(())
}
