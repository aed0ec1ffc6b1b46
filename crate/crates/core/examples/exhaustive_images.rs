//! Exhaustive images over small prime fields compared with the classifier.

use nullfil::oracle::{brute_force_image, cross_check};
use nullfil::text::parse;

fn main() -> nullfil::Result<()> {
    let image = brute_force_image(&parse("x1 x2 - x2 x1")?, 3, 2)?;
    let points: Vec<String> = image.elements().iter().map(|u| u.to_string()).collect();
    println!("image of x1 x2 - x2 x1 on L_3 over F_2: {{{}}}\n", points.join(", "));

    let cases = [
        ("x1 x2 - x2 x1", 3, 3),
        ("x1 x2", 3, 5),
        ("x1^2", 3, 3),
        ("x1^2", 2, 5),
        ("x1 x2^2", 4, 3),
        ("x1 x2 + x2 x1", 3, 2),
        ("x1 x2 x3 - x2 x1 x3", 3, 2),
    ];
    for (f, n, p) in cases {
        println!("{}", cross_check(&parse(f)?, n, p)?.to_json());
    }
    Ok(())
}
