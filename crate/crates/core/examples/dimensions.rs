//! Basis words, dimensions of relatively free algebras, and codimensions.

use nullfil::enumerate::{basis_monomials, dim_relatively_free, multilinear_codim};
use nullfil::Algebra;

fn main() -> nullfil::Result<()> {
    let catalog = basis_monomials(3, 2)?;
    for (s, words) in &catalog.by_degree {
        let listed: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        println!("degree {s}: {}", listed.join(", "));
    }
    println!("total with unit: {}\n", catalog.total());

    print!("{:>4}", "n\\m");
    for m in 1..=5 {
        print!("{m:>8}");
    }
    println!();
    for n in 1..=8 {
        print!("{n:>4}");
        for m in 1..=5 {
            print!("{:>8}", dim_relatively_free(n, m)?);
        }
        println!();
    }

    println!();
    for algebra in [Algebra::Finite(4), Algebra::Infinite] {
        let cs: Vec<String> = (1..=7).map(|m| multilinear_codim(algebra, m).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        println!("c_m({algebra}) for m = 1..7: {}", cs.join(" "));
    }
    Ok(())
}
