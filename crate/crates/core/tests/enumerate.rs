use nullfil::enumerate::{basis_monomials, count_multilinear_canonical, dim_relatively_free, multilinear_codim};
use nullfil::Algebra;
use num_bigint::BigUint;

#[test]
fn formula_matches_enumeration() {
    for n in 1..=6 {
        for m in 1..=4 {
            let catalog = basis_monomials(n, m).unwrap();
            assert_eq!(dim_relatively_free(n, m).unwrap(), BigUint::from(catalog.total()), "n={n} m={m}");
        }
    }
}

#[test]
fn multilinear_slice_matches_codimension() {
    for n in 1..=6 {
        for m in 1..=4 {
            let catalog = basis_monomials(n, m).unwrap();
            let multilinear = catalog
                .by_degree
                .get(&m)
                .map(|ws| {
                    ws.iter()
                        .filter(|w| {
                            let mut ix = w.indices();
                            ix.sort();
                            ix == (1..=m as u32).collect::<Vec<_>>()
                        })
                        .count()
                })
                .unwrap_or(0);
            let codim = multilinear_codim(Algebra::Finite(n), m).unwrap();
            assert_eq!(multilinear, codim, "n={n} m={m}");
            assert_eq!(count_multilinear_canonical(Algebra::Finite(n), m), codim, "n={n} m={m}");
        }
    }
}

#[test]
fn dimension_is_monotone() {
    for n in 1..=6 {
        for m in 1..=4 {
            let d = dim_relatively_free(n, m).unwrap();
            assert!(dim_relatively_free(n + 1, m).unwrap() >= d);
            assert!(dim_relatively_free(n, m + 1).unwrap() >= d);
        }
    }
}

#[test]
fn infinite_codimension() {
    for m in 1..=8 {
        assert_eq!(multilinear_codim(Algebra::Infinite, m).unwrap(), m);
        assert_eq!(count_multilinear_canonical(Algebra::Infinite, m), m);
    }
}
