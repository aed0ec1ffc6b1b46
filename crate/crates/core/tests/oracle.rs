use nullfil::corpus::Corpus;
use nullfil::enumerate::basis_monomials;
use nullfil::images::{classify, realize};
use nullfil::oracle::{
    brute_force_image, coordinate_vector, cross_check, generic_evaluate, identity_oracle, rational_rank, Equality,
};
use nullfil::rewrite::reduce;
use nullfil::text::parse;
use nullfil::{Algebra, Domain, FreePolynomial};

#[test]
fn generic_examples() {
    let f = parse("x1*(x2*x3)").unwrap();
    assert!(generic_evaluate(&f, 3, 4).iter().all(|c| c.is_zero()));

    let f = parse("x1 x2").unwrap();
    assert_eq!(generic_evaluate(&f, 2, 2)[1].to_string(), "t1_1*t2_1");

    let f = parse("x1 x2 x3 - x2 x1 x3").unwrap();
    assert!(generic_evaluate(&f, 3, 3).iter().all(|c| c.is_zero()));
    assert!(!generic_evaluate(&f, 3, 4)[3].is_zero());
}

#[test]
fn oracle_examples() {
    for n in 2..=5 {
        let words: Vec<u32> = (1..=n as u32).collect();
        let mut swapped = words.clone();
        swapped.swap(0, 1);
        let w = |ix: &[u32]| ix.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(" ");
        let f = parse(&format!("{} - {}", w(&words), w(&swapped))).unwrap();
        assert!(identity_oracle(&f, Algebra::Finite(n)).unwrap());
        assert!(identity_oracle(&parse("x1*(x2*x3)").unwrap(), Algebra::Finite(n)).unwrap());
    }
    assert!(identity_oracle(&parse("x1*(x2*x3)").unwrap(), Algebra::Infinite).unwrap());
    assert!(!identity_oracle(&parse("x1 x2 - x2 x1").unwrap(), Algebra::Infinite).unwrap());
}

#[test]
fn infinite_dimension_reduction_is_stable() {
    let mut c = Corpus::new(11);
    for f in c.identity_corpus(300, 6, &[Algebra::Finite(3), Algebra::Infinite]) {
        let d = f.degree();
        let at = |n: usize| generic_evaluate(&f, f.max_var() as usize, n).iter().all(|p| p.is_zero());
        assert_eq!(at(d + 1), at(d + 2), "{f}");
        assert_eq!(identity_oracle(&f, Algebra::Infinite).unwrap(), reduce(&f, Algebra::Infinite).is_zero(), "{f}");
    }
}

#[test]
fn catalog_words_are_independent() {
    for n in 1..=4 {
        for m in 1..=3 {
            let catalog = basis_monomials(n, m).unwrap();
            let rows: Vec<_> = catalog
                .words()
                .map(|w| {
                    let f = FreePolynomial::monomial(Domain::Rational, w.to_term());
                    coordinate_vector(&f, m, n)
                })
                .collect();
            assert_eq!(rational_rank(&rows).unwrap(), catalog.word_count(), "n={n} m={m}");
        }
    }
}

#[test]
fn brute_force_examples() {
    let pts = |f: &str, n, p| -> Vec<Vec<u64>> {
        brute_force_image(&parse(f).unwrap(), n, p).unwrap().coordinates().collect()
    };
    assert_eq!(pts("x1 x2 - x2 x1", 3, 2), vec![vec![0, 0, 0], vec![0, 0, 1]]);
    assert_eq!(pts("x1*(x2*x3)", 3, 3), vec![vec![0, 0, 0]]);
    assert_eq!(pts("x1 x2", 2, 2), vec![vec![0, 0], vec![0, 1]]);
}

#[test]
fn cross_check_examples() {
    let r = cross_check(&parse("x1 x2 - x2 x1").unwrap(), 3, 3).unwrap();
    assert!(r.inclusion && r.equality == Equality::Exact && r.equality_holds == Some(true));

    let r = cross_check(&parse("x1^2").unwrap(), 3, 3).unwrap();
    assert!(r.inclusion && r.equality == Equality::SplitOnly && r.equality_holds == Some(true));

    let r = cross_check(&parse("x1 x2 x3 - x2 x1 x3").unwrap(), 3, 2).unwrap();
    assert!(r.inclusion && r.equality == Equality::Exact && r.image_size == 1);

    let v = r.to_json();
    for key in ["f", "n", "p", "descriptor", "inclusion", "equality"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn exhaustive_inclusion_on_random_multihomogeneous() {
    let mut c = Corpus::new(99);
    let mut checked = 0;
    while checked < 40 {
        let m = 1 + checked % 2;
        let n = 2 + checked % 3;
        let md = c.multidegree(m, 4);
        let f = c.multihomogeneous(&md, 3, true);
        if f.is_zero() {
            continue;
        }
        let algebra = Algebra::Finite(n);
        let descriptor = classify(&f, algebra).unwrap().descriptor;
        for p in [2, 3] {
            if !nullfil::oracle::divisor_condition(&f, n, p).unwrap() {
                continue;
            }
            let image = brute_force_image(&f, n, p).unwrap();
            assert!(image.elements().iter().all(|u| realize(&descriptor, u)), "{f} on L_{n} mod {p}");
        }
        checked += 1;
    }
}
