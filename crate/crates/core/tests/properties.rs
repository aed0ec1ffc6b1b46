use nullfil::corpus::Corpus;
use nullfil::images::{classify, preimage, ImageCase, PreimageResult};
use nullfil::model::{evaluate, power_ideal, Assignment, Element};
use nullfil::oracle::generic_evaluate;
use nullfil::rewrite::{left_norm_with_stats, normal_form, reduce};
use nullfil::text::parse;
use nullfil::{Algebra, Domain, Scalar};
use proptest::prelude::*;

fn algebra_strategy() -> impl Strategy<Value = Algebra> {
    prop_oneof![(1usize..=6).prop_map(Algebra::Finite), Just(Algebra::Infinite)]
}

fn element(coeffs: &[i64], algebra: Algebra) -> Element {
    let pairs = coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| algebra.dim().map_or(true, |n| *k < n))
        .map(|(k, &c)| (k + 1, Scalar::rational(c, 1)));
    Element::from_pairs(algebra, Domain::Rational, pairs).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>()) {
        let f = Corpus::new(seed).poly(4, 6, 5);
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f);
        prop_assert_eq!(parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn normal_form_is_sound(seed in any::<u64>(), algebra in algebra_strategy()) {
        let f = Corpus::new(seed).poly(3, 5, 4);
        let diff = f.sub(&reduce(&f, algebra).lift()).unwrap();
        let n = algebra.dim().unwrap_or(f.degree() + 1);
        prop_assert!(generic_evaluate(&diff, 3, n).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), algebra in algebra_strategy()) {
        let f = Corpus::new(seed).poly(4, 6, 4);
        let nf = reduce(&f, algebra);
        let again = reduce(&nf.lift(), algebra);
        prop_assert_eq!(again.poly(), nf.poly());
    }

    #[test]
    fn rewriting_is_bounded(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let t = c.term(3, 7);
        let f = nullfil::FreePolynomial::monomial(Domain::Rational, t.clone());
        let (_, stats) = left_norm_with_stats(&f);
        prop_assert!(stats.rule_applications as u64 <= (t.internal_nodes() as u64) << t.degree());
    }

    #[test]
    fn degree_n_words_collapse(seed in any::<u64>(), n in 2usize..=6) {
        use rand::seq::SliceRandom;
        let mut c = Corpus::new(seed);
        let md = c.multidegree(3.min(n), n);
        if md.total() == n {
            let mut a = md.sorted_letters();
            let mut b = a.clone();
            a.shuffle(c.rng());
            b.shuffle(c.rng());
            let wa = nullfil::LNPolynomial::monomial(Domain::Rational, nullfil::LeftNormedWord::new(a).unwrap());
            let wb = nullfil::LNPolynomial::monomial(Domain::Rational, nullfil::LeftNormedWord::new(b).unwrap());
            let alg = Algebra::Finite(n);
            let (na, nb) = (normal_form(&wa, alg), normal_form(&wb, alg));
            prop_assert_eq!(na.poly(), nb.poly());
        }
    }

    #[test]
    fn model_satisfies_leibniz(a in coeffs(), b in coeffs(), c in coeffs(), algebra in algebra_strategy()) {
        let (x, y, z) = (element(&a, algebra), element(&b, algebra), element(&c, algebra));
        let lhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().mul(&z).unwrap().sub(&x.mul(&z).unwrap().mul(&y).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn power_ideals_multiply_down(a in coeffs(), b in coeffs(), k in 1usize..=6, algebra in algebra_strategy()) {
        let lk = power_ideal(algebra, k).unwrap();
        let u = element(&a, algebra);
        let pairs: Vec<_> = u.terms().into_iter().filter(|(i, _)| *i >= k).collect();
        let u = Element::from_pairs(algebra, Domain::Rational, pairs).unwrap();
        prop_assert!(lk.contains(&u));
        let prod = u.mul(&element(&b, algebra)).unwrap();
        prop_assert!(power_ideal(algebra, k + 1).unwrap().contains(&prod));
    }

    #[test]
    fn right_power_is_a_fold(a in coeffs(), b in coeffs(), s in 1usize..=7, algebra in algebra_strategy()) {
        let (z, w) = (element(&a, algebra), element(&b, algebra));
        let mut acc = z.clone();
        for _ in 0..s {
            acc = acc.mul(&w).unwrap();
        }
        prop_assert_eq!(z.right_power(&w, s).unwrap(), acc);
    }

    #[test]
    fn multilinear_evaluation_is_additive(
        seed in any::<u64>(), a in coeffs(), b in coeffs(), c in coeffs(), n in 2usize..=5
    ) {
        let algebra = Algebra::Finite(n);
        let f = Corpus::new(seed).multilinear(3, 4);
        let base: Assignment = [(1, &a), (2, &b), (3, &c)]
            .iter()
            .map(|(k, v)| (nullfil::x(*k), element(v, algebra)))
            .collect();
        let mut left = base.clone();
        let mut right = base.clone();
        let mut both = base.clone();
        let u = element(&b, algebra);
        let v = element(&c, algebra);
        left.insert(nullfil::x(1), u.clone());
        right.insert(nullfil::x(1), v.clone());
        both.insert(nullfil::x(1), u.add(&v).unwrap());
        let sum = evaluate(&f, algebra, &left).unwrap().add(&evaluate(&f, algebra, &right).unwrap()).unwrap();
        prop_assert_eq!(evaluate(&f, algebra, &both).unwrap(), sum);
    }

    #[test]
    fn preimages_round_trip(seed in any::<u64>(), algebra in algebra_strategy()) {
        let mut c = Corpus::new(seed);
        let md = c.multidegree(2, 4);
        for case in [ImageCase::SumZero, ImageCase::LinearHead, ImageCase::Cone] {
            let Some(f) = c.with_case(&md, algebra, case) else { continue };
            let cls = classify(&f, algebra).unwrap();
            let top = algebra.dim().unwrap_or(md.total() + 3);
            let lo = match cls.descriptor.kind() {
                nullfil::images::ImageKind::PowerIdeal(k) => k,
                nullfil::images::ImageKind::PuncturedCone(d) => d,
                nullfil::images::ImageKind::Zero => continue,
            };
            let lead = c_lead(&cls, &mut c);
            let target = c.element_from(algebra, lo, top.max(lo), lead);
            match preimage(&f, algebra, &target).unwrap() {
                PreimageResult::Assignment(a) => prop_assert_eq!(evaluate(&f, algebra, &a).unwrap(), target),
                PreimageResult::NeedsRoot { exponent, .. } => prop_assert!(exponent >= 2),
                PreimageResult::NotInImage(r) => prop_assert!(false, "unexpected {:?}", r),
            }
        }
    }

    #[test]
    fn element_json_round_trips(a in coeffs(), algebra in algebra_strategy()) {
        let u = element(&a, algebra);
        prop_assert_eq!(Element::from_json(&u.to_json(), Domain::Rational).unwrap(), u.clone());
        prop_assert_eq!(Element::parse(&u.to_string(), algebra, Domain::Rational).unwrap(), u);
    }
}

fn c_lead(cls: &nullfil::images::Classification, c: &mut Corpus) -> Scalar {
    if cls.case == ImageCase::Cone {
        let r = c.rational();
        &cls.head.alpha_sum * &r.pow(cls.head.multidegree.iter().map(|(_, d)| d).product())
    } else {
        c.rational()
    }
}
