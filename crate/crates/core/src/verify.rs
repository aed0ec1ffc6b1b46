//! The acceptance suites, shared by the `verify` command and the test target.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Algebra;
use crate::corpus::Corpus;
use crate::enumerate::{basis_monomials, count_multilinear_canonical, dim_relatively_free, multilinear_codim};
use crate::error::{Error, Result};
use crate::images::{classify, closed_form_value, preimage, ImageCase, ImageDescriptor, ImageKind, PreimageResult};
use crate::model::{evaluate, format_assignment, Assignment, Element};
use crate::oracle::{brute_force_image, cross_check, divisor_condition, find_witness, identity_oracle, Equality};
use crate::rewrite::{canonical_word, is_identity, reduce};
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, LeftNormedWord, MultiDegree};
use crate::text::parse;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

fn outcome(id: u8, name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        name,
        passed,
        detail,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        identity_concordance(seed),
        minimality_witness(seed),
        dimension_formula(),
        codimension(),
        multilinear_trichotomy(seed),
        homogeneous_classification(seed),
        preimage_round_trip(seed),
        closed_forms(seed),
        root_exponent(seed),
    ]
}

pub fn run_one(id: u8, seed: u64) -> Option<Outcome> {
    Some(match id {
        1 => identity_concordance(seed),
        2 => minimality_witness(seed),
        3 => dimension_formula(),
        4 => codimension(),
        5 => multilinear_trichotomy(seed),
        6 => homogeneous_classification(seed),
        7 => preimage_round_trip(seed),
        8 => closed_forms(seed),
        9 => root_exponent(seed),
        _ => return None,
    })
}

fn word_poly(indices: &[u32]) -> FreePolynomial {
    FreePolynomial::monomial(Domain::Rational, LeftNormedWord::from_indices(indices).to_term())
}

fn word_difference(a: &[u32], b: &[u32]) -> FreePolynomial {
    word_poly(a).sub(&word_poly(b)).expect("same domain")
}

/// Identities that must vanish on `L_n`, with labels.
pub fn curated_identities(n: usize) -> Vec<(String, FreePolynomial)> {
    let n32 = n as u32;
    let first: Vec<u32> = (1..=n32).collect();
    let mut swapped = first.clone();
    if n >= 2 {
        swapped.swap(0, 1);
    }
    let reversed: Vec<u32> = first.iter().rev().copied().collect();
    vec![
        ("x1(x2x3)".into(), parse("x1*(x2*x3)").expect("valid")),
        ("head swap".into(), word_difference(&first, &swapped)),
        ("long word".into(), word_poly(&(1..=n32 + 1).collect::<Vec<_>>())),
        ("tail swap".into(), word_difference(&[1, 2, 3], &[1, 3, 2])),
        ("tail permutation".into(), word_difference(&[1, 2, 3, 4], &[1, 4, 2, 3])),
        ("full permutation".into(), word_difference(&reversed, &first)),
    ]
}

/// Normal form vanishing agrees with the generic-evaluation oracle.
pub fn identity_concordance(seed: u64) -> Outcome {
    outcome(1, "identity basis concordance", || {
        let start = Instant::now();
        let algebras: Vec<Algebra> = (2..=5).map(Algebra::Finite).collect();
        let corpus = Corpus::new(seed).identity_corpus(500, 6, &algebras);
        let (mut checks, mut agree, mut identities) = (0, 0, 0);
        let mut first_mismatch = None;
        for f in &corpus {
            for &algebra in &algebras {
                let by_rewrite = reduce(f, algebra).is_zero();
                let by_oracle = identity_oracle(f, algebra)?;
                checks += 1;
                identities += usize::from(by_oracle);
                if by_rewrite == by_oracle {
                    agree += 1;
                } else if first_mismatch.is_none() {
                    first_mismatch = Some(format!("{f} on {algebra}"));
                }
            }
        }
        let mut curated_ok = true;
        for &algebra in &algebras {
            let n = algebra.dim().expect("finite");
            for (label, f) in curated_identities(n) {
                if !(reduce(&f, algebra).is_zero() && identity_oracle(&f, algebra)?) {
                    curated_ok = false;
                    first_mismatch.get_or_insert(format!("curated {label} on {algebra}"));
                }
            }
        }
        let elapsed = start.elapsed();
        let passed = agree == checks && curated_ok && elapsed <= Duration::from_secs(120);
        let mut detail = format!(
            "{agree}/{checks} agree over {} polynomials, {identities} identities, curated suite {}, {:.2}s",
            corpus.len(),
            if curated_ok { "ok" } else { "failed" },
            elapsed.as_secs_f64()
        );
        if let Some(m) = first_mismatch {
            detail.push_str(&format!("; first mismatch: {m}"));
        }
        Ok((passed, detail))
    })
}

/// `x1 x2 ... xn - x2 x1 x3 ... xn` holds on `L_n` and fails on `L_{n+1}`.
pub fn minimality_witness(seed: u64) -> Outcome {
    outcome(2, "minimality witness", || {
        let mut passed = true;
        let mut parts = Vec::new();
        for n in 2..=4usize {
            let first: Vec<u32> = (1..=n as u32).collect();
            let mut swapped = first.clone();
            swapped.swap(0, 1);
            let f = word_difference(&first, &swapped);
            let here = Algebra::Finite(n);
            let above = Algebra::Finite(n + 1);
            let holds = is_identity(&f, here)? && identity_oracle(&f, here)?;
            let fails = !is_identity(&f, above)? && !identity_oracle(&f, above)?;
            let witness = find_witness(&f, above, seed)?;
            let certified = match &witness {
                Some((a, v)) => !v.is_zero() && evaluate(&f, above, a)? == *v,
                None => false,
            };
            passed &= holds && fails && certified;
            parts.push(match witness {
                Some((a, v)) => format!("n={n}: {} gives {v} on {above}", format_assignment(&a)),
                None => format!("n={n}: no witness"),
            });
        }
        Ok((passed, parts.join("; ")))
    })
}

/// Closed-form dimension agrees with the enumerated catalog.
pub fn dimension_formula() -> Outcome {
    outcome(3, "dimension formula", || {
        let mut passed = true;
        let mut cells = 0;
        for n in 1..=6 {
            for m in 1..=4 {
                let catalog = basis_monomials(n, m)?;
                let canonical = catalog
                    .words()
                    .all(|w| canonical_word(w, Algebra::Finite(n)).as_ref() == Some(w));
                let distinct = catalog.words().collect::<std::collections::BTreeSet<_>>().len()
                    == catalog.word_count();
                let formula = dim_relatively_free(n, m)?;
                passed &= canonical && distinct && formula == (catalog.word_count() + 1).into();
                cells += 1;
            }
        }
        let spots: Vec<String> = [(2, 1), (2, 2), (3, 2)]
            .iter()
            .map(|&(n, m)| dim_relatively_free(n, m).map(|d| d.to_string()))
            .collect::<Result<_>>()?;
        passed &= spots == ["3", "6", "11"];
        Ok((passed, format!("{cells} (n, m) cells agree; spot values {}", spots.join(", "))))
    })
}

/// `c_m(L_inf) = m`, matched against enumerated multilinear canonical words.
pub fn codimension() -> Outcome {
    outcome(4, "codimension of L_inf", || {
        let mut values = Vec::new();
        let mut passed = true;
        for m in 1..=8 {
            let formula = multilinear_codim(Algebra::Infinite, m)?;
            let counted = count_multilinear_canonical(Algebra::Infinite, m);
            passed &= formula == m && counted == m;
            values.push(counted.to_string());
        }
        Ok((passed, format!("c_1..c_8 = {}", values.join(", "))))
    })
}

fn multilinear_degree(m: usize) -> MultiDegree {
    let pairs: Vec<(u32, u32)> = (1..=m as u32).map(|k| (k, 1)).collect();
    MultiDegree::from_pairs(&pairs).expect("positive degrees")
}

fn kind_label(kind: ImageKind) -> String {
    match kind {
        ImageKind::Zero => "zero".into(),
        ImageKind::PowerIdeal(k) => format!("L^{k}"),
        ImageKind::PuncturedCone(d) => format!("cone{d}"),
    }
}

/// Multilinear images are `0`, `L^m` or `L^(m+1)`, and match exhaustive images.
pub fn multilinear_trichotomy(seed: u64) -> Outcome {
    outcome(5, "multilinear trichotomy", || {
        let mut corpus = Corpus::new(seed ^ 0x5);
        let cases = [ImageCase::Identity, ImageCase::SumZero, ImageCase::LinearHead];
        let (mut checked, mut rejected) = (0usize, 0usize);
        let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
        let mut failure = None;
        while checked < 200 {
            let m = corpus.rng().gen_range(1..=3usize);
            let n = corpus.rng().gen_range(1..=4usize);
            let algebra = Algebra::Finite(n);
            let f = if checked % 4 == 3 {
                corpus.multilinear(m, 4)
            } else {
                let md = multilinear_degree(m);
                match corpus.with_case(&md, algebra, cases[checked % 3]) {
                    Some(f) => f,
                    None => {
                        rejected += 1;
                        continue;
                    }
                }
            };
            if f.is_zero() || !(divisor_condition(&f, n, 2)? && divisor_condition(&f, n, 3)?) {
                rejected += 1;
                continue;
            }
            let descriptor = classify(&f, algebra)?.descriptor;
            let allowed = [ImageKind::Zero, ImageKind::PowerIdeal(m), ImageKind::PowerIdeal(m + 1)]
                .map(|k| ImageDescriptor::new(algebra, k));
            let mut ok = allowed.contains(&descriptor);
            for p in [2, 3] {
                let report = cross_check(&f, n, p)?;
                ok &= report.equality == Equality::Exact && report.equality_holds == Some(true);
            }
            if !ok && failure.is_none() {
                failure = Some(format!("{f} on {algebra}"));
            }
            *kinds.entry(kind_label(descriptor.kind())).or_default() += 1;
            checked += 1;
        }
        let mut detail = format!(
            "{checked} polynomials ({}), {rejected} resampled for divisors",
            kinds.iter().map(|(k, c)| format!("{k}: {c}")).collect::<Vec<_>>().join(", ")
        );
        if let Some(f) = &failure {
            detail.push_str(&format!("; first failure: {f}"));
        }
        Ok((failure.is_none(), detail))
    })
}

/// Multihomogeneous classification against exhaustive images over `F_2, F_3, F_5`.
pub fn homogeneous_classification(seed: u64) -> Outcome {
    outcome(6, "homogeneous classification", || {
        let mut corpus = Corpus::new(seed ^ 0x6);
        let cases = [ImageCase::Identity, ImageCase::SumZero, ImageCase::LinearHead, ImageCase::Cone];
        let (mut checked, mut resampled) = (0usize, 0usize);
        let (mut exact, mut skipped, mut splits) = (0usize, 0usize, 0usize);
        let (mut comparisons, mut included) = (0usize, 0usize);
        let mut by_case: BTreeMap<String, usize> = BTreeMap::new();
        let mut failure = None;
        while checked < 100 {
            let m = corpus.rng().gen_range(1..=3usize);
            let n = corpus.rng().gen_range(1..=4usize);
            if n * m > 9 {
                continue;
            }
            let algebra = Algebra::Finite(n);
            let md = corpus.multidegree(m, 4);
            let f = if checked % 5 == 4 {
                corpus.multihomogeneous(&md, 4, true)
            } else {
                match corpus.with_case(&md, algebra, cases[checked % 4]) {
                    Some(f) => f,
                    None => {
                        resampled += 1;
                        continue;
                    }
                }
            };
            if f.is_zero() {
                continue;
            }
            let cls = classify(&f, algebra)?;
            let is_cone = matches!(cls.descriptor.kind(), ImageKind::PuncturedCone(_));
            let mut cone_divisors = true;
            for p in [2, 3, 5] {
                cone_divisors &= !is_cone || divisor_condition(&f, n, p)?;
            }
            if !cone_divisors {
                resampled += 1;
                continue;
            }
            let mut ok = true;
            for p in [2, 3, 5] {
                let report = cross_check(&f, n, p)?;
                ok &= report.inclusion;
                comparisons += 1;
                included += usize::from(report.inclusion);
                match report.equality {
                    Equality::Exact => {
                        exact += 1;
                        ok &= report.equality_holds == Some(true);
                    }
                    Equality::SplitOnly => {
                        splits += 1;
                        ok &= report.equality_holds == Some(true);
                    }
                    Equality::SkippedDivisor => skipped += 1,
                }
            }
            if !ok && failure.is_none() {
                failure = Some(format!("{f} on {algebra}"));
            }
            *by_case.entry(format!("{:?}", cls.case)).or_default() += 1;
            checked += 1;
        }
        let mut detail = format!(
            "{checked} polynomials ({}); inclusion {included}/{comparisons}; {exact} exact, {splits} split, {skipped} divisor-skipped comparisons; {resampled} resampled",
            by_case.iter().map(|(k, c)| format!("{k}: {c}")).collect::<Vec<_>>().join(", ")
        );
        if let Some(f) = &failure {
            detail.push_str(&format!("; first failure: {f}"));
        }
        Ok((failure.is_none(), detail))
    })
}

fn degree_gcd(md: &MultiDegree) -> u32 {
    md.iter().fold(0, |g, (_, d)| num_integer::gcd(g, d))
}

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// A target in the image of `f`, chosen so that no irrational root is needed.
fn sample_target(corpus: &mut Corpus, f: &FreePolynomial, algebra: Algebra) -> Result<Element> {
    let cls = classify(f, algebra)?;
    let top = |lo: usize| algebra.dim().unwrap_or(lo + 3);
    Ok(match (cls.case, cls.descriptor.kind()) {
        (_, ImageKind::Zero) => Element::zero(algebra, Domain::Rational),
        (ImageCase::Cone, _) => {
            let d = cls.head.degree();
            let c = corpus.rational();
            let lead = &cls.head.alpha_sum * &c.pow(degree_gcd(&cls.head.multidegree));
            corpus.element_from(algebra, d, top(d), lead)
        }
        (_, ImageKind::PowerIdeal(k)) => {
            let lead = corpus.rational();
            let lo = corpus.rng().gen_range(k..=top(k));
            corpus.element_from(algebra, lo, top(k), lead)
        }
        (_, ImageKind::PuncturedCone(_)) => unreachable!("cones come from the cone case"),
    })
}

/// Reduces `f` and `target` mod a prime where `value` has a `g`-th root and
/// the classification survives, then solves there.
fn confirm_root_mod_p(
    f: &FreePolynomial,
    algebra: Algebra,
    target: &Element,
    g: u32,
    value: &Scalar,
) -> Result<Option<u64>> {
    let q = value.as_rational().expect("rational");
    for p in (11u64..400).filter(|&p| crate::scalar::is_prime(p)) {
        let domain = Domain::prime(p)?;
        let (Ok(fp), Ok(tp), Ok(vp)) = (f.to_domain(domain), target.to_domain(domain), domain.from_rational(q)) else {
            continue;
        };
        if vp.is_zero() || vp.nth_root(g).is_none() {
            continue;
        }
        if fp.is_zero() || classify(&fp, algebra)?.case != ImageCase::Cone {
            continue;
        }
        return match preimage(&fp, algebra, &tp)? {
            PreimageResult::Assignment(a) if evaluate(&fp, algebra, &a)? == tp => Ok(Some(p)),
            _ => Ok(None),
        };
    }
    Ok(None)
}

/// Preimages evaluate back to their targets; irrational cases report a root.
pub fn preimage_round_trip(seed: u64) -> Outcome {
    outcome(7, "preimage round trip", || {
        let mut corpus = Corpus::new(seed ^ 0x7);
        let cases = [ImageCase::SumZero, ImageCase::LinearHead, ImageCase::Cone, ImageCase::Identity];
        let (mut trips, mut needs_root, mut confirmed) = (0usize, 0usize, 0usize);
        let mut failure = None;
        while trips < 200 || needs_root < 20 {
            let algebra = if corpus.rng().gen_bool(0.2) {
                Algebra::Infinite
            } else {
                Algebra::Finite(corpus.rng().gen_range(2..=5))
            };
            let m = corpus.rng().gen_range(1..=3);
            let md = corpus.multidegree(m, 4);
            let case = if trips >= 200 { ImageCase::Cone } else { cases[trips % 4] };
            let Some(f) = corpus.with_case(&md, algebra, case) else {
                continue;
            };
            let cls = classify(&f, algebra)?;
            let g = degree_gcd(&cls.head.multidegree);

            if trips < 200 {
                let target = sample_target(&mut corpus, &f, algebra)?;
                let ok = match preimage(&f, algebra, &target)? {
                    PreimageResult::Assignment(a) => evaluate(&f, algebra, &a)? == target,
                    _ => false,
                };
                if !ok && failure.is_none() {
                    failure = Some(format!("{f} -> {target} on {algebra}"));
                }
                trips += 1;
            }

            if cls.case == ImageCase::Cone && g >= 2 && needs_root < 20 {
                let d = cls.head.degree();
                let &q = SMALL_PRIMES.choose(corpus.rng()).expect("nonempty");
                let c = corpus.rational();
                let ratio = &Scalar::rational(q as i64, 1) * &c.pow(g);
                let lead = &cls.head.alpha_sum * &ratio;
                let top = algebra.dim().unwrap_or(d + 3);
                let target = corpus.element_from(algebra, d, top, lead);
                let ok = match preimage(&f, algebra, &target)? {
                    PreimageResult::NeedsRoot { exponent, value } if exponent == g && value == ratio => {
                        let p = confirm_root_mod_p(&f, algebra, &target, g, &value)?;
                        confirmed += usize::from(p.is_some());
                        p.is_some()
                    }
                    _ => false,
                };
                if !ok && failure.is_none() {
                    failure = Some(format!("expected a root for {f} -> {target} on {algebra}"));
                }
                needs_root += 1;
            }
        }
        let mut detail = format!(
            "{trips} round trips exact; {needs_root} root-required targets, {confirmed} solved mod p"
        );
        if let Some(f) = &failure {
            detail.push_str(&format!("; first failure: {f}"));
        }
        Ok((failure.is_none(), detail))
    })
}

/// `z w^(s)` coefficient `b_1^s a_i` at `e_{i+s}`, computed by index.
fn right_power_formula(z: &Element, w: &Element, s: usize) -> Result<Element> {
    let n = z.algebra().dim().expect("finite");
    let factor = w.coeff(1).pow(s as u32);
    let pairs = (1..=n.saturating_sub(s)).map(|i| (i + s, &factor * &z.coeff(i)));
    Element::from_pairs(z.algebra(), z.domain(), pairs)
}

/// Right powers and head-coefficient evaluation match their closed forms.
pub fn closed_forms(seed: u64) -> Outcome {
    outcome(8, "closed-form evaluation", || {
        let mut corpus = Corpus::new(seed ^ 0x8);
        let mut power_ok = 0;
        for _ in 0..500 {
            let n = corpus.rng().gen_range(2..=6);
            let algebra = Algebra::Finite(n);
            let s = corpus.rng().gen_range(1..n);
            let z = corpus.element(algebra, n, 0.7);
            let w = corpus.element(algebra, n, 0.7);
            let mut folded = z.clone();
            for _ in 0..s {
                folded = folded.mul(&w)?;
            }
            let closed = right_power_formula(&z, &w, s)?;
            if folded == closed && z.right_power(&w, s)? == closed {
                power_ok += 1;
            }
        }

        let cases = [ImageCase::SumZero, ImageCase::LinearHead, ImageCase::Cone];
        let mut eval_ok = 0;
        let mut evals = 0;
        while evals < 200 {
            let algebra = if corpus.rng().gen_bool(0.25) {
                Algebra::Infinite
            } else {
                Algebra::Finite(corpus.rng().gen_range(1..=6))
            };
            let m = corpus.rng().gen_range(1..=3);
            let md = corpus.multidegree(m, 5);
            let f = if evals % 4 == 3 {
                corpus.multihomogeneous(&md, 4, false)
            } else {
                match corpus.with_case(&md, algebra, cases[evals % 3]) {
                    Some(f) => f,
                    None => continue,
                }
            };
            if f.is_zero() {
                continue;
            }
            let nf = reduce(&f, algebra);
            let head = nf.head_coefficients()?;
            let span = md.total() + 3;
            let assignment: Assignment = md.vars().map(|v| (v, corpus.element(algebra, span, 0.7))).collect();
            let direct = evaluate(&f, algebra, &assignment)?;
            let via_nf = evaluate(&nf.lift(), algebra, &assignment)?;
            let closed = closed_form_value(&head, algebra, &assignment)?;
            if direct == closed && via_nf == closed {
                eval_ok += 1;
            }
            evals += 1;
        }
        let passed = power_ok == 500 && eval_ok == 200;
        Ok((
            passed,
            format!("right powers {power_ok}/500 match; head-coefficient evaluation {eval_ok}/200 match"),
        ))
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReadingTally {
    pub constructed: usize,
    pub hits: usize,
    pub misses: usize,
    pub no_root: usize,
}

impl ReadingTally {
    pub fn validates(&self) -> bool {
        self.constructed > 0 && self.misses == 0
    }
}

/// Single-head witness: `x_i = e_1` for `i != j`, `x_j = a_1 e_1 + ...`
/// with `a_1^exponent = beta_d / sum alpha`. `None` without a root.
fn single_head_witness(
    f: &FreePolynomial,
    algebra: Algebra,
    target: &Element,
    exponent: u32,
) -> Result<Option<Assignment>> {
    let domain = f.domain();
    let cls = classify(f, algebra)?;
    let head = &cls.head;
    let d = head.degree();
    let (j, alpha_j) = head
        .alphas
        .iter()
        .find(|(_, a)| !a.is_zero())
        .cloned()
        .ok_or(Error::InvalidArgument("identity has no head".into()))?;
    let ratio = target.coeff(d).div(&head.alpha_sum)?;
    let Some(a1) = domain
        .elements()
        .expect("finite field")
        .into_iter()
        .find(|r| !r.is_zero() && r.pow(exponent) == ratio)
    else {
        return Ok(None);
    };
    let scale = (&alpha_j * &a1.pow(head.multidegree.get(j) - 1)).inv()?;
    let mut pairs = vec![(1usize, a1)];
    for (k, beta) in target.terms() {
        if k > d {
            pairs.push((k + 1 - d, &beta * &scale));
        }
    }
    let mut assignment = Assignment::new();
    for v in head.multidegree.vars() {
        let e = if v == j {
            Element::from_pairs(algebra, domain, pairs.clone())?
        } else {
            Element::basis(algebra, domain, 1)?
        };
        assignment.insert(v, e);
    }
    Ok(Some(assignment))
}

/// Decides between the exponents `d` and `d_j` for the cone witness by
/// exhaustive membership over small prime fields.
pub fn root_exponent(seed: u64) -> Outcome {
    outcome(9, "root exponent resolution", || {
        let mut corpus = Corpus::new(seed ^ 0x9);
        let (mut by_total, mut by_head) = (ReadingTally::default(), ReadingTally::default());
        let mut instances = 0;
        let mut attempts = 0;
        while instances < 30 && attempts < 10_000 {
            attempts += 1;
            let &p = [3u64, 5, 7].choose(corpus.rng()).expect("nonempty");
            let n = 4;
            let algebra = Algebra::Finite(n);
            let shape = *[[2u32, 1], [1, 2], [2, 2]].choose(corpus.rng()).expect("nonempty");
            let md = MultiDegree::from_pairs(&[(1, shape[0]), (2, shape[1])])?;
            let Some(f) = corpus.with_case(&md, algebra, ImageCase::Cone) else {
                continue;
            };
            let domain = Domain::prime(p)?;
            let fp = f.to_domain(domain)?;
            if !divisor_condition(&f, n, p)? {
                continue;
            }
            let cls = classify(&fp, algebra)?;
            let head = &cls.head;
            let d = head.degree();
            let (j, _) = head.alphas.iter().find(|(_, a)| !a.is_zero()).cloned().expect("cone");
            let d_j = head.multidegree.get(j);
            if d_j as usize == d || d >= n {
                continue;
            }
            let image = brute_force_image(&fp, n, p)?;
            let candidates: Vec<Element> = image
                .elements()
                .into_iter()
                .filter(|u| !u.coeff(d).is_zero())
                .collect();
            let Some(target) = candidates.choose(corpus.rng()).cloned() else {
                continue;
            };
            for (exponent, tally) in [(d as u32, &mut by_total), (d_j, &mut by_head)] {
                match single_head_witness(&fp, algebra, &target, exponent)? {
                    None => tally.no_root += 1,
                    Some(a) => {
                        tally.constructed += 1;
                        let value = evaluate(&fp, algebra, &a)?;
                        if value == target && image.contains(&value) {
                            tally.hits += 1;
                        } else {
                            tally.misses += 1;
                        }
                    }
                }
            }
            instances += 1;
        }
        let verdict = match (by_total.validates(), by_head.validates()) {
            (false, true) => Some("d_j"),
            (true, false) => Some("d"),
            _ => None,
        };
        let detail = format!(
            "{instances} instances; exponent d: {}/{} witnesses hit ({} without root); exponent d_j: {}/{} hit ({} without root); verdict: {}",
            by_total.hits,
            by_total.constructed,
            by_total.no_root,
            by_head.hits,
            by_head.constructed,
            by_head.no_root,
            verdict.unwrap_or("undetermined")
        );
        Ok((instances >= 20 && verdict.is_some(), detail))
    })
}
