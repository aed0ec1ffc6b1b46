//! Rewriting to left-normed words and to the canonical normal form modulo the
//! identities of `L_n` or `L_inf`.
//!
//! `left_norm` applies `x(yz) -> (xy)z - (xz)y` until every right factor is a
//! variable. `normal_form` then reduces each word:
//!
//! * length > n on `L_n`: dropped;
//! * length n on `L_n`: fully sorted;
//! * otherwise: head kept, tail sorted nondecreasing.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, LNPolynomial, LeftNormedWord, MultiDegree, Poly, Term, VarIndex};

/// Counters collected while left-norming.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub rule_applications: u64,
}

pub fn left_norm(f: &FreePolynomial) -> LNPolynomial {
    left_norm_with_stats(f).0
}

pub fn left_norm_with_stats(f: &FreePolynomial) -> (LNPolynomial, RewriteStats) {
    let mut stats = RewriteStats::default();
    let domain = f.domain();
    let mut out = Poly::zero(domain);
    for (t, c) in f.iter() {
        for (w, k) in left_norm_term(t, &mut stats) {
            out.add_term(w, c * &int_scalar(domain, k));
        }
    }
    (out, stats)
}

fn int_scalar(domain: Domain, k: i128) -> Scalar {
    match i64::try_from(k) {
        Ok(v) => domain.from_i64(v),
        Err(_) => {
            let q = num_rational::BigRational::from_integer(k.into());
            domain.from_rational(&q).expect("integer is invertible-denominator")
        }
    }
}

/// Integer combination of left-normed words equal to `t` modulo the Leibniz identity.
fn left_norm_term(t: &Term, stats: &mut RewriteStats) -> HashMap<LeftNormedWord, i128> {
    if let Some(w) = t.as_left_normed() {
        return HashMap::from([(w, 1)]);
    }
    let Term::Node(a, b) = t else {
        unreachable!("leaves are left-normed")
    };
    let la = left_norm_term(a, stats);
    let lb = left_norm_term(b, stats);
    let mut out = HashMap::new();
    for (u, cu) in &la {
        for (w, cw) in &lb {
            mul_words(u.letters(), w.letters(), &[], cu * cw, &mut out, stats);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Accumulates `coeff * (u w) suffix` where `u`, `w` are left-normed and the
/// suffix letters are appended one by one on the right.
///
/// `u (w' z) = (u w') z - (u z) w'`; each call strictly shortens `w`.
fn mul_words(
    u: &[VarIndex],
    w: &[VarIndex],
    suffix: &[VarIndex],
    coeff: i128,
    out: &mut HashMap<LeftNormedWord, i128>,
    stats: &mut RewriteStats,
) {
    if w.len() == 1 {
        let mut letters = Vec::with_capacity(u.len() + 1 + suffix.len());
        letters.extend_from_slice(u);
        letters.push(w[0]);
        letters.extend_from_slice(suffix);
        let word = LeftNormedWord::new(letters).expect("nonempty");
        *out.entry(word).or_insert(0) += coeff;
        return;
    }
    stats.rule_applications += 1;
    let (rest, z) = w.split_at(w.len() - 1);
    let mut zs = Vec::with_capacity(suffix.len() + 1);
    zs.push(z[0]);
    zs.extend_from_slice(suffix);
    mul_words(u, rest, &zs, coeff, out, stats);
    let mut uz = u.to_vec();
    uz.push(z[0]);
    mul_words(&uz, rest, suffix, -coeff, out, stats);
}

/// Canonical representative of a word modulo the identities of `algebra`,
/// or `None` when the word is itself an identity.
pub fn canonical_word(word: &LeftNormedWord, algebra: Algebra) -> Option<LeftNormedWord> {
    let len = word.len();
    if let Algebra::Finite(n) = algebra {
        if len > n {
            return None;
        }
        if len == n {
            let mut letters = word.letters().to_vec();
            letters.sort();
            return Some(LeftNormedWord::new(letters).expect("nonempty"));
        }
    }
    let mut letters = word.letters().to_vec();
    letters[1..].sort();
    Some(LeftNormedWord::new(letters).expect("nonempty"))
}

/// A polynomial reduced to canonical words for a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormPoly {
    algebra: Algebra,
    poly: LNPolynomial,
    multidegree: Option<MultiDegree>,
}

pub fn normal_form(ln: &LNPolynomial, algebra: Algebra) -> NormalFormPoly {
    let mut poly = Poly::zero(ln.domain());
    for (w, c) in ln.iter() {
        if let Some(cw) = canonical_word(w, algebra) {
            poly.add_term(cw, c.clone());
        }
    }
    NormalFormPoly {
        algebra,
        poly,
        multidegree: ln.multidegree().ok(),
    }
}

/// `normal_form(left_norm(f))`, remembering the multidegree of `f` when it has one.
pub fn reduce(f: &FreePolynomial, algebra: Algebra) -> NormalFormPoly {
    let mut nf = normal_form(&left_norm(f), algebra);
    nf.multidegree = f.multidegree().ok();
    nf
}

impl NormalFormPoly {
    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn poly(&self) -> &LNPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn multidegree(&self) -> Option<&MultiDegree> {
        self.multidegree.as_ref()
    }

    /// Re-reads the canonical words as free terms.
    pub fn lift(&self) -> FreePolynomial {
        self.poly.to_free()
    }

    /// Head coefficients for a multihomogeneous input.
    pub fn head_coefficients(&self) -> Result<HeadCoefficients> {
        let md = self.multidegree.clone().ok_or(Error::NotHomogeneous)?;
        let domain = self.poly.domain();
        let d = md.total();
        let smallest = md.vars().next().expect("nonempty multidegree");
        let full_degree = matches!(self.algebra, Algebra::Finite(n) if d == n);
        let mut alphas = Vec::with_capacity(md.num_vars());
        for j in md.vars() {
            let alpha = if full_degree && j != smallest {
                domain.zero()
            } else {
                match canonical_word(&head_word(&md, j), self.algebra) {
                    Some(w) => self.poly.coefficient(&w),
                    None => domain.zero(),
                }
            };
            alphas.push((j, alpha));
        }
        let alpha_sum = alphas
            .iter()
            .fold(domain.zero(), |acc, (_, a)| &acc + a);
        Ok(HeadCoefficients {
            multidegree: md,
            alphas,
            alpha_sum,
        })
    }
}

impl fmt::Display for NormalFormPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// The word `x_j` followed by the remaining letters of `md` in sorted order.
pub fn head_word(md: &MultiDegree, j: VarIndex) -> LeftNormedWord {
    let mut letters = vec![j];
    let mut skipped = false;
    for v in md.sorted_letters() {
        if v == j && !skipped {
            skipped = true;
            continue;
        }
        letters.push(v);
    }
    LeftNormedWord::new(letters).expect("nonempty")
}

/// Coefficients of a multihomogeneous normal form
/// `sum_j alpha_j x_j x_1^(d_1) ... x_j^(d_j - 1) ... x_m^(d_m)`.
///
/// When the total degree equals `n` on `L_n` all mass sits on the smallest
/// variable; when it exceeds `n` every alpha is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadCoefficients {
    pub multidegree: MultiDegree,
    /// One entry per variable of the multidegree, in increasing index order.
    pub alphas: Vec<(VarIndex, Scalar)>,
    pub alpha_sum: Scalar,
}

impl HeadCoefficients {
    pub fn degree(&self) -> usize {
        self.multidegree.total()
    }

    pub fn alpha(&self, v: VarIndex) -> Option<&Scalar> {
        self.alphas.iter().find(|(u, _)| *u == v).map(|(_, a)| a)
    }

    /// Variables with `d_j = 1`.
    pub fn linear_vars(&self) -> Vec<VarIndex> {
        self.multidegree
            .iter()
            .filter(|(_, d)| *d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn all_zero(&self) -> bool {
        self.alphas.iter().all(|(_, a)| a.is_zero())
    }
}

/// Decides membership in the T-ideal of identities of `algebra` by reducing
/// each multihomogeneous component. Only valid over an infinite field.
pub fn is_identity(f: &FreePolynomial, algebra: Algebra) -> Result<bool> {
    if !f.domain().is_rational() {
        return Err(Error::FiniteFieldIdentity(f.domain().to_string()));
    }
    Ok(f
        .homogeneous_components()
        .values()
        .all(|part| reduce(part, algebra).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::x;
    use crate::text::parse;

    fn w(ix: &[u32]) -> LeftNormedWord {
        LeftNormedWord::from_indices(ix)
    }

    fn ln(pairs: &[(&[u32], i64)]) -> LNPolynomial {
        let q = Domain::Rational;
        Poly::from_terms(q, pairs.iter().map(|(ix, c)| (w(ix), q.from_i64(*c)))).unwrap()
    }

    #[test]
    fn leibniz_rule_on_right_nested_cube() {
        assert_eq!(left_norm(&parse("x1 (x2 x3)").unwrap()), ln(&[(&[1, 2, 3], 1), (&[1, 3, 2], -1)]));
    }

    #[test]
    fn left_normed_input_unchanged() {
        assert_eq!(left_norm(&parse("x1").unwrap()), ln(&[(&[1], 1)]));
        assert_eq!(left_norm(&parse("x3 x1 x2").unwrap()), ln(&[(&[3, 1, 2], 1)]));
    }

    #[test]
    fn product_of_two_products() {
        let got = left_norm(&parse("(x1 x2)(x3 x4)").unwrap());
        assert_eq!(got, ln(&[(&[1, 2, 3, 4], 1), (&[1, 2, 4, 3], -1)]));
    }

    #[test]
    fn deeper_right_nesting() {
        // x1((x2 x3) x4) = (x1 (x2 x3)) x4 - (x1 x4)(x2 x3)
        //               = x1x2x3x4 - x1x3x2x4 - x1x4x2x3 + x1x4x3x2
        let got = left_norm(&parse("x1 ((x2 x3) x4)").unwrap());
        let want = ln(&[
            (&[1, 2, 3, 4], 1),
            (&[1, 3, 2, 4], -1),
            (&[1, 4, 2, 3], -1),
            (&[1, 4, 3, 2], 1),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn canonical_words() {
        let f3 = Algebra::Finite(3);
        assert_eq!(canonical_word(&w(&[2, 1, 3]), f3), Some(w(&[1, 2, 3])));
        assert_eq!(canonical_word(&w(&[1, 3, 2]), Algebra::Finite(4)), Some(w(&[1, 2, 3])));
        assert_eq!(canonical_word(&w(&[1, 2, 3]), Algebra::Finite(2)), None);
        assert_eq!(canonical_word(&w(&[2, 1, 3]), Algebra::Finite(4)), Some(w(&[2, 1, 3])));
        assert_eq!(canonical_word(&w(&[3, 2, 1, 2]), Algebra::Infinite), Some(w(&[3, 1, 2, 2])));
        assert_eq!(canonical_word(&w(&[5]), Algebra::Finite(1)), Some(w(&[5])));
    }

    #[test]
    fn head_coefficients_of_commutator() {
        for n in 3..6 {
            let nf = reduce(&parse("x1 x2 - x2 x1").unwrap(), Algebra::Finite(n));
            let h = nf.head_coefficients().unwrap();
            assert_eq!(h.alpha(x(1)), Some(&Scalar::rational(1, 1)));
            assert_eq!(h.alpha(x(2)), Some(&Scalar::rational(-1, 1)));
            assert!(h.alpha_sum.is_zero());
        }
    }

    #[test]
    fn head_coefficients_single_monomials() {
        let h = reduce(&parse("x1 x2").unwrap(), Algebra::Finite(4)).head_coefficients().unwrap();
        assert!(h.alpha(x(1)).unwrap().is_one());
        assert!(h.alpha(x(2)).unwrap().is_zero());
        assert!(h.alpha_sum.is_one());

        let h = reduce(&parse("x1 x1").unwrap(), Algebra::Finite(4)).head_coefficients().unwrap();
        assert!(h.alpha(x(1)).unwrap().is_one());
        assert!(h.alpha_sum.is_one());
        assert!(h.linear_vars().is_empty());
    }

    #[test]
    fn head_coefficients_at_full_degree_go_to_smallest_variable() {
        let h = reduce(&parse("x2 x1 + 3 x1 x2").unwrap(), Algebra::Finite(2))
            .head_coefficients()
            .unwrap();
        assert_eq!(h.alpha(x(1)), Some(&Scalar::rational(4, 1)));
        assert!(h.alpha(x(2)).unwrap().is_zero());
    }

    #[test]
    fn head_coefficients_reject_inhomogeneous() {
        let nf = reduce(&parse("x1 x2 + x1").unwrap(), Algebra::Finite(4));
        assert_eq!(nf.head_coefficients(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn identities() {
        for alg in [Algebra::Finite(2), Algebra::Finite(3), Algebra::Finite(5), Algebra::Infinite] {
            assert!(is_identity(&parse("x1 (x2 x3)").unwrap(), alg).unwrap());
        }
        let g = parse("x1 x2 x3 - x2 x1 x3").unwrap();
        assert!(is_identity(&g, Algebra::Finite(3)).unwrap());
        assert!(!is_identity(&g, Algebra::Finite(4)).unwrap());
        assert!(!is_identity(&g, Algebra::Infinite).unwrap());
        // inhomogeneous: each component is checked
        let h = parse("x1 (x2 x3) + x1 x2 x3 x4 x5").unwrap();
        assert!(is_identity(&h, Algebra::Finite(4)).unwrap());
        assert!(!is_identity(&h, Algebra::Finite(5)).unwrap());
    }

    #[test]
    fn identity_over_finite_field_rejected() {
        let f = crate::text::parse_in("x1 x2", Domain::Prime(5)).unwrap();
        assert!(matches!(is_identity(&f, Algebra::Finite(3)), Err(Error::FiniteFieldIdentity(_))));
    }
}
