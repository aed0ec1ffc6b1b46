//! Images of multihomogeneous polynomials on `L_n` and `L_inf`.
//!
//! Writing `f` modulo the identities as `sum_j alpha_j x_j x_1^(d_1) ... x_m^(d_m)`
//! (one head occurrence of `x_j` removed from the tail), and substituting
//! `x_k -> sum_i a_{i,k} e_i` with `b_k = a_{1,k}`, gives
//!
//! ```text
//! f = sum_j alpha_j * prod_l b_l^(d_l - [l = j]) * sum_i a_{i,j} e_{i+d-1}
//! ```
//!
//! so the `e_d` coefficient is `(sum alpha) * prod b_l^(d_l)`. The image is
//!
//! * `{0}` when `f` is an identity;
//! * `L^(d+1)` when `sum alpha = 0`;
//! * `L^d` when `sum alpha != 0` and some `alpha_j != 0` has `d_j = 1`;
//! * `{0} ∪ (K* e_d + L^(d+1))` otherwise, over an algebraically closed field.
//!
//! Over a general field the last case is exactly the set of `u` in `L^d` with
//! `u = 0` or `beta_d / sum alpha` a nonzero `g`-th power, `g = gcd(d_l)`.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::model::{evaluate, Assignment, Element};
use crate::rewrite::{reduce, HeadCoefficients};
use crate::scalar::Scalar;
use crate::term::{FreePolynomial, VarIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImageKind {
    Zero,
    /// `L^k`.
    PowerIdeal(usize),
    /// `{0} ∪ (K* e_d + L^(d+1))`.
    PuncturedCone(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImageDescriptor {
    algebra: Algebra,
    kind: ImageKind,
}

impl ImageDescriptor {
    /// Canonicalizes: on `L_n`, `L^k` with `k > n` and cones past `n` become
    /// `Zero`; the cone at `n` is `span{e_n}`, stored as `L^n`.
    pub fn new(algebra: Algebra, kind: ImageKind) -> Self {
        let kind = match (algebra, kind) {
            (Algebra::Finite(n), ImageKind::PowerIdeal(k)) if k > n => ImageKind::Zero,
            (Algebra::Finite(n), ImageKind::PuncturedCone(d)) if d > n => ImageKind::Zero,
            (Algebra::Finite(n), ImageKind::PuncturedCone(d)) if d == n => ImageKind::PowerIdeal(n),
            (_, k) => k,
        };
        ImageDescriptor { algebra, kind }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn kind(&self) -> ImageKind {
        self.kind
    }

    pub fn is_subspace(&self) -> bool {
        !matches!(self.kind, ImageKind::PuncturedCone(_))
    }

    /// JSON form; `closure_required` is emitted for cones.
    pub fn to_json(&self) -> Value {
        match self.kind {
            ImageKind::Zero => json!({ "kind": "zero" }),
            ImageKind::PowerIdeal(k) => json!({ "kind": "power_ideal", "k": k }),
            ImageKind::PuncturedCone(d) => {
                json!({ "kind": "punctured_cone", "d": d, "closure_required": true })
            }
        }
    }

    pub fn from_json(v: &Value, algebra: Algebra) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("descriptor json: {v}"));
        let num = |key: &str| v[key].as_u64().map(|x| x as usize).ok_or_else(bad);
        let kind = match v["kind"].as_str() {
            Some("zero") => ImageKind::Zero,
            Some("power_ideal") => ImageKind::PowerIdeal(num("k")?),
            Some("punctured_cone") => ImageKind::PuncturedCone(num("d")?),
            _ => return Err(bad()),
        };
        Ok(ImageDescriptor::new(algebra, kind))
    }
}

impl fmt::Display for ImageDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ImageKind::Zero => write!(f, "zero"),
            ImageKind::PowerIdeal(k) => write!(f, "power_ideal k={k}"),
            ImageKind::PuncturedCone(d) => write!(f, "punctured_cone d={d}"),
        }
    }
}

/// Membership of `u` in the set a descriptor stands for (over an
/// algebraically closed field for cones).
pub fn realize(descriptor: &ImageDescriptor, u: &Element) -> bool {
    if u.algebra() != descriptor.algebra {
        return false;
    }
    let low = match u.lowest_index() {
        None => return true,
        Some(low) => low,
    };
    match descriptor.kind {
        ImageKind::Zero => false,
        ImageKind::PowerIdeal(k) => low >= k,
        ImageKind::PuncturedCone(d) => low == d,
    }
}

/// Which branch of the classification applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImageCase {
    Identity,
    /// `sum alpha = 0`, not an identity.
    SumZero,
    /// `sum alpha != 0` with a nonzero `alpha_j` on a variable of degree 1.
    LinearHead,
    /// `sum alpha != 0`, every nonzero `alpha_j` has `d_j >= 2`.
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub descriptor: ImageDescriptor,
    pub case: ImageCase,
    pub head: HeadCoefficients,
    /// The descriptor is the image only over an algebraically closed field.
    pub closure_required: bool,
}

impl Classification {
    pub fn to_json(&self) -> Value {
        self.descriptor.to_json()
    }
}

pub fn classify(f: &FreePolynomial, algebra: Algebra) -> Result<Classification> {
    f.multidegree()?;
    let nf = reduce(f, algebra);
    let head = nf.head_coefficients()?;
    let d = head.degree();
    let case = if nf.is_zero() {
        ImageCase::Identity
    } else if head.alpha_sum.is_zero() {
        ImageCase::SumZero
    } else if linear_head(&head).is_some() {
        ImageCase::LinearHead
    } else {
        ImageCase::Cone
    };
    let kind = match case {
        ImageCase::Identity => ImageKind::Zero,
        ImageCase::SumZero => ImageKind::PowerIdeal(d + 1),
        ImageCase::LinearHead => ImageKind::PowerIdeal(d),
        ImageCase::Cone => ImageKind::PuncturedCone(d),
    };
    Ok(Classification {
        descriptor: ImageDescriptor::new(algebra, kind),
        case,
        head,
        closure_required: case == ImageCase::Cone,
    })
}

fn linear_head(head: &HeadCoefficients) -> Option<(VarIndex, Scalar)> {
    head.alphas
        .iter()
        .find(|(v, a)| !a.is_zero() && head.multidegree.get(*v) == 1)
        .cloned()
}

fn first_nonzero_head(head: &HeadCoefficients) -> Option<(VarIndex, Scalar)> {
    head.alphas.iter().find(|(_, a)| !a.is_zero()).cloned()
}

/// Why a target is outside the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotInImage {
    /// Support below the least index the image reaches.
    WrongSupport,
    /// Nonzero target with vanishing `e_d` coefficient in the cone case.
    BetaDZero,
    /// `f` is an identity and the target is nonzero.
    IdentityNonzeroTarget,
}

impl NotInImage {
    pub fn tag(&self) -> &'static str {
        match self {
            NotInImage::WrongSupport => "wrong_support",
            NotInImage::BetaDZero => "beta_d_zero",
            NotInImage::IdentityNonzeroTarget => "identity_nonzero_target",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreimageResult {
    Assignment(Assignment),
    NotInImage(NotInImage),
    /// A witness needs `r` with `r^exponent = value`, which the field lacks.
    NeedsRoot { exponent: u32, value: Scalar },
}

/// Constructs an assignment with `f(assignment) = target`, or explains why
/// none exists.
///
/// All variables but the head `x_j` are sent to multiples of `e_1`; the head
/// carries the tail coefficients.
pub fn preimage(f: &FreePolynomial, algebra: Algebra, target: &Element) -> Result<PreimageResult> {
    algebra.check_same(&target.algebra())?;
    let domain = f.domain();
    if target.domain() != domain {
        return Err(Error::MixedDomains(domain.to_string(), target.domain().to_string()));
    }
    let cls = classify(f, algebra)?;
    let head = &cls.head;
    let md = &head.multidegree;
    let d = head.degree();

    if target.is_zero() {
        let zero = Element::zero(algebra, domain);
        return Ok(PreimageResult::Assignment(md.vars().map(|v| (v, zero.clone())).collect()));
    }
    if !realize(&cls.descriptor, target) {
        let reason = match cls.descriptor.kind() {
            ImageKind::Zero => NotInImage::IdentityNonzeroTarget,
            ImageKind::PuncturedCone(d) if target.lowest_index().is_some_and(|low| low > d) => {
                NotInImage::BetaDZero
            }
            _ => NotInImage::WrongSupport,
        };
        return Ok(PreimageResult::NotInImage(reason));
    }

    let beta_d = target.coeff(d);
    let one = domain.one();
    // (head variable, alpha_j, first coordinates b_l for every variable)
    let (j, alpha_j, firsts): (VarIndex, Scalar, Vec<(VarIndex, Scalar)>) = match cls.case {
        ImageCase::Identity => unreachable!("nonzero target realized by zero descriptor"),
        ImageCase::SumZero => {
            // A degree-1 head needs no e_1 component; otherwise its first
            // coordinate must be nonzero.
            let (j, a, b_j) = match linear_head(head) {
                Some((j, a)) => (j, a, domain.zero()),
                None => {
                    let (j, a) = first_nonzero_head(head).expect("not an identity");
                    (j, a, one.clone())
                }
            };
            let firsts = md
                .vars()
                .map(|v| (v, if v == j { b_j.clone() } else { one.clone() }))
                .collect();
            (j, a, firsts)
        }
        ImageCase::LinearHead => {
            let (j, a) = linear_head(head).expect("linear head");
            let b_j = beta_d.div(&head.alpha_sum)?;
            let firsts = md
                .vars()
                .map(|v| (v, if v == j { b_j.clone() } else { one.clone() }))
                .collect();
            (j, a, firsts)
        }
        ImageCase::Cone => {
            let (j, a) = first_nonzero_head(head).expect("not an identity");
            let ratio = beta_d.div(&head.alpha_sum)?;
            let degrees: Vec<u32> = md.iter().map(|(_, dv)| dv).collect();
            let (g, bezout) = gcd_bezout(&degrees);
            let Some(c) = ratio.nth_root(g) else {
                return Ok(PreimageResult::NeedsRoot {
                    exponent: g,
                    value: ratio,
                });
            };
            let firsts = md
                .vars()
                .zip(bezout)
                .map(|(v, u)| Ok((v, c.powi(u)?)))
                .collect::<Result<Vec<_>>>()?;
            (j, a, firsts)
        }
    };

    // prod_{l != j} b_l^(d_l) * b_j^(d_j - 1)
    let mut cofactor = one.clone();
    for (v, b) in &firsts {
        let e = md.get(*v) - u32::from(*v == j);
        cofactor = &cofactor * &b.pow(e);
    }
    let scale = (&alpha_j * &cofactor).inv()?;

    let mut assignment = Assignment::new();
    for (v, b) in &firsts {
        let mut pairs = vec![(1usize, b.clone())];
        if *v == j {
            for (k, beta) in target.terms() {
                if k > d {
                    pairs.push((k + 1 - d, &beta * &scale));
                }
            }
        }
        assignment.insert(*v, Element::from_pairs(algebra, domain, pairs)?);
    }
    debug_assert_eq!(evaluate(f, algebra, &assignment).as_ref(), Ok(target));
    Ok(PreimageResult::Assignment(assignment))
}

/// `g = gcd(ds)` and integers `u` with `sum u_i ds_i = g`.
fn gcd_bezout(ds: &[u32]) -> (u32, Vec<i64>) {
    let mut g = ds[0] as i64;
    let mut coeffs = vec![0i64; ds.len()];
    coeffs[0] = 1;
    for (i, &d) in ds.iter().enumerate().skip(1) {
        let (h, s, t) = ext_gcd(g, d as i64);
        for c in coeffs.iter_mut().take(i) {
            *c *= s;
        }
        coeffs[i] = t;
        g = h;
    }
    (g as u32, coeffs)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Value of `f` at `assignment` read off the head coefficients alone:
/// `sum_j alpha_j * prod_l b_l^(d_l - [l = j]) * shift^(d-1)(v_j)`.
pub fn closed_form_value(
    head: &HeadCoefficients,
    algebra: Algebra,
    assignment: &Assignment,
) -> Result<Element> {
    let domain = head.alpha_sum.domain();
    let d = head.degree();
    let mut acc = Element::zero(algebra, domain);
    for (j, alpha) in &head.alphas {
        if alpha.is_zero() {
            continue;
        }
        let mut factor = alpha.clone();
        for (v, dv) in head.multidegree.iter() {
            let b = assignment
                .get(&v)
                .ok_or(Error::UnassignedVariable(v.get()))?
                .coeff(1);
            factor = &factor * &b.pow(dv - u32::from(v == *j));
        }
        let v_j = assignment.get(j).ok_or(Error::UnassignedVariable(j.get()))?;
        acc = acc.add(&v_j.shift(d - 1, &factor))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;
    use crate::term::x;
    use crate::text::parse;

    const Q: Domain = Domain::Rational;

    fn el(alg: Algebra, s: &str) -> Element {
        Element::parse(s, alg, Q).unwrap()
    }

    fn kind(f: &str, n: usize) -> ImageKind {
        classify(&parse(f).unwrap(), Algebra::Finite(n)).unwrap().descriptor.kind()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(kind("x1 x2 - x2 x1", 3), ImageKind::PowerIdeal(3));
        for n in 2..6 {
            assert_eq!(kind("x1 x2", n), ImageKind::PowerIdeal(2));
        }
        assert_eq!(kind("x1^2", 3), ImageKind::PuncturedCone(2));
        assert_eq!(kind("x1 x2^2", 3), ImageKind::PowerIdeal(3));
        assert_eq!(kind("x1 (x2 x3)", 4), ImageKind::Zero);
        assert_eq!(kind("x1^2", 2), ImageKind::PowerIdeal(2));
        assert_eq!(kind("x1 x2 x3", 2), ImageKind::Zero);
    }

    #[test]
    fn cone_flag_survives_canonicalization() {
        let c = classify(&parse("x1^2").unwrap(), Algebra::Finite(2)).unwrap();
        assert_eq!(c.case, ImageCase::Cone);
        assert!(c.closure_required);
        assert_eq!(c.descriptor.kind(), ImageKind::PowerIdeal(2));
    }

    #[test]
    fn classify_rejects_inhomogeneous() {
        let f = parse("x1 x2 + x1").unwrap();
        assert_eq!(classify(&f, Algebra::Finite(3)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn realize_examples() {
        let l = Algebra::Finite(4);
        let cone = ImageDescriptor::new(l, ImageKind::PuncturedCone(2));
        assert!(realize(&cone, &Element::zero(l, Q)));
        assert!(!realize(&cone, &el(l, "e3")));
        assert!(realize(&cone, &el(l, "2 e2 + e4")));
        let p3 = ImageDescriptor::new(l, ImageKind::PowerIdeal(3));
        assert!(realize(&p3, &el(l, "e3 + e4")));
        assert!(!realize(&p3, &el(l, "e2")));
    }

    #[test]
    fn preimage_of_commutator() {
        let l = Algebra::Finite(3);
        let f = parse("x1 x2 - x2 x1").unwrap();
        let PreimageResult::Assignment(a) = preimage(&f, l, &el(l, "e3")).unwrap() else {
            panic!("expected assignment");
        };
        assert_eq!(a[&x(1)], el(l, "e2"));
        assert_eq!(a[&x(2)], el(l, "e1"));
        assert_eq!(evaluate(&f, l, &a).unwrap(), el(l, "e3"));
    }

    #[test]
    fn preimage_of_square() {
        let l = Algebra::Finite(3);
        let f = parse("x1^2").unwrap();
        let target = el(l, "4 e2 + 6 e3");
        let PreimageResult::Assignment(a) = preimage(&f, l, &target).unwrap() else {
            panic!("expected assignment");
        };
        assert_eq!(a[&x(1)], el(l, "2 e1 + 3 e2"));
        assert_eq!(evaluate(&f, l, &a).unwrap(), target);

        assert_eq!(
            preimage(&f, l, &el(l, "e3")).unwrap(),
            PreimageResult::NotInImage(NotInImage::BetaDZero)
        );
        assert_eq!(
            preimage(&f, l, &el(l, "e1")).unwrap(),
            PreimageResult::NotInImage(NotInImage::WrongSupport)
        );
        assert_eq!(
            preimage(&f, l, &el(l, "2 e2")).unwrap(),
            PreimageResult::NeedsRoot {
                exponent: 2,
                value: Scalar::rational(2, 1)
            }
        );
    }

    #[test]
    fn preimage_identity_target() {
        let l = Algebra::Finite(3);
        let f = parse("x1 (x2 x3)").unwrap();
        assert_eq!(
            preimage(&f, l, &el(l, "e2")).unwrap(),
            PreimageResult::NotInImage(NotInImage::IdentityNonzeroTarget)
        );
        let PreimageResult::Assignment(a) = preimage(&f, l, &Element::zero(l, Q)).unwrap() else {
            panic!()
        };
        assert!(evaluate(&f, l, &a).unwrap().is_zero());
    }

    #[test]
    fn cone_with_coprime_degrees_needs_no_root() {
        // x1^2 x2^3 with the head on x1: every nonzero beta_d is reachable
        let l = Algebra::Finite(7);
        let f = parse("x1^2 x2^3").unwrap();
        let c = classify(&f, l).unwrap();
        assert_eq!(c.case, ImageCase::Cone);
        let target = el(l, "2 e5 + e6 - 3 e7");
        let PreimageResult::Assignment(a) = preimage(&f, l, &target).unwrap() else {
            panic!("expected assignment");
        };
        assert_eq!(evaluate(&f, l, &a).unwrap(), target);
    }

    #[test]
    fn preimage_over_infinite_algebra() {
        let l = Algebra::Infinite;
        let f = parse("x1 x2^2 - x2 x1 x2").unwrap();
        let target = el(l, "e4 - 5 e9");
        let c = classify(&f, l).unwrap();
        assert_eq!(c.descriptor.kind(), ImageKind::PowerIdeal(4));
        let PreimageResult::Assignment(a) = preimage(&f, l, &target).unwrap() else {
            panic!("expected assignment");
        };
        assert_eq!(evaluate(&f, l, &a).unwrap(), target);
    }

    #[test]
    fn bezout() {
        assert_eq!(gcd_bezout(&[4]), (4, vec![1]));
        let (g, u) = gcd_bezout(&[4, 6, 9]);
        assert_eq!(g, 1);
        assert_eq!(u[0] * 4 + u[1] * 6 + u[2] * 9, 1);
    }

    #[test]
    fn descriptor_json() {
        let l = Algebra::Finite(5);
        for kind in [ImageKind::Zero, ImageKind::PowerIdeal(3), ImageKind::PuncturedCone(2)] {
            let d = ImageDescriptor::new(l, kind);
            assert_eq!(ImageDescriptor::from_json(&d.to_json(), l).unwrap(), d);
        }
        assert_eq!(
            ImageDescriptor::new(l, ImageKind::PuncturedCone(2)).to_json(),
            json!({"kind": "punctured_cone", "d": 2, "closure_required": true})
        );
    }
}
