//! Concrete arithmetic in `L_n` and `L_inf`.
//!
//! `(sum a_i e_i)(sum b_j e_j) = b_1 * sum_i a_i e_{i+1}`, with `e_{n+1} = 0` on
//! `L_n`. Evaluation here is structural and never consults the rewriter.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, Term, VarIndex};
use crate::text;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coeffs {
    /// `a_1..a_n` for `L_n`.
    Dense(Vec<Scalar>),
    /// Nonzero coefficients for `L_inf`.
    Sparse(BTreeMap<usize, Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: Algebra,
    domain: Domain,
    coeffs: Coeffs,
}

impl Element {
    pub fn zero(algebra: Algebra, domain: Domain) -> Element {
        let coeffs = match algebra {
            Algebra::Finite(n) => Coeffs::Dense(vec![domain.zero(); n]),
            Algebra::Infinite => Coeffs::Sparse(BTreeMap::new()),
        };
        Element {
            algebra,
            domain,
            coeffs,
        }
    }

    /// The basis vector `e_k`.
    pub fn basis(algebra: Algebra, domain: Domain, k: usize) -> Result<Element> {
        Element::from_pairs(algebra, domain, [(k, domain.one())])
    }

    /// Sums `c * e_k` over the pairs; indices must be valid for the algebra.
    pub fn from_pairs(
        algebra: Algebra,
        domain: Domain,
        pairs: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Element> {
        let mut out = Element::zero(algebra, domain);
        for (k, c) in pairs {
            if c.domain() != domain {
                return Err(Error::MixedDomains(domain.to_string(), c.domain().to_string()));
            }
            out.check_index(k)?;
            let cur = out.coeff(k);
            out.set(k, &cur + &c);
        }
        Ok(out)
    }

    pub fn from_rationals(
        algebra: Algebra,
        domain: Domain,
        pairs: &[(usize, BigRational)],
    ) -> Result<Element> {
        let mapped = pairs
            .iter()
            .map(|(k, q)| Ok((*k, domain.from_rational(q)?)))
            .collect::<Result<Vec<_>>>()?;
        Element::from_pairs(algebra, domain, mapped)
    }

    /// Parses `"2*e1 - 1/3 e4"`.
    pub fn parse(text: &str, algebra: Algebra, domain: Domain) -> Result<Element> {
        Element::from_rationals(algebra, domain, &text::parse_element_terms(text)?)
    }

    /// Dense coefficients `a_1..a_n`, e.g. for `L_n` over `F_p`.
    pub fn from_dense(algebra: Algebra, domain: Domain, coeffs: Vec<Scalar>) -> Result<Element> {
        Element::from_pairs(algebra, domain, coeffs.into_iter().enumerate().map(|(i, c)| (i + 1, c)))
    }

    /// Reinterprets rational coefficients in `domain`.
    pub fn to_domain(&self, domain: Domain) -> Result<Element> {
        let pairs = self
            .terms()
            .into_iter()
            .map(|(k, c)| {
                let q = c
                    .as_rational()
                    .ok_or_else(|| Error::MixedDomains(self.domain.to_string(), domain.to_string()))?;
                Ok((k, domain.from_rational(q)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Element::from_pairs(self.algebra, domain, pairs)
    }

    fn check_index(&self, k: usize) -> Result<()> {
        let ok = k >= 1 && self.algebra.dim().map_or(true, |n| k <= n);
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                algebra: self.algebra.to_string(),
            })
        }
    }

    fn set(&mut self, k: usize, c: Scalar) {
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[k - 1] = c,
            Coeffs::Sparse(m) => {
                if c.is_zero() {
                    m.remove(&k);
                } else {
                    m.insert(k, c);
                }
            }
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Coefficient of `e_k`; zero outside the support.
    pub fn coeff(&self, k: usize) -> Scalar {
        match &self.coeffs {
            Coeffs::Dense(v) => k
                .checked_sub(1)
                .and_then(|i| v.get(i))
                .cloned()
                .unwrap_or_else(|| self.domain.zero()),
            Coeffs::Sparse(m) => m.get(&k).cloned().unwrap_or_else(|| self.domain.zero()),
        }
    }

    /// Nonzero coefficients in increasing index order.
    pub fn terms(&self) -> Vec<(usize, Scalar)> {
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i + 1, c.clone()))
                .collect(),
            Coeffs::Sparse(m) => m.iter().map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms().into_iter().map(|(k, _)| k).collect()
    }

    /// Smallest index with a nonzero coefficient.
    pub fn lowest_index(&self) -> Option<usize> {
        self.terms().first().map(|(k, _)| *k)
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Dense(v) => v.iter().all(Scalar::is_zero),
            Coeffs::Sparse(m) => m.is_empty(),
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        self.algebra.check_same(&other.algebra)?;
        if self.domain != other.domain {
            return Err(Error::MixedDomains(self.domain.to_string(), other.domain.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            let cur = out.coeff(k);
            out.set(k, &cur + &c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-self.domain.one())?)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Element> {
        if s.domain() != self.domain {
            return Err(Error::MixedDomains(self.domain.to_string(), s.domain().to_string()));
        }
        let mut out = Element::zero(self.algebra, self.domain);
        for (k, c) in self.terms() {
            out.set(k, &c * s);
        }
        Ok(out)
    }

    /// `factor * sum a_i e_{i+shift}`, truncated at `n`.
    pub fn shift(&self, shift: usize, factor: &Scalar) -> Element {
        let mut out = Element::zero(self.algebra, self.domain);
        if factor.is_zero() {
            return out;
        }
        for (k, c) in self.terms() {
            let target = k + shift;
            if self.algebra.dim().map_or(true, |n| target <= n) {
                out.set(target, &c * factor);
            }
        }
        out
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        Ok(self.shift(1, &other.coeff(1)))
    }

    /// `self * other^(s)`, the `s`-fold right multiplication, in closed form
    /// `b_1^s * sum_i a_i e_{i+s}`.
    pub fn right_power(&self, other: &Element, s: usize) -> Result<Element> {
        self.check_compatible(other)?;
        if s == 0 {
            return Err(Error::ZeroExponent);
        }
        let factor = other.coeff(1).pow(s as u32);
        Ok(self.shift(s, &factor))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .terms()
            .into_iter()
            .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
            .collect();
        json!({ "algebra": algebra_json(self.algebra), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value, domain: Domain) -> Result<Element> {
        let bad = |m: &str| Error::InvalidArgument(format!("element json: {m}"));
        let algebra = match &v["algebra"] {
            Value::String(s) if s == "inf" => Algebra::Infinite,
            Value::Object(o) => {
                let n = o.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))?;
                Algebra::finite(n as usize)?
            }
            _ => return Err(bad("bad algebra")),
        };
        let coeffs = v["coeffs"].as_object().ok_or_else(|| bad("missing coeffs"))?;
        let mut pairs = Vec::new();
        for (k, c) in coeffs {
            let k: usize = k.parse().map_err(|_| bad("bad index"))?;
            let c = c.as_str().ok_or_else(|| bad("coefficient must be a string"))?;
            let q: BigRational = c.parse().map_err(|_| bad("bad coefficient"))?;
            pairs.push((k, q));
        }
        Element::from_rationals(algebra, domain, &pairs)
    }
}

pub fn algebra_json(algebra: Algebra) -> Value {
    match algebra {
        Algebra::Finite(n) => json!({ "n": n }),
        Algebra::Infinite => json!("inf"),
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        text::format_element(f, terms.iter().map(|(k, c)| (*k, c)))
    }
}

pub type Assignment = BTreeMap<VarIndex, Element>;

/// `"x1 = e2, x2 = e1"`.
pub fn format_assignment(assignment: &Assignment) -> String {
    assignment
        .iter()
        .map(|(v, e)| format!("{v} = {e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Evaluates `f` under `assignment` by structural recursion on its terms.
pub fn evaluate(f: &FreePolynomial, algebra: Algebra, assignment: &Assignment) -> Result<Element> {
    for e in assignment.values() {
        algebra.check_same(&e.algebra)?;
        if e.domain != f.domain() {
            return Err(Error::MixedDomains(f.domain().to_string(), e.domain.to_string()));
        }
    }
    let mut cache: HashMap<&Term, Element> = HashMap::new();
    let mut acc = Element::zero(algebra, f.domain());
    for (t, c) in f.iter() {
        let v = eval_term(t, assignment, &mut cache)?;
        acc = acc.add(&v.scale(c)?)?;
    }
    Ok(acc)
}

fn eval_term<'t>(
    t: &'t Term,
    assignment: &Assignment,
    cache: &mut HashMap<&'t Term, Element>,
) -> Result<Element> {
    if let Some(v) = cache.get(t) {
        return Ok(v.clone());
    }
    let v = match t {
        Term::Leaf(k) => assignment
            .get(k)
            .cloned()
            .ok_or(Error::UnassignedVariable(k.get()))?,
        Term::Node(l, r) => {
            let a = eval_term(l, assignment, cache)?;
            let b = eval_term(r, assignment, cache)?;
            a.mul(&b)?
        }
    };
    cache.insert(t, v.clone());
    Ok(v)
}

/// `L^k = span{e_k, e_{k+1}, ...}`, the k-th term of the lower central series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerIdeal {
    pub algebra: Algebra,
    pub k: usize,
}

pub fn power_ideal(algebra: Algebra, k: usize) -> Result<PowerIdeal> {
    if k == 0 {
        return Err(Error::InvalidArgument("power ideal index must be at least 1".into()));
    }
    Ok(PowerIdeal { algebra, k })
}

impl PowerIdeal {
    pub fn contains(&self, u: &Element) -> bool {
        u.algebra == self.algebra && u.lowest_index().map_or(true, |low| low >= self.k)
    }

    /// `n + 1 - k` on `L_n` (zero past `n`); `None` on `L_inf`.
    pub fn dim(&self) -> Option<usize> {
        self.algebra.dim().map(|n| (n + 1).saturating_sub(self.k))
    }

    pub fn is_zero_subspace(&self) -> bool {
        self.dim() == Some(0)
    }
}
