//! Free nonassociative terms, left-normed words, and polynomials over them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

/// The variable `x_k`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(u32);

impl VarIndex {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            Err(Error::ZeroVariable)
        } else {
            Ok(VarIndex(k))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Shorthand for `VarIndex::new(k).unwrap()`; panics on `k == 0`.
pub fn x(k: u32) -> VarIndex {
    VarIndex::new(k).expect("variable index must be at least 1")
}

/// A monomial of the free nonassociative algebra: a full binary tree with
/// variables at the leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(VarIndex),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(k: u32) -> Term {
        Term::Leaf(x(k))
    }

    pub fn node(left: Term, right: Term) -> Term {
        Term::Node(Box::new(left), Box::new(right))
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        self.degree() - 1
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<VarIndex> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<VarIndex>) {
        match self {
            Term::Leaf(v) => out.push(*v),
            Term::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// `Some(word)` when every right child is a leaf.
    pub fn as_left_normed(&self) -> Option<LeftNormedWord> {
        let mut rev = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Leaf(v) => {
                    rev.push(*v);
                    break;
                }
                Term::Node(l, r) => match r.as_ref() {
                    Term::Leaf(v) => {
                        rev.push(*v);
                        cur = l;
                    }
                    Term::Node(..) => return None,
                },
            }
        }
        rev.reverse();
        Some(LeftNormedWord(rev))
    }

    /// The left spine: `((f0 f1) f2) ... fk` gives `[f0, f1, ..., fk]`.
    pub(crate) fn spine(&self) -> Vec<&Term> {
        let mut rev = Vec::new();
        let mut cur = self;
        while let Term::Node(l, r) = cur {
            rev.push(r.as_ref());
            cur = l;
        }
        rev.push(cur);
        rev.reverse();
        rev
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.leaves().cmp(&other.leaves()))
            .then_with(|| structural_cmp(self, other))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Left-normed shapes sort first among terms with equal leaves.
fn structural_cmp(a: &Term, b: &Term) -> Ordering {
    match (a, b) {
        (Term::Leaf(x), Term::Leaf(y)) => x.cmp(y),
        (Term::Leaf(_), Term::Node(..)) => Ordering::Less,
        (Term::Node(..), Term::Leaf(_)) => Ordering::Greater,
        (Term::Node(al, ar), Term::Node(bl, br)) => ar
            .degree()
            .cmp(&br.degree())
            .then_with(|| structural_cmp(ar, br))
            .then_with(|| structural_cmp(al, bl)),
    }
}

/// The left-normed monomial `(((x_{i1} x_{i2}) x_{i3}) ...) x_{im}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftNormedWord(Vec<VarIndex>);

impl LeftNormedWord {
    pub fn new(letters: Vec<VarIndex>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("empty word".into()));
        }
        Ok(LeftNormedWord(letters))
    }

    /// Builds a word from raw indices; panics on an empty slice or a zero index.
    pub fn from_indices(indices: &[u32]) -> Self {
        assert!(!indices.is_empty(), "empty word");
        LeftNormedWord(indices.iter().map(|&k| x(k)).collect())
    }

    pub fn letters(&self) -> &[VarIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn head(&self) -> VarIndex {
        self.0[0]
    }

    pub fn tail(&self) -> &[VarIndex] {
        &self.0[1..]
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.get()).collect()
    }

    pub fn to_term(&self) -> Term {
        let mut it = self.0.iter();
        let mut t = Term::Leaf(*it.next().expect("nonempty word"));
        for v in it {
            t = Term::node(t, Term::Leaf(*v));
        }
        t
    }
}

impl Ord for LeftNormedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LeftNormedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Common surface of [`Term`] and [`LeftNormedWord`] as polynomial keys.
pub trait Monomial: Clone + Ord + fmt::Display {
    fn degree(&self) -> usize;
    fn letters(&self) -> Vec<VarIndex>;
    fn to_term(&self) -> Term;

    fn multidegree(&self) -> MultiDegree {
        let mut md = MultiDegree::default();
        for v in self.letters() {
            md.bump(v);
        }
        md
    }
}

impl Monomial for Term {
    fn degree(&self) -> usize {
        Term::degree(self)
    }
    fn letters(&self) -> Vec<VarIndex> {
        self.leaves()
    }
    fn to_term(&self) -> Term {
        self.clone()
    }
}

impl Monomial for LeftNormedWord {
    fn degree(&self) -> usize {
        self.len()
    }
    fn letters(&self) -> Vec<VarIndex> {
        self.0.clone()
    }
    fn to_term(&self) -> Term {
        LeftNormedWord::to_term(self)
    }
}

/// Variable multiplicities of a monomial or homogeneous polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(BTreeMap<VarIndex, u32>);

impl MultiDegree {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut md = MultiDegree::default();
        for &(k, d) in pairs {
            if d == 0 {
                return Err(Error::InvalidArgument(format!("x{k} has multiplicity 0")));
            }
            *md.0.entry(VarIndex::new(k)?).or_insert(0) += d;
        }
        Ok(md)
    }

    fn bump(&mut self, v: VarIndex) {
        *self.0.entry(v).or_insert(0) += 1;
    }

    pub fn get(&self, v: VarIndex) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().map(|&d| d as usize).sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.values().all(|&d| d == 1)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarIndex, u32)> + '_ {
        self.0.iter().map(|(v, d)| (*v, *d))
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Letters in nondecreasing order, each repeated by its multiplicity.
    pub fn sorted_letters(&self) -> Vec<VarIndex> {
        self.0
            .iter()
            .flat_map(|(v, d)| std::iter::repeat(*v).take(*d as usize))
            .collect()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, d)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v.get(), d)?;
        }
        write!(f, "}}")
    }
}

/// A finite linear combination of monomials with exact coefficients.
///
/// Zero coefficients are never stored. Iteration order is the output order:
/// by degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<M: Monomial> {
    domain: Domain,
    terms: BTreeMap<M, Scalar>,
}

/// Element of the free nonassociative algebra.
pub type FreePolynomial = Poly<Term>;
/// Combination of left-normed words.
pub type LNPolynomial = Poly<LeftNormedWord>;

impl<M: Monomial> Poly<M> {
    pub fn zero(domain: Domain) -> Self {
        Poly {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(domain: Domain, m: M) -> Self {
        let mut p = Poly::zero(domain);
        p.add_term(m, domain.one());
        p
    }

    pub fn from_terms(domain: Domain, terms: impl IntoIterator<Item = (M, Scalar)>) -> Result<Self> {
        let mut p = Poly::zero(domain);
        for (m, c) in terms {
            if c.domain() != domain {
                return Err(Error::MixedDomains(domain.to_string(), c.domain().to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&M, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &M) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    /// Accumulates `c * m`, pruning the entry if it cancels.
    pub(crate) fn add_term(&mut self, m: M, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::MixedDomains(
                self.domain.to_string(),
                other.domain.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            domain: self.domain,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        if s.domain() != self.domain {
            return Err(Error::MixedDomains(
                self.domain.to_string(),
                s.domain().to_string(),
            ));
        }
        if s.is_zero() {
            return Ok(Poly::zero(self.domain));
        }
        Ok(Poly {
            domain: self.domain,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        })
    }

    /// Largest monomial degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest variable index occurring, 0 if none.
    pub fn max_var(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.letters())
            .map(VarIndex::get)
            .max()
            .unwrap_or(0)
    }

    /// The common multidegree of all monomials.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?.multidegree();
        if it.all(|m| m.multidegree() == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Splits into multihomogeneous components keyed by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<MultiDegree, Self> {
        let mut out: BTreeMap<MultiDegree, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree())
                .or_insert_with(|| Poly::zero(self.domain))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Re-reads every monomial as a free term.
    pub fn to_free(&self) -> FreePolynomial {
        let mut out = Poly::zero(self.domain);
        for (m, c) in &self.terms {
            out.add_term(m.to_term(), c.clone());
        }
        out
    }

    /// Maps rational coefficients into `domain`.
    pub fn to_domain(&self, domain: Domain) -> Result<Self> {
        if domain == self.domain {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(domain);
        for (m, c) in &self.terms {
            let q = c.as_rational().ok_or_else(|| {
                Error::MixedDomains(self.domain.to_string(), domain.to_string())
            })?;
            out.add_term(m.clone(), domain.from_rational(q)?);
        }
        Ok(out)
    }
}

impl FreePolynomial {
    pub fn var(domain: Domain, k: u32) -> Self {
        Poly::monomial(domain, Term::var(k))
    }

    /// Product in the free nonassociative algebra: monomials join under a new node.
    pub fn free_mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = Poly::zero(self.domain);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(Term::node(a.clone(), b.clone()), ca * cb);
            }
        }
        Ok(out)
    }
}

impl LNPolynomial {
    pub fn word(domain: Domain, indices: &[u32]) -> Self {
        Poly::monomial(domain, LeftNormedWord::from_indices(indices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        Domain::Rational
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = FreePolynomial::var(q(), 1);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn free_mul_of_words_left_normed_join() {
        let x1x2 = FreePolynomial::var(q(), 1)
            .free_mul(&FreePolynomial::var(q(), 2))
            .unwrap();
        let p = x1x2.free_mul(&FreePolynomial::var(q(), 3)).unwrap();
        let (t, c) = p.iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(t.as_left_normed(), Some(LeftNormedWord::from_indices(&[1, 2, 3])));
    }

    #[test]
    fn free_mul_right_nested_is_not_left_normed() {
        let x2x3 = FreePolynomial::var(q(), 2)
            .free_mul(&FreePolynomial::var(q(), 3))
            .unwrap();
        let p = FreePolynomial::var(q(), 1).free_mul(&x2x3).unwrap();
        let (t, _) = p.iter().next().unwrap();
        assert_eq!(t, &Term::node(Term::var(1), Term::node(Term::var(2), Term::var(3))));
        assert_eq!(t.as_left_normed(), None);
    }

    #[test]
    fn mixed_domains_rejected() {
        let a = FreePolynomial::var(q(), 1);
        let b = FreePolynomial::var(Domain::Prime(3), 1);
        assert!(matches!(a.add(&b), Err(Error::MixedDomains(..))));
        assert!(matches!(a.free_mul(&b), Err(Error::MixedDomains(..))));
    }

    #[test]
    fn multidegree_cases() {
        let x1 = FreePolynomial::var(q(), 1);
        let x2 = FreePolynomial::var(q(), 2);
        let comm = x1.free_mul(&x2).unwrap().sub(&x2.free_mul(&x1).unwrap()).unwrap();
        let md = comm.multidegree().unwrap();
        assert_eq!(md, MultiDegree::from_pairs(&[(1, 1), (2, 1)]).unwrap());
        assert!(md.is_multilinear());

        let sq = x1.free_mul(&x1).unwrap();
        let md = sq.multidegree().unwrap();
        assert_eq!(md.get(x(1)), 2);
        assert!(!md.is_multilinear());

        let mixed = x1.free_mul(&x2).unwrap().add(&x1).unwrap();
        assert_eq!(mixed.multidegree(), Err(Error::NotHomogeneous));
        assert_eq!(FreePolynomial::zero(q()).multidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn word_order_is_degree_then_lex() {
        let a = LeftNormedWord::from_indices(&[2]);
        let b = LeftNormedWord::from_indices(&[1, 1]);
        let c = LeftNormedWord::from_indices(&[1, 2]);
        assert!(a < b && b < c);
    }

    #[test]
    fn zero_variable_rejected() {
        assert_eq!(VarIndex::new(0), Err(Error::ZeroVariable));
    }
}
