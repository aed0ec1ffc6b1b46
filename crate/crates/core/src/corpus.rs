//! Seeded random terms, polynomials and elements for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::images::{classify, ImageCase};
use crate::model::Element;
use crate::rewrite::{head_word, reduce};
use crate::scalar::{Domain, Scalar};
use crate::term::{x, FreePolynomial, LeftNormedWord, MultiDegree, Term, VarIndex};

/// Probability that a random tree keeps its right child a single leaf.
const LEFT_BIAS: f64 = 0.75;

pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero integer in `[-4, 4]`.
    pub fn small_int(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=4);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// Nonzero rational with numerator in `[-5, 5]` and denominator in `[1, 3]`.
    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.gen_range(1..=5) * if self.rng.gen_bool(0.5) { -1 } else { 1 };
        Scalar::rational(num, self.rng.gen_range(1..=3))
    }

    /// Random full binary tree with the given leaves in order.
    pub fn tree(&mut self, leaves: &[VarIndex]) -> Term {
        if leaves.len() == 1 {
            return Term::Leaf(leaves[0]);
        }
        let split = if self.rng.gen_bool(LEFT_BIAS) {
            leaves.len() - 1
        } else {
            self.rng.gen_range(1..leaves.len())
        };
        Term::node(self.tree(&leaves[..split]), self.tree(&leaves[split..]))
    }

    pub fn term(&mut self, m: u32, degree: usize) -> Term {
        let leaves: Vec<VarIndex> = (0..degree).map(|_| x(self.rng.gen_range(1..=m))).collect();
        self.tree(&leaves)
    }

    /// Up to `max_terms` random terms in `x_1..x_m` of degree at most `max_degree`.
    pub fn poly(&mut self, m: u32, max_degree: usize, max_terms: usize) -> FreePolynomial {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut f = FreePolynomial::zero(Domain::Rational);
        for _ in 0..terms {
            let degree = self.rng.gen_range(1..=max_degree);
            let t = self.term(m, degree);
            f.add_term(t, self.rational());
        }
        f
    }

    /// Multidegree over `x_1..x_m` with total at most `max_total`.
    pub fn multidegree(&mut self, m: usize, max_total: usize) -> MultiDegree {
        assert!(m >= 1 && m <= max_total);
        let total = self.rng.gen_range(m..=max_total);
        let mut degrees = vec![1u32; m];
        for _ in m..total {
            let i = self.rng.gen_range(0..m);
            degrees[i] += 1;
        }
        let pairs: Vec<(u32, u32)> = degrees.iter().enumerate().map(|(i, &d)| (i as u32 + 1, d)).collect();
        MultiDegree::from_pairs(&pairs).expect("positive degrees")
    }

    /// Random term whose leaves are a shuffle of the letters of `md`.
    pub fn term_of(&mut self, md: &MultiDegree) -> Term {
        let mut leaves = md.sorted_letters();
        leaves.shuffle(&mut self.rng);
        self.tree(&leaves)
    }

    /// Multihomogeneous polynomial; integer coefficients when `integer`.
    pub fn multihomogeneous(&mut self, md: &MultiDegree, max_terms: usize, integer: bool) -> FreePolynomial {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut f = FreePolynomial::zero(Domain::Rational);
        for _ in 0..terms {
            let t = self.term_of(md);
            let c = if integer {
                Scalar::rational(self.small_int(), 1)
            } else {
                self.rational()
            };
            f.add_term(t, c);
        }
        f
    }

    pub fn multilinear(&mut self, m: usize, max_terms: usize) -> FreePolynomial {
        let pairs: Vec<(u32, u32)> = (1..=m as u32).map(|k| (k, 1)).collect();
        let md = MultiDegree::from_pairs(&pairs).expect("positive degrees");
        self.multihomogeneous(&md, max_terms, true)
    }

    /// A multihomogeneous polynomial of multidegree `md` falling in `case` on
    /// `algebra`, assembled from head words, scrambled tails and identities.
    /// `None` when the case cannot occur for this multidegree or the draw
    /// missed it.
    pub fn with_case(&mut self, md: &MultiDegree, algebra: Algebra, case: ImageCase) -> Option<FreePolynomial> {
        let vars: Vec<(VarIndex, u32)> = md.iter().collect();
        let mut alphas: Vec<i64> = match case {
            ImageCase::Identity => vec![0; vars.len()],
            ImageCase::SumZero => {
                if vars.len() < 2 {
                    return None;
                }
                let mut a: Vec<i64> = vars.iter().map(|_| self.rng.gen_range(-3..=3)).collect();
                let s: i64 = a[1..].iter().sum();
                a[0] = -s;
                a
            }
            ImageCase::LinearHead => {
                let linear: Vec<usize> = (0..vars.len()).filter(|&i| vars[i].1 == 1).collect();
                let &i = linear.choose(&mut self.rng)?;
                let mut a: Vec<i64> = vars.iter().map(|_| self.rng.gen_range(-3..=3)).collect();
                a[i] = self.small_int();
                a
            }
            ImageCase::Cone => {
                if vars.iter().all(|(_, d)| *d == 1) {
                    return None;
                }
                vars.iter()
                    .map(|(_, d)| if *d >= 2 { self.rng.gen_range(-3..=3) } else { 0 })
                    .collect()
            }
        };
        if case != ImageCase::Identity && alphas.iter().all(|&a| a == 0) {
            let i = self.rng.gen_range(0..vars.len());
            if case == ImageCase::Cone && vars[i].1 == 1 {
                return None;
            }
            alphas[i] = 1;
            if case == ImageCase::SumZero {
                alphas[(i + 1) % vars.len()] = -1;
            }
        }

        let mut f = FreePolynomial::zero(Domain::Rational);
        for ((v, _), a) in vars.iter().zip(&alphas) {
            if *a == 0 {
                continue;
            }
            let word = head_word(md, *v);
            let mut letters = word.letters().to_vec();
            letters[1..].shuffle(&mut self.rng);
            let scrambled = LeftNormedWord::new(letters).expect("nonempty").to_term();
            f.add_term(scrambled, Scalar::rational(*a, 1));
        }
        let noise = self.multihomogeneous(md, 3, true);
        let noise = noise.sub(&reduce(&noise, algebra).lift()).expect("same domain");
        let f = f.add(&noise).expect("same domain");
        let f = if f.is_zero() && md.total() >= 3 {
            let mut leaves = md.sorted_letters();
            leaves.shuffle(&mut self.rng);
            let right = Term::node(Term::Leaf(leaves[1]), self.tree(&leaves[2..]));
            let left = Term::Leaf(leaves[0]);
            FreePolynomial::monomial(Domain::Rational, Term::node(left, right))
        } else {
            f
        };
        if f.is_zero() {
            return None;
        }
        let cls = classify(&f, algebra).ok()?;
        (cls.case == case).then_some(f)
    }

    /// Element with small rational coefficients; on `L_inf` supported in `1..=span`.
    pub fn element(&mut self, algebra: Algebra, span: usize, density: f64) -> Element {
        let top = algebra.dim().unwrap_or(span);
        let mut pairs = Vec::new();
        for k in 1..=top {
            if self.rng.gen_bool(density) {
                pairs.push((k, self.rational()));
            }
        }
        Element::from_pairs(algebra, Domain::Rational, pairs).expect("indices in range")
    }

    /// Element supported in `lo..=hi` with `e_lo` coefficient forced to `lead`.
    pub fn element_from(&mut self, algebra: Algebra, lo: usize, hi: usize, lead: Scalar) -> Element {
        let mut pairs = vec![(lo, lead)];
        for k in lo + 1..=hi {
            if self.rng.gen_bool(0.6) {
                pairs.push((k, self.rational()));
            }
        }
        Element::from_pairs(algebra, Domain::Rational, pairs).expect("indices in range")
    }

    /// Mixed identity-testing corpus in `x_1..x_m` (`m <= 4`) of degree at
    /// most `max_degree`, reduced against `algebras` for the planted cases.
    pub fn identity_corpus(&mut self, count: usize, max_degree: usize, algebras: &[Algebra]) -> Vec<FreePolynomial> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let m = self.rng.gen_range(1..=4u32);
            let f = match out.len() % 5 {
                0 => self.poly(m, max_degree, 4),
                1 => {
                    let g = self.poly(m, max_degree, 4);
                    let &algebra = algebras.choose(&mut self.rng).expect("nonempty");
                    g.sub(&reduce(&g, algebra).lift()).expect("same domain")
                }
                2 => {
                    let mut f = FreePolynomial::zero(Domain::Rational);
                    for _ in 0..self.rng.gen_range(1..=3) {
                        let degree = self.rng.gen_range(3..=max_degree.max(3));
                        let a = self.rng.gen_range(1..degree - 1);
                        let b = self.rng.gen_range(1..degree - a);
                        let t = Term::node(
                            self.term(m, a),
                            Term::node(self.term(m, b), self.term(m, degree - a - b)),
                        );
                        f.add_term(t, self.rational());
                    }
                    f.add(&self.poly(m, max_degree, 2)).expect("same domain")
                }
                3 => {
                    let len = self.rng.gen_range(2..=max_degree);
                    let letters: Vec<VarIndex> = (0..len).map(|_| x(self.rng.gen_range(1..=m))).collect();
                    let mut permuted = letters.clone();
                    permuted.shuffle(&mut self.rng);
                    let w = LeftNormedWord::new(letters).expect("nonempty").to_term();
                    let v = LeftNormedWord::new(permuted).expect("nonempty").to_term();
                    let c = self.rational();
                    let mut f = FreePolynomial::zero(Domain::Rational);
                    f.add_term(w, c.clone());
                    f.add_term(v, -c);
                    f
                }
                _ => {
                    let md = self.multidegree(m as usize, max_degree.max(m as usize));
                    let g = self.multihomogeneous(&md, 4, false);
                    let h = self.multihomogeneous(&md, 2, false);
                    g.sub(&h).expect("same domain")
                }
            };
            if !f.is_zero() {
                out.push(f);
            }
        }
        out
    }
}
