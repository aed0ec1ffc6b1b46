//! Exhaustive images over small prime fields.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::images::{classify, realize, ImageCase, ImageDescriptor, ImageKind};
use crate::model::Element;
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, Term, VarIndex};

/// Largest assignment space `p^(n m)` searched exhaustively.
pub const SEARCH_BOUND: u128 = 10_000_000;

#[derive(Clone, Copy, Debug)]
enum Node {
    Leaf(usize),
    Mul(usize, usize),
}

/// `f` compiled to a straight-line program over residues.
struct Program {
    n: usize,
    p: u64,
    vars: Vec<VarIndex>,
    nodes: Vec<Node>,
    outputs: Vec<(usize, u64)>,
}

impl Program {
    fn compile(f: &FreePolynomial, n: usize, p: u64) -> Result<Program> {
        let fp = f.to_domain(Domain::prime(p)?)?;
        let vars: Vec<VarIndex> = fp
            .iter()
            .flat_map(|(t, _)| t.leaves())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let slot: HashMap<VarIndex, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut prog = Program {
            n,
            p,
            vars,
            nodes: Vec::new(),
            outputs: Vec::new(),
        };
        let mut seen: HashMap<Term, usize> = HashMap::new();
        for (t, c) in fp.iter() {
            let node = prog.intern(t, &slot, &mut seen);
            let Scalar::Prime(r) = c else { unreachable!("converted to F_p") };
            prog.outputs.push((node, r.residue()));
        }
        Ok(prog)
    }

    fn intern(&mut self, t: &Term, slot: &HashMap<VarIndex, usize>, seen: &mut HashMap<Term, usize>) -> usize {
        if let Some(&i) = seen.get(t) {
            return i;
        }
        let node = match t {
            Term::Leaf(v) => Node::Leaf(slot[v]),
            Term::Node(l, r) => {
                let a = self.intern(l, slot, seen);
                let b = self.intern(r, slot, seen);
                Node::Mul(a, b)
            }
        };
        self.nodes.push(node);
        seen.insert(t.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn space(&self) -> u128 {
        (self.p as u128).saturating_pow((self.n * self.vars.len()) as u32)
    }

    /// Evaluates at the assignment numbered `idx`, returning the packed value.
    fn run(&self, idx: u64, digits: &mut [u64], vals: &mut [u64]) -> u64 {
        let (n, p) = (self.n, self.p);
        let mut rest = idx;
        for d in digits.iter_mut() {
            *d = rest % p;
            rest /= p;
        }
        for (i, node) in self.nodes.iter().enumerate() {
            match *node {
                Node::Leaf(v) => vals[i * n..(i + 1) * n].copy_from_slice(&digits[v * n..(v + 1) * n]),
                Node::Mul(a, b) => {
                    let b1 = vals[b * n];
                    vals[i * n] = 0;
                    for k in 1..n {
                        vals[i * n + k] = b1 * vals[a * n + k - 1] % p;
                    }
                }
            }
        }
        let mut key = 0;
        for k in (0..n).rev() {
            let mut acc = 0;
            for &(node, c) in &self.outputs {
                acc = (acc + c * vals[node * n + k]) % p;
            }
            key = key * p + acc;
        }
        key
    }
}

/// A deduplicated set of points of `L_n` over `F_p`, stored packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSet {
    n: usize,
    p: u64,
    keys: BTreeSet<u64>,
}

impl ImageSet {
    pub fn algebra(&self) -> Algebra {
        Algebra::Finite(self.n)
    }

    pub fn domain(&self) -> Domain {
        Domain::Prime(self.p)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Residue coordinates `(a_1, ..., a_n)` of every point.
    pub fn coordinates(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.keys.iter().map(|&k| unpack(k, self.n, self.p))
    }

    pub fn elements(&self) -> Vec<Element> {
        let domain = self.domain();
        self.coordinates()
            .map(|c| {
                let coeffs = c.into_iter().map(|r| domain.from_i64(r as i64)).collect();
                Element::from_dense(self.algebra(), domain, coeffs).expect("dimension matches")
            })
            .collect()
    }

    pub fn contains(&self, u: &Element) -> bool {
        if u.algebra() != self.algebra() || u.domain() != self.domain() {
            return false;
        }
        let mut key = 0;
        for k in (1..=self.n).rev() {
            let Scalar::Prime(r) = u.coeff(k) else { return false };
            key = key * self.p + r.residue();
        }
        self.keys.contains(&key)
    }
}

fn unpack(mut key: u64, n: usize, p: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let r = key % p;
            key /= p;
            r
        })
        .collect()
}

/// `{ f(v_1, ..., v_m) : v_i in F_p^n }` computed exhaustively.
pub fn brute_force_image(f: &FreePolynomial, n: usize, p: u64) -> Result<ImageSet> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let prog = Program::compile(f, n, p)?;
    let space = prog.space();
    if space > SEARCH_BOUND {
        return Err(Error::SearchSpaceTooLarge {
            size: space,
            bound: SEARCH_BOUND,
        });
    }
    let width = prog.nodes.len() * n;
    let digit_count = prog.vars.len() * n;
    let keys: HashSet<u64> = (0..space as u64)
        .into_par_iter()
        .fold(
            || (HashSet::new(), vec![0u64; digit_count], vec![0u64; width]),
            |(mut set, mut digits, mut vals), idx| {
                set.insert(prog.run(idx, &mut digits, &mut vals));
                (set, digits, vals)
            },
        )
        .map(|(set, _, _)| set)
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(ImageSet {
        n,
        p,
        keys: keys.into_iter().collect(),
    })
}

/// Strength of the equality claim made by a cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Exact,
    SplitOnly,
    SkippedDivisor,
}

impl Equality {
    pub fn tag(&self) -> &'static str {
        match self {
            Equality::Exact => "exact",
            Equality::SplitOnly => "split_only",
            Equality::SkippedDivisor => "skipped_divisor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub f: String,
    pub n: usize,
    pub p: u64,
    pub descriptor: ImageDescriptor,
    pub inclusion: bool,
    pub equality: Equality,
    /// Outcome of the equality claim; `None` when skipped.
    pub equality_holds: Option<bool>,
    pub image_size: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.inclusion && self.equality_holds != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f,
            "n": self.n,
            "p": self.p,
            "descriptor": self.descriptor.to_json(),
            "inclusion": self.inclusion,
            "equality": self.equality.tag(),
            "equality_holds": self.equality_holds,
            "image_size": self.image_size,
        })
    }
}

/// Whether classifying `f` over `F_p` reproduces the rational classification,
/// so the constructive divisors survive reduction mod `p`.
pub fn divisor_condition(f: &FreePolynomial, n: usize, p: u64) -> Result<bool> {
    let algebra = Algebra::finite(n)?;
    let over_q = classify(f, algebra)?;
    let Ok(fp) = f.to_domain(Domain::prime(p)?) else {
        return Ok(false);
    };
    if fp.is_zero() {
        return Ok(over_q.descriptor.kind() == ImageKind::Zero);
    }
    let over_p = classify(&fp, algebra)?;
    Ok(over_p.case == over_q.case && over_p.descriptor == over_q.descriptor)
}

/// Compares the exhaustive image over `F_p` with the rational classification.
pub fn cross_check(f: &FreePolynomial, n: usize, p: u64) -> Result<CrossCheck> {
    let algebra = Algebra::finite(n)?;
    let cls = classify(f, algebra)?;
    let descriptor = cls.descriptor;
    let image = brute_force_image(f, n, p)?;
    let inclusion = image.elements().iter().all(|u| realize(&descriptor, u));

    // a cone at d = n is stored as L^n but still needs roots to fill it
    let (equality, equality_holds) = if !divisor_condition(f, n, p)? {
        (Equality::SkippedDivisor, None)
    } else if cls.case == ImageCase::Cone && descriptor.kind() != ImageKind::Zero {
        let d = cls.head.degree();
        (Equality::SplitOnly, Some(inclusion && cone_split(&image, d)))
    } else {
        match descriptor.kind() {
            ImageKind::Zero => (Equality::Exact, Some(inclusion && image.len() == 1)),
            ImageKind::PowerIdeal(k) => {
                let expected = (p as u128).pow((n + 1 - k) as u32);
                (Equality::Exact, Some(inclusion && image.len() as u128 == expected))
            }
            ImageKind::PuncturedCone(_) => unreachable!("cones come from the cone case"),
        }
    };
    Ok(CrossCheck {
        f: f.to_string(),
        n,
        p,
        descriptor,
        inclusion,
        equality,
        equality_holds,
        image_size: image.len(),
    })
}

/// `0` is in the image, some point has `beta_d != 0`, and the coordinates
/// above `d` of those points cover `F_p^(n-d)`.
fn cone_split(image: &ImageSet, d: usize) -> bool {
    let n = image.n;
    let mut has_zero = false;
    let mut tails = HashSet::new();
    for c in image.coordinates() {
        if c.iter().all(|&r| r == 0) {
            has_zero = true;
        } else if c[d - 1] != 0 {
            tails.insert(c[d..].to_vec());
        }
    }
    has_zero && tails.len() as u128 == (image.p as u128).pow((n - d) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn points(f: &str, n: usize, p: u64) -> Vec<Vec<u64>> {
        brute_force_image(&parse(f).unwrap(), n, p).unwrap().coordinates().collect()
    }

    #[test]
    fn commutator_over_f2() {
        assert_eq!(points("x1 x2 - x2 x1", 3, 2), vec![vec![0, 0, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn leibniz_generator_image_is_zero() {
        assert_eq!(points("x1*(x2*x3)", 3, 2), vec![vec![0, 0, 0]]);
        assert_eq!(points("x1*(x2*x3)", 2, 3), vec![vec![0, 0]]);
    }

    #[test]
    fn square_of_product() {
        assert_eq!(points("x1 x2", 2, 2), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn search_bound_enforced() {
        let f = parse("x1 x2 x3").unwrap();
        assert!(matches!(
            brute_force_image(&f, 6, 5),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn cross_checks() {
        let r = cross_check(&parse("x1 x2 - x2 x1").unwrap(), 3, 3).unwrap();
        assert_eq!(r.descriptor.kind(), ImageKind::PowerIdeal(3));
        assert!(r.inclusion);
        assert_eq!(r.equality, Equality::Exact);
        assert_eq!(r.equality_holds, Some(true));

        let r = cross_check(&parse("x1^2").unwrap(), 3, 3).unwrap();
        assert_eq!(r.descriptor.kind(), ImageKind::PuncturedCone(2));
        assert_eq!(r.equality, Equality::SplitOnly);
        assert!(r.passed());

        let r = cross_check(&parse("-2 x1^2").unwrap(), 2, 5).unwrap();
        assert_eq!(r.descriptor.kind(), ImageKind::PowerIdeal(2));
        assert_eq!(r.equality, Equality::SplitOnly);
        assert_eq!(r.image_size, 3);
        assert!(r.passed());

        let r = cross_check(&parse("x1 x2 x3 - x2 x1 x3").unwrap(), 3, 2).unwrap();
        assert_eq!(r.descriptor.kind(), ImageKind::Zero);
        assert_eq!(r.equality_holds, Some(true));
    }

    #[test]
    fn divisor_violation_is_reported() {
        // sum of head coefficients is 2, which vanishes mod 2
        let r = cross_check(&parse("x1 x2 + x2 x1").unwrap(), 3, 2).unwrap();
        assert_eq!(r.equality, Equality::SkippedDivisor);
        assert_eq!(r.to_json()["equality"], "skipped_divisor");
    }

    #[test]
    fn membership() {
        let img = brute_force_image(&parse("x1 x2").unwrap(), 3, 3).unwrap();
        let d = Domain::prime(3).unwrap();
        let l = Algebra::Finite(3);
        assert!(img.contains(&Element::parse("2*e2 + e3", l, d).unwrap()));
        assert!(!img.contains(&Element::parse("e1", l, d).unwrap()));
        assert_eq!(img.len(), 9);
    }
}
