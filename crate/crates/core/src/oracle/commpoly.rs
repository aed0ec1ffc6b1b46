//! Sparse commutative polynomials in the indeterminates `t_{k,i}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Domain, Scalar};

/// The indeterminate `t_{k,i}`: coordinate `i` of the generic value of `x_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indet {
    pub var: u32,
    pub slot: u32,
}

/// Sorted exponent vector with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(Vec<(Indet, u32)>);

impl Exponents {
    pub fn one() -> Self {
        Exponents(Vec::new())
    }

    pub fn indet(t: Indet) -> Self {
        Exponents(vec![(t, 1)])
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Indet, u32)> {
        self.0.iter()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    out.push((x.0, x.1 + y.1));
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => out.push(*a.next().unwrap()),
                (Some(_), Some(_)) => out.push(*b.next().unwrap()),
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(*b.next().unwrap()),
                (None, None) => break,
            }
        }
        Exponents(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly {
    domain: Domain,
    terms: BTreeMap<Exponents, Scalar>,
}

impl CommPoly {
    pub fn zero(domain: Domain) -> Self {
        CommPoly {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = CommPoly::zero(c.domain());
        p.add_term(Exponents::one(), c);
        p
    }

    pub fn indet(domain: Domain, var: u32, slot: u32) -> Self {
        let mut p = CommPoly::zero(domain);
        p.add_term(Exponents::indet(Indet { var, slot }), domain.one());
        p
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

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &CommPoly, c: &Scalar) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &self.domain.one());
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.domain);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// Substitutes values for the indeterminates; missing ones are zero.
    pub fn eval(&self, values: &BTreeMap<Indet, Scalar>) -> Scalar {
        let mut acc = self.domain.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (ind, k) in e.iter() {
                let v = values.get(ind).cloned().unwrap_or_else(|| self.domain.zero());
                t = &t * &v.pow(*k);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .map(|(t, k)| match k {
                    1 => format!("t{}_{}", t.var, t.slot),
                    _ => format!("t{}_{}^{}", t.var, t.slot, k),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels() {
        let q = Domain::Rational;
        let a = CommPoly::indet(q, 1, 1);
        let b = CommPoly::indet(q, 2, 1);
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        let mut d = ab.clone();
        d.add_assign_scaled(&ba, &Scalar::rational(-1, 1));
        assert!(d.is_zero());
        assert_eq!(ab.to_string(), "t1_1*t2_1");
        let sq = a.add(&b).mul(&a.add(&b));
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_string(), "2*t1_1*t2_1 + t1_1^2 + t2_1^2");
    }

    #[test]
    fn evaluation() {
        let q = Domain::Rational;
        let p = CommPoly::indet(q, 1, 2).mul(&CommPoly::indet(q, 1, 2)).add(&CommPoly::constant(q.from_i64(3)));
        let mut vals = BTreeMap::new();
        vals.insert(Indet { var: 1, slot: 2 }, q.from_i64(5));
        assert_eq!(p.eval(&vals), q.from_i64(28));
    }
}
