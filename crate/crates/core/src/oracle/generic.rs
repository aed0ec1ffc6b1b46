//! Exact identity testing by evaluation at fully generic elements.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::commpoly::{CommPoly, Exponents};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::model::{evaluate, Assignment, Element};
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, Term, VarIndex};

/// Coordinates of `f(X_1, ..., X_m)` on `e_1..e_n`, where
/// `X_k = sum_i t_{k,i} e_i`.
pub fn generic_evaluate(f: &FreePolynomial, m: usize, n: usize) -> Vec<CommPoly> {
    debug_assert!(f.max_var() as usize <= m);
    let domain = f.domain();
    let mut cache: HashMap<&Term, Vec<CommPoly>> = HashMap::new();
    let mut out = vec![CommPoly::zero(domain); n];
    for (t, c) in f.iter() {
        let v = generic_term(t, n, domain, &mut cache);
        for (o, x) in out.iter_mut().zip(v) {
            o.add_assign_scaled(&x, c);
        }
    }
    out
}

fn generic_term<'a>(
    t: &'a Term,
    n: usize,
    domain: Domain,
    cache: &mut HashMap<&'a Term, Vec<CommPoly>>,
) -> Vec<CommPoly> {
    if let Some(v) = cache.get(t) {
        return v.clone();
    }
    let v = match t {
        Term::Leaf(k) => (1..=n as u32).map(|i| CommPoly::indet(domain, k.get(), i)).collect(),
        Term::Node(l, r) => {
            let a = generic_term(l, n, domain, cache);
            let b = generic_term(r, n, domain, cache);
            let mut v = vec![CommPoly::zero(domain); n];
            if n > 0 && !b[0].is_zero() {
                for i in 1..n {
                    v[i] = b[0].mul(&a[i - 1]);
                }
            }
            v
        }
    };
    cache.insert(t, v.clone());
    v
}

/// Dimension at which identities of `algebra` are decided.
pub fn oracle_dimension(f: &FreePolynomial, algebra: Algebra) -> usize {
    match algebra {
        Algebra::Finite(n) => n,
        Algebra::Infinite => f.degree() + 1,
    }
}

/// Whether `f` vanishes on every assignment, decided by generic evaluation.
pub fn identity_oracle(f: &FreePolynomial, algebra: Algebra) -> Result<bool> {
    if !f.domain().is_rational() {
        return Err(Error::FiniteFieldIdentity(f.domain().to_string()));
    }
    let n = oracle_dimension(f, algebra);
    Ok(generic_evaluate(f, f.max_var() as usize, n).iter().all(CommPoly::is_zero))
}

/// An assignment on which `f` is nonzero, found by seeded search over small
/// integer coordinates. `None` when `f` is an identity.
pub fn find_witness(f: &FreePolynomial, algebra: Algebra, seed: u64) -> Result<Option<(Assignment, Element)>> {
    if identity_oracle(f, algebra)? {
        return Ok(None);
    }
    let n = oracle_dimension(f, algebra);
    let domain = f.domain();
    let vars: Vec<u32> = (1..=f.max_var()).collect();

    // basis-vector assignments first, for readable certificates
    let mut tuple = vec![1usize; vars.len()];
    loop {
        let assignment: Assignment = vars
            .iter()
            .zip(&tuple)
            .map(|(&k, &i)| Ok((VarIndex::new(k)?, Element::basis(algebra, domain, i)?)))
            .collect::<Result<_>>()?;
        let value = evaluate(f, algebra, &assignment)?;
        if !value.is_zero() {
            return Ok(Some((assignment, value)));
        }
        let Some(pos) = tuple.iter().position(|&i| i < n) else {
            break;
        };
        tuple[pos] += 1;
        for t in &mut tuple[..pos] {
            *t = 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let assignment: Assignment = vars
            .iter()
            .map(|&k| {
                let coeffs = (0..n).map(|_| domain.from_i64(rng.gen_range(-50..=50))).collect();
                Ok((VarIndex::new(k)?, Element::from_dense(algebra, domain, coeffs)?))
            })
            .collect::<Result<_>>()?;
        let value = evaluate(f, algebra, &assignment)?;
        if !value.is_zero() {
            return Ok(Some((assignment, value)));
        }
    }
    Ok(None)
}

/// Generic coordinates flattened into one sparse vector keyed by
/// `(coordinate, exponents)`.
pub fn coordinate_vector(f: &FreePolynomial, m: usize, n: usize) -> BTreeMap<(usize, Exponents), Scalar> {
    generic_evaluate(f, m, n)
        .into_iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.iter()
                .map(|(e, c)| ((i + 1, e.clone()), c.clone()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Rank over the rationals of a family of sparse rational vectors.
pub fn rational_rank<K: Ord + Clone>(rows: &[BTreeMap<K, Scalar>]) -> Result<usize> {
    let mut columns: BTreeMap<K, usize> = BTreeMap::new();
    for row in rows {
        for k in row.keys() {
            let next = columns.len();
            columns.entry(k.clone()).or_insert(next);
        }
    }
    let width = columns.len();
    let mut matrix: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            let mut dense = vec![BigRational::zero(); width];
            for (k, c) in row {
                let q = c
                    .as_rational()
                    .ok_or_else(|| Error::InvalidArgument("rank needs rational entries".into()))?;
                dense[columns[k]] = q.clone();
            }
            Ok(dense)
        })
        .collect::<Result<_>>()?;

    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let inv = BigRational::one() / &matrix[rank][col];
        for c in col..width {
            matrix[rank][c] = &matrix[rank][c] * &inv;
        }
        for r in 0..matrix.len() {
            if r != rank && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..width {
                    let delta = &factor * &matrix[rank][c];
                    matrix[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn leibniz_generator_vanishes() {
        let f = parse("x1*(x2*x3)").unwrap();
        assert!(generic_evaluate(&f, 3, 5).iter().all(CommPoly::is_zero));
        assert!(identity_oracle(&f, Algebra::Infinite).unwrap());
    }

    #[test]
    fn single_product() {
        let f = parse("x1 x2").unwrap();
        let v = generic_evaluate(&f, 2, 2);
        assert!(v[0].is_zero());
        assert_eq!(v[1].to_string(), "t1_1*t2_1");
    }

    #[test]
    fn degree_three_symmetry() {
        let f = parse("x1 x2 x3 - x2 x1 x3").unwrap();
        assert!(generic_evaluate(&f, 3, 3).iter().all(CommPoly::is_zero));
        let v = generic_evaluate(&f, 3, 4);
        assert!(!v[3].is_zero());
        assert!(identity_oracle(&f, Algebra::Finite(3)).unwrap());
        assert!(!identity_oracle(&f, Algebra::Finite(4)).unwrap());
    }

    #[test]
    fn commutator_not_identity_on_infinite() {
        let f = parse("x1 x2 - x2 x1").unwrap();
        assert!(!identity_oracle(&f, Algebra::Infinite).unwrap());
        let (a, v) = find_witness(&f, Algebra::Infinite, 0).unwrap().unwrap();
        assert_eq!(evaluate(&f, Algebra::Infinite, &a).unwrap(), v);
        assert!(!v.is_zero());
    }

    #[test]
    fn rejects_finite_fields() {
        let f = crate::text::parse_in("x1 x2", crate::scalar::Domain::prime(3).unwrap()).unwrap();
        assert!(matches!(
            identity_oracle(&f, Algebra::Finite(3)),
            Err(Error::FiniteFieldIdentity(_))
        ));
    }

    #[test]
    fn rank_of_small_vectors() {
        let r = |pairs: &[(u32, i64)]| -> BTreeMap<u32, Scalar> {
            pairs.iter().map(|&(k, v)| (k, Scalar::rational(v, 1))).collect()
        };
        let rows = vec![r(&[(1, 1), (2, 2)]), r(&[(1, 2), (2, 4)]), r(&[(3, 1)])];
        assert_eq!(rational_rank(&rows).unwrap(), 2);
    }
}
