use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Coefficient, Ring};
use crate::error::{DgError, Result};

/// Rank of a sparse matrix over a field, rows given as `(column, entry)` lists.
pub fn rank(field: Ring, rows: &[Vec<(usize, Coefficient)>]) -> Result<usize> {
    match field {
        Ring::Rationals => Ok(rank_rational(rows)),
        Ring::IntegersMod(p) if field.is_field() => Ok(rank_mod(p, rows)),
        _ => Err(DgError::NotAField(field.to_string())),
    }
}

fn integer_row(row: &[(usize, Coefficient)]) -> BTreeMap<usize, BigInt> {
    let den = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.to_rational().denom()));
    row.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let q = c.to_rational();
            (*j, q.numer() * (&den / q.denom()))
        })
        .collect()
}

fn primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Fraction-free elimination: `r ← a·r − b·pivot`, then divide out the content.
fn rank_rational(rows: &[Vec<(usize, Coefficient)>]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for row in rows {
        let mut r = integer_row(row);
        while let Some((&c, b)) = r.iter().next() {
            let Some(p) = pivots.get(&c) else {
                primitive(&mut r);
                pivots.insert(c, r);
                break;
            };
            let a = p[&c].clone();
            let b = b.clone();
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (j, v) in &r {
                next.insert(*j, &a * v);
            }
            for (j, v) in p {
                let e = next.entry(*j).or_insert_with(BigInt::zero);
                *e -= &b * v;
            }
            next.retain(|_, v| !v.is_zero());
            if let Some(v) = next.values().next() {
                if v.is_negative() {
                    next.values_mut().for_each(|x| *x = -x.clone());
                }
            }
            primitive(&mut next);
            r = next;
        }
    }
    pivots.len()
}

fn rank_mod(p: u64, rows: &[Vec<(usize, Coefficient)>]) -> usize {
    let field = Ring::IntegersMod(p);
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Coefficient>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, Coefficient> = row.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        while let Some((&c, b)) = r.iter().next() {
            let Some(piv) = pivots.get(&c) else {
                let inv = b.inverse().expect("nonzero entries are units");
                r.values_mut().for_each(|v| *v = v.mul(&inv));
                pivots.insert(c, r);
                break;
            };
            let b = b.clone();
            for (j, v) in piv {
                let e = r.entry(*j).or_insert_with(|| field.zero());
                *e = e.sub(&b.mul(v));
            }
            r.retain(|_, v| !v.is_zero());
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(ring: Ring, m: &[&[i64]]) -> Vec<Vec<(usize, Coefficient)>> {
        m.iter()
            .map(|r| r.iter().enumerate().map(|(j, v)| (j, Coefficient::from_i64(ring, *v))).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        let m: &[&[i64]] = &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]];
        assert_eq!(rank(Ring::Rationals, &rows(Ring::Rationals, m)).unwrap(), 2);
        assert_eq!(rank(Ring::IntegersMod(7), &rows(Ring::IntegersMod(7), m)).unwrap(), 2);
        let m: &[&[i64]] = &[&[2, 0], &[0, 3]];
        assert_eq!(rank(Ring::IntegersMod(2), &rows(Ring::IntegersMod(2), m)).unwrap(), 1);
        assert_eq!(rank(Ring::Rationals, &rows(Ring::Rationals, m)).unwrap(), 2);
        assert!(matches!(rank(Ring::Integers, &[]), Err(DgError::NotAField(_))));
        assert!(matches!(rank(Ring::IntegersMod(6), &[]), Err(DgError::NotAField(_))));
    }
}
