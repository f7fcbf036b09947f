//! Lens-space parameters and the ceiling continued fraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensParams {
    pub p: i64,
    pub q: i64,
    /// Continued-fraction entries a_1, ..., a_k.
    pub a: Vec<i64>,
    /// Scallop multipliers m_1, ..., m_k.
    pub m: Vec<i64>,
}

/// [a_1, -a_2, a_3, ...] = a_1 - 1/(a_2 - 1/(a_3 - ...)).
pub fn evaluate(a: &[i64]) -> Result<BigRational> {
    let mut it = a.iter().rev();
    let Some(&last) = it.next() else { return Err(Error::Lens("empty expansion".into())) };
    let mut x = BigRational::from_integer(last.into());
    for &ai in it {
        if x.is_zero() {
            return Err(Error::Lens(format!("expansion {a:?} divides by zero")));
        }
        x = BigRational::from_integer(ai.into()) - x.recip();
    }
    Ok(x)
}

/// Least-integer-above expansion of a rational x ≥ 1.
pub fn ceiling_expansion(x: &BigRational) -> Result<Vec<i64>> {
    if x < &BigRational::one() {
        return Err(Error::Lens(format!("{x} is below 1")));
    }
    let mut out = Vec::new();
    let mut x = x.clone();
    loop {
        let c = x.ceil();
        out.push(c.to_integer().to_i64().ok_or_else(|| Error::Lens("entry out of range".into()))?);
        if c == x {
            return Ok(out);
        }
        x = (c - x).recip();
    }
}

pub fn entries_from_multipliers(m: &[i64]) -> Vec<i64> {
    let k = m.len();
    m.iter()
        .enumerate()
        .map(|(i, &mi)| {
            if k == 1 {
                mi
            } else if i == 0 || i == k - 1 {
                mi + 1
            } else {
                mi + 2
            }
        })
        .collect()
}

pub fn multipliers_from_entries(a: &[i64]) -> Vec<i64> {
    let k = a.len();
    a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            if k == 1 {
                ai
            } else if i == 0 || i == k - 1 {
                ai - 1
            } else {
                ai - 2
            }
        })
        .collect()
}

fn check_multipliers(m: &[i64]) -> Result<()> {
    let k = m.len();
    if k == 0 {
        return Err(Error::Lens("no multipliers".into()));
    }
    if m[0] <= 0 || m[k - 1] <= 0 {
        return Err(Error::Lens(format!("end multipliers must be positive, got {m:?}")));
    }
    if m.iter().any(|&x| x < 0) {
        return Err(Error::Lens(format!("interior multipliers must be non-negative, got {m:?}")));
    }
    Ok(())
}

pub fn lens_from_multipliers(m: &[i64]) -> Result<LensParams> {
    check_multipliers(m)?;
    let a = entries_from_multipliers(m);
    let x = evaluate(&a)?;
    if !x.is_positive() {
        return Err(Error::Lens(format!("expansion {a:?} is not positive")));
    }
    let to = |v: &BigInt| v.to_i64().ok_or_else(|| Error::Lens("value out of range".into()));
    Ok(LensParams { p: to(x.numer())?, q: to(x.denom())?, a, m: m.to_vec() })
}

pub fn multipliers_from_lens(p: i64, q: i64) -> Result<LensParams> {
    if q < 1 || p < q {
        return Err(Error::Lens(format!("need p >= q >= 1, got {p}/{q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Lens(format!("{p} and {q} are not coprime")));
    }
    let a = ceiling_expansion(&BigRational::new(p.into(), q.into()))?;
    let m = multipliers_from_entries(&a);
    check_multipliers(&m)?;
    Ok(LensParams { p, q, a, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn forward_examples() {
        let l = lens_from_multipliers(&[5]).unwrap();
        assert_eq!((l.p, l.q), (5, 1));
        let l = lens_from_multipliers(&[1, 1]).unwrap();
        assert_eq!((l.a.clone(), l.p, l.q), (vec![2, 2], 3, 2));
        // 3 - 1/(2 - 1/2) by hand.
        let oracle = frac(3, 1) - (frac(2, 1) - frac(1, 2)).recip();
        let l = lens_from_multipliers(&[2, 0, 1]).unwrap();
        assert_eq!(l.a, vec![3, 2, 2]);
        assert_eq!(BigRational::new(l.p.into(), l.q.into()), oracle);
        assert_eq!((l.p, l.q), (7, 3));
    }

    #[test]
    fn backward_examples() {
        assert_eq!(multipliers_from_lens(1, 1).unwrap().m, vec![1]);
        assert_eq!(multipliers_from_lens(7, 3).unwrap().m, vec![2, 0, 1]);
        assert!(multipliers_from_lens(4, 2).is_err());
        assert!(multipliers_from_lens(2, 3).is_err());
    }

    #[test]
    fn bad_sign_patterns() {
        assert!(lens_from_multipliers(&[0]).is_err());
        assert!(lens_from_multipliers(&[1, -1, 1]).is_err());
        assert!(lens_from_multipliers(&[1, 0]).is_err());
    }

    #[test]
    fn seven_fifths() {
        let a = ceiling_expansion(&frac(7, 5)).unwrap();
        assert_eq!(evaluate(&a).unwrap(), frac(7, 5));
        assert_eq!(a, vec![2, 2, 3]);
    }
}
