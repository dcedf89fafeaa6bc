//! Exact-rational reference evaluation of the popularity allocation.
//!
//! Written straight from the recursion with `BigRational`, sharing no code
//! with the floating-point implementation. Inputs are integers so every
//! intermediate is exact.

#![allow(dead_code)]

use num::{BigInt, BigRational, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone)]
pub struct OracleAllocation {
    pub beta: Vec<Q>,
    pub x_terms: Vec<Q>,
    pub a: Option<Q>,
    /// True if the capped branch was taken at the last rank.
    pub last_rank_capped: bool,
}

impl OracleAllocation {
    pub fn beta_f64(&self) -> Vec<f64> {
        self.beta.iter().map(|b| b.to_f64().unwrap()).collect()
    }
}

/// `counts` must already be sorted in non-increasing order.
pub fn allocate(capacity: i64, beta_max: i64, beta_min: i64, counts: &[u64]) -> OracleAllocation {
    let m_total = counts.len() as i64;
    assert!(m_total >= 1);
    assert!(m_total * beta_min <= capacity);
    let k: u64 = counts.iter().sum();
    let (c, bmax, bmin) = (q(capacity), q(beta_max), q(beta_min));

    if beta_max * m_total <= capacity {
        return OracleAllocation {
            beta: vec![bmax; counts.len()],
            x_terms: vec![Q::zero(); counts.len()],
            a: None,
            last_rank_capped: false,
        };
    }
    if k == 0 {
        let share = &c / q(m_total);
        return OracleAllocation {
            beta: vec![share; counts.len()],
            x_terms: vec![Q::zero(); counts.len()],
            a: None,
            last_rank_capped: false,
        };
    }

    let mq = q(m_total);
    let a = (&mq / q(k as i64)) * (&c / &mq - &bmin);
    let diff = &bmax - &bmin;
    let mut beta = Vec::with_capacity(counts.len());
    let mut xs: Vec<Q> = Vec::with_capacity(counts.len());
    let mut last_rank_capped = false;
    for (idx, &km) in counts.iter().enumerate() {
        let m = idx as i64 + 1;
        let carried: Q = xs.iter().fold(Q::zero(), |acc, x| acc + x);
        let s = &a * q(km as i64) + carried;
        if s >= diff {
            beta.push(bmax.clone());
            if m == m_total {
                last_rank_capped = true;
                xs.push(Q::zero());
            } else {
                xs.push((&s - &diff) / q(m_total - m));
            }
        } else {
            beta.push(&bmin + &s);
            xs.push(Q::zero());
        }
    }
    OracleAllocation {
        beta,
        x_terms: xs,
        a: Some(a),
        last_rank_capped,
    }
}

/// Count-weighted mean of `beta_m / beta_max`.
pub fn average_satisfaction(beta_max: i64, capacity: i64, counts: &[u64], beta: &[Q]) -> Q {
    let m_total = counts.len() as i64;
    if beta_max * m_total <= capacity {
        return q(1);
    }
    let k: u64 = counts.iter().sum();
    let num = counts
        .iter()
        .zip(beta)
        .fold(Q::zero(), |acc, (&km, b)| acc + b * q(km as i64));
    num / (q(k as i64) * q(beta_max))
}

/// (improved, degraded, unchanged) relative to the equal-share allocation.
pub fn quality_shift(capacity: i64, beta_max: i64, counts: &[u64], beta: &[Q]) -> (u64, u64, u64) {
    let m_total = counts.len() as i64;
    let equal = if beta_max * m_total <= capacity {
        q(beta_max)
    } else {
        q(capacity) / q(m_total)
    };
    let mut out = (0, 0, 0);
    for (&km, b) in counts.iter().zip(beta) {
        if *b > equal {
            out.0 += km;
        } else if *b < equal {
            out.1 += km;
        } else {
            out.2 += km;
        }
    }
    out
}
