//! Rational coweights: an integer vector over a common positive denominator.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `num / den`, always reduced (`gcd(num..., den) == 1`, `den > 0`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatVec {
    num: Vec<i64>,
    den: i64,
}

impl RatVec {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut r = RatVec { num, den };
        r.reduce();
        r
    }

    pub fn integral(v: Vec<i64>) -> Self {
        RatVec { num: v, den: 1 }
    }

    pub fn zero(n: usize) -> Self {
        Self::integral(vec![0; n])
    }

    fn reduce(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|x| *x /= g);
        }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn component(&self, i: usize) -> Ratio<i64> {
        Ratio::new(self.num[i], self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn to_integral(&self) -> Option<Vec<i64>> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        let l = self.den.lcm(&other.den);
        let (a, b) = (l / self.den, l / other.den);
        RatVec::new(self.num.iter().zip(&other.num).map(|(x, y)| a * x + b * y).collect(), l)
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        self.add(&other.scale(Ratio::from_integer(-1)))
    }

    pub fn scale(&self, k: Ratio<i64>) -> RatVec {
        RatVec::new(self.num.iter().map(|x| x * k.numer()).collect(), self.den * k.denom())
    }

    /// Pairing with an integral functional.
    pub fn pair(&self, functional: &[i64]) -> Ratio<i64> {
        Ratio::new(crate::linalg::dot(functional, &self.num), self.den)
    }

    /// Parses `"1/2,0,-3/4"`-style input.
    pub fn parse(s: &str) -> Result<RatVec> {
        let mut comps = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let r = match tok.split_once('/') {
                Some((p, q)) => {
                    let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {tok:?}")))?;
                    let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {tok:?}")))?;
                    if q == 0 {
                        return Err(Error::Parse(format!("zero denominator in {tok:?}")));
                    }
                    Ratio::new(p, q)
                }
                None => Ratio::from_integer(
                    tok.parse().map_err(|_| Error::Parse(format!("bad integer {tok:?}")))?,
                ),
            };
            comps.push(r);
        }
        Ok(RatVec::from_ratios(&comps))
    }

    pub fn from_ratios(comps: &[Ratio<i64>]) -> RatVec {
        let den = comps.iter().fold(1i64, |l, r| l.lcm(r.denom()));
        RatVec::new(comps.iter().map(|r| r.numer() * (den / r.denom())).collect(), den)
    }

    /// Component strings like `"1/2"` or `"3"`.
    pub fn to_strings(&self) -> Vec<String> {
        (0..self.len())
            .map(|i| {
                let r = self.component(i);
                if *r.denom() == 1 {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            })
            .collect()
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(","))
    }
}

/// Solves `a·x = b` for square `a` over `ℚ`; `None` if singular.
pub fn solve_square(a: &[Vec<Ratio<i64>>], b: &[Ratio<i64>]) -> Option<Vec<Ratio<i64>>> {
    let n = a.len();
    let zero = Ratio::from_integer(0);
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != zero)?;
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && m[r][c] != zero {
                let f = m[r][c];
                for k in c..=n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}
