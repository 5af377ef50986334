use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::snf::smith_normal_form;
use crate::error::Error;

/// Coefficient choice for every computation in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coeffs {
    Z,
    Q,
    /// Prime field `F_p`, `p < 2^31`.
    Fp(u32),
}

impl Coeffs {
    pub const F2: Coeffs = Coeffs::Fp(2);

    pub fn is_field(self) -> bool {
        !matches!(self, Coeffs::Z)
    }

    /// `fp:<p>` requires `p` prime.
    pub fn prime(p: u32) -> Result<Self, Error> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime below 2^31")));
        }
        Ok(Coeffs::Fp(p))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeffs::Z => f.write_str("z"),
            Coeffs::Q => f.write_str("q"),
            Coeffs::Fp(2) => f.write_str("f2"),
            Coeffs::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Coeffs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Coeffs::Z),
            "q" => Ok(Coeffs::Q),
            "f2" => Ok(Coeffs::F2),
            other => match other.strip_prefix("fp:") {
                Some(p) => {
                    let p: u32 = p.parse().map_err(|_| Error::InvalidInput(format!("bad prime in {s:?}")))?;
                    Coeffs::prime(p)
                }
                None => Err(Error::InvalidInput(format!("unknown coefficients {s:?}; use z, q, f2 or fp:<prime>"))),
            },
        }
    }
}

/// Isomorphism class of a finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`
/// with `d_1 | d_2 | …`, or of a vector space of dimension `r` when the
/// coefficients are a field (torsion is then always empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupClass {
    pub coeffs: Coeffs,
    pub rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroupClass {
    pub fn zero(coeffs: Coeffs) -> Self {
        AbelianGroupClass { coeffs, rank: 0, torsion: Vec::new() }
    }

    pub fn free(coeffs: Coeffs, rank: usize) -> Self {
        AbelianGroupClass { coeffs, rank, torsion: Vec::new() }
    }

    /// Builds `Z^rank ⊕ ⊕ Z/d`, normalising arbitrary cyclic orders into
    /// elementary divisors. Orders 1 are dropped; order 0 adds to the rank.
    pub fn integral<I: IntoIterator<Item = BigUint>>(rank: usize, orders: I) -> Self {
        let mut rank = rank;
        let mut cyclic = Vec::new();
        for d in orders {
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                cyclic.push(d);
            }
        }
        AbelianGroupClass { coeffs: Coeffs::Z, rank, torsion: normalise_torsion(cyclic) }
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs, other.coeffs, "direct sum across coefficient systems");
        if self.coeffs.is_field() {
            return AbelianGroupClass::free(self.coeffs, self.rank + other.rank);
        }
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        AbelianGroupClass { coeffs: Coeffs::Z, rank: self.rank + other.rank, torsion: normalise_torsion(t) }
    }
}

/// Invariant factors of `⊕ Z/d_i`: the Smith form of `diag(d_i)`.
fn normalise_torsion(orders: Vec<BigUint>) -> Vec<BigUint> {
    if orders.len() <= 1 {
        return orders;
    }
    let already = orders.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
    if already {
        return orders;
    }
    let n = orders.len();
    let m = Matrix::from_fn(n, n, |i, j| if i == j { BigInt::from(orders[i].clone()) } else { BigInt::zero() });
    smith_normal_form(&m)
        .into_iter()
        .filter_map(|d| d.to_biguint())
        .filter(|d| !d.is_one())
        .collect()
}

impl fmt::Display for AbelianGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let ring = match self.coeffs {
            Coeffs::Z => "Z".to_string(),
            Coeffs::Q => "Q".to_string(),
            Coeffs::Fp(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(ring.clone()),
            r => parts.push(format!("{ring}^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
