//! Exact scalars and the pointwise vector-lattice structure on `Q^n`.
//!
//! [`Rat`] is a canonical arbitrary-precision rational, [`ExtRat`] adjoins
//! the two infinities, and [`RatVec`] is an element of `Q^n` ordered
//! coordinatewise.

use std::fmt;
use std::ops::{Add, Div, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    pub fn ceil(&self) -> Rat {
        Rat(self.0.ceil())
    }

    /// Number of bits in `max(|num|, den)`.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    /// Canonical form check, used by the property tests.
    pub fn is_canonical(&self) -> bool {
        self.denom().is_positive() && self.numer().gcd(self.denom()).is_one()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p` or `p/q` with `q > 0`; non-canonical input is reduced.
    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits_ok = |t: &str, signed: bool| {
            let t = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits_ok(num, true) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) if digits_ok(d, false) => d.parse().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

// Division by zero panics, as with the wrapped type; use `checked_div` on
// untrusted operands.
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Rationals extended by `-inf` and `+inf`, totally ordered as the two-point
/// compactification.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtRat {
    MinusInf,
    Finite(Rat),
    PlusInf,
}

impl ExtRat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn abs(&self) -> ExtRat {
        match self {
            ExtRat::Finite(q) => ExtRat::Finite(q.abs()),
            _ => ExtRat::PlusInf,
        }
    }

    /// Sums with opposite infinities are undefined and rejected.
    pub fn checked_add(&self, other: &ExtRat) -> Result<ExtRat> {
        use ExtRat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => Err(Error::UndefinedExt("inf + -inf")),
            (PlusInf, _) | (_, PlusInf) => Ok(PlusInf),
            (MinusInf, _) | (_, MinusInf) => Ok(MinusInf),
        }
    }
}

impl Neg for ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        match self {
            ExtRat::MinusInf => ExtRat::PlusInf,
            ExtRat::PlusInf => ExtRat::MinusInf,
            ExtRat::Finite(q) => ExtRat::Finite(-q),
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(q: Rat) -> Self {
        ExtRat::Finite(q)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::MinusInf => f.write_str("-inf"),
            ExtRat::PlusInf => f.write_str("inf"),
            ExtRat::Finite(q) => q.fmt(f),
        }
    }
}

impl FromStr for ExtRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExtRat> {
        match s {
            "inf" => Ok(ExtRat::PlusInf),
            "-inf" => Ok(ExtRat::MinusInf),
            _ => s.parse().map(ExtRat::Finite),
        }
    }
}

/// An element of `Q^n` with the coordinatewise order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    /// Panics on an empty entry list; `Q^0` is not a lattice we model.
    pub fn new(entries: Vec<Rat>) -> RatVec {
        assert!(!entries.is_empty(), "RatVec must have dim >= 1");
        RatVec(entries)
    }

    pub fn from_ints(xs: &[i64]) -> RatVec {
        RatVec::new(xs.iter().map(|&x| Rat::int(x)).collect())
    }

    pub fn zeros(dim: usize) -> RatVec {
        RatVec::new(vec![Rat::zero(); dim])
    }

    /// The standard basis vector `e_{i+1}` (indices are 0-based internally).
    pub fn basis(dim: usize, i: usize) -> RatVec {
        let mut v = RatVec::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn constant(dim: usize, c: Rat) -> RatVec {
        RatVec::new(vec![c; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Coordinates with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn check_dim(&self, other: &RatVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    pub fn require_nonneg(&self, what: &'static str) -> Result<()> {
        if !self.is_nonneg() {
            return Err(Error::Negative { what, value: self.to_string() });
        }
        Ok(())
    }

    fn zip_with(&self, other: &RatVec, op: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatVec> {
        self.check_dim(other)?;
        Ok(RatVec(self.0.iter().zip(&other.0).map(|(a, b)| op(a, b)).collect()))
    }

    pub fn map(&self, op: impl Fn(&Rat) -> Rat) -> RatVec {
        RatVec(self.0.iter().map(op).collect())
    }

    pub fn add(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> RatVec {
        self.map(|a| a * c)
    }

    pub fn neg(&self) -> RatVec {
        self.map(|a| -a)
    }

    pub fn meet(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn join(&self, other: &RatVec) -> Result<RatVec> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    pub fn pos(&self) -> RatVec {
        self.map(|a| if a.is_positive() { a.clone() } else { Rat::zero() })
    }

    pub fn neg_part(&self) -> RatVec {
        self.map(|a| if a.is_negative() { -a } else { Rat::zero() })
    }

    pub fn abs(&self) -> RatVec {
        self.map(Rat::abs)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &RatVec) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `self <= other` and `self != other`.
    pub fn lt(&self, other: &RatVec) -> Result<bool> {
        Ok(self.le(other)? && self != other)
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            x.fmt(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for RatVec {
    type Err = Error;
    fn from_str(s: &str) -> Result<RatVec> {
        let entries = s.split_whitespace().map(str::parse).collect::<Result<Vec<Rat>>>()?;
        if entries.is_empty() {
            return Err(Error::BadRational(s.to_string()));
        }
        Ok(RatVec(entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetJoin {
    pub meet: RatVec,
    pub join: RatVec,
}

pub fn vec_lattice(f: &RatVec, g: &RatVec) -> Result<MeetJoin> {
    Ok(MeetJoin { meet: f.meet(g)?, join: f.join(g)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts {
    pub pos: RatVec,
    pub neg: RatVec,
    pub abs: RatVec,
}

pub fn parts(f: &RatVec) -> Parts {
    let pos = f.pos();
    let neg = f.neg_part();
    let abs = pos.add(&neg).expect("same dim");
    Parts { pos, neg, abs }
}

/// Smallest `n >= 1` with `n f <= g` false, if `f != 0`.
///
/// For `f_i > 0` the premise breaks at `n = floor(g_i / f_i) + 1`.
pub fn archimedean_breaking_n(f: &RatVec, g: &RatVec) -> Result<Option<BigInt>> {
    f.check_dim(g)?;
    f.require_nonneg("f")?;
    g.require_nonneg("g")?;
    let n = (0..f.dim()).filter(|&i| f[i].is_positive()).map(|i| (&g[i] / &f[i]).floor().numer() + 1).min();
    Ok(n)
}

/// Decides "`n f <= g` for all `n` implies `f = 0`" for this pair.
pub fn is_archimedean_witness(f: &RatVec, g: &RatVec) -> Result<bool> {
    let breaking = archimedean_breaking_n(f, g)?;
    Ok(f.is_zero() || breaking.is_some())
}

/// The rational of smallest denominator in `[lo, hi]`.
///
/// Ties (only possible between integers) go to the smallest magnitude, then
/// to the nonnegative one. The descent runs the Stern-Brocot tree in
/// run-length form, i.e. on continued-fraction partial quotients.
pub fn rational_reconstruct(lo: &Rat, hi: &Rat) -> Result<Rat> {
    if lo > hi {
        return Err(Error::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() });
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Ok(Rat::zero());
    }
    if hi.is_negative() {
        return Ok(-simplest_positive(&-hi, &-lo));
    }
    Ok(simplest_positive(lo, hi))
}

/// `0 < lo <= hi`.
fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    // Iterative form of: if an integer fits, take the least one; otherwise
    // strip the common integer part and recurse on the reciprocal interval.
    let mut quotients: Vec<Rat> = Vec::new();
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let last = loop {
        let c = lo.ceil();
        if c <= hi {
            break c;
        }
        let q = lo.floor();
        let next_lo = Rat::one() / (&hi - &q);
        let next_hi = Rat::one() / (&lo - &q);
        quotients.push(q);
        lo = next_lo;
        hi = next_hi;
    };
    quotients.into_iter().rev().fold(last, |acc, q| q + Rat::one() / acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn v(s: &str) -> RatVec {
        s.parse().unwrap()
    }

    #[test]
    fn lattice_examples() {
        let mj = vec_lattice(&v("1 3"), &v("2 2")).unwrap();
        assert_eq!(mj.meet, v("1 2"));
        assert_eq!(mj.join, v("2 3"));

        let mj = vec_lattice(&v("5 -1"), &v("5 -1")).unwrap();
        assert_eq!(mj.meet, v("5 -1"));
        assert_eq!(mj.join, v("5 -1"));

        let mj = vec_lattice(&v("1/2 -1/3"), &v("-1/2 1/3")).unwrap();
        assert_eq!(mj.meet, v("-1/2 -1/3"));
        assert_eq!(mj.join, v("1/2 1/3"));
    }

    #[test]
    fn lattice_dim_mismatch() {
        let err = vec_lattice(&v("1 2"), &v("1 2 3")).unwrap_err();
        assert_eq!(err, Error::DimMismatch { left: 2, right: 3 });
    }

    #[test]
    fn parts_examples() {
        let p = parts(&v("2 -3"));
        assert_eq!((p.pos, p.neg, p.abs), (v("2 0"), v("0 3"), v("2 3")));
        let p = parts(&RatVec::zeros(2));
        assert!(p.pos.is_zero() && p.neg.is_zero() && p.abs.is_zero());
        let p = parts(&v("-1/2"));
        assert_eq!((p.pos, p.neg, p.abs), (v("0"), v("1/2"), v("1/2")));
    }

    #[test]
    fn archimedean_examples() {
        assert!(is_archimedean_witness(&v("0 0"), &v("1 1")).unwrap());
        assert!(is_archimedean_witness(&v("1 0"), &v("100 0")).unwrap());
        assert_eq!(archimedean_breaking_n(&v("1 0"), &v("100 0")).unwrap(), Some(101.into()));
        assert!(is_archimedean_witness(&v("1/7"), &v("3")).unwrap());
        // 21 * 1/7 = 3 <= 3, 22/7 > 3
        assert_eq!(archimedean_breaking_n(&v("1/7"), &v("3")).unwrap(), Some(22.into()));
        assert!(matches!(is_archimedean_witness(&v("-1"), &v("3")), Err(Error::Negative { .. })));
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(rational_reconstruct(&r("1/3"), &r("1/2")).unwrap(), r("1/2"));
        assert_eq!(rational_reconstruct(&r("2"), &r("2")).unwrap(), r("2"));
        assert_eq!(rational_reconstruct(&r("7/5"), &r("3/2")).unwrap(), r("3/2"));
        assert_eq!(rational_reconstruct(&r("-1"), &r("1")).unwrap(), r("0"));
        assert_eq!(rational_reconstruct(&r("-5/2"), &r("-3/2")).unwrap(), r("-2"));
        assert_eq!(rational_reconstruct(&r("3/2"), &r("7/2")).unwrap(), r("2"));
        assert!(matches!(rational_reconstruct(&r("1"), &r("0")), Err(Error::EmptyInterval { .. })));
    }

    #[test]
    fn serialization_is_canonical() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-6/3").to_string(), "-2");
        assert_eq!(r("0/5").to_string(), "0");
        assert_eq!(ExtRat::PlusInf.to_string(), "inf");
        assert_eq!(ExtRat::MinusInf.to_string(), "-inf");
        assert_eq!(v("3 1/2 5").to_string(), "3 1/2 5");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1/-2".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!("--1".parse::<Rat>().is_err());
    }

    #[test]
    fn ext_order_and_sums() {
        let a = ExtRat::Finite(r("-100"));
        assert!(ExtRat::MinusInf < a && a < ExtRat::PlusInf);
        assert_eq!(a.clone().min(ExtRat::MinusInf), ExtRat::MinusInf);
        assert_eq!(a.clone().max(ExtRat::PlusInf), ExtRat::PlusInf);
        assert_eq!(-ExtRat::PlusInf, ExtRat::MinusInf);
        assert!(ExtRat::PlusInf.checked_add(&ExtRat::MinusInf).is_err());
        assert_eq!(ExtRat::PlusInf.checked_add(&a).unwrap(), ExtRat::PlusInf);
    }

    #[test]
    fn big_intermediates_stay_exact() {
        let mut x = r("1/3");
        for _ in 0..6 {
            x = &x * &x + r("1/7");
        }
        assert!(x.is_canonical());
        assert!(x.bit_size() > 64);
    }
}
