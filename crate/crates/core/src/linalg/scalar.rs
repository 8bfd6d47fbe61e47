//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of Q(i). `BigRational` keeps both parts gcd-reduced with a
/// positive denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Largest absolute numerator or denominator, a crude size measure.
    pub fn height(&self) -> BigInt {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .into_iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Best rational approximation of `x` by continued fractions, stopping once
/// the error is below `tol` or the denominator would exceed `max_den`.
pub fn rationalize(x: f64, tol: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    let max_den = BigInt::from(max_den);
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i128);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = BigRational::new(h1.clone(), k1.clone());
        if (ratio_to_f64(&approx) - x).abs() <= tol {
            return Some(approx);
        }
        let frac = rest - a;
        if frac.abs() < 1e-300 {
            return Some(approx);
        }
        rest = 1.0 / frac;
    }
    None
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.is_real() && o.is_real() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        if o.is_real() {
            let d = &o.re;
            assert!(!d.is_zero(), "division by zero");
            return GaussianRational { re: &self.re / d, im: &self.im / d };
        }
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Lexicographic on (re, im). Not compatible with the field structure; it
/// only exists to make sorting and tie-breaking deterministic.
impl Ord for GaussianRational {
    fn cmp(&self, o: &Self) -> Ordering {
        self.re.cmp(&o.re).then_with(|| self.im.cmp(&o.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = |v: &BigRational| -> String {
            if v.is_one() {
                String::new()
            } else if *v == -BigRational::one() {
                "-".into()
            } else {
                v.to_string()
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", unit(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, unit(&-&self.im))
                } else {
                    write!(f, "{}+{}i", self.re, unit(&self.im))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact number {0:?}")]
pub struct ParseScalarError(pub String);

/// Parses integers, `p/q` fractions and terminating decimals exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let err = || ParseScalarError(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| err())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| err())?;
        let mag = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if neg { -mag } else { mag });
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| err())
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` alone meaning unit
    /// imaginary. Each part may be an integer, fraction or decimal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ParseScalarError(s.to_string());
        let Some(body) = compact.strip_suffix('i') else {
            return parse_rational(&compact).map(Self::real);
        };
        let coeff = |t: &str| -> Result<BigRational, ParseScalarError> {
            match t {
                "" | "+" => Ok(BigRational::one()),
                "-" => Ok(-BigRational::one()),
                _ => parse_rational(t).map_err(|_| err()),
            }
        };
        let split = body
            .char_indices()
            .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx)
            .next_back();
        match split {
            Some(idx) => Ok(Self { re: parse_rational(&body[..idx]).map_err(|_| err())?, im: coeff(&body[idx..])? }),
            None => Ok(Self { re: BigRational::zero(), im: coeff(body)? }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "-3/4", "i", "-i", "2i", "1+i", "1/2-3/7i", "-5+2i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("0.25"), GaussianRational::from_ratio(1, 4));
        assert_eq!(g("-1.5"), GaussianRational::from_ratio(-3, 2));
        assert_eq!(g(" 1 + 2 i "), GaussianRational::from_parts((1, 1), (2, 1)));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1+".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn field_operations() {
        let a = g("1/2+3i");
        let b = g("-2+1/3i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        assert_eq!(&g("i") * &g("i"), g("-1"));
        assert_eq!(a.conj(), g("1/2-3i"));
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn continued_fraction_snapping() {
        assert_eq!(rationalize(0.333_333_333_333_333_3, 1e-12, 1_000_000), Some(BigRational::new(1.into(), 3.into())));
        assert_eq!(rationalize(-2.5, 1e-12, 10), Some(BigRational::new((-5).into(), 2.into())));
        assert_eq!(rationalize(std::f64::consts::SQRT_2, 1e-14, 1000), None);
    }
}
