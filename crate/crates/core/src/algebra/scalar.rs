//! Coefficient domains: exact Gaussian rationals and binary64 complex numbers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Commutative ring with unit whose elements can be divided exactly by
/// nonzero integers. Implemented by both scalar fields and by polynomials
/// over them, so the power-sum machinery can run on either.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self;

    fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Which arithmetic a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Approx => f.write_str("approx"),
        }
    }
}

/// A coefficient field. `EXACT` fields compare structurally; approximate
/// ones follow IEEE semantics.
pub trait Field: Ring + Div<Output = Self> + Send + Sync + 'static {
    const MODE: Mode;

    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    fn to_scalar(&self) -> Scalar;
    /// Converts a binary64 value into the field. Exact fields store the
    /// exact binary value of the float.
    fn from_c64(z: Complex64) -> Self;
    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError>;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }
}

/// Complex number with arbitrary-precision rational parts, always in
/// lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat(pub Complex<BigRational>);

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat(Complex::new(re, im))
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat(Complex::new(re, BigRational::zero()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    /// |x|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.0.re * &self.0.re + &self.0.im * &self.0.im
    }

    /// Total order by (real part, imaginary part).
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.re.cmp(&other.0.re).then_with(|| self.0.im.cmp(&other.0.im))
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: Self) -> Self {
        GaussRat(self.0 + rhs.0)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: Self) -> Self {
        GaussRat(self.0 - rhs.0)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: Self) -> Self {
        GaussRat(self.0 * rhs.0)
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero; use [`Field::inv`] for a checked inverse.
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * inv
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> Self {
        GaussRat(-self.0)
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat(Complex::new(BigRational::zero(), BigRational::zero()))
    }
    fn one() -> Self {
        GaussRat(Complex::new(BigRational::one(), BigRational::zero()))
    }
    fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by integer zero");
        let k = BigRational::from_integer(BigInt::from(k));
        GaussRat(Complex::new(&self.0.re / &k, &self.0.im / &k))
    }
}

impl Field for GaussRat {
    const MODE: Mode = Mode::Exact;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat(Complex::new(&self.0.re / &n, -(&self.0.im / &n))))
    }
    fn conj(&self) -> Self {
        GaussRat(self.0.conj())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.0.re), rat_to_f64(&self.0.im))
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn from_c64(z: Complex64) -> Self {
        let re = BigRational::from_float(z.re).unwrap_or_else(BigRational::zero);
        let im = BigRational::from_float(z.im).unwrap_or_else(BigRational::zero);
        GaussRat::new(re, im)
    }
    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError> {
        match s {
            Scalar::Exact(q) => Ok(q.clone()),
            Scalar::Approx(_) => Err(AlgebraError::ModeMismatch),
        }
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
    fn pow(&self, k: usize) -> Self {
        self.powi(k as i32)
    }
}

impl Field for Complex64 {
    const MODE: Mode = Mode::Approx;

    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Approx(*self)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn from_scalar(s: &Scalar) -> Result<Self, AlgebraError> {
        Ok(s.to_c64())
    }
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // to_f64 gives up when both parts overflow; fall back to a scaled quotient.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(900) as u32;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A scalar in either arithmetic mode, as seen at API and file boundaries.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(GaussRat),
    Approx(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Approx(_) => Mode::Approx,
        }
    }

    pub fn int(v: i64) -> Self {
        Scalar::Exact(GaussRat::from_i64(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(GaussRat::from_ratio(num, den))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(q) => q.to_c64(),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(z) => Ring::is_zero(z),
        }
    }

    fn promote_pair(&self, other: &Scalar) -> Pair {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Pair::Exact(a.clone(), b.clone()),
            _ => Pair::Approx(self.to_c64(), other.to_c64()),
        }
    }

    fn strict_pair(&self, other: &Scalar) -> Result<Pair, AlgebraError> {
        if self.mode() != other.mode() {
            return Err(AlgebraError::ModeMismatch);
        }
        Ok(self.promote_pair(other))
    }

    pub fn strict_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.strict_pair(other)?.add())
    }

    pub fn strict_sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.strict_pair(other)?.sub())
    }

    pub fn strict_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.strict_pair(other)?.mul())
    }

    pub fn strict_div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.strict_pair(other)?.div()
    }

    /// Division with promotion of mixed operands.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.promote_pair(other).div()
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    pub fn pow(&self, k: usize) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(Ring::pow(q, k)),
            Scalar::Approx(z) => Scalar::Approx(Ring::pow(z, k)),
        }
    }

    /// Lexicographic (real, imaginary) order used for deterministic output.
    pub fn lex_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.lex_cmp(b),
            _ => {
                let (a, b) = (self.to_c64(), other.to_c64());
                a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
            }
        }
    }
}

enum Pair {
    Exact(GaussRat, GaussRat),
    Approx(Complex64, Complex64),
}

impl Pair {
    fn add(self) -> Scalar {
        match self {
            Pair::Exact(a, b) => Scalar::Exact(a + b),
            Pair::Approx(a, b) => Scalar::Approx(a + b),
        }
    }
    fn sub(self) -> Scalar {
        match self {
            Pair::Exact(a, b) => Scalar::Exact(a - b),
            Pair::Approx(a, b) => Scalar::Approx(a - b),
        }
    }
    fn mul(self) -> Scalar {
        match self {
            Pair::Exact(a, b) => Scalar::Exact(a * b),
            Pair::Approx(a, b) => Scalar::Approx(a * b),
        }
    }
    fn div(self) -> Result<Scalar, AlgebraError> {
        match self {
            Pair::Exact(a, b) => {
                let inv = b.inv().ok_or(AlgebraError::DivisionByZero)?;
                Ok(Scalar::Exact(a * inv))
            }
            Pair::Approx(a, b) => {
                if Ring::is_zero(&b) {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(Scalar::Approx(a / b))
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.promote_pair(&rhs).add()
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.promote_pair(&rhs).sub()
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.promote_pair(&rhs).mul()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Approx(z) => Scalar::Approx(-z),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `{:.16e}` formatting: 17 significant digits, enough to round-trip binary64.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        if im.is_zero() {
            return f.write_str(&fmt_rational(re));
        }
        let im_txt = fmt_rational(&im.abs());
        if re.is_zero() {
            let sign = if im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im_txt}i");
        }
        let sign = if im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", fmt_rational(re), sign, im_txt)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => q.fmt(f),
            Scalar::Approx(z) => {
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Splits `R+Si` / `R-Si` / `Si` into real and imaginary source text.
fn split_complex(s: &str) -> (&str, Option<&str>) {
    let Some(body) = s.strip_suffix('i') else {
        return (s, None);
    };
    let bytes = body.as_bytes();
    let mut cut = None;
    for (idx, &ch) in bytes.iter().enumerate().skip(1) {
        if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            cut = Some(idx);
        }
    }
    match cut {
        Some(idx) => (&body[..idx], Some(&body[idx..])),
        None => ("", Some(body)),
    }
}

fn imag_text(s: &str) -> &str {
    match s {
        "" | "+" => "1",
        "-" => "-1",
        _ => s.strip_prefix('+').unwrap_or(s),
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    /// Accepts `[-]p/q`, `[-]p`, `R+Si`, `R-Si`, `Si` with rational parts
    /// (exact), or the same shapes with decimal parts (approximate).
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(AlgebraError::Parse(src.to_string()));
        }
        let (re_txt, im_txt) = split_complex(&s);
        let im_txt = im_txt.map(imag_text);
        let decimal = |t: &str| t.contains(['.', 'e', 'E']) || t.contains("inf") || t.contains("NaN");
        let is_approx = decimal(re_txt) || im_txt.is_some_and(decimal);
        if is_approx {
            let bad = || AlgebraError::Parse(src.to_string());
            let re = if re_txt.is_empty() { 0.0 } else { re_txt.parse::<f64>().map_err(|_| bad())? };
            let im = match im_txt {
                Some(t) => t.parse::<f64>().map_err(|_| bad())?,
                None => 0.0,
            };
            return Ok(Scalar::Approx(Complex64::new(re, im)));
        }
        let re = if re_txt.is_empty() { BigRational::zero() } else { parse_rational(re_txt)? };
        let im = match im_txt {
            Some(t) => parse_rational(t)?,
            None => BigRational::zero(),
        };
        Ok(Scalar::Exact(GaussRat::new(re, im)))
    }
}

impl FromStr for GaussRat {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Scalar>()? {
            Scalar::Exact(q) => Ok(q),
            Scalar::Approx(_) => Err(AlgebraError::Parse(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q("1/2") + q("1/2"), GaussRat::one());
    }

    #[test]
    fn norm_via_conjugate() {
        let x = q("3/4+1/3i");
        assert_eq!(x.clone() * x.conj(), q("97/144"));
    }

    #[test]
    fn cube_of_negative_half() {
        assert_eq!(Ring::pow(&q("-1/2"), 3), q("-1/8"));
        assert_eq!(Scalar::ratio(-1, 2).pow(3), Scalar::ratio(-1, 8));
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = q("6/-4");
        assert_eq!(x.re().numer(), &BigInt::from(-3));
        assert_eq!(x.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let err = Scalar::int(1).checked_div(&Scalar::int(0)).unwrap_err();
        assert_eq!(err, AlgebraError::DivisionByZero);
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn strict_mode_rejects_mixing() {
        let e = Scalar::int(1);
        let a = Scalar::Approx(Complex64::new(1.0, 0.0));
        assert_eq!(e.strict_add(&a).unwrap_err(), AlgebraError::ModeMismatch);
        // Non-strict arithmetic promotes.
        assert_eq!((e + a).mode(), Mode::Approx);
    }

    #[test]
    fn parse_and_print() {
        for txt in ["-1/2", "3/4+1/3i", "1-3i", "2i", "-i", "7", "0"] {
            let s: Scalar = txt.parse().unwrap();
            assert_eq!(s.mode(), Mode::Exact, "{txt}");
            let back: Scalar = s.to_string().parse().unwrap();
            assert_eq!(back, s, "{txt}");
        }
        assert_eq!(q("i"), GaussRat::from_parts((0, 1), (1, 1)));
        assert_eq!(q("-i").to_string(), "-1i");
        assert_eq!(q("3/4+1/3i").to_string(), "3/4+1/3i");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn decimals_parse_as_approx() {
        let s: Scalar = "0.5-2.5e-1i".parse().unwrap();
        assert_eq!(s, Scalar::Approx(Complex64::new(0.5, -0.25)));
        let back: Scalar = s.to_string().parse().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn exact_distributivity_is_order_independent() {
        let (x, y, z) = (q("1/3+2/7i"), q("-5/11"), q("2-1/9i"));
        let lhs = (x.clone() + y.clone()) * z.clone();
        let rhs = x * z.clone() + y * z;
        assert_eq!(lhs, rhs);
    }
}
