//! Single-variable Laurent polynomials in `t` over an exact coefficient ring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// `sum_k c_k t^(low + k)`, stored densely. The first and last stored
/// coefficients are nonzero; the zero polynomial stores nothing.
#[derive(Clone)]
pub struct LaurentPoly<R: Ring> {
    ring: R,
    low: i64,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(ring: &R) -> Self {
        LaurentPoly { ring: ring.clone(), low: 0, coeffs: Vec::new() }
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::monomial(ring, c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(ring: &R, c: R::Elem, k: i64) -> Self {
        Self::from_coeffs(ring, k, vec![c])
    }

    /// `t`.
    pub fn t(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    /// Coefficients of `t^low, t^(low+1), ...`; zeros at either end are trimmed.
    pub fn from_coeffs(ring: &R, low: i64, coeffs: Vec<R::Elem>) -> Self {
        let mut p = LaurentPoly { ring: ring.clone(), low, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_i64s(ring: &R, low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ring, low, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| self.ring.is_zero(c)).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0] == self.ring.one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exponent(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `max_exponent - min_exponent`, the degree after shifting to an ordinary
    /// polynomial with nonzero constant term.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeff(&self, k: i64) -> R::Elem {
        if k < self.low {
            return self.ring.zero();
        }
        self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { ring: self.ring.clone(), low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::from_coeffs(&self.ring, self.low, coeffs)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "ring mismatch: {} vs {}",
                self.ring.kind(),
                other.ring.kind()
            )))
        }
    }

    /// `self - other` without the ring check (same ring assumed).
    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let r = &self.ring;
        if self.is_zero() {
            return if subtract { -other } else { other.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.max_exponent().unwrap().max(other.max_exponent().unwrap());
        let mut coeffs = vec![r.zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] = c.clone();
        }
        let off = (other.low - low) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[off + k];
            *slot = if subtract { r.sub(slot, c) } else { r.add(slot, c) };
        }
        Self::from_coeffs(r, low, coeffs)
    }

    fn product(&self, other: &Self) -> Self {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Self::zero(r);
        }
        let mut coeffs = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = r.mul(a, b);
                coeffs[i + j] = r.add(&coeffs[i + j], &prod);
            }
        }
        Self::from_coeffs(r, self.low + other.low, coeffs)
    }

    /// Long division of ordinary polynomials given by ascending coefficient
    /// vectors. Quotient coefficients divide exactly by `b`'s leading
    /// coefficient, or the division fails with `None`.
    fn long_division(
        r: &R,
        a: &[R::Elem],
        b: &[R::Elem],
    ) -> Option<(Vec<R::Elem>, Vec<R::Elem>)> {
        let lead = b.last().expect("nonzero divisor");
        let lead_inv = r.inverse(lead);
        let mut rem: Vec<R::Elem> = a.to_vec();
        if rem.len() < b.len() {
            return Some((Vec::new(), rem));
        }
        let qlen = rem.len() - b.len() + 1;
        let mut q = vec![r.zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + b.len() - 1];
            if r.is_zero(top) {
                continue;
            }
            let c = match &lead_inv {
                Some(inv) => r.mul(top, inv),
                None => r.divide_exact(top, lead)?,
            };
            for (i, bc) in b.iter().enumerate() {
                let prod = r.mul(&c, bc);
                rem[k + i] = r.sub(&rem[k + i], &prod);
            }
            q[k] = c;
        }
        rem.truncate(b.len() - 1);
        Some((q, rem))
    }

    /// Division with remainder after shifting both operands to ordinary
    /// polynomials: `self = q * b + r` with `r = 0` or `span(r) < span(b)`.
    ///
    /// Over the integers the divisor must have leading coefficient `±1`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_ring(b)?;
        let r = &self.ring;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(r), Self::zero(r)));
        }
        if !r.is_field() && !r.is_unit(b.leading_coeff().unwrap()) {
            return Err(Error::NonMonicDivisor);
        }
        let (q, rem) = Self::long_division(r, &self.coeffs, &b.coeffs)
            .expect("unit leading coefficient always divides");
        let q = Self::from_coeffs(r, self.low - b.low, q);
        let rem = Self::from_coeffs(r, self.low, rem);
        Ok((q, rem))
    }

    /// The Laurent polynomial `q` with `self = q * b`, if one exists.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let r = &self.ring;
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(r));
        }
        if self.coeffs.len() < b.coeffs.len() {
            return None;
        }
        let (q, rem) = Self::long_division(r, &self.coeffs, &b.coeffs)?;
        if rem.iter().any(|c| !r.is_zero(c)) {
            return None;
        }
        Some(Self::from_coeffs(r, self.low - b.low, q))
    }

    /// Normal form of the class `{ e * t^k * self }`, `e` a unit: minimum
    /// exponent 0 and leading coefficient normalized (monic over a field,
    /// positive over the integers).
    pub fn canonicalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = &self.ring;
        let unit = r.normalizing_unit(self.leading_coeff().unwrap());
        let inv = r.inverse(&unit).expect("normalizing unit is a unit");
        let coeffs = self.coeffs.iter().map(|c| r.mul(c, &inv)).collect();
        Self::from_coeffs(r, 0, coeffs)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Integer content (gcd of coefficients); 1 or 0 over a field.
    pub fn content(&self) -> R::Elem {
        let r = &self.ring;
        self.coeffs.iter().fold(r.zero(), |g, c| r.gcd(&g, c))
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.ring.divide_exact(a, &c).expect("content divides"))
            .collect();
        Self::from_coeffs(&self.ring, self.low, coeffs)
    }

    /// Pseudo-remainder `prem(a, b)` of ordinary polynomials.
    fn pseudo_remainder(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let lead = b.last().unwrap().clone();
        let mut rem = a.to_vec();
        let mut steps = a.len() - b.len() + 1;
        while rem.len() >= b.len() && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - b.len();
            for c in rem.iter_mut() {
                *c = r.mul(c, &lead);
            }
            for (i, bc) in b.iter().enumerate() {
                let prod = r.mul(&top, bc);
                rem[shift + i] = r.sub(&rem[shift + i], &prod);
            }
            rem.pop();
            while rem.last().is_some_and(|c| r.is_zero(c)) {
                rem.pop();
            }
            steps -= 1;
        }
        // multiply by the remaining power of the leading coefficient so the
        // result is exactly lc^(deg a - deg b + 1) * a mod b
        for _ in 0..steps {
            for c in rem.iter_mut() {
                *c = r.mul(c, &lead);
            }
        }
        rem
    }

    /// A gcd, in canonical form. `gcd(a, 0) = canonicalize(a)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() {
            return Ok(other.canonicalize());
        }
        if other.is_zero() {
            return Ok(self.canonicalize());
        }
        let r = &self.ring;
        let a = self.shift(-self.low);
        let b = other.shift(-other.low);
        if r.is_field() {
            let (mut a, mut b) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
            while !b.is_zero() {
                let (_, rem) = a.divmod(&b)?;
                a = b;
                b = rem;
            }
            return Ok(a.canonicalize());
        }
        Ok(Self::subresultant_gcd(&a, &b).canonicalize())
    }

    /// Gcd over a UFD that is not a field: gcd of contents times the primitive
    /// part of the last nonzero term of the subresultant remainder sequence.
    fn subresultant_gcd(a: &Self, b: &Self) -> Self {
        let r = &a.ring;
        let (a, b) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let d = r.gcd(&a.content(), &b.content());
        let mut a = a.primitive_part().coeffs;
        let mut b = b.primitive_part().coeffs;
        let mut g = r.one();
        let mut h = r.one();
        loop {
            let delta = (a.len() - b.len()) as u32;
            let rem = Self::pseudo_remainder(r, &a, &b);
            if rem.is_empty() {
                break;
            }
            if rem.len() == 1 {
                b = vec![r.one()];
                break;
            }
            a = b;
            let mut denom = g.clone();
            for _ in 0..delta {
                denom = r.mul(&denom, &h);
            }
            b = rem
                .iter()
                .map(|c| r.divide_exact(c, &denom).expect("subresultant division is exact"))
                .collect();
            g = a.last().unwrap().clone();
            // h <- g^delta / h^(delta - 1); unchanged when delta = 0
            if delta > 0 {
                let mut num = r.one();
                for _ in 0..delta {
                    num = r.mul(&num, &g);
                }
                let mut den = r.one();
                for _ in 0..delta - 1 {
                    den = r.mul(&den, &h);
                }
                h = r.divide_exact(&num, &den).expect("subresultant h update is exact");
            }
        }
        let pp = Self::from_coeffs(r, 0, b).primitive_part();
        pp.scale(&d)
    }

    /// Whether `self` divides `a` in the Laurent polynomial ring; insensitive to
    /// unit factors on either side. Zero divides only zero.
    pub fn divides(&self, a: &Self) -> Result<bool> {
        self.check_ring(a)?;
        if self.is_zero() {
            return Ok(a.is_zero());
        }
        Ok(a.exact_div(self).is_some())
    }

    /// Value at `t = x` for invertible `x` (negative exponents use the inverse).
    pub fn evaluate(&self, x: &R::Elem) -> Option<R::Elem> {
        let r = &self.ring;
        if self.is_zero() {
            return Some(r.zero());
        }
        let mut acc = r.zero();
        for c in self.coeffs.iter().rev() {
            acc = r.add(&r.mul(&acc, x), c);
        }
        let mut scale = r.one();
        let step = if self.low >= 0 { x.clone() } else { r.inverse(x)? };
        for _ in 0..self.low.unsigned_abs() {
            scale = r.mul(&scale, &step);
        }
        Some(r.mul(&acc, &scale))
    }
}

pub fn poly_divmod<R: Ring>(
    a: &LaurentPoly<R>,
    b: &LaurentPoly<R>,
) -> Result<(LaurentPoly<R>, LaurentPoly<R>)> {
    a.divmod(b)
}

pub fn poly_gcd<R: Ring>(a: &LaurentPoly<R>, b: &LaurentPoly<R>) -> Result<LaurentPoly<R>> {
    a.gcd(b)
}

pub fn divides_up_to_units<R: Ring>(d: &LaurentPoly<R>, a: &LaurentPoly<R>) -> Result<bool> {
    d.divides(a)
}

pub fn canonicalize<R: Ring>(a: &LaurentPoly<R>) -> LaurentPoly<R> {
    a.canonicalize()
}

impl<R: Ring> PartialEq for LaurentPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.low == other.low && self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for LaurentPoly<R> {}

impl<R: Ring> std::hash::Hash for LaurentPoly<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.low.hash(state);
        self.coeffs.hash(state);
    }
}

/// Orders by span, then lowest exponent, then coefficients from the top
/// degree down. Used to sort census output.
impl<R: Ring> Ord for LaurentPoly<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then(self.low.cmp(&other.low))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<R: Ring> PartialOrd for LaurentPoly<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: Ring> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        assert!(self.ring == rhs.ring, "ring mismatch");
        self.combine(rhs, false)
    }
}

impl<R: Ring> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        assert!(self.ring == rhs.ring, "ring mismatch");
        self.combine(rhs, true)
    }
}

impl<R: Ring> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        assert!(self.ring == rhs.ring, "ring mismatch");
        self.product(rhs)
    }
}

impl<R: Ring> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        LaurentPoly { ring: self.ring.clone(), low: self.low, coeffs }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> $tr for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Ascending terms `c*t^k`, e.g. `1 + t + 3*t^2 + t^3 + t^4`.
impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let r = &self.ring;
        let one = r.one();
        for (n, (k, c)) in self.terms().enumerate() {
            let negative = r.is_negative(c);
            let abs = if negative { r.neg(c) } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit_coeff = abs == one;
            if k == 0 {
                r.fmt_elem(&abs, f)?;
                continue;
            }
            if !unit_coeff {
                r.fmt_elem(&abs, f)?;
                write!(f, "*")?;
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.ring.kind(), self)
    }
}
