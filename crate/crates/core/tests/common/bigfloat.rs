//! Binary fixed point with 512 fractional bits on top of `BigInt`, with
//! series-based `ln` and `exp`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub const FRAC: u32 = 512;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn int(n: i64) -> Self {
        Fixed(BigInt::from(n) << FRAC)
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Fixed((BigInt::from(a) << FRAC) / BigInt::from(b))
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 << FRAC) / &other.0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.0.bits() as i64;
        if bits <= 64 {
            return self.0.to_f64().unwrap() * 2f64.powi(-(FRAC as i32));
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift as u32).to_f64().unwrap();
        top * 2f64.powf((shift - FRAC as i64) as f64)
    }

    fn ln2() -> Fixed {
        Fixed::ratio(1, 3).atanh_series().scale(2)
    }

    fn scale(&self, k: i64) -> Fixed {
        Fixed(&self.0 * k)
    }

    /// `sum t^(2i+1) / (2i+1)` for `|t| < 1`.
    fn atanh_series(&self) -> Fixed {
        let t2 = self.clone() * self.clone();
        let mut power = self.clone();
        let mut sum = Fixed(BigInt::zero());
        let mut i = 1i64;
        while !power.0.is_zero() {
            sum = sum + Fixed(&power.0 / i);
            power = power * t2.clone();
            i += 2;
        }
        sum
    }

    pub fn ln(&self) -> Fixed {
        assert!(self.is_positive(), "ln of a non-positive number");
        let k = self.0.bits() as i64 - 1 - FRAC as i64;
        let m = if k >= 0 { Fixed(&self.0 >> k as u32) } else { Fixed(&self.0 << (-k) as u32) };
        let one = Fixed::int(1);
        let t = (m.clone() - one.clone()).div(&(m + one));
        t.atanh_series().scale(2) + Fixed::ln2().scale(k)
    }

    pub fn exp(&self) -> Fixed {
        let ln2 = Fixed::ln2();
        // k = round(x / ln 2)
        let k = {
            let q = self.div(&ln2);
            let half = BigInt::from(1) << (FRAC - 1);
            ((q.0 + half) >> FRAC).to_i64().expect("exponent fits i64")
        };
        let r = self.clone() - ln2.scale(k);
        let mut term = Fixed::int(1);
        let mut sum = Fixed::int(1);
        let mut i = 1i64;
        while !term.0.is_zero() {
            term = Fixed(&(term * r.clone()).0 / i);
            sum = sum + term.clone();
            i += 1;
        }
        if k >= 0 {
            Fixed(sum.0 << k as u32)
        } else {
            Fixed(sum.0 >> (-k) as u32)
        }
    }

    pub fn pow_int(&self, e: u32) -> Fixed {
        (0..e).fold(Fixed::int(1), |acc, _| acc * self.clone())
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, o: Fixed) -> Fixed {
        Fixed(self.0 + o.0)
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, o: Fixed) -> Fixed {
        Fixed(self.0 - o.0)
    }
}

impl Mul for Fixed {
    type Output = Fixed;
    fn mul(self, o: Fixed) -> Fixed {
        Fixed((self.0 * o.0) >> FRAC)
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-self.0)
    }
}
