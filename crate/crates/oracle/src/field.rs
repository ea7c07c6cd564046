use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: `p = 0` for the rationals, otherwise `F_p`. Elements of
/// `F_p` are kept as integers in `[0, p)` stored in a `BigRational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kf {
    pub p: u64,
}

pub type El = BigRational;

impl Kf {
    pub const Q: Kf = Kf { p: 0 };

    pub fn prime(p: u64) -> Kf {
        Kf { p }
    }

    pub fn norm(&self, x: El) -> El {
        if self.p == 0 {
            return x;
        }
        let p = BigInt::from(self.p);
        let num = x.numer().mod_floor(&p);
        let den = x.denom().mod_floor(&p);
        assert!(!den.is_zero(), "denominator divisible by {}", self.p);
        // den^(p-2)
        let inv = den.modpow(&(&p - 2u32), &p);
        BigRational::from_integer((num * inv).mod_floor(&p))
    }

    pub fn int(&self, v: i64) -> El {
        self.norm(BigRational::from_integer(v.into()))
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &El, b: &El) -> El {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &El, b: &El) -> El {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &El) -> El {
        self.norm(-a)
    }

    pub fn inv(&self, a: &El) -> El {
        assert!(!a.is_zero());
        self.norm(a.recip())
    }

    pub fn one(&self) -> El {
        El::one()
    }
}

/// Prints `a/b` or `a`, with the representative in `(-p/2, p/2]` for prime fields.
pub fn show(k: Kf, x: &El) -> String {
    let mut x = x.clone();
    if k.p != 0 && x.numer() * BigInt::from(2) > BigInt::from(k.p) {
        x -= BigRational::from_integer(k.p.into());
    }
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", -x.numer(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
