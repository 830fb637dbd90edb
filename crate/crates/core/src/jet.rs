//! First-order jets `(value, ∂_t, ∂_x, ∂_y)` used to build manufactured
//! forcing terms from closed-form solutions.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl Jet {
    pub const fn new(v: f64, t: f64, x: f64, y: f64) -> Self {
        Self { v, t, x, y }
    }

    pub const fn constant(v: f64) -> Self {
        Self::new(v, 0.0, 0.0, 0.0)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let k = 0.5 / s;
        Self::new(s, k * self.t, k * self.x, k * self.y)
    }

    /// Derivative along axis 0 (x) or 1 (y).
    pub fn d(self, axis: usize) -> f64 {
        if axis == 0 {
            self.x
        } else {
            self.y
        }
    }

    fn scale(self, a: f64) -> Self {
        Self::new(a * self.v, a * self.t, a * self.x, a * self.y)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.t + o.t, self.x + o.x, self.y + o.y)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.t - o.t, self.x - o.x, self.y - o.y)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.t * o.v + self.v * o.t,
            self.x * o.v + self.v * o.x,
            self.y * o.v + self.v * o.y,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let inv = 1.0 / o.v;
        let q = self.v * inv;
        Jet::new(
            q,
            (self.t - q * o.t) * inv,
            (self.x - q * o.x) * inv,
            (self.y - q * o.y) * inv,
        )
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, a: f64) -> Jet {
        self.scale(a)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j.scale(self)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, a: f64) -> Jet {
        Jet::new(self.v + a, self.t, self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_quotient_rules() {
        let a = Jet::new(2.0, 1.0, 3.0, -1.0);
        let b = Jet::new(4.0, 0.5, -2.0, 2.0);
        let p = a * b;
        assert_eq!(p.v, 8.0);
        assert_eq!(p.t, 1.0 * 4.0 + 2.0 * 0.5);
        assert_eq!(p.x, 3.0 * 4.0 - 2.0 * 2.0);
        let q = p / b;
        for (l, r) in [(q.v, a.v), (q.t, a.t), (q.x, a.x), (q.y, a.y)] {
            assert!((l - r).abs() < 1e-14);
        }
        let s = Jet::new(9.0, 6.0, 0.0, 3.0).sqrt();
        assert_eq!(s, Jet::new(3.0, 1.0, 0.0, 0.5));
    }
}
