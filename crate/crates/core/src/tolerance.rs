/// Mixed absolute/relative equality for coordinates.
///
/// Two reals `a` and `b` are equal when `|a - b| <= max(abs, rel * max(|a|, |b|))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// Same bound for the absolute and relative parts.
    pub fn new(eps: f64) -> Self {
        Tolerance { abs: eps, rel: eps }
    }

    pub fn exact() -> Self {
        Tolerance { abs: 0.0, rel: 0.0 }
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        let band = self.abs.max(self.rel * a.abs().max(b.abs()));
        (a - b).abs() <= band
    }

    /// `a <= b`, counting tolerance-equal values as equal.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b || self.eq(a, b)
    }

    pub fn ge(&self, a: f64, b: f64) -> bool {
        self.le(b, a)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(Self::DEFAULT_EPS)
    }
}
