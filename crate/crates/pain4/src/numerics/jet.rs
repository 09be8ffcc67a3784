//! Truncated Taylor jets.
//!
//! A [`Jet`] stores the scaled derivatives of a function at a point:
//! `coeffs[n] = f^(n)(x0) / n!`, i.e. the Taylor coefficients of `f` around
//! `x0` up to the jet order.  Sums, products, quotients and exponentials of
//! jets are again jets at the same point, so high-order `x`-derivatives of
//! Wronskians, log-derivatives and differential-operator applications can be
//! carried exactly (to rounding) without any finite differencing.

use crate::error::Error;

/// Truncated Taylor expansion of a function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    x0: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// Jet of the constant function `c`.
    pub fn constant(c: f64, x0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet { x0, coeffs }
    }

    /// Jet of the identity function `x`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Jet { x0, coeffs }
    }

    /// Builds a jet from raw Taylor coefficients (`coeffs[n] = f^(n)/n!`).
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(x0: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the value coefficient");
        Jet { x0, coeffs }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The function value `f(x0)`.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor coefficient `f^(n)(x0)/n!`.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Derivative value `f^(n)(x0) = n! * coeffs[n]`.
    ///
    /// Panics if `n` exceeds the jet order.
    pub fn derivative(&self, n: usize) -> f64 {
        assert!(
            n <= self.order(),
            "derivative order {n} exceeds jet order {}",
            self.order()
        );
        factorial(n) * self.coeffs[n]
    }

    /// Copy truncated to `order` (which must not exceed the current order).
    pub fn truncated(&self, order: usize) -> Jet {
        assert!(order <= self.order());
        Jet {
            x0: self.x0,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Jet of `f'`, one order lower.
    ///
    /// Panics on an order-0 jet.
    pub fn differentiate(&self) -> Jet {
        assert!(self.order() >= 1, "cannot differentiate an order-0 jet");
        let coeffs = (0..self.order())
            .map(|n| (n as f64 + 1.0) * self.coeffs[n + 1])
            .collect();
        Jet { x0: self.x0, coeffs }
    }

    /// Jet of the antiderivative with the given value at `x0`, one order higher.
    pub fn antiderivative(&self, value_at_x0: f64) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(value_at_x0);
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (n as f64 + 1.0));
        }
        Jet { x0: self.x0, coeffs }
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    pub fn neg(&self) -> Jet {
        self.scale(-1.0)
    }

    fn check_same_point(&self, rhs: &Jet) {
        assert!(
            self.x0 == rhs.x0,
            "jet arithmetic requires a common expansion point ({} vs {})",
            self.x0,
            rhs.x0
        );
    }

    /// Sum, truncated to the smaller order.
    pub fn add(&self, rhs: &Jet) -> Jet {
        self.check_same_point(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i] + rhs.coeffs[i]).collect();
        Jet { x0: self.x0, coeffs }
    }

    /// Difference, truncated to the smaller order.
    pub fn sub(&self, rhs: &Jet) -> Jet {
        self.check_same_point(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i] - rhs.coeffs[i]).collect();
        Jet { x0: self.x0, coeffs }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        self.check_same_point(rhs);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.0;
            for m in 0..=i {
                s += self.coeffs[m] * rhs.coeffs[i - m];
            }
            *c = s;
        }
        Jet { x0: self.x0, coeffs }
    }

    /// Recursive series division, truncated to the smaller order.
    ///
    /// Fails with [`Error::JetPole`] when the divisor has a zero constant term.
    pub fn div(&self, rhs: &Jet) -> Result<Jet, Error> {
        self.check_same_point(rhs);
        if rhs.coeffs[0] == 0.0 {
            return Err(Error::JetPole { x0: self.x0 });
        }
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for i in 0..n {
            let mut s = self.coeffs[i];
            for m in 1..=i {
                s -= rhs.coeffs[m] * coeffs[i - m];
            }
            coeffs[i] = s / rhs.coeffs[0];
        }
        Ok(Jet { x0: self.x0, coeffs })
    }

    /// Jet of `exp(f)`, from the recurrence `E' = f' E`.
    pub fn exp(&self) -> Jet {
        let n = self.coeffs.len();
        let mut coeffs = vec![0.0; n];
        coeffs[0] = self.coeffs[0].exp();
        for i in 0..n - 1 {
            // (i+1) e_{i+1} = sum_{m=0}^{i} (m+1) a_{m+1} e_{i-m}
            let mut s = 0.0;
            for m in 0..=i {
                s += (m as f64 + 1.0) * self.coeffs[m + 1] * coeffs[i - m];
            }
            coeffs[i + 1] = s / (i as f64 + 1.0);
        }
        Jet { x0: self.x0, coeffs }
    }

    /// Jet of `exp(c * x^2)` at `x0`.
    pub fn gaussian(c: f64, x0: f64, order: usize) -> Jet {
        let mut expo = vec![0.0; order + 1];
        expo[0] = c * x0 * x0;
        if order >= 1 {
            expo[1] = 2.0 * c * x0;
        }
        if order >= 2 {
            expo[2] = c;
        }
        Jet { x0, coeffs: expo }.exp()
    }

    /// Jet of `(ln f)' = f'/f`, one order lower.
    pub fn log_derivative(&self) -> Result<Jet, Error> {
        let d = self.differentiate();
        d.div(&self.truncated(self.order() - 1))
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, m| acc * m as f64)
}
