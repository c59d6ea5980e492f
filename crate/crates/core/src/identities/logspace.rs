/// A product of positive factors held as a compensated sum of logarithms.
///
/// Products of Γ-values and powers of `n` overflow binary64 long before their
/// logarithms lose precision. Neumaier summation keeps the accumulated log
/// independent of the order the factors arrive in, to within a few ulps.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LogProduct {
    sum: f64,
    compensation: f64,
}

impl LogProduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies by `exp(log_factor)`.
    pub fn push_log(&mut self, log_factor: f64) {
        let t = self.sum + log_factor;
        if self.sum.abs() >= log_factor.abs() {
            self.compensation += (self.sum - t) + log_factor;
        } else {
            self.compensation += (log_factor - t) + self.sum;
        }
        self.sum = t;
    }

    /// Multiplies by a positive factor.
    pub fn push(&mut self, factor: f64) {
        debug_assert!(factor > 0.0, "log-space factor must be positive, got {factor}");
        self.push_log(factor.ln());
    }

    /// Multiplies by `factor^power`.
    pub fn push_pow(&mut self, factor: f64, power: f64) {
        self.push_log(power * factor.ln());
    }

    pub fn ln(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn value(&self) -> f64 {
        self.ln().exp()
    }
}

impl FromIterator<f64> for LogProduct {
    /// Collects log-factors.
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for log_factor in iter {
            acc.push_log(log_factor);
        }
        acc
    }
}
