use std::ops::Mul;

use num_complex::Complex64;

/// 2x2 complex matrix acting on amplitudes `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer2x2 {
    pub m: [[Complex64; 2]; 2],
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Transfer2x2 {
    pub const IDENTITY: Transfer2x2 = Transfer2x2 {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    /// Free evolution `diag(e^{i theta}, e^{-i theta})`.
    pub fn free(theta: f64) -> Self {
        let p = Complex64::from_polar(1.0, theta);
        Self::new(p, ZERO, ZERO, p.conj())
    }

    /// Single passage through an avoided crossing with transfer probability
    /// `epsilon` and Stokes phase `phi`, for a crossing where `W_b - W_a`
    /// decreases. The transpose describes a crossing where it increases.
    pub fn crossing(epsilon: f64, phi: f64) -> Self {
        let stay = (1.0 - epsilon).sqrt();
        let hop = epsilon.sqrt();
        Self::new(
            Complex64::new(stay, 0.0),
            Complex64::from_polar(hop, -phi),
            -Complex64::from_polar(hop, phi),
            Complex64::new(stay, 0.0),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn adjoint(&self) -> Self {
        let t = self.transpose();
        Self::new(
            t.m[0][0].conj(),
            t.m[0][1].conj(),
            t.m[1][0].conj(),
            t.m[1][1].conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest entry-wise deviation of `A^dagger A` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint() * *self;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((p.m[i][j] - target).norm());
            }
        }
        worst
    }

    /// `A^n` by repeated multiplication.
    pub fn power(&self, n: u32) -> Self {
        (0..n).fold(Self::IDENTITY, |acc, _| *self * acc)
    }
}

impl Mul for Transfer2x2 {
    type Output = Transfer2x2;

    fn mul(self, rhs: Transfer2x2) -> Transfer2x2 {
        let a = &self.m;
        let b = &rhs.m;
        Transfer2x2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
