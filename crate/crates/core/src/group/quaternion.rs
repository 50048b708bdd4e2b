use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// A unit quaternion `w + xi + yj + zk` kept in sign normal form.
///
/// `q` and `-q` represent the same rotation; the normal form picks the
/// representative whose first nonzero component among `(w, x, y, z)` is
/// positive, so rotations compare equal with `==`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Builds a rotation from raw components, normalizing the norm and sign.
    /// Returns `None` for the zero quaternion or non-finite input.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Option<Self> {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        Some(
            Quaternion {
                w: w / norm,
                x: x / norm,
                y: y / norm,
                z: z / norm,
            }
            .sign_normalized(),
        )
    }

    /// Rotation by `angle` radians about `axis` (need not be unit length).
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Option<Self> {
        let len = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if len == 0.0 || !len.is_finite() {
            return None;
        }
        let (s, c) = (angle / 2.0).sin_cos();
        Quaternion::new(c, s * axis[0] / len, s * axis[1] / len, s * axis[2] / len)
    }

    fn sign_normalized(self) -> Self {
        let first = [self.w, self.x, self.y, self.z]
            .into_iter()
            .find(|c| *c != 0.0)
            .unwrap_or(1.0);
        let mut q = if first < 0.0 {
            Quaternion {
                w: -self.w,
                x: -self.x,
                y: -self.y,
                z: -self.z,
            }
        } else {
            self
        };
        // -0.0 would break `==` against the identity.
        for c in [&mut q.w, &mut q.x, &mut q.y, &mut q.z] {
            if *c == 0.0 {
                *c = 0.0;
            }
        }
        q
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Whether the components already satisfy the unit norm and sign convention.
    pub fn is_normal_form(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12 && self.sign_normalized() == *self
    }

    /// Hamilton product followed by renormalization.
    pub fn mul(&self, rhs: &Quaternion) -> Quaternion {
        let (a, b) = (self, rhs);
        let w = a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z;
        let x = a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y;
        let y = a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x;
        let z = a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w;
        Quaternion::new(w, x, y, z).unwrap_or(Quaternion::IDENTITY)
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
        .sign_normalized()
    }

    /// Rotation angle in `[0, pi]`.
    pub fn angle(&self) -> f64 {
        let v = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        (2.0 * v.atan2(self.w.abs())).clamp(0.0, PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_convention() {
        let q = Quaternion::new(-1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(q, Quaternion::IDENTITY);
        let r = Quaternion::new(0.0, -1.0, 0.0, 0.0).unwrap();
        assert_eq!(r.x, 1.0);
        assert!(r.is_normal_form());
    }

    #[test]
    fn half_turn_angle() {
        let q = Quaternion::from_axis_angle([0.0, 0.0, 1.0], PI).unwrap();
        assert!((q.angle() - PI).abs() < 1e-12);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(Quaternion::new(0.0, 0.0, 0.0, 0.0).is_none());
    }
}
