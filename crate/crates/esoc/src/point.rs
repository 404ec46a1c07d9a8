//! Points of the ambient space `R^p x R^q` and the elementwise kernels the
//! projection formulas are built from.

use crate::error::Error;

/// Block sizes `(p, q)` of the ambient space.
///
/// `p` counts the order-block coordinates (compared componentwise), `q` the
/// norm-block coordinates (entering only through their Euclidean norm). Both
/// must be at least one; with an empty norm block the cones collapse to the
/// nonnegative orthant, whose projector is plain [`pos_part`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeDims {
    p: usize,
    q: usize,
}

impl ConeDims {
    pub fn new(p: usize, q: usize) -> Result<Self, Error> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidDims { p, q });
        }
        Ok(Self { p, q })
    }

    pub(crate) fn new_unchecked(p: usize, q: usize) -> Self {
        debug_assert!(p >= 1 && q >= 1);
        Self { p, q }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Total ambient dimension `p + q`.
    pub fn ambient(&self) -> usize {
        self.p + self.q
    }
}

/// A point `(z, w)` with `z` in `R^p` and `w` in `R^q`.
///
/// Entries are finite by construction; every operation below is a pure
/// function, so points can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    z: Vec<f64>,
    w: Vec<f64>,
}

impl AmbientPoint {
    pub fn new(z: Vec<f64>, w: Vec<f64>) -> Result<Self, Error> {
        if z.is_empty() || w.is_empty() {
            return Err(Error::InvalidDims {
                p: z.len(),
                q: w.len(),
            });
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "order block z" });
        }
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "norm block w" });
        }
        Ok(Self { z, w })
    }

    /// Skips validation; for formula outputs that are finite by construction.
    pub(crate) fn new_unchecked(z: Vec<f64>, w: Vec<f64>) -> Self {
        debug_assert!(!z.is_empty() && !w.is_empty());
        debug_assert!(z.iter().chain(&w).all(|v| v.is_finite()));
        Self { z, w }
    }

    /// The origin of the given ambient space.
    pub fn zero(dims: ConeDims) -> Self {
        Self {
            z: vec![0.0; dims.p()],
            w: vec![0.0; dims.q()],
        }
    }

    pub fn dims(&self) -> ConeDims {
        ConeDims::new_unchecked(self.z.len(), self.w.len())
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// `z^+`: the order block projected onto the nonnegative orthant.
    pub fn z_pos(&self) -> Vec<f64> {
        pos_part(&self.z)
    }

    /// `z^-`, so that `z = z^+ - z^-` holds exactly.
    pub fn z_neg(&self) -> Vec<f64> {
        neg_part(&self.z)
    }

    /// Euclidean norm of the norm block.
    pub fn w_norm(&self) -> f64 {
        stable_norm(&self.w)
    }

    /// Euclidean norm of the whole point.
    pub fn norm(&self) -> f64 {
        stable_norm2(&self.z, &self.w)
    }

    /// Scalar product with a point of the same space.
    ///
    /// Panics if the block lengths differ.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.z.len(), other.z.len(), "order blocks differ in length");
        assert_eq!(self.w.len(), other.w.len(), "norm blocks differ in length");
        let a: f64 = self.z.iter().zip(&other.z).map(|(x, y)| x * y).sum();
        let b: f64 = self.w.iter().zip(&other.w).map(|(x, y)| x * y).sum();
        a + b
    }

    /// Euclidean distance to a point of the same space.
    ///
    /// Panics if the block lengths differ.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.z.len(), other.z.len(), "order blocks differ in length");
        assert_eq!(self.w.len(), other.w.len(), "norm blocks differ in length");
        let dz: Vec<f64> = self.z.iter().zip(&other.z).map(|(x, y)| x - y).collect();
        let dw: Vec<f64> = self.w.iter().zip(&other.w).map(|(x, y)| x - y).collect();
        stable_norm2(&dz, &dw)
    }

    pub fn neg(&self) -> Self {
        Self {
            z: self.z.iter().map(|v| -v).collect(),
            w: self.w.iter().map(|v| -v).collect(),
        }
    }

    /// Componentwise scaling by a finite factor.
    pub fn scaled(&self, t: f64) -> Self {
        debug_assert!(t.is_finite());
        Self {
            z: self.z.iter().map(|v| t * v).collect(),
            w: self.w.iter().map(|v| t * v).collect(),
        }
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.z, self.w)
    }
}

/// Componentwise `max(v_i, 0)`: the projection onto the nonnegative orthant.
pub fn pos_part(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| x.max(0.0)).collect()
}

/// Componentwise `max(-v_i, 0)`; `pos_part(v) - neg_part(v)` recovers `v`
/// exactly and the two parts have disjoint supports.
pub fn neg_part(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| (-x).max(0.0)).collect()
}

/// Two-pass Euclidean norm: scale by the largest magnitude, then sum squares.
/// Safe against overflow for entries near the representable limit.
pub fn stable_norm(v: &[f64]) -> f64 {
    stable_norm2(v, &[])
}

fn stable_norm2(a: &[f64], b: &[f64]) -> f64 {
    let m = a.iter().chain(b).fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = a
        .iter()
        .chain(b)
        .map(|&x| {
            let r = x / m;
            r * r
        })
        .sum();
    m * s.sqrt()
}
