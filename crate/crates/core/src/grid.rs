//! Rectangular sampling lattices over the plane.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid needs at least 2 points per axis, got {nx}x{ny}")]
    TooFewPoints { nx: usize, ny: usize },
    #[error("box bounds must be finite with min < max")]
    BadBox,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl PlaneBox {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, GridError> {
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
            && x_min < x_max
            && y_min < y_max;
        if !ok {
            return Err(GridError::BadBox);
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// `[-half, half]²`.
    pub fn square(half: f64) -> Result<Self, GridError> {
        Self::new(-half, half, -half, half)
    }
}

/// An `nx × ny` lattice including the box edges. Points are visited
/// row-major: `y` outer (from `y_min`), `x` inner (from `x_min`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub bounds: PlaneBox,
    pub nx: usize,
    pub ny: usize,
}

impl Lattice {
    pub fn new(bounds: PlaneBox, nx: usize, ny: usize) -> Result<Self, GridError> {
        if nx < 2 || ny < 2 {
            return Err(GridError::TooFewPoints { nx, ny });
        }
        Ok(Self { bounds, nx, ny })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_at(&self, i: usize) -> f64 {
        lerp(self.bounds.x_min, self.bounds.x_max, i, self.nx)
    }

    pub fn y_at(&self, j: usize) -> f64 {
        lerp(self.bounds.y_min, self.bounds.y_max, j, self.ny)
    }

    /// `(i, j, x, y)` in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.ny).flat_map(move |j| {
            let y = self.y_at(j);
            (0..self.nx).map(move |i| (i, j, self.x_at(i), y))
        })
    }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        return hi;
    }
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_inclusive_and_order_is_row_major() {
        let l = Lattice::new(PlaneBox::square(3.0).unwrap(), 61, 31).unwrap();
        let pts: Vec<_> = l.points().collect();
        assert_eq!(pts.len(), 61 * 31);
        assert_eq!(pts[0], (0, 0, -3.0, -3.0));
        assert_eq!(pts[1].2, -3.0 + 0.1);
        assert_eq!(pts[60], (60, 0, 3.0, -3.0));
        assert_eq!(pts[61], (0, 1, -3.0, -2.8));
        assert_eq!(*pts.last().unwrap(), (60, 30, 3.0, 3.0));
        assert_eq!(l.x_at(30), 0.0);
    }

    #[test]
    fn rejects_degenerate_input() {
        let b = PlaneBox::square(1.0).unwrap();
        assert_eq!(
            Lattice::new(b, 1, 5),
            Err(GridError::TooFewPoints { nx: 1, ny: 5 })
        );
        assert_eq!(PlaneBox::new(1.0, 1.0, 0.0, 1.0), Err(GridError::BadBox));
        assert_eq!(
            PlaneBox::new(0.0, f64::NAN, 0.0, 1.0),
            Err(GridError::BadBox)
        );
    }
}
