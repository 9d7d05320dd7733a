use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist_sq(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A point in metres; `h` is altitude above the sea-level reference plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, h: f64) -> Self {
        Self { x, y, h }
    }

    pub fn horizontal(self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.hi > self.lo {
            rng.gen_range(self.lo..=self.hi)
        } else {
            self.lo
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }
}

/// Axis-aligned box that UAV placements are searched in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub x: Range,
    pub y: Range,
    pub h: Range,
}

impl SearchSpace {
    pub fn contains(&self, p: Point3) -> bool {
        self.x.contains(p.x) && self.y.contains(p.y) && self.h.contains(p.h)
    }

    pub fn contains_horizontal(&self, p: Point2) -> bool {
        self.x.contains(p.x) && self.y.contains(p.y)
    }

    pub fn clamp(&self, p: Point3) -> Point3 {
        Point3::new(self.x.clamp(p.x), self.y.clamp(p.y), self.h.clamp(p.h))
    }

    pub fn clamp_horizontal(&self, p: Point2) -> Point2 {
        Point2::new(self.x.clamp(p.x), self.y.clamp(p.y))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point3 {
        Point3::new(self.x.sample(rng), self.y.sample(rng), self.h.sample(rng))
    }

    pub fn lower(&self) -> [f64; 3] {
        [self.x.lo, self.y.lo, self.h.lo]
    }

    pub fn upper(&self) -> [f64; 3] {
        [self.x.hi, self.y.hi, self.h.hi]
    }
}
