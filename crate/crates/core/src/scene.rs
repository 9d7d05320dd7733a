//! Three-road viaduct scene and vehicle generation.
//!
//! Each road is a straight rectangle in plan view with a linear elevation
//! grade. Road-local coordinates are `(s, t)`: `s` runs along the road from
//! its origin corner (`0..=length_m`), `t` runs across it (`0..=width_m`).
//! Road 1 (index 0) is the upper deck and crosses above the other two.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{Point2, Point3, Range, SearchSpace};
use crate::{Error, Result};

pub const MAX_ELEVATION_M: f64 = 900.0;
pub const DEFAULT_EXTENT_M: f64 = 3000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoadSpec {
    pub length_m: f64,
    pub width_m: f64,
    pub elevation_start_m: f64,
    pub elevation_end_m: f64,
    /// Corner of the pavement rectangle at `(s, t) = (0, 0)`.
    pub origin_xy: Point2,
    /// Direction of increasing `s`. Normalized by [`build_scene`].
    pub heading: Point2,
    pub layer: Layer,
}

impl RoadSpec {
    /// Unit vector of increasing `t`: the heading rotated by +90°.
    pub fn normal(&self) -> Point2 {
        Point2::new(-self.heading.y, self.heading.x)
    }

    pub fn to_world(&self, s: f64, t: f64) -> Point2 {
        let n = self.normal();
        Point2::new(
            self.origin_xy.x + s * self.heading.x + t * n.x,
            self.origin_xy.y + s * self.heading.y + t * n.y,
        )
    }

    pub fn to_local(&self, p: Point2) -> (f64, f64) {
        let dx = p.x - self.origin_xy.x;
        let dy = p.y - self.origin_xy.y;
        let n = self.normal();
        (
            dx * self.heading.x + dy * self.heading.y,
            dx * n.x + dy * n.y,
        )
    }

    pub fn elevation_at(&self, s: f64) -> f64 {
        let f = (s / self.length_m).clamp(0.0, 1.0);
        self.elevation_start_m + f * (self.elevation_end_m - self.elevation_start_m)
    }

    /// Whether a plan-view point lies on the pavement, with slack `eps` metres.
    pub fn contains_xy(&self, p: Point2, eps: f64) -> bool {
        let (s, t) = self.to_local(p);
        s >= -eps && s <= self.length_m + eps && t >= -eps && t <= self.width_m + eps
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            self.to_world(0.0, 0.0),
            self.to_world(self.length_m, 0.0),
            self.to_world(self.length_m, self.width_m),
            self.to_world(0.0, self.width_m),
        ]
    }

    fn validate(&self, idx: usize) -> Result<()> {
        let road = idx + 1;
        if !(self.length_m > 0.0 && self.length_m.is_finite()) {
            return Err(Error::Geometry(format!(
                "road {road}: length must be positive, got {}",
                self.length_m
            )));
        }
        if !(self.width_m > 0.0 && self.width_m.is_finite()) {
            return Err(Error::Geometry(format!(
                "road {road}: width must be positive, got {}",
                self.width_m
            )));
        }
        for (name, v) in [
            ("elevation_start_m", self.elevation_start_m),
            ("elevation_end_m", self.elevation_end_m),
        ] {
            if !(0.0..=MAX_ELEVATION_M).contains(&v) {
                return Err(Error::Geometry(format!(
                    "road {road}: {name} = {v} outside [0, {MAX_ELEVATION_M}]"
                )));
            }
        }
        let norm = self.heading.x.hypot(self.heading.y);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Geometry(format!(
                "road {road}: heading must be non-zero"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneConfig {
    pub roads: Vec<RoadSpec>,
    /// Side of the cubic scene box, metres.
    pub extent_m: f64,
}

impl Default for SceneConfig {
    /// Canonical viaduct: road 1 runs east–west at mid-height of the box,
    /// climbing 600→900 m; roads 2 and 3 run north–south beneath it at
    /// 0–300 m. Lengths and widths are not given by the source model and are
    /// fixed here as the reference fixture.
    fn default() -> Self {
        Self {
            roads: vec![
                RoadSpec {
                    length_m: 3000.0,
                    width_m: 20.0,
                    elevation_start_m: 600.0,
                    elevation_end_m: 900.0,
                    origin_xy: Point2::new(0.0, 1490.0),
                    heading: Point2::new(1.0, 0.0),
                    layer: Layer::Upper,
                },
                RoadSpec {
                    length_m: 3000.0,
                    width_m: 20.0,
                    elevation_start_m: 0.0,
                    elevation_end_m: 300.0,
                    origin_xy: Point2::new(720.0, 0.0),
                    heading: Point2::new(0.0, 1.0),
                    layer: Layer::Lower,
                },
                RoadSpec {
                    length_m: 3000.0,
                    width_m: 20.0,
                    elevation_start_m: 300.0,
                    elevation_end_m: 0.0,
                    origin_xy: Point2::new(2320.0, 0.0),
                    heading: Point2::new(0.0, 1.0),
                    layer: Layer::Lower,
                },
            ],
            extent_m: DEFAULT_EXTENT_M,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoadScene {
    pub roads: Vec<RoadSpec>,
    pub extent_m: f64,
}

impl RoadScene {
    pub fn horizontal_bounds(&self) -> (Range, Range) {
        (
            Range::new(0.0, self.extent_m),
            Range::new(0.0, self.extent_m),
        )
    }

    /// Search box for UAVs: the scene's plan-view square and the given
    /// altitude band.
    pub fn search_space(&self, altitude: Range) -> SearchSpace {
        let (x, y) = self.horizontal_bounds();
        SearchSpace { x, y, h: altitude }
    }

    pub fn max_road_elevation(&self) -> f64 {
        self.roads
            .iter()
            .map(|r| r.elevation_start_m.max(r.elevation_end_m))
            .fold(0.0, f64::max)
    }

    /// A vehicle on a lower road is shadowed when it sits inside road 1's
    /// plan-view footprint.
    pub fn is_under_bridge(&self, road: usize, p: Point2) -> bool {
        self.roads[road].layer == Layer::Lower
            && self
                .roads
                .iter()
                .filter(|r| r.layer == Layer::Upper)
                .any(|upper| upper.contains_xy(p, 0.0))
    }
}

pub fn build_scene(config: &SceneConfig) -> Result<RoadScene> {
    if config.roads.len() != 3 {
        return Err(Error::Geometry(format!(
            "expected exactly 3 roads, got {}",
            config.roads.len()
        )));
    }
    if !(config.extent_m > 0.0 && config.extent_m.is_finite()) {
        return Err(Error::param("scene.extent_m", "must be positive"));
    }
    let mut roads = config.roads.clone();
    for (idx, road) in roads.iter_mut().enumerate() {
        road.validate(idx)?;
        let norm = road.heading.x.hypot(road.heading.y);
        road.heading = Point2::new(road.heading.x / norm, road.heading.y / norm);
    }
    if roads[0].layer != Layer::Upper || roads[1..].iter().any(|r| r.layer != Layer::Lower) {
        return Err(Error::Geometry(
            "road 1 must be the upper deck and roads 2, 3 lower".into(),
        ));
    }
    // Allow for rounding in the corner arithmetic of rotated roads.
    let eps = 1e-6;
    for (idx, road) in roads.iter().enumerate() {
        for c in road.corners() {
            if c.x < -eps
                || c.y < -eps
                || c.x > config.extent_m + eps
                || c.y > config.extent_m + eps
            {
                return Err(Error::Geometry(format!(
                    "road {} leaves the {} m scene box at ({:.1}, {:.1})",
                    idx + 1,
                    config.extent_m,
                    c.x,
                    c.y
                )));
            }
        }
    }
    for idx in 1..3 {
        if !rectangles_overlap(&roads[0], &roads[idx]) {
            return Err(Error::Geometry(format!(
                "road 1 does not pass over road {}",
                idx + 1
            )));
        }
    }
    Ok(RoadScene {
        roads,
        extent_m: config.extent_m,
    })
}

/// Separating-axis test for two oriented rectangles.
fn rectangles_overlap(a: &RoadSpec, b: &RoadSpec) -> bool {
    let ca = a.corners();
    let cb = b.corners();
    let axes = [a.heading, a.normal(), b.heading, b.normal()];
    axes.iter().all(|ax| {
        let project = |cs: &[Point2; 4]| {
            cs.iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                    let v = c.x * ax.x + c.y * ax.y;
                    (lo.min(v), hi.max(v))
                })
        };
        let (alo, ahi) = project(&ca);
        let (blo, bhi) = project(&cb);
        ahi >= blo && bhi >= alo
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vehicle {
    pub id: usize,
    pub pos: Point3,
    /// Demanded data rate, Mbps.
    pub rate_demand: f64,
    /// Zero-based index into [`RoadScene::roads`].
    pub road: usize,
    pub under_bridge: bool,
}

/// Draws a demanded rate (Mbps) from the height band the vehicle sits in:
/// `[0, 2)` below 300 m, `[2, 3.5)` below 600 m, `[3.5, 5]` up to 900 m.
pub fn assign_data_rate<R: Rng + ?Sized>(height_m: f64, rng: &mut R) -> Result<f64> {
    if !(0.0..=MAX_ELEVATION_M).contains(&height_m) {
        return Err(Error::param(
            "height_m",
            format!("{height_m} outside [0, {MAX_ELEVATION_M}]"),
        ));
    }
    let rate = if height_m < 300.0 {
        rng.gen_range(0.0..2.0)
    } else if height_m < 600.0 {
        rng.gen_range(2.0..3.5)
    } else {
        rng.gen_range(3.5..=5.0)
    };
    Ok(rate)
}

/// The closed band a height maps to; used by checks that do not sample.
pub fn rate_band(height_m: f64) -> (f64, f64) {
    if height_m < 300.0 {
        (0.0, 2.0)
    } else if height_m < 600.0 {
        (2.0, 3.5)
    } else {
        (3.5, 5.0)
    }
}

pub fn spawn_vehicles<R: Rng + ?Sized>(
    scene: &RoadScene,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Vehicle>> {
    if count == 0 {
        return Err(Error::param("vehicles", "count must be at least 1"));
    }
    let mut out = Vec::with_capacity(count);
    for id in 0..count {
        let road_idx = rng.gen_range(0..scene.roads.len());
        let road = &scene.roads[road_idx];
        let s = rng.gen_range(0.0..=road.length_m);
        let t = rng.gen_range(0.0..=road.width_m);
        let xy = road.to_world(s, t);
        let h = road.elevation_at(s);
        let rate_demand = assign_data_rate(h, rng)?;
        out.push(Vehicle {
            id,
            pos: Point3::new(xy.x, xy.y, h),
            rate_demand,
            road: road_idx,
            under_bridge: scene.is_under_bridge(road_idx, xy),
        });
    }
    Ok(out)
}
