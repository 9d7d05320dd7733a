//! Grey wolf optimization seeded from k-means centers.
//!
//! Each wolf is a single horizontal point. Fitness rewards proximity to the
//! vehicles, so the pack converges toward the geometric median of the
//! vehicle positions. The best wolf (α) is handed back to the genetic
//! solver, which substitutes it into one UAV of an individual.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{Point2, Range};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GwoParams {
    pub n_wolves: usize,
    pub max_iter: usize,
    /// Half-width of the uniform jitter applied when centers are cycled to
    /// fill the pack, metres.
    pub init_jitter_m: f64,
}

impl Default for GwoParams {
    fn default() -> Self {
        Self {
            n_wolves: 20,
            max_iter: 50,
            init_jitter_m: 100.0,
        }
    }
}

impl GwoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_wolves < 3 {
            return Err(Error::param("gwo.n_wolves", "needs at least 3 wolves"));
        }
        if !(self.init_jitter_m >= 0.0) {
            return Err(Error::param("gwo.init_jitter_m", "must be non-negative"));
        }
        Ok(())
    }
}

/// Plan-view rectangle the pack is confined to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds2 {
    pub x: Range,
    pub y: Range,
}

impl Bounds2 {
    pub fn clamp(&self, p: Point2) -> Point2 {
        Point2::new(self.x.clamp(p.x), self.y.clamp(p.y))
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.x.contains(p.x) && self.y.contains(p.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Leader {
    pub pos: Point2,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WolfState {
    pub positions: Vec<Point2>,
    pub alpha: Leader,
    pub beta: Leader,
    pub delta: Leader,
}

impl WolfState {
    /// First three wolves take the leader roles with no score yet; the first
    /// fitness pass replaces them with the true ranking.
    pub fn new(positions: Vec<Point2>) -> Self {
        let leader = |i: usize| Leader {
            pos: positions[i.min(positions.len() - 1)],
            score: f64::NEG_INFINITY,
        };
        Self {
            alpha: leader(0),
            beta: leader(1),
            delta: leader(2),
            positions,
        }
    }

    /// Promotes wolves into the α/β/δ slots on strict improvement. A wolf
    /// tying the α score does not also become β.
    pub fn update_leaders(&mut self, scores: &[f64]) {
        for (pos, &fit) in self.positions.iter().zip(scores) {
            if fit > self.alpha.score {
                self.delta = std::mem::replace(
                    &mut self.beta,
                    std::mem::replace(
                        &mut self.alpha,
                        Leader {
                            pos: *pos,
                            score: fit,
                        },
                    ),
                );
            } else if fit < self.alpha.score && fit > self.beta.score {
                self.delta = std::mem::replace(
                    &mut self.beta,
                    Leader {
                        pos: *pos,
                        score: fit,
                    },
                );
            } else if fit < self.beta.score && fit > self.delta.score {
                self.delta = Leader {
                    pos: *pos,
                    score: fit,
                };
            }
        }
    }
}

/// Negated total horizontal distance to the vehicles; maximal at their
/// geometric median.
pub fn wolf_fitness(position: Point2, vehicles: &[Point2]) -> f64 {
    -vehicles.iter().map(|v| position.dist(*v)).sum::<f64>()
}

/// `2 · (1 − (t / t_max)²)`: 2 at the start, 0 at the last iteration.
pub fn control_vector(t: usize, t_max: usize) -> f64 {
    if t_max == 0 {
        return 0.0;
    }
    let f = t as f64 / t_max as f64;
    2.0 * (1.0 - f * f)
}

/// Random coefficients for one wolf, one coordinate, one leader.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub a1: f64,
    pub a2: f64,
}

/// Candidate coordinate `leader − E·|C·leader − wolf|` with
/// `E = 2e·a1 − e` and `C = 2·a2`.
pub fn guided_coordinate(leader: f64, wolf: f64, e: f64, draw: Draw) -> f64 {
    let big_e = 2.0 * e * draw.a1 - e;
    let c = 2.0 * draw.a2;
    let dist = (c * leader - wolf).abs();
    leader - big_e * dist
}

/// New position of one wolf given draws indexed `[coordinate][leader]`.
pub fn guided_step(wolf: Point2, leaders: [Point2; 3], e: f64, draws: [[Draw; 3]; 2]) -> Point2 {
    let coord = |axis: usize, get: fn(Point2) -> f64| {
        leaders
            .iter()
            .zip(draws[axis])
            .map(|(l, d)| guided_coordinate(get(*l), get(wolf), e, d))
            .sum::<f64>()
            / 3.0
    };
    Point2::new(coord(0, |p| p.x), coord(1, |p| p.y))
}

pub fn update_positions<R: Rng + ?Sized>(
    state: &mut WolfState,
    e: f64,
    bounds: &Bounds2,
    rng: &mut R,
) {
    let leaders = [state.alpha.pos, state.beta.pos, state.delta.pos];
    for wolf in state.positions.iter_mut() {
        let mut draws = [[Draw { a1: 0.0, a2: 0.0 }; 3]; 2];
        for axis in draws.iter_mut() {
            for d in axis.iter_mut() {
                *d = Draw {
                    a1: rng.gen(),
                    a2: rng.gen(),
                };
            }
        }
        *wolf = bounds.clamp(guided_step(*wolf, leaders, e, draws));
    }
}

/// Cycles the k-means centers to fill the pack; repeats get uniform jitter.
pub fn init_pack<R: Rng + ?Sized>(
    init_centers: &[Point2],
    params: &GwoParams,
    bounds: &Bounds2,
    rng: &mut R,
) -> Vec<Point2> {
    (0..params.n_wolves)
        .map(|k| {
            let c = init_centers[k % init_centers.len()];
            if k < init_centers.len() || params.init_jitter_m == 0.0 {
                bounds.clamp(c)
            } else {
                let j = params.init_jitter_m;
                bounds.clamp(Point2::new(
                    c.x + rng.gen_range(-j..=j),
                    c.y + rng.gen_range(-j..=j),
                ))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwoTrace {
    pub alpha: Point2,
    pub alpha_scores: Vec<f64>,
    pub final_state: WolfState,
}

/// Runs the pack and records α's score after every fitness pass.
pub fn kigwo_traced<R: Rng + ?Sized>(
    vehicles: &[Point2],
    init_centers: &[Point2],
    params: &GwoParams,
    bounds: &Bounds2,
    rng: &mut R,
) -> Result<GwoTrace> {
    params.validate()?;
    if init_centers.is_empty() {
        return Err(Error::param(
            "kigwo.init_centers",
            "need at least one center",
        ));
    }
    let mut state = WolfState::new(init_pack(init_centers, params, bounds, rng));
    let mut alpha_scores = Vec::with_capacity(params.max_iter + 1);

    let evaluate = |state: &mut WolfState| {
        for p in state.positions.iter_mut() {
            *p = bounds.clamp(*p);
        }
        let scores: Vec<f64> = state
            .positions
            .iter()
            .map(|p| wolf_fitness(*p, vehicles))
            .collect();
        state.update_leaders(&scores);
    };

    evaluate(&mut state);
    alpha_scores.push(state.alpha.score);
    for t in 1..=params.max_iter {
        let e = control_vector(t, params.max_iter);
        update_positions(&mut state, e, bounds, rng);
        evaluate(&mut state);
        alpha_scores.push(state.alpha.score);
    }
    Ok(GwoTrace {
        alpha: state.alpha.pos,
        alpha_scores,
        final_state: state,
    })
}

pub fn kigwo<R: Rng + ?Sized>(
    vehicles: &[Point2],
    init_centers: &[Point2],
    params: &GwoParams,
    bounds: &Bounds2,
    rng: &mut R,
) -> Result<Point2> {
    kigwo_traced(vehicles, init_centers, params, bounds, rng).map(|t| t.alpha)
}
