//! Statistical air-to-ground channel.
//!
//! LoS probability is a sigmoid in the elevation angle; LoS and NLoS path
//! losses are free-space loss plus an environment excess. The average loss
//! mixes the two by the LoS probability, and the uplink rate is a Shannon
//! rate over a bandwidth share that decays with the number of vehicles
//! sharing the UAV.
//!
//! Units: distances in metres, angles in degrees, losses in dB, powers in W,
//! bandwidth in Hz, rates in Mbps.

use serde::{Deserialize, Serialize};

use crate::geom::Point3;
use crate::scene::Vehicle;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElevationMode {
    /// `atan(Δh / d_horizontal)`, 90° directly overhead.
    Corrected,
    /// `90 − atan(Δh / D_3d)` as the closed form is printed. Gives 45°
    /// directly overhead; kept for fidelity experiments only.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GainModel {
    /// Received power `h0 / D · P_t`, then divided by the average path loss
    /// in the SNR. The distance attenuation is applied twice.
    PaperLiteral,
    /// Received power `h0 · P_t`; distance enters only through the path loss.
    FsplOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    Los,
    Nlos,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub alpha: f64,
    pub beta: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    pub carrier_hz: f64,
    pub light_speed: f64,
    pub tx_power_w: f64,
    pub ref_gain: f64,
    pub noise_power_w: f64,
    pub snr_gap: f64,
    pub total_bandwidth_hz: f64,
    pub util_a: f64,
    pub util_b: f64,
    /// Minimum uplink rate for a served vehicle, Mbps.
    pub r_min: f64,
    pub elevation_mode: ElevationMode,
    pub gain_model: GainModel,
    pub forced_nlos_under_bridge: bool,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            alpha: 9.61,
            beta: 0.16,
            eta_los_db: 1.0,
            eta_nlos_db: 20.0,
            carrier_hz: 2.0e9,
            light_speed: 3.0e8,
            tx_power_w: 0.05,
            ref_gain: DEFAULT_REF_GAIN,
            noise_power_w: 1.0e-13,
            snr_gap: 2.0,
            total_bandwidth_hz: 3.6e6,
            util_a: 1.0,
            util_b: 0.01,
            r_min: 3.2,
            elevation_mode: ElevationMode::Corrected,
            gain_model: GainModel::PaperLiteral,
            forced_nlos_under_bridge: false,
        }
    }
}

/// Reference path gain `h0`. With ten vehicles sharing a UAV, a vehicle
/// about 2.85 km straight below it sits right at the 3.2 Mbps floor, so the
/// floor binds for high UAVs and low-lying vehicles.
pub const DEFAULT_REF_GAIN: f64 = 800.0;

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("channel.alpha", self.alpha),
            ("channel.beta", self.beta),
            ("channel.carrier_hz", self.carrier_hz),
            ("channel.light_speed", self.light_speed),
            ("channel.noise_power_w", self.noise_power_w),
            ("channel.snr_gap", self.snr_gap),
            ("channel.total_bandwidth_hz", self.total_bandwidth_hz),
            ("channel.util_a", self.util_a),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(field, format!("must be positive, got {v}")));
            }
        }
        let non_negative = [
            ("channel.tx_power_w", self.tx_power_w),
            ("channel.ref_gain", self.ref_gain),
            ("channel.util_b", self.util_b),
            ("channel.r_min", self.r_min),
        ];
        for (field, v) in non_negative {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::param(
                    field,
                    format!("must be non-negative, got {v}"),
                ));
            }
        }
        for (field, v) in [
            ("channel.eta_los_db", self.eta_los_db),
            ("channel.eta_nlos_db", self.eta_nlos_db),
        ] {
            if !v.is_finite() {
                return Err(Error::param(field, "must be finite"));
            }
        }
        Ok(())
    }
}

pub fn euclid_3d(p: Point3, q: Point3) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dh = p.h - q.h;
    (dx * dx + dy * dy + dh * dh).sqrt()
}

pub fn elevation_deg(vehicle: Point3, uav: Point3, mode: ElevationMode) -> Result<f64> {
    let dh = uav.h - vehicle.h;
    if dh < 0.0 {
        return Err(Error::Channel(format!(
            "UAV at {:.2} m is below the vehicle at {:.2} m",
            uav.h, vehicle.h
        )));
    }
    match mode {
        ElevationMode::Corrected => {
            let d = vehicle.horizontal().dist(uav.horizontal());
            if d == 0.0 {
                Ok(90.0)
            } else {
                Ok(dh.atan2(d).to_degrees())
            }
        }
        ElevationMode::PaperLiteral => {
            let d3 = euclid_3d(vehicle, uav);
            if d3 == 0.0 {
                return Err(Error::Channel("zero link distance".into()));
            }
            Ok(90.0 - (dh / d3).atan().to_degrees())
        }
    }
}

pub fn los_probability(elev_deg: f64, params: &ChannelParams) -> f64 {
    1.0 / (1.0 + params.alpha * (-params.beta * (elev_deg - params.alpha)).exp())
}

pub fn free_space_loss_db(distance_m: f64, params: &ChannelParams) -> Result<f64> {
    if !(distance_m > 0.0) {
        return Err(Error::Channel(format!(
            "path loss needs a positive distance, got {distance_m}"
        )));
    }
    Ok(20.0
        * (4.0 * std::f64::consts::PI * params.carrier_hz * distance_m / params.light_speed)
            .log10())
}

pub fn path_loss_db(distance_m: f64, params: &ChannelParams, link: LinkKind) -> Result<f64> {
    let excess = match link {
        LinkKind::Los => params.eta_los_db,
        LinkKind::Nlos => params.eta_nlos_db,
    };
    Ok(free_space_loss_db(distance_m, params)? + excess)
}

/// Convex combination of the LoS and NLoS losses.
pub fn mix_path_loss(p_los: f64, los_db: f64, nlos_db: f64) -> f64 {
    p_los * los_db + (1.0 - p_los) * nlos_db
}

/// LoS probability of the link, honoring the forced-NLoS flag for vehicles
/// under the deck.
pub fn link_los_probability(vehicle: &Vehicle, uav: Point3, params: &ChannelParams) -> Result<f64> {
    if params.forced_nlos_under_bridge && vehicle.under_bridge {
        return Ok(0.0);
    }
    let elev = elevation_deg(vehicle.pos, uav, params.elevation_mode)?;
    Ok(los_probability(elev, params))
}

pub fn avg_path_loss_db(vehicle: &Vehicle, uav: Point3, params: &ChannelParams) -> Result<f64> {
    let d = euclid_3d(vehicle.pos, uav);
    let p_los = link_los_probability(vehicle, uav, params)?;
    let los = path_loss_db(d, params, LinkKind::Los)?;
    let nlos = path_loss_db(d, params, LinkKind::Nlos)?;
    Ok(mix_path_loss(p_los, los, nlos))
}

pub fn received_power_w(vehicle: Point3, uav: Point3, params: &ChannelParams) -> Result<f64> {
    let d = euclid_3d(vehicle, uav);
    if !(d > 0.0) {
        return Err(Error::Channel(
            "received power needs a positive distance".into(),
        ));
    }
    Ok(match params.gain_model {
        GainModel::PaperLiteral => params.ref_gain / d * params.tx_power_w,
        GainModel::FsplOnly => params.ref_gain * params.tx_power_w,
    })
}

/// Fraction of the total bandwidth left when `n_competing` vehicles share
/// one UAV.
pub fn channel_utilization(n_competing: usize, params: &ChannelParams) -> f64 {
    params.util_a * (-params.util_b * n_competing as f64).exp()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear SNR of the uplink, with the SNR gap and the average path loss
/// (converted out of dB) in the denominator.
pub fn link_snr(vehicle: &Vehicle, uav: Point3, params: &ChannelParams) -> Result<f64> {
    let p_rx = received_power_w(vehicle.pos, uav, params)?;
    let loss = db_to_linear(avg_path_loss_db(vehicle, uav, params)?);
    Ok(p_rx / (params.noise_power_w * params.snr_gap * loss))
}

/// `bandwidth · log2(1 + snr)`, converted to Mbps.
pub fn shannon_rate_mbps(bandwidth_hz: f64, snr: f64) -> f64 {
    bandwidth_hz * (1.0 + snr).log2() / 1.0e6
}

pub fn uplink_rate(
    vehicle: &Vehicle,
    uav: Point3,
    n_competing: usize,
    params: &ChannelParams,
) -> Result<f64> {
    if n_competing == 0 {
        return Err(Error::Channel(
            "n_competing must count the vehicle itself".into(),
        ));
    }
    let share = params.total_bandwidth_hz * channel_utilization(n_competing, params);
    Ok(shannon_rate_mbps(share, link_snr(vehicle, uav, params)?))
}
