use serde::{Deserialize, Serialize};

use super::{PlaneWave, PlaneWaveScene};
use crate::error::{Error, Result};
use crate::sh::Direction;

/// Shoebox room with one omnidirectional source and the array center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomSpec {
    /// `(L, W, H)` in meters; the room spans `[0, L] × [0, W] × [0, H]`.
    pub dims: [f64; 3],
    pub source_pos: [f64; 3],
    pub array_pos: [f64; 3],
    /// Seconds.
    pub rt60: f64,
    /// Per-axis reflection order `K`: images with lattice indices in
    /// `[−K, K]³`. When absent, `K` and a distance cutoff are chosen so the
    /// response covers `rt60` seconds (the −60 dB point).
    #[serde(default)]
    pub max_image_order: Option<usize>,
}

impl RoomSpec {
    /// The 8 × 6 × 4 m room with a 400 ms reverberation time.
    pub fn paper_room() -> Self {
        Self {
            dims: [8.0, 6.0, 4.0],
            source_pos: [4.0, 3.0, 1.7],
            array_pos: [2.6, 4.4, 1.7],
            rt60: 0.4,
            max_image_order: None,
        }
    }

    /// The paper geometry with the direct path only.
    pub fn anechoic() -> Self {
        Self { max_image_order: Some(0), ..Self::paper_room() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
            return Err(Error::Geometry(format!("room dimensions {:?} must be positive", self.dims)));
        }
        for (label, p) in [("source", self.source_pos), ("array", self.array_pos)] {
            if (0..3).any(|a| !(p[a] > 0.0 && p[a] < self.dims[a])) {
                return Err(Error::Geometry(format!("{label} position {p:?} is not strictly inside the room")));
            }
        }
        if !(self.rt60 > 0.0) || !self.rt60.is_finite() {
            return Err(Error::Geometry(format!("rt60 {} must be positive", self.rt60)));
        }
        if distance(self.source_pos, self.array_pos) < 1e-9 {
            return Err(Error::Geometry("source coincides with the array".into()));
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        self.dims.iter().product()
    }

    pub fn surface(&self) -> f64 {
        let [l, w, h] = self.dims;
        2.0 * (l * w + l * h + w * h)
    }

    /// Mean absorption from Sabine's formula `rt60 = 0.161 V / (S ᾱ)`,
    /// clamped to `[0, 1]`.
    pub fn absorption(&self) -> f64 {
        (0.161 * self.volume() / (self.surface() * self.rt60)).clamp(0.0, 1.0)
    }

    /// Pressure reflection coefficient `β = √(1 − ᾱ)` of every wall.
    pub fn reflection_coefficient(&self) -> f64 {
        (1.0 - self.absorption()).sqrt()
    }

    /// Per-axis order and optional path-length cutoff used for enumeration.
    pub fn image_limits(&self, sound_speed: f64) -> (usize, Option<f64>) {
        match self.max_image_order {
            Some(k) => (k, None),
            None => {
                let reach = sound_speed * self.rt60 + distance(self.source_pos, self.array_pos);
                let min_dim = self.dims.iter().cloned().fold(f64::INFINITY, f64::min);
                ((reach / min_dim).ceil() as usize + 1, Some(reach))
            }
        }
    }

    /// Azimuth (degrees, counter-clockwise from +x) of the direct path seen
    /// from the array.
    pub fn direct_azimuth_deg(&self) -> f64 {
        let d = sub(self.source_pos, self.array_pos);
        d[1].atan2(d[0]).to_degrees()
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = sub(a, b);
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Image coordinate along one axis for lattice index `i`; odd indices are
/// mirrored.
fn image_coord(i: i64, len: f64, x: f64) -> f64 {
    if i.rem_euclid(2) == 0 {
        i as f64 * len + x
    } else {
        (i + 1) as f64 * len - x
    }
}

/// Image-source simulation of a shoebox room.
///
/// Every image becomes a plane wave at the array center with direction
/// toward the image, delay `d / c` and gain `β^{|i|+|j|+|l|} / d`.
pub fn image_source_scene(room: &RoomSpec, sound_speed: f64) -> Result<PlaneWaveScene> {
    room.validate()?;
    if !(sound_speed > 0.0) {
        return Err(Error::input(format!("sound speed {sound_speed} must be positive")));
    }
    let beta = room.reflection_coefficient();
    let (k, cutoff) = room.image_limits(sound_speed);
    let k = k as i64;
    let mut waves = Vec::new();
    let axis = |a: usize| -> Vec<(i64, f64)> {
        (-k..=k).map(|i| (i, image_coord(i, room.dims[a], room.source_pos[a]) - room.array_pos[a])).collect()
    };
    let (xs, ys, zs) = (axis(0), axis(1), axis(2));
    for &(i, dx) in &xs {
        for &(j, dy) in &ys {
            for &(l, dz) in &zs {
                let d = (dx * dx + dy * dy + dz * dz).sqrt();
                if cutoff.is_some_and(|c| d > c) {
                    continue;
                }
                if d < 1e-9 {
                    return Err(Error::Geometry("image source coincides with the array".into()));
                }
                let reflections = (i.abs() + j.abs() + l.abs()) as i32;
                let gain = if reflections == 0 { 1.0 / d } else { beta.powi(reflections) / d };
                waves.push(PlaneWave { direction: Direction::from_vector([dx, dy, dz])?, gain, delay: d / sound_speed });
            }
        }
    }
    waves.sort_by(|a, b| a.delay.total_cmp(&b.delay));
    PlaneWaveScene::new(waves, crate::DEFAULT_SAMPLE_RATE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrored_coordinates() {
        assert_eq!(image_coord(0, 8.0, 3.0), 3.0);
        assert_eq!(image_coord(-1, 8.0, 3.0), -3.0);
        assert_eq!(image_coord(1, 8.0, 3.0), 13.0);
        assert_eq!(image_coord(2, 8.0, 3.0), 19.0);
        assert_eq!(image_coord(-2, 8.0, 3.0), -13.0);
    }

    #[test]
    fn sabine_coefficient() {
        let r = RoomSpec::paper_room();
        let a = 0.161 * 192.0 / (208.0 * 0.4);
        assert!((r.absorption() - a).abs() < 1e-12);
        assert!((r.reflection_coefficient() - (1.0 - a).sqrt()).abs() < 1e-12);
    }
}
