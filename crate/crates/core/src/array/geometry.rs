use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sh::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mount {
    RigidSphere,
    FreeField,
}

/// Microphone position in spherical coordinates (radians, meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mic {
    pub theta: f64,
    pub phi: f64,
    pub r: f64,
}

impl Mic {
    pub fn direction(&self) -> Direction {
        Direction::new(self.theta, self.phi).expect("validated microphone direction")
    }

    pub fn position(&self) -> [f64; 3] {
        let u = self.direction().unit_vector();
        [self.r * u[0], self.r * u[1], self.r * u[2]]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    pub sphere_radius: f64,
    pub mount: Mount,
    pub mics: Vec<Mic>,
}

#[derive(Serialize, Deserialize)]
struct MicJson {
    theta_deg: f64,
    phi_deg: f64,
    r_m: f64,
}

#[derive(Serialize, Deserialize)]
struct GeometryJson {
    sphere_radius_m: f64,
    mount: Mount,
    mics: Vec<MicJson>,
}

impl ArrayGeometry {
    pub fn new(sphere_radius: f64, mount: Mount, mics: Vec<Mic>) -> Result<Self> {
        let g = Self { sphere_radius, mount, mics };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mics.is_empty() {
            return Err(Error::input("array has no microphones"));
        }
        if !(self.sphere_radius >= 0.0 && self.sphere_radius.is_finite()) {
            return Err(Error::input(format!("invalid sphere radius {}", self.sphere_radius)));
        }
        for (i, m) in self.mics.iter().enumerate() {
            Direction::new(m.theta, m.phi)
                .map_err(|e| Error::input(format!("microphone {i}: {e}")))?;
            if !(m.r >= 0.0 && m.r.is_finite()) {
                return Err(Error::input(format!("microphone {i}: invalid radius {}", m.r)));
            }
            if self.mount == Mount::RigidSphere && (m.r - self.sphere_radius).abs() > 1e-9 {
                return Err(Error::input(format!(
                    "microphone {i} radius {} is not on the sphere surface ({})",
                    m.r, self.sphere_radius
                )));
            }
        }
        if self.mount == Mount::RigidSphere && self.sphere_radius <= 0.0 {
            return Err(Error::input("rigid-sphere mount needs a positive radius"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.mics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mics.is_empty()
    }

    /// The same array rotated by `r` about its centre.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> ArrayGeometry {
        let mics = self
            .mics
            .iter()
            .map(|m| {
                let d = m.direction().rotated(r);
                Mic { theta: d.theta, phi: d.phi, r: m.r }
            })
            .collect();
        ArrayGeometry { sphere_radius: self.sphere_radius, mount: self.mount, mics }
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = GeometryJson {
            sphere_radius_m: self.sphere_radius,
            mount: self.mount,
            mics: self
                .mics
                .iter()
                .map(|m| MicJson { theta_deg: m.theta.to_degrees(), phi_deg: m.phi.to_degrees(), r_m: m.r })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GeometryJson = serde_json::from_str(text)?;
        let mics = doc
            .mics
            .iter()
            .map(|m| Mic { theta: m.theta_deg.to_radians(), phi: m.phi_deg.to_radians(), r: m.r_m })
            .collect();
        let mut g = Self::new(doc.sphere_radius_m, doc.mount, mics)?;
        for m in &mut g.mics {
            let d = m.direction();
            m.theta = d.theta;
            m.phi = d.phi;
        }
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

fn rigid_from_degrees(radius: f64, angles: &[(f64, f64)]) -> ArrayGeometry {
    let mics = angles
        .iter()
        .map(|&(t, p)| Mic { theta: t.to_radians(), phi: p.to_radians(), r: radius })
        .collect();
    ArrayGeometry { sphere_radius: radius, mount: Mount::RigidSphere, mics }
}

/// The five-microphone semicircular wearable array on a 0.1 m rigid sphere.
pub fn default_wearable_geometry() -> ArrayGeometry {
    rigid_from_degrees(0.1, &[(90.0, -70.0), (72.0, -35.0), (108.0, 0.0), (72.0, 35.0), (90.0, 70.0)])
}

/// Variant of the wearable array with the wider azimuths ±80°/±40°.
pub fn caption_wearable_geometry() -> ArrayGeometry {
    rigid_from_degrees(0.1, &[(90.0, -80.0), (72.0, -40.0), (108.0, 0.0), (72.0, 40.0), (90.0, 80.0)])
}

/// Near-uniform 32-microphone rigid-sphere array: the 12 icosahedron and 20
/// dodecahedron vertices (the pentakis dodecahedron).
pub fn spherical_32_geometry(radius: f64) -> ArrayGeometry {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts: Vec<[f64; 3]> = Vec::with_capacity(32);
    let cyc = |a: f64, b: f64, c: f64| [[a, b, c], [c, a, b], [b, c, a]];
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            pts.extend(cyc(0.0, s1 * g, s2));
            pts.extend(cyc(0.0, s1 / g, s2 * g));
        }
    }
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                pts.push([sx, sy, sz]);
            }
        }
    }
    let mics = pts
        .into_iter()
        .map(|p| {
            let d = Direction::from_vector(p).expect("nonzero vertex");
            Mic { theta: d.theta, phi: d.phi, r: radius }
        })
        .collect();
    ArrayGeometry { sphere_radius: radius, mount: Mount::RigidSphere, mics }
}
