//! Lorenz-system keystream: fixed-step RK4 integration with a periodic
//! disturbance, fractional-part extraction, interleaving, and digestion into
//! permutation, XOR mask and S-box selector streams.

use crate::error::{Error, Result};

/// Post-burn-in sample index period of the disturbance (triggers at t = 1, 10001, ...).
pub const DISTURBANCE_PERIOD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    pub step: f64,
    pub burn_in: usize,
}

impl LorenzParams {
    /// Classic chaotic coefficients (10, 28, 8/3), step 0.01, burn-in 100.
    pub fn with_initial(x0: f64, y0: f64, z0: f64) -> Self {
        LorenzParams {
            a: 10.0,
            b: 28.0,
            c: 8.0 / 3.0,
            x0,
            y0,
            z0,
            step: 0.01,
            burn_in: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a, self.b, self.c, self.x0, self.y0, self.z0, self.step];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("Lorenz parameters must be finite"));
        }
        if self.step <= 0.0 {
            return Err(Error::domain("integration step must be positive"));
        }
        Ok(())
    }

    fn derivative(&self, [x, y, z]: [f64; 3]) -> [f64; 3] {
        [self.a * (y - x), self.b * x - y - x * z, x * y - self.c * z]
    }
}

/// Classical fourth-order Runge-Kutta stepper over the undisturbed system.
#[derive(Debug, Clone)]
pub struct Integrator {
    params: LorenzParams,
    state: [f64; 3],
}

impl Integrator {
    pub fn new(params: LorenzParams) -> Self {
        Integrator {
            params,
            state: [params.x0, params.y0, params.z0],
        }
    }

    pub fn state(&self) -> [f64; 3] {
        self.state
    }

    pub fn set_state(&mut self, state: [f64; 3]) {
        self.state = state;
    }

    pub fn step(&mut self) -> [f64; 3] {
        let h = self.params.step;
        let s = self.state;
        let offset = |base: [f64; 3], k: [f64; 3], f: f64| {
            [base[0] + f * k[0], base[1] + f * k[1], base[2] + f * k[2]]
        };
        let k1 = self.params.derivative(s);
        let k2 = self.params.derivative(offset(s, k1, h / 2.0));
        let k3 = self.params.derivative(offset(s, k2, h / 2.0));
        let k4 = self.params.derivative(offset(s, k3, h));
        for i in 0..3 {
            self.state[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        self.state
    }
}

/// Post-burn-in samples of the disturbed trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Integrates `burn_in + count` RK4 steps and keeps the last `count` states.
/// Kept samples are numbered from t = 1; at every t = 1 (mod 10000) the state
/// is disturbed before it is recorded and integration continues from it.
pub fn integrate(params: &LorenzParams, count: usize) -> Result<Trajectory> {
    params.validate()?;
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let mut rk = Integrator::new(*params);
    for step in 1..=params.burn_in {
        let s = rk.step();
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step });
        }
    }
    let mut traj = Trajectory {
        x: Vec::with_capacity(count),
        y: Vec::with_capacity(count),
        z: Vec::with_capacity(count),
    };
    for t in 1..=count {
        let [mut x, mut y, z] = rk.step();
        if t % DISTURBANCE_PERIOD == 1 {
            if z <= 0.0 {
                x += 0.1;
                y -= 0.2;
            } else {
                x += 0.2;
                y -= 0.1;
            }
            rk.set_state([x, y, z]);
        }
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite {
                step: params.burn_in + t,
            });
        }
        traj.x.push(x);
        traj.y.push(y);
        traj.z.push(z);
    }
    Ok(traj)
}

/// `v - floor(v)`, clamped below 1 where rounding would otherwise return 1.0.
pub fn fractional_part(v: f64) -> f64 {
    let f = v - v.floor();
    if f >= 1.0 {
        // largest f64 below 1
        f64::from_bits(1.0f64.to_bits() - 1)
    } else {
        f
    }
}

pub fn fractional(traj: &Trajectory) -> Trajectory {
    let map = |v: &[f64]| v.iter().copied().map(fractional_part).collect();
    Trajectory {
        x: map(&traj.x),
        y: map(&traj.y),
        z: map(&traj.z),
    }
}

/// `x1, y1, z1, x2, y2, z2, ...` truncated to `length` entries.
pub fn interleave(traj: &Trajectory, length: usize) -> Result<Vec<f64>> {
    let needed = length.div_ceil(3);
    if traj.len() < needed {
        return Err(Error::InsufficientTrajectory {
            needed,
            available: traj.len(),
        });
    }
    Ok((0..needed)
        .flat_map(|i| [traj.x[i], traj.y[i], traj.z[i]])
        .take(length)
        .collect())
}

/// Digested chaotic material driving one encryption of `k.len()` positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    pub k: Vec<f64>,
    pub perm: Vec<usize>,
    pub mask: Vec<u8>,
    pub selectors: Vec<u8>,
}

/// `round(v * 10^4) mod 256`, rounding half away from zero.
pub fn mask_byte(v: f64) -> u8 {
    ((v * 1e4).round() as u64 % 256) as u8
}

/// `floor(v * 10^4) mod count`.
pub fn selector(v: f64, count: usize) -> u8 {
    ((v * 1e4).floor() as u64 % count as u64) as u8
}

/// Rank permutation of `k`, ascending, ties broken by lower index.
pub fn rank_permutation(k: &[f64]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..k.len()).collect();
    perm.sort_by(|&i, &j| k[i].total_cmp(&k[j]).then(i.cmp(&j)));
    perm
}

pub fn derive_keystream(k: Vec<f64>, sbox_count: usize) -> Result<Keystream> {
    if sbox_count == 0 || sbox_count > 256 {
        return Err(Error::domain(format!(
            "S-box count {sbox_count} outside 1..=256"
        )));
    }
    if let Some(bad) = k.iter().find(|v| !(0.0..1.0).contains(*v)) {
        return Err(Error::domain(format!(
            "keystream value {bad} outside [0, 1)"
        )));
    }
    let perm = rank_permutation(&k);
    let mask = k.iter().map(|&v| mask_byte(v)).collect();
    let selectors = k.iter().map(|&v| selector(v, sbox_count)).collect();
    Ok(Keystream {
        k,
        perm,
        mask,
        selectors,
    })
}

/// Full pipeline: integrate, take fractional parts, interleave, digest.
pub fn keystream(params: &LorenzParams, length: usize, sbox_count: usize) -> Result<Keystream> {
    if length == 0 {
        return derive_keystream(Vec::new(), sbox_count);
    }
    let traj = integrate(params, length.div_ceil(3))?;
    let k = interleave(&fractional(&traj), length)?;
    derive_keystream(k, sbox_count)
}

impl Keystream {
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// Debug dump: one line per position, `i perm mask selector`.
    pub fn dump(&self) -> String {
        let mut out = String::from("# index perm mask selector\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{i} {} {} {}\n",
                self.perm[i], self.mask[i], self.selectors[i]
            ));
        }
        out
    }
}
