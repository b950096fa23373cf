//! Synthetic oscillating fields and their standing/traveling decomposition.
//!
//! A mode with spatial profiles `c`, `d` contributes
//! `x(t) = 2·w·e^{γt}·(cos(ωt)·c − sin(ωt)·d)`. With `c = d` it is a rank-1
//! standing wave; with distinct profiles it is a rank-2 traveling wave. The
//! snapshot ensemble `X_s` (pixels x frames) is paired with its temporal
//! derivative `X_i`, and the leading columns of the pivoted dual QR of
//! `X_s + X_i·ε` separate the two kinds: a traveling pair shows up as two
//! columns whose standard and infinitesimal parts are strongly and
//! antisymmetrically correlated (`Q_i ≈ Q_s·P` with `P` skew), while a
//! standing mode has an almost vanishing infinitesimal column.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dual::DualMatrix;
use crate::dual_qr::tdqr;
use crate::error::{Error, Result};
use crate::real::{numerical_rank, qr_real, rqrcp, Permutation, SketchConfig, DEFAULT_OVERSAMPLING};
use crate::synth;

/// With [`PivotBackend::Auto`], exact pivoting is used when the field has
/// at most this many pixels or at most [`EXACT_PIVOT_MAX_FRAMES`] frames;
/// only fields that are large in both directions are sketched.
pub const EXACT_PIVOT_MAX_ROWS: usize = 5000;
pub const EXACT_PIVOT_MAX_FRAMES: usize = 1000;

/// How the column order of the ensemble is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PivotBackend {
    Auto,
    /// pivoted Householder QR of the whole ensemble
    Exact,
    /// pivoted QR of a Gaussian sketch with oversampling 8
    Sketch,
}

impl std::str::FromStr for PivotBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(PivotBackend::Auto),
            "exact" => Ok(PivotBackend::Exact),
            "sketch" => Ok(PivotBackend::Sketch),
            other => Err(Error::InvalidArgument(format!("unknown pivot backend `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub height: usize,
    pub width: usize,
}

impl Grid {
    pub fn new(height: usize, width: usize) -> Self {
        Self { height, width }
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= 0.0 && p.1 >= 0.0 && p.0 <= (self.height as f64 - 1.0) && p.1 <= (self.width as f64 - 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveMode {
    pub center_c: (f64, f64),
    pub center_d: (f64, f64),
    pub sigma: f64,
    /// radians per unit time
    pub omega: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "one")]
    pub weight: f64,
}

fn one() -> f64 {
    1.0
}

impl WaveMode {
    pub fn standing(center: (f64, f64), sigma: f64, omega: f64, weight: f64) -> Self {
        Self {
            center_c: center,
            center_d: center,
            sigma,
            omega,
            gamma: 0.0,
            weight,
        }
    }

    pub fn traveling(c: (f64, f64), d: (f64, f64), sigma: f64, omega: f64, weight: f64) -> Self {
        Self {
            center_c: c,
            center_d: d,
            sigma,
            omega,
            gamma: 0.0,
            weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveParams {
    pub grid: Grid,
    pub modes: Vec<WaveMode>,
    pub frames: usize,
    /// standard deviation of the additive Gaussian noise
    #[serde(default)]
    pub noise_peak: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub dt: f64,
}

impl WaveParams {
    pub fn validate(&self) -> Result<()> {
        if self.frames < 2 {
            return Err(Error::InvalidArgument("at least 2 frames are required".into()));
        }
        if !(self.dt > 0.0) || self.noise_peak < 0.0 || !self.noise_peak.is_finite() {
            return Err(Error::InvalidArgument("dt must be positive and noise nonnegative".into()));
        }
        for (idx, m) in self.modes.iter().enumerate() {
            if !(m.sigma > 0.0) {
                return Err(Error::InvalidArgument(format!("mode {idx}: sigma must be positive")));
            }
            if !self.grid.contains(m.center_c) || !self.grid.contains(m.center_d) {
                return Err(Error::InvalidArgument(format!("mode {idx}: center outside grid")));
            }
        }
        Ok(())
    }
}

/// Snapshot ensemble: one flattened frame per column.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub ensemble: DMatrix<f64>,
    pub dt: f64,
    pub grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Standing,
    Traveling,
    Combo,
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standing" => Ok(Preset::Standing),
            "traveling" => Ok(Preset::Traveling),
            "combo" => Ok(Preset::Combo),
            other => Err(Error::InvalidArgument(format!("unknown preset `{other}`"))),
        }
    }
}

pub const PRESET_NOISE: f64 = 1e-3;

impl Preset {
    /// Preset parameters with noise standard deviation `noise`.
    pub fn params(self, noise: f64, seed: u64) -> WaveParams {
        let frames = 100;
        let omega = |f: f64| 2.0 * PI * f / frames as f64;
        let (grid, modes) = match self {
            Preset::Standing => (Grid::new(50, 100), vec![WaveMode::standing((25.0, 50.0), 4.0, omega(1.0), 1.0)]),
            Preset::Traveling => (
                Grid::new(50, 100),
                vec![WaveMode::traveling((25.0, 20.0), (25.0, 80.0), 4.0, omega(1.0), 1.0)],
            ),
            Preset::Combo => {
                // distinct frequencies keep the six components linearly
                // independent over the record
                let standing = [((50.0, 50.0), 16.0, 1.0), ((100.0, 100.0), 8.0, 2.0), ((150.0, 70.0), 4.0, 3.0), ((170.0, 180.0), 2.0, 4.0)];
                let mut modes: Vec<WaveMode> = standing
                    .iter()
                    .map(|&(c, w, f)| WaveMode::standing(c, 1.0, omega(f), w))
                    .collect();
                modes.push(WaveMode::traveling((50.0, 100.0), (100.0, 50.0), 1.0, omega(12.0), 1.0));
                modes.push(WaveMode::traveling((70.0, 150.0), (120.0, 150.0), 1.0, omega(17.0), 0.4));
                (Grid::new(200, 200), modes)
            }
        };
        WaveParams {
            grid,
            modes,
            frames,
            noise_peak: noise,
            seed,
            dt: 1.0,
        }
    }

    /// Planted standing centers and traveling center pairs.
    pub fn planted(self) -> (Vec<(usize, usize)>, Vec<((usize, usize), (usize, usize))>) {
        match self {
            Preset::Standing => (vec![(25, 50)], vec![]),
            Preset::Traveling => (vec![], vec![((25, 20), (25, 80))]),
            Preset::Combo => (
                vec![(50, 50), (100, 100), (150, 70), (170, 180)],
                vec![((50, 100), (100, 50)), ((70, 150), (120, 150))],
            ),
        }
    }
}

/// Unnormalized Gaussian bump, flattened row-major.
pub fn gaussian_mode(grid: Grid, center: (f64, f64), sigma: f64) -> Result<Vec<f64>> {
    if !grid.contains(center) {
        return Err(Error::InvalidArgument(format!(
            "center ({}, {}) outside {}x{} grid",
            center.0, center.1, grid.height, grid.width
        )));
    }
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument("sigma must be positive".into()));
    }
    let s2 = 2.0 * sigma * sigma;
    let mut out = Vec::with_capacity(grid.len());
    for r in 0..grid.height {
        let dr = r as f64 - center.0;
        for c in 0..grid.width {
            let dc = c as f64 - center.1;
            out.push((-(dr * dr + dc * dc) / s2).exp());
        }
    }
    Ok(out)
}

pub fn simulate(params: &WaveParams) -> Result<WaveField> {
    params.validate()?;
    let m = params.grid.len();
    let n = params.frames;
    let mut x = if params.noise_peak > 0.0 {
        synth::giid(m, n, params.seed) * params.noise_peak
    } else {
        DMatrix::zeros(m, n)
    };
    for mode in &params.modes {
        let c = gaussian_mode(params.grid, mode.center_c, mode.sigma)?;
        let d = gaussian_mode(params.grid, mode.center_d, mode.sigma)?;
        for t in 0..n {
            let time = t as f64 * params.dt;
            let amp = 2.0 * mode.weight * (mode.gamma * time).exp();
            let (a, b) = (amp * (mode.omega * time).cos(), -amp * (mode.omega * time).sin());
            for ((v, ci), di) in x.column_mut(t).iter_mut().zip(&c).zip(&d) {
                *v += a * ci + b * di;
            }
        }
    }
    Ok(WaveField {
        ensemble: x,
        dt: params.dt,
        grid: params.grid,
    })
}

/// Pairs the ensemble with its time derivative: central differences inside,
/// one-sided differences on the first and last frame, scaled by `1/dt`.
pub fn to_dual_series(field: &WaveField) -> Result<DualMatrix> {
    let x = &field.ensemble;
    let n = x.ncols();
    if n < 2 {
        return Err(Error::InvalidArgument("at least 2 frames are required".into()));
    }
    let h = 1.0 / field.dt;
    let mut d = DMatrix::zeros(x.nrows(), n);
    d.set_column(0, &((x.column(1) - x.column(0)) * h));
    d.set_column(n - 1, &((x.column(n - 1) - x.column(n - 2)) * h));
    for t in 1..n - 1 {
        d.set_column(t, &((x.column(t + 1) - x.column(t - 1)) * (0.5 * h)));
    }
    DualMatrix::new(x.clone(), d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentifyOptions {
    pub k: usize,
    pub theta: f64,
    pub eta: f64,
    /// columns whose `|r_jj|/|r_11|` falls below this are treated as noise
    pub noise_floor: f64,
    pub backend: PivotBackend,
    /// seed of the sketch, when one is used
    pub seed: u64,
}

impl IdentifyOptions {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            theta: 0.6,
            eta: 0.1,
            noise_floor: 0.02,
            backend: PivotBackend::Auto,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Standing,
    Traveling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveComponent {
    pub index: usize,
    pub kind: WaveKind,
    pub partner: Option<usize>,
    /// `cos(Q_s(:,j), Q_i(:,partner))`; for standing columns the largest
    /// off-diagonal value in magnitude
    pub pairing_cosine: f64,
    /// 0-based (row, col)
    pub peak: (usize, usize),
    /// `‖Q_i(:,j)‖` relative to the largest kept column
    pub infinitesimal_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveReport {
    pub grid: Grid,
    pub components: Vec<WaveComponent>,
}

impl WaveReport {
    pub fn standing_peaks(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self
            .components
            .iter()
            .filter(|c| c.kind == WaveKind::Standing)
            .map(|c| c.peak)
            .collect();
        v.sort();
        v
    }

    /// Each traveling pair once, peaks in ascending order.
    pub fn traveling_pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut v: Vec<_> = self
            .components
            .iter()
            .filter_map(|c| match c.partner {
                Some(p) if p > c.index => {
                    let a = c.peak;
                    let b = self.components.iter().find(|o| o.index == p)?.peak;
                    Some(if a <= b { (a, b) } else { (b, a) })
                }
                _ => None,
            })
            .collect();
        v.sort();
        v
    }
}

/// Report plus the leading dual `Q` columns it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct Identification {
    pub report: WaveReport,
    pub q: DualMatrix,
    pub perm: Permutation,
}

fn check_k(k: usize, m: usize, n: usize) -> Result<()> {
    if k < 1 || k > m.min(n) {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={}", m.min(n))));
    }
    Ok(())
}

fn pivot_order(xs: &DMatrix<f64>, k: usize, backend: PivotBackend, seed: u64) -> Result<Permutation> {
    let exact = match backend {
        PivotBackend::Exact => true,
        PivotBackend::Sketch => false,
        PivotBackend::Auto => xs.nrows() <= EXACT_PIVOT_MAX_ROWS || xs.ncols() <= EXACT_PIVOT_MAX_FRAMES,
    };
    if exact {
        Ok(qr_real(xs, true, true).perm)
    } else {
        let cfg = SketchConfig::new(k, seed).with_oversampling(DEFAULT_OVERSAMPLING);
        Ok(rqrcp(xs, &cfg)?.perm)
    }
}

fn leading(m: &DMatrix<f64>, perm: &Permutation, k: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.nrows(), k);
    for (j, &src) in perm.indices()[..k].iter().enumerate() {
        out.set_column(j, &m.column(src));
    }
    out
}

pub fn identify(d: &DualMatrix, grid: Grid, opts: &IdentifyOptions) -> Result<WaveReport> {
    identify_full(d, grid, opts).map(|id| id.report)
}

pub fn identify_full(d: &DualMatrix, grid: Grid, opts: &IdentifyOptions) -> Result<Identification> {
    let (m, n) = d.shape();
    check_k(opts.k, m, n)?;
    if m != grid.len() {
        return Err(Error::DimensionMismatch(format!(
            "{m} rows do not match a {}x{} grid",
            grid.height, grid.width
        )));
    }
    let perm = pivot_order(d.standard(), opts.k, opts.backend, opts.seed)?;

    // keep the prefix of columns that rises above the noise floor
    let lead_s = leading(d.standard(), &perm, opts.k);
    let diag_r = qr_real(&lead_s, false, true).r;
    let rank = numerical_rank(&diag_r, m, n);
    let r11 = diag_r[(0, 0)].abs();
    let keep = (0..rank)
        .take_while(|&j| diag_r[(j, j)].abs() > opts.noise_floor * r11)
        .count();

    let empty = || Identification {
        report: WaveReport {
            grid,
            components: vec![],
        },
        q: DualMatrix::zeros(m, 0),
        perm: perm.clone(),
    };
    if keep == 0 {
        return Ok(empty());
    }
    let lead = DualMatrix::new(
        lead_s.columns(0, keep).clone_owned(),
        leading(d.infinitesimal(), &perm, keep),
    )?;
    let f = tdqr(&lead)?;
    let components = classify(f.q.standard(), f.q.infinitesimal(), grid, opts);
    Ok(Identification {
        report: WaveReport { grid, components },
        q: f.q,
        perm,
    })
}

/// `M_jk = cos(Q_s(:,j), Q_i(:,k))`, with zero columns of `Q_i` mapping to 0.
pub fn pairing_matrix(qs: &DMatrix<f64>, qi: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = qs.transpose() * qi;
    for k in 0..qi.ncols() {
        let nk = qi.column(k).norm();
        let s = if nk > 0.0 { 1.0 / nk } else { 0.0 };
        m.column_mut(k).scale_mut(s);
    }
    m
}

fn classify(qs: &DMatrix<f64>, qi: &DMatrix<f64>, grid: Grid, opts: &IdentifyOptions) -> Vec<WaveComponent> {
    let k = qs.ncols();
    let norms: Vec<f64> = (0..k).map(|j| qi.column(j).norm()).collect();
    let top = norms.iter().cloned().fold(0.0, f64::max);
    let energy: Vec<f64> = norms.iter().map(|&v| if top > 0.0 { v / top } else { 0.0 }).collect();
    let pm = pairing_matrix(qs, qi);

    let mut candidates = Vec::new();
    for j in 0..k {
        for l in (j + 1)..k {
            let (a, b) = (pm[(j, l)], pm[(l, j)]);
            if energy[j] > opts.eta
                && energy[l] > opts.eta
                && a.abs() >= opts.theta
                && b.abs() >= opts.theta
                && a.signum() == -b.signum()
            {
                candidates.push((a.abs().min(b.abs()), j, l));
            }
        }
    }
    candidates.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut partner = vec![None; k];
    for (_, j, l) in candidates {
        if partner[j].is_none() && partner[l].is_none() {
            partner[j] = Some(l);
            partner[l] = Some(j);
        }
    }

    (0..k)
        .map(|j| {
            let col = qs.column(j);
            let flat = col.iamax();
            let peak = (flat / grid.width, flat % grid.width);
            let (kind, pairing_cosine) = match partner[j] {
                Some(p) => (WaveKind::Traveling, pm[(j, p)]),
                None => {
                    let best = (0..k)
                        .filter(|&l| l != j)
                        .map(|l| pm[(j, l)])
                        .fold(0.0, |acc: f64, v| if v.abs() > acc.abs() { v } else { acc });
                    (WaveKind::Standing, best)
                }
            };
            WaveComponent {
                index: j,
                kind,
                partner: partner[j],
                pairing_cosine,
                peak,
                infinitesimal_energy: energy[j],
            }
        })
        .collect()
}

/// `‖(I − Q_sQ_sᵀ)·X_i‖_F / ‖X_i‖_F` with `Q_s` spanning the first `k`
/// pivoted columns of `X_s`; 0 when `X_i = 0`.
pub fn range_residual(d: &DualMatrix, k: usize) -> Result<f64> {
    let (m, n) = d.shape();
    check_k(k, m, n)?;
    let xi = d.infinitesimal();
    let total = xi.norm();
    if total == 0.0 {
        return Ok(0.0);
    }
    let perm = qr_real(d.standard(), true, true).perm;
    let q = qr_real(&leading(d.standard(), &perm, k), false, true).q;
    Ok((xi - &q * (q.transpose() * xi)).norm() / total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noiseless(modes: Vec<WaveMode>, grid: Grid, dt: f64, frames: usize) -> WaveField {
        simulate(&WaveParams {
            grid,
            modes,
            frames,
            noise_peak: 0.0,
            seed: 0,
            dt,
        })
        .unwrap()
    }

    fn ratio(x: &DMatrix<f64>, i: usize) -> f64 {
        let s = crate::real::singular_values(x);
        s[i] / s[0]
    }

    #[test]
    fn gaussian_shape() {
        let g = Grid::new(50, 100);
        let v = gaussian_mode(g, (25.0, 50.0), 3.0).unwrap();
        assert_eq!(v[25 * 100 + 50], 1.0);
        assert_eq!(v[28 * 100 + 50], v[22 * 100 + 50]);
        let sum: f64 = v.iter().sum();
        let expect = 2.0 * PI * 9.0;
        assert!((sum - expect).abs() / expect < 0.01);
        assert!(gaussian_mode(g, (50.0, 1.0), 3.0).is_err());
    }

    #[test]
    fn rank_of_standing_and_traveling() {
        let g = Grid::new(50, 100);
        let st = noiseless(vec![WaveMode::standing((25.0, 50.0), 4.0, 0.2, 1.0)], g, 1.0, 60);
        assert!(ratio(&st.ensemble, 1) <= 1e-10);
        let tr = noiseless(
            vec![WaveMode::traveling((25.0, 20.0), (25.0, 80.0), 4.0, 0.2, 1.0)],
            g,
            1.0,
            60,
        );
        assert!(ratio(&tr.ensemble, 1) >= 0.1);
        assert!(ratio(&tr.ensemble, 2) <= 1e-10);
    }

    #[test]
    fn first_frame_is_twice_profile() {
        let g = Grid::new(10, 12);
        let modes = vec![
            WaveMode::standing((3.0, 4.0), 2.0, 0.3, 1.5),
            WaveMode::traveling((5.0, 2.0), (6.0, 9.0), 1.5, 0.7, 0.5),
        ];
        let f = noiseless(modes.clone(), g, 1.0, 5);
        let mut expect = vec![0.0; g.len()];
        for m in &modes {
            let c = gaussian_mode(g, m.center_c, m.sigma).unwrap();
            for (e, v) in expect.iter_mut().zip(c) {
                *e += 2.0 * m.weight * v;
            }
        }
        for (a, b) in f.ensemble.column(0).iter().zip(&expect) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn derivative_of_constant_and_ramp() {
        let g = Grid::new(2, 2);
        let constant = WaveField {
            ensemble: DMatrix::from_fn(4, 6, |r, _| r as f64),
            dt: 1.0,
            grid: g,
        };
        assert_eq!(to_dual_series(&constant).unwrap().infinitesimal().amax(), 0.0);
        let v = [1.0, -2.0, 0.5, 3.0];
        let ramp = WaveField {
            ensemble: DMatrix::from_fn(4, 6, |r, t| v[r] * t as f64 * 0.5),
            dt: 0.5,
            grid: g,
        };
        let d = to_dual_series(&ramp).unwrap();
        for t in 0..6 {
            for r in 0..4 {
                assert!((d.infinitesimal()[(r, t)] - v[r]).abs() < 1e-12);
            }
        }
        let short = WaveField {
            ensemble: DMatrix::zeros(4, 1),
            dt: 1.0,
            grid: g,
        };
        assert!(to_dual_series(&short).is_err());
    }

    #[test]
    fn derivative_is_second_order_inside() {
        let g = Grid::new(8, 8);
        let mode = WaveMode::traveling((2.0, 2.0), (5.0, 6.0), 1.5, 0.8, 1.0);
        let c = gaussian_mode(g, mode.center_c, mode.sigma).unwrap();
        let d = gaussian_mode(g, mode.center_d, mode.sigma).unwrap();
        let err = |dt: f64| {
            let frames = (4.0 / dt) as usize + 1;
            let f = noiseless(vec![mode], g, dt, frames);
            let x = to_dual_series(&f).unwrap();
            let mut worst = 0.0f64;
            for t in 1..frames - 1 {
                let time = t as f64 * dt;
                let w = mode.omega;
                for p in 0..g.len() {
                    let exact = 2.0 * w * (-(w * time).sin() * c[p] - (w * time).cos() * d[p]);
                    worst = worst.max((x.infinitesimal()[(p, t)] - exact).abs());
                }
            }
            worst
        };
        let reduction = err(0.1) / err(0.05);
        assert!((3.5..4.5).contains(&reduction), "{reduction}");
    }

    #[test]
    fn zero_field_has_no_components() {
        let g = Grid::new(4, 5);
        let d = DualMatrix::zeros(20, 6);
        let r = identify(&d, g, &IdentifyOptions::new(3)).unwrap();
        assert!(r.components.is_empty());
        assert!(identify(&d, g, &IdentifyOptions::new(7)).is_err());
        assert!(identify(&d, Grid::new(3, 3), &IdentifyOptions::new(2)).is_err());
    }

    #[test]
    fn traveling_pair_is_antisymmetric() {
        let p = Preset::Traveling.params(0.0, 0);
        let d = to_dual_series(&simulate(&p).unwrap()).unwrap();
        let id = identify_full(&d, p.grid, &IdentifyOptions::new(2)).unwrap();
        let pm = pairing_matrix(id.q.standard(), id.q.infinitesimal());
        assert!((pm[(0, 1)] + pm[(1, 0)]).abs() <= 1e-6);
        assert!(pm[(0, 0)].abs() <= 1e-6 && pm[(1, 1)].abs() <= 1e-6);
        assert!(range_residual(&d, 2).unwrap() <= 1e-8);
    }

    #[test]
    fn sketch_backend_still_finds_traveling_pair() {
        let p = Preset::Traveling.params(1e-3, 3);
        let d = to_dual_series(&simulate(&p).unwrap()).unwrap();
        let mut opts = IdentifyOptions::new(2);
        opts.backend = PivotBackend::Sketch;
        let r = identify(&d, p.grid, &opts).unwrap();
        assert_eq!(r.traveling_pairs(), vec![((25, 20), (25, 80))]);
    }

    #[test]
    fn range_residual_extremes() {
        let xs = synth::giid(30, 10, 1);
        let zero = DualMatrix::from_standard(xs.clone()).unwrap();
        assert_eq!(range_residual(&zero, 2).unwrap(), 0.0);
        let rnd = DualMatrix::new(xs, synth::giid(30, 10, 2)).unwrap();
        assert!(range_residual(&rnd, 2).unwrap() >= 0.5);
        assert!(range_residual(&rnd, 11).is_err());
    }
}
