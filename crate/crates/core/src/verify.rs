//! Finite case checks of the local properties the models are built on.
//!
//! The exhaustive suites evaluate the production kernels on every local
//! window and compare both sides of each identity; nothing is transcribed
//! from a table. Each suite also has a `_with` form taking substitute local
//! dynamics, which the mutation tests use.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{exact_density, BatchStats};
use crate::lattice::kernel::step;
use crate::lattice::rules::{self, RuleA, RuleColored, RuleParticle};
use crate::lattice::{
    Alphabet, Arrow, BitPlane, Boundary, Configuration, Lane, Model, Symbol, UpdateRow, UpdateStream,
};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub suite: String,
    pub cases_total: usize,
    pub cases_passed: usize,
    pub failures: Vec<CaseFailure>,
}

impl CaseReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            cases_total: 0,
            cases_passed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, input: impl FnOnce() -> String, expected: impl ToString, got: impl ToString) {
        self.cases_total += 1;
        if ok {
            self.cases_passed += 1;
        } else {
            self.failures.push(CaseFailure {
                input: input(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Center-site output of each model on a two-site window `(i - 1, i)`.
pub trait LocalDynamics {
    fn a(&self, x: [bool; 2], u: Arrow) -> bool;
    fn b(&self, y: [bool; 2], u: [Arrow; 2]) -> bool;
    fn c(&self, z: [bool; 2], u: [Arrow; 2]) -> bool;
    fn d(&self, d: [Symbol; 2], u: [Arrow; 2]) -> Symbol;
}

/// The packed production kernels, run on two-site line windows.
#[derive(Clone, Copy, Debug, Default)]
pub struct PackedKernels;

fn run_pair(model: Model, symbols: [Symbol; 2], u: [Arrow; 2]) -> Symbol {
    let x = Configuration::from_symbols(model.alphabet(), -1, &symbols).expect("local window");
    let row = UpdateRow::from_arrows(-1, &u);
    let out = step(model, &x, &row, Boundary::Line).expect("aligned local window");
    out.symbol(0).expect("output covers site 0")
}

fn particle(b: bool) -> Symbol {
    if b {
        Symbol::Particle
    } else {
        Symbol::Empty
    }
}

impl LocalDynamics for PackedKernels {
    fn a(&self, x: [bool; 2], u: Arrow) -> bool {
        let s = x.map(|b| if b { Symbol::One } else { Symbol::Zero });
        // the left arrow is not read by model A
        run_pair(Model::A, s, [Arrow::Up, u]) == Symbol::One
    }

    fn b(&self, y: [bool; 2], u: [Arrow; 2]) -> bool {
        run_pair(Model::B, y.map(particle), u).is_occupied()
    }

    fn c(&self, z: [bool; 2], u: [Arrow; 2]) -> bool {
        run_pair(Model::C, z.map(particle), u).is_occupied()
    }

    fn d(&self, d: [Symbol; 2], u: [Arrow; 2]) -> Symbol {
        run_pair(Model::D, d, u)
    }
}

/// Local dynamics given directly by case-table functions.
#[derive(Clone, Copy, Debug)]
pub struct CaseTables {
    pub a: RuleA,
    pub b: RuleParticle,
    pub c: RuleParticle,
    pub d: RuleColored,
}

impl Default for CaseTables {
    fn default() -> Self {
        Self {
            a: rules::rule_a,
            b: rules::rule_b,
            c: rules::rule_c,
            d: rules::rule_d,
        }
    }
}

impl LocalDynamics for CaseTables {
    fn a(&self, x: [bool; 2], u: Arrow) -> bool {
        (self.a)(x[0], x[1], u)
    }

    fn b(&self, y: [bool; 2], u: [Arrow; 2]) -> bool {
        (self.b)(y[0], y[1], u[0], u[1])
    }

    fn c(&self, z: [bool; 2], u: [Arrow; 2]) -> bool {
        (self.c)(z[0], z[1], u[0], u[1])
    }

    fn d(&self, d: [Symbol; 2], u: [Arrow; 2]) -> Symbol {
        (self.d)(d[0], d[1], u[0], u[1])
    }
}

fn arrow_pairs() -> impl Iterator<Item = [Arrow; 2]> {
    Arrow::BOTH.into_iter().flat_map(|a| Arrow::BOTH.map(|b| [a, b]))
}

fn bits_word(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn particle_word(bits: &[bool]) -> String {
    bits.iter().map(|&b| particle(b).glyph()).collect()
}

fn arrow_word(u: &[Arrow]) -> String {
    u.iter().map(|a| a.glyph()).collect()
}

fn glyph(b: bool) -> char {
    particle(b).glyph()
}

/// `phi(A(x, u)) = B(phi(x), u)` at site 0 for all `x` on `{-2, -1, 0}` and
/// `u` on `{-1, 0}`: 32 cases.
pub fn verify_commutation() -> CaseReport {
    verify_commutation_with(&PackedKernels)
}

pub fn verify_commutation_with(k: &impl LocalDynamics) -> CaseReport {
    let mut report = CaseReport::new("commutation");
    for code in 0..8u8 {
        let x = [code & 4 != 0, code & 2 != 0, code & 1 != 0];
        for u in arrow_pairs() {
            let a_left = k.a([x[0], x[1]], u[0]);
            let a_center = k.a([x[1], x[2]], u[1]);
            let via_a = a_left == a_center;
            let y = [x[0] == x[1], x[1] == x[2]];
            let via_b = k.b(y, u);
            report.record(
                via_a == via_b,
                || format!("x={} u={}", bits_word(&x), arrow_word(&u)),
                glyph(via_b),
                glyph(via_a),
            );
        }
    }
    report
}

/// `B(y, u) <= C(y, u)` at the center for all 16 local cases.
pub fn verify_domination() -> CaseReport {
    verify_domination_with(&PackedKernels)
}

pub fn verify_domination_with(k: &impl LocalDynamics) -> CaseReport {
    let mut report = CaseReport::new("domination");
    for code in 0..4u8 {
        let y = [code & 2 != 0, code & 1 != 0];
        for u in arrow_pairs() {
            let (b, c) = (k.b(y, u), k.c(y, u));
            report.record(
                !b || c,
                || format!("y={} u={}", particle_word(&y), arrow_word(&u)),
                format!("B <= C (C={})", glyph(c)),
                format!("B={}", glyph(b)),
            );
        }
    }
    report
}

/// `z <= z'` implies `C(z, u) <= C(z', u)`: 9 ordered pairs times 4 arrow pairs.
pub fn verify_monotonicity() -> CaseReport {
    verify_monotonicity_with(&PackedKernels)
}

pub fn verify_monotonicity_with(k: &impl LocalDynamics) -> CaseReport {
    let mut report = CaseReport::new("monotonicity");
    let words: Vec<[bool; 2]> = (0..4u8).map(|c| [c & 2 != 0, c & 1 != 0]).collect();
    for lo in &words {
        for hi in &words {
            if !(0..2).all(|i| !lo[i] || hi[i]) {
                continue;
            }
            for u in arrow_pairs() {
                let (a, b) = (k.c(*lo, u), k.c(*hi, u));
                report.record(
                    !a || b,
                    || format!("{} <= {} u={}", particle_word(lo), particle_word(hi), arrow_word(&u)),
                    format!("C(lo) <= C(hi) (C(hi)={})", glyph(b)),
                    format!("C(lo)={}", glyph(a)),
                );
            }
        }
    }
    report
}

fn project_b(s: Symbol) -> bool {
    s == Symbol::Blue
}

fn project_c(s: Symbol) -> bool {
    s.is_occupied()
}

/// `pi_B(D(d, u)) = B(pi_B(d), u)` and `pi_C(D(d, u)) = C(pi_C(d), u)` for all
/// 36 local cases; a case passes when both hold.
pub fn verify_projection() -> CaseReport {
    verify_projection_with(&PackedKernels)
}

pub fn verify_projection_with(k: &impl LocalDynamics) -> CaseReport {
    let mut report = CaseReport::new("projection");
    let colors = Alphabet::Colored.symbols();
    for &l in colors {
        for &c in colors {
            let d = [l, c];
            for u in arrow_pairs() {
                let out = k.d(d, u);
                let b_side = k.b(d.map(project_b), u);
                let c_side = k.c(d.map(project_c), u);
                let ok = project_b(out) == b_side && project_c(out) == c_side;
                report.record(
                    ok,
                    || format!("d={}{} u={}", l.glyph(), c.glyph(), arrow_word(&u)),
                    format!("piB={} piC={}", glyph(b_side), glyph(c_side)),
                    format!("D={} piB={} piC={}", out.glyph(), glyph(project_b(out)), glyph(project_c(out))),
                );
            }
        }
    }
    report
}

/// Update rows tried when the width is too large to enumerate.
const ORBIT_SAMPLES: u64 = 4096;

type KernelFn<'a> = &'a (dyn Fn(&Configuration, &UpdateRow) -> Result<Configuration> + Sync);

/// On a cycle of even width, `(01)` steps to `(10)` and back for every arrow row.
/// Rows are enumerated exhaustively up to width 8 and sampled beyond.
pub fn verify_periodic_orbit(width: usize) -> Result<CaseReport> {
    verify_periodic_orbit_with(&|x, u| step(Model::A, x, u, Boundary::Cycle), width)
}

pub fn verify_periodic_orbit_with(kernel: KernelFn<'_>, width: usize) -> Result<CaseReport> {
    if width % 2 == 1 || width < 4 {
        return Err(Error::InvalidParameter(format!(
            "the alternating orbit needs an even cycle of width >= 4, got {width}"
        )));
    }
    let even = Configuration::from_planes(Alphabet::Binary, 0, BitPlane::from_fn(width, |j| j % 2 == 1), None)?;
    let odd = Configuration::from_planes(Alphabet::Binary, 0, BitPlane::from_fn(width, |j| j % 2 == 0), None)?;
    let rows: Vec<BitPlane> = if width <= 8 {
        (0..1u64 << width)
            .map(|bits| BitPlane::from_fn(width, |j| bits >> j & 1 == 1))
            .collect()
    } else {
        let s = UpdateStream::new(0x0b17, 0);
        (0..ORBIT_SAMPLES).map(|k| s.bits(Lane::Arrows, k, 0, width)).collect()
    };
    let mut report = CaseReport::new("periodic-orbit");
    for up in rows {
        let first = UpdateRow::new(0, up.clone());
        let second = UpdateRow::new(0, up.zip_with(&up, |a, _| !a));
        let once = kernel(&even, &first)?;
        let twice = kernel(&once, &second)?;
        let row_glyphs: String = first.arrows().iter().map(|a| a.glyph()).collect();
        report.record(
            once == odd && twice == even,
            || format!("u={row_glyphs}"),
            format!("{} -> {}", odd.to_glyphs(), even.to_glyphs()),
            format!("{} -> {}", once.to_glyphs(), twice.to_glyphs()),
        );
    }
    Ok(report)
}

/// Standard errors tolerated by the statistical suite.
const COLOR_SIGMAS: f64 = 4.0;
const COLOR_SITES: usize = 64;

/// Model D from full occupancy with i.i.d. fair colors: after `n` steps a
/// surviving particle is blue with probability 1/2, so the blue density is `d_n / 2`.
pub fn verify_color_uniformity(n: u64, trials: u64, seed: u64) -> Result<CaseReport> {
    verify_color_uniformity_with(&|x, u| step(Model::D, x, u, Boundary::Line), n, trials, seed)
}

pub fn verify_color_uniformity_with(kernel: KernelFn<'_>, n: u64, trials: u64, seed: u64) -> Result<CaseReport> {
    if trials < 2 {
        return Err(Error::InvalidParameter("color uniformity needs at least two trials".into()));
    }
    let width = n as usize + COLOR_SITES + 1;
    let counts: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let stream = UpdateStream::new(seed, t);
            let green = stream.bits(Lane::Init, 1, 0, width);
            let mut x = Configuration::from_planes(Alphabet::Colored, 0, BitPlane::ones(width), Some(green))?;
            for k in 0..n {
                let u = stream.row(k, x.offset(), x.len());
                x = kernel(&x, &u)?;
            }
            let window = x.restrict(x.offset(), COLOR_SITES)?;
            let occupied = window.particle_count();
            let green = window.color().map_or(0, BitPlane::count_ones);
            Ok(((occupied - green) as f64, occupied as f64))
        })
        .collect::<Result<_>>()?;

    let mut report = CaseReport::new("color-uniformity");

    let blue_total: f64 = counts.iter().map(|c| c.0).sum();
    let occ_total: f64 = counts.iter().map(|c| c.1).sum();
    let k = counts.len() as f64;
    let ratio = if occ_total > 0.0 { blue_total / occ_total } else { f64::NAN };
    let mean_occ = occ_total / k;
    let resid: f64 = counts.iter().map(|(b, o)| (b - ratio * o).powi(2)).sum();
    let ratio_se = (resid / (k * (k - 1.0))).sqrt() / mean_occ;
    report.record(
        (ratio - 0.5).abs() <= COLOR_SIGMAS * ratio_se,
        || format!("P(blue | occupied), n={n}, trials={trials}"),
        format!("0.5 ± {:.5}", COLOR_SIGMAS * ratio_se),
        format!("{ratio:.5}"),
    );

    let target = exact_density(n)?.to_f64() / 2.0;
    let blue: Vec<f64> = counts.iter().map(|c| c.0 / COLOR_SITES as f64).collect();
    let stats = BatchStats::from_batches(&blue);
    report.record(
        (stats.mean - target).abs() <= COLOR_SIGMAS * stats.std_err,
        || format!("blue density, n={n}, trials={trials}"),
        format!("{target:.5} ± {:.5}", COLOR_SIGMAS * stats.std_err),
        format!("{:.5}", stats.mean),
    );
    Ok(report)
}

/// Names accepted by [`run_suite`].
pub const EXHAUSTIVE_SUITES: [&str; 5] = ["commutation", "domination", "monotonicity", "projection", "periodic-orbit"];

/// Runs one suite by name. `periodic-orbit` uses width 8; `color-uniformity`
/// uses `n = 3`, 10^5 trials and seed 1.
pub fn run_suite(name: &str) -> Result<CaseReport> {
    match name {
        "commutation" => Ok(verify_commutation()),
        "domination" => Ok(verify_domination()),
        "monotonicity" => Ok(verify_monotonicity()),
        "projection" => Ok(verify_projection()),
        "periodic-orbit" => verify_periodic_orbit(8),
        "color-uniformity" => verify_color_uniformity(3, 100_000, 1),
        other => Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
    }
}

/// The five exhaustive suites.
pub fn run_all() -> Result<Vec<CaseReport>> {
    EXHAUSTIVE_SUITES.iter().map(|s| run_suite(s)).collect()
}
