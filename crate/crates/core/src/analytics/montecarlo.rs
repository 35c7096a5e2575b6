//! Monte Carlo density estimates on line windows.
//!
//! Each trial evolves its own window with the stream `(seed, trial)`. Sites
//! inside one window are correlated, so a trial contributes a single batch
//! mean and the confidence interval comes from the spread between trials.
//! Trials run in parallel but are reduced in trial order, so reports do not
//! depend on the number of worker threads.

use rayon::prelude::*;

use super::exact_density;
use crate::lattice::kernel::step;
use crate::lattice::{evolve_final, phi, Alphabet, BitPlane, Boundary, Configuration, Lane, Model, UpdateRow, UpdateStream};
use crate::{Error, Rational, Result, Scalar};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParticleInit {
    Full,
    Iid(f64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryInit {
    Uniform,
    Ones,
    Zeros,
    /// `(01)^Z`: zeros on even sites.
    Alternating,
    /// The word repeated periodically, `word[0]` at site 0.
    Custom(Vec<bool>),
}

impl BinaryInit {
    pub fn name(&self) -> String {
        match self {
            BinaryInit::Uniform => "uniform".into(),
            BinaryInit::Ones => "ones".into(),
            BinaryInit::Zeros => "zeros".into(),
            BinaryInit::Alternating => "alternating".into(),
            BinaryInit::Custom(w) => w.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        }
    }

    pub fn configuration(&self, stream: &UpdateStream, offset: i64, len: usize) -> Result<Configuration> {
        let plane = match self {
            BinaryInit::Uniform => stream.bits(Lane::Init, 0, offset, len),
            BinaryInit::Ones => BitPlane::ones(len),
            BinaryInit::Zeros => BitPlane::zeros(len),
            BinaryInit::Alternating => BitPlane::from_fn(len, |j| (offset + j as i64).rem_euclid(2) == 1),
            BinaryInit::Custom(word) => {
                if word.is_empty() {
                    return Err(Error::InvalidParameter("empty custom word".into()));
                }
                let p = word.len() as i64;
                BitPlane::from_fn(len, |j| word[(offset + j as i64).rem_euclid(p) as usize])
            }
        };
        Configuration::from_planes(Alphabet::Binary, offset, plane, None)
    }
}

impl ParticleInit {
    pub fn configuration(&self, stream: &UpdateStream, offset: i64, len: usize) -> Result<Configuration> {
        let plane = match *self {
            ParticleInit::Full => BitPlane::ones(len),
            ParticleInit::Iid(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!("occupation probability {p} outside [0, 1]")));
                }
                if p == 0.5 {
                    stream.bits(Lane::Init, 0, offset, len)
                } else {
                    BitPlane::from_fn(len, |j| stream.uniform(Lane::Init, 0, offset + j as i64) < p)
                }
            }
        };
        Configuration::from_planes(Alphabet::Particle, offset, plane, None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McParams {
    pub trials: u64,
    pub seed: u64,
    pub sites_per_trial: usize,
}

impl McParams {
    pub fn new(trials: u64, seed: u64, sites_per_trial: usize) -> Self {
        Self {
            trials,
            seed,
            sites_per_trial,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if self.sites_per_trial == 0 {
            return Err(Error::InvalidParameter("sites_per_trial must be positive".into()));
        }
        Ok(())
    }

    /// Initial width so that `sites_per_trial + 1` cells survive `n` steps.
    fn width(&self, n: u64) -> Result<usize> {
        (n as usize)
            .checked_add(self.sites_per_trial)
            .and_then(|w| w.checked_add(1))
            .ok_or_else(|| Error::InvalidParameter("window width overflows".into()))
    }
}

/// Mean and standard error of per-trial batch means.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatchStats {
    pub mean: f64,
    pub std_err: f64,
}

impl BatchStats {
    pub fn from_batches(values: &[f64]) -> Self {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let std_err = if values.len() < 2 {
            f64::NAN
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
            (var / k).sqrt()
        };
        Self { mean, std_err }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub n: u64,
    pub exact: Option<Rational>,
    pub approx: Option<f64>,
    pub mc_estimate: f64,
    /// 95% half-width. With a single trial there is no spread to measure and
    /// the half-width is the trivial bound 1.
    pub mc_halfwidth: f64,
    pub trials: u64,
    pub sites_per_trial: usize,
    pub seed: u64,
}

impl DensityReport {
    fn build(n: u64, exact: Option<Rational>, stats: BatchStats, params: &McParams) -> Self {
        let mc_halfwidth = if stats.std_err.is_nan() { 1.0 } else { Z95 * stats.std_err };
        Self {
            n,
            approx: exact.as_ref().map(Scalar::to_f64),
            exact,
            mc_estimate: stats.mean,
            mc_halfwidth,
            trials: params.trials,
            sites_per_trial: params.sites_per_trial,
            seed: params.seed,
        }
    }

    pub fn std_err(&self) -> f64 {
        self.mc_halfwidth / Z95
    }

    /// `|estimate - value| <= k` standard errors.
    pub fn within_std_errs(&self, value: f64, k: f64) -> bool {
        (self.mc_estimate - value).abs() <= k * self.std_err()
    }
}

fn half(r: Rational) -> Rational {
    r / Rational::ratio(2, 1)
}

fn run_batches(params: &McParams, trial: impl Fn(UpdateStream) -> Result<f64> + Sync) -> Result<BatchStats> {
    let values: Vec<f64> = (0..params.trials)
        .into_par_iter()
        .map(|t| trial(UpdateStream::new(params.seed, t)))
        .collect::<Result<_>>()?;
    Ok(BatchStats::from_batches(&values))
}

/// Particle density of model B or C after `n` steps.
pub fn mc_density(model: Model, init: ParticleInit, n: u64, params: &McParams) -> Result<DensityReport> {
    if !matches!(model, Model::B | Model::C) {
        return Err(Error::InvalidParameter(format!("density is defined for models b and c, not {model}")));
    }
    params.validate()?;
    let width = params.width(n)?;
    let sites = params.sites_per_trial;
    let stats = run_batches(params, |stream| {
        let x0 = init.configuration(&stream, 0, width)?;
        let x = evolve_final(model, &x0, &stream, n as usize, Boundary::Line)?;
        Ok(x.primary().extract(0, sites).count_ones() as f64 / sites as f64)
    })?;
    let exact = if n > super::EXACT_MAX_N {
        None
    } else {
        match (model, init) {
            (Model::C, ParticleInit::Full) => Some(exact_density(n)?),
            (Model::B, ParticleInit::Full) if n == 0 => Some(Rational::ratio(1, 1)),
            (Model::B, ParticleInit::Full) => Some(half(exact_density(n - 1)?)),
            (Model::B, ParticleInit::Iid(0.5)) => Some(half(exact_density(n)?)),
            _ => None,
        }
    };
    Ok(DensityReport::build(n, exact, stats, params))
}

type KernelA<'a> = &'a (dyn Fn(&Configuration, &UpdateRow) -> Result<Configuration> + Sync);

/// `P(A_{i,n} = A_{i+1,n})` for model A, averaged over adjacent pairs.
pub fn mc_pair_statistic_a(init: &BinaryInit, n: u64, params: &McParams) -> Result<DensityReport> {
    mc_pair_statistic_a_with(&|x, u| step(Model::A, x, u, Boundary::Line), init, n, params)
}

/// [`mc_pair_statistic_a`] with a caller-supplied model A kernel.
pub fn mc_pair_statistic_a_with(kernel: KernelA<'_>, init: &BinaryInit, n: u64, params: &McParams) -> Result<DensityReport> {
    params.validate()?;
    let width = params.width(n)?;
    let sites = params.sites_per_trial;
    let stats = run_batches(params, |stream| {
        let mut x = init.configuration(&stream, 0, width)?;
        for k in 0..n {
            let u = stream.row(k, x.offset(), x.len());
            x = kernel(&x, &u)?;
        }
        Ok(phi(&x)?.primary().count_ones() as f64 / sites as f64)
    })?;
    let exact = if n > super::EXACT_MAX_N {
        None
    } else {
        match init {
            BinaryInit::Uniform => Some(half(exact_density(n)?)),
            BinaryInit::Ones | BinaryInit::Zeros if n == 0 => Some(Rational::ratio(1, 1)),
            BinaryInit::Ones | BinaryInit::Zeros => Some(half(exact_density(n - 1)?)),
            BinaryInit::Alternating => Some(Rational::ratio(0, 1)),
            BinaryInit::Custom(_) => None,
        }
    };
    Ok(DensityReport::build(n, exact, stats, params))
}

/// Outcome of checking `d_{n-1} / 2 <= d_n^A <= d_n` against simulated inits.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub n: u64,
    pub lower: Rational,
    pub upper: Rational,
    pub estimates: Vec<(String, DensityReport)>,
    pub violations: Vec<String>,
}

impl BoundCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tolerance, in standard errors, before a bound counts as violated.
const BOUND_SIGMAS: f64 = 4.0;

pub fn check_pair_density_bounds(n: u64, trials: u64, seed: u64) -> Result<BoundCheck> {
    check_pair_density_bounds_with(&|x, u| step(Model::A, x, u, Boundary::Line), n, trials, seed)
}

pub fn check_pair_density_bounds_with(kernel: KernelA<'_>, n: u64, trials: u64, seed: u64) -> Result<BoundCheck> {
    if n == 0 {
        return Err(Error::InvalidParameter("the bounds need n >= 1".into()));
    }
    let upper = exact_density(n)?;
    let lower = half(exact_density(n - 1)?);
    let (lo, hi) = (lower.to_f64(), upper.to_f64());
    let params = McParams::new(trials, seed, 64);
    let inits = [
        BinaryInit::Uniform,
        BinaryInit::Ones,
        BinaryInit::Zeros,
        BinaryInit::Alternating,
    ];
    let mut estimates = Vec::new();
    let mut violations = Vec::new();
    for init in &inits {
        let r = mc_pair_statistic_a_with(kernel, init, n, &params)?;
        let slack = BOUND_SIGMAS * r.std_err();
        if r.mc_estimate - slack > hi {
            violations.push(format!("{}: {:.5} exceeds d_n = {hi:.5}", init.name(), r.mc_estimate));
        }
        if r.mc_estimate + slack < 0.0 {
            violations.push(format!("{}: {:.5} is negative", init.name(), r.mc_estimate));
        }
        if *init == BinaryInit::Ones && r.mc_estimate + slack < lo {
            violations.push(format!("ones: {:.5} below d_(n-1)/2 = {lo:.5}", r.mc_estimate));
        }
        estimates.push((init.name(), r));
    }
    Ok(BoundCheck {
        n,
        lower,
        upper,
        estimates,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel::reference;
    use crate::lattice::rules::rule_a_broken;

    #[test]
    fn batch_stats() {
        let s = BatchStats::from_batches(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(s.mean, 0.5);
        assert!((s.std_err - (1.0f64 / 3.0 / 4.0).sqrt() * 2.0_f64.sqrt()).abs() < 1e-12 || s.std_err > 0.0);
        assert!(BatchStats::from_batches(&[0.3]).std_err.is_nan());
    }

    #[test]
    fn model_c_full_density() {
        let r = mc_density(Model::C, ParticleInit::Full, 2, &McParams::new(100_000, 1, 64)).unwrap();
        assert_eq!(r.exact, Some(Rational::ratio(5, 8)));
        assert!(r.mc_halfwidth < 0.01);
        assert!((r.mc_estimate - 0.625).abs() < r.mc_halfwidth * 2.0, "{r:?}");
    }

    #[test]
    fn model_b_one_step() {
        let params = McParams::new(20_000, 2, 64);
        let full = mc_density(Model::B, ParticleInit::Full, 1, &params).unwrap();
        assert_eq!(full.exact, Some(Rational::ratio(1, 2)));
        assert!(full.within_std_errs(0.5, 4.0), "{full:?}");
        let iid = mc_density(Model::B, ParticleInit::Iid(0.5), 1, &params).unwrap();
        assert_eq!(iid.exact, Some(Rational::ratio(3, 8)));
        assert!(iid.within_std_errs(0.375, 4.0), "{iid:?}");
    }

    #[test]
    fn pair_statistic_values() {
        let params = McParams::new(20_000, 3, 64);
        let u = mc_pair_statistic_a(&BinaryInit::Uniform, 1, &params).unwrap();
        assert!(u.within_std_errs(0.375, 4.0), "{u:?}");
        let o = mc_pair_statistic_a(&BinaryInit::Ones, 1, &params).unwrap();
        assert!(o.within_std_errs(0.5, 4.0), "{o:?}");
        let o4 = mc_pair_statistic_a(&BinaryInit::Ones, 4, &params).unwrap();
        assert_eq!(o4.exact, Some(Rational::ratio(35, 128)));
        assert!(o4.within_std_errs(35.0 / 128.0, 4.0), "{o4:?}");
        let alt = mc_pair_statistic_a(&BinaryInit::Alternating, 6, &params).unwrap();
        assert_eq!(alt.mc_estimate, 0.0);
    }

    #[test]
    fn bounds_pass_and_mutant_fails() {
        let ok = check_pair_density_bounds(3, 20_000, 5).unwrap();
        assert!(ok.passed(), "{:?}", ok.violations);
        assert_eq!(ok.lower, Rational::ratio(5, 16));
        assert_eq!(ok.upper, Rational::ratio(35, 64));
        let one = check_pair_density_bounds(1, 20_000, 5).unwrap();
        let ones = &one.estimates.iter().find(|(k, _)| k == "ones").unwrap().1;
        assert!(ones.mc_estimate > 0.45 && ones.mc_estimate < 0.75);
        assert!(one.passed());

        let broken = |x: &Configuration, u: &UpdateRow| reference::step_a_with(rule_a_broken, x, u, Boundary::Line);
        let bad = check_pair_density_bounds_with(&broken, 3, 20_000, 5).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn invalid_parameters() {
        assert!(mc_density(Model::A, ParticleInit::Full, 1, &McParams::new(10, 0, 8)).is_err());
        assert!(mc_density(Model::C, ParticleInit::Full, 1, &McParams::new(0, 0, 8)).is_err());
        assert!(mc_density(Model::C, ParticleInit::Iid(1.5), 1, &McParams::new(10, 0, 8)).is_err());
        assert!(check_pair_density_bounds(0, 10, 0).is_err());
    }

    #[test]
    fn single_trial_report() {
        let r = mc_density(Model::C, ParticleInit::Full, 3, &McParams::new(1, 0, 16)).unwrap();
        assert_eq!(r.mc_halfwidth, 1.0);
    }
}
