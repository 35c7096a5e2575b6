use pcasim::analytics::{exact_density, mc_density, McParams, ParticleInit};
use pcasim::cylinder::{evolve_measure, lift_model, lifted_occupancy, CylinderMeasure, LiftedModel};
use pcasim::lattice::{Arrow, Lane, UpdateStream};
use pcasim::{Rational, Scalar};

fn lifted_density(which: LiftedModel, n: u64, law: [Rational; 4]) -> Rational {
    let f = lift_model::<Rational>(which);
    let mut mu = CylinderMeasure::iid(0, n as usize + 1, &law).unwrap();
    for _ in 0..n {
        mu = evolve_measure(&mu, &f).unwrap();
    }
    mu.probability(|w| lifted_occupancy(w[0]))
}

#[test]
fn monte_carlo_matches_cylinder_evolution() {
    let q = |n, d| Rational::ratio(n, d);
    let full = [q(0, 1), q(0, 1), q(1, 2), q(1, 2)];
    let fair = [q(1, 4), q(1, 4), q(1, 4), q(1, 4)];
    for n in 0..=4 {
        let params = McParams::new(4_000, 40 + n, 64);
        let c = lifted_density(LiftedModel::C, n, full.clone());
        assert_eq!(c, exact_density(n).unwrap());
        let mc = mc_density(pcasim::lattice::Model::C, ParticleInit::Full, n, &params).unwrap();
        assert!(mc.within_std_errs(c.to_f64(), 4.0), "C n={n}: {} vs {c}", mc.mc_estimate);

        let b = lifted_density(LiftedModel::B, n, fair.clone());
        let mc = mc_density(pcasim::lattice::Model::B, ParticleInit::Iid(0.5), n, &params).unwrap();
        assert!(mc.within_std_errs(b.to_f64(), 4.0), "B n={n}: {} vs {b}", mc.mc_estimate);
    }
}

#[test]
fn confidence_intervals_cover_at_the_nominal_rate() {
    let n = 3;
    let d = exact_density(n).unwrap().to_f64();
    let covered = (0..100)
        .filter(|&seed| {
            let r = mc_density(pcasim::lattice::Model::C, ParticleInit::Full, n, &McParams::new(200, seed, 64)).unwrap();
            (r.mc_estimate - d).abs() <= r.mc_halfwidth
        })
        .count();
    // Binomial(100, 0.95): P(X < 88) is below 1e-3.
    assert!(covered >= 88, "covered {covered}/100");
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_density(pcasim::lattice::Model::B, ParticleInit::Iid(0.3), 7, &McParams::new(3_000, 5, 64)).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn arrow_field_is_fair_and_uncorrelated() {
    let s = UpdateStream::new(77, 2);
    let (steps, sites) = (1_000u64, 1_000i64);
    let mut up = 0u64;
    let mut same_site_next = 0u64;
    let mut same_step_next = 0u64;
    for t in 0..steps {
        for i in 0..sites {
            let a = s.arrow_at(t, i) == Arrow::Up;
            up += a as u64;
            same_step_next += (a == (s.arrow_at(t, i + 1) == Arrow::Up)) as u64;
            same_site_next += (a == (s.arrow_at(t + 1, i) == Arrow::Up)) as u64;
        }
    }
    let total = (steps * sites as u64) as f64;
    // five standard deviations of a fair coin over 10^6 draws
    let tol = 5.0 * 0.5 / total.sqrt();
    for (name, k) in [("up", up), ("spatial agreement", same_step_next), ("temporal agreement", same_site_next)] {
        let f = k as f64 / total;
        assert!((f - 0.5).abs() < tol, "{name}: {f}");
    }
    let lanes = (0..1_000_000i64).filter(|&i| s.bit(Lane::Init, 0, i) == s.bit(Lane::Arrows, 0, i)).count();
    assert!((lanes as f64 / 1e6 - 0.5).abs() < tol);
}
