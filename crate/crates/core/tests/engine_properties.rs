use threehalves::engine::{price_call_cond_mc, price_call_qmc, step_exact, PseudoRandomPoints};
use threehalves::rng::stream;
use threehalves::stats::summarize;
use threehalves::{CallContract, ModelParams, SimSettings};

#[test]
fn discounted_stock_is_a_martingale_across_parameter_sets() {
    let base = ModelParams::reference();
    let s = SimSettings::default();
    for (i, p) in [base, ModelParams { rho: 0.0, ..base }, ModelParams { epsilon: 0.4, ..base }]
        .into_iter()
        .enumerate()
    {
        let disc: Vec<f64> = (0..100_000u64)
            .map(|k| {
                let st = step_exact(&p, &s, p.s0, p.x0(), 1.0, &mut stream(100 + i as u64, k)).unwrap();
                (st.log_s_terminal - p.r).exp()
            })
            .collect();
        let (m, se) = summarize(&disc).unwrap();
        assert!((m - p.s0).abs() <= 4.0 * se, "set {i}: {m} ± {se}");
    }
}

#[test]
fn qmc_beats_pseudo_random_conditioning() {
    let p = ModelParams::reference();
    let c = CallContract::new(1.0, 1.0).unwrap();
    let s = SimSettings::default();
    let qmc = price_call_qmc(&p, &c, 8, 30, 5, &s).unwrap();
    let pseudo = price_call_cond_mc(&p, &c, &PseudoRandomPoints { n: qmc.n_trials, seed: 5 }, &s).unwrap();
    assert!(qmc.std_error * 5.0 <= pseudo.std_error, "{qmc:?} vs {pseudo:?}");
    assert!(qmc.discrepancy(&pseudo) < 3.0);
}
