use packetlab::experiments::{
    two_laser_intensity, two_slit_intensity, TwoLaserConfig, TwoSlitConfig,
};
use packetlab::sampler::{
    accumulate, goodness_of_fit, parallel_histogram, sample_positions, SeededStream,
};

#[test]
fn sampled_arrivals_follow_the_pattern() {
    let i = two_slit_intensity(&TwoSlitConfig::new(633e-9, 0.25e-3, 40e-6, 1.0)).unwrap();
    let x = sample_positions(&i, 300_000, SeededStream::new(11, 0));
    let h = accumulate(&x, 128, (i.lower(), i.upper())).unwrap();
    let fit = goodness_of_fit(&h, &i).unwrap();
    assert!(fit.chi_square_per_dof < 1.6, "{fit:?}");
}

#[test]
fn one_stream_matches_direct_sampling() {
    let i = two_laser_intensity(&TwoLaserConfig::new(633e-9, 0.25e-3, 1.0, 0.3)).unwrap();
    let range = (i.lower(), i.upper());
    let direct = accumulate(
        &sample_positions(&i, 10_000, SeededStream::new(4, 0)),
        50,
        range,
    )
    .unwrap();
    let split = parallel_histogram(&i, 10_000, 1, 50, range, 4).unwrap();
    assert_eq!(direct, split);
}

#[test]
fn wrong_slit_count_is_detected() {
    let cfg = TwoSlitConfig::new(633e-9, 0.25e-3, 40e-6, 1.0);
    let both = two_slit_intensity(&cfg).unwrap();
    let one = two_slit_intensity(&TwoSlitConfig {
        open_a: false,
        ..cfg
    })
    .unwrap();
    let h = parallel_histogram(&one, 200_000, 4, 128, (both.lower(), both.upper()), 8).unwrap();
    assert!(goodness_of_fit(&h, &both).unwrap().chi_square_per_dof > 10.0);
}
