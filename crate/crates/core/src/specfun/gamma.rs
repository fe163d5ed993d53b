#![allow(clippy::excessive_precision)]

use std::f64::consts::{E, PI};

use crate::error::{domain, Result};

const LN_PI: f64 = 1.144_729_885_849_400_174_14;
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_222_34;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

// Lanczos approximation, Pugh's r = 10.900511 coefficient set.
const LANCZOS_R: f64 = 10.900511;
const LANCZOS_D: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_057_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];

// ζ(k) for k = 2..=25, used by the Taylor series of ln Γ(1 + ε).
const ZETA: [f64; 24] = [
    1.644_934_066_848_226_436_5,
    1.202_056_903_159_594_285_4,
    1.082_323_233_711_138_191_5,
    1.036_927_755_143_369_926_3,
    1.017_343_061_984_449_139_7,
    1.008_349_277_381_922_826_8,
    1.004_077_356_197_944_339_4,
    1.002_008_392_826_082_214_4,
    1.000_994_575_127_818_085_3,
    1.000_494_188_604_119_464_6,
    1.000_246_086_553_308_048_3,
    1.000_122_713_347_578_489_1,
    1.000_061_248_135_058_704_8,
    1.000_030_588_236_307_020_5,
    1.000_015_282_259_408_651_9,
    1.000_007_637_197_637_899_8,
    1.000_003_817_293_264_999_8,
    1.000_001_908_212_716_553_9,
    1.000_000_953_962_033_872_8,
    1.000_000_476_932_986_787_8,
    1.000_000_238_450_502_727_7,
    1.000_000_119_219_925_965_3,
    1.000_000_059_608_189_051_3,
    1.000_000_029_803_503_514_7,
];

/// Taylor coefficients of 1/Γ(1 + x) about x = 0.
pub(crate) const RGAMMA1P: [f64; 29] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
];

/// ln Γ(1 + ε) for small |ε| from its Taylor series.
fn ln_gamma_1p_small(eps: f64) -> f64 {
    let mut sum = -EULER_GAMMA * eps;
    let mut pow = -eps;
    for (i, z) in ZETA.iter().enumerate() {
        pow *= -eps;
        sum += z * pow / (i + 2) as f64;
    }
    sum
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_D
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_D[0], |s, (i, d)| s + d / (i as f64 - x));
        LN_PI
            - (PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / E).ln()
    } else {
        let s = LANCZOS_D
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_D[0], |s, (i, d)| s + d / (x + i as f64 - 1.0));
        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / E).ln()
    }
}

/// ln Γ(x) for x > 0.
///
/// Near the zeros at x = 1 and x = 2 a Taylor series keeps full relative
/// accuracy; elsewhere a 16-digit Lanczos sum is used.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(
            "log_gamma",
            format!("x = {x} must be positive and finite"),
        ));
    }
    Ok(ln_gamma_unchecked(x))
}

/// [`log_gamma`] without the argument check, for internal callers whose
/// arguments are positive by construction.
pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        0.0
    } else if (x - 1.0).abs() < 0.2 {
        ln_gamma_1p_small(x - 1.0)
    } else if (x - 2.0).abs() < 0.2 {
        let eps = x - 2.0;
        eps.ln_1p() + ln_gamma_1p_small(eps)
    } else {
        lanczos_ln_gamma(x)
    }
}

/// 1/Γ(1 + x) for |x| <= 1/2 from its Taylor series.
pub(crate) fn rgamma_1p(x: f64) -> f64 {
    RGAMMA1P.iter().rev().fold(0.0, |acc, c| acc * x + c)
}
