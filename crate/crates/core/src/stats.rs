use crate::error::{Error, Result};

/// Sample mean (Neumaier-compensated) and standard error `s/√n`.
pub fn summarize(samples: &[f64]) -> Result<(f64, f64)> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples { required: 2, got: n });
    }
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let ss = compensated_sum(samples.iter().map(|x| (x - mean) * (x - mean)));
    let var = ss / (n - 1) as f64;
    Ok((mean, (var / n as f64).sqrt()))
}

pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_cases() {
        assert_eq!(summarize(&[1.0, 1.0, 1.0, 1.0]).unwrap(), (1.0, 0.0));
        let (m, se) = summarize(&[0.0, 2.0]).unwrap();
        assert_eq!(m, 1.0);
        assert!((se - 1.0).abs() < 1e-15);
        assert!(summarize(&[3.0]).is_err());
    }

    #[test]
    fn compensation_recovers_lost_bits() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }

    proptest! {
        #[test]
        fn permutation_invariance(mut xs in prop::collection::vec(-1e3f64..1e3, 2..200), seed in any::<u64>()) {
            let (m1, s1) = summarize(&xs).unwrap();
            // deterministic shuffle
            let mut state = seed | 1;
            for i in (1..xs.len()).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                xs.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let (m2, s2) = summarize(&xs).unwrap();
            prop_assert!((m1 - m2).abs() <= 1e-15 * m1.abs().max(1.0));
            prop_assert!((s1 - s2).abs() <= 1e-13 * s1.abs().max(1e-300));
        }
    }
}
