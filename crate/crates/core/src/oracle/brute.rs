use super::OracleError;
use crate::assignment::ScoreMatrix;

pub const MAX_BRUTE_FORCE: usize = 7;

/// Maximum total score over all one-to-one pairings, by enumerating every
/// injective map from the smaller side into the larger one.
pub fn brute_force_assignment(m: &ScoreMatrix) -> Result<f64, OracleError> {
    let transpose = m.rows() > m.cols();
    let (small, large) = if transpose {
        (m.cols(), m.rows())
    } else {
        (m.rows(), m.cols())
    };
    if small > MAX_BRUTE_FORCE {
        return Err(OracleError::TooLarge {
            max: MAX_BRUTE_FORCE,
            got: small,
        });
    }
    let cell = |s: usize, l: usize| if transpose { m.get(l, s) } else { m.get(s, l) };

    fn go(
        k: usize,
        small: usize,
        large: usize,
        used: &mut [bool],
        acc: f64,
        best: &mut f64,
        cell: &dyn Fn(usize, usize) -> f64,
    ) {
        if k == small {
            if acc > *best {
                *best = acc;
            }
            return;
        }
        for l in 0..large {
            if !used[l] {
                used[l] = true;
                go(k + 1, small, large, used, acc + cell(k, l), best, cell);
                used[l] = false;
            }
        }
    }

    if small == 0 {
        return Ok(0.0);
    }
    let mut best = f64::NEG_INFINITY;
    let mut used = vec![false; large];
    go(0, small, large, &mut used, 0.0, &mut best, &cell);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let one = ScoreMatrix::from_rows(&[vec![0.3]]).unwrap();
        assert_eq!(brute_force_assignment(&one).unwrap(), 0.3);
        let mut eye = ScoreMatrix::zeros(4, 4);
        for i in 0..4 {
            eye.set(i, i, 1.0).unwrap();
        }
        assert_eq!(brute_force_assignment(&eye).unwrap(), 4.0);
        assert_eq!(brute_force_assignment(&ScoreMatrix::zeros(0, 3)).unwrap(), 0.0);
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(brute_force_assignment(&ScoreMatrix::zeros(8, 9)).is_err());
        assert!(brute_force_assignment(&ScoreMatrix::zeros(7, 9)).is_ok());
    }
}
