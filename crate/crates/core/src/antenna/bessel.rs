//! Bessel function of the first kind, order one.

/// Below this magnitude the power series is summed directly; the largest
/// term stays under ~1e2 so cancellation costs less than 1e-13.
const SERIES_LIMIT: f64 = 8.0;

const RESCALE_THRESHOLD: f64 = 1e200;

/// `J1(x)` for real `x`, accurate to about 1e-14 absolute on `|x| <= 50`.
///
/// Small arguments use the Maclaurin series. Larger ones use Miller's
/// backward recurrence normalized with `J0 + 2 * sum J_2k = 1`.
pub fn bessel_j1(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return if x.is_nan() { f64::NAN } else { 0.0 };
    }
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        series(ax)
    } else {
        miller(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
        k += 1.0;
    }
}

fn miller(x: f64) -> f64 {
    let start = x + 40.0 + (40.0 * x).sqrt();
    let mut n = (start as usize) & !1;
    let two_over_x = 2.0 / x;

    let mut j_next = 0.0; // J_{n+1}
    let mut j_curr = 1e-300; // J_n
    let mut even_sum = 0.0; // sum of J_2k for k >= 1
    let mut j1 = 0.0;
    while n > 0 {
        let j_prev = n as f64 * two_over_x * j_curr - j_next;
        j_next = j_curr;
        j_curr = j_prev;
        n -= 1;
        if n == 1 {
            j1 = j_curr;
        }
        if n.is_multiple_of(2) && n > 0 {
            even_sum += j_curr;
        }
        if j_curr.abs() > RESCALE_THRESHOLD {
            j_curr /= RESCALE_THRESHOLD;
            j_next /= RESCALE_THRESHOLD;
            even_sum /= RESCALE_THRESHOLD;
            j1 /= RESCALE_THRESHOLD;
        }
    }
    // j_curr now holds J_0.
    j1 / (j_curr + 2.0 * even_sum)
}
