//! Small derivative-free optimizers used by the subspace and center searches.

/// Golden-section minimization on `[a, b]`. The objective need only be
/// unimodal near the minimum; we run a fixed contraction to width `tol` and
/// return the best point ever evaluated (plateaus make the final interval
/// drift, so the midpoint alone is not reliable).
pub fn golden_section_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut best = (a, f(a));
    let mut track = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx < best.1 {
            *best = (x, fx);
        }
    };
    let fb = f(b);
    track(b, fb, &mut best);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    track(c, fc, &mut best);
    track(d, fd, &mut best);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
            track(c, fc, &mut best);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
            track(d, fd, &mut best);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    track(x, fx, &mut best);
    best
}

pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, fneg) = golden_section_min(|t| -f(t), a, b, tol);
    (x, -fneg)
}

/// Nelder-Mead minimization in 1-3 dimensions with standard coefficients.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        let v = f(&p);
        simplex.push((p, v));
    }
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size: f64 = (0..n)
            .map(|i| (simplex[n].0[i] - simplex[0].0[i]).abs())
            .fold(0.0, f64::max);
        if spread.abs() <= tol && size <= tol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(p, _)| p[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> =
            (0..n).map(|i| centroid[i] + (centroid[i] - worst.0[i])).collect();
        let fr = f(&reflect);
        if fr < simplex[0].1 {
            let expand: Vec<f64> =
                (0..n).map(|i| centroid[i] + 2.0 * (centroid[i] - worst.0[i])).collect();
            let fe = f(&expand);
            simplex[n] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflect, fr);
        } else {
            let contract: Vec<f64> =
                (0..n).map(|i| centroid[i] + 0.5 * (worst.0[i] - centroid[i])).collect();
            let fc = f(&contract);
            if fc < worst.1 {
                simplex[n] = (contract, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> =
                        (0..n).map(|i| best[i] + 0.5 * (entry.0[i] - best[i])).collect();
                    let fv = f(&shrunk);
                    *entry = (shrunk, fv);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0).into()
}

/// Roughly equal-area directions on the upper hemisphere (Fibonacci spiral).
/// Enough for sign-symmetric subspace searches.
pub fn fibonacci_hemisphere(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = (i as f64 + 0.5) / count as f64; // (0, 1]
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn golden_finds_parabola_min() {
        let (x, v) = golden_section_min(|t| (t - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        // Value comparisons bottom out at sqrt(machine eps) in x.
        assert_relative_eq!(x, 0.3, epsilon = 1e-7);
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let (x, v) = nelder_mead(
            |p| (p[0] - 1.0).powi(2) + 2.0 * (p[1] + 0.5).powi(2),
            &[0.0, 0.0],
            0.5,
            1e-12,
            500,
        );
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-5);
        assert_relative_eq!(x[1], -0.5, epsilon = 1e-5);
        assert!(v < 1e-9);
    }

    #[test]
    fn hemisphere_is_unit_and_upper() {
        for d in fibonacci_hemisphere(500) {
            let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            assert_relative_eq!(n, 1.0, epsilon = 1e-12);
            assert!(d[2] > 0.0);
        }
    }
}
