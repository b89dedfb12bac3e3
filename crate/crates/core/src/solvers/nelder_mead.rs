//! Derivative-free simplex minimizer (Nelder-Mead) with the classic
//! coefficients: reflect 1, expand 2, contract 0.5, shrink 0.5.
//!
//! Everything is deterministic: the simplex is seeded from the start point
//! plus one axis step per coordinate, and sorting is stable so ties cannot
//! reorder vertices between runs.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Offset added to each coordinate to form the initial simplex.
    pub init_step: f64,
    /// Stop once the simplex f-spread drops below this.
    pub ftol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iters: 500,
            init_step: 0.5,
            ftol: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub evaluations: u64,
    /// Best objective value after each iteration.
    pub trace: Vec<f64>,
}

pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let mut evaluations = 0u64;
    let mut eval = |x: &[f64], evals: &mut u64| {
        *evals += 1;
        f(x)
    };

    if dim == 0 {
        let fx = eval(x0, &mut evaluations);
        return NelderMeadResult {
            x: Vec::new(),
            fx,
            iterations: 0,
            evaluations,
            trace: vec![fx],
        };
    }

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evaluations)));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.init_step;
        let fv = eval(&v, &mut evaluations);
        simplex.push((v, fv));
    }

    let mut trace = Vec::with_capacity(opts.max_iters);
    let mut iterations = 0;
    for _ in 0..opts.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[dim].1 - simplex[0].1 <= opts.ftol {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let worst = simplex[dim].clone();
        let lerp = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = lerp(1.0);
        let f_r = eval(&reflected, &mut evaluations);
        if f_r < simplex[0].1 {
            let expanded = lerp(2.0);
            let f_e = eval(&expanded, &mut evaluations);
            simplex[dim] = if f_e < f_r {
                (expanded, f_e)
            } else {
                (reflected, f_r)
            };
        } else if f_r < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_r);
        } else {
            let (contracted, f_c) = if f_r < worst.1 {
                let v = lerp(0.5);
                let fv = eval(&v, &mut evaluations);
                (v, fv)
            } else {
                let v = lerp(-0.5);
                let fv = eval(&v, &mut evaluations);
                (v, fv)
            };
            if f_c < f_r.min(worst.1) {
                simplex[dim] = (contracted, f_c);
            } else {
                let best = simplex[0].0.clone();
                for (v, fv) in &mut simplex[1..] {
                    for (x, b) in v.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    *fv = eval(v, &mut evaluations);
                }
            }
        }
        let best_now = simplex
            .iter()
            .map(|(_, fv)| *fv)
            .fold(f64::INFINITY, f64::min);
        trace.push(best_now);
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    NelderMeadResult {
        x,
        fx,
        iterations,
        evaluations,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowl(x: &[f64]) -> f64 {
        (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2)
    }

    #[test]
    fn minimizes_a_shifted_quadratic() {
        let r = nelder_mead(bowl, &[0.0, 0.0], &NelderMeadOptions::default());
        assert!((r.x[0] - 1.0).abs() < 1e-5);
        assert!((r.x[1] + 2.0).abs() < 1e-5);
        assert!(r.fx < 1e-9);
    }

    #[test]
    fn repeated_runs_are_bitwise_identical() {
        let opts = NelderMeadOptions::default();
        let a = nelder_mead(bowl, &[3.0, -1.0], &opts);
        let b = nelder_mead(bowl, &[3.0, -1.0], &opts);
        assert_eq!(a.x, b.x);
        assert_eq!(a.fx, b.fx);
        assert_eq!(a.evaluations, b.evaluations);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn trace_is_monotone_nonincreasing() {
        let r = nelder_mead(bowl, &[5.0, 5.0], &NelderMeadOptions::default());
        assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn zero_dimensions_evaluates_once() {
        let r = nelder_mead(|_| 42.0, &[], &NelderMeadOptions::default());
        assert_eq!(r.fx, 42.0);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn respects_the_iteration_budget() {
        let opts = NelderMeadOptions {
            max_iters: 3,
            ..NelderMeadOptions::default()
        };
        let r = nelder_mead(|x: &[f64]| x.iter().map(|v| v * v).sum(), &[10.0; 4], &opts);
        assert!(r.iterations <= 3);
        assert_eq!(r.trace.len(), r.iterations);
    }
}
