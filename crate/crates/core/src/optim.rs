//! Deterministic Nelder-Mead simplex minimizer.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Offset of each initial vertex from the starting point along one axis.
    pub step: f64,
    /// Stop once the spread of objective values across the simplex falls below this.
    pub f_tol: f64,
    /// ...and every vertex lies within this (max-norm) distance of the best one.
    pub x_tol: f64,
    /// Iteration cap per dimension.
    pub iters_per_dim: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            step: 0.1,
            f_tol: 1e-10,
            x_tol: 1e-8,
            iters_per_dim: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn eval<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let dim = x0.len();
        if dim == 0 {
            let fx = eval(&mut f, x0);
            return Minimum {
                x: Vec::new(),
                fx,
                iterations: 0,
                converged: true,
            };
        }
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        simplex.push((x0.to_vec(), eval(&mut f, x0)));
        for i in 0..dim {
            let mut x = x0.to_vec();
            x[i] += self.step;
            let fx = eval(&mut f, &x);
            simplex.push((x, fx));
        }

        let max_iter = self.iters_per_dim * dim;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < max_iter {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[dim].1;
            if best.is_finite() && worst - best < self.f_tol {
                let extent = simplex[1..]
                    .iter()
                    .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                    .fold(0.0, f64::max);
                if extent < self.x_tol {
                    converged = true;
                    break;
                }
            }
            iterations += 1;

            let mut centroid = vec![0.0; dim];
            for (x, _) in &simplex[..dim] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / dim as f64;
                }
            }
            let along = |coef: f64, from: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, w)| c + coef * (c - w))
                    .collect()
            };

            let worst_x = simplex[dim].0.clone();
            let reflected = along(REFLECT, &worst_x);
            let f_reflected = eval(&mut f, &reflected);

            if f_reflected < simplex[0].1 {
                let expanded = along(EXPAND, &worst_x);
                let f_expanded = eval(&mut f, &expanded);
                simplex[dim] = if f_expanded < f_reflected {
                    (expanded, f_expanded)
                } else {
                    (reflected, f_reflected)
                };
                continue;
            }
            if f_reflected < simplex[dim - 1].1 {
                simplex[dim] = (reflected, f_reflected);
                continue;
            }
            let (contracted, f_contracted) = if f_reflected < simplex[dim].1 {
                let x = along(CONTRACT, &worst_x);
                let fx = eval(&mut f, &x);
                (x, fx)
            } else {
                let x = along(-CONTRACT, &worst_x);
                let fx = eval(&mut f, &x);
                (x, fx)
            };
            if f_contracted < simplex[dim].1.min(f_reflected) {
                simplex[dim] = (contracted, f_contracted);
                continue;
            }
            let best_x = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best_x
                    .iter()
                    .zip(&vertex.0)
                    .map(|(b, v)| b + SHRINK * (v - b))
                    .collect();
                let fx = eval(&mut f, &x);
                *vertex = (x, fx);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, fx) = simplex.swap_remove(0);
        Minimum {
            x,
            fx,
            iterations,
            converged,
        }
    }
}
