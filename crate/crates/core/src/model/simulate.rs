use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{ArimaOrder, ArimaParams};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Pre-sample steps discarded per unit of `max(p, q, 1)`.
pub const BURN_IN_PER_LAG: usize = 100;

/// Draws an ARIMA path of length `n`.
///
/// Innovations are `sigma * z` with `z` taken from the standard-normal stream of a
/// `ChaCha8Rng` seeded with `seed`. The ARMA recursion starts from zero pre-sample
/// values, discards the burn-in, and the result is cumulatively summed `d` times.
pub fn simulate(
    params: &ArimaParams,
    order: ArimaOrder,
    n: usize,
    seed: u64,
) -> Result<TimeSeries> {
    params.check_order(order)?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let (p, q) = (order.p, order.q);
    let burn = BURN_IN_PER_LAG * p.max(q).max(1);
    let sigma = params.sigma2.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let total = burn + n;
    let mut x = vec![0.0; total];
    let mut u = vec![0.0; total];
    for t in 0..total {
        let z: f64 = StandardNormal.sample(&mut rng);
        u[t] = sigma * z;
        let mut acc = u[t];
        for (i, b) in params.beta.iter().enumerate() {
            if t > i {
                acc += b * x[t - 1 - i];
            }
        }
        for (j, a) in params.alpha.iter().enumerate() {
            if t > j {
                acc -= a * u[t - 1 - j];
            }
        }
        x[t] = acc;
    }
    let mut values: Vec<f64> = x[burn..].iter().map(|v| params.mu + v).collect();
    for _ in 0..order.d {
        let mut acc = 0.0;
        for v in values.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
    TimeSeries::from_values(values)
}
