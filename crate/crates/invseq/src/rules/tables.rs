//! Edge-multiplicity tables for succession rules: binomial coefficients,
//! unsigned Stirling numbers of the first kind, and the two coefficient
//! families extracted from the bivariate closed forms in [`crate::series::gf`].

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::series::gf;
use crate::series::{BivariateSeries, SeriesError};

/// Binomial coefficient C(n, k), zero whenever 0 ≤ k ≤ n fails.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // Exact at every step: the running value is C(n, i+1) · (i+1)! / (i+1)!.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static STIRLING_ROWS: OnceLock<Mutex<Vec<Vec<BigUint>>>> = OnceLock::new();

/// Unsigned Stirling number of the first kind: permutations of n elements
/// with exactly k cycles. Rows are cached across calls.
pub fn stirling1(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let lock = STIRLING_ROWS.get_or_init(|| Mutex::new(vec![vec![BigUint::one()]]));
    let mut rows = lock.lock().expect("stirling cache poisoned");
    while rows.len() <= n {
        let m = rows.len() - 1;
        let next = {
            let prev = rows.last().expect("nonempty triangle");
            let mut next = vec![BigUint::zero(); m + 2];
            for (j, value) in prev.iter().enumerate() {
                next[j + 1] += value;
                next[j] += value * BigUint::from(m);
            }
            next
        };
        rows.push(next);
    }
    rows[n][k].clone()
}

struct GridCache {
    max_l: usize,
    max_k: usize,
    grid: Arc<Vec<Vec<BigUint>>>,
}

static COMMIT_GRID: Mutex<Option<GridCache>> = Mutex::new(None);
static JUMP_GRID: Mutex<Option<GridCache>> = Mutex::new(None);

fn grid_from_series(series: &BivariateSeries) -> Result<Vec<Vec<BigUint>>, SeriesError> {
    let mut grid = Vec::with_capacity(series.t_order() + 1);
    for l in 0..=series.t_order() {
        let mut row = Vec::with_capacity(series.u_order() + 1);
        for k in 0..=series.u_order() {
            let c = series.coeff(l, k);
            let value = if c.is_integer() {
                c.numer().to_biguint()
            } else {
                None
            };
            match value {
                Some(v) => row.push(v),
                None => {
                    return Err(SeriesError::NotDivisible(format!(
                        "multiplicity at t^{l} u^{k} is {c}, not a nonnegative integer"
                    )))
                }
            }
        }
        grid.push(row);
    }
    Ok(grid)
}

fn cached_grid(
    cache: &Mutex<Option<GridCache>>,
    max_l: usize,
    max_k: usize,
    expand: fn(usize, usize) -> Result<BivariateSeries, SeriesError>,
) -> Result<Arc<Vec<Vec<BigUint>>>, SeriesError> {
    let mut guard = cache.lock().expect("grid cache poisoned");
    if let Some(cached) = guard.as_ref() {
        if cached.max_l >= max_l && cached.max_k >= max_k {
            return Ok(cached.grid.clone());
        }
    }
    // Grow geometrically past the request so repeated slightly-larger
    // queries do not re-expand the series every time.
    let (old_l, old_k) = guard
        .as_ref()
        .map_or((0, 0), |c| (c.max_l, c.max_k));
    let new_l = max_l.max(old_l * 2).max(8);
    let new_k = max_k.max(old_k * 2).max(8);
    let grid = Arc::new(grid_from_series(&expand(new_l, new_k)?)?);
    *guard = Some(GridCache {
        max_l: new_l,
        max_k: new_k,
        grid: grid.clone(),
    });
    Ok(grid)
}

/// Multiplicities a_{ℓ,k} of the commitment form of the 120-avoiding rule,
/// valid at least on the box ℓ ≤ max_l, k ≤ max_k (rows may extend further).
pub fn commit_multiplicities(
    max_l: usize,
    max_k: usize,
) -> Result<Arc<Vec<Vec<BigUint>>>, SeriesError> {
    cached_grid(&COMMIT_GRID, max_l, max_k, gf::commit_multiplicity_series)
}

/// Multiplicities b_{ℓ,k} of the long-jump form of the 120-avoiding rule,
/// valid at least on the box ℓ ≤ max_l, k ≤ max_k (rows may extend further).
pub fn jump_multiplicities(
    max_l: usize,
    max_k: usize,
) -> Result<Arc<Vec<Vec<BigUint>>>, SeriesError> {
    cached_grid(&JUMP_GRID, max_l, max_k, gf::jump_multiplicity_series)
}
