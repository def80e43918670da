use super::game::BilinearGame;
use super::nash::{verify_ne, EquilibriumComponent, NeStatus};
use crate::error::{Error, Result};
use crate::scalar::{max_of, min_of, Scalar};

/// Grid points `(i/n, j/n)` that are `eps`-equilibria of `game` against all
/// grid deviations, found by exhaustive search.
pub fn grid_oracle<T: Scalar>(game: &BilinearGame<T>, n: usize, eps: &T) -> Result<Vec<(T, T)>> {
    grid_oracle_fn(n, eps, |x, y| Ok(game.eval(x, y)))
}

/// Same search with payoffs supplied by an arbitrary evaluator, so the
/// oracle can run directly on the density-matrix engine.
pub fn grid_oracle_fn<T, F>(n: usize, eps: &T, mut payoffs: F) -> Result<Vec<(T, T)>>
where
    T: Scalar,
    F: FnMut(&T, &T) -> Result<(T, T)>,
{
    if n == 0 {
        return Err(Error::Domain("grid resolution must be at least 1".into()));
    }
    let grid: Vec<T> = (0..=n).map(|i| T::from_ratio(i as i64, n as i64)).collect();
    let mut table = Vec::with_capacity(grid.len());
    for x in &grid {
        let mut row = Vec::with_capacity(grid.len());
        for y in &grid {
            row.push(payoffs(x, y)?);
        }
        table.push(row);
    }

    // best reply values against each opponent grid point
    let best_row: Vec<T> = (0..=n)
        .map(|j| {
            (0..=n).fold(table[0][j].0.clone(), |m, i| max_of(m, table[i][j].0.clone()))
        })
        .collect();
    let best_col: Vec<T> = (0..=n)
        .map(|i| {
            (0..=n).fold(table[i][0].1.clone(), |m, j| max_of(m, table[i][j].1.clone()))
        })
        .collect();

    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let (ua, ub) = &table[i][j];
            if ua.clone() + eps.clone() >= best_row[j] && ub.clone() + eps.clone() >= best_col[i] {
                out.push((grid[i].clone(), grid[j].clone()));
            }
        }
    }
    Ok(out)
}

/// Comparison of an analytic equilibrium set with the grid oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridAgreement {
    /// Sampled points of every component are `eps`-equilibria, and every
    /// grid point lying on a component was found by the oracle.
    pub sound: bool,
    /// Every oracle point lies within one grid step of some component.
    pub complete: bool,
}

impl GridAgreement {
    pub fn agrees(&self) -> bool {
        self.sound && self.complete
    }
}

pub fn grid_agreement<T: Scalar>(
    game: &BilinearGame<T>,
    components: &[EquilibriumComponent<T>],
    n: usize,
    eps: &T,
) -> Result<GridAgreement> {
    let found = grid_oracle(game, n, eps)?;
    let step = T::from_ratio(1, n as i64);
    let on_grid_tol = T::exact_tol();

    let mut sound = true;
    for comp in components {
        for (x, y) in comp.sample(10).into_iter().chain(comp.corners()) {
            if verify_ne(game, &x, &y, eps)? == NeStatus::NotEquilibrium {
                sound = false;
            }
        }
    }
    let grid: Vec<T> = (0..=n).map(|i| T::from_ratio(i as i64, n as i64)).collect();
    for x in &grid {
        for y in &grid {
            let on_component = components.iter().any(|c| c.distance(x, y) <= on_grid_tol);
            if on_component && !found.iter().any(|(fx, fy)| fx == x && fy == y) {
                sound = false;
            }
        }
    }

    let complete = found.iter().all(|(x, y)| {
        components
            .iter()
            .map(|c| c.distance(x, y))
            .reduce(min_of)
            .is_some_and(|d| d <= step.clone() + on_grid_tol.clone())
    });
    Ok(GridAgreement { sound, complete })
}
