use super::Regime;
use crate::{Error, Result};

fn check(k: usize, n: usize) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::invalid("k, n", "both registers need at least one qubit"));
    }
    if k + n > 30 {
        return Err(Error::invalid("k, n", "dimension counts overflow"));
    }
    Ok(())
}

/// Closed-form `(d+, d-)` as stated, including the `n = k = 1` correction terms.
///
/// For `k > n` the roles of `k` and `n` are swapped.
pub fn dimension_formula(k: usize, n: usize, regime: Regime) -> Result<(usize, usize)> {
    check(k, n)?;
    let (k, n) = if k > n { (n, k) } else { (k, n) };
    let delta = usize::from(n == 1 && k == 1);
    let (pk, pn) = (1usize << k, 1usize << n);
    Ok(match regime {
        Regime::MaxKoenig => (
            pn * pn + 3 * pn * (pk - 1) + (pk - 1) * (pk - 2) + delta,
            3 * pn + 3 * pk - 6 - 5 * delta,
        ),
        Regime::MinStrong => (pk * pk + 3 * pk + 1, delta),
    })
}

/// `(d+, d-)` of the Koenig attractor space counted block by block, valid for all `k, n >= 1`.
///
/// Agrees with [`dimension_formula`] except at `k = n = 1`, where the true
/// dimensions are `(10, 6)`.
pub fn derived_max_dims(k: usize, n: usize) -> Result<(usize, usize)> {
    check(k, n)?;
    let (pk, pn) = (1usize << k, 1usize << n);
    Ok((pn * pn + 3 * pn * (pk - 1) + (pk - 1) * (pk - 2), 3 * pn + 3 * pk - 6))
}
