use std::sync::Arc;

use super::{GaugeSpec, Regime, Source};
use crate::conorm::TConorm;
use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::grid::Profile;
use crate::scalar::Scalar;

fn wrap<T: Scalar>(g: &GaugeSpec<T>, regime: Regime, source: Source<T>) -> GaugeSpec<T> {
    GaugeSpec {
        regime,
        labels: g.labels.clone(),
        source,
        claims_symmetric: g.claims_symmetric,
        claims_convex: g.claims_convex,
        warnings: g.warnings.clone(),
    }
}

/// `(x, y, t) -> w_t(y, x)`.
pub fn opposite<T: Scalar>(g: &GaugeSpec<T>) -> GaugeSpec<T> {
    if let Source::Opposite(inner) = &g.source {
        return (**inner).clone();
    }
    wrap(g, g.regime, Source::Opposite(Arc::new(g.clone())))
}

/// `(x, y, t) -> max{w_t(x, y), w_t(y, x)}`. Additive regime only.
pub fn symmetrize_max<T: Scalar>(g: &GaugeSpec<T>) -> Result<GaugeSpec<T>> {
    if !g.regime.is_additive() {
        return Err(Error::WrongRegime { expected: "additive" });
    }
    let mut out = wrap(g, g.regime, Source::SymmetricMax(Arc::new(g.clone())));
    out.claims_symmetric = true;
    Ok(out)
}

/// `(x, y, t) -> w(x, y, t) (+) w(y, x, t)` with the gauge's own conorm.
pub fn symmetrize_conorm<T: Scalar>(g: &GaugeSpec<T>) -> Result<GaugeSpec<T>> {
    let conorm = g.regime.conorm().ok_or(Error::WrongRegime { expected: "conorm" })?;
    let mut out = wrap(g, g.regime, Source::SymmetricConorm(Arc::new(g.clone()), conorm));
    out.claims_symmetric = true;
    Ok(out)
}

/// Grid convolution `(phi * psi)(u) = min { phi(t_i) (+) psi(t_j) : t_i + t_j <= u }`.
///
/// Grid scales `u` admitting no split get the top value one.
pub fn profile_convolve<T: Scalar>(phi: &Profile<T>, psi: &Profile<T>, conorm: TConorm) -> Result<Profile<T>> {
    if phi.grid() != psi.grid() {
        return Err(Error::GridMismatch);
    }
    for v in phi.values().iter().chain(psi.values()) {
        if v.get() > T::one() {
            return Err(Error::InvalidValue(format!("profile value {v} outside [0, 1]")));
        }
    }
    let scales = phi.grid().scales();
    let m = scales.len();
    // best[s] = min over splits whose sum is exactly bucketed at s; then a running min.
    let mut values = vec![ExtValue::saturating(T::one()); m];
    for i in 0..m {
        for j in 0..m {
            let sum = scales[i] + scales[j];
            if let Some(k) = phi.grid().ceil_index(sum) {
                let v = ExtValue::saturating(conorm.apply(phi.values()[i].get(), psi.values()[j].get()));
                values[k] = values[k].min(v);
            }
        }
    }
    for k in 1..m {
        values[k] = values[k].min(values[k - 1]);
    }
    Profile::new(phi.grid().clone(), values)
}
