//! Weighted Musielak-Orlicz modulars on finite measure spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtValue;
use crate::luxemburg::{luxemburg_inf, LuxemburgOptions, LuxemburgResult};
use crate::scalar::Scalar;

/// Finite set of labelled atoms with positive masses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteMeasureSpace<T> {
    points: Vec<String>,
    mu: Vec<T>,
}

impl<T: Scalar> DiscreteMeasureSpace<T> {
    pub fn new(points: Vec<String>, mu: Vec<T>) -> Result<Self> {
        if points.len() != mu.len() {
            return Err(Error::InvalidValue(format!(
                "{} points but {} masses",
                points.len(),
                mu.len()
            )));
        }
        if let Some(m) = mu.iter().find(|m| !(**m > T::zero()) || !m.is_finite()) {
            return Err(Error::InvalidValue(format!("mass {m} must be finite and positive")));
        }
        let mut sorted = points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidValue(format!("point {} listed twice", w[0])));
        }
        Ok(DiscreteMeasureSpace { points, mu })
    }

    /// Points `0..mu.len()` with the given masses.
    pub fn from_masses(mu: Vec<T>) -> Result<Self> {
        DiscreteMeasureSpace::new((0..mu.len()).map(|i| i.to_string()).collect(), mu)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    fn check_function(&self, f: &[T]) -> Result<()> {
        if f.len() < self.len() {
            return Err(Error::MissingValue(self.points[f.len()].clone()));
        }
        if f.len() > self.len() {
            return Err(Error::InvalidValue(format!(
                "{} values for {} points",
                f.len(),
                self.len()
            )));
        }
        match f.iter().position(|v| v.is_nan()) {
            Some(i) => Err(Error::InvalidValue(format!("value at {} is NaN", self.points[i]))),
            None => Ok(()),
        }
    }
}

/// Pointwise Orlicz function `phi_i(s)`, one per atom.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MusielakOrlicz<T> {
    /// `s^{p_i}`.
    VariableExponent { p: Vec<T> },
    /// `s^p + a_i s^q`.
    DoublePhase { p: T, q: T, a: Vec<T> },
    /// `w_i phi_i(s)`.
    Weighted { w: Vec<T>, inner: Box<MusielakOrlicz<T>> },
}

fn check_exponent<T: Scalar>(p: T) -> Result<()> {
    if p >= T::one() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "exponent must be finite and >= 1, got {p}"
        )))
    }
}

fn check_coefficients<T: Scalar>(what: &str, v: &[T], strict: bool) -> Result<()> {
    match v
        .iter()
        .find(|c| !c.is_finite() || *c < &T::zero() || (strict && **c == T::zero()))
    {
        Some(c) => Err(Error::InvalidParameter(format!("{what} {c} is out of range"))),
        None => Ok(()),
    }
}

impl<T: Scalar> MusielakOrlicz<T> {
    pub fn variable_exponent(p: Vec<T>) -> Result<Self> {
        p.iter().try_for_each(|&e| check_exponent(e))?;
        Ok(MusielakOrlicz::VariableExponent { p })
    }

    pub fn power(p: T, n: usize) -> Result<Self> {
        MusielakOrlicz::variable_exponent(vec![p; n])
    }

    pub fn double_phase(p: T, q: T, a: Vec<T>) -> Result<Self> {
        check_exponent(p)?;
        if !(q > p) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "double phase needs q > p, got p = {p}, q = {q}"
            )));
        }
        check_coefficients("coefficient a_i", &a, false)?;
        Ok(MusielakOrlicz::DoublePhase { p, q, a })
    }

    pub fn weighted(w: Vec<T>, inner: MusielakOrlicz<T>) -> Result<Self> {
        check_coefficients("weight w_i", &w, true)?;
        if w.len() != inner.len() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} points",
                w.len(),
                inner.len()
            )));
        }
        Ok(MusielakOrlicz::Weighted {
            w,
            inner: Box::new(inner),
        })
    }

    /// Number of atoms the function is defined on.
    pub fn len(&self) -> usize {
        match self {
            MusielakOrlicz::VariableExponent { p } => p.len(),
            MusielakOrlicz::DoublePhase { a, .. } => a.len(),
            MusielakOrlicz::Weighted { w, .. } => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Re-runs the constructor checks, for values built directly or loaded.
    pub fn validate(&self) -> Result<()> {
        match self {
            MusielakOrlicz::VariableExponent { p } => MusielakOrlicz::variable_exponent(p.clone()).map(drop),
            MusielakOrlicz::DoublePhase { p, q, a } => MusielakOrlicz::double_phase(*p, *q, a.clone()).map(drop),
            MusielakOrlicz::Weighted { w, inner } => {
                inner.validate()?;
                MusielakOrlicz::weighted(w.clone(), (**inner).clone()).map(drop)
            }
        }
    }

    /// `phi_i(|s|)`.
    pub fn eval(&self, i: usize, s: T) -> ExtValue<T> {
        let s = s.abs();
        match self {
            MusielakOrlicz::VariableExponent { p } => ExtValue::saturating(s.powf(p[i])),
            MusielakOrlicz::DoublePhase { p, q, a } => {
                let high = if a[i] == T::zero() {
                    T::zero()
                } else {
                    a[i] * s.powf(*q)
                };
                ExtValue::saturating(s.powf(*p) + high)
            }
            MusielakOrlicz::Weighted { w, inner } => inner.eval(i, s).scale(w[i]),
        }
    }

    /// Smallest and largest exponent of a variable-exponent function, looking
    /// through weights.
    pub fn exponent_range(&self) -> Option<(T, T)> {
        match self {
            MusielakOrlicz::VariableExponent { p } => {
                let lo = p.iter().copied().fold(T::infinity(), T::min);
                let hi = p.iter().copied().fold(T::neg_infinity(), T::max);
                (!p.is_empty()).then_some((lo, hi))
            }
            MusielakOrlicz::Weighted { inner, .. } => inner.exponent_range(),
            MusielakOrlicz::DoublePhase { .. } => None,
        }
    }

    /// First sample where `phi_i` is negative, decreasing or nonconvex, as
    /// `(atom, argument)`. Arguments are sorted; convexity uses consecutive
    /// triples with relative slack `slack`.
    pub fn sampled_shape_violation(&self, args: &[T], slack: T) -> Option<(usize, T)> {
        let mut s: Vec<T> = args.iter().map(|a| a.abs()).collect();
        s.push(T::zero());
        s.sort_by(|a, b| a.partial_cmp(b).expect("finite arguments"));
        s.dedup();
        for i in 0..self.len() {
            if !self.eval(i, T::zero()).is_zero() {
                return Some((i, T::zero()));
            }
            let v: Vec<T> = s.iter().map(|&x| self.eval(i, x).get()).collect();
            for k in 1..s.len() {
                if v[k] < v[k - 1] {
                    return Some((i, s[k]));
                }
            }
            for k in 1..s.len().saturating_sub(1) {
                let (a, b, c) = (s[k - 1], s[k], s[k + 1]);
                let chord = v[k - 1] + (v[k + 1] - v[k - 1]) * (b - a) / (c - a);
                if v[k].is_finite() && v[k] > chord + slack * chord.abs().max(T::one()) {
                    return Some((i, b));
                }
            }
        }
        None
    }
}

/// Bounds `[m, M]` with `m ||f|| <= ||f||_w <= M ||f||` for a weighted
/// variable-exponent function with `c <= w_i <= C`:
/// `m = min(c^{1/p-}, c^{1/p+})`, `M = max(C^{1/p-}, C^{1/p+})`.
pub fn weight_equivalence_bounds<T: Scalar>(phi: &MusielakOrlicz<T>) -> Option<(T, T)> {
    let MusielakOrlicz::Weighted { w, inner } = phi else {
        return None;
    };
    let (p_lo, p_hi) = inner.exponent_range()?;
    let c = w.iter().copied().fold(T::infinity(), T::min);
    let big_c = w.iter().copied().fold(T::neg_infinity(), T::max);
    let root = |x: T, p: T| x.powf(p.recip());
    Some((
        root(c, p_lo).min(root(c, p_hi)),
        root(big_c, p_lo).max(root(big_c, p_hi)),
    ))
}

fn check_arity<T: Scalar>(space: &DiscreteMeasureSpace<T>, phi: &MusielakOrlicz<T>) -> Result<()> {
    if phi.len() != space.len() {
        return Err(Error::InvalidParameter(format!(
            "Orlicz function has {} atoms, space has {}",
            phi.len(),
            space.len()
        )));
    }
    Ok(())
}

fn sum_terms<T: Scalar>(space: &DiscreteMeasureSpace<T>, term: impl Fn(usize) -> ExtValue<T>) -> ExtValue<T> {
    ExtValue::saturating((0..space.len()).fold(T::zero(), |acc, i| acc + term(i).scale(space.mu[i]).get()))
}

/// `sum_i mu_i w_i phi_i(|f_i|)`.
pub fn modular<T: Scalar>(space: &DiscreteMeasureSpace<T>, phi: &MusielakOrlicz<T>, f: &[T]) -> Result<ExtValue<T>> {
    space.check_function(f)?;
    check_arity(space, phi)?;
    Ok(sum_terms(space, |i| phi.eval(i, f[i])))
}

fn norm_of<T: Scalar>(
    f: &[T],
    opts: &LuxemburgOptions<T>,
    rho: impl Fn(&[T]) -> ExtValue<T>,
) -> Result<LuxemburgResult<T>> {
    luxemburg_inf(
        |lambda| {
            let scaled: Vec<T> = f.iter().map(|&v| v / lambda).collect();
            Ok(rho(&scaled))
        },
        &LuxemburgOptions {
            threshold: T::one(),
            ..*opts
        },
    )
}

/// `inf { lambda > 0 : rho(f / lambda) <= 1 }`.
pub fn luxemburg_norm<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    phi: &MusielakOrlicz<T>,
    f: &[T],
    opts: &LuxemburgOptions<T>,
) -> Result<LuxemburgResult<T>> {
    space.check_function(f)?;
    check_arity(space, phi)?;
    norm_of(f, opts, |g| sum_terms(space, |i| phi.eval(i, g[i])))
}

/// Norm-modular comparison at threshold one. Each flag is true when its
/// clause holds or does not apply.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitBallReport<T: Scalar> {
    pub norm: ExtValue<T>,
    pub modular: ExtValue<T>,
    /// `||f|| <= 1 <=> rho(f) <= 1`, each direction within `tol`.
    pub equivalence: bool,
    /// `||f|| >= 1 => rho(f) >= ||f|| - tol`.
    pub above_one: bool,
    /// `||f|| <= 1 => rho(f) <= ||f|| + tol`.
    pub below_one: bool,
}

impl<T: Scalar> UnitBallReport<T> {
    pub fn holds(&self) -> bool {
        self.equivalence && self.above_one && self.below_one
    }
}

pub fn unit_ball_check<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    phi: &MusielakOrlicz<T>,
    f: &[T],
    opts: &LuxemburgOptions<T>,
) -> Result<UnitBallReport<T>> {
    let norm = luxemburg_norm(space, phi, f, opts)?.value;
    let rho = modular(space, phi, f)?;
    let one = ExtValue::saturating(T::one());
    let tol = opts.tol;
    let equivalence =
        (norm > one || rho <= one.scale(T::one() + tol)) && (rho > one || norm <= ExtValue::saturating(T::one() + tol));
    let above_one = norm < one || rho.get() >= norm.get() - tol;
    let below_one = norm > one || rho.get() <= norm.get() + tol;
    Ok(UnitBallReport {
        norm,
        modular: rho,
        equivalence,
        above_one,
        below_one,
    })
}

/// `psi1` acts on positive parts, `psi2` on negative parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneSidedPair<T> {
    pub psi1: MusielakOrlicz<T>,
    pub psi2: MusielakOrlicz<T>,
}

impl<T: Scalar> OneSidedPair<T> {
    pub fn new(psi1: MusielakOrlicz<T>, psi2: MusielakOrlicz<T>) -> Result<Self> {
        psi1.validate()?;
        psi2.validate()?;
        if psi1.len() != psi2.len() {
            return Err(Error::InvalidParameter("psi1 and psi2 live on different atoms".into()));
        }
        Ok(OneSidedPair { psi1, psi2 })
    }

    fn check(&self, space: &DiscreteMeasureSpace<T>, f: &[T]) -> Result<()> {
        space.check_function(f)?;
        check_arity(space, &self.psi1)?;
        check_arity(space, &self.psi2)
    }
}

fn plus<T: Scalar>(v: T) -> T {
    v.max(T::zero())
}

fn minus<T: Scalar>(v: T) -> T {
    (-v).max(T::zero())
}

fn rho_plus<T: Scalar>(space: &DiscreteMeasureSpace<T>, psi: &MusielakOrlicz<T>, f: &[T]) -> ExtValue<T> {
    sum_terms(space, |i| psi.eval(i, plus(f[i])))
}

fn rho_minus<T: Scalar>(space: &DiscreteMeasureSpace<T>, psi: &MusielakOrlicz<T>, f: &[T]) -> ExtValue<T> {
    sum_terms(space, |i| psi.eval(i, minus(f[i])))
}

/// `(sum mu_i psi1_i((f_i)_+), sum mu_i psi2_i((f_i)_-))`.
pub fn one_sided_modulars<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    pair: &OneSidedPair<T>,
    f: &[T],
) -> Result<(ExtValue<T>, ExtValue<T>)> {
    pair.check(space, f)?;
    Ok((rho_plus(space, &pair.psi1, f), rho_minus(space, &pair.psi2, f)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OneSidedNorms<T: Scalar> {
    pub plus: ExtValue<T>,
    pub minus: ExtValue<T>,
    /// `max(plus, minus)`.
    pub sym: ExtValue<T>,
}

pub fn one_sided_gauges<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    pair: &OneSidedPair<T>,
    f: &[T],
    opts: &LuxemburgOptions<T>,
) -> Result<OneSidedNorms<T>> {
    pair.check(space, f)?;
    let plus = norm_of(f, opts, |g| rho_plus(space, &pair.psi1, g))?.value;
    let minus = norm_of(f, opts, |g| rho_minus(space, &pair.psi2, g))?.value;
    Ok(OneSidedNorms {
        plus,
        minus,
        sym: plus.max(minus),
    })
}

/// `(||f - g||_+, ||f - g||_-)`.
pub fn quasi_metric_from_gauges<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    pair: &OneSidedPair<T>,
    f: &[T],
    g: &[T],
    opts: &LuxemburgOptions<T>,
) -> Result<(ExtValue<T>, ExtValue<T>)> {
    space.check_function(g)?;
    pair.check(space, f)?;
    let diff: Vec<T> = f.iter().zip(g).map(|(&a, &b)| a - b).collect();
    let n = one_sided_gauges(space, pair, &diff, opts)?;
    Ok((n.plus, n.minus))
}
