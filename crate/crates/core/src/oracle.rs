//! Value oracles: memoized, counted access to a set function.
//!
//! Solvers never see a problem instance directly. They only query
//! [`ValueOracle::evaluate`] and [`ValueOracle::marginal`], and every
//! cache miss is charged to the oracle's evaluation counter.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::subset::{ElementId, GroundSet, Subset};

/// Ground sets up to this size get an unbounded memo table.
pub const CACHE_LIMIT: usize = 24;

pub const REL_TOL: f64 = 1e-9;
pub const ABS_TOL: f64 = 1e-12;

/// `a == b` up to relative tolerance `REL_TOL` with absolute floor `ABS_TOL`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS_TOL.max(REL_TOL * a.abs().max(b.abs()))
}

/// `a >= b` up to the same tolerance as [`approx_eq`].
pub fn approx_ge(a: f64, b: f64) -> bool {
    a >= b || approx_eq(a, b)
}

/// A deterministic set function over `0..ground_size()`.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Value of `s`. Callers guarantee `s` only holds indices below `ground_size()`.
    fn value(&self, s: &Subset) -> f64;
}

/// Adapts a closure into a [`SetFunction`].
pub struct FnSetFunction<F> {
    size: usize,
    f: F,
}

impl<F: Fn(&Subset) -> f64 + Send + Sync> FnSetFunction<F> {
    pub fn new(size: usize, f: F) -> Self {
        FnSetFunction { size, f }
    }
}

impl<F: Fn(&Subset) -> f64 + Send + Sync> SetFunction for FnSetFunction<F> {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn value(&self, s: &Subset) -> f64 {
        (self.f)(s)
    }
}

/// Non-negative linear combination `Σ cᵢ·fᵢ` of set functions over a common ground set.
pub struct LinearCombination {
    size: usize,
    terms: Vec<(f64, Arc<dyn SetFunction>)>,
}

impl LinearCombination {
    pub fn new(terms: Vec<(f64, Arc<dyn SetFunction>)>) -> Result<Self> {
        let size = terms
            .first()
            .map(|(_, f)| f.ground_size())
            .ok_or_else(|| Error::InvalidParams("linear combination needs at least one term".into()))?;
        if terms.iter().any(|(_, f)| f.ground_size() != size) {
            return Err(Error::InvalidParams("linear combination terms disagree on ground size".into()));
        }
        if terms.iter().any(|(c, _)| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidParams("linear combination coefficients must be non-negative".into()));
        }
        Ok(LinearCombination { size, terms })
    }
}

impl SetFunction for LinearCombination {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn value(&self, s: &Subset) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.value(s)).sum()
    }
}

/// Memoized, counted evaluator for a set function.
///
/// Immutable after construction and safe to share across threads: the memo
/// table sits behind a mutex and the counter is atomic. A cache entry is
/// inserted at most once per distinct subset, and the counter is only bumped
/// on that insertion, so concurrent use cannot change either the returned
/// values or the final count.
pub struct ValueOracle {
    ground: GroundSet,
    func: Arc<dyn SetFunction>,
    cache: Option<Mutex<HashMap<Subset, f64>>>,
    evaluations: AtomicU64,
}

impl ValueOracle {
    pub fn new(func: Arc<dyn SetFunction>) -> Result<Self> {
        let ground = GroundSet::new(func.ground_size())?;
        Self::with_ground(ground, func)
    }

    pub fn with_ground(ground: GroundSet, func: Arc<dyn SetFunction>) -> Result<Self> {
        if ground.size() != func.ground_size() {
            return Err(Error::InvalidParams(format!(
                "ground set has {} elements but the set function expects {}",
                ground.size(),
                func.ground_size()
            )));
        }
        let cache = (ground.size() <= CACHE_LIMIT).then(|| Mutex::new(HashMap::new()));
        Ok(ValueOracle { ground, func, cache, evaluations: AtomicU64::new(0) })
    }

    pub fn from_fn<F>(size: usize, f: F) -> Result<Self>
    where
        F: Fn(&Subset) -> f64 + Send + Sync + 'static,
    {
        Self::new(Arc::new(FnSetFunction::new(size, f)))
    }

    /// The same set function with memoization switched off.
    pub fn uncached(&self) -> ValueOracle {
        ValueOracle {
            ground: self.ground.clone(),
            func: Arc::clone(&self.func),
            cache: None,
            evaluations: AtomicU64::new(0),
        }
    }

    /// A fresh oracle over the same function: empty cache, zeroed counter.
    pub fn fresh(&self) -> ValueOracle {
        ValueOracle {
            ground: self.ground.clone(),
            func: Arc::clone(&self.func),
            cache: self.cache.as_ref().map(|_| Mutex::new(HashMap::new())),
            evaluations: AtomicU64::new(0),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn function(&self) -> Arc<dyn SetFunction> {
        Arc::clone(&self.func)
    }

    pub fn is_cached(&self) -> bool {
        self.cache.is_some()
    }

    /// Number of set-function invocations so far (cache misses when cached).
    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn evaluate(&self, s: &Subset) -> Result<f64> {
        non_negative(self.raw_value(s)?)
    }

    /// Like [`evaluate`](Self::evaluate) but without the sign check, so
    /// structure checkers can observe negative values.
    pub fn raw_value(&self, s: &Subset) -> Result<f64> {
        self.ground.check(s)?;
        let Some(cache) = &self.cache else {
            self.evaluations.fetch_add(1, Ordering::Relaxed);
            return finite(self.func.value(s));
        };
        if let Some(&v) = cache.lock().expect("oracle cache poisoned").get(s) {
            return Ok(v);
        }
        let v = finite(self.func.value(s))?;
        let mut table = cache.lock().expect("oracle cache poisoned");
        if !table.contains_key(s) {
            table.insert(s.clone(), v);
            self.evaluations.fetch_add(1, Ordering::Relaxed);
        }
        Ok(v)
    }

    /// `v(S ∪ {x}) − v(S)`.
    pub fn marginal(&self, s: &Subset, x: ElementId) -> Result<f64> {
        self.ground.check_element(x)?;
        if s.contains(x) {
            self.ground.check(s)?;
            return Ok(0.0);
        }
        let base = self.evaluate(s)?;
        Ok(self.evaluate(&s.with(x))? - base)
    }

    /// `Σ_{x∈X} v({x})`.
    pub fn singleton_sum(&self) -> Result<f64> {
        (0..self.size()).map(|x| self.evaluate(&Subset::singleton(x))).sum()
    }

    pub fn full_value(&self) -> Result<f64> {
        self.evaluate(&self.ground.full())
    }
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidValue { value: v })
    }
}

fn non_negative(v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidValue { value: v })
    }
}
