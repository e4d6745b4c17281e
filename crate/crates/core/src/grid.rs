//! Parameter grids and the deterministic worker pool used by every map.

use std::num::NonZeroUsize;
use std::thread;

use crate::error::{Error, Result};

/// Inclusive, evenly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Domain("axis needs at least one point".into()));
        }
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(Error::Domain(format!("bad axis range [{min}, {max}]")));
        }
        Ok(Self { min, max, steps })
    }

    pub fn step(&self) -> f64 {
        if self.steps > 1 {
            (self.max - self.min) / (self.steps - 1) as f64
        } else {
            0.0
        }
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else if i + 1 == self.steps {
            self.max
        } else {
            self.min + self.step() * i as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// Rectangular grid in the (static field, RF amplitude) plane, V/cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGrid {
    pub f_static: Axis,
    pub f_rf: Axis,
}

impl FieldGrid {
    pub fn new(f_static: Axis, f_rf: Axis) -> Self {
        Self { f_static, f_rf }
    }

    /// `[0, 0.8] x [0, 0.8]` V/cm at 400 x 400 points.
    pub fn figure_default() -> Self {
        let a = Axis {
            min: 0.0,
            max: 0.8,
            steps: 400,
        };
        Self::new(a, a)
    }

    pub fn len(&self) -> usize {
        self.f_static.steps * self.f_rf.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `idx` in row-major order: RF amplitude is the slow index.
    #[inline]
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let i = idx % self.f_static.steps;
        let j = idx / self.f_static.steps;
        (self.f_static.value(i), self.f_rf.value(j))
    }
}

/// Values of a map on a [`FieldGrid`], row-major with RF amplitude slow.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap<T> {
    pub grid: FieldGrid,
    pub values: Vec<T>,
}

impl<T: Copy> GridMap<T> {
    pub fn at(&self, i_static: usize, j_rf: usize) -> T {
        self.values[j_rf * self.grid.f_static.steps + i_static]
    }

    /// Values along one row of constant RF amplitude.
    pub fn row(&self, j_rf: usize) -> &[T] {
        let n = self.grid.f_static.steps;
        &self.values[j_rf * n..(j_rf + 1) * n]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((f64, f64), T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(idx, &v)| (self.grid.point(idx), v))
    }
}

/// Evaluates `f(i)` for `i in 0..len` on up to `workers` threads.
///
/// Each index is computed exactly once by a pure kernel and written back by
/// index, so the result is identical for every worker count.
pub fn map_indexed<T, F>(len: usize, workers: NonZeroUsize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.get().min(len.max(1));
    if workers == 1 {
        return (0..len).map(f).collect();
    }
    let chunk = len.div_ceil(workers);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * chunk).min(len);
                let hi = ((w + 1) * chunk).min(len);
                s.spawn(move || (lo..hi).map(f).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Shorthand for a single worker.
pub fn one_worker() -> NonZeroUsize {
    NonZeroUsize::MIN
}
