//! Data-parallel helpers. With the `parallel` feature the work runs on the
//! rayon pool unless switched off at runtime; otherwise it runs sequentially.
//! Results never depend on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Turns parallel evaluation on or off at runtime (no effect without the feature).
pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

pub fn enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

/// Below this many work items the sequential path is always taken.
const MIN_PARALLEL: usize = 64;

/// `(0..n).map(f).collect()`.
pub fn map<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if enabled() && n >= MIN_PARALLEL {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// The result for the least index at which `f` returns `Some`.
pub fn find_first<R, F>(n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if enabled() && n >= MIN_PARALLEL {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(f);
    }
    (0..n).find_map(f)
}

/// Indices in `0..n` satisfying `pred`, in increasing order.
pub fn filter<F>(n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if enabled() && n >= MIN_PARALLEL {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
    }
    (0..n).filter(|&i| pred(i)).collect()
}

/// Whether `pred` holds for every index.
pub fn all<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_first(n, |i| if pred(i) { None } else { Some(()) }).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_match_is_leftmost() {
        let r = find_first(10_000, |i| if i % 997 == 500 { Some(i) } else { None });
        assert_eq!(r, Some(500));
    }

    #[test]
    fn filter_keeps_order() {
        let v = filter(1000, |i| i % 7 == 3);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v.len(), 143);
    }
}
