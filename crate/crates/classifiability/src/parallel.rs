//! Minimal deterministic data-parallel helper.
//!
//! Work is split into contiguous index ranges, one per worker, and each
//! worker writes only into its own output slots. Since slot `i` is a pure
//! function of `i`, results are identical for any worker count.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CLASSIFIABILITY_THREADS";

/// Resolves the effective worker count: an explicit request wins, then the
/// `CLASSIFIABILITY_THREADS` environment variable, then the machine default.
pub fn effective_threads(requested: Option<usize>) -> usize {
    if let Some(t) = requested {
        return t.max(1);
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t >= 1 {
                return t;
            }
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Computes `f(i)` for every `i in 0..n` on up to `threads` workers and
/// returns the results in index order.
pub fn par_map<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send + Default + Clone,
    F: Fn(usize) -> T + Sync,
{
    let mut out = vec![T::default(); n];
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 || n < 128 {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
        return out;
    }
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (t, slice) in out.chunks_mut(chunk).enumerate() {
            let f = &f;
            let start = t * chunk;
            scope.spawn(move || {
                for (j, slot) in slice.iter_mut().enumerate() {
                    *slot = f(start + j);
                }
            });
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_is_worker_count_independent() {
        let f = |i: usize| (i as f64).sqrt() * 3.0 - 1.0;
        let serial = par_map(1000, 1, f);
        for threads in [2, 3, 8, 64] {
            assert_eq!(par_map(1000, threads, f), serial);
        }
    }

    #[test]
    fn par_map_handles_tiny_inputs() {
        assert_eq!(par_map(0, 4, |i| i), Vec::<usize>::new());
        assert_eq!(par_map(3, 4, |i| i * 2), vec![0, 2, 4]);
    }

    #[test]
    fn explicit_thread_request_wins() {
        assert_eq!(effective_threads(Some(3)), 3);
        assert_eq!(effective_threads(Some(0)), 1);
    }
}
