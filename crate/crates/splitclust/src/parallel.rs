//! Deterministic chunked reduction over point ranges.
//!
//! Work over `m` data points is split into fixed-size contiguous chunks of
//! [`CHUNK_SIZE`] points. Each chunk yields an independent partial result and
//! the partials are combined in chunk order, so results are bit-identical for
//! any worker count. The worker count is capped by the `CLUST_THREADS`
//! environment variable (0 or unset = all available cores).

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

/// Points per reduction chunk.
pub const CHUNK_SIZE: usize = 4096;

/// Worker cap, read once from `CLUST_THREADS`.
pub fn worker_count() -> usize {
    static WORKERS: OnceLock<usize> = OnceLock::new();
    *WORKERS.get_or_init(|| {
        let auto = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        match std::env::var("CLUST_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(0) | None => auto,
            Some(n) => n.min(auto),
        }
    })
}

/// Applies `work` to every chunk of `0..len` and returns the per-chunk
/// results in chunk order. `work` receives the chunk index and its range.
pub fn map_chunks<R, F>(len: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, Range<usize>) -> R + Sync,
{
    if len == 0 {
        return Vec::new();
    }
    let n_chunks = len.div_ceil(CHUNK_SIZE);
    let range_of = |c: usize| c * CHUNK_SIZE..((c + 1) * CHUNK_SIZE).min(len);
    let workers = worker_count().min(n_chunks);
    if workers <= 1 || n_chunks == 1 {
        return (0..n_chunks).map(|c| work(c, range_of(c))).collect();
    }

    let next = AtomicUsize::new(0);
    let mut per_worker: Vec<Vec<(usize, R)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let c = next.fetch_add(1, Ordering::Relaxed);
                        if c >= n_chunks {
                            break;
                        }
                        out.push((c, work(c, range_of(c))));
                    }
                    out
                })
            })
            .collect();
        per_worker = handles.into_iter().map(|h| h.join().unwrap()).collect();
    });

    let mut slots: Vec<Option<R>> = (0..n_chunks).map(|_| None).collect();
    for bucket in per_worker {
        for (c, r) in bucket {
            slots[c] = Some(r);
        }
    }
    slots.into_iter().map(|r| r.unwrap()).collect()
}
