//! Minimal data-parallel map with deterministic output ordering.

/// Apply `f` to every index in `0..n`, using up to `threads` OS threads.
///
/// Results come back in index order regardless of scheduling, so parallel
/// and serial runs produce identical output.
pub fn map_indexed<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    // Contiguous chunks per thread; each returns (chunk_start, values).
    let chunk = n.div_ceil(threads);
    let mut pieces: Vec<(usize, Vec<T>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let f = &f;
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(n);
                scope.spawn(move || (lo, (lo..hi).map(f).collect::<Vec<T>>()))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    pieces.sort_by_key(|(lo, _)| *lo);
    pieces.into_iter().flat_map(|(_, v)| v).collect()
}
