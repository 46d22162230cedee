//! Data-parallel map with a sequential fallback.
//!
//! Every call site feeds an owned `Vec` and a pure function; results come
//! back in input order, so outputs are bit-identical whether or not the
//! `parallel` feature is enabled. Reductions over the results stay
//! sequential at the call sites for the same reason.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let out = map_collect((0..1000).collect::<Vec<_>>(), |x| x * 2);
        assert!(out.iter().enumerate().all(|(i, &v)| v == 2 * i as i32));
    }
}
