//! Execution strategy for the embarrassingly parallel loops (matrix assembly,
//! exhaustive identity checks).

/// `Parallel` falls back to sequential execution when the crate is built
/// without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// `(0..n).map(f)` collected in order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// The result for the smallest index where `f` returns `Some`.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().find_map_first(f)
            }
            _ => (0..n).find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let f = |i: usize| i * i;
        assert_eq!(Strategy::Sequential.map_range(100, f), Strategy::Parallel.map_range(100, f));
        let g = |i: usize| (i % 7 == 6 && i > 20).then_some(i);
        assert_eq!(Strategy::Parallel.find_first(1000, g), Some(27));
        assert_eq!(Strategy::Sequential.find_first(1000, g), Some(27));
    }
}
