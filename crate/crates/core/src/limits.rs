/// Bounds on exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest hyperplane count accepted by full linear-subclass enumeration.
    pub max_hyperplanes: usize,
    /// Largest number of search states any enumeration may visit.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_hyperplanes: 20,
            max_states: 2_000_000,
        }
    }
}

pub const SIZE_BOUND_VAR: &str = "TROPMAT_SIZE_BOUND";

impl Limits {
    /// Defaults, with `max_hyperplanes` taken from `TROPMAT_SIZE_BOUND` if set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = std::env::var(SIZE_BOUND_VAR).ok().and_then(|s| s.trim().parse().ok()) {
            l.max_hyperplanes = v;
        }
        l
    }
}
