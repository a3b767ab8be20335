//! Size limits and execution mode shared by the heavier operations.

/// Default cap on operator dimension (`n^m`).
pub const DEFAULT_MAX_DIM: usize = 1 << 16;
/// Default cap on `m` for anything that enumerates `S_m`.
pub const DEFAULT_MAX_SYM_DEGREE: usize = 8;
/// Default cap on `m` for character tables.
pub const DEFAULT_MAX_CHAR_DEGREE: usize = 12;
/// Cap on `m` for partition enumeration.
pub const DEFAULT_MAX_PARTITION_WEIGHT: usize = 40;

/// Environment variable that overrides [`DEFAULT_MAX_DIM`].
pub const SIZE_GUARD_ENV: &str = "SYMTRACE_SIZE_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub max_dim: usize,
    pub max_sym_degree: usize,
    pub max_char_degree: usize,
    pub execution: Execution,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_dim: DEFAULT_MAX_DIM,
            max_sym_degree: DEFAULT_MAX_SYM_DEGREE,
            max_char_degree: DEFAULT_MAX_CHAR_DEGREE,
            execution: Execution::default(),
        }
    }
}

impl Config {
    /// Defaults, with the size guard taken from `SYMTRACE_SIZE_GUARD` when set.
    pub fn from_env() -> Self {
        let mut config = Config::default();
        if let Some(guard) = std::env::var(SIZE_GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&g| g >= 1)
        {
            config.max_dim = guard;
        }
        config
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }
}
