/// Enumeration caps shared by the exponential-time operations.
///
/// The defaults keep every search at desk scale; callers can raise them
/// explicitly, and the CLI additionally honors the `STABKIT_LIMITS`
/// environment variable (`max_vertices=24,max_subset_size=6`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count admitted to enumeration-backed operations
    /// (subset enumeration over `2^|V|` and friends).
    pub max_vertices: usize,
    /// Largest extra edge-subset (or replication-vector weight) explored by
    /// the ascending searches, beyond the forced part (bridges).
    pub max_subset_size: usize,
    /// Node budget for the ear-decomposition backtracking search.
    pub max_search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 24,
            max_subset_size: 6,
            max_search_nodes: 50_000_000,
        }
    }
}

impl Limits {
    /// Parse overrides of the form `max_vertices=24,max_subset_size=6`.
    /// Unknown keys are rejected; whitespace around entries is ignored.
    pub fn apply_overrides(mut self, spec: &str) -> crate::Result<Self> {
        for item in spec.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) = item.split_once('=').ok_or_else(|| {
                crate::Error::Parse(format!("limit override `{item}` is not key=value"))
            })?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad limit value in `{item}`")))?;
            match key.trim() {
                "max_vertices" => self.max_vertices = value as usize,
                "max_subset_size" => self.max_subset_size = value as usize,
                "max_search_nodes" => self.max_search_nodes = value,
                other => {
                    return Err(crate::Error::Parse(format!("unknown limit key `{other}`")));
                }
            }
        }
        Ok(self)
    }
}
