use crate::error::{Error, Result};

/// Default relative tolerance for rank, membership and residual decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Size caps that keep every construction at desk scale.
///
/// All caps can be overridden programmatically or, through the CLI, with the
/// `VNLAB_CAPS` environment variable (`key=value` pairs separated by commas,
/// e.g. `VNLAB_CAPS=crossed_dim=1024,ball=2000000`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// `|G|·|X|` bound for crossed-product representations.
    pub crossed_dim: usize,
    /// Atom bound `|base|^|G|` for Bernoulli actions.
    pub bernoulli_atoms: usize,
    /// Word-metric ball enumeration bound.
    pub ball_size: usize,
    /// Order bound for table-backed finite groups.
    pub group_order: usize,
    /// Matrix-group closure bound in `torus_action`.
    pub torus_closure: usize,
    /// Group order bound for the left regular representation.
    pub left_regular: usize,
    /// Element-enumeration bound for centralizer-style sweeps.
    pub enumeration: usize,
    /// Bound on the number of projection-trace combinations in `trace_spectrum`.
    pub spectrum_points: usize,
    /// Vertex bound for the brute-force graph isomorphism search.
    pub graph_vertices: usize,
    /// `k·n` bound for the copies graph.
    pub copies_vertices: usize,
    /// Vertex bound for the exhaustive `GL(n,p)` isomorphism search.
    pub exact_iso_vertices: usize,
    /// `p^n` bound for fingerprint computation.
    pub fingerprint_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            crossed_dim: 512,
            bernoulli_atoms: 4096,
            ball_size: 1_000_000,
            group_order: 4096,
            torus_closure: 100_000,
            left_regular: 256,
            enumeration: 1_000_000,
            spectrum_points: 1_000_000,
            graph_vertices: 8,
            copies_vertices: 64,
            exact_iso_vertices: 4,
            fingerprint_points: 531_441, // 3^12
        }
    }
}

impl Caps {
    /// Parses a `key=value,key=value` override string (the `VNLAB_CAPS` format).
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("cap value in `{item}` is not an integer")))?;
            if value == 0 {
                return Err(Error::invalid(format!("cap `{key}` must be positive")));
            }
            match key.trim() {
                "crossed_dim" => self.crossed_dim = value,
                "bernoulli" => self.bernoulli_atoms = value,
                "ball" => self.ball_size = value,
                "group_order" => self.group_order = value,
                "torus" => self.torus_closure = value,
                "left_regular" => self.left_regular = value,
                "enumeration" => self.enumeration = value,
                "spectrum" => self.spectrum_points = value,
                "graph" => self.graph_vertices = value,
                "copies" => self.copies_vertices = value,
                "exact_iso" => self.exact_iso_vertices = value,
                "fingerprint" => self.fingerprint_points = value,
                other => return Err(Error::invalid(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Reads overrides from the `VNLAB_CAPS` environment variable, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("VNLAB_CAPS") {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_string_round_trips() {
        let caps = Caps::default()
            .with_overrides("crossed_dim=1024, ball=42")
            .unwrap();
        assert_eq!(caps.crossed_dim, 1024);
        assert_eq!(caps.ball_size, 42);
        assert_eq!(caps.group_order, Caps::default().group_order);
    }

    #[test]
    fn bad_overrides_are_rejected() {
        assert!(Caps::default().with_overrides("nope=3").is_err());
        assert!(Caps::default().with_overrides("ball").is_err());
        assert!(Caps::default().with_overrides("ball=0").is_err());
    }
}
