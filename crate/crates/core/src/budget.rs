/// Enumeration and search limits. Every limit is explicit; nothing is raised
/// silently when a computation runs into one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n * log2(q)` for which a Grassmannian may be listed.
    pub enumeration_bits: u32,
    /// Largest `n * log2(q)` for frame enumeration.
    pub frame_bits: u32,
    /// Maximum number of frames returned by a single frame enumeration.
    pub max_frames: usize,
    /// Maximum number of planes added by the degree-of-inexactness search.
    pub max_added: usize,
    /// Vertex cap for the automorphism search.
    pub max_vertices: usize,
    /// Element cap for group closures.
    pub max_group_order: usize,
    /// Pair-count cap for exhaustive sweeps over involutions.
    pub max_pairs: usize,
}

impl Budget {
    /// `q^n <= 2^bits`, computed without floating point.
    pub fn fits(bits: u32, q: usize, n: usize) -> bool {
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(q as u128);
        }
        acc <= 1u128 << bits.min(127)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_bits: 20,
            frame_bits: 16,
            max_frames: 2_000_000,
            max_added: 6,
            max_vertices: 256,
            max_group_order: 1_000_000,
            max_pairs: 2_000,
        }
    }
}

impl Budget {
    /// Apply a `name=value` override.
    pub fn set(&mut self, assignment: &str) -> crate::Result<()> {
        let bad = || crate::Error::OutOfRange(format!("budget override {assignment:?}"));
        let (name, value) = assignment.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "enumeration_bits" => self.enumeration_bits = value as u32,
            "frame_bits" => self.frame_bits = value as u32,
            "max_frames" => self.max_frames = value,
            "max_added" => self.max_added = value,
            "max_vertices" => self.max_vertices = value,
            "max_group_order" => self.max_group_order = value,
            "max_pairs" => self.max_pairs = value,
            _ => return Err(bad()),
        }
        Ok(())
    }
}
