//! Simplex taxonomy and filtration sweeps.
