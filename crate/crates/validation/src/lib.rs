//! Acceptance suite lives under `tests/`.
