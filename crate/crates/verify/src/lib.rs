//! Acceptance checks for the meancycle library; see `tests/acceptance.rs`.
