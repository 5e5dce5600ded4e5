//! Holds the end-to-end acceptance checks under `tests/`.
