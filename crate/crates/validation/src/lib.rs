//! Holds the workspace acceptance suite (`cargo test -p casimir-validation --test acceptance`).
