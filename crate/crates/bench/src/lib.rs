//! Criterion benchmarks for the special-function kernels and the sweep driver.
