//! Float helpers for `no_std` builds, backed by `libm`.

pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// Ceiling with a tiny relative guard so that values a hair above an
/// integer (from float round-off in otherwise exact formulas) do not get
/// bumped to the next integer.
pub(crate) fn ceil_guarded(x: f64) -> f64 {
    libm::ceil(x - 1e-9 * libm::fmax(1.0, libm::fabs(x)))
}

/// Floor with the mirror-image guard of [`ceil_guarded`].
pub(crate) fn floor_guarded(x: f64) -> f64 {
    libm::floor(x + 1e-9 * libm::fmax(1.0, libm::fabs(x)))
}
