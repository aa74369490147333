//! Fixtures shared by the kernel benchmarks.

use uqminus::canbasis::CanonicalContext;
use uqminus::rootdata::{RootDatum, Weight};

/// A fresh context with empty caches.
pub fn context(name: &str, max_height: u32) -> CanonicalContext {
    CanonicalContext::new(RootDatum::named(name).expect("known type"), max_height)
}

/// Builds every canonical table up to the bound and returns the column count.
pub fn build_all(ctx: &CanonicalContext) -> usize {
    Weight::all_up_to_height(ctx.datum().rank(), ctx.algebra().max_height())
        .iter()
        .map(|nu| ctx.table(nu).expect("table builds").len())
        .sum()
}
