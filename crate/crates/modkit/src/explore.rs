//! Parallel driver and JSON-lines output for the dimension-equation search.

use modkit_core::explorer::{
    enumerate_integral_solutions, merge_partitions, search_partition, DimensionSolution,
    EnumerationResult, ExplorerError, SearchSpace,
};
use rayon::prelude::*;
use serde::Serialize;

/// Same result as the sequential search, whatever the thread schedule.
pub fn enumerate(
    rank: usize,
    primes: &[u64],
    max_exp: u32,
    cap: u64,
    parallel: bool,
) -> Result<EnumerationResult, ExplorerError> {
    if !parallel {
        return enumerate_integral_solutions(rank, primes, max_exp, cap);
    }
    let space = SearchSpace::new(rank, primes, max_exp)?;
    let outcomes = (0..space.partitions())
        .into_par_iter()
        .map(|first| search_partition(&space, first, cap))
        .collect();
    Ok(merge_partitions(outcomes, cap))
}

#[derive(Serialize)]
struct Line<'a> {
    #[serde(rename = "D2")]
    d2: u128,
    dims2: &'a [u128],
}

/// `{"D2":2,"dims2":[1]}`.
pub fn json_line(s: &DimensionSolution) -> String {
    serde_json::to_string(&Line {
        d2: s.d2,
        dims2: &s.dims_squared,
    })
    .expect("integers serialize")
}
