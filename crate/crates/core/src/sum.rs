/// Pairwise (tree) summation. The reduction order depends only on the slice
/// length, so results are bit-stable across runs and thread counts.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}
