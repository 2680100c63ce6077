//! Published reference ranking of the 36 model pairs under the
//! original full-scale flux-overlap study, used as the comparison
//! baseline for rank correlation and the zero-pair regression checks.

use crate::brdf::Model;

use Model::*;

/// The 29 pairs with a strictly positive reference error, in rank
/// order (rank 1 first), with their published error values.
pub const REFERENCE_RANKING: [(Model, Model, f64); 29] = [
    (Ward, Ashikhmin, 0.084121),
    (Ashikhmin, Strauss, 0.046296),
    (Ashikhmin, Lafortune, 0.040771),
    (Ashikhmin, HeTorrance, 0.038811),
    (Ward, Strauss, 0.036682),
    (Ward, Lafortune, 0.032664),
    (SchlickLewis, Ashikhmin, 0.029034),
    (PoulinFournier, Ashikhmin, 0.027088),
    (PoulinFournier, Ward, 0.024580),
    (SchlickLewis, Ward, 0.022679),
    (CookTorrance, Ashikhmin, 0.019312),
    (Ward, HeTorrance, 0.017198),
    (CookTorrance, Ward, 0.014297),
    (Ashikhmin, Phong, 0.011677),
    (PoulinFournier, Strauss, 0.008398),
    (CookTorrance, PoulinFournier, 0.007648),
    (PoulinFournier, HeTorrance, 0.007432),
    (PoulinFournier, Lafortune, 0.006559),
    (SchlickLewis, PoulinFournier, 0.005779),
    (CookTorrance, Strauss, 0.004412),
    (Ward, Phong, 0.003778),
    (CookTorrance, Lafortune, 0.003719),
    (SchlickLewis, Lafortune, 0.003660),
    (SchlickLewis, Strauss, 0.003131),
    (PoulinFournier, Phong, 0.000580),
    (Strauss, Lafortune, 0.000275),
    (Strauss, Phong, 0.000083),
    (Strauss, HeTorrance, 0.000066),
    (Lafortune, Phong, 0.000003),
];

/// The seven pairs whose reference error is exactly zero (tied at the
/// bottom of the published ranking).
pub const REFERENCE_ZERO_PAIRS: [(Model, Model); 7] = [
    (SchlickLewis, Phong),
    (SchlickLewis, HeTorrance),
    (SchlickLewis, CookTorrance),
    (Phong, HeTorrance),
    (Lafortune, HeTorrance),
    (CookTorrance, Phong),
    (CookTorrance, HeTorrance),
];

/// Order-free pair key.
pub fn pair_key(a: Model, b: Model) -> (Model, Model) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Reference rank of a pair: `1..=29` for the ranked pairs, `33.0`
/// (the midpoint of the seven-way tie across ranks 30–36) for the
/// zero pairs.
pub fn reference_rank(a: Model, b: Model) -> Option<f64> {
    let key = pair_key(a, b);
    if let Some(idx) = REFERENCE_RANKING
        .iter()
        .position(|&(x, y, _)| pair_key(x, y) == key)
    {
        return Some((idx + 1) as f64);
    }
    REFERENCE_ZERO_PAIRS
        .iter()
        .any(|&(x, y)| pair_key(x, y) == key)
        .then_some(33.0)
}

/// Published reference error of a pair (zero for the tied pairs).
pub fn reference_error(a: Model, b: Model) -> Option<f64> {
    let key = pair_key(a, b);
    if let Some(&(_, _, e)) = REFERENCE_RANKING
        .iter()
        .find(|&&(x, y, _)| pair_key(x, y) == key)
    {
        return Some(e);
    }
    REFERENCE_ZERO_PAIRS
        .iter()
        .any(|&(x, y)| pair_key(x, y) == key)
        .then_some(0.0)
}

/// `true` when the pair is one of the seven reference-zero pairs.
pub fn is_reference_zero(a: Model, b: Model) -> bool {
    let key = pair_key(a, b);
    REFERENCE_ZERO_PAIRS
        .iter()
        .any(|&(x, y)| pair_key(x, y) == key)
}
