//! The three-portfolio MovieLens example: genres, titles and per-movie mean ratings.

use std::collections::BTreeMap;

use super::portfolio::{MovieRef, Portfolio, PortfolioSpec, DEFAULT_MIN_RATINGS, DEFAULT_NORMALIZER};
use crate::bandit::{AttributeDistribution, BanditInstance};
use crate::error::Result;

pub const REFERENCE_THRESHOLD: f64 = 0.73;

pub const REFERENCE_GENRES: [&str; 5] = ["Comedy", "Action", "Drama", "Thriller", "Sci-Fi"];

pub const REFERENCE_TITLES: [[&str; 5]; 3] = [
    [
        "Princess Bride, The (1987)",
        "Star Wars: Episode IV - A New Hope (1977)",
        "American Beauty (1999)",
        "Dark City (1998)",
        "Army of Darkness (1993)",
    ],
    [
        "Blazing Saddles (1974)",
        "Star Wars: Episode VI - Return of the Jedi (1983)",
        "Bridge on the River Kwai, The (1957)",
        "Con Air (1997)",
        "X-Files: Fight the Future, The (1998)",
    ],
    [
        "My Cousin Vinny (1992)",
        "Mission: Impossible (1996)",
        "Leaving Las Vegas (1995)",
        "Devil's Advocate, The (1997)",
        "Mad Max (1979)",
    ],
];

/// Normalised mean rating of each movie in [`REFERENCE_TITLES`].
pub const REFERENCE_MEANS: [[f64; 5]; 3] = [
    [0.826, 0.824, 0.821, 0.761, 0.747],
    [0.772, 0.799, 0.819, 0.640, 0.668],
    [0.721, 0.680, 0.735, 0.709, 0.706],
];

/// Portfolio spec naming the example's movies by title.
pub fn reference_portfolio_spec() -> PortfolioSpec {
    let arms = REFERENCE_TITLES
        .iter()
        .enumerate()
        .map(|(i, titles)| Portfolio {
            label: Some(format!("portfolio {}", i + 1)),
            movies: REFERENCE_GENRES
                .iter()
                .zip(titles)
                .map(|(g, t)| (g.to_string(), MovieRef::Title(t.to_string())))
                .collect::<BTreeMap<_, _>>(),
        })
        .collect();
    PortfolioSpec {
        genres: REFERENCE_GENRES.iter().map(|g| g.to_string()).collect(),
        arms,
        threshold: REFERENCE_THRESHOLD,
        min_ratings: DEFAULT_MIN_RATINGS,
        normalizer: DEFAULT_NORMALIZER,
    }
}

/// Bernoulli stand-in with the example's means, for use without the dataset.
///
/// Only portfolio 1 is feasible, so the correct decision is arm 1.
pub fn reference_surrogate() -> BanditInstance<f64> {
    let arms = REFERENCE_MEANS
        .iter()
        .map(|row| row.iter().map(|&p| AttributeDistribution::bernoulli(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()
        .expect("reference means are valid probabilities");
    BanditInstance::new(arms, REFERENCE_THRESHOLD)
        .and_then(|i| i.with_arm_labels((1..=3).map(|i| format!("portfolio {i}")).collect()))
        .and_then(|i| i.with_attribute_labels(REFERENCE_GENRES.iter().map(|g| g.to_string()).collect()))
        .expect("reference instance is well formed")
}
