//! MovieLens ratings as a grouped bandit: portfolios are arms, genres are attributes.

mod corpus;
mod portfolio;
mod reference;

pub use corpus::{Movie, ParseReport, Rating, RatingsCorpus, MAX_MALFORMED_SHARE, RATING_MAX, RATING_MIN};
pub use portfolio::{
    auto_select_portfolios, build_instance, AutoSelect, MovieRef, Portfolio, PortfolioSpec,
    DEFAULT_MIN_RATINGS, DEFAULT_NORMALIZER, DEFAULT_THRESHOLD,
};
pub use reference::{
    reference_portfolio_spec, reference_surrogate, REFERENCE_GENRES, REFERENCE_MEANS, REFERENCE_THRESHOLD, REFERENCE_TITLES,
};
