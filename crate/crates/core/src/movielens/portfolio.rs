use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::Path;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::corpus::RatingsCorpus;
use crate::bandit::{AttributeDistribution, BanditInstance};
use crate::error::{Error, Result};

pub const DEFAULT_THRESHOLD: f64 = 0.73;
pub const DEFAULT_MIN_RATINGS: usize = 800;
pub const DEFAULT_NORMALIZER: f64 = 5.0;

/// A movie named by id or by exact title.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MovieRef {
    Id(u32),
    Title(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Portfolio {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// genre → movie; the key set must equal the spec's genre list.
    pub movies: BTreeMap<String, MovieRef>,
}

/// Arms (portfolios) × attributes (genres) over a ratings corpus.
///
/// ```json
/// {"genres": ["Comedy", "Drama"], "threshold": 0.73,
///  "arms": [{"label": "p1", "movies": {"Comedy": 1197, "Drama": "American Beauty (1999)"}}]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioSpec {
    /// Attribute order.
    pub genres: Vec<String>,
    pub arms: Vec<Portfolio>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_min_ratings")]
    pub min_ratings: usize,
    #[serde(default = "default_normalizer")]
    pub normalizer: f64,
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}
fn default_min_ratings() -> usize {
    DEFAULT_MIN_RATINGS
}
fn default_normalizer() -> f64 {
    DEFAULT_NORMALIZER
}

impl PortfolioSpec {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Inputs to automatic portfolio selection.
#[derive(Clone, Debug, PartialEq)]
pub struct AutoSelect {
    pub arms: usize,
    pub genres: usize,
    pub threshold: f64,
    pub min_ratings: usize,
    pub normalizer: f64,
    pub seed: u64,
}

impl Default for AutoSelect {
    fn default() -> Self {
        Self {
            arms: 3,
            genres: 5,
            threshold: DEFAULT_THRESHOLD,
            min_ratings: DEFAULT_MIN_RATINGS,
            normalizer: DEFAULT_NORMALIZER,
            seed: 0,
        }
    }
}

/// Turns each portfolio movie into an empirical attribute over its normalised ratings.
///
/// Ratings are divided by `normalizer` and clamped to [0, 1] here, once.
pub fn build_instance(corpus: &RatingsCorpus, spec: &PortfolioSpec) -> Result<BanditInstance<f64>> {
    if spec.arms.is_empty() || spec.genres.is_empty() {
        return Err(Error::Portfolio("need at least one portfolio and one genre".into()));
    }
    if !spec.normalizer.is_finite() || spec.normalizer <= 0.0 {
        return Err(Error::Portfolio(format!("normalizer must be positive, got {}", spec.normalizer)));
    }
    let genre_set: BTreeSet<&String> = spec.genres.iter().collect();
    if genre_set.len() != spec.genres.len() {
        return Err(Error::Portfolio("duplicate genre in genre list".into()));
    }
    let by_movie = corpus.ratings_by_movie();
    let mut arms = Vec::with_capacity(spec.arms.len());
    for (i, p) in spec.arms.iter().enumerate() {
        let keys: BTreeSet<&String> = p.movies.keys().collect();
        if keys != genre_set {
            return Err(Error::Portfolio(format!(
                "portfolio {} genres {:?} do not match {:?}",
                i + 1,
                keys,
                spec.genres
            )));
        }
        let mut seen = HashSet::new();
        let mut row = Vec::with_capacity(spec.genres.len());
        for genre in &spec.genres {
            let id = resolve(corpus, &p.movies[genre])?;
            if !seen.insert(id) {
                return Err(Error::Portfolio(format!("portfolio {} repeats movie {id}", i + 1)));
            }
            let ratings = by_movie.get(&id).map(Vec::as_slice).unwrap_or(&[]);
            if ratings.len() < spec.min_ratings {
                return Err(Error::Portfolio(format!(
                    "movie {id} has {} ratings, fewer than the required {}",
                    ratings.len(),
                    spec.min_ratings
                )));
            }
            let movie = &corpus.movies[&id];
            if !movie.genres.iter().any(|g| g == genre) {
                log::warn!("movie {id} ({}) is not listed under {genre}", movie.title);
            }
            let values = ratings.iter().map(|&r| (r / spec.normalizer).clamp(0.0, 1.0)).collect();
            row.push(AttributeDistribution::empirical(values)?);
        }
        arms.push(row);
    }
    let labels = spec
        .arms
        .iter()
        .enumerate()
        .map(|(i, p)| p.label.clone().unwrap_or_else(|| format!("portfolio {}", i + 1)))
        .collect();
    BanditInstance::new(arms, spec.threshold)?
        .with_arm_labels(labels)?
        .with_attribute_labels(spec.genres.clone())
}

fn resolve(corpus: &RatingsCorpus, r: &MovieRef) -> Result<u32> {
    match r {
        MovieRef::Id(id) if corpus.movies.contains_key(id) => Ok(*id),
        MovieRef::Id(id) => Err(Error::Portfolio(format!("movie id {id} not in the movies file"))),
        MovieRef::Title(t) => corpus
            .find_title(t)
            .ok_or_else(|| Error::Portfolio(format!("no movie titled `{t}`"))),
    }
}

/// Picks genres and movies for `arms` portfolios.
///
/// Movies need at least `min_ratings` ratings. The `genres` most frequent genres
/// among them (ties by name) become the attributes, in frequency order. A movie
/// is eligible for every top genre it lists. Slots are filled portfolio by
/// portfolio, genre by genre, each by a seeded uniform draw among eligible movies
/// not used anywhere yet.
pub fn auto_select_portfolios(corpus: &RatingsCorpus, request: &AutoSelect) -> Result<PortfolioSpec> {
    if request.arms == 0 || request.genres == 0 {
        return Err(Error::Portfolio("need at least one portfolio and one genre".into()));
    }
    let counts: HashMap<u32, usize> = corpus.ratings.iter().fold(HashMap::new(), |mut acc, r| {
        *acc.entry(r.movie_id).or_insert(0) += 1;
        acc
    });
    let mut eligible: Vec<u32> = counts
        .iter()
        .filter(|&(_, &n)| n >= request.min_ratings)
        .map(|(&id, _)| id)
        .collect();
    eligible.sort_unstable();
    let needed = request.arms * request.genres;
    if eligible.len() < needed {
        return Err(Error::Portfolio(format!(
            "{} movies have at least {} ratings; {} are needed",
            eligible.len(),
            request.min_ratings,
            needed
        )));
    }

    let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
    for id in &eligible {
        for g in &corpus.movies[id].genres {
            *freq.entry(g.as_str()).or_insert(0) += 1;
        }
    }
    if freq.len() < request.genres {
        return Err(Error::Portfolio(format!(
            "only {} distinct genres among eligible movies; {} requested",
            freq.len(),
            request.genres
        )));
    }
    let mut ranked: Vec<(&str, usize)> = freq.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let genres: Vec<String> = ranked[..request.genres].iter().map(|(g, _)| g.to_string()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(request.seed);
    let mut used = HashSet::new();
    let mut arms = Vec::with_capacity(request.arms);
    for a in 0..request.arms {
        let mut movies = BTreeMap::new();
        for genre in &genres {
            let pool: Vec<u32> = eligible
                .iter()
                .copied()
                .filter(|id| !used.contains(id) && corpus.movies[id].genres.contains(genre))
                .collect();
            let &pick = pool.choose(&mut rng).ok_or_else(|| {
                Error::Portfolio(format!("not enough eligible {genre} movies for portfolio {}", a + 1))
            })?;
            used.insert(pick);
            movies.insert(genre.clone(), MovieRef::Id(pick));
        }
        arms.push(Portfolio {
            label: Some(format!("portfolio {}", a + 1)),
            movies,
        });
    }
    Ok(PortfolioSpec {
        genres,
        arms,
        threshold: request.threshold,
        min_ratings: request.min_ratings,
        normalizer: request.normalizer,
    })
}
