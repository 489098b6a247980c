use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const RATING_MIN: f64 = 0.5;
pub const RATING_MAX: f64 = 5.0;
/// Share of malformed rows above which parsing aborts.
pub const MAX_MALFORMED_SHARE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rating {
    pub user_id: u32,
    pub movie_id: u32,
    pub rating: f64,
    pub timestamp: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Movie {
    pub title: String,
    pub genres: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParseReport {
    pub rating_rows: u64,
    pub malformed_ratings: u64,
    /// Well-formed ratings whose movie id is missing from the movies file; dropped.
    pub unmatched_ratings: u64,
    pub movie_rows: u64,
    pub malformed_movies: u64,
}

/// Ratings joined against the movie table.
#[derive(Clone, Debug, PartialEq)]
pub struct RatingsCorpus {
    pub ratings: Vec<Rating>,
    pub movies: HashMap<u32, Movie>,
    pub report: ParseReport,
}

impl RatingsCorpus {
    /// Reads the public MovieLens layout: `ratings.csv` with header
    /// `userId,movieId,rating,timestamp` and `movies.csv` with header
    /// `movieId,title,genres` (genres separated by `|`).
    pub fn read(ratings: impl AsRef<Path>, movies: impl AsRef<Path>) -> Result<Self> {
        let open = |p: &Path| {
            File::open(p)
                .map(BufReader::new)
                .map_err(|e| Error::Dataset(format!("cannot read {}: {e}", p.display())))
        };
        Self::from_readers(open(ratings.as_ref())?, open(movies.as_ref())?)
    }

    pub fn from_readers<R1: Read, R2: Read>(ratings: R1, movies: R2) -> Result<Self> {
        let mut report = ParseReport::default();
        let movies = parse_movies(movies, &mut report)?;

        let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(ratings);
        expect_header(reader.headers()?, &["userId", "movieId", "rating"], "ratings")?;
        let mut out = Vec::new();
        for record in reader.records() {
            report.rating_rows += 1;
            let parsed = record.ok().and_then(|r| parse_rating(&r));
            match parsed {
                Some(r) if movies.contains_key(&r.movie_id) => out.push(r),
                Some(_) => report.unmatched_ratings += 1,
                None => report.malformed_ratings += 1,
            }
        }
        if report.rating_rows == 0 {
            return Err(Error::Dataset("no ratings".into()));
        }
        check_share(report.malformed_ratings, report.rating_rows, "ratings")?;
        if report.malformed_ratings + report.unmatched_ratings > 0 {
            log::warn!(
                "skipped {} malformed and {} unmatched rating rows",
                report.malformed_ratings,
                report.unmatched_ratings
            );
        }
        Ok(Self {
            ratings: out,
            movies,
            report,
        })
    }

    /// All ratings per movie, in file order.
    pub fn ratings_by_movie(&self) -> HashMap<u32, Vec<f64>> {
        let mut by_movie: HashMap<u32, Vec<f64>> = HashMap::new();
        for r in &self.ratings {
            by_movie.entry(r.movie_id).or_default().push(r.rating);
        }
        by_movie
    }

    pub fn find_title(&self, title: &str) -> Option<u32> {
        let mut ids: Vec<u32> = self
            .movies
            .iter()
            .filter(|(_, m)| m.title == title)
            .map(|(&id, _)| id)
            .collect();
        ids.sort_unstable();
        ids.first().copied()
    }
}

fn parse_movies<R: Read>(input: R, report: &mut ParseReport) -> Result<HashMap<u32, Movie>> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(input);
    expect_header(reader.headers()?, &["movieId", "title", "genres"], "movies")?;
    let mut movies = HashMap::new();
    for record in reader.records() {
        report.movie_rows += 1;
        let parsed = record.ok().and_then(|r| {
            if r.len() != 3 {
                return None;
            }
            let id: u32 = r[0].trim().parse().ok()?;
            let genres = r[2]
                .split('|')
                .map(str::trim)
                .filter(|g| !g.is_empty() && *g != "(no genres listed)")
                .map(String::from)
                .collect();
            Some((id, Movie { title: r[1].to_string(), genres }))
        });
        match parsed {
            Some((id, m)) => {
                movies.insert(id, m);
            }
            None => report.malformed_movies += 1,
        }
    }
    check_share(report.malformed_movies, report.movie_rows, "movies")?;
    Ok(movies)
}

fn parse_rating(r: &csv::StringRecord) -> Option<Rating> {
    if r.len() < 3 || r.len() > 4 {
        return None;
    }
    let rating: f64 = r[2].trim().parse().ok()?;
    if !(RATING_MIN..=RATING_MAX).contains(&rating) {
        return None;
    }
    Some(Rating {
        user_id: r[0].trim().parse().ok()?,
        movie_id: r[1].trim().parse().ok()?,
        rating,
        timestamp: match r.get(3) {
            Some(t) => t.trim().parse().ok()?,
            None => 0,
        },
    })
}

fn expect_header(header: &csv::StringRecord, expected: &[&str], what: &str) -> Result<()> {
    let ok = header.len() >= expected.len() && expected.iter().zip(header.iter()).all(|(e, h)| h.trim() == *e);
    if ok {
        Ok(())
    } else {
        Err(Error::Dataset(format!(
            "{what} file: missing header `{}` (found `{}`)",
            expected.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )))
    }
}

fn check_share(bad: u64, total: u64, what: &str) -> Result<()> {
    if total > 0 && bad as f64 > MAX_MALFORMED_SHARE * total as f64 {
        return Err(Error::Dataset(format!(
            "{what} file: {bad} of {total} rows malformed (more than {}%)",
            MAX_MALFORMED_SHARE * 100.0
        )));
    }
    Ok(())
}
