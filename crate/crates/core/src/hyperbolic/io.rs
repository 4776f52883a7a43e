//! Point-set files: one point per line as whitespace-separated `x y`, with an
//! optional weight in a third column. Blank lines and `#` comments are skipped.

use super::karcher::MassDistribution;
use super::point::HPoint;
use crate::error::{Error, Result};

pub fn parse_points(text: &str) -> Result<MassDistribution> {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut weighted = None;
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line:?}", no + 1));
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("not a number"))?;
        if !(2..=3).contains(&cols.len()) {
            return Err(bad("expected `x y` or `x y w`"));
        }
        let has_w = cols.len() == 3;
        if *weighted.get_or_insert(has_w) != has_w {
            return Err(bad("weights must be given on every line or on none"));
        }
        points.push(HPoint::new(cols[0], cols[1]).map_err(|e| bad(&e.to_string()))?);
        weights.push(if has_w { cols[2] } else { 1.0 });
    }
    MassDistribution::new(points, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_plain_and_weighted_files() {
        let m = parse_points("0 1\n# comment\n\n1.5 2\n").unwrap();
        assert_eq!(m.points().len(), 2);
        assert_eq!(m.weights(), &[0.5, 0.5]);
        let m = parse_points("0 1 1\n1 1 3\n").unwrap();
        assert_eq!(m.weights(), &[0.25, 0.75]);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_points("0 -1\n").is_err());
        assert!(parse_points("0 1 1\n1 1\n").is_err());
        assert!(parse_points("a b\n").is_err());
        assert!(parse_points("1\n").is_err());
        assert!(parse_points("").is_err());
    }
}
