//! Parameter tables for the two-state channel.
//!
//! Plain text, one record per line:
//!
//! ```text
//! # environment elevation band state unit mu_ma sigma_ma g1 g2 h1 h2 dur_mu dur_sigma dur_min
//! @source synthetic
//! urban 20 S good s -4.0 1.4 -0.05 0.5 0.05 -16.0 1.386 0.8 0.5
//! urban 20 S bad  s -13.5 3.5 -0.10 1.5 0.10 -12.0 1.099 0.7 0.3
//! ```
//!
//! `#` starts a comment. `@source synthetic|itu` labels where the numbers come
//! from. Every (environment, elevation, band) needs both a `good` and a `bad`
//! record with the same unit (`s` or `m`). Only the elevations available for an
//! environment are accepted.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::{ChannelState, DurationUnit, LmsStateParams, StatePair};
use crate::error::{Error, Result};

const SYNTHETIC_TABLE: &str = include_str!("../../data/lms_synthetic.txt");

const ALL_ELEVATIONS: [u32; 5] = [20, 30, 45, 60, 70];
const RESIDENTIAL_ELEVATIONS: [u32; 4] = [20, 30, 60, 70];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Environment {
    Urban,
    Suburban,
    RuralWooded,
    Village,
    Residential,
}

impl Environment {
    pub const ALL: [Environment; 5] = [
        Self::Urban,
        Self::Suburban,
        Self::RuralWooded,
        Self::Village,
        Self::Residential,
    ];

    /// Elevations (degrees) for which statistics exist in the 1.5-3 GHz band.
    pub fn available_elevations(self) -> &'static [u32] {
        match self {
            Self::Residential => &RESIDENTIAL_ELEVATIONS,
            _ => &ALL_ELEVATIONS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Urban => "urban",
            Self::Suburban => "suburban",
            Self::RuralWooded => "rural_wooded",
            Self::Village => "village",
            Self::Residential => "residential",
        }
    }
}

impl std::fmt::Display for Environment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Environment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
            "urban" => Ok(Self::Urban),
            "suburban" => Ok(Self::Suburban),
            "rural_wooded" | "ruralwooded" => Ok(Self::RuralWooded),
            "village" => Ok(Self::Village),
            "residential" => Ok(Self::Residential),
            _ => Err(Error::Config(format!("unknown environment '{s}'"))),
        }
    }
}

/// Where the numbers of a table come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSource {
    Synthetic,
    Itu,
    Unspecified,
}

type Key = (Environment, u32, String);

#[derive(Debug, Clone, PartialEq)]
pub struct LmsEnvironmentTable {
    pub source: TableSource,
    entries: BTreeMap<Key, StatePair>,
}

impl LmsEnvironmentTable {
    /// The bundled placeholder table. Its values are synthetic.
    pub fn synthetic() -> Self {
        Self::parse(SYNTHETIC_TABLE).expect("bundled table is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!(
                "cannot read parameter table {}: {e}",
                path.display()
            ))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut source = TableSource::Unspecified;
        let mut partial: BTreeMap<Key, (Option<LmsStateParams>, Option<LmsStateParams>, usize)> =
            BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Table {
                line: line_no,
                message,
            };

            if let Some(directive) = line.strip_prefix('@') {
                let mut parts = directive.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("source"), Some("synthetic"), None) => source = TableSource::Synthetic,
                    (Some("source"), Some("itu"), None) => source = TableSource::Itu,
                    _ => return Err(err(format!("unknown directive '@{directive}'"))),
                }
                continue;
            }

            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 14 {
                return Err(err(format!(
                    "expected 14 fields (environment elevation band state unit + 9 parameters), found {}",
                    tokens.len()
                )));
            }
            let env: Environment = tokens[0].parse().map_err(|e: Error| err(e.to_string()))?;
            let elevation: u32 = tokens[1]
                .parse()
                .map_err(|_| err(format!("invalid elevation '{}'", tokens[1])))?;
            if !env.available_elevations().contains(&elevation) {
                return Err(err(format!(
                    "{env} has no statistics at {elevation} deg (available: {:?})",
                    env.available_elevations()
                )));
            }
            let band = tokens[2].to_string();
            let state = match tokens[3] {
                "good" => ChannelState::Good,
                "bad" => ChannelState::Bad,
                other => return Err(err(format!("state must be 'good' or 'bad', got '{other}'"))),
            };
            let unit = match tokens[4] {
                "s" => DurationUnit::Seconds,
                "m" => DurationUnit::Meters,
                other => return Err(err(format!("unit must be 's' or 'm', got '{other}'"))),
            };
            let mut v = [0.0; 9];
            for (slot, tok) in v.iter_mut().zip(&tokens[5..]) {
                *slot = tok
                    .parse()
                    .map_err(|_| err(format!("invalid number '{tok}'")))?;
            }
            let params = LmsStateParams {
                mu_ma_db: v[0],
                sigma_ma_db: v[1],
                g1: v[2],
                g2_db: v[3],
                h1: v[4],
                h2_db: v[5],
                duration_mu: v[6],
                duration_sigma: v[7],
                duration_min: v[8],
                duration_unit: unit,
            };
            params.validate().map_err(|e| err(e.to_string()))?;

            let slot = partial
                .entry((env, elevation, band))
                .or_insert((None, None, line_no));
            let target = match state {
                ChannelState::Good => &mut slot.0,
                ChannelState::Bad => &mut slot.1,
            };
            if target.is_some() {
                return Err(err(format!(
                    "duplicate {state} record for {env} {elevation} deg {}",
                    tokens[2]
                )));
            }
            *target = Some(params);
        }

        let mut entries = BTreeMap::new();
        for (key, (good, bad, line)) in partial {
            let (env, elevation, band) = &key;
            match (good, bad) {
                (Some(g), Some(b)) => {
                    if g.duration_unit != b.duration_unit {
                        return Err(Error::Table {
                            line,
                            message: format!(
                                "{env} {elevation} deg {band}: good and bad records use different duration units"
                            ),
                        });
                    }
                    entries.insert(key, StatePair::new(g, b));
                }
                (g, _) => {
                    let missing = if g.is_none() { "good" } else { "bad" };
                    return Err(Error::Table {
                        line,
                        message: format!("{env} {elevation} deg {band}: missing {missing} record"),
                    });
                }
            }
        }
        Ok(Self { source, entries })
    }

    pub fn is_synthetic(&self) -> bool {
        self.source != TableSource::Itu
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keys present in the table, in sorted order.
    pub fn keys(&self) -> impl Iterator<Item = (Environment, u32, &str)> {
        self.entries.keys().map(|(e, el, b)| (*e, *el, b.as_str()))
    }

    /// GOOD/BAD statistics for an exact (environment, elevation, band).
    pub fn get(
        &self,
        environment: Environment,
        elevation_deg: f64,
        band: &str,
    ) -> Result<StatePair> {
        let label = format!("{environment} at {elevation_deg} deg in band {band}");
        let rounded = elevation_deg.round();
        if (elevation_deg - rounded).abs() > 1e-9
            || !environment
                .available_elevations()
                .contains(&(rounded as u32))
        {
            return Err(Error::NotAvailable(format!(
                "{label} (available elevations: {:?})",
                environment.available_elevations()
            )));
        }
        self.entries
            .get(&(environment, rounded as u32, band.to_string()))
            .copied()
            .ok_or(Error::NotAvailable(label))
    }

    /// Available elevation closest to `elevation_deg` for an environment.
    pub fn nearest_elevation(environment: Environment, elevation_deg: f64) -> u32 {
        *environment
            .available_elevations()
            .iter()
            .min_by(|a, b| {
                (**a as f64 - elevation_deg)
                    .abs()
                    .total_cmp(&(**b as f64 - elevation_deg).abs())
            })
            .expect("non-empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROW_GOOD: &str = "urban 20 S good s -1 1 0 0.5 0 -15 1.0 0.5 0.2";
    const ROW_BAD: &str = "urban 20 S bad s -8 2 0 1.5 0 -12 0.5 0.5 0.1";

    #[test]
    fn bundled_table_covers_every_available_combination() {
        let t = LmsEnvironmentTable::synthetic();
        assert_eq!(t.source, TableSource::Synthetic);
        assert!(t.is_synthetic());
        let expected: usize = Environment::ALL
            .iter()
            .map(|e| e.available_elevations().len())
            .sum();
        assert_eq!(t.len(), expected);
        for env in Environment::ALL {
            for &el in env.available_elevations() {
                t.get(env, el as f64, "S").unwrap();
            }
        }
    }

    #[test]
    fn residential_has_no_45_degree_entry() {
        let t = LmsEnvironmentTable::synthetic();
        assert!(matches!(
            t.get(Environment::Residential, 45.0, "S"),
            Err(Error::NotAvailable(_))
        ));
        let text = format!(
            "{}\n{}\n",
            ROW_GOOD.replace("urban 20", "residential 45"),
            ROW_BAD.replace("urban 20", "residential 45")
        );
        let e = LmsEnvironmentTable::parse(&text).unwrap_err();
        assert!(matches!(e, Error::Table { line: 1, .. }), "{e}");
    }

    #[test]
    fn parses_records_and_comments() {
        let text = format!("# header\n@source itu\n\n{ROW_GOOD}  # trailing\n{ROW_BAD}\n");
        let t = LmsEnvironmentTable::parse(&text).unwrap();
        assert_eq!(t.source, TableSource::Itu);
        let pair = t.get(Environment::Urban, 20.0, "S").unwrap();
        assert_eq!(pair.good.mu_ma_db, -1.0);
        assert_eq!(pair.bad.h2_db, -12.0);
        assert!(t.get(Environment::Urban, 30.0, "S").is_err());
        assert!(t.get(Environment::Urban, 20.5, "S").is_err());
        assert!(t.get(Environment::Urban, 20.0, "L").is_err());
    }

    #[test]
    fn line_numbered_errors() {
        let cases = [
            (
                format!("{ROW_GOOD}\nurban 20 S good s -1 1 0 0.5 0 -15 1.0 0.5\n"),
                2,
            ),
            (format!("\n\n{}\n", ROW_GOOD.replace("good", "fair")), 3),
            (format!("{}\n", ROW_GOOD.replace(" s ", " h ")), 1),
            (format!("{}\n", ROW_GOOD.replace("-15", "abc")), 1),
            (format!("{}\n", ROW_GOOD.replace("-1 1", "-1 -1")), 1),
            (format!("{ROW_GOOD}\n{ROW_GOOD}\n"), 2),
            ("@version 2\n".to_string(), 1),
            (format!("# c\n{ROW_GOOD}\n"), 2),
            (
                format!("{ROW_GOOD}\n{}\n", ROW_BAD.replace(" s ", " m ")),
                1,
            ),
        ];
        for (text, line) in cases {
            match LmsEnvironmentTable::parse(&text) {
                Err(Error::Table { line: l, message }) => assert_eq!(l, line, "{message}"),
                other => panic!("expected table error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn environment_names_round_trip() {
        for env in Environment::ALL {
            assert_eq!(env.name().parse::<Environment>().unwrap(), env);
        }
        assert_eq!(
            "Rural-Wooded".parse::<Environment>().unwrap(),
            Environment::RuralWooded
        );
        assert!("desert".parse::<Environment>().is_err());
    }

    #[test]
    fn nearest_available_elevation() {
        assert_eq!(
            LmsEnvironmentTable::nearest_elevation(Environment::Urban, 87.0),
            70
        );
        assert_eq!(
            LmsEnvironmentTable::nearest_elevation(Environment::Urban, 41.0),
            45
        );
        assert_eq!(
            LmsEnvironmentTable::nearest_elevation(Environment::Residential, 44.0),
            30
        );
        assert_eq!(
            LmsEnvironmentTable::nearest_elevation(Environment::Residential, 46.0),
            60
        );
    }
}
