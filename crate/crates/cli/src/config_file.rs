//! The JSON configuration format: `{"name": ..., "points": [[x, y, z], ...]}`.
//! Coordinates are integers, or decimal strings when they do not fit in 64 bits.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use wald_core::geometry::{Config, Pt};
use wald_core::WaldError;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coord::Int(v) => Some(BigInt::from(*v)),
            Coord::Text(s) => s.trim().parse().ok(),
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v)
            .map(Coord::Int)
            .unwrap_or_else(|_| Coord::Text(v.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub name: String,
    pub points: Vec<[Coord; 3]>,
}

impl ConfigFile {
    pub fn from_config(z: &Config) -> Self {
        let points = z
            .points()
            .iter()
            .map(|p| p.coords().map(Coord::from_bigint))
            .collect();
        Self {
            name: z.label().to_string(),
            points,
        }
    }

    /// Pretty JSON with one point per line.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                format!(
                    "    {}",
                    serde_json::to_string(p).expect("coordinates serialize")
                )
            })
            .collect();
        let name = serde_json::to_string(&self.name).expect("names serialize");
        format!(
            "{{\n  \"name\": {name},\n  \"points\": [\n{}\n  ]\n}}\n",
            rows.join(",\n")
        )
    }

    /// Canonicalizes every point. Rows in diagnostics are counted from 1.
    pub fn to_config(&self) -> Result<Config, CliError> {
        let mut pts = Vec::with_capacity(self.points.len());
        for (i, row) in self.points.iter().enumerate() {
            let mut c = Vec::with_capacity(3);
            for x in row {
                let v = x.to_bigint().ok_or_else(|| {
                    CliError::MalformedConfig(format!(
                        "point {}: `{}` is not an integer",
                        i + 1,
                        describe(x)
                    ))
                })?;
                c.push(v);
            }
            let [x, y, z]: [BigInt; 3] = c.try_into().expect("three coordinates");
            match Pt::new(x, y, z) {
                Ok(p) => pts.push(p),
                Err(WaldError::ZeroPoint) => return Err(CliError::ZeroPoint { row: i + 1 }),
                Err(e) => return Err(e.into()),
            }
        }
        match Config::new(self.name.clone(), pts) {
            Ok(z) => Ok(z),
            Err(WaldError::DuplicatePoint { first, second }) => Err(CliError::DuplicatePoints {
                first: first + 1,
                second: second + 1,
            }),
            Err(WaldError::EmptyConfig) => Err(CliError::MalformedConfig("no points".into())),
            Err(e) => Err(e.into()),
        }
    }
}

fn describe(c: &Coord) -> String {
    match c {
        Coord::Int(v) => v.to_string(),
        Coord::Text(s) => s.clone(),
    }
}

/// Parses inline JSON (anything starting with `{`) or the file at `source`.
pub fn parse_config(source: &str) -> Result<Config, CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(Path::new(source))
            .map_err(|e| CliError::Io(format!("{source}: {e}")))?
    };
    let file: ConfigFile =
        serde_json::from_str(&text).map_err(|e| CliError::MalformedConfig(e.to_string()))?;
    file.to_config()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_line() {
        let z = parse_config(r#"{"name":"line3","points":[[0,0,1],[1,0,1],[2,0,1]]}"#).unwrap();
        assert_eq!(z.label(), "line3");
        assert_eq!(z.len(), 3);
    }

    #[test]
    fn points_are_canonicalized() {
        let z = parse_config(r#"{"name":"p","points":[[2,4,6]]}"#).unwrap();
        assert_eq!(z.points()[0], Pt::new(1, 2, 3).unwrap());
    }

    #[test]
    fn big_coordinates_as_strings() {
        let z =
            parse_config(r#"{"name":"big","points":[["123456789012345678901234567890", 1, 0]]}"#)
                .unwrap();
        let back = ConfigFile::from_config(&z);
        assert!(matches!(back.points[0][0], Coord::Text(_)));
        assert_eq!(back.to_config().unwrap(), z);
        assert_eq!(parse_config(&back.to_json()).unwrap(), z);
    }

    #[test]
    fn diagnostics_are_distinct() {
        let dup = parse_config(r#"{"name":"d","points":[[1,0,1],[2,0,2]]}"#).unwrap_err();
        assert_eq!(
            dup,
            CliError::DuplicatePoints {
                first: 1,
                second: 2
            }
        );
        assert!(dup.to_string().contains("1 and 2"));
        let zero = parse_config(r#"{"name":"z","points":[[1,0,1],[0,0,0]]}"#).unwrap_err();
        assert_eq!(zero, CliError::ZeroPoint { row: 2 });
        let bad = parse_config(r#"{"name":"b","points":[[1,0]]}"#).unwrap_err();
        assert!(matches!(bad, CliError::MalformedConfig(_)));
        let text = parse_config(r#"{"name":"t","points":[["x",0,1]]}"#).unwrap_err();
        assert!(matches!(text, CliError::MalformedConfig(_)));
    }
}
