//! Named configurations: abstract incidence patterns, rational realizations
//! and the Waldschmidt data recorded for them.
//!
//! Realizations are small integer or rational coordinates chosen to satisfy
//! the pattern; every one is checked against its pattern when built.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WaldError};
use crate::geometry::{
    abstract_incidence_match, incidence_signature, Config, IncidencePattern, Pt,
};

/// Range of s accepted by the parametrized families.
pub const FAMILY_MAX: usize = 12;

/// Where a recorded period comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated alongside the configuration in the literature.
    Published,
    /// Not stated; determined by running the engine.
    ToBeMeasured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(with = "crate::serde_big::ratio")]
    pub alphahat: BigRational,
    pub period: Option<Vec<u32>>,
    pub period_provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub s: usize,
    pub pattern: IncidencePattern,
    pub realization: Config,
    pub expected: Expected,
}

const FIXED: [&str; 14] = [
    "H6_2",
    "H6_5",
    "H6_9",
    "H6_10",
    "H7_13",
    "H7_17",
    "H7_21",
    "H7_29",
    "H8_118",
    "H8_119",
    "H8_136",
    "H8_137",
    "NINE_17_7",
    "GENERAL6",
];

const FAMILIES: [&str; 3] = ["LINE", "NEAR_PENCIL", "CONIC"];

/// All catalog names; families are listed as `NAME(s)`.
pub fn list() -> Vec<String> {
    FAMILIES
        .iter()
        .map(|f| format!("{f}(s)"))
        .chain(FIXED.iter().map(|s| s.to_string()))
        .collect()
}

/// Smallest s accepted by a family.
pub fn family_min(family: &str) -> Option<usize> {
    match family {
        "LINE" => Some(3),
        "NEAR_PENCIL" => Some(4),
        "CONIC" => Some(5),
        _ => None,
    }
}

/// Split `LINE(5)` or `LINE5` into ("LINE", 5).
fn parse_family(name: &str) -> Option<(&'static str, usize)> {
    let family = FAMILIES.iter().find(|f| name.starts_with(*f))?;
    let rest = &name[family.len()..];
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    let s: usize = digits.parse().ok()?;
    Some((family, s))
}

/// Canonical spelling of a catalog name, `NAME(s)` for family members.
pub fn canonical_name(name: &str) -> Result<String> {
    if FIXED.contains(&name) {
        return Ok(name.to_string());
    }
    let (family, s) =
        parse_family(name).ok_or_else(|| WaldError::UnknownEntry(name.to_string()))?;
    let lo = family_min(family).unwrap();
    if !(lo..=FAMILY_MAX).contains(&s) {
        return Err(WaldError::Parameter(format!(
            "{family} needs {lo} <= s <= {FAMILY_MAX}, got {s}"
        )));
    }
    Ok(format!("{family}({s})"))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn published(n: i64, d: i64, period: &[u32]) -> Expected {
    Expected {
        alphahat: ratio(n, d),
        period: Some(period.to_vec()),
        period_provenance: Provenance::Published,
    }
}

fn unmeasured(n: i64, d: i64) -> Expected {
    Expected {
        alphahat: ratio(n, d),
        period: None,
        period_provenance: Provenance::ToBeMeasured,
    }
}

/// Recorded α̂ and period for a name.
pub fn expected(name: &str) -> Result<Expected> {
    let name = canonical_name(name)?;
    Ok(match name.as_str() {
        "H6_10" => published(2, 1, &[3, 1]),
        "H6_9" => published(9, 4, &[3, 2, 2, 2]),
        "H7_17" => published(16, 7, &[3, 2, 2, 3, 2, 2, 2]),
        "H6_2" | "H6_5" | "H7_13" | "H7_21" | "H7_29" | "H8_119" | "H8_137" => {
            published(7, 3, &[3, 2, 2])
        }
        "GENERAL6" => unmeasured(12, 5),
        "H8_136" | "NINE_17_7" => unmeasured(17, 7),
        "H8_118" => unmeasured(5, 2),
        other => {
            let (family, s) = parse_family(other).expect("canonical family name");
            match family {
                "LINE" => unmeasured(1, 1),
                "NEAR_PENCIL" => unmeasured(2 * s as i64 - 3, s as i64 - 1),
                _ => unmeasured(2, 1),
            }
        }
    })
}

/// Labelled affine or projective coordinates, as integers or fractions.
enum C {
    /// (x, y) with x = xn/xd, y = yn/yd, homogenized with z = 1.
    Aff(i64, i64, i64, i64),
    Proj(i64, i64, i64),
}

fn a(x: i64, y: i64) -> C {
    C::Aff(x, 1, y, 1)
}

fn af(xn: i64, xd: i64, yn: i64, yd: i64) -> C {
    C::Aff(xn, xd, yn, yd)
}

fn point(c: &C) -> Result<Pt> {
    match *c {
        C::Aff(xn, xd, yn, yd) => Pt::affine(ratio(xn, xd), ratio(yn, yd)),
        C::Proj(x, y, z) => Pt::new(x, y, z),
    }
}

struct Layout {
    labels: Vec<String>,
    coords: Vec<C>,
    blocks: Vec<Vec<String>>,
    on_conic: Option<bool>,
    conic_subsets: Vec<Vec<String>>,
}

fn owned(set: &[&str]) -> Vec<String> {
    set.iter().map(|s| s.to_string()).collect()
}

fn layout(points: Vec<(&'static str, C)>, blocks: &[&[&str]]) -> Layout {
    let (labels, coords): (Vec<&str>, Vec<C>) = points.into_iter().unzip();
    Layout {
        labels: owned(&labels),
        coords,
        blocks: blocks.iter().map(|b| owned(b)).collect(),
        on_conic: Some(false),
        conic_subsets: vec![],
    }
}

fn nine_points() -> Vec<(&'static str, C)> {
    vec![
        ("A", a(0, 0)),
        ("B", a(1, 2)),
        ("C", a(4, 0)),
        ("D", af(1, 2, 1, 1)),
        ("E", af(13, 4, 1, 2)),
        ("G", a(6, 0)),
        ("F1", a(7, 0)),
        ("F2", a(8, 0)),
        ("F3", a(9, 0)),
    ]
}

fn without(points: Vec<(&'static str, C)>, drop: &[&str]) -> Vec<(&'static str, C)> {
    points
        .into_iter()
        .filter(|(l, _)| !drop.contains(l))
        .collect()
}

fn family_layout(family: &str, s: usize) -> Layout {
    let labels: Vec<String> = (1..=s).map(|i| format!("P{i}")).collect();
    let n = s as i64;
    match family {
        "LINE" => Layout {
            coords: (0..n).map(|i| C::Proj(i, 0, 1)).collect(),
            blocks: vec![labels.clone()],
            labels,
            on_conic: Some(true),
            conic_subsets: vec![],
        },
        "NEAR_PENCIL" => Layout {
            coords: (0..n - 1)
                .map(|i| C::Proj(i, 0, 1))
                .chain([C::Proj(0, 1, 1)])
                .collect(),
            blocks: vec![labels[..s - 1].to_vec()],
            labels,
            on_conic: Some(true),
            conic_subsets: vec![],
        },
        _ => Layout {
            coords: (0..n).map(|t| C::Proj(t, t * t, 1)).collect(),
            blocks: vec![],
            labels,
            on_conic: Some(true),
            conic_subsets: vec![],
        },
    }
}

fn fixed_layout(name: &str) -> Layout {
    match name {
        "H6_2" => layout(
            vec![
                ("L1", a(0, 0)),
                ("L2", a(1, 0)),
                ("L3", a(2, 0)),
                ("T1", a(0, 1)),
                ("T2", a(3, 2)),
                ("T3", a(-1, 3)),
            ],
            &[&["L1", "L2", "L3"]],
        ),
        "H6_5" => layout(
            vec![
                ("O", a(0, 0)),
                ("U1", a(1, 0)),
                ("U2", a(2, 0)),
                ("V1", a(0, 1)),
                ("V2", a(0, 2)),
                ("X", a(1, 3)),
            ],
            &[&["O", "U1", "U2"], &["O", "V1", "V2"]],
        ),
        "H6_9" => layout(
            vec![
                ("A", a(0, 0)),
                ("B", a(3, 0)),
                ("C", a(0, 3)),
                ("D", a(1, 0)),
                ("E", a(1, 2)),
                ("F", a(0, 2)),
            ],
            &[&["A", "D", "B"], &["B", "E", "C"], &["A", "F", "C"]],
        ),
        // pairwise intersections of x = 0, y = 0, x + y = 1, x + 2y = 3
        "H6_10" => layout(
            vec![
                ("P12", a(0, 0)),
                ("P13", a(0, 1)),
                ("P14", af(0, 1, 3, 2)),
                ("P23", a(1, 0)),
                ("P24", a(3, 0)),
                ("P34", a(-1, 2)),
            ],
            &[
                &["P12", "P13", "P14"],
                &["P12", "P23", "P24"],
                &["P13", "P23", "P34"],
                &["P14", "P24", "P34"],
            ],
        ),
        "H7_13" => layout(
            vec![
                ("O", a(0, 0)),
                ("A1", a(1, 0)),
                ("A2", a(2, 0)),
                ("A3", a(3, 0)),
                ("B1", a(0, 1)),
                ("B2", a(0, 2)),
                ("W", a(1, 1)),
            ],
            &[
                &["O", "A1", "A2", "A3"],
                &["O", "B1", "B2"],
                &["B2", "A2", "W"],
            ],
        ),
        "H7_17" => {
            let mut sp = layout(
                without(nine_points(), &["F2", "F3"]),
                &[
                    &["A", "C", "G", "F1"],
                    &["A", "D", "B"],
                    &["C", "E", "B"],
                    &["D", "E", "G"],
                ],
            );
            sp.labels[6] = "F".into();
            sp.blocks[0][3] = "F".into();
            sp
        }
        "H7_21" => layout(
            vec![
                ("X", a(0, 4)),
                ("M1", a(-1, 2)),
                ("M2", a(0, 2)),
                ("M3", a(1, 2)),
                ("F1", a(-2, 0)),
                ("F2", a(0, 0)),
                ("F3", a(2, 0)),
            ],
            &[
                &["X", "M1", "F1"],
                &["X", "M2", "F2"],
                &["X", "M3", "F3"],
                &["M1", "M2", "M3"],
                &["F1", "F2", "F3"],
            ],
        ),
        // unit circle, three diameters
        "H7_29" => {
            let mut sp = layout(
                vec![
                    ("K1", a(1, 0)),
                    ("K2", a(-1, 0)),
                    ("K3", a(0, 1)),
                    ("K4", a(0, -1)),
                    ("K5", af(3, 5, 4, 5)),
                    ("K6", af(-3, 5, -4, 5)),
                    ("O", a(0, 0)),
                ],
                &[&["K1", "O", "K2"], &["K3", "O", "K4"], &["K5", "O", "K6"]],
            );
            sp.conic_subsets = vec![owned(&["K1", "K2", "K3", "K4", "K5", "K6"])];
            sp
        }
        "H8_118" => layout(
            vec![
                ("A", a(0, 0)),
                ("B", a(0, 4)),
                ("C", a(4, 0)),
                ("D", a(0, 1)),
                ("Q", a(0, 2)),
                ("F", a(3, 0)),
                ("E", a(6, -2)),
                ("P", a(5, 0)),
            ],
            &[
                &["A", "C", "F", "P"],
                &["A", "D", "Q", "B"],
                &["C", "E", "B"],
                &["Q", "E", "F"],
            ],
        ),
        // two 4-point lines through P1; P2 is the triple point joining
        // Q1-Q6, Q2-Q5, Q3-Q4. P1 = origin, P2 = (1, 1).
        "H8_119" => layout(
            vec![
                ("P1", a(0, 0)),
                ("P2", a(1, 1)),
                ("Q1", af(3, 5, 6, 5)),
                ("Q2", af(2, 3, 4, 3)),
                ("Q3", a(1, 2)),
                ("Q4", a(1, 0)),
                ("Q5", a(2, 0)),
                ("Q6", a(3, 0)),
            ],
            &[
                &["P1", "Q4", "Q5", "Q6"],
                &["P2", "Q1", "Q6"],
                &["P2", "Q2", "Q5"],
                &["P2", "Q3", "Q4"],
                &["Q1", "Q2", "Q3", "P1"],
            ],
        ),
        "H8_136" => layout(
            without(nine_points(), &["G"]),
            &[
                &["A", "C", "F1", "F2", "F3"],
                &["A", "D", "B"],
                &["C", "E", "B"],
            ],
        ),
        "H8_137" => layout(
            without(nine_points(), &["F3"]),
            &[
                &["A", "C", "G", "F1", "F2"],
                &["A", "D", "B"],
                &["C", "E", "B"],
                &["D", "E", "G"],
            ],
        ),
        "NINE_17_7" => layout(
            nine_points(),
            &[
                &["A", "C", "G", "F1", "F2", "F3"],
                &["A", "D", "B"],
                &["C", "E", "B"],
                &["D", "E", "G"],
            ],
        ),
        "GENERAL6" => layout(
            vec![
                ("P1", C::Proj(1, 0, 0)),
                ("P2", C::Proj(0, 1, 0)),
                ("P3", C::Proj(0, 0, 1)),
                ("P4", C::Proj(1, 1, 1)),
                ("P5", C::Proj(1, 2, 3)),
                ("P6", C::Proj(2, 3, 7)),
            ],
            &[],
        ),
        _ => unreachable!("fixed names are checked by canonical_name"),
    }
}

fn borrow(sets: &[Vec<String>]) -> Vec<Vec<&str>> {
    sets.iter()
        .map(|b| b.iter().map(String::as_str).collect())
        .collect()
}

fn assemble(name: String, sp: Layout) -> Result<CatalogEntry> {
    let points = sp.coords.iter().map(point).collect::<Result<Vec<_>>>()?;
    let realization = Config::new(name.clone(), points)?;
    let labels: Vec<&str> = sp.labels.iter().map(String::as_str).collect();
    let blocks = borrow(&sp.blocks);
    let conics = borrow(&sp.conic_subsets);
    let blocks: Vec<&[&str]> = blocks.iter().map(Vec::as_slice).collect();
    let conics: Vec<&[&str]> = conics.iter().map(Vec::as_slice).collect();
    let pattern = IncidencePattern::new(&labels, &blocks, sp.on_conic, &conics);
    let expected = expected(&name)?;
    let entry = CatalogEntry {
        s: realization.len(),
        name,
        pattern,
        realization,
        expected,
    };
    if let Some(reason) = mismatch(&entry.realization, &entry.pattern) {
        return Err(WaldError::Validation {
            name: entry.name,
            reason,
        });
    }
    Ok(entry)
}

/// Catalog entry with its validated realization.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    let name = canonical_name(name)?;
    let sp = match parse_family(&name) {
        Some((family, s)) if !FIXED.contains(&name.as_str()) => family_layout(family, s),
        _ => fixed_layout(&name),
    };
    assemble(name, sp)
}

/// The validated realization of `name`.
pub fn build(name: &str) -> Result<Config> {
    Ok(entry(name)?.realization)
}

/// Point labels of the pattern, in realization order.
pub fn point_labels(entry: &CatalogEntry) -> Vec<String> {
    entry.pattern.labels.clone()
}

/// True iff `z` realizes the entry's pattern with no extra incidences.
pub fn validate_realization(z: &Config, entry: &CatalogEntry) -> bool {
    mismatch(z, &entry.pattern).is_none()
}

/// The first violated requirement, if any.
pub fn mismatch(z: &Config, pattern: &IncidencePattern) -> Option<String> {
    if z.len() != pattern.len() {
        return Some(format!("{} points, pattern has {}", z.len(), pattern.len()));
    }
    let sig = incidence_signature(z);
    if sig.collinear_profile != pattern.profile() {
        return Some(format!(
            "collinear subsets of sizes {:?}, pattern requires {:?}",
            sig.collinear_profile,
            pattern.profile()
        ));
    }
    if let Some(flag) = pattern.on_conic {
        if sig.on_conic != flag {
            return Some(if flag {
                "not on a conic".into()
            } else {
                "unexpectedly on a conic".into()
            });
        }
    }
    if abstract_incidence_match(z, pattern).is_none() {
        return Some("no labelling maps the collinear subsets onto the pattern's lines".into());
    }
    None
}
