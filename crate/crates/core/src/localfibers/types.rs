use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactalg::Place;
use crate::lattice::RootType;
use crate::{Error, Result};

/// Kodaira symbol of a fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I0,
    /// `I_n`, `n >= 1`.
    I(u32),
    II,
    III,
    IV,
    /// `I_n^*`, `n >= 0`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    pub fn is_additive(&self) -> bool {
        !matches!(self, Kodaira::I0 | Kodaira::I(_))
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Kodaira::I(_))
    }

    /// Number of irreducible components `b_t`.
    pub fn components(&self) -> u32 {
        match self {
            Kodaira::I0 => 1,
            Kodaira::I(n) => *n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    /// Tame Euler number `e_t`: 0 if smooth, `b_t` if multiplicative,
    /// `b_t + 1` if additive.
    pub fn euler(&self) -> u32 {
        match self {
            Kodaira::I0 => 0,
            Kodaira::I(n) => *n,
            k => k.components() + 1,
        }
    }

    pub fn label(&self) -> AffineLabel {
        match *self {
            Kodaira::I0 => AffineLabel::A(0),
            Kodaira::I(1) => AffineLabel::A0Star,
            Kodaira::I(n) => AffineLabel::A(n - 1),
            Kodaira::II => AffineLabel::A0StarStar,
            Kodaira::III => AffineLabel::A1Star,
            Kodaira::IV => AffineLabel::A2Star,
            Kodaira::IStar(n) => AffineLabel::D(n + 4),
            Kodaira::IVStar => AffineLabel::E(6),
            Kodaira::IIIStar => AffineLabel::E(7),
            Kodaira::IIStar => AffineLabel::E(8),
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{}", n),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{}*", n),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kodaira> {
        let bad = || Error::Input(format!("unknown Kodaira symbol '{}'", s));
        Ok(match s {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                let (num, star) = match rest.strip_suffix('*') {
                    Some(n) => (n, true),
                    None => (rest, false),
                };
                let n: u32 = num.parse().map_err(|_| bad())?;
                match (star, n) {
                    (true, n) => Kodaira::IStar(n),
                    (false, 0) => Kodaira::I0,
                    (false, n) => Kodaira::I(n),
                }
            }
        })
    }
}

/// Affine Dynkin label of a fibre. `A(0)` is a smooth fibre, `A0Star` the
/// nodal `I_1`, `A0StarStar` the cuspidal `II`, `A1Star` and `A2Star` the
/// additive `III` and `IV`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineLabel {
    A(u32),
    A0Star,
    A0StarStar,
    A1Star,
    A2Star,
    D(u32),
    E(u32),
}

impl AffineLabel {
    pub fn new_checked(self) -> Result<AffineLabel> {
        match self {
            AffineLabel::D(n) if n < 4 => Err(Error::Input(format!("D~{} needs n >= 4", n))),
            AffineLabel::E(n) if !(6..=8).contains(&n) => {
                Err(Error::Input(format!("E~{} needs n in 6..8", n)))
            }
            l => Ok(l),
        }
    }

    /// Inverse of [`Kodaira::label`].
    pub fn kodaira(&self) -> Kodaira {
        match *self {
            AffineLabel::A(0) => Kodaira::I0,
            AffineLabel::A(n) => Kodaira::I(n + 1),
            AffineLabel::A0Star => Kodaira::I(1),
            AffineLabel::A0StarStar => Kodaira::II,
            AffineLabel::A1Star => Kodaira::III,
            AffineLabel::A2Star => Kodaira::IV,
            AffineLabel::D(n) => Kodaira::IStar(n - 4),
            AffineLabel::E(6) => Kodaira::IVStar,
            AffineLabel::E(7) => Kodaira::IIIStar,
            AffineLabel::E(_) => Kodaira::IIStar,
        }
    }

    /// Root lattice spanned by the non-identity components.
    pub fn root_type(&self) -> Option<RootType> {
        match *self {
            AffineLabel::A(0) | AffineLabel::A0Star | AffineLabel::A0StarStar => None,
            AffineLabel::A(n) => Some(RootType::A(n)),
            AffineLabel::A1Star => Some(RootType::A(1)),
            AffineLabel::A2Star => Some(RootType::A(2)),
            AffineLabel::D(n) => Some(RootType::D(n)),
            AffineLabel::E(n) => Some(RootType::E(n)),
        }
    }

    pub fn rank(&self) -> u32 {
        self.root_type().map_or(0, |r| r.rank())
    }

    pub fn components(&self) -> u32 {
        self.kodaira().components()
    }

    pub fn euler(&self) -> u32 {
        self.kodaira().euler()
    }

    pub fn is_additive(&self) -> bool {
        self.kodaira().is_additive()
    }

    pub fn is_smooth(&self) -> bool {
        *self == AffineLabel::A(0)
    }

    /// Component group, as invariant factors.
    pub fn disc_group(&self) -> Vec<u64> {
        self.root_type().map_or(Vec::new(), |r| r.disc_group())
    }

    pub fn ascii(&self) -> String {
        match self {
            AffineLabel::A(n) => format!("A{}", n),
            AffineLabel::A0Star => "A0*".into(),
            AffineLabel::A0StarStar => "A0**".into(),
            AffineLabel::A1Star => "A1*".into(),
            AffineLabel::A2Star => "A2*".into(),
            AffineLabel::D(n) => format!("D{}", n),
            AffineLabel::E(n) => format!("E{}", n),
        }
    }

    /// Key for listing the large fibres first.
    pub fn display_key(&self) -> (std::cmp::Reverse<u32>, std::cmp::Reverse<u32>, AffineLabel) {
        (std::cmp::Reverse(self.rank()), std::cmp::Reverse(self.euler()), *self)
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineLabel::A(n) => write!(f, "Ã{}", n),
            AffineLabel::A0Star => write!(f, "Ã0*"),
            AffineLabel::A0StarStar => write!(f, "Ã0**"),
            AffineLabel::A1Star => write!(f, "Ã1*"),
            AffineLabel::A2Star => write!(f, "Ã2*"),
            AffineLabel::D(n) => write!(f, "D̃{}", n),
            AffineLabel::E(n) => write!(f, "Ẽ{}", n),
        }
    }
}

impl FromStr for AffineLabel {
    type Err = Error;
    /// Accepts `Ã8`, `A~8`, `A8`, `D̃4`, `D4`, `Ẽ8`, `A0*`, `Ã0**`, ... and
    /// Kodaira symbols (`I9`, `II*`, `I0*`).
    fn from_str(s: &str) -> Result<AffineLabel> {
        let s = s.trim();
        let norm: String = s
            .replace('Ã', "A")
            .replace('Ẽ', "E")
            .replace('\u{0303}', "")
            .replace('~', "");
        let bad = || Error::Input(format!("unknown fibre label '{}'", s));
        let mut chars = norm.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest: String = chars.collect();
        let label = match head {
            'A' | 'D' | 'E' => {
                let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                let stars = &rest[digits.len()..];
                let n: u32 = digits.parse().map_err(|_| bad())?;
                match (head, n, stars) {
                    ('A', n, "") => AffineLabel::A(n),
                    ('A', 0, "*") => AffineLabel::A0Star,
                    ('A', 0, "**") => AffineLabel::A0StarStar,
                    ('A', 1, "*") => AffineLabel::A1Star,
                    ('A', 2, "*") => AffineLabel::A2Star,
                    ('D', n, "") => AffineLabel::D(n),
                    ('E', n, "") => AffineLabel::E(n),
                    _ => return Err(bad()),
                }
            }
            'I' => norm.parse::<Kodaira>()?.label(),
            _ => return Err(bad()),
        };
        label.new_checked()
    }
}

impl Serialize for AffineLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `"Ã8 + 3Ã0*"`, `"A8,A0*,A0*,A0*"` or `"2D4"` into labels.
pub fn parse_label_list(s: &str) -> Result<Vec<AffineLabel>> {
    let mut out = Vec::new();
    for item in s.split([',', '+']) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let digits: String = item.chars().take_while(|c| c.is_ascii_digit()).collect();
        let (count, body) = if digits.is_empty() {
            (1, item)
        } else {
            (digits.parse::<usize>().map_err(|_| Error::Input(item.into()))?, &item[digits.len()..])
        };
        let label: AffineLabel = body.parse()?;
        out.extend(std::iter::repeat(label).take(count));
    }
    Ok(out)
}

/// Canonical multiset: sorted with the large fibres first, smooth fibres dropped.
pub fn canonical_multiset(labels: &[AffineLabel]) -> Vec<AffineLabel> {
    let mut v: Vec<AffineLabel> = labels.iter().copied().filter(|l| !l.is_smooth()).collect();
    v.sort_by_key(|l| l.display_key());
    v
}

/// `"Ã8 + 3Ã0*"`.
pub fn format_multiset(labels: &[AffineLabel]) -> String {
    let v = canonical_multiset(labels);
    if v.is_empty() {
        return "none".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { v[i].to_string() } else { format!("{}{}", j - i, v[i]) });
        i = j;
    }
    parts.join(" + ")
}

/// Result of Tate's algorithm at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFiberData {
    pub place: Place,
    pub kodaira: Kodaira,
    /// Valuation of the minimal discriminant.
    pub v_disc: u32,
    pub components: u32,
    pub euler: u32,
    /// Wild part `δ = v(Δ_min) - e`.
    pub wild: u32,
    pub disc: Vec<u64>,
    /// For multiplicative fibres: whether the tangents at the node are
    /// rational over the residue field.
    pub split: Option<bool>,
    /// How many times the model was divided by `π^i` to reach minimality.
    pub reductions: u32,
}

impl LocalFiberData {
    pub fn from_kodaira(place: Place, kodaira: Kodaira, v_disc: u32) -> Result<LocalFiberData> {
        let euler = kodaira.euler();
        let wild = v_disc.checked_sub(euler).ok_or_else(|| {
            Error::Domain(format!("{} with v(Δ) = {} below its Euler number", kodaira, v_disc))
        })?;
        Ok(LocalFiberData {
            place,
            kodaira,
            v_disc,
            components: kodaira.components(),
            euler,
            wild,
            disc: kodaira.label().disc_group(),
            split: None,
            reductions: 0,
        })
    }

    pub fn label(&self) -> AffineLabel {
        self.kodaira.label()
    }

    pub fn degree(&self) -> usize {
        self.place.degree()
    }
}
