//! Provenance tags: which manual attests a unit, triple or rule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Text {
    #[serde(rename = "Baudhāyana", alias = "Baudhayana")]
    Baudhayana,
    #[serde(rename = "Āpastamba", alias = "Apastamba")]
    Apastamba,
    #[serde(rename = "Mānava", alias = "Manava")]
    Manava,
    #[serde(rename = "Maitrāyaṇīya", alias = "Maitrayaniya")]
    Maitrayaniya,
    #[serde(rename = "Kātyāyana", alias = "Katyayana")]
    Katyayana,
}

impl Text {
    pub const ALL: [Text; 5] = [
        Text::Baudhayana,
        Text::Apastamba,
        Text::Manava,
        Text::Maitrayaniya,
        Text::Katyayana,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Text::Baudhayana => "Baudhāyana",
            Text::Apastamba => "Āpastamba",
            Text::Manava => "Mānava",
            Text::Maitrayaniya => "Maitrāyaṇīya",
            Text::Katyayana => "Kātyāyana",
        }
    }

    pub fn ascii_name(self) -> &'static str {
        match self {
            Text::Baudhayana => "Baudhayana",
            Text::Apastamba => "Apastamba",
            Text::Manava => "Manava",
            Text::Maitrayaniya => "Maitrayaniya",
            Text::Katyayana => "Katyayana",
        }
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Text {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Text::ALL
            .into_iter()
            .find(|t| t.name() == s || t.ascii_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown text tag `{s}`"))
    }
}

/// Joins tags with `sep`, in declaration order.
pub fn join(tags: &[Text], sep: &str) -> String {
    let mut sorted = tags.to_vec();
    sorted.sort();
    sorted
        .iter()
        .map(|t| t.name())
        .collect::<Vec<_>>()
        .join(sep)
}
