use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Inclusive range of ring lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiteRange {
    pub min: u32,
    pub max: u32,
}

impl SiteRange {
    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }
}

/// Accepts `7`, `2..9` and `2..=9`; both forms of the range are inclusive.
pub fn parse_range(text: &str) -> Result<SiteRange> {
    let text = text.trim();
    let number = |s: &str| -> Result<u32> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return invalid(format!("`{s}` is not a nonnegative integer"));
        }
        s.parse::<u32>()
            .map_err(|e| Error::InvalidArgument(format!("`{s}`: {e}")))
    };
    let (min, max) = match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (number(lo)?, number(hi)?)
        }
        None => {
            let n = number(text)?;
            (n, n)
        }
    };
    if min > max {
        return invalid(format!("range `{text}` is empty"));
    }
    Ok(SiteRange { min, max })
}

impl FromStr for SiteRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_range(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("2..9").unwrap(), SiteRange { min: 2, max: 9 });
        assert_eq!(parse_range("2..=9").unwrap(), SiteRange { min: 2, max: 9 });
        assert_eq!(parse_range(" 5 ").unwrap(), SiteRange { min: 5, max: 5 });
        assert_eq!(parse_range("4..14").unwrap().iter().count(), 11);
    }

    #[test]
    fn rejects() {
        for bad in [
            "",
            "..",
            "9..2",
            "a..3",
            "2..",
            "..3",
            "-1..3",
            "2...3",
            "+2..3",
            "99999999999",
        ] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }
}
