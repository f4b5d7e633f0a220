use nilcox_core::{AffinePerm, Error, Partition, Rank, Result};

/// Parses an element: a comma-separated reduced word (`0,1,2,0`), a window
/// (`w:[0,2,4]`), or the identity (`e` or the empty string).
pub fn parse_element(rank: Rank, text: &str) -> Result<AffinePerm> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(AffinePerm::identity(rank));
    }
    if let Some(rest) = text.strip_prefix("w:") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("window must look like w:[..], got {text:?}")))?;
        let window = parse_list::<i64>(inner)?;
        let w = AffinePerm::from_window(window)?;
        if w.rank() != rank {
            return Err(Error::RankMismatch(rank.k(), w.rank().k()));
        }
        return Ok(w);
    }
    AffinePerm::from_reduced_word(rank, &parse_list::<usize>(text)?)
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Partition::empty());
    }
    Partition::new(parse_list(text)?)
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad entry {p:?} in {text:?}"))))
        .collect()
}

/// Inverse of [`parse_element`] in word form.
pub fn format_word(w: &AffinePerm) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_forms() {
        let r = Rank::new(2).unwrap();
        let w = parse_element(r, "1,2,1,0").unwrap();
        assert_eq!(parse_element(r, &format!("w:{:?}", w.window()).replace(' ', "")).unwrap(), w);
        assert_eq!(parse_element(r, &format_word(&w)).unwrap(), w);
        assert!(parse_element(r, "e").unwrap().is_identity());
        assert!(parse_element(r, "0,0").is_err());
        assert!(parse_element(r, "w:[0,1]").is_err());
        assert!(parse_element(r, "w:0,1,5").is_err());
        assert!(parse_element(r, "3").is_err());
    }
}
