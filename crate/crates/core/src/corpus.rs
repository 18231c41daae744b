//! Example graphs shipped with the library, in the text format.

/// `(file name, contents)` in a fixed order.
pub const FILES: &[(&str, &str)] = &[
    ("bs12.gog", include_str!("../corpus/bs12.gog")),
    ("bs23.gog", include_str!("../corpus/bs23.gog")),
    ("bs24.gog", include_str!("../corpus/bs24.gog")),
    ("bs35.gog", include_str!("../corpus/bs35.gog")),
    ("z2-loop.gog", include_str!("../corpus/z2-loop.gog")),
    ("klein-loop.gog", include_str!("../corpus/klein-loop.gog")),
    ("klein-segment.gog", include_str!("../corpus/klein-segment.gog")),
    ("q1.gog", include_str!("../corpus/q1.gog")),
    ("q1-label-one.gog", include_str!("../corpus/q1-label-one.gog")),
    ("q1-point-component.gog", include_str!("../corpus/q1-point-component.gog")),
    ("delta-pants.gog", include_str!("../corpus/delta-pants.gog")),
];

/// Looks up a file by name, with or without the `.gog` suffix.
pub fn get(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".gog").unwrap_or(name);
    FILES.iter().find(|(f, _)| f.strip_suffix(".gog") == Some(name)).map(|(_, text)| *text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse, print};
    use crate::validate::validate;

    #[test]
    fn every_file_parses_validates_and_round_trips() {
        for (name, text) in FILES {
            let g = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(validate(&g).is_valid(), "{name}: {:?}", validate(&g));
            assert_eq!(parse(&print(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(get("bs23"), get("bs23.gog"));
        assert!(get("missing").is_none());
    }
}
