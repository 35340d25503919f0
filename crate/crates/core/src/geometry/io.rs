//! Point-set text format: a header `q d`, then one point per line with
//! coordinates as comma-separated canonical element strings. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt::Write;

use super::{GeometryError, PointSet, Space};
use crate::field::Field;

pub fn write_point_set(set: &PointSet) -> String {
    let space = set.space();
    let f = space.field();
    let mut out = format!("{} {}\n", f.order(), space.dim());
    for x in set.points() {
        let coords: Vec<String> = x.iter().map(|&e| f.render(e)).collect();
        writeln!(out, "{}", coords.join(",")).unwrap();
    }
    out
}

pub fn read_point_set(text: &str, cap: u64) -> Result<PointSet, GeometryError> {
    let err = |line: usize, message: String| GeometryError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header `q d`".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [q, d] = parts[..] else {
        return Err(err(hl, format!("expected `q d`, found `{header}`")));
    };
    let q: u64 = q.parse().map_err(|_| err(hl, format!("bad field order `{q}`")))?;
    let d: usize = d.parse().map_err(|_| err(hl, format!("bad dimension `{d}`")))?;
    let field = Field::from_order(q).map_err(|e| err(hl, e.to_string()))?;
    let space = Space::new(&field, d, cap)?;
    let mut set = PointSet::empty(&space);
    for (ln, line) in lines {
        let coords = line
            .split(',')
            .map(|c| field.parse_elem(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(ln, e.to_string()))?;
        if coords.len() != d {
            return Err(err(ln, format!("expected {d} coordinates, found {}", coords.len())));
        }
        if !set.insert(&coords)? {
            return Err(err(ln, format!("duplicate point `{line}`")));
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for q in [3u64, 4, 9, 11] {
            let f = Field::from_order(q).unwrap();
            let s = Space::new(&f, 2, 1000).unwrap();
            let set = PointSet::from_indices(&s, (0..s.size()).filter(|i| i % 3 != 1));
            let text = write_point_set(&set);
            assert_eq!(read_point_set(&text, 1000).unwrap(), set);
            assert_eq!(write_point_set(&read_point_set(&text, 1000).unwrap()), text);
        }
    }

    #[test]
    fn format_sample() {
        let f = Field::new(2, 2).unwrap();
        let s = Space::new(&f, 2, 100).unwrap();
        let set = PointSet::from_points(&s, &[vec![f.elem(0).unwrap(), f.elem(2).unwrap()]]).unwrap();
        assert_eq!(write_point_set(&set), "4 2\n00,01\n");
    }

    #[test]
    fn comments_and_errors() {
        let ok = "# plane\n3 2\n\n0,1\n2,2\n";
        assert_eq!(read_point_set(ok, 100).unwrap().len(), 2);
        let cases = [
            ("", 1),
            ("3\n", 1),
            ("6 2\n", 1),
            ("3 2\n0,1,2\n", 2),
            ("3 2\n0,3\n", 2),
            ("3 2\n0,1\n0,1\n", 3),
        ];
        for (text, line) in cases {
            match read_point_set(text, 100) {
                Err(GeometryError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            read_point_set("7 4\n", 100),
            Err(GeometryError::PointCap { .. })
        ));
    }
}
