//! Parsers for the textual flag values.

use coercive_kit::space::{BoundaryPart, BoundaryRegion, DomainBox, Face};

/// `lo:hi[,lo:hi…]`
pub fn parse_box(s: &str) -> Result<DomainBox<f64>, String> {
    let intervals = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once(':')
                .ok_or_else(|| format!("interval `{part}` is not of the form lo:hi"))?;
            Ok((parse_num(lo)?, parse_num(hi)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    DomainBox::new(intervals).map_err(|e| e.to_string())
}

/// `full`, `face:<id>`, `face:<id>:<b>` (fraction `(0, b)`), or
/// `face:<id>:<a>-<b>`; several parts may be joined with `+`.
pub fn parse_region(s: &str, d: usize) -> Result<BoundaryRegion<f64>, String> {
    if s == "full" {
        return Ok(BoundaryRegion::full(d));
    }
    let parts = s
        .split('+')
        .map(|part| {
            let mut it = part.split(':');
            if it.next() != Some("face") {
                return Err(format!("region part `{part}` must start with `face:` (or use `full`)"));
            }
            let id: usize = it
                .next()
                .ok_or_else(|| format!("region part `{part}` is missing a face id"))?
                .parse()
                .map_err(|_| format!("face id in `{part}` is not a non-negative integer"))?;
            let fraction = match it.next() {
                None => (0.0, 1.0),
                Some(f) => match f.split_once('-') {
                    Some((a, b)) => (parse_num(a)?, parse_num(b)?),
                    None => (0.0, parse_num(f)?),
                },
            };
            if it.next().is_some() {
                return Err(format!("region part `{part}` has too many fields"));
            }
            Ok(BoundaryPart {
                face: Face(id),
                fraction,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(BoundaryRegion::new(parts))
}

/// `x[;y…]` with coordinates separated by `,`. In one dimension every number
/// is a point of its own, so `0,1` and `0;1` both give two points.
pub fn parse_points(s: &str, d: usize) -> Result<Vec<Vec<f64>>, String> {
    let groups = s
        .split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| g.split(',').map(parse_num).collect::<Result<Vec<f64>, String>>())
        .collect::<Result<Vec<_>, String>>()?;
    if d == 1 {
        return Ok(groups.into_iter().flatten().map(|x| vec![x]).collect());
    }
    for g in &groups {
        if g.len() != d {
            return Err(format!("point {g:?} has {} coordinates, expected {d}", g.len()));
        }
    }
    Ok(groups)
}

/// Comma-separated non-negative integers.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| format!("`{x}` is not a non-negative integer"))
        })
        .collect()
}

fn parse_num(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes() {
        let b = parse_box("0:1,-1:2").unwrap();
        assert_eq!(b.intervals(), &[(0.0, 1.0), (-1.0, 2.0)]);
        assert!(parse_box("1:0").is_err());
        assert!(parse_box("0-1").is_err());
    }

    #[test]
    fn regions() {
        assert_eq!(parse_region("full", 2).unwrap().parts().len(), 4);
        let r = parse_region("face:2:0.5", 2).unwrap();
        assert_eq!(r.parts()[0].face, Face(2));
        assert_eq!(r.parts()[0].fraction, (0.0, 0.5));
        let r = parse_region("face:0:0.25-0.75+face:1", 2).unwrap();
        assert_eq!(r.parts()[0].fraction, (0.25, 0.75));
        assert_eq!(r.parts()[1].fraction, (0.0, 1.0));
        assert!(parse_region("edge:1", 2).is_err());
    }

    #[test]
    fn points_by_dimension() {
        assert_eq!(parse_points("0.5,0.5", 1).unwrap(), vec![vec![0.5], vec![0.5]]);
        assert_eq!(parse_points("0;1", 1).unwrap(), vec![vec![0.0], vec![1.0]]);
        assert_eq!(
            parse_points("0,0;1,0;0,1", 2).unwrap(),
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]
        );
        assert!(parse_points("0.5,0.5", 3).is_err());
    }
}
