//! The edge-list interchange format.
//!
//! ```text
//! n m
//! u v          (m lines, 0-based ids)
//! coords       (optional)
//! x y          (n lines, rationals written p/q or p)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use indcomplex_core::graph::Point;
use indcomplex_core::Graph;
use num_rational::Ratio;

pub fn parse(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (no, header) = lines.next().ok_or_else(|| anyhow!("empty edge list"))?;
    let (n, m) = two::<usize>(header).with_context(|| format!("line {no}: expected `n m`"))?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, l) = lines.next().ok_or_else(|| anyhow!("expected {m} edges, found {}", edges.len()))?;
        let (u, v) = two::<usize>(l).with_context(|| format!("line {no}: expected `u v`"))?;
        if u >= n || v >= n {
            bail!("line {no}: vertex out of range for n = {n}");
        }
        edges.push((u, v));
    }
    let mut g = Graph::from_edges(n, &edges)?;
    if let Some((no, l)) = lines.next() {
        if l != "coords" {
            bail!("line {no}: expected `coords` or end of file, found {l:?}");
        }
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, l) = lines.next().ok_or_else(|| anyhow!("expected {n} coordinate lines, found {}", coords.len()))?;
            let (x, y) = two::<Ratio<i64>>(l).with_context(|| format!("line {no}: expected `x y`"))?;
            coords.push(Point::new(x, y));
        }
        g.set_coords(coords)?;
        if let Some((no, _)) = lines.next() {
            bail!("line {no}: trailing content after the coordinate block");
        }
    }
    Ok(g)
}

fn two<T: std::str::FromStr>(line: &str) -> Result<(T, T)>
where
    T::Err: std::fmt::Display,
{
    let mut it = line.split_whitespace();
    let mut next = || -> Result<T> {
        let tok = it.next().ok_or_else(|| anyhow!("too few fields"))?;
        tok.parse::<T>().map_err(|e| anyhow!("bad field {tok:?}: {e}"))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        bail!("too many fields");
    }
    Ok(pair)
}

pub fn write(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(coords) = g.coords() {
        out.push_str("coords\n");
        for p in coords {
            let _ = writeln!(out, "{} {}", p.x, p.y);
        }
    }
    out
}

pub fn read_file(path: &std::path::Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use indcomplex_core::lattice::gen_kagome;

    #[test]
    fn round_trip_with_coords() {
        let g = gen_kagome(2, 2).unwrap();
        let text = write(&g);
        let h = parse(&text).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert_eq!(g.coords(), h.coords());
    }

    #[test]
    fn comments_and_errors() {
        let g = parse("# triangle\n3 3\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(parse("3 1\n0 5\n").is_err());
        assert!(parse("3 2\n0 1\n").is_err());
        assert!(parse("2 1\n0 1\nextra\n").is_err());
        assert!(parse("2 1\n0 1\ncoords\n1/2 0\n").is_err());
        let c = parse("2 1\n0 1\ncoords\n1/2 0\n3 -2/3\n").unwrap();
        assert_eq!(c.coords().unwrap()[1].y, Ratio::new(-2, 3));
    }
}
