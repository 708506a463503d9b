//! Small named graphs used as fixtures and patterns.

use super::Graph;

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
}

/// `width × height` square grid; vertex `(x, y)` has id `y * width + x`.
pub fn grid(width: usize, height: usize) -> Graph {
    let mut g = Graph::new(width * height);
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                g.add_edge(v, v + 1).expect("valid");
            }
            if y + 1 < height {
                g.add_edge(v, v + width).expect("valid");
            }
            g.set_label(v, format!("({x},{y})"));
        }
    }
    g
}

/// `side × side` square grid.
pub fn grid2(side: usize) -> Graph {
    grid(side, side)
}

/// Grid with both diagonals in every square (the king graph).
pub fn king(width: usize, height: usize) -> Graph {
    let mut g = grid(width, height);
    for y in 0..height.saturating_sub(1) {
        for x in 0..width.saturating_sub(1) {
            let v = y * width + x;
            g.add_edge(v, v + width + 1).expect("valid");
            g.add_edge(v + 1, v + width).expect("valid");
        }
    }
    g
}

/// Parses pattern names such as `K5`, `K3,3`, `P4`, `C6`.
pub fn by_name(name: &str) -> Option<Graph> {
    let name = name.trim();
    let (head, rest) = name.split_at(1.min(name.len()));
    let nums: Vec<usize> = rest
        .split([',', 'x'])
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .ok()?;
    match (head, nums.as_slice()) {
        ("K", [n]) => Some(complete(*n)),
        ("K", [a, b]) => Some(complete_bipartite(*a, *b)),
        ("P", [n]) => Some(path(*n)),
        ("C", [n]) if *n >= 3 => Some(cycle(*n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(complete(5).m(), 10);
        assert_eq!(complete_bipartite(3, 3).m(), 9);
        assert_eq!(grid(3, 2).m(), 7);
        assert_eq!(king(3, 3).degree(4), 8);
        assert_eq!(star(4).degree(0), 4);
    }

    #[test]
    fn pattern_names() {
        assert_eq!(by_name("K5").unwrap().m(), 10);
        assert_eq!(by_name("K3,3").unwrap(), complete_bipartite(3, 3));
        assert_eq!(by_name("C4").unwrap().m(), 4);
        assert!(by_name("Q7").is_none());
    }
}
