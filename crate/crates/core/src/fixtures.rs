//! Small hand-built graphs used by tests, the CLI `synth` command and the
//! Python bindings.

use crate::graph::{AcademicGraph, GraphBuilder, YearRange};

/// Twelve papers `a`..`l`, ten citation edges, five papers without a year
/// (`a`, `b`, `e`, `i`, `j`).
pub fn citation_example() -> AcademicGraph {
    let mut b = GraphBuilder::new(YearRange::default());
    let years = [
        ("a", None),
        ("b", None),
        ("c", Some(1993)),
        ("d", Some(1999)),
        ("e", None),
        ("f", Some(2003)),
        ("g", Some(2001)),
        ("h", Some(2007)),
        ("i", None),
        ("j", None),
        ("k", Some(2005)),
        ("l", Some(2006)),
    ];
    for (id, y) in years {
        b.add_paper(id, y);
    }
    // (cited, citing)
    for (t, f) in [
        ("a", "d"),
        ("c", "d"),
        ("d", "e"),
        ("e", "h"),
        ("e", "i"),
        ("f", "i"),
        ("g", "i"),
        ("i", "j"),
        ("i", "k"),
        ("i", "l"),
    ] {
        b.add_citation(t, f);
    }
    b.build().0
}

/// Eight papers `a`..`h` and four authors `i`..`l`; `c`, `f`, `g`, `h` have no
/// year and `h` has no authors.
pub fn authorship_example() -> AcademicGraph {
    let mut b = GraphBuilder::new(YearRange::default());
    let years = [
        ("a", Some(1996)),
        ("b", Some(1999)),
        ("c", None),
        ("d", Some(2002)),
        ("e", Some(2003)),
        ("f", None),
        ("g", None),
        ("h", None),
    ];
    for (id, y) in years {
        b.add_paper(id, y);
    }
    for (a, p) in [
        ("i", "a"),
        ("i", "b"),
        ("i", "c"),
        ("j", "c"),
        ("k", "c"),
        ("j", "d"),
        ("k", "d"),
        ("j", "e"),
        ("k", "f"),
        ("l", "f"),
        ("l", "g"),
    ] {
        b.add_authorship(a, p);
    }
    b.build().0
}

/// The seven three-paper citation topologies with `b` known (2000) and `a`,
/// `c` missing. Index `i` holds case `i + 1`. In case 6 paper `a`, and in
/// case 7 paper `c`, cannot receive any bound from the propagated windows.
pub fn line_topologies() -> Vec<AcademicGraph> {
    // (cited, citing)
    let cases: [[(&str, &str); 2]; 7] = [
        [("b", "a"), ("b", "c")],
        [("a", "b"), ("c", "b")],
        [("b", "a"), ("c", "b")],
        [("b", "a"), ("a", "c")],
        [("a", "b"), ("c", "a")],
        [("b", "c"), ("a", "c")],
        [("b", "a"), ("c", "a")],
    ];
    cases
        .iter()
        .map(|edges| {
            let mut b = GraphBuilder::new(YearRange::default());
            b.add_paper("a", None);
            b.add_paper("b", Some(2000));
            b.add_paper("c", None);
            for &(t, f) in edges {
                b.add_citation(t, f);
            }
            b.build().0
        })
        .collect()
}

/// Named fixture lookup for the CLI.
pub fn by_name(name: &str) -> Option<AcademicGraph> {
    match name {
        "citation-example" => Some(citation_example()),
        "authorship-example" => Some(authorship_example()),
        _ => {
            let n: usize = name.strip_prefix("line-")?.parse().ok()?;
            line_topologies().into_iter().nth(n.checked_sub(1)?)
        }
    }
}
