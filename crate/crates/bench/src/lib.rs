//! Program generators for benchmarks.

use std::fmt::Write as _;

use xasp_core::{parse_program, GroundProgram};

/// Bob's week over `days` days: every day but the first two is a free
/// choice between home and the opera, so there are `2^(days-2)` plans.
pub fn week(days: usize) -> GroundProgram {
    let mut s = String::from("home(d0).\nbaby(d1).\n");
    for d in 0..days {
        let _ = writeln!(s, "day(d{d}).");
        let _ = writeln!(s, "opera(d{d}) :- day(d{d}), not home(d{d}).");
        let _ = writeln!(s, "home(d{d}) :- day(d{d}), not opera(d{d}).");
    }
    s.push_str("home(d1) :- day(d1), baby(d1).\n");
    parse_program(&s).unwrap()
}

/// 3-coloring of the cycle on `n` vertices.
pub fn cycle_coloring(n: usize) -> GroundProgram {
    let colors = ["r", "g", "b"];
    let mut s = String::new();
    for u in 0..n {
        for (i, c) in colors.iter().enumerate() {
            let o: Vec<&str> = colors.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect();
            let _ = writeln!(s, "col({u},{c}) :- not col({u},{}), not col({u},{}).", o[0], o[1]);
        }
        let v = (u + 1) % n;
        let _ = writeln!(s, "edge({u},{v}).");
        for c in colors {
            let _ = writeln!(s, ":- col({u},{c}), col({v},{c}), edge({u},{v}).");
        }
    }
    parse_program(&s).unwrap()
}

/// Even negative loops `p_i :- not q_i. q_i :- not p_i.` chained by
/// `p_{i+1} :- p_i.`
pub fn loops(n: usize) -> GroundProgram {
    let mut s = String::new();
    for i in 0..n {
        let _ = writeln!(s, "p{i} :- not q{i}.\nq{i} :- not p{i}.");
        if i + 1 < n {
            let _ = writeln!(s, "p{} :- p{i}.", i + 1);
        }
    }
    parse_program(&s).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use xasp_core::{enumerate_answer_sets, SolveOptions};

    #[test]
    fn generator_sizes() {
        let count = |p: &GroundProgram| enumerate_answer_sets(p, &SolveOptions::default()).unwrap().len();
        assert_eq!(count(&week(7)), 32);
        assert_eq!(count(&cycle_coloring(4)), 18);
        assert_eq!(count(&cycle_coloring(5)), 30);
        assert!(count(&loops(4)) > 0);
    }
}
