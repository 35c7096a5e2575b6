//! Local update rules written as case tables. These are the scalar reference;
//! the packed kernels in [`super::kernel`] are checked against them.
//!
//! Arguments are the left neighbor `i - 1`, the center `i`, and the arrows at
//! the same two sites. Model A reads only the center arrow.

use super::{Arrow, Symbol};

pub type RuleA = fn(bool, bool, Arrow) -> bool;
pub type RuleParticle = fn(bool, bool, Arrow, Arrow) -> bool;
pub type RuleColored = fn(Symbol, Symbol, Arrow, Arrow) -> Symbol;

/// `01 -> 0`, `10 -> 1`; on `00` up gives 1, on `11` up gives 0 (up switches).
pub fn rule_a(left: bool, center: bool, u: Arrow) -> bool {
    use Arrow::*;
    match (left, center, u) {
        (false, true, _) => false,
        (true, false, _) => true,
        (false, false, Up) => true,
        (false, false, Right) => false,
        (true, true, Up) => false,
        (true, true, Right) => true,
    }
}

/// Annihilating walks: a particle arrives at `i` iff exactly one of
/// "left hops in" and "center stays" happens.
pub fn rule_b(left: bool, center: bool, ul: Arrow, uc: Arrow) -> bool {
    use Arrow::*;
    matches!(
        (left, center, ul, uc),
        (true, false, Right, _) | (false, true, _, Up) | (true, true, Up, Up) | (true, true, Right, Right)
    )
}

/// Coalescing walks: same motion as [`rule_b`], but a collision leaves one particle.
pub fn rule_c(left: bool, center: bool, ul: Arrow, uc: Arrow) -> bool {
    use Arrow::*;
    matches!(
        (left, center, ul, uc),
        (true, false, Right, _) | (false, true, _, Up) | (true, true, Up, Up) | (true, true, Right, _)
    )
}

/// Color of a particle formed by a collision: equal colors give green,
/// different colors give blue.
pub fn merge_colors(left: Symbol, right: Symbol) -> Symbol {
    match (left, right) {
        (Symbol::Blue, Symbol::Blue) | (Symbol::Green, Symbol::Green) => Symbol::Green,
        _ => Symbol::Blue,
    }
}

/// Colored coalescing walks; occupancy follows [`rule_c`].
pub fn rule_d(left: Symbol, center: Symbol, ul: Arrow, uc: Arrow) -> Symbol {
    let arrives = left.is_occupied() && ul == Arrow::Right;
    let stays = center.is_occupied() && uc == Arrow::Up;
    match (arrives, stays) {
        (true, true) => merge_colors(left, center),
        (true, false) => left,
        (false, true) => center,
        (false, false) => Symbol::Empty,
    }
}

/// [`rule_a`] with one entry flipped: `10 -> 0`. Used as a mutation control.
pub fn rule_a_broken(left: bool, center: bool, u: Arrow) -> bool {
    if left && !center {
        false
    } else {
        rule_a(left, center, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Arrow::*;

    #[test]
    fn model_a_table() {
        assert!(rule_a(true, false, Up));
        assert!(rule_a(true, false, Right));
        assert!(!rule_a(false, true, Up));
        assert!(rule_a(false, false, Up));
        assert!(!rule_a(false, false, Right));
        assert!(!rule_a(true, true, Up));
        assert!(rule_a(true, true, Right));
    }

    #[test]
    fn b_and_c_collisions() {
        assert!(rule_b(true, true, Right, Right));
        assert!(!rule_b(true, true, Right, Up));
        assert!(rule_c(true, true, Right, Up));
        assert!(!rule_c(true, true, Up, Right));
        assert!(rule_c(true, false, Right, Up));
        for ul in Arrow::BOTH {
            for uc in Arrow::BOTH {
                assert!(!rule_b(false, false, ul, uc));
                assert!(!rule_c(false, false, ul, uc));
            }
        }
    }

    #[test]
    fn color_merges() {
        use Symbol::*;
        assert_eq!(rule_d(Blue, Blue, Right, Up), Green);
        assert_eq!(rule_d(Blue, Green, Right, Up), Blue);
        assert_eq!(rule_d(Green, Blue, Right, Up), Blue);
        assert_eq!(rule_d(Green, Green, Right, Up), Green);
        assert_eq!(rule_d(Green, Empty, Up, Up), Empty);
        assert_eq!(rule_d(Blue, Green, Up, Up), Green);
    }
}
