//! Step kernels. The functions at module level work on packed words; the
//! [`reference`] submodule applies the case tables of [`super::rules`] cell by cell.

use super::rules::{self, RuleA, RuleColored};
use super::{Alphabet, Arrow, BitPlane, Boundary, Configuration, Model, Symbol, UpdateRow};
use crate::{Error, Result};

fn check_inputs(model: Model, x: &Configuration, u: &UpdateRow) -> Result<()> {
    if x.alphabet() != model.alphabet() {
        return Err(Error::WrongAlphabet {
            model,
            expected: model.alphabet(),
            got: x.alphabet(),
        });
    }
    if x.len() < 2 {
        return Err(Error::WindowTooShort {
            width: x.len(),
            needed: 2,
        });
    }
    u.aligned_with(x)
}

/// `(left, center)` views of a plane, indexed by output cell.
fn neighbors(plane: &BitPlane, boundary: Boundary) -> (BitPlane, BitPlane) {
    let n = plane.len();
    match boundary {
        Boundary::Line => (plane.extract(0, n - 1), plane.extract(1, n - 1)),
        Boundary::Cycle => (plane.left_neighbors_cyclic(), plane.clone()),
    }
}

fn output_offset(x: &Configuration, boundary: Boundary) -> i64 {
    match boundary {
        Boundary::Line => x.offset() + 1,
        Boundary::Cycle => x.offset(),
    }
}

fn map4(
    a: &BitPlane,
    b: &BitPlane,
    c: &BitPlane,
    d: &BitPlane,
    f: impl Fn(u64, u64, u64, u64) -> u64,
) -> BitPlane {
    let words = a
        .words()
        .iter()
        .zip(b.words())
        .zip(c.words())
        .zip(d.words())
        .map(|(((&a, &b), &c), &d)| f(a, b, c, d))
        .collect();
    BitPlane::from_words(words, a.len())
}

/// One step of `model` on packed words.
///
/// On a line window the output covers `[offset + 1, end)`; on a cycle it keeps
/// the input window. The row must cover exactly the input window.
pub fn step(model: Model, x: &Configuration, u: &UpdateRow, boundary: Boundary) -> Result<Configuration> {
    check_inputs(model, x, u)?;
    let (l, c) = neighbors(x.primary(), boundary);
    let (ul, uc) = neighbors(u.up_plane(), boundary);
    let offset = output_offset(x, boundary);

    match model {
        Model::A => {
            let out = map4(&l, &c, &ul, &uc, |l, c, _ul, uc| {
                let differ = l ^ c;
                (differ & l) | (!differ & (c ^ uc))
            });
            Configuration::from_planes(Alphabet::Binary, offset, out, None)
        }
        Model::B => {
            let out = map4(&l, &c, &ul, &uc, |l, c, ul, uc| (l & !ul) ^ (c & uc));
            Configuration::from_planes(Alphabet::Particle, offset, out, None)
        }
        Model::C => {
            let out = map4(&l, &c, &ul, &uc, |l, c, ul, uc| (l & !ul) | (c & uc));
            Configuration::from_planes(Alphabet::Particle, offset, out, None)
        }
        Model::D => {
            let color = x.color().expect("colored configuration has a color plane");
            let (gl, gc) = neighbors(color, boundary);
            let arrive = l.zip_with(&ul, |l, ul| l & !ul);
            let stay = c.zip_with(&uc, |c, uc| c & uc);
            let occ = arrive.zip_with(&stay, |a, s| a | s);
            let green = map4(&arrive, &stay, &gl, &gc, |a, s, gl, gc| {
                (a & !s & gl) | (s & !a & gc) | (a & s & !(gl ^ gc))
            });
            Configuration::from_planes(Alphabet::Colored, offset, occ, Some(green))
        }
    }
}

pub fn step_a(x: &Configuration, u: &UpdateRow) -> Result<Configuration> {
    step(Model::A, x, u, Boundary::Line)
}

pub fn step_b(y: &Configuration, u: &UpdateRow) -> Result<Configuration> {
    step(Model::B, y, u, Boundary::Line)
}

pub fn step_c(z: &Configuration, u: &UpdateRow) -> Result<Configuration> {
    step(Model::C, z, u, Boundary::Line)
}

pub fn step_d(d: &Configuration, u: &UpdateRow) -> Result<Configuration> {
    step(Model::D, d, u, Boundary::Line)
}

pub mod reference {
    use super::*;

    /// Local `(left, center)` index pairs for each output cell.
    pub(crate) fn cell_pairs(n: usize, boundary: Boundary) -> impl Iterator<Item = (usize, usize)> {
        let cycle = boundary == Boundary::Cycle;
        let cells = if cycle { n } else { n - 1 };
        (0..cells).map(move |j| if cycle { ((j + n - 1) % n, j) } else { (j, j + 1) })
    }

    fn bits(x: &Configuration) -> Vec<bool> {
        x.primary().iter().collect()
    }

    /// Cell-by-cell step driven by the case tables.
    pub fn step(model: Model, x: &Configuration, u: &UpdateRow, boundary: Boundary) -> Result<Configuration> {
        if model == Model::A {
            return step_a_with(rules::rule_a, x, u, boundary);
        }
        check_inputs(model, x, u)?;
        let arrows = u.arrows();
        let offset = output_offset(x, boundary);
        let pairs = cell_pairs(x.len(), boundary);
        match model {
            Model::B | Model::C => {
                let rule = if model == Model::B { rules::rule_b } else { rules::rule_c };
                let v = bits(x);
                let out: Vec<Symbol> = pairs
                    .map(|(l, c)| {
                        if rule(v[l], v[c], arrows[l], arrows[c]) {
                            Symbol::Particle
                        } else {
                            Symbol::Empty
                        }
                    })
                    .collect();
                Configuration::from_symbols(Alphabet::Particle, offset, &out)
            }
            Model::D => step_d_with(rules::rule_d, x, u, boundary),
            Model::A => unreachable!(),
        }
    }

    /// Model D with a caller-supplied local rule.
    pub fn step_d_with(rule: RuleColored, x: &Configuration, u: &UpdateRow, boundary: Boundary) -> Result<Configuration> {
        check_inputs(Model::D, x, u)?;
        let s = x.symbols();
        let arrows = u.arrows();
        let out: Vec<Symbol> = cell_pairs(x.len(), boundary)
            .map(|(l, c)| rule(s[l], s[c], arrows[l], arrows[c]))
            .collect();
        Configuration::from_symbols(Alphabet::Colored, output_offset(x, boundary), &out)
    }

    /// Model A with a caller-supplied local rule.
    pub fn step_a_with(rule: RuleA, x: &Configuration, u: &UpdateRow, boundary: Boundary) -> Result<Configuration> {
        check_inputs(Model::A, x, u)?;
        let v = bits(x);
        let arrows: Vec<Arrow> = u.arrows();
        let out: Vec<Symbol> = cell_pairs(x.len(), boundary)
            .map(|(l, c)| if rule(v[l], v[c], arrows[c]) { Symbol::One } else { Symbol::Zero })
            .collect();
        Configuration::from_symbols(Alphabet::Binary, output_offset(x, boundary), &out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::UpdateStream;

    fn cfg(alphabet: Alphabet, offset: i64, w: &str) -> Configuration {
        Configuration::parse(alphabet, offset, w).unwrap()
    }

    fn row(offset: i64, w: &str) -> UpdateRow {
        UpdateRow::parse(offset, w).unwrap()
    }

    #[test]
    fn model_a_forced_cases() {
        let x = cfg(Alphabet::Binary, 0, "10");
        for u in ["^^", ">>", "^>", ">^"] {
            let y = step_a(&x, &row(0, u)).unwrap();
            assert_eq!(y.offset(), 1);
            assert_eq!(y.symbol(1), Some(Symbol::One));
        }
        let x = cfg(Alphabet::Binary, 0, "00");
        assert_eq!(step_a(&x, &row(0, ">^")).unwrap().symbol(1), Some(Symbol::One));
        assert_eq!(step_a(&x, &row(0, "^>")).unwrap().symbol(1), Some(Symbol::Zero));
    }

    #[test]
    fn model_a_shifts_alternating_words() {
        let x = cfg(Alphabet::Binary, 0, "010101");
        let s = UpdateStream::new(5, 0);
        for n in 0..8 {
            let y = step_a(&x, &s.row(n, 0, 6)).unwrap();
            // Sites 1..=5 take the values of sites 0..=4.
            assert_eq!(y.to_glyphs(), "01010");
            assert_eq!(y.offset(), 1);
        }
    }

    #[test]
    fn model_b_cases() {
        let p = |w| cfg(Alphabet::Particle, 0, w);
        assert_eq!(step_b(&p("##"), &row(0, ">>")).unwrap().to_glyphs(), "#");
        assert_eq!(step_b(&p("##"), &row(0, ">^")).unwrap().to_glyphs(), ".");
        for u in ["^^", ">>", "^>", ">^"] {
            assert_eq!(step_b(&p(".."), &row(0, u)).unwrap().to_glyphs(), ".");
        }
    }

    #[test]
    fn model_c_cases() {
        let p = |w| cfg(Alphabet::Particle, 0, w);
        assert_eq!(step_c(&p("##"), &row(0, ">^")).unwrap().to_glyphs(), "#");
        assert_eq!(step_c(&p("##"), &row(0, "^>")).unwrap().to_glyphs(), ".");
        assert_eq!(step_c(&p("#."), &row(0, ">^")).unwrap().to_glyphs(), "#");
        assert_eq!(step_c(&p("#."), &row(0, ">>")).unwrap().to_glyphs(), "#");
    }

    #[test]
    fn model_d_cases() {
        let d = |w| cfg(Alphabet::Colored, 0, w);
        assert_eq!(step_d(&d("bb"), &row(0, ">^")).unwrap().to_glyphs(), "G");
        assert_eq!(step_d(&d("bg"), &row(0, ">^")).unwrap().to_glyphs(), "B");
        assert_eq!(step_d(&d("g."), &row(0, "^^")).unwrap().to_glyphs(), ".");
        assert_eq!(step_d(&d("g."), &row(0, "^>")).unwrap().to_glyphs(), ".");
        assert_eq!(step_d(&d("gb"), &row(0, ">>")).unwrap().to_glyphs(), "G");
    }

    #[test]
    fn errors() {
        let x = cfg(Alphabet::Binary, 0, "0");
        assert!(matches!(step_a(&x, &row(0, "^")), Err(Error::WindowTooShort { .. })));
        let x = cfg(Alphabet::Binary, 0, "01");
        assert!(matches!(step_a(&x, &row(1, "^^")), Err(Error::MisalignedRow { .. })));
        assert!(matches!(step_a(&x, &row(0, "^^^")), Err(Error::MisalignedRow { .. })));
        let y = cfg(Alphabet::Particle, 0, "#.");
        assert!(matches!(step_a(&y, &row(0, "^^")), Err(Error::WrongAlphabet { .. })));
        assert!(matches!(step_d(&y, &row(0, "^^")), Err(Error::WrongAlphabet { .. })));
    }

    #[test]
    fn cycle_keeps_width_and_wraps() {
        let z = cfg(Alphabet::Particle, 0, "...#");
        // Rightmost particle hops onto site 0 through the wrap.
        let out = step(Model::C, &z, &row(0, "^^^>"), Boundary::Cycle).unwrap();
        assert_eq!(out.to_glyphs(), "#...");
        assert_eq!(out.offset(), 0);
    }

    #[test]
    fn packed_matches_reference_on_wide_windows() {
        let s = UpdateStream::new(99, 3);
        for model in [Model::A, Model::B, Model::C, Model::D] {
            for boundary in [Boundary::Line, Boundary::Cycle] {
                for &(offset, len) in &[(-70i64, 2usize), (0, 63), (3, 64), (-5, 65), (17, 200)] {
                    let x = random_config(model.alphabet(), offset, len, &s);
                    let u = s.row(1, offset, len);
                    assert_eq!(
                        step(model, &x, &u, boundary).unwrap(),
                        reference::step(model, &x, &u, boundary).unwrap(),
                        "{model:?} {boundary:?} {offset} {len}"
                    );
                }
            }
        }
    }

    fn random_config(alphabet: Alphabet, offset: i64, len: usize, s: &UpdateStream) -> Configuration {
        use crate::lattice::Lane;
        let a = s.bits(Lane::Init, 0, offset, len);
        let b = s.bits(Lane::Init, 1, offset, len);
        let color = (alphabet == Alphabet::Colored).then_some(b);
        Configuration::from_planes(alphabet, offset, a, color).unwrap()
    }
}
