use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::lattice::{trace_merges, Alphabet, Arrow, Symbol, Trajectory};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Text,
    Svg,
}

impl FromStr for DiagramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Self::Text),
            "svg" => Ok(Self::Svg),
            _ => Err(Error::InvalidParameter(format!("unknown diagram format `{s}`"))),
        }
    }
}

/// Which surviving particle has its ancestry highlighted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Genealogy {
    #[default]
    Off,
    Leftmost,
    At(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgPalette {
    pub background: String,
    pub zero: String,
    pub one: String,
    pub empty: String,
    pub particle: String,
    pub blue: String,
    pub green: String,
    pub overlay: String,
    pub arrow: String,
}

impl Default for SvgPalette {
    fn default() -> Self {
        let s = |c: &str| c.to_string();
        Self {
            background: s("#ffffff"),
            zero: s("#ffffff"),
            one: s("#000000"),
            empty: s("#ffffff"),
            particle: s("#000000"),
            blue: s("#000000"),
            green: s("#9a9a9a"),
            overlay: s("#e8710a"),
            arrow: s("#c0392b"),
        }
    }
}

impl SvgPalette {
    pub fn color(&self, s: Symbol) -> &str {
        match s {
            Symbol::Zero => &self.zero,
            Symbol::One => &self.one,
            Symbol::Empty => &self.empty,
            Symbol::Particle => &self.particle,
            Symbol::Blue => &self.blue,
            Symbol::Green => &self.green,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStyle {
    /// `0`, `1`
    pub binary: [char; 2],
    /// empty, particle
    pub particle: [char; 2],
    /// empty, blue, green
    pub colored: [char; 3],
    /// Replaces the glyph of a highlighted particle in text output.
    pub highlight: char,
    pub palette: SvgPalette,
    pub cell_px: u32,
    pub arrows: bool,
    pub genealogy: Genealogy,
}

impl Default for DiagramStyle {
    fn default() -> Self {
        Self {
            binary: ['0', '1'],
            particle: ['.', '#'],
            colored: ['.', 'B', 'G'],
            highlight: '@',
            palette: SvgPalette::default(),
            cell_px: 10,
            arrows: false,
            genealogy: Genealogy::Off,
        }
    }
}

impl DiagramStyle {
    pub fn glyph(&self, alphabet: Alphabet, s: Symbol) -> char {
        match (alphabet, s) {
            (_, Symbol::Zero) => self.binary[0],
            (_, Symbol::One) => self.binary[1],
            (Alphabet::Colored, Symbol::Empty) => self.colored[0],
            (_, Symbol::Empty) => self.particle[0],
            (_, Symbol::Particle) => self.particle[1],
            (_, Symbol::Blue) => self.colored[1],
            (_, Symbol::Green) => self.colored[2],
        }
    }
}

/// Cells `(time, local index)` on the ancestry of the chosen survivor.
fn overlay_cells(traj: &Trajectory, which: Genealogy) -> Result<BTreeSet<(usize, usize)>> {
    if which == Genealogy::Off {
        return Ok(BTreeSet::new());
    }
    let forest = trace_merges(traj)?;
    let id = match which {
        Genealogy::Leftmost => forest.survivors.first().map(|s| s.1),
        Genealogy::At(site) => forest.survivors.iter().find(|s| s.0 == site).map(|s| s.1),
        Genealogy::Off => unreachable!(),
    }
    .ok_or_else(|| Error::InvalidParameter("no surviving particle to highlight".into()))?;
    let family = forest.ancestors(id);
    let log = traj.merges.as_ref().expect("forest needs a merge log");
    Ok(log
        .ids
        .iter()
        .enumerate()
        .flat_map(|(t, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, k)| k.is_some_and(|k| family.contains(&k)))
                .map(move |(j, _)| (t, j))
        })
        .collect())
}

/// Draws a trajectory with time increasing downward and sites aligned by
/// absolute position. The initial configuration is the first row.
pub fn render(traj: &Trajectory, style: &DiagramStyle, format: DiagramFormat) -> Result<String> {
    if traj.configs.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let overlay = overlay_cells(traj, style.genealogy)?;
    let lo = traj.configs.iter().map(|c| c.offset()).min().expect("nonempty");
    let hi = traj.configs.iter().map(|c| c.end()).max().expect("nonempty");
    Ok(match format {
        DiagramFormat::Text => render_text(traj, style, &overlay, lo),
        DiagramFormat::Svg => render_svg(traj, style, &overlay, lo, hi),
    })
}

fn render_text(traj: &Trajectory, style: &DiagramStyle, overlay: &BTreeSet<(usize, usize)>, lo: i64) -> String {
    let alphabet = traj.model.alphabet();
    let mut out = String::new();
    for (t, x) in traj.configs.iter().enumerate() {
        out.extend(std::iter::repeat_n(' ', (x.offset() - lo) as usize));
        for (j, s) in x.symbols().into_iter().enumerate() {
            let g = if overlay.contains(&(t, j)) { style.highlight } else { style.glyph(alphabet, s) };
            out.push(g);
        }
        out.push('\n');
        if style.arrows {
            if let Some(u) = traj.rows.get(t) {
                out.extend(std::iter::repeat_n(' ', (u.offset() - lo) as usize));
                out.extend(u.arrows().into_iter().map(Arrow::glyph));
                out.push('\n');
            }
        }
    }
    out
}

fn render_svg(traj: &Trajectory, style: &DiagramStyle, overlay: &BTreeSet<(usize, usize)>, lo: i64, hi: i64) -> String {
    let c = style.cell_px.max(4) as i64;
    let p = &style.palette;
    let width = (hi - lo) * c;
    let height = traj.configs.len() as i64 * c;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"{}\"/>", p.background);
    for (t, x) in traj.configs.iter().enumerate() {
        let y = t as i64 * c;
        for (j, s) in x.symbols().into_iter().enumerate() {
            let px = (x.offset() + j as i64 - lo) * c;
            let fill = p.color(s);
            if fill != p.background {
                let _ = writeln!(out, "<rect x=\"{px}\" y=\"{y}\" width=\"{c}\" height=\"{c}\" fill=\"{fill}\"/>");
            }
            if overlay.contains(&(t, j)) {
                let _ = writeln!(
                    out,
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
                    px + 1,
                    y + 1,
                    c - 2,
                    c - 2,
                    p.overlay
                );
            }
        }
        if style.arrows {
            if let Some(u) = traj.rows.get(t) {
                for (j, a) in u.arrows().into_iter().enumerate() {
                    let px = (u.offset() + j as i64 - lo) * c;
                    let (x0, y0) = (px + c / 2, y + c - c / 5);
                    let (x1, y1) = match a {
                        Arrow::Up => (x0, y + c / 5),
                        Arrow::Right => (px + c - c / 5, y + c / 5),
                    };
                    let _ = writeln!(
                        out,
                        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\" stroke=\"{}\" stroke-width=\"1\"/>",
                        p.arrow
                    );
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{evolve, Boundary, Configuration, Model, UpdateStream};

    fn alternating(len: usize) -> Configuration {
        let s: String = (0..len).map(|j| if j % 2 == 0 { '0' } else { '1' }).collect();
        Configuration::parse(Alphabet::Binary, 0, &s).unwrap()
    }

    fn rows(text: &str) -> Vec<(usize, Vec<char>)> {
        text.lines()
            .map(|l| {
                let pad = l.len() - l.trim_start().len();
                (pad, l.trim_start().chars().collect())
            })
            .collect()
    }

    #[test]
    fn alternating_rows_shift() {
        let traj = evolve(Model::A, &alternating(12), &UpdateStream::new(5, 0), 3, Boundary::Line).unwrap();
        let text = render(&traj, &DiagramStyle::default(), DiagramFormat::Text).unwrap();
        let r = rows(&text);
        assert_eq!(r.len(), 4);
        for w in r.windows(2) {
            let (p0, a) = &w[0];
            let (p1, b) = &w[1];
            assert_eq!(p1, &(p0 + 1));
            // same column in the next row holds the left neighbor's old value
            for (k, ch) in b.iter().enumerate() {
                assert_eq!(*ch, a[k]);
                assert_ne!(*ch, a[k + 1]);
            }
        }
    }

    #[test]
    fn coalescing_counts_do_not_grow() {
        let init = Configuration::constant(Alphabet::Particle, 0, 40, Symbol::Particle).unwrap();
        let traj = evolve(Model::C, &init, &UpdateStream::new(2, 0), 20, Boundary::Cycle).unwrap();
        let text = render(&traj, &DiagramStyle::default(), DiagramFormat::Text).unwrap();
        let counts: Vec<usize> = text.lines().map(|l| l.matches('#').count()).collect();
        assert_eq!(counts.len(), 21);
        assert!(counts.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(counts, traj.particle_counts());
    }

    #[test]
    fn empty_trajectory() {
        let mut traj = evolve(Model::A, &alternating(4), &UpdateStream::new(1, 0), 1, Boundary::Line).unwrap();
        traj.configs.clear();
        assert!(matches!(
            render(&traj, &DiagramStyle::default(), DiagramFormat::Text),
            Err(Error::EmptyTrajectory)
        ));
    }

    #[test]
    fn overlay_needs_merge_log() {
        let traj = evolve(Model::A, &alternating(8), &UpdateStream::new(1, 0), 2, Boundary::Line).unwrap();
        let style = DiagramStyle {
            genealogy: Genealogy::Leftmost,
            ..DiagramStyle::default()
        };
        assert!(matches!(render(&traj, &style, DiagramFormat::Svg), Err(Error::NoMergeLog(Model::A))));
    }

    #[test]
    fn overlay_marks_whole_cluster() {
        let init = Configuration::constant(Alphabet::Particle, 0, 30, Symbol::Particle).unwrap();
        let traj = evolve(Model::C, &init, &UpdateStream::new(4, 0), 12, Boundary::Cycle).unwrap();
        let mut forest = trace_merges(&traj).unwrap();
        let (site, id) = forest.survivors[0];
        let style = DiagramStyle {
            genealogy: Genealogy::At(site),
            ..DiagramStyle::default()
        };
        let text = render(&traj, &style, DiagramFormat::Text).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first.matches('@').count(), forest.cluster_size(id));
        assert_eq!(text.lines().last().unwrap().matches('@').count(), 1);
        let absent = DiagramStyle {
            genealogy: Genealogy::At(-100),
            ..DiagramStyle::default()
        };
        assert!(render(&traj, &absent, DiagramFormat::Text).is_err());
    }

    #[test]
    fn arrows_and_svg() {
        let init = Configuration::parse(Alphabet::Colored, 0, "BGB.GBBG").unwrap();
        let traj = evolve(Model::D, &init, &UpdateStream::new(8, 0), 3, Boundary::Line).unwrap();
        let style = DiagramStyle {
            arrows: true,
            genealogy: Genealogy::Leftmost,
            ..DiagramStyle::default()
        };
        let text = render(&traj, &style, DiagramFormat::Text).unwrap();
        assert_eq!(text.lines().count(), 4 + 3);
        assert!(text.lines().nth(1).unwrap().chars().all(|c| c == '↑' || c == '↗'));
        let svg = render(&traj, &style, DiagramFormat::Svg).unwrap();
        assert!(svg.starts_with("<svg ") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<line").count(), 8 + 7 + 6);
        assert_eq!(svg, render(&traj, &style, DiagramFormat::Svg).unwrap());
    }

    #[test]
    fn every_symbol_has_glyph_and_color() {
        let style = DiagramStyle::default();
        for a in [Alphabet::Binary, Alphabet::Particle, Alphabet::Colored] {
            let glyphs: BTreeSet<char> = a.symbols().iter().map(|&s| style.glyph(a, s)).collect();
            assert_eq!(glyphs.len(), a.symbols().len());
            for &s in a.symbols() {
                assert!(style.palette.color(s).starts_with('#'));
            }
        }
    }
}
