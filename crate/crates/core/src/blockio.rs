//! On-disk formats: block definitions in, meshes out.
//!
//! Block file (line oriented, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! BLOCK <name>
//! PARTITIONS <xi> <eta>
//! WEIGHTS_X <p13_x> <p24_x>
//! WEIGHTS_Y <p13_y> <p24_y>
//! BORDER GAMMA1 <count>
//! <x> <y>
//! ...
//! BORDER GAMMA2 <count>
//! ...
//! END
//! ```
//!
//! Γ1 is the left border and Γ3 the right, both listed bottom to top; Γ4 is
//! the bottom border and Γ2 the top, both listed left to right.
//!
//! Mesh file: a `MESH <name> <xi> <eta>` header followed by one `i j x y` line
//! per node, `j` outer and `i` inner. Numbers are written in shortest
//! round-trip form so reading a written mesh reproduces it exactly.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::grid::{Point2, StructuredGrid};
use crate::spline::ParametricSpline;
use crate::tfi::WeightSet;

/// Corners of adjoining borders must agree to within this distance.
pub const CORNER_TOLERANCE: f64 = 1e-6;
const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Border labels in file order.
pub const BORDER_NAMES: [&str; 4] = ["GAMMA1", "GAMMA2", "GAMMA3", "GAMMA4"];

/// One four-sided block: the unit of mesh generation.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockInput {
    pub name: String,
    pub xi_partitions: usize,
    pub eta_partitions: usize,
    pub weights: WeightSet,
    /// Left border, bottom to top.
    pub gamma1: Vec<Point2>,
    /// Top border, left to right.
    pub gamma2: Vec<Point2>,
    /// Right border, bottom to top.
    pub gamma3: Vec<Point2>,
    /// Bottom border, left to right.
    pub gamma4: Vec<Point2>,
}

/// Which invariant a block violates, before a line number is attached.
#[derive(Debug)]
enum BlockDefect {
    TooFewPoints { border: &'static str, found: usize },
    CornerMismatch { corner: &'static str, gap: f64 },
}

impl BlockInput {
    /// Checks partition counts, weights, border sizes and corner coincidence.
    pub fn validate(&self) -> Result<()> {
        for n in [self.xi_partitions, self.eta_partitions] {
            if n < 1 {
                return Err(Error::InvalidPartitions(n));
            }
        }
        self.weights.validate()?;
        match self.defect() {
            None => Ok(()),
            Some(BlockDefect::TooFewPoints { .. }) => Err(Error::DegenerateBorder),
            Some(BlockDefect::CornerMismatch { corner, gap }) => {
                Err(Error::CornerMismatch { corner, gap, tolerance: CORNER_TOLERANCE })
            }
        }
    }

    pub fn borders(&self) -> [&[Point2]; 4] {
        [&self.gamma1, &self.gamma2, &self.gamma3, &self.gamma4]
    }

    fn defect(&self) -> Option<BlockDefect> {
        for (border, pts) in BORDER_NAMES.iter().zip(self.borders()) {
            if ParametricSpline::new(pts).is_err() {
                let found = distinct_count(pts);
                return Some(BlockDefect::TooFewPoints { border, found });
            }
        }
        for (corner, a, b) in self.corner_pairs() {
            let gap = a.distance(b);
            if !(gap <= CORNER_TOLERANCE) {
                return Some(BlockDefect::CornerMismatch { corner, gap });
            }
        }
        None
    }

    /// The four corners as seen from each adjoining border.
    fn corner_pairs(&self) -> [(&'static str, Point2, Point2); 4] {
        let first = |v: &[Point2]| v[0];
        let last = |v: &[Point2]| v[v.len() - 1];
        [
            ("GAMMA1/GAMMA4", first(&self.gamma1), first(&self.gamma4)),
            ("GAMMA1/GAMMA2", last(&self.gamma1), first(&self.gamma2)),
            ("GAMMA3/GAMMA4", first(&self.gamma3), last(&self.gamma4)),
            ("GAMMA2/GAMMA3", last(&self.gamma2), last(&self.gamma3)),
        ]
    }

    /// Applies `f` to every border point.
    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> Self {
        let map = |v: &Vec<Point2>| v.iter().map(|&p| f(p)).collect();
        Self {
            gamma1: map(&self.gamma1),
            gamma2: map(&self.gamma2),
            gamma3: map(&self.gamma3),
            gamma4: map(&self.gamma4),
            name: self.name.clone(),
            ..*self
        }
    }

    /// Copy with different transformed-plane partition counts.
    pub fn with_partitions(&self, xi: usize, eta: usize) -> Self {
        Self { xi_partitions: xi, eta_partitions: eta, ..self.clone() }
    }
}

fn distinct_count(pts: &[Point2]) -> usize {
    let mut n = 0;
    let mut prev = None;
    for p in pts {
        if prev != Some(p) {
            n += 1;
            prev = Some(p);
        }
    }
    n
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((k + 1, fields))
    })
}

fn field_count(line: usize, fields: &[&str], expected: usize) -> Result<(), ParseError> {
    if fields.len() != expected {
        return Err(ParseError::new(line, ParseErrorKind::WrongFieldCount { expected, found: fields.len() }));
    }
    Ok(())
}

fn parse_real(line: usize, token: &str) -> Result<f64, ParseError> {
    let v = f64::from_str(token)
        .map_err(|_| ParseError::new(line, ParseErrorKind::MalformedNumber(token.to_string())))?;
    if !v.is_finite() {
        return Err(ParseError::new(line, ParseErrorKind::NonFiniteNumber(token.to_string())));
    }
    Ok(v)
}

fn parse_count(line: usize, token: &str) -> Result<usize, ParseError> {
    usize::from_str(token).map_err(|_| ParseError::new(line, ParseErrorKind::MalformedNumber(token.to_string())))
}

fn parse_partitions(line: usize, token: &str) -> Result<usize, ParseError> {
    let n = parse_count(line, token)?;
    if n < 1 {
        return Err(ParseError::new(line, ParseErrorKind::InvalidPartitions(n)));
    }
    Ok(n)
}

fn parse_weights(line: usize, axis: &'static str, fields: &[&str]) -> Result<(f64, f64), ParseError> {
    field_count(line, fields, 3)?;
    let a = parse_real(line, fields[1])?;
    let b = parse_real(line, fields[2])?;
    for w in [a, b] {
        if !(0.0..=1.0).contains(&w) {
            return Err(ParseError::new(line, ParseErrorKind::WeightRange(w)));
        }
    }
    if ((a + b) - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(ParseError::new(line, ParseErrorKind::WeightSum { axis, sum: a + b }));
    }
    Ok((a, b))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, section: &str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::new(line, ParseErrorKind::DuplicateSection(section.to_string())));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses a block definition.
pub fn parse_block_file(text: &str) -> Result<BlockInput, ParseError> {
    let mut lines = content_lines(text);
    let mut name = None;
    let mut partitions = None;
    let mut weights_x = None;
    let mut weights_y = None;
    let mut borders: [Option<(usize, Vec<Point2>)>; 4] = Default::default();
    let mut end_line = None;
    let mut last_line = text.lines().count().max(1);

    while let Some((line, fields)) = lines.next() {
        last_line = line;
        match fields[0] {
            "BLOCK" => {
                field_count(line, &fields, 2)?;
                set_once(&mut name, fields[1].to_string(), line, "BLOCK")?;
            }
            "PARTITIONS" => {
                field_count(line, &fields, 3)?;
                let xi = parse_partitions(line, fields[1])?;
                let eta = parse_partitions(line, fields[2])?;
                set_once(&mut partitions, (xi, eta), line, "PARTITIONS")?;
            }
            "WEIGHTS_X" => {
                let w = parse_weights(line, "WEIGHTS_X", &fields)?;
                set_once(&mut weights_x, w, line, "WEIGHTS_X")?;
            }
            "WEIGHTS_Y" => {
                let w = parse_weights(line, "WEIGHTS_Y", &fields)?;
                set_once(&mut weights_y, w, line, "WEIGHTS_Y")?;
            }
            "BORDER" => {
                field_count(line, &fields, 3)?;
                let slot = BORDER_NAMES
                    .iter()
                    .position(|&b| b == fields[1])
                    .ok_or_else(|| ParseError::new(line, ParseErrorKind::UnexpectedKeyword(fields[1].to_string())))?;
                let count = parse_count(line, fields[2])?;
                let mut pts = Vec::with_capacity(count);
                for _ in 0..count {
                    let (pl, pf) = lines.next().ok_or(ParseError::new(last_line, ParseErrorKind::UnexpectedEof))?;
                    last_line = pl;
                    if pf[0].parse::<f64>().is_err() && pf[0].chars().all(|c| c.is_ascii_uppercase() || c == '_') {
                        // a keyword where a point was expected: the count is too large
                        return Err(ParseError::new(pl, ParseErrorKind::UnexpectedKeyword(pf[0].to_string())));
                    }
                    field_count(pl, &pf, 2)?;
                    pts.push(Point2::new(parse_real(pl, pf[0])?, parse_real(pl, pf[1])?));
                }
                let found = distinct_count(&pts);
                if found < 2 || ParametricSpline::new(&pts).is_err() {
                    return Err(ParseError::new(
                        line,
                        ParseErrorKind::TooFewPoints { border: BORDER_NAMES[slot], found },
                    ));
                }
                set_once(&mut borders[slot], (line, pts), line, BORDER_NAMES[slot])?;
            }
            "END" => {
                field_count(line, &fields, 1)?;
                end_line = Some(line);
                break;
            }
            other => return Err(ParseError::new(line, ParseErrorKind::UnexpectedKeyword(other.to_string()))),
        }
    }

    if let Some((line, _)) = lines.next() {
        return Err(ParseError::new(line, ParseErrorKind::TrailingContent));
    }
    let end_line = end_line.ok_or(ParseError::new(last_line, ParseErrorKind::MissingSection("END")))?;
    let missing = |s: &'static str| ParseError::new(end_line, ParseErrorKind::MissingSection(s));

    let name = name.ok_or_else(|| missing("BLOCK"))?;
    let (xi, eta) = partitions.ok_or_else(|| missing("PARTITIONS"))?;
    let (p13_x, p24_x) = weights_x.ok_or_else(|| missing("WEIGHTS_X"))?;
    let (p13_y, p24_y) = weights_y.ok_or_else(|| missing("WEIGHTS_Y"))?;
    let [g1, g2, g3, g4] = borders;
    let g1 = g1.ok_or_else(|| missing("BORDER GAMMA1"))?;
    let g2 = g2.ok_or_else(|| missing("BORDER GAMMA2"))?;
    let g3 = g3.ok_or_else(|| missing("BORDER GAMMA3"))?;
    let g4 = g4.ok_or_else(|| missing("BORDER GAMMA4"))?;
    let header_line = g1.0.max(g2.0).max(g3.0).max(g4.0);

    let input = BlockInput {
        name,
        xi_partitions: xi,
        eta_partitions: eta,
        weights: WeightSet { p13_x, p24_x, p13_y, p24_y },
        gamma1: g1.1,
        gamma2: g2.1,
        gamma3: g3.1,
        gamma4: g4.1,
    };
    match input.defect() {
        None => Ok(input),
        Some(BlockDefect::TooFewPoints { border, found }) => {
            Err(ParseError::new(header_line, ParseErrorKind::TooFewPoints { border, found }))
        }
        Some(BlockDefect::CornerMismatch { corner, gap }) => {
            Err(ParseError::new(header_line, ParseErrorKind::CornerMismatch { corner, gap }))
        }
    }
}

/// Serializes a block definition in the format read by [`parse_block_file`].
pub fn write_block_file(input: &BlockInput) -> String {
    let mut out = String::new();
    let w = &input.weights;
    writeln!(out, "BLOCK {}", input.name).unwrap();
    writeln!(out, "PARTITIONS {} {}", input.xi_partitions, input.eta_partitions).unwrap();
    writeln!(out, "WEIGHTS_X {} {}", w.p13_x, w.p24_x).unwrap();
    writeln!(out, "WEIGHTS_Y {} {}", w.p13_y, w.p24_y).unwrap();
    for (name, pts) in BORDER_NAMES.iter().zip(input.borders()) {
        writeln!(out, "BORDER {name} {}", pts.len()).unwrap();
        for p in pts {
            writeln!(out, "{} {}", p.x, p.y).unwrap();
        }
    }
    out.push_str("END\n");
    out
}

pub fn write_mesh(grid: &StructuredGrid) -> String {
    let mut out = String::with_capacity(48 * grid.node_count() + 32);
    writeln!(out, "MESH {} {} {}", grid.name(), grid.xi_partitions(), grid.eta_partitions()).unwrap();
    for j in 0..=grid.eta_partitions() {
        for i in 0..=grid.xi_partitions() {
            let p = grid.get(i, j);
            writeln!(out, "{i} {j} {} {}", p.x, p.y).unwrap();
        }
    }
    out
}

pub fn parse_mesh(text: &str) -> Result<StructuredGrid, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError::new(1, ParseErrorKind::MissingSection("MESH")))?;
    if header[0] != "MESH" {
        return Err(ParseError::new(hl, ParseErrorKind::UnexpectedKeyword(header[0].to_string())));
    }
    field_count(hl, &header, 4)?;
    let xi = parse_partitions(hl, header[2])?;
    let eta = parse_partitions(hl, header[3])?;
    let expected = (xi + 1) * (eta + 1);

    let mut coords = Vec::with_capacity(expected);
    let mut last_line = hl;
    for (line, fields) in lines {
        last_line = line;
        if coords.len() == expected {
            let found = expected + 1;
            return Err(ParseError::new(line, ParseErrorKind::NodeCount { expected, found }));
        }
        field_count(line, &fields, 4)?;
        let i = parse_count(line, fields[0])?;
        let j = parse_count(line, fields[1])?;
        let k = coords.len();
        let want = (k % (xi + 1), k / (xi + 1));
        if (i, j) != want {
            return Err(ParseError::new(line, ParseErrorKind::NodeIndex { expected: want, found: (i, j) }));
        }
        coords.push(Point2::new(parse_real(line, fields[2])?, parse_real(line, fields[3])?));
    }
    if coords.len() != expected {
        return Err(ParseError::new(last_line, ParseErrorKind::NodeCount { expected, found: coords.len() }));
    }
    // shape and finiteness were checked above
    Ok(StructuredGrid::from_points(header[1], xi, eta, coords).expect("validated mesh"))
}

/// Legacy ASCII VTK structured grid, points `i` fastest with `z = 0`.
pub fn write_vtk(grid: &StructuredGrid) -> String {
    let (nx, ny) = grid.node_dims();
    let mut out = String::with_capacity(40 * grid.node_count() + 128);
    out.push_str("# vtk DataFile Version 3.0\n");
    writeln!(out, "{}", grid.name()).unwrap();
    out.push_str("ASCII\n");
    out.push_str("DATASET STRUCTURED_GRID\n");
    writeln!(out, "DIMENSIONS {nx} {ny} 1").unwrap();
    writeln!(out, "POINTS {} double", grid.node_count()).unwrap();
    for p in grid.points() {
        writeln!(out, "{} {} 0", p.x, p.y).unwrap();
    }
    out
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Wireframe plot of one or more grids. Each grid contributes one polyline
/// per constant-`j` line and one per constant-`i` line. The y axis points up.
pub fn render_svg(grids: &[StructuredGrid], stroke_width: f64) -> Result<String> {
    if grids.is_empty() {
        return Err(Error::EmptyPlot("no grids"));
    }
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for g in grids {
        let (a, b) = g.bounding_box();
        lo = Point2::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Point2::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    if !(extent > 0.0) {
        return Err(Error::EmptyPlot("degenerate bounding box"));
    }
    let margin = 0.02 * extent;
    let (vx, vy) = (lo.x - margin, -hi.y - margin);
    let (vw, vh) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{vx} {vy} {vw} {vh}\">").unwrap();
    for (k, g) in grids.iter().enumerate() {
        writeln!(
            out,
            "<g id=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke_width}\" stroke-linejoin=\"round\">",
            xml_escape(g.name()),
            PALETTE[k % PALETTE.len()]
        )
        .unwrap();
        for j in 0..=g.eta_partitions() {
            polyline(&mut out, g.row(j));
        }
        for i in 0..=g.xi_partitions() {
            polyline(&mut out, g.column(i));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn polyline(out: &mut String, pts: impl Iterator<Item = Point2>) {
    out.push_str("<polyline points=\"");
    for (k, p) in pts.enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write!(out, "{},{}", p.x, -p.y).unwrap();
    }
    out.push_str("\"/>\n");
}
