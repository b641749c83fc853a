use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::Deduction;

pub type Cell = usize;
pub type Digit = u8;

pub const MAX_BOX: usize = 8;

#[inline]
pub fn bit(d: Digit) -> u64 {
    1u64 << (d - 1)
}

/// Digits of a candidate mask, ascending.
pub fn digits(mask: u64) -> impl Iterator<Item = Digit> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let d = m.trailing_zeros() as Digit + 1;
        m &= m - 1;
        Some(d)
    })
}

/// Cell and group layout of a `B^2 x B^2` grid. Groups are rows, then
/// columns, then boxes, each in reading order.
#[derive(Debug)]
pub struct Geometry {
    pub b: usize,
    pub n: usize,
    pub cells: usize,
    groups: Vec<Vec<Cell>>,
    cell_groups: Vec<[usize; 3]>,
    /// Index of the cell inside each of its three groups.
    position: Vec<[usize; 3]>,
    peers: Vec<Vec<Cell>>,
}

impl Geometry {
    fn new(b: usize) -> Geometry {
        let n = b * b;
        let cells = n * n;
        let mut groups = vec![Vec::with_capacity(n); 3 * n];
        let mut cell_groups = Vec::with_capacity(cells);
        let mut position = Vec::with_capacity(cells);
        for c in 0..cells {
            let (r, col) = (c / n, c % n);
            let bx = (r / b) * b + col / b;
            let gs = [r, n + col, 2 * n + bx];
            let mut pos = [0; 3];
            for (k, &g) in gs.iter().enumerate() {
                pos[k] = groups[g].len();
                groups[g].push(c);
            }
            cell_groups.push(gs);
            position.push(pos);
        }
        let peers = (0..cells)
            .map(|c| {
                let mut p: Vec<Cell> = cell_groups[c]
                    .iter()
                    .flat_map(|&g| groups[g].iter().copied())
                    .filter(|&x| x != c)
                    .collect();
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        Geometry {
            b,
            n,
            cells,
            groups,
            cell_groups,
            position,
            peers,
        }
    }

    /// Shared geometry for box side `b`, `2 <= b <= 8`.
    pub fn shared(b: usize) -> Arc<Geometry> {
        static CACHE: [OnceLock<Arc<Geometry>>; MAX_BOX + 1] =
            [const { OnceLock::new() }; MAX_BOX + 1];
        assert!((2..=MAX_BOX).contains(&b), "box side {b} unsupported");
        CACHE[b].get_or_init(|| Arc::new(Geometry::new(b))).clone()
    }

    pub fn group_count(&self) -> usize {
        3 * self.n
    }

    pub fn group(&self, g: usize) -> &[Cell] {
        &self.groups[g]
    }

    pub fn groups_of(&self, c: Cell) -> [usize; 3] {
        self.cell_groups[c]
    }

    pub fn positions_of(&self, c: Cell) -> [usize; 3] {
        self.position[c]
    }

    pub fn peers(&self, c: Cell) -> &[Cell] {
        &self.peers[c]
    }

    pub fn row(&self, c: Cell) -> usize {
        c / self.n
    }

    pub fn col(&self, c: Cell) -> usize {
        c % self.n
    }

    pub fn box_of(&self, c: Cell) -> usize {
        self.cell_groups[c][2] - 2 * self.n
    }

    pub fn shares_group(&self, a: Cell, b: Cell) -> bool {
        let (x, y) = (self.cell_groups[a], self.cell_groups[b]);
        x.iter().zip(y.iter()).any(|(p, q)| p == q)
    }

    pub fn cell_name(&self, c: Cell) -> String {
        format!("r{}c{}", self.row(c) + 1, self.col(c) + 1)
    }

    pub fn group_name(&self, g: usize) -> String {
        let (kind, i) = match g / self.n {
            0 => ("row", g),
            1 => ("col", g - self.n),
            _ => ("box", g - 2 * self.n),
        };
        format!("{kind}{}", i + 1)
    }

    pub fn all_digits(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("expected {expected} cells, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid character `{ch}` at position {pos}")]
    InvalidChar { ch: char, pos: usize },
    #[error("value {value} at position {pos} is outside 0..={max}")]
    ValueOutOfRange {
        value: String,
        pos: usize,
        max: usize,
    },
    #[error("digit {digit} appears twice in {group}")]
    Duplicate { group: String, digit: Digit },
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("box side {0} unsupported (2..=8)")]
    UnsupportedBox(usize),
}

/// A state in which some cell or digit has no options left.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Contradiction {
    #[error("cell {0} has no candidates")]
    EmptyCell(Cell),
    #[error("cannot place {digit} at cell {cell}")]
    Conflict { cell: Cell, digit: Digit },
    #[error("digit {digit} has no place in group {group}")]
    NoHome { group: usize, digit: Digit },
    #[error("rule reported an inconsistency")]
    Rule,
}

/// Grid state: placed digits plus candidate masks of unplaced cells. Placed
/// cells have an empty mask.
#[derive(Clone)]
pub struct Board {
    geo: Arc<Geometry>,
    values: Vec<Digit>,
    cands: Vec<u64>,
}

impl PartialEq for Board {
    fn eq(&self, other: &Self) -> bool {
        self.geo.b == other.geo.b && self.values == other.values && self.cands == other.cands
    }
}

impl Eq for Board {}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Board({})", self.to_text().trim_end())
    }
}

impl Board {
    pub fn empty(b: usize) -> Result<Board, BoardError> {
        if !(2..=MAX_BOX).contains(&b) {
            return Err(BoardError::UnsupportedBox(b));
        }
        let geo = Geometry::shared(b);
        let all = geo.all_digits();
        Ok(Board {
            values: vec![0; geo.cells],
            cands: vec![all; geo.cells],
            geo,
        })
    }

    /// Board with the given digits placed (0 = empty), candidates pruned.
    pub fn from_values(b: usize, values: &[Digit]) -> Result<Board, BoardError> {
        let mut board = Board::empty(b)?;
        let geo = board.geo.clone();
        if values.len() != geo.cells {
            return Err(BoardError::WrongLength {
                expected: geo.cells,
                found: values.len(),
            });
        }
        for g in 0..geo.group_count() {
            let mut seen = 0u64;
            for &c in geo.group(g) {
                let v = values[c];
                if v == 0 {
                    continue;
                }
                if usize::from(v) > geo.n {
                    return Err(BoardError::ValueOutOfRange {
                        value: v.to_string(),
                        pos: c,
                        max: geo.n,
                    });
                }
                if seen & bit(v) != 0 {
                    return Err(BoardError::Duplicate {
                        group: geo.group_name(g),
                        digit: v,
                    });
                }
                seen |= bit(v);
            }
        }
        for (c, &v) in values.iter().enumerate() {
            if v != 0 {
                board.values[c] = v;
                board.cands[c] = 0;
                for &p in geo.peers(c) {
                    board.cands[p] &= !bit(v);
                }
            }
        }
        for c in 0..geo.cells {
            if board.values[c] != 0 {
                board.cands[c] = 0;
            }
        }
        Ok(board)
    }

    /// Parses either the 81-character line (`.` or `0` empty) or the
    /// generalized form: `B <b>` then `b^4` integers.
    pub fn parse(text: &str) -> Result<Board, BoardError> {
        let trimmed = text.trim_start();
        if let Some(rest) = trimmed.strip_prefix('B') {
            let mut tokens = rest.split_whitespace();
            let b: usize = tokens
                .next()
                .ok_or_else(|| BoardError::BadHeader("missing box side after `B`".into()))?
                .parse()
                .map_err(|_| BoardError::BadHeader("box side is not a number".into()))?;
            if !(2..=MAX_BOX).contains(&b) {
                return Err(BoardError::UnsupportedBox(b));
            }
            let n = b * b;
            let mut values = Vec::with_capacity(n * n);
            for (pos, tok) in tokens.enumerate() {
                match tok.parse::<usize>() {
                    Ok(v) if v <= n => values.push(v as Digit),
                    _ => {
                        return Err(BoardError::ValueOutOfRange {
                            value: tok.into(),
                            pos,
                            max: n,
                        })
                    }
                }
            }
            return Board::from_values(b, &values);
        }
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != 81 {
            return Err(BoardError::WrongLength {
                expected: 81,
                found: chars.len(),
            });
        }
        let mut values = Vec::with_capacity(81);
        for (pos, &ch) in chars.iter().enumerate() {
            values.push(match ch {
                '.' | '0' => 0,
                '1'..='9' => ch as Digit - b'0',
                _ => return Err(BoardError::InvalidChar { ch, pos }),
            });
        }
        Board::from_values(3, &values)
    }

    /// 81-character line for `B = 3`, generalized form otherwise. Only placed
    /// digits are written.
    pub fn to_text(&self) -> String {
        if self.geo.b == 3 {
            let mut s: String = self
                .values
                .iter()
                .map(|&v| if v == 0 { '.' } else { (b'0' + v) as char })
                .collect();
            s.push('\n');
            return s;
        }
        let n = self.geo.n;
        let mut s = format!("B {}\n", self.geo.b);
        for row in self.values.chunks(n) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geo
    }

    pub fn box_side(&self) -> usize {
        self.geo.b
    }

    pub fn size(&self) -> usize {
        self.geo.n
    }

    pub fn values(&self) -> &[Digit] {
        &self.values
    }

    pub fn value(&self, c: Cell) -> Option<Digit> {
        (self.values[c] != 0).then_some(self.values[c])
    }

    pub fn candidates(&self, c: Cell) -> u64 {
        self.cands[c]
    }

    pub fn is_candidate(&self, c: Cell, d: Digit) -> bool {
        self.cands[c] & bit(d) != 0
    }

    pub fn is_placed(&self, c: Cell) -> bool {
        self.values[c] != 0
    }

    pub fn unplaced(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.geo.cells).filter(|&c| self.values[c] == 0)
    }

    pub fn placed_count(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    /// Whether `d` is already placed somewhere in group `g`.
    pub fn placed_in_group(&self, g: usize, d: Digit) -> bool {
        self.geo.group(g).iter().any(|&c| self.values[c] == d)
    }

    /// Cells of group `g` that still admit `d`, as a mask over positions in
    /// the group.
    pub fn positions(&self, g: usize, d: Digit) -> u64 {
        let mut m = 0;
        for (i, &c) in self.geo.group(g).iter().enumerate() {
            if self.cands[c] & bit(d) != 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn place(&mut self, c: Cell, d: Digit) -> Result<(), Contradiction> {
        if self.values[c] != 0 || self.cands[c] & bit(d) == 0 {
            return Err(Contradiction::Conflict { cell: c, digit: d });
        }
        self.values[c] = d;
        self.cands[c] = 0;
        let geo = self.geo.clone();
        for &p in geo.peers(c) {
            if self.values[p] == 0 {
                self.cands[p] &= !bit(d);
                if self.cands[p] == 0 {
                    return Err(Contradiction::EmptyCell(p));
                }
            }
        }
        Ok(())
    }

    pub fn eliminate(&mut self, c: Cell, d: Digit) -> Result<(), Contradiction> {
        if self.values[c] != 0 {
            return Ok(());
        }
        self.cands[c] &= !bit(d);
        if self.cands[c] == 0 {
            return Err(Contradiction::EmptyCell(c));
        }
        Ok(())
    }

    /// Applies placements then eliminations. The board may be left partly
    /// updated when a contradiction is returned.
    pub fn apply(&mut self, d: &Deduction) -> Result<(), Contradiction> {
        if d.contradiction {
            return Err(Contradiction::Rule);
        }
        for &(c, v) in &d.placements {
            self.place(c, v)?;
        }
        for &(c, v) in &d.eliminations {
            self.eliminate(c, v)?;
        }
        Ok(())
    }

    /// First basic inconsistency: an unplaced cell without candidates, or an
    /// unplaced digit with no cell left in some group.
    pub fn contradiction(&self) -> Option<Contradiction> {
        if let Some(c) = self.unplaced().find(|&c| self.cands[c] == 0) {
            return Some(Contradiction::EmptyCell(c));
        }
        let all = self.geo.all_digits();
        for g in 0..self.geo.group_count() {
            let mut covered = 0;
            for &c in self.geo.group(g) {
                covered |= self.cands[c];
                if self.values[c] != 0 {
                    covered |= bit(self.values[c]);
                }
            }
            if covered != all {
                let d = (!covered & all).trailing_zeros() as Digit + 1;
                return Some(Contradiction::NoHome { group: g, digit: d });
            }
        }
        None
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::str::FromStr for Board {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Board::parse(s)
    }
}

pub fn apply_deduction(board: &Board, d: &Deduction) -> Result<Board, Contradiction> {
    let mut next = board.clone();
    next.apply(d)?;
    Ok(next)
}

/// Fully placed and every group holds each digit once.
pub fn verify_solution(board: &Board) -> bool {
    let geo = board.geometry();
    board.is_complete()
        && (0..geo.group_count()).all(|g| {
            let seen = geo
                .group(g)
                .iter()
                .fold(0u64, |m, &c| m | bit(board.values[c]));
            seen == geo.all_digits()
        })
}
