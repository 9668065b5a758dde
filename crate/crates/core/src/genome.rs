//! Ternary designs on the 2x2x2 voxel lattice.
//!
//! A design assigns one of three states (empty, passive material, actuated
//! material) to each of the eight lattice sites. Designs are indexed in base
//! 3 with site 0 as the least significant digit, written as 8-character
//! strings over `{0,1,2}`, and projected onto an 81x81 grid by nesting the
//! row sites (0,2,4,6) and column sites (1,3,5,7) innermost to outermost.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Number of lattice sites in the 2x2x2 workspace.
pub const SITE_COUNT: usize = 8;

/// Number of distinct designs: 3^8.
pub const DESIGN_COUNT: u32 = 6561;

/// Side length of the nested projection grid: 3^4.
pub const HEATMAP_SIDE: usize = 81;

/// Per-site voxel state. The ordering fixes the base-3 digit: empty is 0,
/// passive 1, active 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VoxelKind {
    Empty,
    Passive,
    Active,
}

impl VoxelKind {
    pub fn digit(self) -> u32 {
        match self {
            VoxelKind::Empty => 0,
            VoxelKind::Passive => 1,
            VoxelKind::Active => 2,
        }
    }

    pub fn from_digit(d: u32) -> Option<VoxelKind> {
        match d {
            0 => Some(VoxelKind::Empty),
            1 => Some(VoxelKind::Passive),
            2 => Some(VoxelKind::Active),
            _ => None,
        }
    }

    /// True for sites that place material (passive or active).
    pub fn is_material(self) -> bool {
        !matches!(self, VoxelKind::Empty)
    }
}

/// Position on the 2x2x2 lattice. Site index is `x + 2y + 4z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCoord {
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

impl LatticeCoord {
    pub fn new(x: u8, y: u8, z: u8) -> LatticeCoord {
        debug_assert!(x < 2 && y < 2 && z < 2);
        LatticeCoord { x, y, z }
    }

    pub fn site_index(self) -> usize {
        self.x as usize + 2 * self.y as usize + 4 * self.z as usize
    }

    pub fn from_site_index(i: usize) -> LatticeCoord {
        debug_assert!(i < SITE_COUNT);
        LatticeCoord { x: (i & 1) as u8, y: ((i >> 1) & 1) as u8, z: ((i >> 2) & 1) as u8 }
    }

    pub fn all() -> impl Iterator<Item = LatticeCoord> {
        (0..SITE_COUNT).map(LatticeCoord::from_site_index)
    }

    /// 90 degree rotation about the vertical axis: (x, y, z) -> (1-y, x, z).
    pub fn rotated_z(self) -> LatticeCoord {
        LatticeCoord { x: 1 - self.y, y: self.x, z: self.z }
    }

    /// Reflection across the vertical mid-plane normal to x.
    pub fn reflected_x(self) -> LatticeCoord {
        LatticeCoord { x: 1 - self.x, ..self }
    }
}

/// Errors from constructing or parsing a design.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenomeError {
    /// Index outside [0, 6560].
    IndexOutOfRange(u32),
    /// Text form is not exactly 8 characters.
    BadLength(usize),
    /// Character outside {0,1,2}; position is 0-based.
    BadDigit { position: usize, found: char },
}

impl fmt::Display for GenomeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenomeError::IndexOutOfRange(i) => {
                write!(f, "design index {i} out of range 0..={}", DESIGN_COUNT - 1)
            }
            GenomeError::BadLength(n) => {
                write!(f, "genome string must have exactly {SITE_COUNT} characters, got {n}")
            }
            GenomeError::BadDigit { position, found } => {
                write!(f, "invalid genome character {found:?} at position {position} (expected 0, 1 or 2)")
            }
        }
    }
}

impl core::error::Error for GenomeError {}

/// One design: a voxel kind per lattice site, ordered by site index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesignGenome {
    sites: [VoxelKind; SITE_COUNT],
}

impl DesignGenome {
    pub fn new(sites: [VoxelKind; SITE_COUNT]) -> DesignGenome {
        DesignGenome { sites }
    }

    /// Design with every site set to the same kind.
    pub fn uniform(kind: VoxelKind) -> DesignGenome {
        DesignGenome { sites: [kind; SITE_COUNT] }
    }

    /// Decode a base-3 index; site `i` takes the i-th digit, least
    /// significant first.
    pub fn from_index(index: u32) -> Result<DesignGenome, GenomeError> {
        if index >= DESIGN_COUNT {
            return Err(GenomeError::IndexOutOfRange(index));
        }
        let mut rest = index;
        let mut sites = [VoxelKind::Empty; SITE_COUNT];
        for site in &mut sites {
            *site = VoxelKind::from_digit(rest % 3).unwrap();
            rest /= 3;
        }
        Ok(DesignGenome { sites })
    }

    /// Base-3 index; inverse of [`DesignGenome::from_index`].
    pub fn index(&self) -> u32 {
        self.sites.iter().rev().fold(0, |acc, k| acc * 3 + k.digit())
    }

    /// Parse the 8-character text form; character `k` is the digit of site
    /// `k`.
    pub fn parse(text: &str) -> Result<DesignGenome, GenomeError> {
        let n = text.chars().count();
        if n != SITE_COUNT {
            return Err(GenomeError::BadLength(n));
        }
        let mut sites = [VoxelKind::Empty; SITE_COUNT];
        for (position, ch) in text.chars().enumerate() {
            let kind = ch
                .to_digit(3)
                .and_then(VoxelKind::from_digit)
                .ok_or(GenomeError::BadDigit { position, found: ch })?;
            sites[position] = kind;
        }
        Ok(DesignGenome { sites })
    }

    pub fn sites(&self) -> &[VoxelKind; SITE_COUNT] {
        &self.sites
    }

    pub fn site(&self, coord: LatticeCoord) -> VoxelKind {
        self.sites[coord.site_index()]
    }

    /// Number of non-empty sites.
    pub fn material_count(&self) -> usize {
        self.sites.iter().filter(|k| k.is_material()).count()
    }

    fn mapped(&self, f: impl Fn(LatticeCoord) -> LatticeCoord) -> DesignGenome {
        let mut sites = [VoxelKind::Empty; SITE_COUNT];
        for coord in LatticeCoord::all() {
            sites[f(coord).site_index()] = self.site(coord);
        }
        DesignGenome { sites }
    }

    /// Design produced by rotating the workspace 90 degrees about the
    /// vertical axis. Applying it four times is the identity.
    pub fn rotated_z(&self) -> DesignGenome {
        self.mapped(LatticeCoord::rotated_z)
    }

    /// Design reflected across the vertical mid-plane normal to x.
    pub fn reflected_x(&self) -> DesignGenome {
        self.mapped(LatticeCoord::reflected_x)
    }

    /// Closure of this design under the horizontal dihedral group (the four
    /// vertical-axis rotations and the reflections), sorted by index.
    pub fn symmetry_orbit(&self) -> Vec<DesignGenome> {
        let mut orbit = Vec::with_capacity(8);
        let mut g = *self;
        for _ in 0..4 {
            orbit.push(g);
            orbit.push(g.reflected_x());
            g = g.rotated_z();
        }
        orbit.sort_by_key(DesignGenome::index);
        orbit.dedup();
        orbit
    }

    /// Cell of this design in the nested 81x81 projection. Row digits come
    /// from sites 0,2,4,6 and column digits from sites 1,3,5,7, innermost
    /// (weight 3^0) to outermost (weight 3^3).
    pub fn heatmap_cell(&self) -> HeatmapCell {
        let digit = |i: usize| self.sites[i].digit() as u16;
        let nest = |a, b, c, d| digit(a) + 3 * digit(b) + 9 * digit(c) + 27 * digit(d);
        HeatmapCell { row: nest(0, 2, 4, 6) as u8, col: nest(1, 3, 5, 7) as u8 }
    }

    /// Text form, usable as the inverse of [`DesignGenome::parse`].
    pub fn format(&self) -> String {
        use fmt::Write;
        let mut s = String::with_capacity(SITE_COUNT);
        write!(s, "{self}").unwrap();
        s
    }
}

impl fmt::Display for DesignGenome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for kind in &self.sites {
            write!(f, "{}", kind.digit())?;
        }
        Ok(())
    }
}

/// Cell of the 81x81 nested projection. Row 0 / col 0 is the bottom-left
/// (all-empty) corner; row 80 / col 80 the top-right (all-active) corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeatmapCell {
    pub row: u8,
    pub col: u8,
}

/// All 6561 designs in ascending index order.
pub fn enumerate_designs() -> impl Iterator<Item = DesignGenome> {
    (0..DESIGN_COUNT).map(|i| DesignGenome::from_index(i).unwrap())
}
