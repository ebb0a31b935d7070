use std::fmt;
use std::ops::{BitOr, BitOrAssign};

/// Set of repeat classes a string belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Classes(u8);

impl Classes {
    pub const NONE: Classes = Classes(0);
    pub const LMR: Classes = Classes(1);
    pub const RMR: Classes = Classes(2);
    pub const MR: Classes = Classes(4);
    pub const NSMR: Classes = Classes(8);
    pub const SMR: Classes = Classes(16);

    const NAMES: [(Classes, &'static str); 5] = [
        (Classes::LMR, "LMR"),
        (Classes::RMR, "RMR"),
        (Classes::MR, "MR"),
        (Classes::NSMR, "NSMR"),
        (Classes::SMR, "SMR"),
    ];

    pub fn contains(self, other: Classes) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn intersects(self, other: Classes) -> bool {
        self.0 & other.0 != 0
    }

    pub fn insert(&mut self, other: Classes) {
        self.0 |= other.0;
    }

    pub fn without(self, other: Classes) -> Classes {
        Classes(self.0 & !other.0)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Parses a comma-separated list such as `rmr,nsmr`.
    pub fn parse_list(s: &str) -> Option<Classes> {
        let mut out = Classes::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c = Classes::NAMES
                .iter()
                .find(|(_, name)| name.eq_ignore_ascii_case(part))?
                .0;
            out |= c;
        }
        Some(out)
    }
}

impl BitOr for Classes {
    type Output = Classes;
    fn bitor(self, rhs: Classes) -> Classes {
        Classes(self.0 | rhs.0)
    }
}

impl BitOrAssign for Classes {
    fn bitor_assign(&mut self, rhs: Classes) {
        self.0 |= rhs.0;
    }
}

impl fmt::Display for Classes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in Classes::NAMES {
            if self.contains(c) {
                if !first {
                    f.write_str(",")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        if first {
            f.write_str("-")?;
        }
        Ok(())
    }
}
