//! The ambient elementary abelian groups: F_{q^m} × F_{q^{2m}}, or the
//! additive group of a single subfield.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, FieldTable, Subfield};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupKind {
    /// F_{q^m} × F_{q^{2m}}
    Product,
    /// (F, +) for the subfield F of the given order
    Field { order: u64 },
}

/// (x, y) with x in the first component and y in the second. For a
/// single-field group the first component is trivial and x is always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem {
        x: FieldElem::ZERO,
        y: FieldElem::ZERO,
    };

    pub fn new(x: FieldElem, y: FieldElem) -> Self {
        GroupElem { x, y }
    }

    pub fn single(y: FieldElem) -> Self {
        GroupElem { x: FieldElem::ZERO, y }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// A group bound to a field table. Canonical index of (x, y) is
/// idx(x)·|Y| + idx(y), which is also a base-p digit string whose low
/// digits are the y coordinates.
#[derive(Clone, Copy)]
pub struct Group<'t> {
    table: &'t FieldTable,
    kind: GroupKind,
    xs: Option<&'t Subfield>,
    ys: &'t Subfield,
}

impl<'t> Group<'t> {
    pub fn new(table: &'t FieldTable, kind: GroupKind) -> Result<Self> {
        let (xs, ys) = match kind {
            GroupKind::Product => (Some(table.subfield_qm()), table.top()),
            GroupKind::Field { order } => (None, table.subfield(order)?),
        };
        Ok(Group { table, kind, xs, ys })
    }

    pub fn table(&self) -> &'t FieldTable {
        self.table
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn x_component(&self) -> Option<&'t Subfield> {
        self.xs
    }

    pub fn y_component(&self) -> &'t Subfield {
        self.ys
    }

    pub fn x_order(&self) -> u64 {
        self.xs.map_or(1, |s| s.order() as u64)
    }

    pub fn y_order(&self) -> u64 {
        self.ys.order() as u64
    }

    /// v
    pub fn order(&self) -> u64 {
        self.x_order() * self.y_order()
    }

    pub fn contains(&self, g: GroupElem) -> bool {
        let x_ok = match self.xs {
            Some(s) => s.contains(g.x),
            None => g.x.is_zero(),
        };
        x_ok && self.ys.contains(g.y)
    }

    pub fn index(&self, g: GroupElem) -> Result<usize> {
        if !self.contains(g) {
            return Err(Error::MalformedSet(format!("{g:?} is not in the group")));
        }
        Ok(self.index_unchecked(g))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, g: GroupElem) -> usize {
        let ix = self.xs.map_or(0, |s| s.index_unchecked(g.x) as usize);
        ix * self.ys.order() as usize + self.ys.index_unchecked(g.y) as usize
    }

    pub fn elem(&self, index: usize) -> GroupElem {
        let yo = self.ys.order() as usize;
        let x = self.xs.map_or(FieldElem::ZERO, |s| s.elem((index / yo) as u32));
        GroupElem {
            x,
            y: self.ys.elem((index % yo) as u32),
        }
    }

    #[inline]
    pub fn sub(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem {
            x: self.table.sub(a.x, b.x),
            y: self.table.sub(a.y, b.y),
        }
    }

    pub fn neg(&self, a: GroupElem) -> GroupElem {
        GroupElem {
            x: self.table.neg(a.x),
            y: self.table.neg(a.y),
        }
    }

    /// (cx, cy).
    pub fn scale(&self, c: FieldElem, a: GroupElem) -> GroupElem {
        GroupElem {
            x: self.table.mul(c, a.x),
            y: self.table.mul(c, a.y),
        }
    }

    /// Whether multiplication by c maps the group to itself.
    pub fn admits_scalar(&self, c: FieldElem) -> bool {
        let x_ok = self.xs.is_none_or(|s| s.contains(c));
        x_ok && self.ys.contains(c)
    }
}
