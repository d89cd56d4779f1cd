//! Serialized forms of a set: a versioned JSON document that embeds the
//! full field description, and a bare list of indices.

use serde::{Deserialize, Serialize};

use crate::construction::{PdsSet, SetLabel};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldSpec, FieldTable};
use crate::group::GroupKind;
use crate::params::{Claimed, ParamSet};

pub const SET_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetExport {
    pub schema: u32,
    pub field: FieldSpec,
    pub group: GroupKind,
    pub set: SetLabel,
    pub claimed: Claimed,
    pub indices: Vec<u64>,
}

impl SetExport {
    pub fn new(t: &FieldTable, set: &PdsSet) -> Self {
        SetExport {
            schema: SET_SCHEMA,
            field: t.spec().clone(),
            group: set.group(),
            set: set.label().clone(),
            claimed: set.claimed().claimed(),
            indices: set.indices(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("export serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let export: SetExport = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if export.schema != SET_SCHEMA {
            return Err(Error::Format(format!(
                "unsupported schema {} (expected {SET_SCHEMA})",
                export.schema
            )));
        }
        Ok(export)
    }

    /// Rebuild the field table from the embedded spec, then the set.
    pub fn load(&self, size_cap: u64) -> Result<(FieldTable, PdsSet)> {
        let table = FieldTable::from_spec(&self.field, size_cap)?;
        let claimed = ParamSet::from_claimed(self.claimed)?;
        let set = PdsSet::from_indices(&table, self.group, &self.indices, claimed, self.set.clone())?;
        Ok((table, set))
    }
}

/// Sorted member indices, one per line.
pub fn index_lines(set: &PdsSet) -> String {
    let mut out = String::new();
    for i in set.indices() {
        out.push_str(&i.to_string());
        out.push('\n');
    }
    out
}
