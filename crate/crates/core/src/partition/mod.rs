//! Partition rows, partition families and the decreasing enumerator.

mod family;
mod length;
mod row;
mod stream;

pub use family::{check_family, DescendingRow, FamilyMeta, PartitionFamily};
pub use length::{Arithmetic, Exact, Length, Real};
pub use row::{row_holder_margin, validate_row, FamilyKind, PartitionRow};
pub use stream::{c_sequence, enumerate, for_each_value, DecreasingStream, Emitted, DEFAULT_ROW_BUDGET};
