//! Trace-field arithmetic of two-generator groups: invariant trace field,
//! invariant quaternion algebra, real ramification and integrality of traces.

pub mod hilbert;
pub mod trace_data;
pub mod words;

pub use hilbert::{
    global_splitting, invariant_quaternion_symbol, invariant_trace_field, real_place_splitting, square_class_reduce,
    verify_split_witness, GlobalSplitting, HilbertSymbol, PlaceSplitReport, PlaceVerdict, Slot, SquareHint,
    SymbolField, TraceFieldReport, Verdict,
};
pub use trace_data::{TraceData, TraceFile, TraceInput};
pub use words::{semi_arithmetic_check, SemiArithmeticReport, SemiArithmeticVerdict, WordTraces};
