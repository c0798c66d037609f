//! The universal string class and its verification against transgression.

mod universal;
mod verify;

pub use universal::{
    based_string_class, build_universal_data, caloron_expand_identity, slot_basicness, string_form, universal_string_class,
    variant_basicness, UniversalClass, UniversalData, Variant, FULL_CHECK_TERMS,
};
pub use verify::{verify_string_transgression, verify_universal_consistency};
