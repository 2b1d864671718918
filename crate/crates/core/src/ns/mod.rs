//! Néron–Severi frames of elliptic K3 surfaces, integral isometries built from deck
//! transformations and translations, anti-invariant lattices and the mod-4 Brauer test.

mod action;
pub mod catalog;
mod fiber;
mod frame;
pub mod kummer;

pub use action::{
    action_from_images, action_from_json, anti_invariant, beauville_verdict, check_identity, components_met, deck_action,
    enriques_fixed_point_check, equal_by_pairing, height, index_of_sum, invariant, mw_project, section_from_projection,
    section_neg, section_sum, translation_action, BrauerVerdict, IsometryAction,
};
pub use fiber::{translation_permutation, FiberGraph};
pub use frame::{frame_from_fibration, DivClass, FiberClasses, FiberInfo, FiberSpec, FibrationData, Kind, NSFrame, SectionSpec};
