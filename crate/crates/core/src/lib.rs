//! Finite posets with pairs of partial automorphisms: extension, free
//! intervals, amalgamation, and a certified failure of weak amalgamation.

pub mod amalgam;
pub mod dot;
pub mod embed;
pub mod error;
pub mod freeness;
pub mod generators;
pub mod io;
pub mod lemma1;
pub mod partial_auto;
mod point_types;
pub mod poset;
pub mod witness;

pub use amalgam::{amalgam_exists, jep_join, verify_amalgam, Amalgam};
pub use error::{Error, Result};
pub use lemma1::{lemma1_extend, Lemma1Bounds, Lemma1Trace};
pub use partial_auto::{
    extend_by_pair, is_pa_extension, orbit, Generator, Orbit, PaEmbedding, PaPair, PartialAutomorphism,
    PartialMap,
};
pub use poset::{is_extension, push_forward, qf_type, Elem, Embedding, Poset, QfType, Relation, MAX_CARRIER};
pub use witness::{base_pair, build_witness, ObstructionCertificate, Witness, WitnessMeta, Word};
