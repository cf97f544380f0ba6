//! Exhaustive verification of the Bousfield localizations of the discrete
//! model structure on a finite category.
//!
//! The crate is organized bottom-up:
//!
//! * [`fincat`]: finite categories, functors, natural transformations and
//!   brute-force (co)limits;
//! * [`lifting`]: lifting classes, strong monomorphisms and factorization
//!   systems;
//! * [`reflect`]: replete (co)reflective subcategories and the reflective
//!   factorization system;
//! * [`monad`]: monad laws, idempotent monads and monad morphisms;
//! * [`model`]: model structures, localizations, fibrant replacement,
//!   homotopy relations and homotopy categories;
//! * [`ring`] and [`snf`]: finite commutative rings, tensor squares and
//!   integer Smith normal forms;
//! * [`ktheory`]: `K₀` of Waldhausen categories arising from localizations.

pub mod fincat;
pub mod ktheory;
pub mod lifting;
pub mod model;
pub mod monad;
pub mod reflect;
pub mod ring;
pub mod snf;

pub use fincat::{
    is_finitely_bicomplete, limit_search, validate_category, CategoryError, FinCat, Functor, Limit, MorId, NatTrans,
    ObjId, RawCategory, Shape, Validation,
};
pub use lifting::{FactorizationSystem, MorphismClass, Square};
pub use model::{ModelStructure, Provenance};
pub use monad::MonadData;
pub use reflect::{Coreflector, FullSubcat, Reflector};
pub use ring::{FiniteRing, RingHom, RingSpec};
pub use snf::{AbPresentation, SmithForm};
