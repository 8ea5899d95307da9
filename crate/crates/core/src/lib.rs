//! Exact radial expectation values `<r^p>` for the `n`-dimensional isotropic
//! harmonic oscillator and for hydrogen-like atoms.
//!
//! Every closed form is evaluated in exact rational arithmetic extended by
//! powers of `sqrt(pi)`. An independent oracle integrates the Laguerre
//! densities term by term, and a Gauss–Laguerre quadrature covers real powers.
//!
//! ```
//! use rmoments::oscillator::{expval_closed, OscillatorState};
//! use rmoments::exact::{rat, ExactValue};
//!
//! let ground = OscillatorState::new(3, 0, 0).unwrap();
//! assert_eq!(expval_closed(&ground, 2).unwrap(), ExactValue::rational(rat(3, 2)));
//! ```

pub mod error;
pub mod exact;
pub mod hydrogen;
pub mod oracle;
pub mod oscillator;
pub mod polys;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactValue, HalfInteger, Rational};
pub use hydrogen::{HydrogenState, NegativeMode};
pub use oscillator::{Method, MomentRecord, OscillatorState, Power, RecurrenceMode};
pub use sweep::Executor;
pub use verify::{Report, VerifyConfig};
