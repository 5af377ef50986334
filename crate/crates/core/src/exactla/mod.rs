//! Exact linear algebra: dense matrices, Smith normal form over `Z`,
//! elimination over `Q` and `F_p`, homology of a two-step complex and
//! induced maps on homology.

pub mod field;
pub mod group;
pub mod matrix;
pub mod ring;
pub mod snf;

pub use group::{AbelianGroupClass, Coeffs};
pub use matrix::Matrix;
pub use ring::{homology_quotient, induced_map_on_homology, Field, HomologyBasis, Integers, PrimeField, Rationals, Ring};
pub use snf::{smith, smith_normal_form, Smith};

/// Runs `$body` with `$r` bound to the concrete ring selected by a [`Coeffs`].
#[macro_export]
macro_rules! with_ring {
    ($coeffs:expr, $r:ident => $body:expr) => {
        match $coeffs {
            $crate::exactla::Coeffs::Z => {
                let $r = $crate::exactla::Integers;
                $body
            }
            $crate::exactla::Coeffs::Q => {
                let $r = $crate::exactla::Rationals;
                $body
            }
            $crate::exactla::Coeffs::Fp(p) => {
                let $r = $crate::exactla::PrimeField::new(p);
                $body
            }
        }
    };
}
