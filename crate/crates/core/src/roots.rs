//! Bracketed root polishing: Newton steps guarded by bisection.

use crate::scalar::Real;

/// Find a root of `f` inside `[lo, hi]` where `f(lo)` and `f(hi)` have opposite
/// signs. `f` returns `(value, derivative)`. Newton steps that leave the
/// current bracket fall back to bisection.
///
/// Stops once `|f| <= ftol` or the bracket shrinks below `xtol`.
pub fn hybrid_newton<T: Real, F: Fn(T) -> (T, T)>(f: F, lo: T, hi: T, ftol: T, xtol: T) -> T {
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f(a);
    let mut sign_a = fa.signum();
    if fa == T::zero() {
        return a;
    }
    let two = T::lit(2.0);
    let mut x = (a + b) / two;
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx.abs() <= ftol {
            return x;
        }
        if fx.signum() == sign_a {
            a = x;
            sign_a = fx.signum();
        } else {
            b = x;
        }
        let width = (b - a).abs();
        if width <= xtol {
            return (a + b) / two;
        }
        let newton = x - fx / dfx;
        let inside = (newton - a) * (newton - b) < T::zero();
        x = if dfx != T::zero() && inside { newton } else { (a + b) / two };
    }
    x
}
