use crate::scalar::Real;

/// `T_ℓ(x)` by the three-term recursion `T_{ℓ+1} = 2x T_ℓ − T_{ℓ−1}`.
///
/// Equals `cos(ℓ arccos x)` on `[−1, 1]`; the polynomial is evaluated as-is
/// outside that interval.
pub fn chebyshev_eval<T: Real>(ell: usize, x: T) -> T {
    chebyshev_pair(ell, x).0
}

/// `U_n(x)`, the Chebyshev polynomial of the second kind.
pub fn chebyshev_u<T: Real>(n: usize, x: T) -> T {
    let two_x = x + x;
    let (mut prev, mut cur) = (T::one(), two_x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(T_n(x), U_{n−1}(x))` in one pass, with `U_{−1} = 0`.
pub fn chebyshev_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let two_x = x + x;
    let (mut t_prev, mut t) = (T::one(), x);
    let (mut u_prev, mut u) = (T::zero(), T::one());
    if n == 0 {
        return (T::one(), T::zero());
    }
    for _ in 1..n {
        let t_next = two_x * t - t_prev;
        t_prev = t;
        t = t_next;
        let u_next = two_x * u - u_prev;
        u_prev = u;
        u = u_next;
    }
    (t, u)
}

/// Largest `|T_n² − (x² − 1) U_{n−1}² − 1|` over `points` equispaced `x` in
/// `[−1, 1]` and every `1 ≤ n ≤ max_degree`.
pub fn pell_identity_residual<T: Real>(max_degree: usize, points: usize) -> T {
    let mut worst = T::zero();
    let denom = T::from_count(points.max(2) - 1);
    for i in 0..points.max(2) {
        let x = T::lit(-1.0) + T::lit(2.0) * T::from_count(i) / denom;
        let two_x = x + x;
        let xm = (x - T::one()) * (x + T::one());
        let (mut t_prev, mut t) = (T::one(), x);
        let (mut u_prev, mut u) = (T::zero(), T::one());
        for n in 1..=max_degree {
            if n > 1 {
                let t_next = two_x * t - t_prev;
                t_prev = t;
                t = t_next;
                let u_next = two_x * u - u_prev;
                u_prev = u;
                u = u_next;
            }
            let r = (t * t - xm * u * u - T::one()).abs();
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}
