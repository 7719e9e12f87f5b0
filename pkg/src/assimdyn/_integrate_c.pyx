# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled integration kernels.

Keep the arithmetic in lockstep with ``_integrate_py.py``: the two
backends implement the identical RK4 scheme, residual check, and clamp
policy.  See that module's docstring for the shared contract.
"""

from libc.math cimport fabs


cdef inline void _rhs_open(
    double p, double q,
    double i_hs, double i_ls, double i_a, double i_na, double i_e,
    double c_hs, double net_cost, double beta, double one_b, double m,
    double a_pol, double d_i,
    double* dp, double* dq,
) noexcept nogil:
    cdef double tax = p * m * a_pol
    cdef double ia = i_a + q * i_e
    cdef double rd_ls = q / (1.0 + p * m) * d_i
    cdef double rd_a = (q * d_i + (i_ls - i_a - tax)) / (1.0 + m)
    cdef double rd_na = p * (ia - i_na)
    cdef double u_hs = one_b * (i_hs + q * i_e - tax) - q * c_hs
    cdef double u_ls = one_b * (i_ls + q * i_e - tax) - beta * rd_ls
    cdef double u_a = one_b * ia - net_cost - beta * rd_a
    cdef double u_na = one_b * i_na - beta * rd_na
    dp[0] = p * (1.0 - p) * (u_a - u_na)
    dq[0] = q * (1.0 - q) * (u_hs - u_ls)


def integrate_open(
    double i_hs, double i_ls, double i_a, double i_na, double i_e,
    double c_hs, double c_a, double beta, double m, double a_pol,
    double p0, double q0, double dt, long n_max,
    long record_every, double eps, int streak_needed,
    double[::1] t_out, double[::1] p_out, double[::1] q_out,
):
    cdef double one_b = 1.0 - beta
    cdef double d_i = i_hs - i_ls
    cdef double net_cost = c_a - a_pol
    cdef double p = p0, q = q0
    cdef double dp1, dq1, dp2, dq2, dp3, dq3, dp4, dq4, r
    cdef long steps = 0, n_rec = 0, last_rec = -1, s
    cdef int streak = 0, conv = 0
    cdef double max_clamp = 0.0

    if record_every > 0:
        t_out[0] = 0.0
        p_out[0] = p
        q_out[0] = q
        n_rec = 1
        last_rec = 0
    for s in range(1, n_max + 1):
        _rhs_open(p, q, i_hs, i_ls, i_a, i_na, i_e, c_hs, net_cost,
                  beta, one_b, m, a_pol, d_i, &dp1, &dq1)
        r = fabs(dp1)
        if fabs(dq1) > r:
            r = fabs(dq1)
        if r < eps:
            streak += 1
            if streak >= streak_needed:
                conv = 1
                break
        else:
            streak = 0
        _rhs_open(p + 0.5 * dt * dp1, q + 0.5 * dt * dq1, i_hs, i_ls, i_a, i_na,
                  i_e, c_hs, net_cost, beta, one_b, m, a_pol, d_i, &dp2, &dq2)
        _rhs_open(p + 0.5 * dt * dp2, q + 0.5 * dt * dq2, i_hs, i_ls, i_a, i_na,
                  i_e, c_hs, net_cost, beta, one_b, m, a_pol, d_i, &dp3, &dq3)
        _rhs_open(p + dt * dp3, q + dt * dq3, i_hs, i_ls, i_a, i_na,
                  i_e, c_hs, net_cost, beta, one_b, m, a_pol, d_i, &dp4, &dq4)
        p = p + dt / 6.0 * (dp1 + 2.0 * dp2 + 2.0 * dp3 + dp4)
        q = q + dt / 6.0 * (dq1 + 2.0 * dq2 + 2.0 * dq3 + dq4)
        if p < 0.0:
            if -p > max_clamp:
                max_clamp = -p
            p = 0.0
        elif p > 1.0:
            if p - 1.0 > max_clamp:
                max_clamp = p - 1.0
            p = 1.0
        if q < 0.0:
            if -q > max_clamp:
                max_clamp = -q
            q = 0.0
        elif q > 1.0:
            if q - 1.0 > max_clamp:
                max_clamp = q - 1.0
            q = 1.0
        steps = s
        if record_every > 0 and s % record_every == 0:
            t_out[n_rec] = s * dt
            p_out[n_rec] = p
            q_out[n_rec] = q
            n_rec += 1
            last_rec = s
    if record_every > 0 and last_rec != steps:
        t_out[n_rec] = steps * dt
        p_out[n_rec] = p
        q_out[n_rec] = q
        n_rec += 1
    return n_rec, steps, p, q, conv, max_clamp


cdef inline double _rhs_closed(
    double q, double i_hs, double i_ls, double i_e, double c_hs,
    double beta, double one_b, double d_i,
) noexcept nogil:
    cdef double u_hs = one_b * (i_hs + q * i_e) - q * c_hs
    cdef double u_ls = one_b * (i_ls + q * i_e) - beta * (q * d_i)
    return q * (1.0 - q) * (u_hs - u_ls)


def integrate_closed(
    double i_hs, double i_ls, double i_e, double c_hs, double beta,
    double q0, double dt, long n_max,
    long record_every, double eps, int streak_needed,
    double[::1] t_out, double[::1] q_out,
):
    cdef double one_b = 1.0 - beta
    cdef double d_i = i_hs - i_ls
    cdef double q = q0
    cdef double k1, k2, k3, k4
    cdef long steps = 0, n_rec = 0, last_rec = -1, s
    cdef int streak = 0, conv = 0
    cdef double max_clamp = 0.0

    if record_every > 0:
        t_out[0] = 0.0
        q_out[0] = q
        n_rec = 1
        last_rec = 0
    for s in range(1, n_max + 1):
        k1 = _rhs_closed(q, i_hs, i_ls, i_e, c_hs, beta, one_b, d_i)
        if fabs(k1) < eps:
            streak += 1
            if streak >= streak_needed:
                conv = 1
                break
        else:
            streak = 0
        k2 = _rhs_closed(q + 0.5 * dt * k1, i_hs, i_ls, i_e, c_hs, beta, one_b, d_i)
        k3 = _rhs_closed(q + 0.5 * dt * k2, i_hs, i_ls, i_e, c_hs, beta, one_b, d_i)
        k4 = _rhs_closed(q + dt * k3, i_hs, i_ls, i_e, c_hs, beta, one_b, d_i)
        q = q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if q < 0.0:
            if -q > max_clamp:
                max_clamp = -q
            q = 0.0
        elif q > 1.0:
            if q - 1.0 > max_clamp:
                max_clamp = q - 1.0
            q = 1.0
        steps = s
        if record_every > 0 and s % record_every == 0:
            t_out[n_rec] = s * dt
            q_out[n_rec] = q
            n_rec += 1
            last_rec = s
    if record_every > 0 and last_rec != steps:
        t_out[n_rec] = steps * dt
        q_out[n_rec] = q
        n_rec += 1
    return n_rec, steps, q, conv, max_clamp
