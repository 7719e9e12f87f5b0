"""Pure-Python integration kernels (fallback when the extension is absent).

Keep the arithmetic in lockstep with ``_integrate_c.pyx``: both kernels
must implement the identical fixed-step RK4 scheme, residual check, and
clamp policy so that either backend can serve any caller.

Contract shared by both backends:

* classical RK4 with fixed step ``dt``; stage states are not clamped,
  the state is clamped into [0, 1] after each full step and the largest
  clamp magnitude is reported;
* the residual check reuses the first RK4 stage: before performing step
  s the right-hand side at the current state is evaluated, and once its
  max-norm stays below ``eps`` for ``streak_needed`` consecutive
  iterations the run stops as converged;
* when ``record_every > 0`` the initial state, every record_every-th
  step, and the final state are written to the output buffers.
"""

from __future__ import annotations


def integrate_open(
    i_hs, i_ls, i_a, i_na, i_e, c_hs, c_a, beta, m, a_pol,
    p0, q0, dt, n_max, record_every, eps, streak_needed,
    t_out, p_out, q_out,
):
    one_b = 1.0 - beta
    d_i = i_hs - i_ls
    net_cost = c_a - a_pol

    def rhs(p, q):
        tax = p * m * a_pol
        ia = i_a + q * i_e
        rd_ls = q / (1.0 + p * m) * d_i
        rd_a = (q * d_i + (i_ls - i_a - tax)) / (1.0 + m)
        rd_na = p * (ia - i_na)
        u_hs = one_b * (i_hs + q * i_e - tax) - q * c_hs
        u_ls = one_b * (i_ls + q * i_e - tax) - beta * rd_ls
        u_a = one_b * ia - net_cost - beta * rd_a
        u_na = one_b * i_na - beta * rd_na
        return p * (1.0 - p) * (u_a - u_na), q * (1.0 - q) * (u_hs - u_ls)

    p, q = p0, q0
    steps = 0
    streak = 0
    conv = 0
    max_clamp = 0.0
    n_rec = 0
    last_rec = -1
    if record_every > 0:
        t_out[0] = 0.0
        p_out[0] = p
        q_out[0] = q
        n_rec = 1
        last_rec = 0
    for s in range(1, n_max + 1):
        dp1, dq1 = rhs(p, q)
        r = abs(dp1)
        if abs(dq1) > r:
            r = abs(dq1)
        if r < eps:
            streak += 1
            if streak >= streak_needed:
                conv = 1
                break
        else:
            streak = 0
        dp2, dq2 = rhs(p + 0.5 * dt * dp1, q + 0.5 * dt * dq1)
        dp3, dq3 = rhs(p + 0.5 * dt * dp2, q + 0.5 * dt * dq2)
        dp4, dq4 = rhs(p + dt * dp3, q + dt * dq3)
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


def integrate_closed(
    i_hs, i_ls, i_e, c_hs, beta,
    q0, dt, n_max, record_every, eps, streak_needed,
    t_out, q_out,
):
    one_b = 1.0 - beta
    d_i = i_hs - i_ls

    def rhs(q):
        u_hs = one_b * (i_hs + q * i_e) - q * c_hs
        u_ls = one_b * (i_ls + q * i_e) - beta * (q * d_i)
        return q * (1.0 - q) * (u_hs - u_ls)

    q = q0
    steps = 0
    streak = 0
    conv = 0
    max_clamp = 0.0
    n_rec = 0
    last_rec = -1
    if record_every > 0:
        t_out[0] = 0.0
        q_out[0] = q
        n_rec = 1
        last_rec = 0
    for s in range(1, n_max + 1):
        k1 = rhs(q)
        if abs(k1) < eps:
            streak += 1
            if streak >= streak_needed:
                conv = 1
                break
        else:
            streak = 0
        k2 = rhs(q + 0.5 * dt * k1)
        k3 = rhs(q + 0.5 * dt * k2)
        k4 = rhs(q + dt * k3)
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
