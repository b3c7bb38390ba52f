"""Regenerate tests/oracles/frozen.json with mpmath.

Every value here comes straight from the defining integrals at 20 digits
and does not import hausmorrey.  Run from the repository root:

    python3 tests/oracles/generate.py
"""

import json
import os

import mpmath as mp

mp.mp.dps = 20
HERE = os.path.dirname(os.path.abspath(__file__))


def omega(n):
    return 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)


def _dyadic(lo, hi):
    """Breakpoints for slowly decaying integrands in a log variable."""
    pts = [lo, hi]
    for k in range(-4, 13):
        for x in (2 ** k, -(2 ** k)):
            if lo < x < hi:
                pts.append(x)
    return sorted(set(pts))


def _log_quad(f, a, b):
    """int_a^b f(r) dr with r = e^u; a may be 0 and b may be inf."""
    ua = -mp.inf if a == 0 else mp.log(a)
    ub = mp.inf if b == mp.inf else mp.log(b)
    return mp.quad(lambda u: f(mp.e ** u) * mp.e ** u, _dyadic(ua, ub))


def _power_integral(terms, a, b):
    """int_a^b sum c rho^e d rho, exactly; b may be inf when every e < -1."""
    tot = mp.mpf(0)
    for c, e in terms:
        k = e + 1
        if k == 0:
            tot += c * (mp.log(b) - mp.log(a))
        elif b == mp.inf:
            tot += -c * a ** k / k
        else:
            tot += c * (b ** k - a ** k) / k
    return tot


def morrey_norm(terms, n, p, pt, q, lam, alpha, family="local", lo=1):
    """Norm of a radial profile g supported on rho > lo with |g|^pt = sum c rho^e.

    inner(r) = omega^{pt/p} int |g|^pt rho^{n+alpha-1} over (0, r) or (r, inf)
    is done exactly term by term; only the outer integral is numerical, in a
    log variable with dyadic breakpoints so slow tails keep their digits.
    """
    n, p, pt, q, lam, alpha = (mp.mpf(x) for x in (n, p, pt, q, lam, alpha))
    ang = omega(n) ** (pt / p)
    dens = [(mp.mpf(c), mp.mpf(e) + n + alpha - 1) for c, e in terms]

    def inner(r):
        if family == "local":
            return ang * _power_integral(dens, lo, r) if r > lo else mp.mpf(0)
        return ang * _power_integral(dens, max(r, lo), mp.inf)

    def outer(r):
        return r ** (-lam * q - 1) * inner(r) ** (q / pt)

    if family == "local":
        return _log_quad(outer, mp.mpf(lo), mp.inf) ** (1 / q)
    total = _log_quad(outer, mp.mpf(0), mp.mpf(lo)) + _log_quad(outer, mp.mpf(lo), mp.inf)
    return total ** (1 / q)


def power_norm_cases():
    cases = [
        # n, p, pt, q, lam, alpha, beta
        (2, 2, 2, 2, 0.5, 0.0, -1.1),
        (3, 1.5, 1.5, 1, 0.7, 0.5, -2.3),
        (2, 3, 4, 2, 0.2, -0.5, -0.5),
        (3, 2, 2, 1, 1.0, 0.0, -1.8),
    ]
    out = []
    for n, p, pt, q, lam, al, beta in cases:
        v = morrey_norm([(1, beta * pt)], n, p, pt, q, lam, al)
        out.append({"n": n, "p": p, "p_tilde": pt, "q": q, "lambda": lam, "alpha": al, "beta": beta,
                    "value": float(v)})
    return out


def complementary_cases():
    cases = [
        (2, 2, 2, 2, -0.5, 0.0, -1.7),
        (3, 2, 1.5, 1, -0.3, 0.5, -2.9),
    ]
    out = []
    for n, p, pt, q, lam, al, beta in cases:
        v = morrey_norm([(1, beta * pt)], n, p, pt, q, lam, al, "complementary")
        out.append({"n": n, "p": p, "p_tilde": pt, "q": q, "lambda": lam, "alpha": al, "beta": beta,
                    "value": float(v)})
    return out


def hardy_sweep():
    """||Hardy f_eps|| / ||f_eps|| at n = 2, p = p~ = q = 2, lambda = 1/2."""
    n, lam, pt = 2, mp.mpf("0.5"), 2
    out = {}
    for eps in ("0.2", "0.1", "0.05", "0.025"):
        e = mp.mpf(eps)
        beta = lam - mp.mpf(n) / pt - e
        # Hardy f(r) = c (r^beta - r^-n) with c = n/(beta+n); squared as three powers
        c = n / (beta + n)
        sq = [(c * c, 2 * beta), (-2 * c * c, beta - n), (c * c, -2 * n)]
        num = morrey_norm(sq, n, 2, 2, 2, lam, 0)
        den = morrey_norm([(1, 2 * beta)], n, 2, 2, 2, lam, 0)
        out[eps] = float(num / den)
    return out


def bilinear_constants():
    """Multilinear constants straight from their polar-coordinate displays."""
    n1 = n2 = 2
    N = n1 + n2
    out = {}
    # Rtilde with exp(-sqrt(t1^2+t2^2)) t1^0.3 t2^0.2, factors (p~_i, lambda_i) = (4, 0.25), (4, 0.25)
    s1 = s2 = mp.mpf(2) / 4 - mp.mpf("0.25")

    def phi_r(t1, t2):
        return t1 ** mp.mpf("0.3") * t2 ** mp.mpf("0.2") * mp.exp(-mp.sqrt(t1 * t1 + t2 * t2))

    c4 = omega(n1) * omega(n2) * mp.quad(lambda a, b: phi_r(a, b) * a ** (s1 - 1) * b ** (s2 - 1),
                                        [0, 1, mp.inf], [0, 1, mp.inf])
    out["C4_exp_radial"] = float(c4)
    # S with the same kernel read as Phi(|u1|, |u2|)
    c5 = omega(n1) * omega(n2) * mp.quad(
        lambda a, b: phi_r(a, b) * (a * a + b * b) ** (-mp.mpf(N) / 2) * a ** (s1 + n1 - 1) * b ** (s2 + n2 - 1),
        [0, 1, mp.inf], [0, 1, mp.inf])
    out["C5_exp_radial"] = float(c5)

    # Stilde with Phi(t) = exp(-t) sqrt(t)
    def phi1(t):
        return mp.sqrt(t) * mp.exp(-t)

    def c6_integrand(a, b):
        arg = a * b / mp.sqrt(a * a + b * b)
        w = (a * a + b * b) ** (-mp.mpf(N) / 2)
        return phi1(arg) * a ** (n2 + s1 - 1) * b ** (n1 + s2 - 1) * w

    c6 = omega(n1) * omega(n2) * mp.quad(c6_integrand, [0, 1, mp.inf], [0, 1, mp.inf])
    out["C6_sqrt_exp"] = float(c6)
    return out


def main():
    data = {
        "power_norms": power_norm_cases(),
        "complementary_power_norms": complementary_cases(),
        "hardy_sweep_ratios": hardy_sweep(),
        "bilinear_constants": bilinear_constants(),
        "htilde_at_one": float(2 * mp.pi * mp.sqrt(mp.pi) * mp.erf(1)),
        "rtilde_at_one": float((2 * mp.pi) ** 2 * (mp.sqrt(mp.pi) * mp.erf(1)) ** 2),
        "c1_exp": float(2 * mp.pi * mp.gamma(mp.mpf("0.5"))),
        "c3_exp": float((2 * mp.pi) ** 2 * mp.gamma(mp.mpf("0.25")) ** 2),
    }
    with open(os.path.join(HERE, "frozen.json"), "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
