"""Independent high-precision oracle for orbit quantities of the LV system.

In (p, q) = (ln x, ln y) the region {H <= h} is
    alpha (e^p - 1 - p) + (e^q - 1 - q) <= h - alpha - 1,
so the invariant-measure area is the integral over p of the chord length in q.
Chord endpoints solve e^q - q = 1 + c and are given by the two real branches of
the Lambert W function. tau = dA/dh and F_alpha = (dA/dalpha)_h / tau follow by
differentiating the area numerically at high precision.

Used only to generate frozen expected values for the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 40


def q_roots(c):
    # e^q - q = 1 + c  <=>  q = -(1+c) - W(-e^{-(1+c)})
    z = -mp.exp(-(1 + c))
    return (-(1 + c) - mp.lambertw(z, 0)).real, (-(1 + c) - mp.lambertw(z, -1)).real


def area(h, alpha):
    dh = mp.mpf(h) - alpha - 1
    p_hi, p_lo = q_roots(dh / alpha)  # branch 0 gives the positive root
    p_lo, p_hi = min(p_lo, p_hi), max(p_lo, p_hi)

    def chord(p):
        c = dh - alpha * (mp.exp(p) - 1 - p)
        if c <= 0:
            return mp.mpf(0)
        a, b = q_roots(c)
        return abs(a - b)

    # Square-root endpoint singularities: substitute p = mid + half*sin(s).
    mid, half = (p_lo + p_hi) / 2, (p_hi - p_lo) / 2
    return mp.quad(lambda s: chord(mid + half * mp.sin(s)) * half * mp.cos(s),
                   [-mp.pi / 2, 0, mp.pi / 2])


def quantities(h, alpha):
    h = mp.mpf(h)
    alpha = mp.mpf(alpha)
    A = area(h, alpha)
    tau = mp.diff(lambda v: area(v, alpha), h)
    dAda = mp.diff(lambda a: area(h, a), alpha)
    return {"A": A, "tau": tau, "theta": A / tau, "f_alpha": dAda / tau}


if __name__ == "__main__":
    for h, a in [(2.01, 1), (2.61, 1), (5.01, 4), (2.61, 0.5), (3.5, 2), (2.1, 1)]:
        r = quantities(h, a)
        print(f"h={h} alpha={a} " + " ".join(f"{k}={mp.nstr(v, 17)}" for k, v in r.items()))
