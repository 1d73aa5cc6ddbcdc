"""High-precision reference values frozen into the C++ tests.

Run: python3 tests/oracles/reference_values.py
Independent of the C++ implementation: mpmath arithmetic and mpmath.quad on the
real energy axis (no contour deformation, no exponential integral).
"""
import mpmath as mp

mp.mp.dps = 20
HBAR = mp.mpf("6.582119569e-25")


def onshell_pole(m, g):
    m, g = mp.mpf(m), mp.mpf(g)
    return m**2 / (1 + 1j * g / m)


def pole_sqrt_params(s):
    r = mp.sqrt(s)
    return r.real, -2 * r.imag


def bar_mass_params(s):
    m = mp.sqrt(s.real)
    return m, -s.imag / m


def survival(er, g, t):
    """A(t) = int_0^inf rho(E) exp(-iEt) dE, truncated normalized Lorentzian."""
    er, g, t = mp.mpf(er), mp.mpf(g), mp.mpf(t)
    norm = 1 / (mp.mpf(1) / 2 + mp.atan(2 * er / g) / mp.pi)
    rho = lambda e: norm * (g / (2 * mp.pi)) / ((e - er) ** 2 + g**2 / 4)
    if t == 0:
        return mp.mpc(1)
    f = lambda e: rho(e) * mp.exp(-1j * e * t)
    period = 2 * mp.pi / t
    hi = er + 60 * g
    # one subinterval per oscillation period over all of [0, hi]
    pts = []
    x = mp.mpf(0)
    while x < hi:
        pts.append(x)
        x += period
    pts.append(hi)
    body = mp.quad(f, pts)
    # [hi, inf): the ray hi - iy encloses no pole, so the tail equals the
    # exponentially damped integral along it.
    tail = mp.quad(lambda y: f(hi - 1j * y) * (-1j), [0, mp.inf])
    return body + tail


if __name__ == "__main__":
    s = onshell_pole("91.1875", "2.4939")
    print("onshell pole", mp.nstr(s, 20))
    print("polesqrt", [mp.nstr(v, 20) for v in pole_sqrt_params(s)])
    print("barmass", [mp.nstr(v, 20) for v in bar_mass_params(s)])
    print("tau(2.4943)", mp.nstr(HBAR / mp.mpf("2.4943"), 20))
    # RelBW amplitude at sqrt(s) = M_R for PoleSqrt(91.1611, 2.4943), r = 1
    m, g = mp.mpf("91.1611"), mp.mpf("2.4943")
    sr = (m - 1j * g / 2) ** 2
    a = 1 / (m**2 - sr)
    print("relbw amplitude", mp.nstr(a, 20), "abs", mp.nstr(abs(a), 20))
    for er, t in [(50, 1), (50, 30), (50, 40), (5, 0.5), (5, 1), (2, 3), (1000, 50), (500, 2)]:
        amp = survival(er, 1, t)
        p = abs(amp) ** 2
        print(f"survival er={er} t={t}", mp.nstr(amp.real, 17), mp.nstr(amp.imag, 17),
              "|A|^2", mp.nstr(p, 17), "ratio", mp.nstr(p / mp.exp(-t), 17))
