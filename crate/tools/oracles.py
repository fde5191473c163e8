"""High-precision reference values frozen into the Rust test suites.

Run with: python3 tools/oracles.py
Every value is computed with mpmath at 40 digits, independently of the Rust code.
"""
from mpmath import mp, mpf, mpc, ci, si, e1, chi, shi, exp, cos, sin, sqrt, pi, quad, quadosc, re, inf

mp.dps = 40


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


# special functions
for x in ["1e-3", "0.1", "1", "2", "5", "19.5", "20", "50", "100", "1000"]:
    show(f"Ci({x})", ci(mpf(x)))
for x in ["1e-3", "0.1", "1", "5", "50"]:
    show(f"-E1({x})", -e1(mpf(x)))

# Green tensor entries
show("g_zz(r=1,k=1) re", re(2 * exp(1j) * (1 - 1j)))
show("g_zz(r=1,k=1) im", (2 * exp(1j) * (1 - 1j)).imag)

# resonant pair term, ZZ dipoles, site (1,0), a=0.5, z=0.5, mu=0.5, rho=1e-6
mu, rho = mpf("0.5"), mpf("1e-6")
K = 9 * rho * mu / (8 * (1 - mu) * (1 + mu))


def res_zz(r, z):
    B = (r * r + 1j * r - 1) + (-r * r + 3 - 3j * r) * z * z / (r * r)
    return re(exp(2j * r) * B * B) / r**6


z = mpf("0.5")
show("res_pair_zz(1,0;a=.5,z=.5)", K * res_zz(sqrt(mpf("0.25") + z * z), z))


# resonant pair ZX at x=0.7, z=0.4
def res_zx(x, z):
    r = sqrt(x * x + z * z)
    C = (-r * r + 3 - 3j * r) * z * x / (r * r)
    return re(exp(2j * r) * C * C) / r**6


show("res_pair_zx(x=.7,z=.4)", K * res_zx(mpf("0.7"), mpf("0.4")))


# off-resonant pair term (ZZ)
def w(xi):
    return 1 / ((xi * xi + 1) * (xi * xi + mu * mu))


def or_zz(r, z):
    def f(xi):
        u = xi * r
        b = (u * u + u + 1) - (u * u + 3 * u + 3) * z * z / (r * r)
        return w(xi) * exp(-2 * u) * b * b / r**6
    return 9 * rho * mu / (8 * pi) * quad(f, [0, 1 / r, 1, 10, inf])


for (r, zz) in [("0.01", "0.01"), ("1", "1"), ("10", "10"), ("2.5", "1.5")]:
    show(f"or_pair_zz(r={r},z={zz})", or_zz(mpf(r), mpf(zz)))


# bulk (resonant ZZ) exact radial integral, a=1, per K
def bulk_res_zz(z):
    h = lambda r: res_zz(r, z) * r  # 2π∫ r dr f ; f = K res_zz
    return 2 * pi * quadosc(h, [z, inf], period=pi)


for zz in ["0.1", "1", "5", "30"]:
    show(f"bulk_res_zz/K (a=1, z={zz})", bulk_res_zz(mpf(zz)))


def bulk_res_zx(z):
    # phi-average of x^2 is R^2/2
    def h(r):
        C = (-r * r + 3 - 3j * r)
        return re(exp(2j * r) * C * C) / r**6 * z * z * (r * r - z * z) / (2 * r**4) * r
    return 2 * pi * quadosc(h, [z, inf], period=pi)


for zz in ["0.1", "1", "5"]:
    show(f"bulk_res_zx/K (a=1, z={zz})", bulk_res_zx(mpf(zz)))


# edge (resonant ZZ), a=1, per K: 2*(2∫_0^∞ dx f(x,0))
def edge_res_zz(z):
    g = lambda x: res_zz(sqrt(x * x + z * z), z)
    return 4 * quadosc(g, [0, inf], period=pi)


for zz in ["0.3", "2"]:
    show(f"edge_res_zz/K (a=1, z={zz})", edge_res_zz(mpf(zz)))


def edge_res_zx(z):
    # x axis only (y axis coupling vanishes): 2*∫_0^∞ dx f(x,0)
    g = lambda x: res_zx(x, z)
    return 2 * quadosc(g, [0, inf], period=pi)


show("edge_res_zx/K (a=1, z=0.5)", edge_res_zx(mpf("0.5")))


# off-resonant bulk (ZZ), a=1, mu=0.5, rho=1e-6
def or_bulk_zz(z):
    def inner(xi):
        u = z * xi
        radial = exp(-2 * u) * (3 + 2 * u * (3 + u * (1 - 2 * u)) - 8 * exp(2 * u) * u**4 * (chi(2 * u) - shi(2 * u))) / (8 * z**4)
        return w(xi) * radial
    return 9 * rho * mu / (8 * pi) * 2 * pi * quad(inner, [0, 1 / z, 1, inf])


for zz in ["0.1", "1", "20"]:
    show(f"or_bulk_zz (a=1, z={zz})", or_bulk_zz(mpf(zz)))
