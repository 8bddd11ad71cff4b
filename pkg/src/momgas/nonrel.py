"""Non-relativistic limit of the 1D current-current (Thirring-type) model:
dispersion, Bogoliubov coefficients, the four-point vertex and its 1/mc
expansion, cosine-potential Taylor coefficients, and the coupling maps that
tie the relativistic couplings to the contact-gas couplings.

Conventions.  E_k = sqrt((mc^2)^2 + (kc)^2); the canonical transformation
diagonalizing the free Dirac Hamiltonian has weights

    a_pm(k) = sqrt((1 pm kc/E_k)/2),

and the anti-symmetrized interaction vertex in that basis is

    v = 1/4 [ a+(k1)a+(k2)a-(k3)a-(k4) + a+(k3)a+(k4)a-(k1)a-(k2)
            - a+(k3)a+(k2)a-(k1)a-(k4) - a+(k1)a+(k4)a-(k3)a-(k2) ],

whose leading 1/mc behaviour is (k1-k3)(k2-k4)/(4mc)^2: exactly the
momentum-dependent contact interaction, with lam = -g/c^2 in 2m = 1 units.
The cosine potential of the dual boson description starts at the quartic
term with coefficient -(mc)^2 beta^2/4!, identified with the phi^4 coupling
g_B; both routes give c_B = -(beta c/4)^2.  Combining lam = -g/c^2 with the
strong-coupling limit of the duality relation 4 pi/beta^2 = 1 + g/pi pins
lam * c_B = pi^2/4 independently of g and c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RelativisticParams", "BogoliubovPair",
    "dispersion", "dispersion_remainder", "dispersion_scan",
    "bogoliubov",
    "vertex_exact", "vertex_leading", "vertex_expansion_scan",
    "sine_gordon_taylor_coeff", "coupling_maps",
    "coleman_check", "coleman_full_product",
    "loglog_slope",
]


def _check_mass_speed(m: float, c: float) -> None:
    if m <= 0 or c <= 0:
        raise ValueError("mass and speed of light must be positive")


@dataclass(frozen=True)
class RelativisticParams:
    """Parameter bundle of the relativistic model.

    E0 is the reference energy subtracted in the non-relativistic limit and
    defaults to the rest energy mc^2; alpha defaults to the mass
    identification (mc)^2 of the cosine potential.
    """
    m: float
    c: float
    E0: float | None = None
    g: float | None = None
    alpha: float | None = None
    beta: float | None = None
    gB: float | None = None

    def __post_init__(self):
        _check_mass_speed(self.m, self.c)
        if self.E0 is None:
            object.__setattr__(self, "E0", self.m * self.c * self.c)
        if self.alpha is None:
            object.__setattr__(self, "alpha", (self.m * self.c) ** 2)

    @property
    def mc(self) -> float:
        return self.m * self.c

    @property
    def rest_energy(self) -> float:
        return self.m * self.c * self.c


@dataclass(frozen=True)
class BogoliubovPair:
    """Weights of the canonical transformation: a_plus^2 + a_minus^2 = 1."""
    a_plus: float
    a_minus: float


def dispersion(k: float, m: float, c: float) -> float:
    """E_k = sqrt((mc^2)^2 + (kc)^2)."""
    _check_mass_speed(m, c)
    return math.hypot(m * c * c, k * c)


def dispersion_remainder(k: float, m: float, c: float) -> float:
    """E_k - mc^2 - k^2/2m: what survives after removing rest energy and the
    Galilean kinetic term.  Leading behaviour -k^4/(8 m^3 c^2)."""
    e = dispersion(k, m, c)
    return (e - m * c * c) - k * k / (2.0 * m)


def loglog_slope(x, y) -> float:
    """Least-squares slope of log|y| against log x."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.abs(np.asarray(y, dtype=float)))
    if len(lx) < 2:
        raise ValueError("need at least two points for a slope")
    return float(np.polyfit(lx, ly, 1)[0])


def dispersion_scan(k: float, mc_values) -> dict:
    """Expansion-order check of the dispersion: remainder vs mc at fixed k.

    mc is swept through c at m = 1 (the limit the expansion is taken in);
    the remainder then scales as (mc)^-2 and the fitted log-log slope must
    sit at -2.
    """
    mc_values = [float(v) for v in mc_values]
    if any(v <= 0 for v in mc_values):
        raise ValueError("mc values must be positive")
    rows = []
    for mc in mc_values:
        rows.append({
            "mc": mc,
            "energy": dispersion(k, 1.0, mc),
            "remainder": dispersion_remainder(k, 1.0, mc),
        })
    slope = loglog_slope(mc_values, [r["remainder"] for r in rows])
    return {"k": float(k), "rows": rows, "slope": slope}


def bogoliubov(k: float, m: float, c: float) -> BogoliubovPair:
    """a_pm(k) = sqrt((1 pm kc/E_k)/2).  Depends on k and the product mc only."""
    e = dispersion(k, m, c)
    ratio = k * c / e
    return BogoliubovPair(a_plus=math.sqrt((1.0 + ratio) / 2.0),
                          a_minus=math.sqrt((1.0 - ratio) / 2.0))


def vertex_exact(k1: float, k2: float, k3: float, k4: float,
                 m: float, c: float) -> float:
    """Anti-symmetrized four-point vertex in the Bogoliubov basis.

    The four products are grouped as (t1 - t3) + (t2 - t4) so that the
    antisymmetry zeros at k1 = k3 and at k2 = k4 cancel exactly in floats,
    not merely to rounding.
    """
    b1, b2, b3, b4 = (bogoliubov(k, m, c) for k in (k1, k2, k3, k4))
    t1 = b1.a_plus * b2.a_plus * b3.a_minus * b4.a_minus
    t2 = b3.a_plus * b4.a_plus * b1.a_minus * b2.a_minus
    t3 = b3.a_plus * b2.a_plus * b1.a_minus * b4.a_minus
    t4 = b1.a_plus * b4.a_plus * b3.a_minus * b2.a_minus
    return 0.25 * ((t1 - t3) + (t2 - t4))


def vertex_leading(k1: float, k2: float, k3: float, k4: float,
                   m: float, c: float) -> float:
    """Leading 1/mc term of the vertex: (k1 - k3)(k2 - k4)/(4mc)^2."""
    _check_mass_speed(m, c)
    return (k1 - k3) * (k2 - k4) / (4.0 * m * c) ** 2


def vertex_expansion_scan(ks, mc_values) -> dict:
    """Relative error of the leading vertex term across an mc sweep (m = 1).

    The remainder is O((mc)^-3) against a leading (mc)^-2 term, so the
    fitted log-log slope of the relative error must sit at -1.
    """
    k1, k2, k3, k4 = (float(v) for v in ks)
    if (k1 - k3) * (k2 - k4) == 0.0:
        raise ValueError("degenerate momentum tuple: leading term vanishes, "
                         "relative error undefined")
    mc_values = [float(v) for v in mc_values]
    if any(v <= 0 for v in mc_values):
        raise ValueError("mc values must be positive")
    rows = []
    for mc in mc_values:
        v = vertex_exact(k1, k2, k3, k4, 1.0, mc)
        lead = vertex_leading(k1, k2, k3, k4, 1.0, mc)
        rows.append({
            "mc": mc,
            "v_exact": v,
            "v_leading": lead,
            "rel_error": abs(v - lead) / abs(lead),
        })
    slope = loglog_slope(mc_values, [r["rel_error"] for r in rows])
    return {"ks": [k1, k2, k3, k4], "rows": rows, "slope": slope}


def sine_gordon_taylor_coeff(n: int, m: float, c: float, beta: float) -> float:
    """Coefficient of the 2n-th power in the cosine-potential expansion:
    (-1)^(n-1) (mc)^2 beta^(2n-2) / (2n)!.  Starts at the quartic term n = 2."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("the expansion starts at the quartic term: n >= 2")
    _check_mass_speed(m, c)
    return (-1.0) ** (n - 1) * (m * c) ** 2 * beta ** (2 * n - 2) / math.factorial(2 * n)


def coupling_maps(params: RelativisticParams) -> dict:
    """The three coupling maps into the contact-gas language (2m = 1 units):

      lambda_from_thirring = -g/c^2
      cB_from_sg           = -(beta c/4)^2
      cB_from_phi4         = 3 g_B/(2 m^2), with g_B the n = 2 cosine
                             coefficient -(mc)^2 beta^2/4! unless an explicit
                             gB was supplied.

    The two c_B routes agree identically: the mass cancels from the phi^4
    route once g_B carries its (mc)^2 prefactor.
    """
    if params.g is None:
        raise ValueError("coupling_maps needs the fermion coupling g")
    if params.beta is None:
        raise ValueError("coupling_maps needs the cosine-potential coupling beta")
    g_b = params.gB if params.gB is not None else sine_gordon_taylor_coeff(
        2, params.m, params.c, params.beta)
    return {
        "lambda_from_thirring": -params.g / params.c ** 2,
        "cB_from_sg": -(params.beta * params.c / 4.0) ** 2,
        "cB_from_phi4": 3.0 * g_b / (2.0 * params.m ** 2),
    }


def coleman_check(g: float, c: float) -> float:
    """lam * c_B under the strong-coupling form of the boson-fermion duality.

    lam = -g/c^2 and beta^2 = 4 pi^2/g (the duality relation 4 pi/beta^2 =
    1 + g/pi with the 1 dropped, the limit relevant for g -> infinity) give
    c_B = -(beta c/4)^2 and lam * c_B = pi^2/4 for every g > 0 and c > 0.
    """
    if g <= 0:
        raise ValueError("the duality argument applies to g > 0 "
                         "(attractive contact coupling lam < 0)")
    if c <= 0:
        raise ValueError("speed of light must be positive")
    lam = -g / c ** 2
    beta_sq = 4.0 * math.pi ** 2 / g
    c_b = -beta_sq * c ** 2 / 16.0
    return lam * c_b


def coleman_full_product(g: float, c: float) -> float:
    """Same product without dropping the 1: beta^2 = 4 pi^2/(pi + g), so
    lam * c_B = pi^2 g/(4 (pi + g)), approaching pi^2/4 as g grows."""
    if g <= 0:
        raise ValueError("the duality argument applies to g > 0")
    if c <= 0:
        raise ValueError("speed of light must be positive")
    lam = -g / c ** 2
    beta_sq = 4.0 * math.pi ** 2 / (math.pi + g)
    c_b = -beta_sq * c ** 2 / 16.0
    return lam * c_b
