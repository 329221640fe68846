"""Assembly of the Euler-Lagrange residual for curvature functionals.

The functional is F = integral of E(H, K) over the surface plus p times the
enclosed volume, with E a polynomial in the mean curvature H and the Gaussian
curvature K.  Its critical points satisfy

    (lap + 4 H^2 - 2 K) dE/dH + 2 (div_bar + 2 K H) dE/dK - 4 H E + 2 p = 0

where both partial derivatives are formal (H and K treated as independent
field variables) and only the final expression is restricted to the torus,
where K = (2 r H - 1) / r^2.  On the torus the whole left-hand side collapses
to a single polynomial in H; it is linear in the Lagrangian coefficients and
in p, so with unknown coefficients each power of H yields one linear equation.

Two independent evaluation routes are provided: the exact route through the
closed-form operator polynomials of :mod:`torusvar.h_calculus`, and a fully
numeric route through the spectral grid operators of
:mod:`torusvar.torus_geometry` alone, used as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

import numpy as np

from . import h_calculus, torus_geometry
from .exact_algebra import HPoly, LinearForm
from .h_calculus import ExactTorus
from .torus_geometry import DEFAULT_GRID, SurfaceGrid, TorusShape, grid_nodes

__all__ = [
    "Coefficient",
    "Lagrangian",
    "HelfrichParams",
    "helfrich_lagrangian",
    "ResidualSystem",
    "el_system",
    "el_residual",
    "el_residual_numeric",
    "sphere_residual",
]

# a coefficient is either a known exact rational or the name of an unknown
Coefficient = Union[Fraction, int, str]


def _is_unknown(c: Coefficient) -> bool:
    return isinstance(c, str)


def _as_form(c: Coefficient) -> LinearForm:
    if _is_unknown(c):
        return LinearForm.variable(c)
    return LinearForm(constant=Fraction(c))


@dataclass(frozen=True)
class Lagrangian:
    """Sparse energy density: map (H power, K power) -> coefficient.

    Coefficients and the pressure are either exact rationals or unknown
    names; mixing the two is allowed (known values fold into the constant
    part of the linear system).
    """

    terms: Mapping[tuple[int, int], Coefficient] = field(default_factory=dict)
    pressure: Coefficient = Fraction(0)

    def __post_init__(self):
        cleaned: dict[tuple[int, int], Coefficient] = {}
        for (k, m), c in self.terms.items():
            if k < 0 or m < 0:
                raise ValueError(f"curvature exponents must be nonnegative, got ({k}, {m})")
            if _is_unknown(c):
                cleaned[(k, m)] = c
            else:
                c = Fraction(c)
                if c != 0:
                    cleaned[(k, m)] = c
        object.__setattr__(self, "terms", cleaned)
        if not _is_unknown(self.pressure):
            object.__setattr__(self, "pressure", Fraction(self.pressure))

    @staticmethod
    def pure_h(coeffs: Mapping[int, Coefficient], pressure: Coefficient = 0) -> "Lagrangian":
        return Lagrangian({(k, 0): c for k, c in coeffs.items()}, pressure)

    @property
    def unknowns(self) -> tuple[str, ...]:
        names = [c for c in self.terms.values() if _is_unknown(c)]
        if _is_unknown(self.pressure):
            names.append(self.pressure)
        seen: dict[str, None] = {}
        for n in names:
            seen.setdefault(n)
        return tuple(seen)

    @property
    def is_numeric(self) -> bool:
        return not self.unknowns

    def substitute(self, values: Mapping[str, Fraction]) -> "Lagrangian":
        terms = {
            km: (Fraction(values[c]) if _is_unknown(c) else c) for km, c in self.terms.items()
        }
        pressure = self.pressure
        if _is_unknown(pressure):
            pressure = Fraction(values[pressure])
        return Lagrangian(terms, pressure)

    def eval_at(self, h, k):
        """Pointwise numeric value of E (floats or numpy arrays)."""
        self._require_numeric()
        total = 0.0
        for (i, j), c in self.terms.items():
            total = total + float(c) * h**i * k**j
        return total

    def partial_h(self) -> dict[tuple[int, int], Fraction]:
        self._require_numeric()
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            if i >= 1:
                out[(i - 1, j)] = out.get((i - 1, j), Fraction(0)) + i * Fraction(c)
        return out

    def partial_k(self) -> dict[tuple[int, int], Fraction]:
        self._require_numeric()
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            if j >= 1:
                out[(i, j - 1)] = out.get((i, j - 1), Fraction(0)) + j * Fraction(c)
        return out

    def _require_numeric(self):
        if not self.is_numeric:
            raise ValueError(f"Lagrangian still has unknowns: {self.unknowns}")


@dataclass(frozen=True)
class HelfrichParams:
    """Quadratic membrane model parameters: bending rigidity, spontaneous
    curvature, surface tension and pressure difference."""

    k_c: Fraction
    c0: Fraction
    w: Fraction
    p: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("k_c", "c0", "w", "p"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.k_c == 0:
            raise ValueError("bending rigidity must be nonzero for a quadratic model")


def helfrich_lagrangian(params: HelfrichParams) -> Lagrangian:
    """Expand the quadratic membrane density (k_c/2)(2H + c0)^2 + w.

    The H^2 coefficient of this expansion is 2 k_c; the H coefficient is
    2 k_c c0; the constant is k_c c0^2 / 2 + w.
    """
    k_c, c0, w = params.k_c, params.c0, params.w
    return Lagrangian.pure_h(
        {2: 2 * k_c, 1: 2 * k_c * c0, 0: Fraction(1, 2) * k_c * c0 * c0 + w},
        pressure=params.p,
    )


@dataclass(frozen=True)
class ResidualSystem:
    """The Euler-Lagrange residual with unknown coefficients: one LinearForm
    per power of H.  The torus is critical exactly when every row vanishes."""

    unknowns: tuple[str, ...]
    rows: tuple[LinearForm, ...]

    def row(self, power: int) -> LinearForm:
        if 0 <= power < len(self.rows):
            return self.rows[power]
        return LinearForm()

    @property
    def degree(self) -> int:
        return len(self.rows) - 1

    def nonzero_rows(self) -> list[tuple[int, LinearForm]]:
        return [(i, row) for i, row in enumerate(self.rows) if not row.is_zero]

    def substitute(self, values: Mapping[str, Fraction]) -> HPoly:
        return HPoly.of([row.evaluate(values) for row in self.rows])


# ---------------------------------------------------------------------------
# linear-coefficient polynomials: a list of LinearForms indexed by H power
# ---------------------------------------------------------------------------

_LinPoly = list  # list[LinearForm]


def _lp_trim(p: _LinPoly) -> _LinPoly:
    while p and p[-1].is_zero:
        p.pop()
    return p


def _lp_add(p: _LinPoly, q: _LinPoly) -> _LinPoly:
    out = []
    for i in range(max(len(p), len(q))):
        a = p[i] if i < len(p) else LinearForm()
        b = q[i] if i < len(q) else LinearForm()
        out.append(a + b)
    return _lp_trim(out)


def _lp_mul_poly(p: _LinPoly, q: HPoly) -> _LinPoly:
    if not p or q.is_zero:
        return []
    out = [LinearForm() for _ in range(len(p) + q.degree)]
    for i, form in enumerate(p):
        if form.is_zero:
            continue
        for j, c in enumerate(q.coeffs):
            if c != 0:
                out[i + j] = out[i + j] + form.scale(c)
    return _lp_trim(out)


def _lp_diff(p: _LinPoly) -> _LinPoly:
    return _lp_trim([p[i].scale(i) for i in range(1, len(p))])


def _lp_from_poly(q: HPoly, coeff: Coefficient) -> _LinPoly:
    form = _as_form(coeff)
    return _lp_trim([form.scale(c) for c in q.coeffs])


def _assemble(t: ExactTorus, lagrangian: Lagrangian) -> ResidualSystem:
    k_poly = h_calculus.k_as_hpoly(t)
    lap_h = h_calculus.laplacian_h(t)
    grad2 = h_calculus.grad_h_squared(t)
    dbar_h = h_calculus.divbar_h(t)
    bilinear = h_calculus.divbar_bilinear(t)

    h_mono = HPoly.monomial(1)
    phi_h: _LinPoly = []  # dE/dH restricted to the torus
    phi_k: _LinPoly = []  # dE/dK restricted to the torus
    density: _LinPoly = []  # E restricted to the torus
    for (i, j), coeff in lagrangian.terms.items():
        base = HPoly.monomial(i) * k_poly**j
        density = _lp_add(density, _lp_from_poly(base, coeff))
        if i >= 1:
            dh = (HPoly.monomial(i - 1) * k_poly**j).scale(i)
            phi_h = _lp_add(phi_h, _lp_from_poly(dh, coeff))
        if j >= 1:
            dk = (HPoly.monomial(i) * k_poly ** (j - 1)).scale(j)
            phi_k = _lp_add(phi_k, _lp_from_poly(dk, coeff))

    residual: _LinPoly = []
    # (lap + 4H^2 - 2K) dE/dH, with lap expanded by the chain rule
    residual = _lp_add(residual, _lp_mul_poly(_lp_diff(phi_h), lap_h))
    residual = _lp_add(residual, _lp_mul_poly(_lp_diff(_lp_diff(phi_h)), grad2))
    algebraic = HPoly.monomial(2, 4) - k_poly.scale(2)
    residual = _lp_add(residual, _lp_mul_poly(phi_h, algebraic))
    # 2 (div_bar + 2KH) dE/dK
    residual = _lp_add(residual, _lp_mul_poly(_lp_diff(phi_k), dbar_h.scale(2)))
    residual = _lp_add(residual, _lp_mul_poly(_lp_diff(_lp_diff(phi_k)), bilinear.scale(2)))
    residual = _lp_add(residual, _lp_mul_poly(phi_k, (k_poly * h_mono).scale(4)))
    # -4HE + 2p
    residual = _lp_add(residual, _lp_mul_poly(density, HPoly.monomial(1, -4)))
    residual = _lp_add(residual, [_as_form(lagrangian.pressure).scale(2)])

    return ResidualSystem(unknowns=lagrangian.unknowns, rows=tuple(residual))


def el_system(t: ExactTorus, lagrangian: Lagrangian) -> ResidualSystem:
    """Residual rows as linear forms in the unknown coefficients and p."""
    if not lagrangian.unknowns:
        raise ValueError("el_system expects at least one unknown coefficient")
    return _assemble(t, lagrangian)


def el_residual(t: ExactTorus, lagrangian: Lagrangian) -> HPoly:
    """Exact residual polynomial for a fully numeric Lagrangian.

    The torus is a critical point of the functional iff the result is the
    zero polynomial.
    """
    lagrangian._require_numeric()
    system = _assemble(t, lagrangian)
    return HPoly.of([row.constant for row in system.rows])


def el_residual_numeric(
    t: TorusShape, lagrangian: Lagrangian, n: int = DEFAULT_GRID
) -> np.ndarray:
    """Residual values on the u grid using the spectral operators only.

    This route never touches the closed-form operator polynomials, so it is
    a fully independent check of :func:`el_residual`.
    """
    values, _ = el_residual_numeric_scaled(t, lagrangian, n)
    return values


def el_residual_numeric_scaled(
    t: TorusShape, lagrangian: Lagrangian, n: int = DEFAULT_GRID
) -> tuple[np.ndarray, float]:
    """Grid residual plus its cancellation scale.

    The scale is the grid maximum of the summed magnitudes of the residual's
    constituent terms; a residual small against it certifies cancellation
    regardless of how large the family's coefficients are.
    """
    lagrangian._require_numeric()
    u = grid_nodes(n)
    h, k = torus_geometry.curvatures(t, u)

    def field_values(partial: Mapping[tuple[int, int], Fraction]) -> np.ndarray:
        total = np.zeros_like(h)
        for (i, j), c in partial.items():
            total = total + float(c) * h**i * k**j
        return total

    eh = field_values(lagrangian.partial_h())
    ek = field_values(lagrangian.partial_k())
    density = lagrangian.eval_at(h, k)

    lap_eh = torus_geometry.lb_numeric(t, SurfaceGrid(eh)).values
    dbar_ek = torus_geometry.divbar_numeric(t, SurfaceGrid(ek)).values
    pressure = float(lagrangian.pressure)
    terms = (
        lap_eh,
        (4.0 * h**2 - 2.0 * k) * eh,
        2.0 * dbar_ek,
        4.0 * k * h * ek,
        -4.0 * h * density,
        2.0 * pressure * np.ones_like(h),
    )
    residual = terms[0] + terms[1] + terms[2] + terms[3] + terms[4] + terms[5]
    scale = float(np.max(sum(np.abs(piece) for piece in terms)))
    return residual, max(scale, 1.0)


def sphere_residual(radius: Fraction, lagrangian: Lagrangian, pressure: Fraction) -> Fraction:
    """Exact residual on a sphere of the given radius.

    With H = 1/R and K = 1/R^2 constant, all derivative terms drop and the
    residual is the algebraic relation between the model parameters and R;
    the sphere is critical exactly when it vanishes.
    """
    lagrangian._require_numeric()
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("sphere radius must be positive")
    h = 1 / radius
    k = h * h

    def at(partial: Mapping[tuple[int, int], Fraction]) -> Fraction:
        return sum((c * h**i * k**j for (i, j), c in partial.items()), Fraction(0))

    eh = at(lagrangian.partial_h())
    ek = at(lagrangian.partial_k())
    density = at(dict(lagrangian.terms))
    return (4 * h * h - 2 * k) * eh + 2 * (2 * k * h) * ek - 4 * h * density + 2 * Fraction(pressure)
