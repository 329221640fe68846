"""Exact solving of the critical-point systems for polynomial Lagrangians.

The degree-n pure-H family is E_n = a1 H^n + a2 H^(n-1) + ... + a_{n+1},
with the pressure p one more linear unknown.  Collecting the residual of
:func:`torusvar.shape_equation.el_system` by powers of H gives n + 2 linear
equations; the top row involves only a1 and fixes the aspect ratio

    a^2 / r^2 = (n^2 - n) / (n^2 - n - 1),    n >= 2,

after which the rest solves as an exact parametrized family.  Adding Gaussian
curvature terms K^m H^k (m >= 1) contributes extra unknowns that remove the
ratio constraint; those solves run at fixed radii.

Free parameters are chosen deterministically: pivots are preferred in the
order (p, K-term coefficients from highest index down, the constant
coefficient a_{n+1}, then a2, a3, ...), so a1 is always left free when the
rank allows it and reported families match a fixed convention.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import shape_equation
from .exact_algebra import LinearForm, solve_linear_system
from .h_calculus import ExactTorus
from .shape_equation import Lagrangian, el_residual
from .torus_geometry import DEFAULT_GRID

__all__ = [
    "SolutionReport",
    "DegeneracyInfo",
    "VerificationResult",
    "constraint_ratio",
    "default_kterms",
    "theorem_kterms",
    "family_lagrangian",
    "solve_lagrangian",
    "solve_pure_h",
    "solve_with_gauss",
    "delta_radii_polynomial",
    "verify_solution",
]

PRESSURE = "p"


def constraint_ratio(n: int) -> Fraction:
    """Aspect ratio a^2/r^2 forced on the degree-n pure-H family, n >= 2."""
    if n < 2:
        raise ValueError("the ratio constraint exists only for degree >= 2")
    return Fraction(n * n - n, n * n - n - 1)


def default_kterms(n: int) -> tuple[tuple[int, int], ...]:
    """Gaussian-curvature term sets used by the worked degree-3/4/5 families.

    Entries are (H power, K power) with K power >= 1; the inert standalone K
    term is omitted since it never contributes to the residual.
    """
    known = {
        3: ((0, 2), (1, 1)),
        4: ((0, 2), (1, 1), (2, 1)),
        5: ((1, 2), (0, 2), (3, 1), (2, 1), (1, 1)),
    }
    if n in known:
        return known[n]
    return tuple(
        (k, m) for m in range(1, n // 2 + 1) for k in range(0, n - 2 * m + 1) if (k, m) != (0, 1)
    )


def theorem_kterms(n: int) -> tuple[tuple[int, int], ...]:
    """Full K-term ladder sum_{m=1}^{[n/2]} K^m sum_{k=0}^{n-2m} H^k,
    including the inert standalone K (whose coefficient stays free)."""
    return tuple((k, m) for m in range(1, n // 2 + 1) for k in range(0, n - 2 * m + 1))


def family_lagrangian(
    n: int, kterms: Sequence[tuple[int, int]] = ()
) -> Lagrangian:
    """Degree-n Lagrangian with unknown coefficients a1..a_{n+1} on the pure
    H powers (a1 on H^n), a_{n+2}... on the K terms in the given order, and
    unknown pressure."""
    if n < 1:
        raise ValueError("polynomial degree must be >= 1")
    terms: dict[tuple[int, int], str] = {}
    for i in range(n + 1):
        terms[(n - i, 0)] = f"a{i + 1}"
    for offset, (k, m) in enumerate(kterms):
        if m < 1:
            raise ValueError(f"K terms need K power >= 1, got ({k}, {m})")
        if (k, m) in terms:
            raise ValueError(f"duplicate term ({k}, {m})")
        terms[(k, m)] = f"a{n + 2 + offset}"
    return Lagrangian(terms, pressure=PRESSURE)


def _pivot_order(n: int, n_kterms: int) -> list[str]:
    kco = [f"a{n + 1 + i}" for i in range(n_kterms, 0, -1)]
    return [PRESSURE] + kco + [f"a{n + 1}"] + [f"a{i}" for i in range(2, n + 1)] + ["a1"]


@dataclass(frozen=True)
class DegeneracyInfo:
    """Raised rank structure at special radii: which factors of the radii
    polynomial vanished, and how the generic parametrization changed."""

    vanished: tuple[str, ...]
    note: str


@dataclass(frozen=True)
class VerificationResult:
    """Exact and grid-oracle verdicts for one family member.

    ``numeric_max_residual`` is the raw grid maximum; ``numeric_scale`` is the
    magnitude of the terms that had to cancel, so ``numeric_relative`` is the
    meaningful accuracy measure when coefficients are large.
    """

    exact: bool
    numeric_max_residual: float
    numeric_scale: float = 1.0

    @property
    def numeric_relative(self) -> float:
        return self.numeric_max_residual / self.numeric_scale


@dataclass(frozen=True)
class SolutionReport:
    """Exact parametrized solution of one critical-point system."""

    degree: int
    r: Fraction
    a2: Fraction | None
    constraint: Fraction | None
    kterms: tuple[tuple[int, int], ...]
    unknowns: tuple[str, ...]
    free_parameters: tuple[str, ...]
    assignments: dict[str, LinearForm]
    delta: Fraction | None
    degeneracy: DegeneracyInfo | None
    consistent: bool
    offending_rows: tuple[int, ...] = ()

    def coefficient(self, name: str) -> LinearForm:
        return self.assignments[name]

    def lagrangian_at(self, free_values: Mapping[str, Fraction]) -> Lagrangian:
        """Instantiate the family at concrete free-parameter values."""
        values = {name: Fraction(v) for name, v in free_values.items()}
        resolved = {
            name: form.evaluate(values) for name, form in self.assignments.items()
        }
        template = family_lagrangian(self.degree, self.kterms)
        terms = {km: resolved[c] for km, c in template.terms.items()}
        return Lagrangian(terms, pressure=resolved[PRESSURE])

    def exact_torus(self) -> ExactTorus:
        if self.a2 is None:
            raise ValueError("this family has no fixed radii")
        return ExactTorus(self.a2, self.r)


def delta_radii_polynomial(n: int, a2: Fraction, r2: Fraction) -> tuple[Fraction, tuple[str, ...]] | None:
    """Product of radii factors controlling the generic fourth/fifth order
    K-family parametrization, with the names of any factors that vanish."""
    a2, r2 = Fraction(a2), Fraction(r2)
    if n == 4:
        factors = [
            ("a^2-2r^2", a2 - 2 * r2),
            ("a^2-r^2", a2 - r2),
            ("5a^2-6r^2", 5 * a2 - 6 * r2),
        ]
    elif n == 5:
        factors = [
            ("(a^2-r^2)^2", (a2 - r2) ** 2),
            ("a^2-2r^2", a2 - 2 * r2),
            ("5a^2-6r^2", 5 * a2 - 6 * r2),
        ]
    else:
        return None
    value = Fraction(1)
    vanished = []
    for name, v in factors:
        value *= v
        if v == 0:
            vanished.append(name)
    return value, tuple(vanished)


def _solve_fixed(
    n: int,
    kterms: Sequence[tuple[int, int]],
    a2: Fraction,
    r: Fraction,
    constraint: Fraction | None,
) -> SolutionReport:
    lagrangian = family_lagrangian(n, kterms)
    torus = ExactTorus(a2, r)
    system = shape_equation.el_system(torus, lagrangian)
    unknowns = list(system.unknowns)
    order = _pivot_order(n, len(kterms))
    row_powers = [i for i, _ in system.nonzero_rows()]
    rows = [row for _, row in system.nonzero_rows()]
    solution = solve_linear_system(rows, unknowns, pivot_order=order)

    assignments = dict(solution.assignments)
    for name in solution.free:
        assignments[name] = LinearForm.variable(name)

    delta = None
    degeneracy = None
    info = delta_radii_polynomial(n, a2, r * r) if kterms else None
    if info is not None:
        delta, vanished = info
        generic_bound = set(order[: len(solution.pivot_unknowns)])
        actual_bound = set(solution.pivot_unknowns)
        notes = []
        if vanished:
            notes.append("radii polynomial vanishes: " + ", ".join(vanished))
        if actual_bound != generic_bound:
            swapped_in = sorted(actual_bound - generic_bound)
            swapped_out = sorted(generic_bound - actual_bound)
            notes.append(
                "generic parametrization degenerates: "
                f"{', '.join(swapped_out)} left free, {', '.join(swapped_in)} bound instead"
            )
        if vanished or actual_bound != generic_bound:
            degeneracy = DegeneracyInfo(vanished=vanished, note="; ".join(notes))

    return SolutionReport(
        degree=n,
        r=r,
        a2=a2,
        constraint=constraint,
        kterms=tuple(kterms),
        unknowns=tuple(unknowns),
        free_parameters=solution.free,
        assignments=assignments,
        delta=delta,
        degeneracy=degeneracy,
        consistent=solution.consistent,
        offending_rows=tuple(row_powers[i] for i in solution.offending_rows),
    )


def _top_row_constraint(
    n: int, r: Fraction, kterms: Sequence[tuple[int, int]]
) -> Fraction | None:
    """Extract the aspect ratio forced by the H^(n+1) row, if any.

    Each row coefficient has the form u + v / a^2 with u, v rational in r,
    so sampling the row at two probe values of a^2 determines it exactly and
    its unique root gives the constraint.  Returns None when the row vanishes
    identically (no restriction on the radii).
    """
    lagrangian = family_lagrangian(n, kterms)
    samples = []
    for probe in (3, 7):
        torus = ExactTorus(Fraction(probe) * r * r, r)
        row = shape_equation.el_system(torus, lagrangian).row(n + 1)
        extra = set(row.terms) - {"a1"}
        if extra:
            raise ValueError(
                "no pure radius constraint: the top residual row also involves "
                + ", ".join(sorted(extra))
            )
        samples.append((Fraction(probe) * r * r, row.coefficient("a1")))
    (s1, c1), (s2, c2) = samples
    v = (c1 - c2) / (Fraction(1) / s1 - Fraction(1) / s2)
    u = c1 - v / s1
    if u == 0 and v == 0:
        return None
    if u == 0:
        raise ValueError("top residual row forces a1 = 0 instead of a radius constraint")
    a2_root = -v / u
    ratio = a2_root / (r * r)
    if ratio <= 1:
        raise ValueError(f"radius constraint {ratio} is not realizable with a > r")
    return ratio


def solve_pure_h(n: int, r) -> SolutionReport:
    """Critical family of the degree-n pure-H Lagrangian.

    For n >= 2 the aspect ratio is read off the top residual row before the
    remaining rows are solved; for n = 1 there is no restriction on the radii
    and the family is radius-independent (checked against two probe ratios).
    """
    if n < 1:
        raise ValueError("polynomial degree must be >= 1")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if n == 1:
        first = _solve_fixed(1, (), Fraction(3) * r * r, r, None)
        second = _solve_fixed(1, (), Fraction(7, 2) * r * r, r, None)
        if first.assignments != second.assignments:
            raise AssertionError("degree-1 family unexpectedly depends on the radii")
        return dataclasses.replace(first, a2=None)
    ratio = _top_row_constraint(n, r, ())
    if ratio is None:
        raise AssertionError(f"degree {n} >= 2 must force a radius constraint")
    return _solve_fixed(n, (), ratio * r * r, r, ratio)


def solve_with_gauss(
    n: int,
    r,
    kterms: Sequence[tuple[int, int]] | None = None,
    a2=None,
) -> SolutionReport:
    """Critical family of a degree-n Lagrangian with Gaussian curvature terms.

    With ``a2`` given, solves at those fixed radii (the route that removes the
    ratio constraint).  Without ``a2``, attempts to read a ratio constraint
    off the top residual row, which works for reduced term sets whose top row
    involves only a1 (e.g. degree 4 without the H^2 K term).
    """
    if n < 2:
        raise ValueError("K-augmented families need degree >= 2")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    terms = tuple(kterms) if kterms is not None else default_kterms(n)
    if not terms:
        raise ValueError("term set must be nonempty; use solve_pure_h instead")
    if a2 is not None:
        a2 = Fraction(a2)
        if a2 <= r * r:
            raise ValueError("need a^2 > r^2")
        return _solve_fixed(n, terms, a2, r, None)
    ratio = _top_row_constraint(n, r, terms)
    if ratio is None:
        raise ValueError("top row vanishes identically; provide a2 explicitly")
    return _solve_fixed(n, terms, ratio * r * r, r, ratio)


def solve_lagrangian(t: ExactTorus, lagrangian: Lagrangian) -> "GenericSolution":
    """Solve an arbitrary mixed known/unknown Lagrangian at fixed radii.

    Fixed coefficients turn the system affine, so it can be inconsistent;
    that outcome signals the torus is not a critical point for any member of
    the given family and is reported rather than raised.
    """
    system = shape_equation.el_system(t, lagrangian)
    rows = [row for _, row in system.nonzero_rows()]
    row_powers = [i for i, _ in system.nonzero_rows()]
    solution = solve_linear_system(rows, list(system.unknowns), None)
    assignments = dict(solution.assignments)
    for name in solution.free:
        assignments[name] = LinearForm.variable(name)
    return GenericSolution(
        unknowns=tuple(system.unknowns),
        free_parameters=solution.free,
        assignments=assignments,
        consistent=solution.consistent,
        offending_rows=tuple(row_powers[i] for i in solution.offending_rows),
    )


@dataclass(frozen=True)
class GenericSolution:
    unknowns: tuple[str, ...]
    free_parameters: tuple[str, ...]
    assignments: dict[str, LinearForm]
    consistent: bool
    offending_rows: tuple[int, ...]


def verify_solution(
    t: ExactTorus,
    report: SolutionReport,
    free_values: Mapping[str, Fraction],
    n_grid: int = DEFAULT_GRID,
) -> VerificationResult:
    """Check a solved family member both exactly and against the grid oracle.

    ``exact`` is True when the closed-form residual is the zero polynomial on
    the given torus; ``numeric_max_residual`` is the sup of the residual
    evaluated purely through the spectral grid operators.
    """
    if not report.consistent:
        raise ValueError("cannot verify an inconsistent solve")
    lagrangian = report.lagrangian_at(free_values)
    residual = el_residual(t, lagrangian)
    numeric, scale = shape_equation.el_residual_numeric_scaled(
        t.to_shape(), lagrangian, n_grid
    )
    return VerificationResult(
        exact=residual.is_zero,
        numeric_max_residual=float(max(abs(float(x)) for x in numeric)),
        numeric_scale=scale,
    )
