"""Exact rational kernel: dense univariate polynomials and linear solving.

Everything in this module runs over Python's arbitrary-precision
``fractions.Fraction``, so results are exact: no tolerance ever enters a
comparison here.  Three layers are provided.

* ``HPoly`` -- a dense univariate polynomial with rational coefficients,
  indexed so that ``coeffs[k]`` multiplies ``x**k``.  Trailing zeros are
  trimmed, the zero polynomial has an empty coefficient tuple.
* ``LinearForm`` -- a sparse linear expression ``sum_i c_i * x_i + const``
  over named unknowns.
* ``solve_linear_system`` / ``nullspace`` -- exact solving of a list of
  ``LinearForm`` equations (each row read as ``form == 0``).  Forward
  elimination is fraction-free (Bareiss), which keeps the intermediate
  integers from exploding the way naive cross-multiplication does; the
  solved coefficients in the examples of interest reach seven-digit
  numerators, so this matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = [
    "HPoly",
    "LinearForm",
    "LinearSolution",
    "solve_linear_system",
    "nullspace",
    "parse_fraction",
    "format_fraction",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction (q > 0 after reduction)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_fraction(value: Fraction) -> str:
    """Canonical ``p/q`` rendering (plain ``p`` when the denominator is 1)."""
    return str(Fraction(value))


@dataclass(frozen=True)
class HPoly:
    """Dense univariate polynomial over the rationals.

    ``coeffs[k]`` is the coefficient of the k-th power; the tuple carries no
    trailing zeros, so equality of canonical forms is plain ``==``.
    """

    coeffs: tuple[Fraction, ...] = ()

    @staticmethod
    def of(values: Iterable) -> "HPoly":
        coeffs = [_as_fraction(v) for v in values]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return HPoly(tuple(coeffs))

    @staticmethod
    def zero() -> "HPoly":
        return HPoly(())

    @staticmethod
    def const(value) -> "HPoly":
        return HPoly.of([value])

    @staticmethod
    def monomial(power: int, coeff=1) -> "HPoly":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        return HPoly.of([0] * power + [coeff])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other: "HPoly") -> "HPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return HPoly.of(out)

    def __neg__(self) -> "HPoly":
        return HPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other: "HPoly") -> "HPoly":
        if self.is_zero or other.is_zero:
            return HPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return HPoly.of(out)

    def scale(self, factor) -> "HPoly":
        factor = _as_fraction(factor)
        if factor == 0:
            return HPoly.zero()
        return HPoly(tuple(c * factor for c in self.coeffs))

    def __pow__(self, exponent: int) -> "HPoly":
        if exponent < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = HPoly.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> "HPoly":
        return HPoly.of([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        """Exact Horner evaluation (0 for the zero polynomial)."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __repr__(self) -> str:
        return f"HPoly({[str(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class LinearForm:
    """Sparse linear expression over named unknowns, plus a rational constant.

    Zero-valued entries are never stored, so two forms are equal exactly when
    they are the same expression.
    """

    terms: Mapping[str, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        cleaned = {k: _as_fraction(v) for k, v in self.terms.items() if v != 0}
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "constant", _as_fraction(self.constant))

    @staticmethod
    def of(terms: Mapping[str, object] | None = None, constant=0) -> "LinearForm":
        return LinearForm(dict(terms or {}), _as_fraction(constant))

    @staticmethod
    def variable(name: str, coeff=1) -> "LinearForm":
        return LinearForm({name: _as_fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0

    def coefficient(self, name: str) -> Fraction:
        return self.terms.get(name, Fraction(0))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return LinearForm(terms, self.constant + other.constant)

    def scale(self, factor) -> "LinearForm":
        factor = _as_fraction(factor)
        if factor == 0:
            return LinearForm()
        return LinearForm(
            {k: v * factor for k, v in self.terms.items()}, self.constant * factor
        )

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        total = self.constant
        for name, coeff in self.terms.items():
            total += coeff * _as_fraction(assignment[name])
        return total

    def substitute(self, forms: Mapping[str, "LinearForm"]) -> "LinearForm":
        """Replace unknowns by linear forms (used to push bound variables
        down to free parameters)."""
        out = LinearForm(constant=self.constant)
        for name, coeff in self.terms.items():
            if name in forms:
                out = out + forms[name].scale(coeff)
            else:
                out = out + LinearForm.variable(name, coeff)
        return out

    def __repr__(self) -> str:
        bits = [f"{v}*{k}" for k, v in sorted(self.terms.items())]
        if self.constant != 0 or not bits:
            bits.append(str(self.constant))
        return "LinearForm(" + " + ".join(bits) + ")"


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of an exact linear solve.

    ``assignments`` maps each pivot (bound) unknown to a LinearForm over the
    free unknowns; resubstitution into the original rows yields exact zeros.
    ``consistent`` is False when some row reduced to ``nonzero constant == 0``;
    the indices of those rows (in the caller's ordering) are reported.
    """

    unknowns: tuple[str, ...]
    assignments: dict[str, LinearForm]
    free: tuple[str, ...]
    pivot_unknowns: tuple[str, ...]
    consistent: bool
    offending_rows: tuple[int, ...] = ()


def _integer_rows(
    rows: Sequence[LinearForm], unknowns: Sequence[str]
) -> list[tuple[int, list[int]]]:
    cleared = []
    for idx, form in enumerate(rows):
        vec = [form.coefficient(u) for u in unknowns] + [form.constant]
        if all(v == 0 for v in vec):
            continue
        denom = lcm(*(v.denominator for v in vec))
        ints = [int(v * denom) for v in vec]
        common = 0
        for v in ints:
            common = gcd(common, abs(v))
        cleared.append((idx, [v // common for v in ints]))
    return cleared


def solve_linear_system(
    rows: Sequence[LinearForm],
    unknowns: Sequence[str],
    pivot_order: Sequence[str] | None = None,
) -> LinearSolution:
    """Solve ``row == 0`` for every row, exactly.

    ``pivot_order`` controls which unknowns get bound: columns are offered as
    pivots in that order, so unknowns late in the order stay free whenever the
    rank allows it.  Forward elimination is Bareiss fraction-free over
    integer-cleared rows; back substitution reconstructs rational assignments.
    """
    unknowns = list(unknowns)
    order = list(pivot_order) if pivot_order is not None else list(unknowns)
    for u in unknowns:
        if u not in order:
            order.append(u)
    col_of = {u: i for i, u in enumerate(unknowns)}
    ncols = len(unknowns) + 1

    remaining = _integer_rows(rows, unknowns)
    pivots: list[tuple[list[int], int]] = []
    prev = 1
    for u in order:
        c = col_of[u]
        sel = next((i for i, (_, vec) in enumerate(remaining) if vec[c] != 0), None)
        if sel is None:
            continue
        _, pvec = remaining.pop(sel)
        pval = pvec[c]
        updated = []
        for idx, vec in remaining:
            # one fraction-free elimination step; the division by the previous
            # pivot is exact (Sylvester identity)
            vec = [(pval * vec[l] - vec[c] * pvec[l]) // prev for l in range(ncols)]
            if any(v != 0 for v in vec):
                updated.append((idx, vec))
        remaining = updated
        prev = pval
        pivots.append((pvec, c))

    offending = tuple(idx for idx, vec in remaining if vec[-1] != 0)
    consistent = not offending

    pivot_cols = {c for _, c in pivots}
    free = tuple(u for u in unknowns if col_of[u] not in pivot_cols)
    assignments: dict[str, LinearForm] = {}
    for pvec, c in reversed(pivots):
        expr = LinearForm(constant=Fraction(-pvec[-1], pvec[c]))
        for l in range(len(unknowns)):
            if l == c or pvec[l] == 0:
                continue
            coeff = Fraction(-pvec[l], pvec[c])
            name = unknowns[l]
            if name in assignments:
                expr = expr + assignments[name].scale(coeff)
            else:
                expr = expr + LinearForm.variable(name, coeff)
        assignments[unknowns[c]] = expr

    return LinearSolution(
        unknowns=tuple(unknowns),
        assignments=assignments,
        free=free,
        pivot_unknowns=tuple(unknowns[c] for _, c in pivots),
        consistent=consistent,
        offending_rows=offending,
    )


def nullspace(
    rows: Sequence[LinearForm],
    unknowns: Sequence[str],
    pivot_order: Sequence[str] | None = None,
) -> list[tuple[Fraction, ...]]:
    """Exact kernel basis of a homogeneous system, one vector per free unknown.

    Every basis vector is integer-cleared, divided by the gcd of its entries,
    and sign-fixed so its first nonzero entry is positive; golden tests can
    therefore compare vectors verbatim.  Inhomogeneous systems go through
    :func:`solve_linear_system` instead.
    """
    if any(form.constant != 0 for form in rows):
        raise ValueError("nullspace expects homogeneous rows (zero constants)")
    sol = solve_linear_system(rows, unknowns, pivot_order)
    basis = []
    for f in sol.free:
        vec = []
        for u in sol.unknowns:
            if u == f:
                vec.append(Fraction(1))
            elif u in sol.assignments:
                vec.append(sol.assignments[u].coefficient(f))
            else:
                vec.append(Fraction(0))
        denom = lcm(*(v.denominator for v in vec))
        ints = [int(v * denom) for v in vec]
        common = 0
        for v in ints:
            common = gcd(common, abs(v))
        if common:
            ints = [v // common for v in ints]
        lead = next((v for v in ints if v != 0), 1)
        if lead < 0:
            ints = [-v for v in ints]
        basis.append(tuple(Fraction(v) for v in ints))
    return basis
