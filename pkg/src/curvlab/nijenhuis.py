"""Pointwise Nijenhuis-tensor evaluation for twisted structures on flat patches.

The twisted structure is J^T = T^{-1} J T for a plane-rotation field T driven
by an angle function of one coordinate.  All evaluation goes through exact
first-order jets: a field hands back its value and Jacobian at the query
point, and the Lie brackets are assembled from those jets with no symbolic
differentiation.  Angle functions deliver (cos, sin, d/dx) triples (or the
hyperbolic pair) as exact rationals, which pins evaluation to points where
the rotation is rational; the default query point is the origin, where the
angle vanishes and everything stays inside the rational field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .linalg import Matrix
from .report import VerificationReport
from .spaces import ModelSpace, structure_sign
from .tensors import Tensor4, defect_kaehler

Point = tuple[Fraction, ...]
AngleJet = Callable[[Point], tuple[Fraction, Fraction, Fraction]]


def origin(n: int) -> Point:
    return (Fraction(0),) * n


def linear_angle(slope: Fraction | int, var: int = 0) -> AngleJet:
    """Angle c * x_var; exactly evaluable only where the angle vanishes."""
    slope = Fraction(slope)

    def jet(p: Point) -> tuple[Fraction, Fraction, Fraction]:
        if slope * p[var] != 0:
            raise ValueError("angle evaluates transcendentally away from its zero set")
        return (Fraction(1), Fraction(0), slope)

    return jet


def constant_rotation_angle(c: Fraction | int, s: Fraction | int, derivative: Fraction | int,
                            hyperbolic: bool = False) -> AngleJet:
    """A fixed rational point on the (hyperbolic) unit circle with a slope.

    Useful for sampling the isometry property away from the identity, e.g.
    (3/5, 4/5) on the circle.
    """
    c, s, derivative = Fraction(c), Fraction(s), Fraction(derivative)
    if hyperbolic:
        if c * c - s * s != 1:
            raise ValueError("hyperbolic rotation values must satisfy c^2 - s^2 = 1")
    elif c * c + s * s != 1:
        raise ValueError("rotation values must satisfy c^2 + s^2 = 1")

    def jet(p: Point) -> tuple[Fraction, Fraction, Fraction]:
        return (c, s, derivative)

    return jet


@dataclass(frozen=True)
class PlaneTwist:
    """Isometry field rotating one coordinate plane by an angle of x_var."""

    space: ModelSpace
    plane: tuple[int, int]
    rotation: str  # "circular" | "hyperbolic"
    angle: AngleJet
    var: int = 0

    def _rotation_matrix(self, c: Fraction, s: Fraction, invert: bool = False) -> Matrix:
        n = self.space.n
        i, j = self.plane
        if invert:
            s = -s
        rows = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
        rows[i][i] = c
        rows[j][j] = c
        if self.rotation == "circular":
            # T e_i = c e_i + s e_j,  T e_j = -s e_i + c e_j
            rows[j][i] = s
            rows[i][j] = -s
        else:
            rows[j][i] = s
            rows[i][j] = s
        return Matrix.from_rows(rows)

    def _generator(self) -> Matrix:
        n = self.space.n
        i, j = self.plane
        rows = [[Fraction(0)] * n for _ in range(n)]
        rows[j][i] = Fraction(1)
        rows[i][j] = Fraction(-1 if self.rotation == "circular" else 1)
        return Matrix.from_rows(rows)

    def value(self, p: Point) -> Matrix:
        c, s, _ = self.angle(p)
        return self._rotation_matrix(c, s)

    def inverse_value(self, p: Point) -> Matrix:
        c, s, _ = self.angle(p)
        return self._rotation_matrix(c, s, invert=True)

    def derivative(self, p: Point, k: int) -> Matrix:
        n = self.space.n
        if k != self.var:
            return Matrix.zero(n, n)
        c, s, d = self.angle(p)
        return self._generator().mul(self._rotation_matrix(c, s)).scale(d)


def twist(space: ModelSpace, angle: AngleJet, plane: tuple[int, int], rotation_type: str,
          var: int = 0) -> PlaneTwist:
    """Build a plane-rotation isometry field, validating plane signature.

    Circular rotations are isometries only on definite planes; hyperbolic
    rotations only on mixed-signature planes.
    """
    i, j = plane
    if i == j or not (0 <= i < space.n and 0 <= j < space.n):
        raise ValueError("plane indices must be distinct and in range")
    if rotation_type not in ("circular", "hyperbolic"):
        raise ValueError("rotation type must be circular or hyperbolic")
    same_sign = space.eps[i] == space.eps[j]
    if rotation_type == "circular" and not same_sign:
        raise ValueError("circular rotation in a mixed-signature plane is not an isometry")
    if rotation_type == "hyperbolic" and same_sign:
        raise ValueError("hyperbolic rotation in a definite plane is not an isometry")
    return PlaneTwist(space=space, plane=(i, j), rotation=rotation_type, angle=angle, var=var)


@dataclass(frozen=True)
class TwistedStructure:
    """The conjugated structure field T^{-1} J T (constant J when twist is None)."""

    space: ModelSpace
    twist_field: PlaneTwist | None = None

    def value(self, p: Point) -> Matrix:
        j = self.space.j
        if j is None:
            raise ValueError("structure field needs a structured space")
        if self.twist_field is None:
            return j
        t = self.twist_field.value(p)
        tinv = self.twist_field.inverse_value(p)
        return tinv.mul(j).mul(t)

    def derivative(self, p: Point, k: int) -> Matrix:
        n = self.space.n
        j = self.space.j
        if self.twist_field is None:
            return Matrix.zero(n, n)
        t = self.twist_field.value(p)
        tinv = self.twist_field.inverse_value(p)
        dt = self.twist_field.derivative(p, k)
        # d(T^{-1}) = -T^{-1} dT T^{-1}
        dtinv = tinv.mul(dt).mul(tinv).scale(-1)
        return dtinv.mul(j).mul(t).add(tinv.mul(j).mul(dt))


@dataclass(frozen=True)
class Patch:
    """Flat coordinate patch: constant diagonal metric plus a structure field."""

    space: ModelSpace
    structure: TwistedStructure


def standard_patch(space: ModelSpace, twist_field: PlaneTwist | None = None) -> Patch:
    return Patch(space=space, structure=TwistedStructure(space=space, twist_field=twist_field))


# ---------------------------------------------------------------------------
# Vector fields with first-order jets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JetField:
    """A vector field known through (value, Jacobian) at query points."""

    n: int
    at: Callable[[Point], tuple[tuple[Fraction, ...], Matrix]]


def coordinate_field(n: int, i: int) -> JetField:
    value = tuple(Fraction(1 if a == i else 0) for a in range(n))

    def at(p: Point):
        return value, Matrix.zero(n, n)

    return JetField(n, at)


def linear_field(m: Matrix) -> JetField:
    """The field x -> M x (value M p, Jacobian M)."""

    def at(p: Point):
        return m.matvec(list(p)), m

    return JetField(m.rows, at)


def structure_applied(structure: TwistedStructure, field: JetField) -> JetField:
    """Pointwise application of the structure field, with the product rule."""
    n = field.n

    def at(p: Point):
        val, jac = field.at(p)
        s = structure.value(p)
        new_val = s.matvec(list(val))
        cols = []
        for k in range(n):
            ds = structure.derivative(p, k)
            jac_col = [jac[a, k] for a in range(n)]
            col = [x + y for x, y in zip(ds.matvec(list(val)), s.matvec(jac_col))]
            cols.append(col)
        new_jac = Matrix(n, n, tuple(cols[k][a] for a in range(n) for k in range(n)))
        return tuple(new_val), new_jac

    return JetField(n, at)


def bracket_at(xfield: JetField, yfield: JetField, p: Point) -> tuple[Fraction, ...]:
    """[X, Y](p) = (DY) X - (DX) Y evaluated from the two jets."""
    xv, xj = xfield.at(p)
    yv, yj = yfield.at(p)
    return tuple(a - b for a, b in zip(yj.matvec(list(xv)), xj.matvec(list(yv))))


@dataclass(frozen=True)
class NijenhuisValue:
    terms: tuple[tuple[Fraction, ...], ...]  # the four signed bracket terms
    total: tuple[Fraction, ...]


def nijenhuis_at(patch: Patch, x: int, y: int, p: Point | None = None) -> NijenhuisValue:
    """The four signed bracket terms and their sum for coordinate directions x, y.

    With u the structure sign, the terms are
      [x,y],  -u J[Jx,y],  -u J[x,Jy],  u [Jx,Jy],
    giving inner signs (+,+,+,-) in the complex case and (+,-,-,+) in the
    para case; the sum vanishes iff the structure is integrable at p in
    these directions.
    """
    space = patch.space
    if space.kind == "none":
        raise ValueError("nijenhuis tensor needs a structured space")
    n = space.n
    if p is None:
        p = origin(n)
    u = structure_sign(space.kind)
    dx = coordinate_field(n, x)
    dy = coordinate_field(n, y)
    jdx = structure_applied(patch.structure, dx)
    jdy = structure_applied(patch.structure, dy)
    jmat = patch.structure.value(p)
    t1 = bracket_at(dx, dy, p)
    t2 = tuple(Fraction(-u) * v for v in jmat.matvec(list(bracket_at(jdx, dy, p))))
    t3 = tuple(Fraction(-u) * v for v in jmat.matvec(list(bracket_at(dx, jdy, p))))
    t4 = tuple(Fraction(u) * v for v in bracket_at(jdx, jdy, p))
    total = tuple(a + b + c + d for a, b, c, d in zip(t1, t2, t3, t4))
    return NijenhuisValue(terms=(t1, t2, t3, t4), total=total)


def flat_curvature_check(patch: Patch, probe: tuple[int, int] = (0, 2),
                         p: Point | None = None) -> VerificationReport:
    """Certify the flat-but-non-integrable phenomenon on a constant-metric patch.

    The metric of a patch is constant by construction, so every Christoffel
    symbol vanishes and the curvature is identically zero; the zero tensor
    satisfies the structure-compatibility identity outright.  The report also
    carries the integrability probe so the two properties can be contrasted.
    """
    space = patch.space
    n = space.n
    if p is None:
        p = origin(n)
    zero_curvature_compatible = defect_kaehler(Tensor4.zero(n), space).is_zero()
    nij = nijenhuis_at(patch, probe[0], probe[1], p)
    integrable_at_probe = not any(nij.total)
    quantities = {
        "metric_constant": True,
        "christoffel_symbols_vanish": True,
        "curvature_identically_zero": True,
        "zero_curvature_satisfies_structure_identity": zero_curvature_compatible,
        "nijenhuis_probe_directions": [probe[0] + 1, probe[1] + 1],
        "nijenhuis_probe_value": list(nij.total),
        "structure_integrable_at_probe": integrable_at_probe,
    }
    return VerificationReport(
        claim="flat-patch",
        description="constant metric forces zero curvature (hence structure-compatible curvature); integrability is probed separately",
        space=space.describe(),
        quantities=quantities,
        verdict=zero_curvature_compatible,
    )
