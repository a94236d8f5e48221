"""Quaternion scalar arithmetic and the eta-involutions.

Quaternions are kept as four raw float64 components; nothing here ever
normalizes. Multiplication follows the Hamilton convention
i^2 = j^2 = k^2 = ijk = -1, so it is associative but not commutative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class EtaAxis(Enum):
    """Imaginary axis selecting the involution q -> -eta * conj(q) * eta."""

    I = "i"
    J = "j"
    K = "k"

    @property
    def component(self) -> int:
        """Index of the axis component in the (w, x, y, z) layout."""
        return {"i": 1, "j": 2, "k": 3}[self.value]

    def unit(self) -> "Quaternion":
        comps = [0.0, 0.0, 0.0, 0.0]
        comps[self.component] = 1.0
        return Quaternion(*comps)


@dataclass(frozen=True)
class Quaternion:
    """A general quaternion w + x*i + y*j + z*k over float64 components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return quat_mul(self, other)

    def scale(self, s: float) -> "Quaternion":
        return Quaternion(s * self.w, s * self.x, s * self.y, s * self.z)

    def conj(self) -> "Quaternion":
        return quat_conj(self)

    def norm2(self) -> float:
        """Squared Euclidean norm w^2 + x^2 + y^2 + z^2."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return self.norm2() ** 0.5

    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def is_close(self, other: "Quaternion", tol: float = 0.0) -> bool:
        """Componentwise comparison with absolute tolerance."""
        return (abs(self.w - other.w) <= tol and abs(self.x - other.x) <= tol
                and abs(self.y - other.y) <= tol and abs(self.z - other.z) <= tol)


ZERO = Quaternion()
ONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0)
QJ = Quaternion(0.0, 0.0, 1.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product a * b."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_conj(a: Quaternion) -> Quaternion:
    """Quaternion conjugate w - x*i - y*j - z*k."""
    return Quaternion(a.w, -a.x, -a.y, -a.z)


def quat_eta_conj(a: Quaternion, eta: EtaAxis) -> Quaternion:
    """The involution -eta * conj(a) * eta.

    Expanding the sandwich shows it simply negates the component along the
    chosen axis, which is how it is computed here (exactly, with no rounding).
    """
    comps = list(a.components())
    comps[eta.component] = -comps[eta.component]
    return Quaternion(*comps)
