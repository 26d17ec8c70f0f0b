"""Period matrices, Sp(2g, Z) elements and their actions.

Period matrices are stored as read-only complex arrays; symplectic
elements are exact integer matrices. Arithmetic on symplectic elements goes
through Python integers and is range-checked before being stored back as
``int64``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characteristics import Characteristic
from .errors import (
    EntryOverflow,
    ImagNotPositiveDefinite,
    NotSymmetric,
    NotSymplectic,
    NumericallySingular,
)

DEFAULT_SYMMETRY_TOL = 1e-9
PIVOT_FLOOR = 1e-12
COND_LIMIT = 1e12
_ENTRY_BOUND = 2**62


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def cholesky_lower(a: np.ndarray, pivot_floor: float | None = None) -> np.ndarray:
    """Cholesky factor ``L`` with ``a = L L^T`` for a real symmetric matrix.

    Raises :class:`ImagNotPositiveDefinite` when a pivot falls to or below
    ``pivot_floor`` (default ``1e-12 * trace(a) / n``).
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if pivot_floor is None:
        pivot_floor = PIVOT_FLOOR * max(np.trace(a), 0.0) / n
    L = np.zeros_like(a)
    for j in range(n):
        d = a[j, j] - L[j, :j] @ L[j, :j]
        if not np.isfinite(d) or d <= pivot_floor:
            raise ImagNotPositiveDefinite(
                f"pivot {j} is {d:.3e} (floor {pivot_floor:.3e}); matrix not positive definite"
            )
        L[j, j] = np.sqrt(d)
        for i in range(j + 1, n):
            L[i, j] = (a[i, j] - L[i, :j] @ L[j, :j]) / L[j, j]
    return L


def reverse_cholesky(a: np.ndarray, pivot_floor: float | None = None) -> np.ndarray:
    """Lower-triangular ``T`` with ``T^T T = a``.

    This is the factorization used by the lattice enumerator: with ``T``
    lower triangular, ``|T v|`` can be bounded one coordinate at a time,
    starting from ``v[0]``.
    """
    a = np.asarray(a, dtype=float)
    p = a[::-1, ::-1]
    L = cholesky_lower(p, pivot_floor)
    return np.ascontiguousarray(L.T[::-1, ::-1])


@dataclass(frozen=True, eq=False)
class PeriodMatrix:
    """A point of the Siegel upper half-space.

    Construct through :func:`validate_period`; the constructor itself does
    not check anything.
    """

    tau: np.ndarray

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    @property
    def re(self) -> np.ndarray:
        return self.tau.real

    @property
    def im(self) -> np.ndarray:
        return self.tau.imag

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.tau, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, PeriodMatrix):
            return NotImplemented
        return self.tau.shape == other.tau.shape and bool(np.all(self.tau == other.tau))

    def __hash__(self):
        return hash(self.tau.tobytes())

    def __add__(self, other):
        return validate_period(self.tau + np.asarray(other))

    def to_json(self) -> dict:
        return {"g": self.g, "re": self.re.tolist(), "im": self.im.tolist()}

    @classmethod
    def from_json(cls, obj: dict, symmetry_tol: float = DEFAULT_SYMMETRY_TOL) -> "PeriodMatrix":
        g = int(obj["g"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
        if re.shape != (g, g) or im.shape != (g, g):
            raise ValueError(f"period matrix arrays must be {g}x{g}")
        return validate_period(re + 1j * im, symmetry_tol)


def as_period(tau) -> PeriodMatrix:
    if isinstance(tau, PeriodMatrix):
        return tau
    return validate_period(tau)


def validate_period(raw, symmetry_tol: float = DEFAULT_SYMMETRY_TOL) -> PeriodMatrix:
    """Check and symmetrize a candidate period matrix.

    Parameters
    ----------
    raw : array_like
        Square complex matrix.
    symmetry_tol : float
        Allowed asymmetry relative to ``max(1, max|raw|)``.

    Raises
    ------
    NotSymmetric
        If ``|raw_jk - raw_kj|`` exceeds the tolerance.
    ImagNotPositiveDefinite
        If the Cholesky factorization of the imaginary part fails.
    """
    t = np.atleast_2d(np.asarray(raw, dtype=complex))
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"period matrix must be square, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise ValueError("period matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(t))))
    asym = float(np.max(np.abs(t - t.T)))
    if asym > symmetry_tol * scale:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds {symmetry_tol:.3e} * {scale:.3g}")
    t = (t + t.T) / 2
    cholesky_lower(t.imag)
    return PeriodMatrix(_frozen(t))


def direct_sum(tau1, tau2) -> PeriodMatrix:
    """Block-diagonal period matrix ``diag(tau1, tau2)``."""
    t1, t2 = as_period(tau1).tau, as_period(tau2).tau
    g1, g2 = t1.shape[0], t2.shape[0]
    t = np.zeros((g1 + g2, g1 + g2), dtype=complex)
    t[:g1, :g1] = t1
    t[g1:, g1:] = t2
    return PeriodMatrix(_frozen(t))


def _checked_int(m) -> np.ndarray:
    obj = np.asarray(m, dtype=object)
    for v in obj.flat:
        if isinstance(v, (bool, np.bool_)) or v != int(v):
            raise ValueError(f"symplectic entries must be integers, got {v!r}")
    if obj.size and max(abs(int(v)) for v in obj.flat) >= _ENTRY_BOUND:
        raise EntryOverflow("symplectic matrix entry exceeds the int64 safety bound")
    return _frozen(np.asarray(obj.astype(np.int64)))


def _exact(m) -> np.ndarray:
    return np.asarray(m, dtype=np.int64).astype(object)


@dataclass(frozen=True, eq=False)
class SymplecticElement:
    """Integer symplectic matrix ``((a, b), (c, d))`` in g x g blocks."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        blocks = [_checked_int(np.atleast_2d(x)) for x in (self.a, self.b, self.c, self.d)]
        g = blocks[0].shape[0]
        for blk in blocks:
            if blk.shape != (g, g):
                raise ValueError("symplectic blocks must all be g x g")
        for name, blk in zip("abcd", blocks):
            object.__setattr__(self, name, blk)
        if not self.is_symplectic():
            raise NotSymplectic("matrix does not preserve the symplectic form")

    @property
    def g(self) -> int:
        return self.a.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])

    def is_symplectic(self) -> bool:
        m = _exact(self.matrix)
        g = self.g
        J = np.zeros((2 * g, 2 * g), dtype=object)
        J[:g, g:] = np.eye(g, dtype=np.int64)
        J[g:, :g] = -np.eye(g, dtype=np.int64)
        return bool(np.all(m.T.dot(J).dot(m) == J))

    @classmethod
    def from_matrix(cls, m) -> "SymplecticElement":
        m = np.asarray(m, dtype=object)
        n = m.shape[0]
        if m.shape != (n, n) or n % 2:
            raise ValueError("symplectic matrix must be 2g x 2g")
        g = n // 2
        return cls(m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:])

    @classmethod
    def identity(cls, g: int) -> "SymplecticElement":
        eye = np.eye(g, dtype=np.int64)
        zero = np.zeros((g, g), dtype=np.int64)
        return cls(eye, zero, zero, eye)

    def __matmul__(self, other: "SymplecticElement") -> "SymplecticElement":
        if self.g != other.g:
            raise ValueError("genus mismatch")
        return SymplecticElement.from_matrix(_exact(self.matrix).dot(_exact(other.matrix)))

    def inverse(self) -> "SymplecticElement":
        return SymplecticElement(self.d.T, -self.b.T, -self.c.T, self.a.T)

    def __eq__(self, other):
        if not isinstance(other, SymplecticElement):
            return NotImplemented
        return self.g == other.g and bool(np.all(self.matrix == other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "a": self.a.tolist(),
            "b": self.b.tolist(),
            "c": self.c.tolist(),
            "d": self.d.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SymplecticElement":
        g = int(obj["g"])
        blocks = []
        for k in "abcd":
            blk = obj[k]
            if any(not isinstance(v, int) or isinstance(v, bool) for row in blk for v in row):
                raise ValueError(f"block {k} must contain integers")
            blk = np.asarray(blk, dtype=object)
            if blk.shape != (g, g):
                raise ValueError(f"block {k} must be {g}x{g}")
            blocks.append(blk)
        return cls(*blocks)


def block_embedding(s1: SymplecticElement, s2: SymplecticElement) -> SymplecticElement:
    """Embed ``Sp(g1) x Sp(g2)`` into ``Sp(g1 + g2)`` compatibly with :func:`direct_sum`."""

    def diag(x, y):
        out = np.zeros((x.shape[0] + y.shape[0],) * 2, dtype=object)
        out[: x.shape[0], : x.shape[0]] = x
        out[x.shape[0] :, x.shape[0] :] = y
        return out

    return SymplecticElement(
        diag(s1.a, s2.a), diag(s1.b, s2.b), diag(s1.c, s2.c), diag(s1.d, s2.d)
    )


def act(sigma: SymplecticElement, tau) -> PeriodMatrix:
    """``sigma . tau = (a tau + b)(c tau + d)^{-1}``."""
    tau = as_period(tau)
    if sigma.g != tau.g:
        raise ValueError("genus mismatch")
    t = tau.tau
    num = sigma.a @ t + sigma.b
    den = sigma.c @ t + sigma.d
    cond = np.linalg.cond(den)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericallySingular(f"c tau + d has condition number {cond:.3e}")
    # X den = num  <=>  den^T X^T = num^T
    out = np.linalg.solve(den.T, num.T).T
    return validate_period(out, symmetry_tol=1e-6)


def automorphy_det(sigma: SymplecticElement, tau) -> complex:
    """``det(c tau + d)``."""
    t = as_period(tau).tau
    return complex(np.linalg.det(sigma.c @ t + sigma.d))


def in_gamma(sigma: SymplecticElement, n: int) -> bool:
    """Membership in the principal congruence subgroup of level ``n``."""
    if n < 1:
        raise ValueError("level must be positive")
    m = _exact(sigma.matrix) - np.eye(2 * sigma.g, dtype=np.int64).astype(object)
    return all(int(v) % n == 0 for v in m.flat)


def in_gamma_n_2n(sigma: SymplecticElement, n: int) -> bool:
    """Membership in ``Gamma_g(n, 2n)``: level ``n`` plus even diagonals mod ``2n``."""
    if not in_gamma(sigma, n):
        return False
    a, b, c, d = (_exact(x) for x in (sigma.a, sigma.b, sigma.c, sigma.d))
    dab = np.diagonal(a.dot(b.T))
    dcd = np.diagonal(c.dot(d.T))
    return all(int(v) % (2 * n) == 0 for v in list(dab) + list(dcd))


def act_char(sigma: SymplecticElement, ch: Characteristic) -> Characteristic:
    """Action on characteristics, reduced mod 2.

    ``(eps, delta) -> (d eps - c delta + diag(c d^T), -b eps + a delta + diag(a b^T))``
    """
    if sigma.g != ch.g:
        raise ValueError("genus mismatch")
    a, b, c, d = (_exact(x) for x in (sigma.a, sigma.b, sigma.c, sigma.d))
    e = np.asarray(ch.eps, dtype=object)
    de = np.asarray(ch.delta, dtype=object)
    new_eps = d.dot(e) - c.dot(de) + np.diagonal(c.dot(d.T))
    new_delta = -b.dot(e) + a.dot(de) + np.diagonal(a.dot(b.T))
    return Characteristic(tuple(int(v) % 2 for v in new_eps), tuple(int(v) % 2 for v in new_delta))
