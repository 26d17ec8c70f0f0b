"""Theta characteristics ``[eps, delta]`` with entries in {0, 1}."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True, order=True)
class Characteristic:
    eps: tuple[int, ...]
    delta: tuple[int, ...]

    def __post_init__(self):
        eps = tuple(int(v) % 2 for v in self.eps)
        delta = tuple(int(v) % 2 for v in self.delta)
        if len(eps) != len(delta) or not eps:
            raise ValueError("eps and delta must be non-empty and of equal length")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", delta)

    @property
    def g(self) -> int:
        return len(self.eps)

    @property
    def parity(self) -> str:
        return parity(self)

    @property
    def is_even(self) -> bool:
        return parity(self) == "even"

    @property
    def is_zero(self) -> bool:
        return not any(self.eps) and not any(self.delta)

    def __str__(self):
        return "".join(map(str, self.eps)) + ":" + "".join(map(str, self.delta))

    def __add__(self, other: "Characteristic") -> "Characteristic":
        """Concatenation, matching :func:`thetanull.siegel.direct_sum`."""
        return Characteristic(self.eps + other.eps, self.delta + other.delta)

    def to_json(self) -> dict:
        return {"eps": list(self.eps), "delta": list(self.delta)}

    @classmethod
    def from_json(cls, obj: dict) -> "Characteristic":
        eps, delta = obj["eps"], obj["delta"]
        for v in list(eps) + list(delta):
            if isinstance(v, bool) or v not in (0, 1):
                raise ValueError("characteristic entries must be 0 or 1")
        return cls(tuple(eps), tuple(delta))

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        """Parse ``"11:01"`` (eps bits, colon, delta bits)."""
        m = re.fullmatch(r"\s*([01]+)\s*:\s*([01]+)\s*", text)
        if not m or len(m.group(1)) != len(m.group(2)):
            raise ValueError(f"cannot parse characteristic {text!r}")
        return cls(tuple(map(int, m.group(1))), tuple(map(int, m.group(2))))

    @classmethod
    def zero(cls, g: int) -> "Characteristic":
        return cls((0,) * g, (0,) * g)


def parity(ch: Characteristic) -> str:
    return "odd" if sum(e * d for e, d in zip(ch.eps, ch.delta)) % 2 else "even"


@lru_cache(maxsize=None)
def enumerate_all(g: int) -> tuple[Characteristic, ...]:
    """All ``4**g`` characteristics, lexicographic with eps major."""
    if g < 1:
        raise ValueError("genus must be positive")
    bits = list(itertools.product((0, 1), repeat=g))
    return tuple(Characteristic(e, d) for e in bits for d in bits)


def enumerate_even(g: int) -> list[Characteristic]:
    return [ch for ch in enumerate_all(g) if ch.is_even]


def enumerate_odd(g: int) -> list[Characteristic]:
    return [ch for ch in enumerate_all(g) if not ch.is_even]


def half_period(tau, ch: Characteristic) -> np.ndarray:
    """The 2-torsion point ``(tau eps + delta) / 2``."""
    t = np.asarray(tau, dtype=complex)
    if t.shape != (ch.g, ch.g):
        raise ValueError("genus mismatch")
    return t @ np.asarray(ch.eps, dtype=float) / 2 + np.asarray(ch.delta, dtype=float) / 2
