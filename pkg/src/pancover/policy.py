"""Every numeric threshold used by the solvers, in one configurable place."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

POLICY_KEYS = (
    "simonovits", "apaths1", "apaths2", "mu1", "mu2",
    "ncap2", "ncap3", "ncap4", "aclaw_cover", "g2", "g1", "g",
)


@dataclass(frozen=True)
class ThresholdPolicy:
    """Coefficients of the threshold formulas.

    ``k log k`` terms use ``log_base`` (binary by default).  Every threshold is
    floored at 1 so that the degenerate ``k = 1`` case stays meaningful.
    ``ncap_coeff * l**ncap_exponent`` replaces the (non-explicit) regular
    partition function ``N(n, l)`` as a collection cap.
    """

    simonovits_coeff: float = 24
    apaths1_coeff: float = 108
    apaths2_coeff: float = 396
    ncap_coeff: int = 64
    ncap_exponent: int = 3
    aclaw_cover_coeff: int = 14
    log_base: float = 2.0

    def klogk(self, k: int) -> float:
        return k * math.log(k, self.log_base) if k > 1 else 0.0

    def _ceil(self, x: float) -> int:
        # guard against float noise such as 24.000000000000004
        return math.ceil(round(x, 9))

    def simonovits(self, k: int) -> int:
        return max(1, self._ceil(self.simonovits_coeff * self.klogk(k)))

    def apaths1(self, k: int) -> int:
        return max(1, self._ceil(self.apaths1_coeff * self.klogk(k)))

    def apaths2(self, k: int) -> int:
        return max(1, self._ceil(self.apaths2_coeff * self.klogk(k)))

    def mu1(self, k: int) -> int:
        return max(1, self._ceil(2 * self.apaths1_coeff * self.klogk(k)) + 12 * k - 11)

    def mu2(self, k: int) -> int:
        return max(1, self._ceil(2 * self.apaths2_coeff * self.klogk(k)) + 25 * k - 23)

    def ncap(self, n: int, length: int) -> int:
        return max(1, self.ncap_coeff * length ** self.ncap_exponent)

    def aclaw_cover(self, k: int) -> int:
        return max(1, self.aclaw_cover_coeff * k)

    def g2(self, k: int) -> int:
        l3 = 3 * k
        return 14 * self.ncap(3, l3) + self.ncap(2, l3) + 16 * self.ncap(4, l3) + 2 * k

    def g1(self, k: int) -> int:
        return 3 * self.g2(k)

    def g(self, k: int) -> int:
        return k * self.g1(k)

    def values(self, k: int) -> dict[str, int]:
        l3 = 3 * k
        return {
            "simonovits": self.simonovits(k),
            "apaths1": self.apaths1(k),
            "apaths2": self.apaths2(k),
            "mu1": self.mu1(k),
            "mu2": self.mu2(k),
            "ncap2": self.ncap(2, l3),
            "ncap3": self.ncap(3, l3),
            "ncap4": self.ncap(4, l3),
            "aclaw_cover": self.aclaw_cover(k),
            "g2": self.g2(k),
            "g1": self.g1(k),
            "g": self.g(k),
        }

    def header(self, k: int) -> str:
        """Flat ``key=value`` block echoed into certificates."""
        return " ".join(f"{key}={val}" for key, val in self.values(k).items())

    def with_overrides(self, overrides: dict[str, str]) -> ThresholdPolicy:
        """Apply ``field=value`` overrides, e.g. from ``--policy apaths1_coeff=10``."""
        known = {f.name: f.type for f in fields(self)}
        changes = {}
        for key, raw in overrides.items():
            if key not in known:
                raise ValueError(f"unknown policy field {key!r}; known: {', '.join(sorted(known))}")
            changes[key] = int(raw) if key in ("ncap_coeff", "ncap_exponent", "aclaw_cover_coeff") else float(raw)
        return replace(self, **changes)


DEFAULT_POLICY = ThresholdPolicy()
