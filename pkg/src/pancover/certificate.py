"""Machine-checkable solver output: a packing of models or a covering set.

Text form::

    s PACKING <pattern> <k>         s COVER <pattern> <size>
    m <v...>   (one per model)      x <v...>
    c policy <key=value ...>        c policy <key=value ...>
    c status <item status ...>      c status <status ...>
                                    c k <k>
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .detect import (
    DIAMOND, PAN1, PAN2, Model, Pattern, detect_diamond, find_min_pan, find_model,
    is_induced_subdivision, load_pattern, verify_model,
)
from .graph import Graph, GraphFormatError, to_mask


class VerificationFailed(RuntimeError):
    """A solver produced a certificate that does not check out."""


@dataclass(frozen=True)
class Certificate:
    kind: str
    pattern: str
    k: int
    groups: tuple[tuple[int, ...], ...] = ()
    cover: tuple[int, ...] = ()
    policy: str = ""
    status: tuple[str, ...] = ()
    models: tuple[Model, ...] = field(default=(), compare=False)

    @property
    def is_packing(self) -> bool:
        return self.kind == "PACKING"

    def format(self) -> str:
        lines = []
        if self.is_packing:
            lines.append(f"s PACKING {self.pattern} {self.k}")
            lines.extend("m " + " ".join(map(str, grp)) for grp in self.groups)
        else:
            lines.append(f"s COVER {self.pattern} {len(self.cover)}")
            lines.append("x " + " ".join(map(str, self.cover)) if self.cover else "x")
        lines.append(f"c policy {self.policy}".rstrip())
        if self.status:
            lines.append("c status " + " ".join(self.status))
        if not self.is_packing:
            lines.append(f"c k {self.k}")
        return "\n".join(lines) + "\n"


def packing(pattern: str, k: int, models: list[Model], policy: str) -> Certificate:
    groups = tuple(tuple(sorted(m.vertices())) for m in models)
    return Certificate("PACKING", pattern, k, groups=groups, policy=policy,
                       status=tuple("ok" for _ in groups), models=tuple(models))


def covering(pattern: str, k: int, cover, policy: str, bound: int | None = None) -> Certificate:
    cover = tuple(sorted(set(cover)))
    status = ["complete"]
    if bound is not None:
        status.append(f"bound={bound}")
        status.append("within-bound" if len(cover) <= bound else "exceeds-bound")
    return Certificate("COVER", pattern, k, cover=cover, policy=policy, status=tuple(status))


def parse_certificate(text: str) -> Certificate:
    kind = pattern = None
    k = None
    groups: list[tuple[int, ...]] = []
    cover: tuple[int, ...] | None = None
    policy = ""
    status: tuple[str, ...] = ()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "s":
                if kind is not None or len(tok) != 4 or tok[1] not in ("PACKING", "COVER"):
                    raise GraphFormatError("malformed solution line", lineno)
                kind, pattern, count = tok[1], tok[2], int(tok[3])
                if kind == "PACKING":
                    k = count
                else:
                    declared = count
            elif tok[0] == "m":
                groups.append(tuple(int(x) for x in tok[1:]))
            elif tok[0] == "x":
                if cover is not None:
                    raise GraphFormatError("duplicate cover line", lineno)
                cover = tuple(int(x) for x in tok[1:])
            elif tok[0] == "c":
                if len(tok) >= 2 and tok[1] == "policy":
                    policy = " ".join(tok[2:])
                elif len(tok) >= 2 and tok[1] == "status":
                    status = tuple(tok[2:])
                elif len(tok) == 3 and tok[1] == "k":
                    k = int(tok[2])
            else:
                raise GraphFormatError(f"unknown line type {tok[0]!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"bad integer: {exc}", lineno) from None
    if kind is None:
        raise GraphFormatError("missing solution line")
    if kind == "PACKING":
        if cover is not None:
            raise GraphFormatError("packing certificate has a cover line")
        return Certificate(kind, pattern, k, groups=tuple(groups), policy=policy, status=status)
    if groups:
        raise GraphFormatError("cover certificate has model lines")
    cover = cover or ()
    if len(cover) != declared:
        raise GraphFormatError(f"cover size {len(cover)} differs from declared {declared}")
    return Certificate(kind, pattern, k if k is not None else 0, cover=cover, policy=policy, status=status)


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reason: str = ""


def pattern_free(g: Graph, pattern: Pattern, removed=(), budget: int = 10**7) -> bool:
    """Is ``g - removed`` free of induced subdivisions of ``pattern``?"""
    alive = g.all_mask & ~to_mask(removed)
    if pattern.name == "pan1":
        return find_min_pan(g, 1, within=alive) is None
    if pattern.name == "pan2":
        return find_min_pan(g, 2, within=alive) is None
    if pattern.name == "diamond":
        return detect_diamond(g, within=alive) is None
    return find_model(g, pattern, within=alive, budget=budget) is None


def verify_certificate(g: Graph, cert: Certificate, pattern: Pattern | str | None = None,
                       budget: int = 10**7) -> CertificateCheck:
    pat = load_pattern(pattern or cert.pattern) if not isinstance(pattern, Pattern) else pattern
    if pat.name != cert.pattern and pat.name in (PAN1.name, PAN2.name, DIAMOND.name):
        return CertificateCheck(False, f"certificate is for {cert.pattern}, not {pat.name}")
    if cert.is_packing:
        if len(cert.groups) != cert.k or cert.k < 1:
            return CertificateCheck(False, f"expected {cert.k} models, found {len(cert.groups)}")
        seen = 0
        for i, grp in enumerate(cert.groups, 1):
            if any(not 1 <= v <= g.n for v in grp) or len(set(grp)) != len(grp):
                return CertificateCheck(False, f"model {i} has invalid vertices")
            mask = to_mask(grp)
            if mask & seen:
                return CertificateCheck(False, f"model {i} overlaps an earlier model")
            seen |= mask
            if not is_induced_subdivision(g, grp, pat, budget=budget):
                return CertificateCheck(False, f"model {i} is not an induced subdivision of {pat.name}")
        for i, model in enumerate(cert.models, 1):
            check = verify_model(g, pat, model)
            if not check.ok:
                return CertificateCheck(False, f"model {i}: {check.condition}")
        return CertificateCheck(True)
    if any(not 1 <= v <= g.n for v in cert.cover):
        return CertificateCheck(False, "cover has invalid vertices")
    if not pattern_free(g, pat, cert.cover, budget=budget):
        return CertificateCheck(False, f"{pat.name} subdivision survives the cover")
    return CertificateCheck(True)
