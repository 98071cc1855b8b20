"""Eigenvalue degeneracy data of a germ's operator.

The operator is block diagonal: one 1x1 block per vertex and one 2x2 block
per edge, so its spectrum is the vertex scalars together with both roots of
z^2 - (a+d) z + (ad - bc) for every edge.  For a germ at generic parameters
the multiplicities depend only on the configuration, and a closed formula
gives them nation by nation:

  * a pair of nations of sizes Ni, Nj contributes Ni*Nj twice (once +mu,
    once -mu);
  * a nation of size Ni with counties split into two parts contributes, with
    C(k,2) counting within-county pairs of each part and s1, s2 the part
    sizes,

      ( C(Ni,2) + sum C(k,2) over first part - sum C(k,2) over second + s1,
        C(Ni,2) - sum C(k,2) over first part + sum C(k,2) over second + s2 ).

The two components count the alpha and beta multiplicities; cross-part
county pairs contribute one eigenvalue to each, within-part pairs push both
of theirs to the same side, hence the signed correction.  Zero components
are dropped.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple

from .errors import IrrationalSpectrumError
from .recipe import rec
from .scalars import rational_sqrt


def spectrum(m):
    """All eigenvalues with multiplicity, sorted; exact rationals only."""
    values = list(m.vertices)
    for blk in m.edges.values():
        tr = blk.a + blk.d
        det = blk.a * blk.d - blk.b * blk.c
        root = rational_sqrt(tr * tr - 4 * det)
        if root is None:
            raise IrrationalSpectrumError(tr, det)
        values.append((tr + root) / 2)
        values.append((tr - root) / 2)
    return tuple(sorted(values))


def degeneracy_partition(values):
    """Multiplicities of a value list, as a descending partition."""
    return tuple(sorted(Counter(values).values(), reverse=True))


def _comb2(k):
    return k * (k - 1) // 2


def _nation_parts(nation):
    """The two multiplicity components of one nation, unordered raw values."""
    ni = nation.size
    t0 = nation.counties[0].part
    z1 = sum(_comb2(len(c.vertices)) for c in nation.counties if c.part == t0)
    z2 = sum(_comb2(len(c.vertices)) for c in nation.counties if c.part != t0)
    s1 = sum(len(c.vertices) for c in nation.counties if c.part == t0)
    s2 = sum(len(c.vertices) for c in nation.counties if c.part != t0)
    c = _comb2(ni)
    return (c + z1 - z2 + s1, c - z1 + z2 + s2)


def signature_formula(config):
    """Predicted degeneracy partition at generic parameters."""
    parts = []
    sizes = [nat.size for nat in config.nations]
    for nat in config.nations:
        parts.extend(p for p in _nation_parts(nat) if p > 0)
    for j in range(1, len(sizes)):
        for i in range(j):
            parts.extend((sizes[i] * sizes[j], sizes[i] * sizes[j]))
    return tuple(sorted(parts, reverse=True))


def signature_notation(config) -> str:
    """Nation-by-nation display: "(n1,n1';n2:p12,p12,...)"."""
    nation_bits = []
    for nat in config.nations:
        vals = [p for p in _nation_parts(nat) if p > 0]
        nation_bits.append(",".join(str(p) for p in vals))
    sizes = [nat.size for nat in config.nations]
    pair_bits = []
    for j in range(1, len(sizes)):
        for i in range(j):
            pair_bits.extend([str(sizes[i] * sizes[j])] * 2)
    text = ";".join(nation_bits)
    if pair_bits:
        text += ":" + ",".join(pair_bits)
    return "(" + text + ")"


class SignatureReport(NamedTuple):
    matches: bool
    formula: tuple
    sampled: tuple | None


def signature_check(germ) -> SignatureReport:
    """Compare the formula against the sampled spectrum of this germ.

    Non-generic parameters may collide eigenvalues or leave the spectrum
    irrational; both come back as a mismatch, not an error.
    """
    formula = signature_formula(germ.config)
    try:
        sampled = degeneracy_partition(spectrum(rec(germ)))
    except IrrationalSpectrumError:
        return SignatureReport(False, formula, None)
    return SignatureReport(sampled == formula, formula, sampled)
