"""Germs (configuration + parameters) and the operator they build.

A parameter point attaches a nonzero scalar mu to every unordered pair of
nations, a nonzero alpha to every nation, and a nonzero beta to every nation
with at least two counties (with alpha + beta != 0). The operator of a germ:

  * vertices in a "first"-tagged county carry alpha, others beta;
  * edges between nations i < j get the block mu * [[0,1],[1,0]];
  * edges inside a county get x * identity, x the county's vertex scalar;
  * edges between counties of one nation get [[alpha+beta, -alpha*beta],[1,0]]
    when the county order agrees with the natural vertex order, and the
    antidiagonal-flipped, lower-1 form [[0, -alpha*beta],[1, alpha+beta]]
    when it disagrees.

A pair of nations may instead carry a `mu_sq` entry holding the product b*c
directly; its edges then get the lower-1 block [[0, product],[1, 0]]. This is
how classification stores slash data whose product has no rational square
root.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import (
    Configuration,
    configuration_from_json,
    configuration_perm,
    configuration_to_json,
    flip_configuration,
)
from .errors import MalformedInputError
from .matchcat import EdgeBlock, MatchMatrix2, edge_pairs
from .scalars import format_scalar, parse_scalar


@dataclass(frozen=True)
class ParamPoint:
    mu: dict = field(default_factory=dict)
    alpha: dict = field(default_factory=dict)
    beta: dict = field(default_factory=dict)
    mu_sq: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, table in (("mu", self.mu), ("alpha", self.alpha), ("beta", self.beta), ("mu_sq", self.mu_sq)):
            for key, v in table.items():
                if v == 0:
                    raise MalformedInputError(f"{name}[{key}] must be nonzero")
        if set(self.mu) & set(self.mu_sq):
            raise MalformedInputError("mu and mu_sq keys must be disjoint")
        for i, b in self.beta.items():
            a = self.alpha.get(i)
            if a is not None and a + b == 0:
                raise MalformedInputError(f"alpha[{i}] + beta[{i}] must be nonzero")


@dataclass(frozen=True)
class Germ:
    config: Configuration
    params: ParamPoint

    def __post_init__(self):
        m = len(self.config.nations)
        pairs = {(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)}
        if set(self.params.alpha) != set(range(1, m + 1)):
            raise MalformedInputError("alpha must cover every nation")
        multi = {i for i, nat in enumerate(self.config.nations, start=1) if len(nat.counties) >= 2}
        if set(self.params.beta) != multi:
            raise MalformedInputError("beta must cover exactly the nations with >= 2 counties")
        if set(self.params.mu) | set(self.params.mu_sq) != pairs:
            raise MalformedInputError("mu must cover every nation pair")
        for i, nat in enumerate(self.config.nations, start=1):
            if any(c.part == "second" for c in nat.counties) and i not in self.params.beta:
                raise MalformedInputError(f"nation {i} uses a second part but has no beta")


def generic_point(config, seed=0) -> ParamPoint:
    """Deterministic generic parameters for a configuration.

    Values are distinct positive integers, so every intended eigenvalue
    coincidence of the germ's operator is avoided: the alphas, betas, +mu and
    -mu values are pairwise distinct and all sums alpha + beta are nonzero.
    """
    rng = random.Random(seed)
    m = len(config.nations)
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    multi = [i for i, nat in enumerate(config.nations, start=1) if len(nat.counties) >= 2]
    k = len(pairs) + m + len(multi)
    values = [Fraction(v) for v in rng.sample(range(1, 8 * k + 8), k)]
    mu = {p: values.pop() for p in pairs}
    alpha = {i: values.pop() for i in range(1, m + 1)}
    beta = {i: values.pop() for i in multi}
    return ParamPoint(mu=mu, alpha=alpha, beta=beta)


def rec(germ) -> MatchMatrix2:
    """The charge-conserving operator of a germ."""
    config, pp = germ.config, germ.params
    scalar = {}
    position = {}
    for ni, nat in enumerate(config.nations, start=1):
        for ci, county in enumerate(nat.counties, start=1):
            val = pp.alpha[ni] if county.part == "first" else pp.beta[ni]
            for v in county.vertices:
                scalar[v] = val
                position[v] = (ni, ci)
    edges = {}
    for u, v in edge_pairs(config.n):
        (nu, cu), (nv, cv) = position[u], position[v]
        if nu != nv:
            key = (min(nu, nv), max(nu, nv))
            if key in pp.mu:
                mu = pp.mu[key]
                edges[(u, v)] = EdgeBlock(Fraction(0), mu, mu, Fraction(0))
            else:
                prod = pp.mu_sq[key]
                edges[(u, v)] = EdgeBlock(Fraction(0), prod, Fraction(1), Fraction(0))
        elif cu == cv:
            x = scalar[u]
            edges[(u, v)] = EdgeBlock(x, Fraction(0), Fraction(0), x)
        else:
            t = pp.alpha[nu] + pp.beta[nu]
            prod = -pp.alpha[nu] * pp.beta[nu]
            if cu < cv:
                edges[(u, v)] = EdgeBlock(t, prod, Fraction(1), Fraction(0))
            else:
                edges[(u, v)] = EdgeBlock(Fraction(0), prod, Fraction(1), t)
    vertices = tuple(scalar[v] for v in range(1, config.n + 1))
    return MatchMatrix2(config.n, vertices, edges)


def _nation_index_map(config, perm):
    """old nation index -> new index after configuration_perm re-sorting."""
    keyed = []
    for i, nat in enumerate(config.nations, start=1):
        keyed.append((min(perm(v) for v in nat.vertices), i))
    keyed.sort()
    return {old: new for new, (_, old) in enumerate(keyed, start=1)}


def permute_germ(germ, perm) -> Germ:
    """Transport a germ along a vertex relabelling."""
    config = configuration_perm(germ.config, perm)
    ix = _nation_index_map(germ.config, perm)
    pp = germ.params

    def move_pair(table):
        return {tuple(sorted((ix[i], ix[j]))): v for (i, j), v in table.items()}

    params = ParamPoint(
        mu=move_pair(pp.mu),
        alpha={ix[i]: v for i, v in pp.alpha.items()},
        beta={ix[i]: v for i, v in pp.beta.items()},
        mu_sq=move_pair(pp.mu_sq),
    )
    return Germ(config, params)


def flip_germ(germ) -> Germ:
    """Reverse every nation's county order; parameters ride along."""
    return Germ(flip_configuration(germ.config), germ.params)


def germ_to_json(germ):
    data = configuration_to_json(germ.config)
    pp = germ.params
    data["mu"] = {f"{i},{j}": format_scalar(v) for (i, j), v in pp.mu.items()}
    data["alpha"] = {str(i): format_scalar(v) for i, v in pp.alpha.items()}
    data["beta"] = {str(i): format_scalar(v) for i, v in pp.beta.items()}
    if pp.mu_sq:
        data["mu_sq"] = {f"{i},{j}": format_scalar(v) for (i, j), v in pp.mu_sq.items()}
    return data


def _parse_pair_key(key):
    try:
        i, j = (int(t) for t in key.split(","))
    except ValueError as exc:
        raise MalformedInputError(f"bad nation pair key {key!r}") from exc
    if not i < j:
        raise MalformedInputError(f"nation pair key must be increasing: {key!r}")
    return (i, j)


def germ_from_json(data) -> Germ:
    config = configuration_from_json(data)
    try:
        mu = {_parse_pair_key(k): parse_scalar(v) for k, v in data.get("mu", {}).items()}
        mu_sq = {_parse_pair_key(k): parse_scalar(v) for k, v in data.get("mu_sq", {}).items()}
        alpha = {int(k): parse_scalar(v) for k, v in data.get("alpha", {}).items()}
        beta = {int(k): parse_scalar(v) for k, v in data.get("beta", {}).items()}
    except MalformedInputError:
        raise
    except (AttributeError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad germ JSON: {exc}") from exc
    return Germ(config, ParamPoint(mu=mu, alpha=alpha, beta=beta, mu_sq=mu_sq))
