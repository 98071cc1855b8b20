"""Finite-field census of 3-letter solution fibres by zero pattern.

Independent evidence engine: for a triangle of coarse labels (optionally
refined by f/a vertex-equality rules) it enumerates every matrix over F_p
with that pattern, keeps the ones passing all constraint images, and reports
counts and family membership.  Emptiness over a field is evidence for, not
proof of, emptiness of the corresponding stratum; agreement over two primes
and with the rational theory is the point of the exercise.

Rescaling (b, c) -> (x b, c / x) on any block preserves the constraint set
over any field, so sign and slash blocks are scanned in the lower-1 gauge
c = 1; reported hits are X-normal forms and each stands for a (p-1)-element
X-orbit per gauged block.  Zero-pattern blocks keep b = c = 0 exactly.

Vectors are the 15-entry layout (a1, a2, a3, then blocks (a,b,c,d) for the
edges 12, 13, 23).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import MalformedInputError
from .ybe import PAIR_POLYS, PAIR_REINDEX, TRIPLE_POLYS, TRIPLE_REINDEX, eval_poly

H_TOKENS = ("0", "/", "+", "-")
FINE_TOKENS = ("f+", "a+", "f-", "a-")

_EDGE_OFFSETS = (3, 7, 11)
_VERTEX_PAIRS = ((0, 1), (0, 2), (1, 2))


def parse_fibre_type(text):
    tokens = tuple(t.strip() for t in text.split(","))
    return _check_type(tokens)


def _check_type(tokens):
    tokens = tuple(str(t) for t in tokens)
    if len(tokens) != 3 or any(t not in H_TOKENS + FINE_TOKENS for t in tokens):
        raise MalformedInputError(f"bad fibre type {tokens!r}")
    return tokens


def _coarse(token):
    return token[-1] if token in FINE_TOKENS else token


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _compile_checker():
    lines = ["def check_vector(v, p):"]
    for src in TRIPLE_REINDEX:
        for poly in TRIPLE_POLYS:
            terms = []
            for coeff, mono in poly:
                prod = "*".join(f"v[{src[i]}]" for i in mono)
                terms.append(("+" if coeff > 0 else "-") + prod)
            lines.append(f"    if ({''.join(terms)}) % p: return False")
    lines.append("    return True")
    ns = {}
    exec("\n".join(lines), ns)
    return ns["check_vector"]


check_vector = _compile_checker()


def _pair_ok(vec6, p):
    for src in PAIR_REINDEX:
        w = tuple(vec6[s] for s in src)
        for poly in PAIR_POLYS:
            if eval_poly(poly, w) % p:
                return False
    return True


@lru_cache(maxsize=None)
def _block_candidates(coarse, s, t, p):
    """Gauged blocks with the given pattern passing both pair relations."""
    nz = range(1, p)
    if coarse == "0":
        pool = [(a, 0, 0, d) for a in nz for d in nz]
    elif coarse == "/":
        pool = [(0, b, 1, 0) for b in nz]
    elif coarse == "+":
        pool = [(a, b, 1, 0) for a in nz for b in nz]
    else:
        pool = [(0, b, 1, d) for b in nz for d in nz]
    return tuple(blk for blk in pool if _pair_ok((s, t) + blk, p))


def _vertices_ok(ftype, scalars):
    for tok, (i, j) in zip(ftype, _VERTEX_PAIRS):
        if tok in FINE_TOKENS:
            same = scalars[i] == scalars[j]
            if tok.startswith("f") != same:
                return False
    return True


def _check_prime(p):
    if p == 2:
        raise MalformedInputError("p = 2 degenerates the sign structure")
    if not _is_prime(p):
        raise MalformedInputError(f"{p} is not prime")


def fibre_scan(ftype, prime):
    """Yield every gauged hit of the fibre over F_prime."""
    ftype = _check_type(ftype if not isinstance(ftype, str) else parse_fibre_type(ftype))
    _check_prime(prime)
    coarse = tuple(_coarse(t) for t in ftype)
    nz = range(1, prime)
    for scalars in product(nz, repeat=3):
        if not _vertices_ok(ftype, scalars):
            continue
        a1, a2, a3 = scalars
        c12 = _block_candidates(coarse[0], a1, a2, prime)
        if not c12:
            continue
        c13 = _block_candidates(coarse[1], a1, a3, prime)
        if not c13:
            continue
        c23 = _block_candidates(coarse[2], a2, a3, prime)
        if not c23:
            continue
        for b12 in c12:
            head = scalars + b12
            for b13 in c13:
                partial = head + b13
                for b23 in c23:
                    vec = partial + b23
                    if check_vector(vec, prime):
                        yield vec


def enumerate_fibre(ftype, prime):
    """All gauged hits as a list; prefer fibre_scan for the big fibres."""
    return list(fibre_scan(ftype, prime))


def x_rescale(vec, edge, x, p):
    """Apply the X-action with parameter x at one edge (0, 1, or 2) mod p."""
    if x % p == 0:
        raise MalformedInputError("x must be invertible")
    off = _EDGE_OFFSETS[edge]
    out = list(vec)
    out[off + 1] = out[off + 1] * x % p
    out[off + 2] = out[off + 2] * pow(x, -1, p) % p
    return tuple(out)


def hit_in_family(ftype, vec, prime):
    """Membership of one hit in the fibre's parametrized family.

    None when the pattern has no nonempty family.  The families: all-slash
    and all-zero fibres are cut out by their pattern alone; two slashes force
    equal slash products; the signed blocks of an all-sign or one-zero fibre
    share trace and product.
    """
    coarse = tuple(_coarse(t) for t in ftype)
    n_slash = coarse.count("/")
    n_zero = coarse.count("0")
    n_sign = 3 - n_slash - n_zero

    def blocks(kind):
        return [
            vec[off:off + 4]
            for c, off in zip(coarse, _EDGE_OFFSETS)
            if c == kind or (kind == "s" and c in "+-")
        ]

    if n_slash == 3 or n_zero == 3:
        return True
    if n_slash == 2 and n_sign <= 1:
        (a_, b_, c_, d_), (a2_, b2_, c2_, d2_) = blocks("/")
        return b_ * c_ % prime == b2_ * c2_ % prime
    if n_sign == 3 or (n_zero == 1 and n_sign == 2):
        sign_blocks = blocks("s")
        traces = {(a_ + d_) % prime for a_, b_, c_, d_ in sign_blocks}
        prods = {b_ * c_ % prime for a_, b_, c_, d_ in sign_blocks}
        return len(traces) == 1 and len(prods) == 1
    return None


def fibre_summary(ftype, prime):
    """Count a fibre and aggregate family membership in one pass."""
    ftype = _check_type(ftype if not isinstance(ftype, str) else parse_fibre_type(ftype))
    count = 0
    family = None
    for vec in fibre_scan(ftype, prime):
        verdict = hit_in_family(ftype, vec, prime)
        if count == 0:
            family = verdict
        elif verdict is not None:
            family = family and verdict
        count += 1
    return {
        "type": ",".join(ftype),
        "prime": prime,
        "solutions": count,
        "matches_family": family,
    }


def _summary_job(args):
    return fibre_summary(*args)


def default_types():
    """Minimal representative of each coarse orbit, in orbit order."""
    from .classify import _triple_key, g3_orbits

    reps = []
    for orb in g3_orbits():
        rep = min(orb, key=_triple_key)
        reps.append(tuple(t.value for t in rep))
    return tuple(reps)


def fibre_report(prime, types=None, jobs=1):
    """Fibre summaries for a list of types (default: one per orbit)."""
    _check_prime(prime)
    if types is None:
        types = default_types()
    types = [_check_type(t if not isinstance(t, str) else parse_fibre_type(t)) for t in types]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_summary_job, [(t, prime) for t in types]))
    return [fibre_summary(t, prime) for t in types]
