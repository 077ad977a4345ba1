"""Named subspace constructions with recorded parameters and claims.

Each builder returns a :class:`ConstructionRecord` holding the produced
subspace, every element choice that went into it (so runs are replayable
from the record alone), the properties the underlying theory guarantees,
and the measurements taken at build time. Cheap claims (dimensions,
subfield intersection patterns, scatteredness where feasible) are
re-measured during construction and a mismatch raises ConstructionError;
expensive enumeration-based claims are recorded with their source and left
to the callers' checkers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from . import gfpoly
from .errors import ConstructionError, NoSuchElementError
from .field import (
    FieldCtx,
    FieldElement,
    find_generator,
    make_field,
    minimal_polynomial,
    norm,
    prime_ctx,
    random_irreducibles,
)
from .linalg import SpanBuilder
from .qpoly import LinearizedPoly, is_scattered, v_f_gamma
from .subspace import (
    Subspace,
    intersection_dims_with_scaled,
    power,
    scale,
    span,
    subfield_space,
    sum_spaces,
)

#: Twenty distinct monic irreducible quadratics over F_7, little-endian
#: coefficient triples (c0, c1, 1). A fixed supply for the q=7, k=4, r=3
#: worked example of the irreducible-product construction.
F7_EXAMPLE_QUADRATICS: tuple[tuple[int, int, int], ...] = (
    (1, 4, 1),
    (2, 2, 1),
    (5, 2, 1),
    (6, 4, 1),
    (3, 5, 1),
    (5, 5, 1),
    (5, 4, 1),
    (6, 6, 1),
    (1, 3, 1),
    (6, 3, 1),
    (2, 0, 1),
    (6, 1, 1),
    (4, 0, 1),
    (3, 1, 1),
    (5, 3, 1),
    (2, 5, 1),
    (4, 1, 1),
    (1, 0, 1),
    (3, 6, 1),
    (4, 6, 1),
)


@dataclass(frozen=True)
class ConstructionRecord:
    """A built subspace plus its parameters, choices, claims, and measurements."""

    name: str
    params: dict
    chosen: dict
    space: Subspace
    claims: dict
    measured: dict

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "chosen": self.chosen,
            "space": self.space.to_dict(),
            "claims": self.claims,
            "measured": self.measured,
        }


def _split_prime_power(q: int) -> tuple[int, int]:
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"q must be a prime power, got {q}")
    ((p, a),) = fac.items()
    return int(p), int(a)


def _as_subfield_element(ctx: FieldCtx, k: int, value, what: str) -> FieldElement:
    if isinstance(value, FieldElement):
        el = value if value.ctx == ctx else ctx.element(value.coeffs)
    elif isinstance(value, int):
        el = ctx.from_int(value)
    else:
        el = ctx.element(value)
    if not ctx.in_subfield(el.vec, k):
        raise ConstructionError(f"{what} must lie in F_(q^{k})")
    return el


def is_qm1_power(ctx: FieldCtx, x: FieldElement, k: int) -> bool:
    """Whether x is a (q-1)-th power inside F_{q^k} (literal subgroup test)."""
    if not ctx.in_subfield(x.vec, k):
        raise ValueError("argument must lie in F_{q^k}")
    if x.is_zero():
        return True
    g = math.gcd(ctx.q - 1, ctx.q**k - 1)
    e = (ctx.q**k - 1) // g
    return (ctx.pow_elem(x.vec, e) == ctx.one_vec).all()


def _measure_chain_dims(V: Subspace, r_max: int) -> list[int]:
    dims = [V.dim]
    cur = V
    for _ in range(2, r_max + 1):
        from .subspace import product

        cur = product(cur, V)
        dims.append(cur.dim)
    return dims


def monomial(q: int, k: int, s: int, t: int, r: int, *, seed: int = 0) -> ConstructionRecord:
    """Graph space of x -> x^(q^s) over F_{q^k} inside F_{q^(kt)}.

    For t >= r+1 any gamma generating F_{q^n} over F_{q^k} works; for
    t == r the constant term of gamma's minimal polynomial over F_{q^k}
    must avoid being a (q-1)-th power, which is unsatisfiable over q = 2.
    """
    if math.gcd(s, k) != 1:
        raise ConstructionError(f"gcd(s, k) must be 1, got s={s}, k={k}")
    if r < 2:
        raise ConstructionError("r must be >= 2")
    if t < r:
        raise ConstructionError(f"t={t} < r={r}: no variant of the construction applies")
    p, a = _split_prime_power(q)
    n = k * t
    ctx = make_field(p, a, n, seed=seed)
    gamma = None
    if t >= r + 1:
        gamma = find_generator(ctx, over_m=k, seed=seed)
    else:  # t == r: the constrained variant
        if q == 2:
            raise NoSuchElementError(
                "t == r variant needs a minimal-polynomial constant term that is "
                "not a (q-1)-th power; over F_2 every element is one"
            )
        for attempt in range(256):
            cand = find_generator(ctx, over_m=k, seed=seed + 1000 * attempt)
            p0 = minimal_polynomial(cand, k)[0]
            if not is_qm1_power(ctx, p0, k):
                gamma = cand
                break
        if gamma is None:
            raise NoSuchElementError("no admissible gamma found for the t == r variant")
    f = LinearizedPoly.monomial(ctx, k, s)
    V = v_f_gamma(f, gamma)
    if V.dim != k:
        raise ConstructionError(f"graph space has dim {V.dim}, expected {k}")
    if not is_scattered(f):
        raise ConstructionError("monomial with gcd(s,k)=1 must be scattered")
    # For k >= 3 the layered span law gives dim V^s = sk up to t-1; for
    # k = 2 that exceeds the universal cap C(k+s-1, s), which is what the
    # space actually hits (making it max-span at every level instead).
    def expected_dim(rr: int) -> int:
        return rr * k if k >= 3 else math.comb(k + rr - 1, rr)

    dims = _measure_chain_dims(V, min(r, t - 1)) if t >= 3 else [V.dim]
    for rr, d in enumerate(dims[1:], start=2):
        if d != expected_dim(rr):
            raise ConstructionError(f"dim V^{rr} = {d}, expected {expected_dim(rr)}")
    source = "scattered-graph" if t >= r + 1 else "norm-condition-graph"
    return ConstructionRecord(
        name="monomial",
        params={"q": q, "k": k, "s": s, "t": t, "r": r, "n": n, "seed": seed},
        chosen={"gamma": gamma.coeffs, "field": ctx.to_spec()},
        space=V,
        claims={
            "dim": k,
            "r_sidon": {"order": r, "source": source},
            "sidon": {"value": True, "source": source},
            "span_dims": {str(rr): expected_dim(rr) for rr in range(2, t)},
        },
        measured={"dim": V.dim, "scattered": True, "span_dims": dims[1:]},
    )


def monomial_decomposition_check(rec: ConstructionRecord) -> bool:
    """Verify the layered shape of V^r for a monomial record with r <= t-1.

    Checks, for the record's r: V^r equals the direct sum of the lines
    gamma^i F_{q^k} (1 <= i < r) with the graph space of the same monomial
    at gamma^r; the sum is direct (dimensions add); the stabilizer of V^r'
    is the base field for 2 <= r' <= t-1; and the chain stabilization index
    matches the norm of gamma (t+1 when N(gamma) = (-1)^n, else t).
    """
    if rec.name != "monomial":
        raise ValueError("record was not produced by the monomial builder")
    q, k, s, t, r = (rec.params[key] for key in ("q", "k", "s", "t", "r"))
    if r > t - 1:
        raise ValueError("decomposition applies to r <= t-1")
    ctx = rec.space.ctx
    gamma = ctx.element(rec.chosen["gamma"])
    V = rec.space
    ok = True

    f = LinearizedPoly.monomial(ctx, k, s)
    Vr = power(V, r)
    K = subfield_space(ctx, k)
    parts = [scale(K, gamma**i) for i in range(1, r)]
    parts.append(v_f_gamma(f, gamma**r))
    direct = parts[0]
    for part in parts[1:]:
        direct = sum_spaces(direct, part)
    ok &= direct == Vr
    ok &= direct.dim == sum(part.dim for part in parts)

    from .subspace import span_chain, stabilizer

    chain = span_chain(V)
    for rr in range(2, t):
        if rr <= len(chain.levels):
            ok &= stabilizer(chain.level(rr)).degree == 1
    n = ctx.n
    sign = ctx.from_int((-1) ** n)
    expected_tbar = t + 1 if norm(gamma) == sign else t
    ok &= chain.t_bar == expected_tbar
    return bool(ok)


def binomial_family(
    q: int,
    k: int,
    s: int,
    t: int,
    variant: str,
    *,
    delta=None,
    gamma=None,
    seed: int = 0,
) -> ConstructionRecord:
    """Graph space of a two-term q-polynomial over F_{q^k} in F_{q^(kt)}.

    variant "mid" uses x^(q^s) + delta x^(q^(2s)); variant "end" uses
    x^(q^s) + delta x^(q^(s(k-1))). delta must be nonzero, and for the end
    variant with even k its norm down to F_q must differ from 1 (the Sidon
    guarantee fails otherwise).
    """
    if variant not in ("mid", "end"):
        raise ValueError(f"variant must be 'mid' or 'end', got {variant!r}")
    p, a = _split_prime_power(q)
    n = k * t
    ctx = make_field(p, a, n, seed=seed)
    e2 = (2 * s) % k if variant == "mid" else (s * (k - 1)) % k
    need_norm = variant == "end" and k % 2 == 0
    if delta is None:
        rng = np.random.default_rng((p, a, n, k, seed, 0xD))
        B = ctx.subfield_fp_basis(k)
        dl = None
        for _ in range(4096):
            v = rng.integers(0, p, B.shape[0], dtype=np.int64) @ B % p
            if not v.any():
                continue
            cand = FieldElement(ctx, v)
            if need_norm and _norm_to_base(ctx, cand, k) == ctx.one:
                continue
            dl = cand
            break
        if dl is None:
            raise NoSuchElementError("no admissible delta found")
        delta_el = dl
    else:
        delta_el = _as_subfield_element(ctx, k, delta, "delta")
        if delta_el.is_zero():
            raise ConstructionError("delta must be nonzero")
        if need_norm and _norm_to_base(ctx, delta_el, k) == ctx.one:
            raise ConstructionError(
                "end variant with even k requires the norm of delta to differ from 1"
            )
    if gamma is None:
        gamma_el = find_generator(ctx, over_m=k, seed=seed)
    else:
        gamma_el = gamma if isinstance(gamma, FieldElement) else ctx.element(gamma)
    f = LinearizedPoly.from_terms(ctx, k, {s: 1, e2: delta_el})
    V = v_f_gamma(f, gamma_el)
    if V.dim != k:
        raise ConstructionError(f"graph space has dim {V.dim}, expected {k}")
    sidon_known = (t > 2) and (
        (variant == "mid") or (k % 2 == 1) or _norm_to_base(ctx, delta_el, k) != ctx.one
    )
    claims = {"dim": k}
    if sidon_known:
        claims["sidon"] = {"value": True, "source": "binomial-graph"}
    return ConstructionRecord(
        name=f"binomial-{variant}",
        params={"q": q, "k": k, "s": s, "t": t, "n": n, "seed": seed, "exp2": e2},
        chosen={"gamma": gamma_el.coeffs, "delta": delta_el.coeffs, "field": ctx.to_spec()},
        space=V,
        claims=claims,
        measured={"dim": V.dim},
    )


def _norm_to_base(ctx: FieldCtx, x: FieldElement, k: int) -> FieldElement:
    """Norm of an element of F_{q^k} down to F_q, computed within F_{q^k}."""
    e = (ctx.q**k - 1) // (ctx.q - 1)
    return FieldElement(ctx, ctx.pow_elem(x.vec, e))


def trace_space(q: int, k: int, t: int, *, gamma=None, seed: int = 0) -> ConstructionRecord:
    """Graph space of the trace of F_{q^k} over F_q inside F_{q^(kt)}.

    On build the characteristic intersection pattern is re-measured: for
    every alpha in F_{q^k} outside F_q, dim(V intersect alpha V) = k-2.
    The space is Sidon exactly when k <= 3.
    """
    if t < 2:
        raise ConstructionError("t must be >= 2")
    p, a = _split_prime_power(q)
    n = k * t
    ctx = make_field(p, a, n, seed=seed)
    if gamma is None:
        gamma_el = find_generator(ctx, over_m=k, seed=seed)
    else:
        gamma_el = gamma if isinstance(gamma, FieldElement) else ctx.element(gamma)
    f = LinearizedPoly.trace_poly(ctx, k)
    V = v_f_gamma(f, gamma_el)
    if V.dim != k:
        raise ConstructionError(f"graph space has dim {V.dim}, expected {k}")
    sub_pts = subfield_space(ctx, k).projective_points()
    one = ctx.proj_canon(ctx.one_vec[None, :])[0]
    sub_pts = sub_pts[~(sub_pts == one).all(axis=1)]
    inter_dims = intersection_dims_with_scaled(V, sub_pts)
    if k >= 2 and not (inter_dims == k - 2).all():
        raise ConstructionError(
            f"subfield intersection dims {sorted(set(int(d) for d in inter_dims))}, expected all {k - 2}"
        )
    claims = {
        "dim": k,
        "sidon": {"value": k <= 3, "source": "trace-graph"},
        "span_dims": {str(rr): rr * k for rr in range(2, t)},
    }
    return ConstructionRecord(
        name="trace",
        params={"q": q, "k": k, "t": t, "n": n, "seed": seed},
        chosen={"gamma": gamma_el.coeffs, "field": ctx.to_spec()},
        space=V,
        claims=claims,
        measured={
            "dim": V.dim,
            "subfield_intersection_dims": sorted({int(d) for d in inter_dims}),
            "subfield_alphas": int(sub_pts.shape[0]),
        },
    )


def maxspan_from_brset(
    S, q: int, r: int, n: int, *, gamma=None, seed: int = 0
) -> ConstructionRecord:
    """Span of powers gamma^s for s in a B_r-set S, a max-span space.

    Requires n > r*max(S) and S to verify as a B_r-set over the integers;
    the resulting dims dim V = |S| and dim V^r = C(|S|+r-1, r) are
    re-measured on build.
    """
    from .brset import is_br_set

    S = sorted({int(x) for x in S})
    if not S or S[0] < 0:
        raise ConstructionError("S must be a nonempty set of nonnegative integers")
    h = max(S)
    if n <= r * h:
        raise ConstructionError(f"need n > r*max(S) = {r * h}, got n={n}")
    ok, witness = is_br_set(S, r)
    if not ok:
        raise ConstructionError(f"S is not a B_{r}-set: {witness}")
    p, a = _split_prime_power(q)
    ctx = make_field(p, a, n, seed=seed)
    if gamma is None:
        gamma_el = find_generator(ctx, over_m=1, seed=seed)
    else:
        gamma_el = gamma if isinstance(gamma, FieldElement) else ctx.element(gamma)
    gens = [gamma_el**e for e in S]
    V = span(ctx, gens)
    kdim = len(S)
    if V.dim != kdim:
        raise ConstructionError(f"dim V = {V.dim}, expected {kdim}")
    expected = math.comb(kdim + r - 1, r)
    got = power(V, r).dim
    if got != expected:
        raise ConstructionError(f"dim V^{r} = {got}, expected {expected}")
    return ConstructionRecord(
        name="maxspan-brset",
        params={"q": q, "r": r, "n": n, "seed": seed, "S": S},
        chosen={"gamma": gamma_el.coeffs, "field": ctx.to_spec()},
        space=V,
        claims={
            "dim": kdim,
            "r_span_dim": expected,
            "r_sidon": {"order": r, "source": "max-span"},
            "sidon": {"value": True, "source": "max-span"},
        },
        measured={"dim": V.dim, "r_span_dim": got},
    )


def maxspan_from_irreducibles(
    q: int, k: int, r: int, *, seed: int = 0, irreducibles=None
) -> ConstructionRecord:
    """Max-span space spanned by evaluations of coprime polynomial products.

    A supply of C(k+r-1, r) distinct monic irreducibles is indexed by the
    size-r multisets over [k]; f_j multiplies together every polynomial
    whose multiset avoids j. With n exceeding r*Delta*C(k+r-2, r) and gamma
    of degree n, the evaluations f_j(gamma) span a k-dimensional space
    whose r-span is re-measured to hit C(k+r-1, r).
    """
    if not 1 < r < k:
        raise ConstructionError(f"need 1 < r < k, got r={r}, k={k}")
    p, a = _split_prime_power(q)
    M = math.comb(k + r - 1, r)
    if irreducibles is None:
        delta_deg = 1
        while gfpoly.irreducible_supply(q, delta_deg) < M:
            delta_deg += 1
        polys = random_irreducibles(q, M, delta_deg, seed=seed)
    else:
        scal = make_field(p, a, 1, seed=seed) if a > 1 else prime_ctx(p)
        polys = []
        for entry in irreducibles:
            pl = entry if isinstance(entry, gfpoly.Poly) else gfpoly.Poly.from_ints(scal, list(entry))
            if not pl.is_monic or not pl.irreducible():
                raise ConstructionError(f"supplied polynomial {pl} is not monic irreducible")
            polys.append(pl)
        if len({pl.coeffs.tobytes() for pl in polys}) != len(polys):
            raise ConstructionError("supplied polynomials must be pairwise distinct")
        if len(polys) != M:
            raise ConstructionError(f"need exactly {M} polynomials, got {len(polys)}")
    Delta = max(pl.degree for pl in polys)
    multisets = list(_multisets(k, r))
    assert len(multisets) == M
    assignment = dict(zip(multisets, polys))
    fs = []
    for j in range(1, k + 1):
        prod = None
        for ms, pl in assignment.items():
            if j in ms:
                continue
            prod = pl if prod is None else prod * pl
        fs.append(prod)
    bound = r * Delta * math.comb(k + r - 2, r)
    n = bound + 1
    ctx = make_field(p, a, n, seed=seed)
    gamma_el = find_generator(ctx, over_m=1, seed=seed)
    evals = [pl.evaluate_in(ctx, gamma_el) for pl in fs]
    V = span(ctx, evals)
    if V.dim != k:
        raise ConstructionError(f"dim V = {V.dim}, expected {k}")
    got = power(V, r).dim
    if got != M:
        raise ConstructionError(f"dim V^{r} = {got}, expected {M}")
    return ConstructionRecord(
        name="maxspan-irreducibles",
        params={"q": q, "k": k, "r": r, "n": n, "Delta": Delta, "seed": seed},
        chosen={
            "gamma": gamma_el.coeffs,
            "field": ctx.to_spec(),
            "irreducibles": [pl.to_list() for pl in polys],
            "factors": {str(j + 1): fs[j].to_list() for j in range(k)},
        },
        space=V,
        claims={
            "dim": k,
            "r_span_dim": M,
            "r_sidon": {"order": r, "source": "max-span"},
            "sidon": {"value": True, "source": "max-span"},
        },
        measured={"dim": V.dim, "r_span_dim": got},
    )


def _multisets(k: int, r: int):
    """Size-r multisets over {1..k} in lexicographic order, as tuples."""
    import itertools

    return itertools.combinations_with_replacement(range(1, k + 1), r)


def polynomial_independence_check(fs: list, gamma: FieldElement) -> bool:
    """F_q-independence of polynomials vs of their values at gamma.

    Computes both sides (coefficient rank over F_q, and the dimension of
    the span of the evaluations) and asserts they agree, which requires
    every degree to stay below the degree of gamma over F_q.
    """
    if not fs:
        raise ValueError("need at least one polynomial")
    ctx = gamma.ctx
    n_gamma = gamma.degree_over_base()
    dmax = max(pl.degree for pl in fs)
    if dmax >= n_gamma:
        raise ValueError(
            f"degree bound violated: max deg {dmax} >= deg(gamma) = {n_gamma}"
        )
    scal = fs[0].field
    width = dmax + 1
    rows = []
    for pl in fs:
        c = np.zeros((width, scal.dim), dtype=np.int64)
        c[: pl.coeffs.shape[0]] = pl.coeffs
        if scal.dim == 1:
            rows.append(c[:, 0])
        else:
            rows.append(c.reshape(-1))
    if scal.dim == 1:
        from .linalg import rank

        coeff_rank = rank(np.array(rows, dtype=np.int64), scal.p)
    else:
        sb = SpanBuilder(scal.p, width * scal.dim)
        scalars = scal.subfield_elements(1)
        scalars = scalars[scalars.any(axis=1)]
        for row in rows:
            mat = row.reshape(width, scal.dim)
            for sc in scalars:
                scaled = scal.mul_many(mat, np.broadcast_to(sc, mat.shape))
                sb.insert(scaled.reshape(-1))
        coeff_rank = sb.rank // scal.a
    evals = [pl.evaluate_in(ctx, gamma) for pl in fs]
    eval_dim = span(ctx, evals).dim
    assert coeff_rank == eval_dim, (
        f"independence mismatch: coefficient rank {coeff_rank}, evaluation span {eval_dim}"
    )
    return coeff_rank == len(fs)
