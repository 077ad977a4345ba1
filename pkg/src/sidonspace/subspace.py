"""F_q-subspace calculus inside F_{q^n}.

A :class:`Subspace` is an F_q-linear subspace of the ambient field, stored
as a canonical RREF basis of F_p coordinate rows (a*k rows for a k-dimensional
space over q = p^a). Canonical storage makes equality, hashing and set
membership cheap, which the chain/stabilizer computations lean on heavily.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, NamedTuple

import numpy as np
from sympy import divisors

from .errors import BudgetError, ConstructionError
from .field import FieldCtx, FieldElement, field_from_spec
from .linalg import SpanBuilder, batch_rank, left_nullspace


def _as_rows(ctx: FieldCtx, gens) -> np.ndarray:
    """Coerce field elements / coefficient rows to an (N x dim) int array."""
    if isinstance(gens, np.ndarray) and gens.ndim == 2:
        return gens % ctx.p
    rows = []
    for g in gens:
        if isinstance(g, FieldElement):
            if g.ctx != ctx:
                raise ValueError("generator from a different field")
            rows.append(g.vec)
        else:
            v = np.asarray(g, dtype=np.int64).ravel()
            if len(v) != ctx.dim:
                raise ValueError(f"coefficient row of length {len(v)}, expected {ctx.dim}")
            rows.append(v % ctx.p)
    if not rows:
        return np.zeros((0, ctx.dim), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


class Subspace:
    """An F_q-subspace of F_{q^n} with a canonical basis.

    Construct through :func:`span`; the raw constructor expects rows that
    already span an F_q-closed space and canonicalizes them.
    """

    __slots__ = ("ctx", "_sb")

    def __init__(self, ctx: FieldCtx, rows: np.ndarray, *, _sb: SpanBuilder | None = None):
        self.ctx = ctx
        if _sb is not None:
            self._sb = _sb
        else:
            sb = SpanBuilder(ctx.p, ctx.dim)
            sb.insert_many(_as_rows(ctx, rows))
            self._sb = sb
        if ctx.a > 1:
            xi = ctx.subfield_generator(1)
            scaled = ctx.mul_many(self.basis, np.broadcast_to(xi, self.basis.shape))
            if self._sb.reduce(scaled).any():
                raise ConstructionError("rows do not span an F_q-closed space")
        elif self._sb.rank % ctx.a:
            raise ConstructionError("F_p-rank is not a multiple of a")

    @property
    def basis(self) -> np.ndarray:
        """Canonical RREF basis rows (F_p coordinates), read-only."""
        return self._sb.basis

    @property
    def fp_dim(self) -> int:
        return self._sb.rank

    @property
    def dim(self) -> int:
        """Dimension over F_q."""
        return self._sb.rank // self.ctx.a

    def contains(self, x) -> bool:
        v = x.vec if isinstance(x, FieldElement) else np.asarray(x, dtype=np.int64)
        return self._sb.contains(v % self.ctx.p)

    def contains_space(self, other: "Subspace") -> bool:
        return not self._sb.reduce(other.basis).any()

    def reduce_rows(self, rows: np.ndarray) -> np.ndarray:
        """Residuals of rows against this space (zero row = member)."""
        return self._sb.reduce(rows)

    def is_zero(self) -> bool:
        return self._sb.rank == 0

    def fingerprint(self) -> str:
        """Short stable identifier derived from field and basis."""
        import hashlib

        h = hashlib.sha256()
        h.update(repr(self.ctx.to_spec()).encode())
        h.update(self.basis.tobytes())
        return h.hexdigest()[:12]

    # -- element / point enumeration (desk scale) --------------------------------

    def elements(self) -> np.ndarray:
        """All q^k elements as rows. Guarded against large spaces."""
        r = self.fp_dim
        if self.ctx.p**r > 1 << 22:
            raise ValueError("space too large to enumerate")
        digits = np.indices((self.ctx.p,) * r).reshape(r, -1).T
        return digits @ self.basis % self.ctx.p

    def projective_points(self) -> np.ndarray:
        """Canonical representatives of the (q^k-1)/(q-1) projective points."""
        els = self.elements()
        els = els[els.any(axis=1)]
        can = self.ctx.proj_canon(els)
        return np.unique(can, axis=0)

    # -- serialization ---------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "field": self.ctx.to_spec(),
            "basis": [[int(c) for c in row] for row in self.basis],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Subspace":
        ctx = field_from_spec(d["field"])
        return cls(ctx, np.asarray(d["basis"], dtype=np.int64))

    # -- dunder ------------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.fp_dim == other.fp_dim
            and (self.basis == other.basis).all()
        )

    def __hash__(self):
        return hash((self.ctx, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim} over GF({self.ctx.q}) in GF({self.ctx.q}^{self.ctx.n}))"


def span(ctx: FieldCtx, gens) -> Subspace:
    """F_q-span of the given elements (or F_p coefficient rows)."""
    rows = _as_rows(ctx, gens)
    if ctx.a > 1 and rows.shape[0]:
        scalars = ctx.subfield_elements(1)
        scalars = scalars[scalars.any(axis=1)]
        closed = [ctx.mul_many(np.broadcast_to(s, rows.shape), rows) for s in scalars]
        rows = np.vstack(closed)
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(rows)
    return Subspace(ctx, rows, _sb=sb)


def full_space(ctx: FieldCtx) -> Subspace:
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(np.eye(ctx.dim, dtype=np.int64))
    return Subspace(ctx, None, _sb=sb)


def subfield_space(ctx: FieldCtx, m: int) -> Subspace:
    """The subfield F_{q^m} viewed as an F_q-subspace."""
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(ctx.subfield_fp_basis(m))
    return Subspace(ctx, None, _sb=sb)


def sum_spaces(U: Subspace, V: Subspace) -> Subspace:
    if U.ctx != V.ctx:
        raise ValueError("subspaces live in different fields")
    sb = U._sb.copy()
    sb.insert_many(V.basis)
    return Subspace(U.ctx, None, _sb=sb)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked basis matrix."""
    if U.ctx != V.ctx:
        raise ValueError("subspaces live in different fields")
    ctx = U.ctx
    if U.is_zero() or V.is_zero():
        return span(ctx, [])
    A = np.vstack([U.basis, V.basis])
    null = left_nullspace(A, ctx.p)
    ru = U.fp_dim
    rows = null[:, :ru] @ U.basis % ctx.p if null.shape[0] else np.zeros((0, ctx.dim), dtype=np.int64)
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(rows)
    return Subspace(ctx, None, _sb=sb)


def scale(V: Subspace, alpha: FieldElement) -> Subspace:
    """The subspace alpha * V."""
    if alpha.ctx != V.ctx:
        raise ValueError("scalar from a different field")
    if alpha.is_zero():
        raise ValueError("scaling by zero collapses the space")
    rows = V.ctx.mul_many(V.basis, np.broadcast_to(alpha.vec, V.basis.shape))
    sb = SpanBuilder(V.ctx.p, V.ctx.dim)
    sb.insert_many(rows)
    return Subspace(V.ctx, None, _sb=sb)


def frob_image(V: Subspace, j: int = 1, *, p_power: bool = False) -> Subspace:
    """Image of V under x -> x^(q^j) (or x -> x^(p^j) with p_power=True)."""
    rows = V.ctx.frob_p(V.basis, j) if p_power else V.ctx.frob_q(V.basis, j)
    sb = SpanBuilder(V.ctx.p, V.ctx.dim)
    sb.insert_many(rows)
    return Subspace(V.ctx, None, _sb=sb)


def product(U: Subspace, V: Subspace) -> Subspace:
    """Span of all pairwise products UV (an F_q-space again)."""
    if U.ctx != V.ctx:
        raise ValueError("subspaces live in different fields")
    ctx = U.ctx
    BU, BV = U.basis, V.basis
    if BU.shape[0] == 0 or BV.shape[0] == 0:
        return span(ctx, [])
    left = np.repeat(BU, BV.shape[0], axis=0)
    right = np.tile(BV, (BU.shape[0], 1))
    rows = ctx.mul_many(left, right)
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(rows, stop_rank=ctx.dim)
    return Subspace(ctx, None, _sb=sb)


def power(V: Subspace, r: int) -> Subspace:
    """The r-fold product span V^r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    out = V
    for _ in range(r - 1):
        out = product(out, V)
    return out


def generated_field_degree(V: Subspace) -> int:
    """Degree m over F_q of the subfield generated by the elements of V."""
    ctx = V.ctx
    m = 1
    for row in V.basis:
        d = FieldElement(ctx, row).degree_over_base()
        m = m * d // np.gcd(m, d)
    return int(m)


@dataclass(frozen=True)
class SpanChain:
    """The chain V, V^2, V^3, ... up to stabilization (or a cap).

    ``t`` is the first exponent whose span equals the generated subfield
    (None if never reached), ``t_bar`` the first s with V^s = V^(s+1)
    (None if the cap interrupted the chain first).
    """

    levels: tuple
    t: int | None
    t_bar: int | None
    truncated: bool
    generated_field_degree: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(lv.dim for lv in self.levels)

    def level(self, s: int) -> Subspace:
        if not 1 <= s <= len(self.levels):
            raise IndexError(f"chain holds levels 1..{len(self.levels)}")
        return self.levels[s - 1]


def span_chain(V: Subspace, s_max: int | None = None) -> SpanChain:
    """Compute successive product spans until V^s = V^(s+1).

    The chain always stabilizes when it is nested (in particular when
    1 in V); a cap of s_max levels (default n+1) guards the degenerate
    non-nested case, reported through ``truncated``.
    """
    if V.is_zero():
        raise ValueError("span chain of the zero space")
    cap = s_max if s_max is not None else V.ctx.n + 1
    m_gen = generated_field_degree(V)
    target = subfield_space(V.ctx, m_gen)
    levels = [V]
    t = 1 if V == target else None
    t_bar = None
    truncated = False
    while True:
        nxt = product(levels[-1], V)
        if nxt == levels[-1]:
            t_bar = len(levels)
            break
        if len(levels) >= cap:
            truncated = True
            break
        levels.append(nxt)
        if t is None and nxt == target:
            t = len(levels)
    return SpanChain(
        levels=tuple(levels),
        t=t,
        t_bar=t_bar,
        truncated=truncated,
        generated_field_degree=m_gen,
    )


class StabilizerInfo(NamedTuple):
    degree: int
    space: Subspace


def stabilizer(V: Subspace) -> StabilizerInfo:
    """The largest subfield H with H * V = V, as (degree over F_q, space).

    The stabilizer of a nonzero space is itself a subfield F_{q^m}; m must
    divide both n and dim V, so only those divisors are tested, largest
    first, using a generator of each candidate subfield.
    """
    ctx = V.ctx
    if V.is_zero():
        return StabilizerInfo(ctx.n, subfield_space(ctx, ctx.n))
    cands = [m for m in divisors(int(np.gcd(V.dim, ctx.n)))]
    for m in sorted(cands, reverse=True):
        xi = ctx.subfield_generator(m)
        img = ctx.mul_many(V.basis, np.broadcast_to(xi, V.basis.shape))
        if not V.reduce_rows(img).any():
            return StabilizerInfo(m, subfield_space(ctx, m))
    raise AssertionError("stabilizer always contains the base field")


def field_of_linearity(V: Subspace) -> int:
    """Largest m such that V is an F_{q^m}-subspace (== stabilizer degree)."""
    return stabilizer(V).degree


def orbit_size(V: Subspace) -> int:
    """Size of {alpha V : alpha nonzero}, i.e. (q^n - 1)/(q^h - 1)."""
    h = stabilizer(V).degree
    return (V.ctx.order - 1) // (V.ctx.q**h - 1)


def random_subspace(ctx: FieldCtx, k: int, rng: np.random.Generator) -> Subspace:
    """Uniformly random k-dimensional F_q-subspace.

    Samples field elements until k of them are F_q-independent; every
    subspace has equally many ordered bases, so the result is uniform on
    the Grassmannian.
    """
    if not 0 <= k <= ctx.n:
        raise ValueError(f"k must lie in [0, {ctx.n}]")
    out = span(ctx, [])
    guard = 0
    while out.dim < k:
        guard += 1
        if guard > 10000 * (k + 1):
            raise AssertionError("random subspace sampling stalled")
        v = rng.integers(0, ctx.p, ctx.dim, dtype=np.int64)
        if not v.any() or out.contains(v):
            continue
        out = sum_spaces(out, span(ctx, [v]))
    return out


def all_projective_points(ctx: FieldCtx, *, budget: int = 1 << 22) -> np.ndarray:
    """Canonical representatives of all projective points of F_{q^n}.

    For prime q the reps (first nonzero coordinate 1) are enumerated
    directly without building the full field.
    """
    count = (ctx.order - 1) // (ctx.q - 1)
    if count > budget:
        raise BudgetError(
            f"{count} projective points exceed budget {budget}", required=count
        )
    if ctx.a == 1:
        blocks = []
        d, p = ctx.dim, ctx.p
        for i in range(d):
            tail = d - 1 - i
            block = np.zeros((p**tail, d), dtype=np.int64)
            block[:, i] = 1
            if tail:
                block[:, i + 1 :] = np.indices((p,) * tail).reshape(tail, -1).T
            blocks.append(block)
        return np.vstack(blocks)
    els = full_space(ctx).elements()
    els = els[els.any(axis=1)]
    return np.unique(ctx.proj_canon(els), axis=0)


def intersection_dims_with_scaled(V: Subspace, alphas: np.ndarray) -> np.ndarray:
    """dim_Fq(V intersect alpha*V) for a batch of scalars alpha (rows).

    Uses rank(V) + rank(alpha V) - rank(V + alpha V) on stacked bases,
    vectorized over the whole batch.
    """
    ctx = V.ctx
    B = V.basis
    r = B.shape[0]
    alphas = np.atleast_2d(alphas)
    N = alphas.shape[0]
    scaled = ctx.mul_many(
        np.repeat(alphas, r, axis=0), np.tile(B, (N, 1))
    ).reshape(N, r, ctx.dim)
    stacked = np.concatenate([np.broadcast_to(B, (N, r, ctx.dim)), scaled], axis=1)
    ranks = batch_rank(stacked, ctx.p)
    return (2 * r - ranks) // ctx.a
