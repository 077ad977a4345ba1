"""Linearized (q-)polynomials acting on a subfield F_{q^k}.

A :class:`LinearizedPoly` is f(x) = sum_i c_i x^(q^i) with 0 <= i < k and
coefficients in F_{q^k}, applied to arguments from F_{q^k}; everything is
represented inside one ambient F_{q^n} with k | n. Exponents are folded
mod k since x^(q^k) = x on the domain.
"""

from __future__ import annotations

import numpy as np

from .errors import NoSuchElementError
from .field import FieldCtx, FieldElement
from .linalg import SpanBuilder
from .subspace import Subspace, span, subfield_space


class LinearizedPoly:
    """f(x) = sum c_i x^(q^i) on F_{q^k}, coefficients folded mod k."""

    __slots__ = ("ctx", "k", "coeffs")

    def __init__(self, ctx: FieldCtx, k: int, coeffs: np.ndarray):
        if ctx.n % k:
            raise ValueError(f"k={k} does not divide n={ctx.n}")
        self.ctx = ctx
        self.k = int(k)
        c = np.zeros((k, ctx.dim), dtype=np.int64)
        src = np.atleast_2d(np.asarray(coeffs, dtype=np.int64)) % ctx.p
        if src.shape[0] > k:
            raise ValueError("more coefficient rows than the q-degree bound k")
        c[: src.shape[0]] = src
        bad = ~ctx.in_subfield(c, k)
        if bad.any():
            raise ValueError("coefficients must lie in F_{q^k}")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def from_terms(cls, ctx: FieldCtx, k: int, terms: dict[int, object]) -> "LinearizedPoly":
        """Build from {q-exponent: coefficient}; exponents folded mod k."""
        c = np.zeros((k, ctx.dim), dtype=np.int64)
        for e, coeff in terms.items():
            if isinstance(coeff, FieldElement):
                v = coeff.vec
            elif isinstance(coeff, int):
                v = ctx.from_int(coeff).vec
            else:
                v = np.asarray(coeff, dtype=np.int64) % ctx.p
            c[e % k] = (c[e % k] + v) % ctx.p
        return cls(ctx, k, c)

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, s: int, coeff=1) -> "LinearizedPoly":
        return cls.from_terms(ctx, k, {s: coeff})

    @classmethod
    def trace_poly(cls, ctx: FieldCtx, k: int) -> "LinearizedPoly":
        """The trace of F_{q^k} over F_q as a linearized polynomial."""
        return cls.from_terms(ctx, k, {i: 1 for i in range(k)})

    @property
    def q_degree(self) -> int:
        nz = [i for i in range(self.k) if self.coeffs[i].any()]
        return max(nz) if nz else 0

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    # -- evaluation -----------------------------------------------------------

    def evaluate_many(self, U: np.ndarray) -> np.ndarray:
        """Apply f to each row of an (N x dim) batch from F_{q^k}."""
        U = np.atleast_2d(U)
        ctx = self.ctx
        acc = np.zeros_like(U)
        for i in range(self.k):
            ci = self.coeffs[i]
            if not ci.any():
                continue
            term = ctx.mul_many(ctx.frob_q(U, i), np.broadcast_to(ci, U.shape))
            acc = (acc + term) % ctx.p
        return acc

    def evaluate(self, x) -> FieldElement | np.ndarray:
        if isinstance(x, FieldElement):
            if x.ctx != self.ctx:
                raise ValueError("argument from a different field")
            return FieldElement(self.ctx, self.evaluate_many(x.vec[None, :])[0])
        return self.evaluate_many(np.asarray(x, dtype=np.int64)[None, :])[0]

    def __call__(self, x):
        return self.evaluate(x)

    # -- algebra on maps ---------------------------------------------------------

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        if not isinstance(other, LinearizedPoly) or (self.ctx, self.k) != (other.ctx, other.k):
            raise TypeError("mismatched linearized polynomials")
        return LinearizedPoly(self.ctx, self.k, (self.coeffs + other.coeffs) % self.ctx.p)

    def scale(self, coeff) -> "LinearizedPoly":
        v = coeff.vec if isinstance(coeff, FieldElement) else self.ctx.from_int(int(coeff)).vec
        rows = self.ctx.mul_many(self.coeffs, np.broadcast_to(v, self.coeffs.shape))
        return LinearizedPoly(self.ctx, self.k, rows)

    def __neg__(self) -> "LinearizedPoly":
        return LinearizedPoly(self.ctx, self.k, (-self.coeffs) % self.ctx.p)

    def __sub__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        return self.__add__(-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearizedPoly)
            and self.ctx == other.ctx
            and self.k == other.k
            and (self.coeffs == other.coeffs).all()
        )

    def __hash__(self):
        return hash((self.ctx, self.k, self.coeffs.tobytes()))

    def __repr__(self):
        terms = [f"c{i}*x^q^{i}" for i in range(self.k) if self.coeffs[i].any()]
        return f"LinearizedPoly(k={self.k}: {' + '.join(terms) or '0'})"

    # -- structure ---------------------------------------------------------------------

    def matrix_on_subfield(self) -> np.ndarray:
        """F_p-matrix of f on F_{q^k}: row i = f(basis row i)."""
        B = self.ctx.subfield_fp_basis(self.k)
        return self.evaluate_many(B)

    def kernel(self) -> Subspace:
        """Kernel of f on F_{q^k} as a subspace of the ambient field."""
        from .linalg import left_nullspace

        B = self.ctx.subfield_fp_basis(self.k)
        M = self.matrix_on_subfield()
        null = left_nullspace(M, self.ctx.p)
        rows = null @ B % self.ctx.p if null.shape[0] else np.zeros((0, self.ctx.dim), dtype=np.int64)
        return span(self.ctx, rows)

    def to_dict(self) -> dict:
        return {
            "field": self.ctx.to_spec(),
            "k": self.k,
            "coeffs": [[int(c) for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinearizedPoly":
        from .field import field_from_spec

        return cls(field_from_spec(d["field"]), int(d["k"]), np.asarray(d["coeffs"]))


def is_scattered(f: LinearizedPoly, *, return_witness: bool = False):
    """Whether a -> f(a)/a separates the projective points of F_{q^k}.

    Two arguments on the same F_q-line share the value f(a)/a, so the map
    descends to projective points; f is scattered exactly when it is
    injective there. A failure witness is a pair of independent arguments
    with equal value (the witness is re-verified before returning).
    """
    ctx = f.ctx
    pts = subfield_space(ctx, f.k).projective_points()
    vals = f.evaluate_many(pts)
    keys: dict[bytes, int] = {}
    witness = None
    for i in range(pts.shape[0]):
        v = vals[i]
        key = (ctx.mul(v, ctx.inv(pts[i])) if v.any() else np.zeros(ctx.dim, dtype=np.int64)).tobytes()
        j = keys.get(key)
        if j is not None:
            witness = (pts[j].copy(), pts[i].copy())
            break
        keys[key] = i
    if witness is not None:
        a, b = witness
        fa, fb = f.evaluate_many(np.vstack([a, b]))
        if fa.any() and fb.any():
            assert (ctx.mul(fa, ctx.inv(a)) == ctx.mul(fb, ctx.inv(b))).all()
        else:
            assert not fa.any() and not fb.any()
        assert span(ctx, [a, b]).dim == 2
        return (False, (a, b)) if return_witness else False
    return (True, None) if return_witness else True


def v_f_gamma(f: LinearizedPoly, gamma: FieldElement) -> Subspace:
    """The graph-style subspace {u + f(u) * gamma : u in F_{q^k}}."""
    ctx = f.ctx
    if gamma.ctx != ctx:
        raise ValueError("gamma from a different field")
    B = ctx.subfield_fp_basis(f.k)
    img = f.evaluate_many(B)
    rows = (B + ctx.mul_many(img, np.broadcast_to(gamma.vec, img.shape))) % ctx.p
    sb = SpanBuilder(ctx.p, ctx.dim)
    sb.insert_many(rows)
    return Subspace(ctx, None, _sb=sb)


def interpolate(ctx: FieldCtx, k: int, pairs: list[tuple]) -> LinearizedPoly:
    """Linearized polynomial through the given (argument, value) pairs.

    Solves the Moore-style system sum_j c_j a_i^(q^j) = b_i by Gaussian
    elimination over the field; free coefficients are set to zero. Raises
    NoSuchElementError when the system is inconsistent.
    """
    if len(pairs) > k:
        raise ValueError("more conditions than coefficients")
    rows = []
    rhs = []
    for a, b in pairs:
        av = a.vec if isinstance(a, FieldElement) else np.asarray(a, dtype=np.int64)
        bv = b.vec if isinstance(b, FieldElement) else np.asarray(b, dtype=np.int64)
        if not ctx.in_subfield(av, k) or not ctx.in_subfield(bv, k):
            raise ValueError("interpolation data must lie in F_{q^k}")
        rows.append([ctx.frob_q(av, j) for j in range(k)])
        rhs.append(bv.copy())
    m = len(rows)
    piv_cols: list[int] = []
    r = 0
    for col in range(k):
        sel = None
        for i in range(r, m):
            if rows[i][col].any():
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        rhs[r], rhs[sel] = rhs[sel], rhs[r]
        inv = ctx.inv(rows[r][col])
        rows[r] = [ctx.mul(x, inv) for x in rows[r]]
        rhs[r] = ctx.mul(rhs[r], inv)
        for i in range(m):
            if i != r and rows[i][col].any():
                c = rows[i][col].copy()
                rows[i] = [(rows[i][j] - ctx.mul(c, rows[r][j])) % ctx.p for j in range(k)]
                rhs[i] = (rhs[i] - ctx.mul(c, rhs[r])) % ctx.p
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rhs[i].any():
            raise NoSuchElementError("no linearized polynomial satisfies the conditions")
    coeffs = np.zeros((k, ctx.dim), dtype=np.int64)
    for i, col in enumerate(piv_cols):
        coeffs[col] = rhs[i]
    return LinearizedPoly(ctx, k, coeffs)
