"""Brute-force oracles.

Every closed formula in this package is checked against the functions
here, which evaluate sums and counts by full enumeration with no
number-theoretic shortcuts. numpy does the batch work; all
accumulation is exact integer arithmetic, so chunked, parallel, and
single-pass evaluations agree bit for bit.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .cyclotomic import CycInt, cyc_zero, reduce_exponent_vector
from .field import PrimeContext, prime_context
from .quadform import (
    NONSQ,
    SQ,
    classify_batch,
    digits_block,
    sym_matrix,
    upper_positions,
)

DEFAULT_MAX_TERMS = 20_000_000
_CHUNK = 1 << 18
_COL_CAP = 10_000  # hard cap on p^t column tables in rep_count_bf


def _env_max_terms() -> int:
    raw = os.environ.get("ISOGAUSS_MAX_TERMS", "")
    try:
        val = int(raw)
    except ValueError:
        return DEFAULT_MAX_TERMS
    return val if val > 0 else DEFAULT_MAX_TERMS


@dataclass(frozen=True)
class Budget:
    """Cap on enumeration work, plus a suggested parallel split count."""

    max_terms: int = field(default_factory=_env_max_terms)
    parallel_chunks: int = 0

    def __post_init__(self):
        if self.max_terms <= 0:
            raise ValueError("max_terms must be positive")


class BudgetExceeded(Exception):
    def __init__(self, needed: int, limit: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} terms, budget is {limit}")
        self.needed = needed
        self.limit = limit


def _resolve(budget) -> Budget:
    return budget if budget is not None else Budget()


def _mats_from_digits(n: int, digits: np.ndarray) -> np.ndarray:
    """Inflate upper-triangle digit rows into symmetric matrices."""
    m = np.empty((digits.shape[0], n, n), np.int16)
    for k, (i, j) in enumerate(upper_positions(n)):
        m[:, i, j] = digits[:, k]
        if i != j:
            m[:, j, i] = digits[:, k]
    return m


def _exp_weights(ctx: PrimeContext, T) -> np.ndarray:
    # weight vector w with  2*trace(T S) = digits(S) . w  (mod p)
    n = len(T)
    w = np.empty(n * (n + 1) // 2, np.int64)
    for k, (i, j) in enumerate(upper_positions(n)):
        w[k] = (2 * T[i][j] if i == j else 4 * T[i][j]) % ctx.p
    return w


# classification of the full symmetric space, cached per (p, n)
_class_cache: dict = {}


def _classified(ctx: PrimeContext, n: int):
    key = (ctx.p, n)
    hit = _class_cache.get(key)
    if hit is not None:
        return hit
    K = n * (n + 1) // 2
    total = ctx.p**K
    rank = np.empty(total, np.uint8)
    disc = np.empty(total, np.int8)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        mats = _mats_from_digits(n, digits_block(ctx.p, K, lo, hi))
        r, d = classify_batch(ctx, mats)
        rank[lo:hi] = r
        disc[lo:hi] = d
    _class_cache[key] = (rank, disc)
    return rank, disc


def clear_caches():
    _class_cache.clear()
    _rep_memo.clear()


def _count_chunk(ctx, n, Ts, lo, hi, codes=None):
    """Per-class, per-exponent counts over one enumeration range.

    Returns an (len(Ts), (2n+2)*p) int64 array; row layout is
    (rank*2 + is_nonsquare)*p + exponent.
    """
    p = ctx.p
    K = n * (n + 1) // 2
    digits = digits_block(p, K, lo, hi)
    if codes is None:
        mats = _mats_from_digits(n, digits)
        rank, disc = classify_batch(ctx, mats)
        codes = rank.astype(np.int64) * 2 + (disc == -1)
    nbins = (2 * n + 2) * p
    out = np.empty((len(Ts), nbins), np.int64)
    base = codes * p
    for row, T in enumerate(Ts):
        e = (digits.astype(np.int64) @ _exp_weights(ctx, T)) % p
        out[row] = np.bincount(base + e, minlength=nbins)
    return out


def _table_worker(p, n, Ts, lo, hi):
    ctx = prime_context(p)
    return _count_chunk(ctx, n, Ts, lo, hi).tolist()


def class_character_tables(ctx: PrimeContext, Ts, budget=None, jobs=None):
    """For each T, count symmetric S by (class of S, 2*trace(TS) mod p).

    Returns one dict per T mapping (rank, disc) to a length-p tuple of
    counts. Every signed or restricted character sum over symmetric
    matrices against T is a linear functional of this table, so one
    enumeration pass serves all of them.
    """
    p = ctx.p
    Ts = [sym_matrix(ctx, T) for T in Ts]
    n = len(Ts[0])
    if any(len(T) != n for T in Ts):
        raise ValueError("all matrices must share one size")
    total = p ** (n * (n + 1) // 2)
    bud = _resolve(budget)
    if total > bud.max_terms:
        raise BudgetExceeded(total, bud.max_terms, "symmetric enumeration")
    nbins = (2 * n + 2) * p
    acc = np.zeros((len(Ts), nbins), np.int64)
    if jobs and jobs > 1:
        nchunks = bud.parallel_chunks or 4 * jobs
        step = max(1, -(-total // nchunks))
        ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_table_worker, p, n, Ts, lo, hi) for lo, hi in ranges]
            for f in futs:
                acc += np.asarray(f.result(), np.int64)
    else:
        rank, disc = _classified(ctx, n)
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            codes = rank[lo:hi].astype(np.int64) * 2 + (disc[lo:hi] == -1)
            acc += _count_chunk(ctx, n, Ts, lo, hi, codes)
    tables = []
    for row in acc:
        mat = row.reshape(n + 1, 2, p)
        tab = {}
        for d in range(n + 1):
            tab[(d, SQ)] = tuple(int(x) for x in mat[d, 0])
            if d >= 1:
                tab[(d, NONSQ)] = tuple(int(x) for x in mat[d, 1])
        tables.append(tab)
    return tables


def class_character_table(ctx: PrimeContext, T, budget=None, jobs=None):
    return class_character_tables(ctx, [T], budget, jobs)[0]


def _from_exponents(ctx: PrimeContext, counts) -> CycInt:
    return CycInt(ctx.p, reduce_exponent_vector(ctx.p, list(counts)))


def gauss_twisted_bf(ctx: PrimeContext, T, budget=None, jobs=None) -> CycInt:
    """Sum of legendre(det S) * character(trace(TS)) over symmetric S."""
    tab = class_character_table(ctx, T, budget, jobs)
    n = len(T)
    plus, minus = tab[(n, SQ)], tab[(n, NONSQ)]
    return _from_exponents(ctx, [a - b for a, b in zip(plus, minus)])


def gauss_restricted_bf(ctx: PrimeContext, T, r: int, budget=None, jobs=None) -> CycInt:
    """Signed character sum over the two rank-r orbits.

    Weight +1 on the Square orbit, -1 on the NonSquare orbit. At r=0
    the orbits coincide and the sum is 0.
    """
    n = len(T)
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} out of range")
    if r == 0:
        return cyc_zero(ctx)
    tab = class_character_table(ctx, T, budget, jobs)
    plus, minus = tab[(r, SQ)], tab[(r, NONSQ)]
    return _from_exponents(ctx, [a - b for a, b in zip(plus, minus)])


def gauss_untwisted_bf(ctx: PrimeContext, A, B, budget=None) -> CycInt:
    """Sum of character(trace(^tU A U B)) over all square matrices U."""
    A = sym_matrix(ctx, A)
    B = sym_matrix(ctx, B)
    p = ctx.p
    n = len(A)
    if len(B) != n:
        raise ValueError("A and B must have the same size")
    total = p ** (n * n)
    bud = _resolve(budget)
    if total > bud.max_terms:
        raise BudgetExceeded(total, bud.max_terms, "matrix enumeration")
    Aa = np.array(A, np.int64)
    Bb = np.array(B, np.int64)
    acc = np.zeros(p, np.int64)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        U = digits_block(p, n * n, lo, hi).astype(np.int64).reshape(-1, n, n)
        V = (Aa @ U) % p
        V = (V @ Bb) % p
        e = (2 * (U * V).sum(axis=(1, 2))) % p
        acc += np.bincount(e, minlength=p)
    return _from_exponents(ctx, acc.tolist())


# representation counts ------------------------------------------------

_rep_memo: dict = {}


def rep_count_bf(ctx: PrimeContext, X, Y, primitive: bool = False, budget=None) -> int:
    """Count matrices C with ^tC X C = Y; rank C = s when primitive.

    Columns are chosen one at a time subject to the Gram constraints
    against the earlier columns, keeping the whole frontier of partial
    solutions as index arrays. In the primitive case each frontier row
    also carries the span of its columns and new columns are drawn from
    the complement, so exactly the full-rank C survive. The budget
    charges frontier rows processed plus rows materialized, not the
    nominal p^(t*s) search space, which the frontier never visits.
    """
    X = sym_matrix(ctx, X)
    Y = sym_matrix(ctx, Y)
    p = ctx.p
    t, s = len(X), len(Y)
    if s == 0:
        return 1
    if t == 0:
        if primitive:
            return 0
        return 1 if all(v == 0 for row in Y for v in row) else 0
    key = (p, X, Y, primitive)
    hit = _rep_memo.get(key)
    if hit is not None:
        return hit
    limit = _resolve(budget).max_terms
    if all(v == 0 for row in X for v in row):
        # Gram form is identically zero
        if any(v for row in Y for v in row):
            result = 0
        elif not primitive:
            result = p ** (t * s)
        elif s > t:
            result = 0
        else:
            result = 1
            for i in range(s):
                result *= p**t - p**i
        _rep_memo[key] = result
        return result

    V = p**t
    if V > _COL_CAP:
        raise BudgetExceeded(V, _COL_CAP, "column table")
    vecs = digits_block(p, t, 0, V)
    Xa = np.array(X, np.int64)
    W = (vecs.astype(np.int64) @ Xa) % p
    M = np.empty((V, V), np.int8)
    step = max(1, (1 << 22) // V)
    vt = vecs.T.astype(np.int64)
    for lo in range(0, V, step):
        M[lo : lo + step] = (W[lo : lo + step] @ vt) % p
    qdiag = np.ascontiguousarray(M.diagonal())

    # span bookkeeping (primitive only): members, bitmask, dedupe keys
    pw = p ** np.arange(t - 1, -1, -1, dtype=np.int64)
    SCL = None
    ADD = None
    members = [np.array([0], np.int64)]
    masks = [np.zeros(V, bool)]
    masks[0][0] = True
    span_key: dict = {}
    if primitive:
        SCL = (
            ((np.arange(p, dtype=np.int64)[:, None, None] * vecs) % p) @ pw
        ).astype(np.int64)

    cols = np.zeros((1, 0), np.int32)
    span_ids = np.zeros(1, np.int64)
    nodes = 0
    result = 0
    for j in range(s):
        final = j == s - 1
        R = cols.shape[0]
        if R == 0:
            break
        nodes += R
        if nodes > limit:
            raise BudgetExceeded(nodes, limit, "representation count")
        base = qdiag == Y[j][j]
        mask_arr = np.stack(masks) if primitive else None
        parts = []
        parents = []
        total = 0
        for lo in range(0, R, 8192):
            ch = slice(lo, min(lo + 8192, R))
            rows = cols[ch]
            m = np.tile(base, (rows.shape[0], 1))
            for i in range(j):
                m &= M[rows[:, i]] == Y[i][j]
            if primitive:
                m &= ~mask_arr[span_ids[ch]]
            cnt = int(m.sum())
            if final:
                total += cnt
                continue
            nodes += cnt
            if nodes > limit:
                raise BudgetExceeded(nodes, limit, "representation count")
            rr, vv = np.nonzero(m)
            parts.append(np.column_stack([rows[rr], vv.astype(np.int32)]))
            if primitive:
                parents.append(span_ids[ch][rr])
        if final:
            result = total
            break
        cols = (
            np.vstack(parts) if parts else np.zeros((0, j + 1), np.int32)
        )
        if primitive and cols.shape[0]:
            if ADD is None:
                ADD = np.empty((V, V), np.int32)
                blk = max(1, (1 << 21) // V)
                for lo in range(0, V, blk):
                    hi = min(lo + blk, V)
                    ADD[lo:hi] = (
                        ((vecs[lo:hi, None, :] + vecs[None, :, :]) % p) @ pw
                    ).astype(np.int32)
            par = np.concatenate(parents)
            pairs = par * V + cols[:, -1]
            uniq, inv = np.unique(pairs, return_inverse=True)
            pair_ids = np.empty(len(uniq), np.int64)
            usid = uniq // V
            uvv = uniq % V
            for sid in np.unique(usid):
                sel = np.nonzero(usid == sid)[0]
                vs = uvv[sel].astype(np.int64)
                mem = members[sid]
                lines = SCL[1:, vs].reshape(-1)
                block = ADD[np.ix_(mem, lines)]
                # smallest vector index outside the old span pins the
                # new span down uniquely, giving a cheap dedupe key
                canon = block.min(axis=0).reshape(p - 1, len(vs)).min(axis=0)
                for pos, v, cv in zip(sel, vs, canon):
                    k2 = (int(sid), int(cv))
                    sid_new = span_key.get(k2)
                    if sid_new is None:
                        grown = [mem] + [
                            ADD[mem, SCL[a, v]].astype(np.int64)
                            for a in range(1, p)
                        ]
                        newmem = np.unique(np.concatenate(grown))
                        msk = np.zeros(V, bool)
                        msk[newmem] = True
                        sid_new = len(members)
                        members.append(newmem)
                        masks.append(msk)
                        span_key[k2] = sid_new
                    pair_ids[pos] = sid_new
            span_ids = pair_ids[inv]
    _rep_memo[key] = result
    return result


def iso_subspaces_bf(ctx: PrimeContext, X, j: int, budget=None) -> int:
    """Count j-dimensional totally isotropic subspaces by enumerating
    reduced-row-echelon bases per pivot-column pattern."""
    X = sym_matrix(ctx, X)
    p = ctx.p
    t = len(X)
    if not 0 <= j <= t:
        raise ValueError(f"subspace dimension {j} out of range")
    if j == 0:
        return 1
    limit = _resolve(budget).max_terms
    Xa = np.array(X, np.int64)
    total = 0
    nodes = 0
    for pivots in combinations(range(t), j):
        free = [
            (r, c)
            for r in range(j)
            for c in range(pivots[r] + 1, t)
            if c not in pivots
        ]
        cnt = p ** len(free)
        nodes += cnt
        if nodes > limit:
            raise BudgetExceeded(nodes, limit, "subspace enumeration")
        for lo in range(0, cnt, 1 << 16):
            hi = min(lo + (1 << 16), cnt)
            if free:
                digits = digits_block(p, len(free), lo, hi)
            else:
                digits = np.zeros((1, 0), np.int16)
            B = np.zeros((hi - lo, j, t), np.int64)
            for r in range(j):
                B[:, r, pivots[r]] = 1
            for k, (r, c) in enumerate(free):
                B[:, r, c] = digits[:, k]
            E = (B @ Xa) % p
            G = np.einsum("ajt,akt->ajk", E, B) % p
            total += int((G == 0).all(axis=(1, 2)).sum())
    return total
