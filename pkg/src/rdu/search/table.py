"""Exhaustive certification of minimal conjugate-product lengths over
GL_3(GF(q)), q in {2, 3}.

For sigma in GL and targets t in GL, the minimal m with t expressible as a
product of m or fewer elementary conjugates of sigma and sigma^-1 is found
by breadth-first closure of S1 = {sigma^xi, (sigma^-1)^xi}, with a
meet-in-the-middle membership scan deciding m = 2 in O(|S1|) lookups.
S1 is the union of the two SL-conjugation orbits of sigma and sigma^-1
(over a field the elementary group is SL), so orbits are computed once and
shared by every sigma in the same orbit pair.
"""

from __future__ import annotations

import os
import time
from array import array
from dataclasses import dataclass, field

from ..errors import IntegrityError, PreconditionError, UnsupportedSizeError
from . import kernels

_SUPPORTED = {(3, 2), (3, 3)}


def _order_gl(n: int, q: int) -> int:
    total = 1
    for i in range(n):
        total *= q**n - q**i
    return total


class GroupTable:
    """Canonically indexed enumeration of GL_3(GF(q)) with conjugation
    machinery.  Index 0 is the identity; the rest ascend by the base-q
    row-major encoding of the entries."""

    def __init__(self, n: int, q: int, kernel=None, encodings=None):
        if (n, q) not in _SUPPORTED:
            raise UnsupportedSizeError(
                f"search supports n=3 with q in {{2, 3}}, got n={n}, q={q}"
            )
        self.n, self.q = n, q
        self.kernel = kernel or kernels.DEFAULT
        k = self.kernel
        if encodings is None:
            encodings = self._enumerate_encodings(q)
        identity_enc = self.encode(bytes((1, 0, 0, 0, 1, 0, 0, 0, 1)))
        rest = sorted(e for e in encodings if e != identity_enc)
        self.encodings = [identity_enc] + rest
        self.count = len(self.encodings)
        if self.count != _order_gl(n, q):
            raise IntegrityError(
                f"|GL_{n}(GF({q}))| should be {_order_gl(n, q)}, got {self.count}"
            )
        self.flats = b"".join(self._decode(e) for e in self.encodings)
        self.enc_to_idx = array("i", [-1] * q**9)
        for idx, e in enumerate(self.encodings):
            self.enc_to_idx[e] = idx
        self.sl_indices = [
            idx for idx in range(self.count) if _det_flat(self.flat(idx), q) == 1
        ]
        if len(self.sl_indices) != self.count // (q - 1):
            raise IntegrityError("SL order disagrees with |GL| / (q - 1)")
        self.gens = []
        for i in range(1, 4):
            for j in range(1, 4):
                if i == j:
                    continue
                for v in range(1, q):
                    g = self._transvection_flat(i, j, v)
                    ginv = self._transvection_flat(i, j, (-v) % q)
                    self.gens.append((g, ginv))
        self.conj_perms = [
            k.conj_perm(self.flats, self.count, g, ginv, self.enc_to_idx, q)
            for g, ginv in self.gens
        ]
        self.inv_idx = k.inverse_map(self.flats, self.count, self.enc_to_idx, q)
        self.orbit_id, self.orbits = self._orbit_partition()
        self._s1_cache: dict = {}
        self._minlen_memo: dict = {}

    # -- encoding ---------------------------------------------------------
    @staticmethod
    def _enumerate_encodings(q: int):
        out = []
        ring_mod = q
        for e in range(q**9):
            digits = []
            v = e
            for _ in range(9):
                digits.append(v % ring_mod)
                v //= ring_mod
            digits.reverse()
            m = bytes(digits)
            det = (
                m[0] * (m[4] * m[8] - m[5] * m[7])
                - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
            ) % q
            if det != 0:
                out.append(e)
        return out

    def encode(self, flat: bytes) -> int:
        e = 0
        for v in flat:
            e = e * self.q + v
        return e

    def _decode(self, enc: int) -> bytes:
        digits = []
        for _ in range(9):
            digits.append(enc % self.q)
            enc //= self.q
        digits.reverse()
        return bytes(digits)

    def flat(self, idx: int) -> bytes:
        return self.flats[9 * idx : 9 * idx + 9]

    def index_of_flat(self, flat) -> int:
        flat = bytes(flat)
        if len(flat) != 9:
            raise PreconditionError("expected a flattened 3x3 matrix")
        idx = self.enc_to_idx[self.encode(flat)]
        if idx < 0:
            raise PreconditionError("matrix is not invertible over GF(q)")
        return idx

    def _transvection_flat(self, i: int, j: int, v: int) -> bytes:
        m = bytearray((1, 0, 0, 0, 1, 0, 0, 0, 1))
        m[3 * (i - 1) + (j - 1)] = v % self.q
        return bytes(m)

    def transvection_index(self, k: int, l: int, v: int) -> int:
        if k == l:
            raise PreconditionError("transvection needs k != l")
        return self.index_of_flat(self._transvection_flat(k, l, v))

    # -- orbits under SL-conjugation ---------------------------------------
    def _orbit_partition(self):
        orbit_id = array("i", [-1] * self.count)
        orbits = []
        for start in range(self.count):
            if orbit_id[start] >= 0:
                continue
            oid = len(orbits)
            members = [start]
            orbit_id[start] = oid
            frontier = [start]
            while frontier:
                nxt = []
                for idx in frontier:
                    for perm in self.conj_perms:
                        other = perm[idx]
                        if orbit_id[other] < 0:
                            orbit_id[other] = oid
                            members.append(other)
                            nxt.append(other)
                frontier = nxt
            orbits.append(members)
        return orbit_id, orbits

    # -- S1 and reachability ------------------------------------------------
    def s1_for(self, sigma_idx: int):
        key = frozenset(
            (self.orbit_id[sigma_idx], self.orbit_id[self.inv_idx[sigma_idx]])
        )
        entry = self._s1_cache.get(key)
        if entry is None:
            members = sorted(
                {m for oid in key for m in self.orbits[oid]}
            )
            mask = bytearray(self.count)
            for m in members:
                mask[m] = 1
            flats = b"".join(self.flat(m) for m in members)
            inv_flats = b"".join(self.flat(self.inv_idx[m]) for m in members)
            entry = (key, members, mask, flats, inv_flats)
            self._s1_cache[key] = entry
        return entry

    def s1_size(self, sigma_idx: int) -> int:
        return len(self.s1_for(sigma_idx)[1])


def min_conjugate_length(sigma_idx, target, table: GroupTable, max_len: int = 8):
    """Minimal m <= max_len with target in (S1)^m, or None if unreachable.

    target may be a flattened 3x3 byte/int sequence, a table index, or an
    object with raw integer entries in .rows (a matgroup Matrix over GF(q)).
    """
    t_idx = _target_index(table, target)
    if t_idx == 0:
        return 0
    key, members, mask, flats, inv_flats = table.s1_for(sigma_idx)
    if mask[t_idx]:
        return 1
    memo_key = (key, t_idx)
    got = table._minlen_memo.get(memo_key)
    if got is not None:
        value, explored = got
        if value is not None:
            return value if value <= max_len else None
        if explored >= max_len:
            return None
    k, q = table.kernel, table.q
    hit = k.scan_two_step(
        inv_flats, len(members), table.flat(t_idx), mask, table.enc_to_idx, q
    )
    if hit >= 0:
        table._minlen_memo[memo_key] = (2, max_len)
        return 2
    # breadth-first closure beyond two steps; frontier holds the elements
    # whose minimal length is exactly `depth`
    reached = bytearray(mask)
    frontier = list(members)
    depth = 1
    while depth < max_len and frontier:
        frontier_flats = b"".join(table.flat(i) for i in frontier)
        found = k.expand_products(
            frontier_flats, len(frontier), flats, len(members), table.enc_to_idx, q
        )
        depth += 1
        nxt = []
        for idx in found:
            if not reached[idx]:
                reached[idx] = 1
                nxt.append(idx)
        if reached[t_idx]:
            table._minlen_memo[memo_key] = (depth, max_len)
            return depth
        frontier = nxt
    table._minlen_memo[memo_key] = (None, max_len)
    return None


def _target_index(table: GroupTable, target) -> int:
    if isinstance(target, int):
        if not 0 <= target < table.count:
            raise PreconditionError("target index out of range")
        return target
    rows = getattr(target, "rows", None)
    if rows is not None:
        flat = bytes(v % table.q for row in rows for v in row)
        return table.index_of_flat(flat)
    return table.index_of_flat(bytes(target))


@dataclass
class BoundReport:
    n: int
    q: int
    optimum: int
    histogram: dict
    witness_index: int
    witness_entries: list
    per_sigma: list = field(repr=False)
    elapsed_seconds: float = 0.0
    kernel_name: str = ""
    jobs: int = 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "optimum": self.optimum,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "witness_index": self.witness_index,
            "witness_entries": self.witness_entries,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "kernel": self.kernel_name,
            "jobs": self.jobs,
        }


def _worst_for_sigma(table: GroupTable, sigma_idx: int, max_len: int) -> int:
    flat = table.flat(sigma_idx)
    values = {
        flat[3 * (i - 1) + (j - 1)]
        for i in range(1, 4)
        for j in range(1, 4)
        if i != j
    }
    worst = 0
    for v in values:
        if v == 0:
            continue  # t_kl(0) = e needs zero factors
        for k in range(1, 4):
            for l in range(1, 4):
                if k == l:
                    continue
                got = min_conjugate_length(
                    sigma_idx, table.transvection_index(k, l, v), table, max_len
                )
                if got is None:
                    raise IntegrityError(
                        f"target unreachable within {max_len} steps"
                    )
                worst = max(worst, got)
    return worst


_WORKER_TABLE: GroupTable | None = None
_WORKER_MAXLEN = 8


def _worker(bounds):
    lo, hi = bounds
    return [
        _worst_for_sigma(_WORKER_TABLE, idx, _WORKER_MAXLEN) for idx in range(lo, hi)
    ]


def optimal_rdu_bound(
    n: int,
    q: int,
    jobs: int = 1,
    kernel=None,
    table: GroupTable | None = None,
    max_len: int = 8,
) -> BoundReport:
    """Exhaustive optimum: max over sigma of max over targets t_kl(sigma_ij)
    of the minimal conjugate-product length, with a witness sigma."""
    start = time.time()
    if table is None:
        table = GroupTable(n, q, kernel=kernel)
    if jobs <= 1:
        per_sigma = [
            _worst_for_sigma(table, idx, max_len) for idx in range(table.count)
        ]
    else:
        global _WORKER_TABLE, _WORKER_MAXLEN
        _WORKER_TABLE, _WORKER_MAXLEN = table, max_len
        import multiprocessing as mp

        chunk = (table.count + jobs - 1) // jobs
        ranges = [
            (lo, min(lo + chunk, table.count))
            for lo in range(0, table.count, chunk)
        ]
        ctx = mp.get_context("fork")
        with ctx.Pool(jobs) as pool:
            parts = pool.map(_worker, ranges)
        _WORKER_TABLE = None
        per_sigma = [v for part in parts for v in part]
    optimum = max(per_sigma)
    histogram: dict = {}
    for v in per_sigma:
        histogram[v] = histogram.get(v, 0) + 1
    witness = per_sigma.index(optimum)
    flat = table.flat(witness)
    entries = [list(flat[3 * r : 3 * r + 3]) for r in range(3)]
    return BoundReport(
        n=n,
        q=q,
        optimum=optimum,
        histogram=histogram,
        witness_index=witness,
        witness_entries=entries,
        per_sigma=per_sigma,
        elapsed_seconds=time.time() - start,
        kernel_name=table.kernel.KERNEL_NAME,
        jobs=jobs,
    )


def _det_flat(m: bytes, q: int) -> int:
    return (
        m[0] * (m[4] * m[8] - m[5] * m[7])
        - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
    ) % q


def enumerate_group(n: int, q: int, kernel=None) -> GroupTable:
    """Complete canonical enumeration of GL_n(GF(q)) with SL membership."""
    return GroupTable(n, q, kernel=kernel)


# -- cache file ---------------------------------------------------------------


def save_table(table: GroupTable, path: str):
    """Header "n q count", then one encoding per line, sorted ascending."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{table.n} {table.q} {table.count}\n")
        for enc in sorted(table.encodings):
            fh.write(f"{enc}\n")


def load_table(path: str, kernel=None) -> GroupTable:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise PreconditionError(f"bad cache header in {path}")
        n, q, count = (int(x) for x in header)
        encodings = [int(line) for line in fh if line.strip()]
    if len(encodings) != count:
        raise PreconditionError(
            f"cache {path} promises {count} encodings, has {len(encodings)}"
        )
    return GroupTable(n, q, kernel=kernel, encodings=encodings)
