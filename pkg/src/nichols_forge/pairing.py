"""The skew pairing on words and Nichols algebras as its radical quotients.

Everything here is driven by the exponent matrix P with
tau0(f_a, g_b) = zeta ** P[a][b].  Two derivations realize the pairing:

    tau(x, y w_j) = tau(d_j x, y),    tau(v_j x, y) = tau(x, d'_j y)

where d_j deletes an occurrence of j from a v-word, weighted by
tau0(f_m, g_j) over the letters m to its left, and d'_j deletes an occurrence
of j from a w-word, weighted by tau0(f_j, g_m) over the letters m to its right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Union

from .linalg import SparseEchelon, add_scaled, rank
from .scalars import CyclotomicNumber, root_of_unity
from .yd import DoubleDatum

Word = tuple
Combination = Dict[Word, CyclotomicNumber]

V_SIDE = "v"
W_SIDE = "w"
MAX_PAIRING_WORDS = 4096


class DegreeOverflow(ArithmeticError):
    """A product left the degree range in which a truncated Nichols algebra is known."""


class PairingBoundExceeded(ValueError):
    pass


def derivative(P: Sequence[Sequence[int]], n: int, word: Word, j: int, side: str) -> list:
    """Terms (coefficient exponent, shorter word) of d_j (v side) or d'_j (w side)."""
    out = []
    if side == V_SIDE:
        acc = 0
        for k, letter in enumerate(word):
            if letter == j:
                out.append((acc % n, word[:k] + word[k + 1 :]))
            acc += P[letter][j]
    else:
        acc = 0
        for k in range(len(word) - 1, -1, -1):
            letter = word[k]
            if letter == j:
                out.append((acc % n, word[:k] + word[k + 1 :]))
            acc += P[j][letter]
    return out


class WordPairing:
    """Memoized tau on (v-word, w-word)."""

    def __init__(self, P: Sequence[Sequence[int]], n: int):
        self.P = [list(r) for r in P]
        self.n = n
        self._cache: dict = {}

    def __call__(self, x: Word, y: Word) -> CyclotomicNumber:
        x, y = tuple(x), tuple(y)
        if len(x) != len(y) or sorted(x) != sorted(y):
            return CyclotomicNumber.zero(self.n)
        return self._tau(x, y)

    def _tau(self, x: Word, y: Word) -> CyclotomicNumber:
        if not y:
            return CyclotomicNumber.one(self.n)
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        j = y[-1]
        total = CyclotomicNumber.zero(self.n)
        for e, shorter in derivative(self.P, self.n, x, j, V_SIDE):
            total = total + root_of_unity(self.n, e) * self._tau(shorter, y[:-1])
        self._cache[key] = total
        return total


def tau_words(D: DoubleDatum, x: Sequence[int], y: Sequence[int]) -> CyclotomicNumber:
    return _pairing_for(D)(tuple(x), tuple(y))


_PAIRINGS: dict = {}


def _pairing_for(D: DoubleDatum) -> WordPairing:
    key = (D.n, tuple(map(tuple, D.q_exponents())))
    wp = _PAIRINGS.get(key)
    if wp is None:
        wp = WordPairing(D.q_exponents(), D.n)
        _PAIRINGS[key] = wp
    return wp


def tau_combinations(D: DoubleDatum, x: Combination, y: Combination) -> CyclotomicNumber:
    total = CyclotomicNumber.zero(D.n)
    for a, ca in x.items():
        for b, cb in y.items():
            total = total + ca * cb * tau_words(D, a, b)
    return total


def words(letters: Iterable[int], degree: int) -> list[Word]:
    return list(itertools.product(sorted(letters), repeat=degree))


@dataclass
class PairingMatrix:
    degree: int
    rows: list
    cols: list
    entries: list

    def rank(self, n: int) -> int:
        if not self.rows:
            return 0
        return rank(self.entries, n)

    def blocks(self) -> dict:
        """Sub-matrices keyed by sorted letter multiset."""
        groups: dict = {}
        for i, w in enumerate(self.rows):
            groups.setdefault(tuple(sorted(w)), ([], []))[0].append(i)
        for j, w in enumerate(self.cols):
            groups.setdefault(tuple(sorted(w)), ([], []))[1].append(j)
        return {
            key: [[self.entries[i][j] for j in cols] for i in rows]
            for key, (rows, cols) in groups.items()
        }


def pairing_matrix(D: DoubleDatum, degree: int) -> PairingMatrix:
    count = D.size**degree
    if count > MAX_PAIRING_WORDS:
        raise PairingBoundExceeded(
            f"{count} words of degree {degree}, above the bound {MAX_PAIRING_WORDS}"
        )
    ws = words(range(D.size), degree)
    entries = [[tau_words(D, x, y) for y in ws] for x in ws]
    return PairingMatrix(degree, ws, list(ws), entries)


def block_rank(D: DoubleDatum, degree: int) -> int:
    """rank of the degree block computed multiset by multiset."""
    pm = pairing_matrix(D, degree)
    return sum(rank(b, D.n) for b in pm.blocks().values() if b and b[0])


# --- Nichols bases -------------------------------------------------------------


class NicholsBasis:
    """Deterministic graded basis of the Nichols algebra on one side.

    Degree n candidates are basis words of degree n-1 with one letter
    appended, scanned lexicographically; a candidate is kept when its vector
    of derivatives is independent of the kept ones.  Dependent candidates
    record their coordinates, and arbitrary words are expressed by
    extending prefixes one letter at a time.
    """

    def __init__(
        self,
        P: Sequence[Sequence[int]],
        n: int,
        letters: Sequence[int],
        side: str = V_SIDE,
        max_degree: int = 12,
    ):
        if side not in (V_SIDE, W_SIDE):
            raise ValueError(f"unknown side {side!r}")
        self.P = [list(r) for r in P]
        self.n = n
        self.letters = tuple(sorted(letters))
        self.side = side
        self.max_degree = max_degree
        self.bases: list[list[Word]] = [[()]]
        self._coords: dict = {(): {(): CyclotomicNumber.one(n)}}
        self.finite = False
        self._build()

    def _build(self) -> None:
        if not self.letters:
            self.finite = True
            return
        # one degree past the bound is probed so that a top degree equal to
        # max_degree still certifies finiteness
        for degree in range(1, self.max_degree + 2):
            cands = sorted(b + (j,) for b in self.bases[-1] for j in self.letters)
            ech = SparseEchelon(self.n)
            kept = []
            coords = {}
            for x in cands:
                vec = self._derivative_vector(x)
                combo = ech.insert(x, vec)
                if combo is None:
                    kept.append(x)
                    coords[x] = {x: CyclotomicNumber.one(self.n)}
                else:
                    coords[x] = combo
            if kept and degree > self.max_degree:
                return
            self._coords.update(coords)
            self.bases.append(kept)
            if not kept:
                self.finite = True
                return

    def _derivative_vector(self, x: Word) -> dict:
        vec: dict = {}
        for j in self.letters:
            for e, shorter in derivative(self.P, self.n, x, j, self.side):
                coeff = root_of_unity(self.n, e)
                for b, c in self._coords_of(shorter).items():
                    key = (j, b)
                    cur = vec.get(key)
                    val = coeff * c if cur is None else cur + coeff * c
                    if val.is_zero():
                        vec.pop(key, None)
                    else:
                        vec[key] = val
        return vec

    # --- queries -----------------------------------------------------------

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    @property
    def top_degree(self) -> int:
        d = self.dims
        while d and d[-1] == 0:
            d = d[:-1]
        return len(d) - 1

    @property
    def dimension(self) -> Optional[int]:
        return sum(self.dims) if self.finite else None

    def basis_words(self) -> list[Word]:
        return [w for layer in self.bases for w in layer]

    def _coords_of(self, word: Word) -> Combination:
        hit = self._coords.get(word)
        if hit is not None:
            return hit
        if len(word) >= len(self.bases):
            if self.finite:
                return {}
            raise DegreeOverflow(
                f"word of degree {len(word)} is beyond the truncation degree "
                f"{len(self.bases) - 1} of an algebra not known to be finite"
            )
        if any(letter not in self.letters for letter in word):
            raise ValueError(f"word {word} uses letters outside {self.letters}")
        prefix = self._coords_of(word[:-1])
        out: Combination = {}
        last = word[-1]
        for b, c in prefix.items():
            add_scaled(out, self._coords_of(b + (last,)), c)
        self._coords[word] = out
        return out

    def express(self, x: Union[Word, Combination]) -> Combination:
        """Coordinates of a word or combination of words in the basis."""
        if isinstance(x, dict):
            out: Combination = {}
            for w, c in x.items():
                add_scaled(out, self._coords_of(tuple(w)), c)
            return out
        return dict(self._coords_of(tuple(x)))


@dataclass
class GradedBasis:
    v: NicholsBasis
    w: NicholsBasis


def _datum_basis(D: DoubleDatum, side: str, max_degree: Optional[int]) -> NicholsBasis:
    md = D.max_degree if max_degree is None else max_degree
    return NicholsBasis(D.q_exponents(), D.n, range(D.size), side, md)


def select_basis(D: DoubleDatum, max_degree: Optional[int] = None) -> GradedBasis:
    return GradedBasis(_datum_basis(D, V_SIDE, max_degree), _datum_basis(D, W_SIDE, max_degree))


@dataclass
class NicholsDims:
    dims: list
    finite: bool
    total: Optional[int]
    top_degree: int = field(default=0)


def nichols_dims(D: DoubleDatum, max_degree: Optional[int] = None) -> NicholsDims:
    nb = _datum_basis(D, V_SIDE, max_degree)
    return NicholsDims(nb.dims, nb.finite, nb.dimension, nb.top_degree)


def express_in_basis(
    D: DoubleDatum, x: Union[Word, Combination], basis: GradedBasis, side: str = V_SIDE
) -> Combination:
    return (basis.v if side == V_SIDE else basis.w).express(x)


# --- braided coproduct ------------------------------------------------------------


def braided_coproduct_exponents(P: Sequence[Sequence[int]], n: int, word: Word, side: str = V_SIDE):
    """Terms (exponent, left word, right word) of the braided coproduct.

    Uses the braiding q_ab = zeta ** P[a][b] on the v side and
    q_ab = zeta ** -P[b][a] on the w side; a letter j kept on the right that
    precedes a letter i moved to the left contributes q_ji.
    """
    word = tuple(word)
    out = []
    m = len(word)
    for mask in range(1 << m):
        left = []
        right = []
        exp = 0
        for k in range(m):
            if mask >> k & 1:
                for kk in right:
                    a, b = word[kk], word[k]
                    exp += P[a][b] if side == V_SIDE else -P[b][a]
                left.append(k)
            else:
                right.append(k)
        out.append(
            (exp % n, tuple(word[k] for k in left), tuple(word[k] for k in right))
        )
    return out


def braided_coproduct(D: DoubleDatum, x: Sequence[int], side: str = V_SIDE) -> dict:
    """sum of coefficient * (left word, right word)."""
    out: dict = {}
    for e, left, right in braided_coproduct_exponents(D.q_exponents(), D.n, tuple(x), side):
        key = (left, right)
        val = root_of_unity(D.n, e)
        cur = out.get(key)
        val = val if cur is None else cur + val
        if val.is_zero():
            out.pop(key, None)
        else:
            out[key] = val
    return out
