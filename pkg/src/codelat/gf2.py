"""Binary-word and linear-code algebra over GF(2).

Words are fixed-length bit vectors stored as Python ints (bit ``j`` is
coordinate ``j``), which keeps Schur products, XOR and popcounts cheap even
for the 24-bit scans this library runs millions of times.  Codes are
deduplicated, canonically sorted word sets with an optional generator matrix
(columns are basis words) and a tri-state linearity flag: ``True`` /
``False`` when verified, ``None`` when the set was too large to verify and
no generator was supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 1 << 26
LINEARITY_VERIFY_LIMIT = 1 << 12


class LengthMismatchError(ValueError):
    """Raised when two words of different lengths are combined."""


class EnumerationCapError(RuntimeError):
    """Raised when a code or constellation would exceed the enumeration cap."""

    def __init__(self, message: str, estimated_size: int):
        super().__init__(message)
        self.estimated_size = estimated_size


class CodeFileError(ValueError):
    """Raised on malformed code files; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class BitWord:
    """A length-``n`` vector over GF(2), packed into an int (bit j = coord j)."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"word length must be >= 1, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits 0x{self.bits:x} out of range for length {self.n}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitWord":
        seq = list(bits)
        value = 0
        for j, b in enumerate(seq):
            if b not in (0, 1):
                raise ValueError(f"coordinate {j} is {b}, expected 0 or 1")
            value |= b << j
        return cls(value, len(seq))

    @classmethod
    def from_string(cls, text: str) -> "BitWord":
        return cls.from_bits(int(ch) for ch in text.strip())

    @classmethod
    def zero(cls, n: int) -> "BitWord":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitWord":
        return cls((1 << n) - 1, n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[j] for j in range(self.n))

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "BitWord") -> "BitWord":
        _check_same_length(self, other)
        return BitWord(self.bits ^ other.bits, self.n)

    def __and__(self, other: "BitWord") -> "BitWord":
        _check_same_length(self, other)
        return BitWord(self.bits & other.bits, self.n)

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def _check_same_length(x: BitWord, y: BitWord) -> None:
    if x.n != y.n:
        raise LengthMismatchError(f"word lengths differ: {x.n} vs {y.n}")


def as_word(value, n: int | None = None) -> BitWord:
    """Coerce an int, bit sequence, string or BitWord into a BitWord."""
    if isinstance(value, BitWord):
        return value
    if isinstance(value, int):
        if n is None:
            raise ValueError("length required when coercing an int to a word")
        return BitWord(value, n)
    if isinstance(value, str):
        return BitWord.from_string(value)
    return BitWord.from_bits(value)


def hamming_distance(x: BitWord, y: BitWord) -> int:
    """Number of coordinates where the two words differ."""
    _check_same_length(x, y)
    return (x.bits ^ y.bits).bit_count()


def hamming_weight(x: BitWord) -> int:
    return x.bits.bit_count()


def schur_product(x: BitWord, y: BitWord) -> BitWord:
    """Componentwise product (AND) of two equal-length words."""
    _check_same_length(x, y)
    return BitWord(x.bits & y.bits, x.n)


def carry_identity_check(x: BitWord, y: BitWord) -> bool:
    """Self-test of the integer split x + y = (x XOR y) + 2*(x AND y).

    Checked coordinatewise with plain integer arithmetic; must hold for
    every pair of equal-length words.
    """
    _check_same_length(x, y)
    for j in range(x.n):
        if x[j] + y[j] != (x[j] ^ y[j]) + 2 * (x[j] & y[j]):
            return False
    return True


def gf2_reduce_basis(vectors: Iterable[int]) -> list[int]:
    """Extract a row-reduced independent basis from int-packed vectors."""
    basis: list[int] = []  # kept with strictly decreasing leading bits
    for v in vectors:
        cur = v
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
            basis.sort(reverse=True)
    return basis


def gf2_rank(vectors: Iterable[int]) -> int:
    return len(gf2_reduce_basis(vectors))


class BinaryCode:
    """A deduplicated set of equal-length binary words.

    ``linear`` is True when linearity is verified (explicit sets are checked
    via the rank argument: a set containing zero is linear iff its size is
    exactly 2**rank), False when verified non-linear, and None when the set
    was too large to verify and no generator was given.
    """

    __slots__ = ("n", "words", "generator", "linear", "_word_set")

    def __init__(
        self,
        n: int,
        words: Iterable[int],
        generator: tuple[int, ...] | None = None,
        linear: bool | None = None,
    ):
        if n < 1:
            raise ValueError(f"code length must be >= 1, got {n}")
        ws = sorted(set(int(w) for w in words))
        if ws and not (0 <= ws[0] and ws[-1] < (1 << n)):
            raise ValueError(f"word out of range for length {n}")
        self.n = n
        self.words = tuple(ws)
        self.generator = generator
        self._word_set = frozenset(ws)
        if linear is None:
            linear = self._verify_linearity()
        self.linear = linear

    def _verify_linearity(self) -> bool | None:
        if not self.words:
            return False
        if 0 not in self._word_set:
            return False
        if self.generator is not None:
            return True
        if len(self.words) > LINEARITY_VERIFY_LIMIT:
            return None  # too large to verify, flagged unverified
        rank = gf2_rank(self.words)
        return len(self.words) == (1 << rank)

    @classmethod
    def from_words(cls, words: Iterable, n: int | None = None) -> "BinaryCode":
        ints = []
        for w in words:
            bw = as_word(w, n)
            if n is None:
                n = bw.n
            elif bw.n != n:
                raise LengthMismatchError(f"word lengths differ: {bw.n} vs {n}")
            ints.append(bw.bits)
        if n is None:
            raise ValueError("cannot infer word length from an empty word list")
        return cls(n, ints)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        if isinstance(word, BitWord):
            if word.n != self.n:
                return False
            return word.bits in self._word_set
        return word in self._word_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryCode)
            and self.n == other.n
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return hash((self.n, self.words))

    def __repr__(self) -> str:
        return f"BinaryCode(n={self.n}, size={len(self.words)}, linear={self.linear})"

    def bitwords(self) -> Iterator[BitWord]:
        return (BitWord(w, self.n) for w in self.words)

    def word_array(self) -> np.ndarray:
        if self.n > 63:
            raise ValueError("packed arrays support word length <= 63")
        return np.array(self.words, dtype=np.uint64)

    def rank(self) -> int:
        return gf2_rank(self.words)

    def contains_nonzero(self) -> bool:
        return any(w != 0 for w in self.words)

    def min_nonzero_weight(self) -> int:
        """Smallest weight among nonzero words; code must contain one."""
        wts = [w.bit_count() for w in self.words if w]
        if not wts:
            raise ValueError("code has no nonzero word")
        return min(wts)


def enumerate_from_generator(
    columns: Sequence[int] | Sequence[Sequence[int]] | np.ndarray,
    n: int | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> BinaryCode:
    """Enumerate the column span {G*a : a in F_2^k} of a generator matrix.

    ``columns`` is either a sequence of int-packed basis words or an n-by-k
    0/1 matrix whose columns are the basis words.  The result always has
    exactly 2**rank(G) distinct words.
    """
    if isinstance(columns, np.ndarray) and columns.ndim == 2:
        mat = np.asarray(columns) % 2
        n = mat.shape[0]
        cols = [
            sum(int(mat[r, j]) << r for r in range(n)) for j in range(mat.shape[1])
        ]
    else:
        cols = []
        for c in columns:
            if isinstance(c, (int, np.integer)):
                cols.append(int(c))
            else:
                bw = BitWord.from_bits(c)
                if n is None:
                    n = bw.n
                cols.append(bw.bits)
    if n is None:
        raise ValueError("word length required with int-packed columns")
    basis = gf2_reduce_basis(cols)
    size = 1 << len(basis)
    if size > cap:
        raise EnumerationCapError(
            f"generator spans 2^{len(basis)} = {size} words, above the cap {cap}",
            size,
        )
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return BinaryCode(n, words, generator=tuple(cols), linear=True)


def min_hamming_distance(code: BinaryCode) -> int:
    """Minimum Hamming distance over all distinct codeword pairs.

    For verified-linear codes this is the minimum nonzero weight; otherwise
    a full pair scan runs.
    """
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    if code.linear:
        return code.min_nonzero_weight()
    if code.n <= 63:
        arr = code.word_array()
        best = code.n + 1
        for i in range(len(arr) - 1):
            d = int(np.bitwise_count(arr[i] ^ arr[i + 1 :]).min())
            if d < best:
                best = d
        return best
    words = code.words
    return min(
        (words[i] ^ words[j]).bit_count()
        for i in range(len(words))
        for j in range(i + 1, len(words))
    )


def is_nested(inner: BinaryCode, outer: BinaryCode) -> bool:
    """True iff every word of ``inner`` is a word of ``outer``."""
    if inner.n != outer.n:
        raise LengthMismatchError(f"code lengths differ: {inner.n} vs {outer.n}")
    return all(w in outer._word_set for w in inner.words)


def schur_closed_chain(
    codes: Sequence[BinaryCode],
) -> tuple[bool, tuple[int, BitWord, BitWord] | None]:
    """Check x*y in C_{i+1} for every pair x, y in C_i, i = 1..L-1.

    Returns (True, None) or (False, (i, x, y)) with the first violating
    level (1-based) and pair in lexicographic scan order.
    """
    for i in range(len(codes) - 1):
        cur, nxt = codes[i], codes[i + 1]
        if cur.n != nxt.n:
            raise LengthMismatchError(f"code lengths differ: {cur.n} vs {nxt.n}")
        nxt_set = nxt._word_set
        ws = cur.words
        for a in range(len(ws)):
            wa = ws[a]
            for b in range(a, len(ws)):
                if (wa & ws[b]) not in nxt_set:
                    return False, (i + 1, BitWord(wa, cur.n), BitWord(ws[b], cur.n))
    return True, None


# Code file format: line 1 is "n k" (generator form, k basis rows follow)
# or "n *" (explicit form, one codeword per line).  '#' starts a comment.

def parse_code_text(text: str, cap: int = DEFAULT_ENUMERATION_CAP) -> BinaryCode:
    lines = text.splitlines()
    payload: list[tuple[int, list[str]]] = []
    for idx, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            payload.append((idx, stripped.split()))
    if not payload:
        raise CodeFileError("empty code file", 1)
    head_line, head = payload[0]
    if len(head) != 2:
        raise CodeFileError("header must be 'n k' or 'n *'", head_line)
    try:
        n = int(head[0])
    except ValueError:
        raise CodeFileError(f"bad length {head[0]!r}", head_line) from None
    if n < 1:
        raise CodeFileError(f"length must be positive, got {n}", head_line)

    rows: list[int] = []
    for line_no, toks in payload[1:]:
        if len(toks) != n:
            raise CodeFileError(f"expected {n} bits, got {len(toks)}", line_no)
        value = 0
        for j, tok in enumerate(toks):
            if tok not in ("0", "1"):
                raise CodeFileError(f"bad bit {tok!r} at coordinate {j + 1}", line_no)
            value |= int(tok) << j
        rows.append(value)

    if head[1] == "*":
        if not rows:
            raise CodeFileError("explicit code lists no codewords", head_line)
        return BinaryCode(n, rows)
    try:
        k = int(head[1])
    except ValueError:
        raise CodeFileError(f"bad rank {head[1]!r}", head_line) from None
    if len(rows) != k:
        raise CodeFileError(f"expected {k} generator rows, got {len(rows)}", head_line)
    return enumerate_from_generator(rows, n=n, cap=cap)


def read_code_file(path, cap: int = DEFAULT_ENUMERATION_CAP) -> BinaryCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_text(fh.read(), cap=cap)


def format_code_file(code: BinaryCode, explicit: bool = True) -> str:
    """Render a code in the text file format (explicit or generator form)."""
    out = []
    if not explicit and code.generator is not None:
        out.append(f"{code.n} {len(code.generator)}")
        rows = code.generator
    else:
        out.append(f"{code.n} *")
        rows = code.words
    for w in rows:
        out.append(" ".join(str((w >> j) & 1) for j in range(code.n)))
    return "\n".join(out) + "\n"
