"""Source coding: fixed-length versus optimal variable-length and block codes."""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import numpy as np

from .discrete import DiscretePmf, entropy, log2
from .errors import DomainError, ResourceError, ValidationError

#: exhaustive product pmfs are capped at 2**24 cells
MAX_BLOCK_BITS = 24.0


@dataclass(frozen=True)
class PrefixCode:
    """Mapping from symbol to a '0'/'1' codeword, most significant digit first."""

    codewords: Mapping[Hashable, str]

    def __post_init__(self):
        words = dict(self.codewords)
        for sym, w in words.items():
            if not w or set(w) - {"0", "1"}:
                raise ValidationError(f"codeword for {sym!r} must be a non-empty 0/1 string, got {w!r}")
        ordered = sorted(words.values())
        # in lexicographic order a prefix sorts immediately before some word it prefixes
        for a, b in zip(ordered, ordered[1:]):
            if b.startswith(a):
                raise ValidationError(f"codeword {a!r} is a prefix of {b!r}")
        if self.kraft_sum_of(words.values()) > 1.0 + 1e-12:
            raise ValidationError("codeword lengths violate the Kraft inequality")
        object.__setattr__(self, "codewords", words)

    @staticmethod
    def kraft_sum_of(words: Iterable[str]) -> float:
        return math.fsum(2.0 ** -len(w) for w in words)

    @property
    def kraft_sum(self) -> float:
        return self.kraft_sum_of(self.codewords.values())

    def lengths(self) -> dict:
        return {s: len(w) for s, w in self.codewords.items()}

    def average_length(self, pmf: DiscretePmf) -> float:
        """Expected codeword length in binary digits per symbol."""
        return math.fsum(p * len(self.codewords[s]) for s, p in zip(pmf.symbols, pmf.probs))

    def is_prefix_free(self) -> bool:
        words = list(self.codewords.values())
        return not any(a != b and b.startswith(a) for a in words for b in words) and len(set(words)) == len(words)


def naive_code_length(pmf: DiscretePmf) -> float:
    """log2(m) binary digits per symbol for an m-symbol alphabet."""
    return float(log2(len(pmf)))


def fixed_length_code_length(pmf: DiscretePmf) -> int:
    """Digits per symbol of a realisable fixed-length code, ceil(log2 m)."""
    return max(0, math.ceil(math.log2(len(pmf)) - 1e-12))


def optimal_code_lengths(probs) -> list[int]:
    """Huffman codeword lengths for ``probs`` (one per entry, same order).

    Ties are broken by (probability, lowest symbol index in the subtree).
    A single symbol receives length 1.
    """
    probs = [float(p) for p in probs]
    m = len(probs)
    if m == 0:
        raise ValidationError("need at least one symbol")
    if m == 1:
        return [1]
    heap = [(p, i, (i,)) for i, p in enumerate(probs)]
    heapq.heapify(heap)
    lengths = [0] * m
    while len(heap) > 1:
        p1, k1, s1 = heapq.heappop(heap)
        p2, k2, s2 = heapq.heappop(heap)
        for i in s1 + s2:
            lengths[i] += 1
        heapq.heappush(heap, (p1 + p2, min(k1, k2), s1 + s2))
    return lengths


def canonical_code(symbols, lengths) -> PrefixCode:
    """Canonical prefix code assigning codewords in order of (length, index)."""
    order = sorted(range(len(symbols)), key=lambda i: (lengths[i], i))
    words = {}
    code = 0
    prev_len = lengths[order[0]]
    for rank, i in enumerate(order):
        if rank:
            code = (code + 1) << (lengths[i] - prev_len)
        prev_len = lengths[i]
        words[symbols[i]] = format(code, f"0{lengths[i]}b")
    return PrefixCode(words)


def build_optimal_code(pmf: DiscretePmf) -> PrefixCode:
    """Optimal (minimum expected length) binary prefix code for ``pmf``."""
    return canonical_code(pmf.symbols, optimal_code_lengths(pmf.probs))


@dataclass(frozen=True)
class SourceSpec:
    pmf: DiscretePmf
    block_length: int = 1

    def __post_init__(self):
        if int(self.block_length) != self.block_length or self.block_length < 1:
            raise DomainError(f"block_length must be an integer >= 1, got {self.block_length!r}")


def block_pmf(pmf: DiscretePmf, block_length: int) -> DiscretePmf:
    """Product pmf over ``block_length``-tuples of iid symbols."""
    probs = np.ones(1)
    for _ in range(block_length):
        probs = np.outer(probs, pmf.probs).ravel()
    symbols = tuple(itertools.product(pmf.symbols, repeat=block_length))
    return DiscretePmf(symbols, probs)


def block_code_rate(src: SourceSpec) -> float:
    """Digits per source symbol of the optimal code over ``block_length``-symbol blocks."""
    m = len(src.pmf)
    if m > 1 and src.block_length * math.log2(m) > MAX_BLOCK_BITS:
        raise ResourceError(
            f"block of {src.block_length} symbols over {m} letters needs "
            f"{m}**{src.block_length} cells, above the 2**{MAX_BLOCK_BITS:g} bound"
        )
    big = block_pmf(src.pmf, src.block_length)
    lengths = optimal_code_lengths(big.probs)
    return math.fsum(p * n for p, n in zip(big.probs, lengths)) / src.block_length


def encode(code: PrefixCode, symbols: Iterable[Hashable]) -> str:
    words = code.codewords
    try:
        return "".join(words[s] for s in symbols)
    except KeyError as exc:
        raise ValidationError(f"symbol {exc.args[0]!r} is not in the code") from None


def decode(code: PrefixCode, bits: str) -> list:
    """Split ``bits`` into codewords; raises on a dangling or unknown suffix."""
    table = {w: s for s, w in code.codewords.items()}
    longest = max(len(w) for w in table)
    out = []
    start = 0
    n = len(bits)
    while start < n:
        for end in range(start + 1, min(start + longest, n) + 1):
            sym = table.get(bits[start:end])
            if sym is not None:
                out.append(sym)
                start = end
                break
        else:
            raise ValidationError(f"cannot decode digits starting at offset {start}: {bits[start:start + longest]!r}")
    return out


def code_report(pmf: DiscretePmf, code: PrefixCode) -> dict:
    h = entropy(pmf)
    length = code.average_length(pmf)
    return {"H": h, "L": length, "redundancy": length - h}
