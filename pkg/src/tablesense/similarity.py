"""String similarity functions on a common [0, 1] scale.

Three base metrics are provided (normalized Levenshtein, Jaro-Winkler and
padded character n-gram Dice).  ``similarity`` optionally applies two
table-oriented adjustments before dispatching: every digit is collapsed to
``0`` (so numbers of equal magnitude compare equal) and long free-text cells
receive a fixed score instead of a measured one.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, replace


class MetricKind(str, enum.Enum):
    LEVENSHTEIN = "levenshtein"
    JARO_WINKLER = "jaro-winkler"
    NGRAM = "ngram"

    @classmethod
    def parse(cls, value) -> "MetricKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"jarowinkler": "jaro-winkler", "jw": "jaro-winkler",
                   "n-gram": "ngram", "ngrams": "ngram", "n-grams": "ngram",
                   "lev": "levenshtein"}
        key = aliases.get(key, key)
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown metric kind {value!r}")


@dataclass(frozen=True)
class MetricConfig:
    kind: MetricKind = MetricKind.LEVENSHTEIN
    modified: bool = False
    ngram_n: int = 3
    long_string_word_limit: int = 3
    long_string_cap: float = 0.5
    jw_prefix_scale: float = 0.1
    jw_max_prefix: int = 4

    def __post_init__(self):
        object.__setattr__(self, "kind", MetricKind.parse(self.kind))
        if self.ngram_n < 1:
            raise ValueError("ngram_n must be >= 1")
        if self.long_string_word_limit < 1:
            raise ValueError("long_string_word_limit must be >= 1")
        if not 0.0 <= self.long_string_cap <= 1.0:
            raise ValueError("long_string_cap must lie in [0, 1]")
        if not 0.0 <= self.jw_prefix_scale <= 0.25:
            raise ValueError("jw_prefix_scale must lie in [0, 0.25]")
        if self.jw_max_prefix < 1:
            raise ValueError("jw_max_prefix must be >= 1")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "modified": self.modified,
            "ngram_n": self.ngram_n,
            "long_string_word_limit": self.long_string_word_limit,
            "long_string_cap": self.long_string_cap,
            "jw_prefix_scale": self.jw_prefix_scale,
            "jw_max_prefix": self.jw_max_prefix,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricConfig":
        fields = cls().to_dict()
        unknown = set(d) - set(fields)
        if unknown:
            raise ValueError(f"unknown metric config keys: {sorted(unknown)}")
        return cls(
            kind=MetricKind.parse(d.get("kind", fields["kind"])),
            modified=bool(d.get("modified", False)),
            ngram_n=int(d.get("ngram_n", fields["ngram_n"])),
            long_string_word_limit=int(d.get("long_string_word_limit", fields["long_string_word_limit"])),
            long_string_cap=float(d.get("long_string_cap", fields["long_string_cap"])),
            jw_prefix_scale=float(d.get("jw_prefix_scale", fields["jw_prefix_scale"])),
            jw_max_prefix=int(d.get("jw_max_prefix", fields["jw_max_prefix"])),
        )

    def with_(self, **changes) -> "MetricConfig":
        return replace(self, **changes)

    def label(self) -> str:
        return f"{self.kind.value}/{'modified' if self.modified else 'unmodified'}"


DEFAULT_CONFIG = MetricConfig()


def levenshtein_distance(a: str, b: str) -> int:
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1,              # deletion
                           cur[j - 1] + 1,           # insertion
                           prev[j - 1] + (ca != cb)))  # substitution
        prev = cur
    return prev[-1]


def levenshtein_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / longest


def jaro(a: str, b: str) -> float:
    if a == b:
        return 1.0
    # greedy matching is order-dependent; fix the order to stay symmetric
    if a > b:
        a, b = b, a
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return 0.0
    window = max(max(la, lb) // 2 - 1, 0)
    a_hit = [False] * la
    b_hit = [False] * lb
    matches = 0
    for i, ca in enumerate(a):
        lo, hi = max(0, i - window), min(lb, i + window + 1)
        for j in range(lo, hi):
            if not b_hit[j] and b[j] == ca:
                a_hit[i] = b_hit[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0
    a_seq = [c for c, hit in zip(a, a_hit) if hit]
    b_seq = [c for c, hit in zip(b, b_hit) if hit]
    half_transpositions = sum(x != y for x, y in zip(a_seq, b_seq))
    t = half_transpositions / 2
    return (matches / la + matches / lb + (matches - t) / matches) / 3


def jaro_winkler(a: str, b: str, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    j = jaro(a, b)
    prefix = 0
    for ca, cb in zip(a[: cfg.jw_max_prefix], b[: cfg.jw_max_prefix]):
        if ca != cb:
            break
        prefix += 1
    return min(1.0, j + prefix * cfg.jw_prefix_scale * (1.0 - j))


_PAD_START = "\x02"
_PAD_END = "\x03"


def ngrams(s: str, n: int) -> Counter:
    padded = _PAD_START * (n - 1) + s + _PAD_END * (n - 1)
    return Counter(padded[i:i + n] for i in range(len(padded) - n + 1))


def ngram_similarity(a: str, b: str, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    if a == b:
        return 1.0
    if not a or not b:
        return 0.0
    ga, gb = ngrams(a, cfg.ngram_n), ngrams(b, cfg.ngram_n)
    common = sum((ga & gb).values())
    return 2.0 * common / (sum(ga.values()) + sum(gb.values()))


_DIGIT = re.compile(r"\d")


def canonicalize_cell(s: str) -> str:
    """Replace every decimal digit with ``0``; the digit count is preserved."""
    return _DIGIT.sub("0", s)


def base_similarity(a: str, b: str, cfg: MetricConfig) -> float:
    if cfg.kind is MetricKind.LEVENSHTEIN:
        return levenshtein_similarity(a, b)
    if cfg.kind is MetricKind.JARO_WINKLER:
        return jaro_winkler(a, b, cfg)
    return ngram_similarity(a, b, cfg)


def similarity(a: str, b: str, cfg: MetricConfig = DEFAULT_CONFIG) -> float:
    if not cfg.modified:
        return base_similarity(a, b, cfg)
    a, b = canonicalize_cell(a), canonicalize_cell(b)
    limit = cfg.long_string_word_limit
    if len(a.split()) > limit or len(b.split()) > limit:
        return cfg.long_string_cap
    return base_similarity(a, b, cfg)
