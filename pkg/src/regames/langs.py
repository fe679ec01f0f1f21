"""Concrete example languages and the counterexample-guided lower-bound certifier.

Two families live here: the nested-set encoding languages over the
parenthesis alphabet (finite, tower-sized, FO-definable via `fo.build_phi`),
and the even-chain languages over n letters whose definition needs one star
per letter.  `certify_lower_bound` mechanizes nonexistence claims against an
infinite complement by sampling it: synthesize a bounded separator against a
finite sample, search a bounded horizon for a counterexample word, repeat.
"""

from __future__ import annotations

import itertools
import json
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from . import synth
from .exprs import Alphabet, Dialect, Expr, matches, parse_expr, render_expr
from .game import runs, word_key
from .oracle import EnumSpec

PAREN_ALPHABET = Alphabet("()")


def twr(n: int) -> int:
    """Exponential tower: twr(0)=1, twr(n+1)=2**twr(n).

    twr(5) already has ~20k digits; twr(6) is not representable and raises.
    """
    if n < 0:
        raise ValueError("twr is defined on naturals")
    if n > 5:
        raise OverflowError(f"twr({n}) exceeds any representable integer")
    out = 1
    for _ in range(n):
        out = 2 ** out
    return out


def hierarchy_level(n: int) -> frozenset:
    """Level n of the cumulative hierarchy as nested frozensets."""
    level: frozenset = frozenset()
    for _ in range(n):
        members = list(level)
        level = frozenset(
            frozenset(c) for r in range(len(members) + 1)
            for c in itertools.combinations(members, r)
        )
    return level


@lru_cache(maxsize=None)
def _encodings(x: frozenset) -> tuple[str, ...]:
    if not x:
        return ("()",)
    out = set()
    for order in itertools.permutations(sorted(x, key=lambda e: min(_encodings(e)))):
        for parts in itertools.product(*(_encodings(e) for e in order)):
            out.add("(" + "".join(parts) + ")")
    return tuple(sorted(out))


def enc_language(n: int) -> tuple[str, ...]:
    """All encodings of all sets in hierarchy level n+1, sorted.

    Every element ordering counts as its own encoding, so the language has
    at least twr(n) words.  Sizes explode beyond n=3.
    """
    if not 0 <= n <= 3:
        raise ValueError("enc_language is desk-scale only: n must be 0..3")
    words = set()
    for x in hierarchy_level(n + 1):
        words.update(_encodings(x))
    return tuple(sorted(words, key=word_key))


# --- Even-chain languages -----------------------------------------------------


def chain_alphabet(n: int) -> Alphabet:
    if not 1 <= n <= 26:
        raise ValueError("supported letter counts are 1..26")
    return Alphabet(string.ascii_lowercase[:n])


def even_chain_member(w: str, n: int) -> bool:
    """True iff for some letter, every chain of that letter in w has even length."""
    alphabet = chain_alphabet(n)
    alphabet.validate_word(w)
    chain_lengths = {ch: [] for ch in alphabet}
    for ch, length in runs(w):
        chain_lengths[ch].append(length)
    return any(all(length % 2 == 0 for length in chain_lengths[ch])
               for ch in alphabet)


def even_chain_expr(n: int) -> Expr:
    """The n-star RE defining the even-chain language."""
    letters = chain_alphabet(n).symbols
    parts = []
    for i, even in enumerate(letters):
        choices = [(ch + ch if ch == even else ch) for ch in letters]
        parts.append("(" + "|".join(choices) + ")*")
    return parse_expr("|".join(parts), chain_alphabet(n))


def make_lnk(n: int, k: int) -> tuple[str, ...]:
    """The n witness words: all chains of length 2k+1 except one even chain of 2k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    letters = chain_alphabet(n).symbols
    out = []
    for i in range(n):
        out.append("".join(ch * (2 * k if j == i else 2 * k + 1)
                           for j, ch in enumerate(letters)))
    return tuple(sorted(out, key=word_key))


# --- Lower-bound certification -------------------------------------------------


@dataclass(frozen=True)
class CertifyRound:
    candidate: Expr
    counterexample: str


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Replayable record: no expression within the bounds separates the
    A-words from the final sample, so none separates them from the full
    complement either."""

    dialect: Dialect
    size_bound: int
    star_bound: int
    alphabet: Alphabet
    a_words: tuple[str, ...]
    b_sample: tuple[str, ...]
    rounds: tuple[CertifyRound, ...]


@dataclass(frozen=True)
class CertifyOutcome:
    status: str  # "certificate" or "candidate-survives-horizon"
    certificate: Optional[LowerBoundCertificate]
    survivor: Optional[Expr]
    rounds: tuple[CertifyRound, ...]
    horizon: int

    @property
    def is_certificate(self) -> bool:
        return self.status == "certificate"


class CertifyResourceError(RuntimeError):
    pass


def words_up_to(alphabet: Alphabet, max_len: int):
    for length in range(max_len + 1):
        for tup in itertools.product(alphabet.symbols, repeat=length):
            yield "".join(tup)


def seed_sample(a_words, in_complement: Callable[[str], bool],
                alphabet: Alphabet) -> tuple[str, ...]:
    """Initial complement sample: short words plus chain-perturbed A-words."""
    candidates = {""}
    candidates.update(words_up_to(alphabet, 2))
    for w in a_words:
        segments = runs(w)
        for i, (ch, length) in enumerate(segments):
            if length % 2 == 0:
                candidates.add("".join(c * (n + (1 if j == i else 0))
                                       for j, (c, n) in enumerate(segments)))
    return tuple(sorted((w for w in candidates if in_complement(w)), key=word_key))


def find_counterexample(candidate: Expr, in_complement: Callable[[str], bool],
                        alphabet: Alphabet, horizon: int) -> Optional[str]:
    """First complement word up to the horizon that the candidate matches."""
    for w in words_up_to(alphabet, horizon):
        if in_complement(w) and matches(candidate, w):
            return w
    return None


def certify_lower_bound(
    a_words,
    in_complement: Callable[[str], bool],
    spec: EnumSpec,
    horizon: int = 10,
    max_rounds: int = 64,
    max_entries: int = 2_000_000,
) -> CertifyOutcome:
    """Counterexample-guided nonexistence check against an infinite complement.

    Alternates bounded synthesis against a growing finite sample of the
    complement with a bounded search for a complement word the candidate
    matches.  Ends either with a replayable certificate (no candidate left
    within the bounds: a valid lower bound) or with a surviving candidate;
    the survivor is evidence against the bound but is only verified up to
    the horizon, so that outcome is inconclusive rather than a proof.
    """
    a_words = tuple(sorted(set(a_words), key=word_key))
    for w in a_words:
        if in_complement(w):
            raise ValueError(f"A-word {w!r} lies in the complement")
    b_sample = list(seed_sample(a_words, in_complement, spec.alphabet))
    rounds: list[CertifyRound] = []
    for _ in range(max_rounds):
        candidate = synth.find_separator(
            a_words, b_sample, spec.alphabet, spec.dialect,
            spec.max_size, spec.star_cap, max_entries,
        )
        if candidate is None:
            cert = LowerBoundCertificate(
                spec.dialect, spec.max_size, spec.star_cap, spec.alphabet,
                a_words, tuple(b_sample), tuple(rounds),
            )
            return CertifyOutcome("certificate", cert, None, tuple(rounds), horizon)
        cex = find_counterexample(candidate, in_complement, spec.alphabet, horizon)
        if cex is None:
            return CertifyOutcome("candidate-survives-horizon", None, candidate,
                                  tuple(rounds), horizon)
        rounds.append(CertifyRound(candidate, cex))
        b_sample = sorted(set(b_sample) | {cex}, key=word_key)
    raise CertifyResourceError(f"no verdict after {max_rounds} rounds")


def replay_certificate(cert: LowerBoundCertificate,
                       max_entries: int = 2_000_000) -> bool:
    """Re-run the final synthesis against the stored sample; True iff still empty."""
    found = synth.find_separator(
        cert.a_words, cert.b_sample, cert.alphabet, cert.dialect,
        cert.size_bound, cert.star_bound, max_entries,
    )
    return found is None


# --- Serialization --------------------------------------------------------------

EPS_TOKEN = "EPS"


def write_word_file(path, words, alphabet: Alphabet) -> None:
    """One word per line under a `# alphabet:` header; EPS denotes the empty word."""
    lines = [f"# alphabet: {''.join(alphabet.symbols)}"]
    for w in sorted(set(words), key=word_key):
        if w == EPS_TOKEN:
            raise ValueError("the literal word 'EPS' cannot be serialized")
        lines.append(w if w else EPS_TOKEN)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_word_file(path) -> tuple[Alphabet, tuple[str, ...]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("# alphabet:"):
        raise ValueError("word files start with a '# alphabet:' header")
    alphabet = Alphabet(lines[0].split(":", 1)[1].strip())
    words = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        w = "" if ln == EPS_TOKEN else ln
        alphabet.validate_word(w)
        words.append(w)
    return alphabet, tuple(sorted(set(words), key=word_key))


def certificate_to_json(outcome: CertifyOutcome) -> str:
    body: dict = {
        "status": outcome.status,
        "horizon": outcome.horizon,
        "rounds": [
            {"candidate": render_expr(r.candidate), "counterexample": r.counterexample}
            for r in outcome.rounds
        ],
    }
    if outcome.certificate is not None:
        cert = outcome.certificate
        body["certificate"] = {
            "dialect": cert.dialect.value,
            "size_bound": cert.size_bound,
            "star_bound": cert.star_bound,
            "alphabet": "".join(cert.alphabet.symbols),
            "a_words": list(cert.a_words),
            "b_sample": list(cert.b_sample),
        }
    if outcome.survivor is not None:
        body["survivor"] = render_expr(outcome.survivor)
    return json.dumps(body, indent=2, sort_keys=True)


def certificate_from_json(text: str) -> LowerBoundCertificate:
    body = json.loads(text)
    if "certificate" not in body:
        raise ValueError("not a certificate record")
    cert = body["certificate"]
    alphabet = Alphabet(cert["alphabet"])
    rounds = tuple(
        CertifyRound(parse_expr(r["candidate"], alphabet), r["counterexample"])
        for r in body["rounds"]
    )
    return LowerBoundCertificate(
        Dialect(cert["dialect"]), cert["size_bound"], cert["star_bound"],
        alphabet, tuple(cert["a_words"]), tuple(cert["b_sample"]), rounds,
    )
