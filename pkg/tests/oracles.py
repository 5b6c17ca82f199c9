"""Independent brute-force oracles used by the unit and acceptance tests.

These deliberately avoid the package's bitset index: verse sets are plain
Python sets built by substring scans over raw token dictionaries, and the
greedy selection is replayed from its definition.
"""

from fractions import Fraction

MARKER = "$"


def naive_ngrams(token: str, max_inner: int = 8) -> set[str]:
    """All substrings of a marked token with 1..max_inner non-marker chars."""
    out = set()
    n = len(token)
    for i in range(n):
        for j in range(i + 1, n + 1):
            sub = token[i:j]
            inner = sum(1 for ch in sub if ch != MARKER)
            if 1 <= inner <= max_inner:
                out.add(sub)
    return out


def naive_verse_sets(
    verses: dict[str, list[str]], max_inner: int = 8, min_verses: int = 2
) -> dict[str, set[str]]:
    """ngram -> verse ids, by per-verse substring scan over marked tokens."""
    occurs: dict[str, set[str]] = {}
    for vid, tokens in verses.items():
        grams = set()
        for tok in tokens:
            grams.update(naive_ngrams(tok, max_inner))
        for g in grams:
            occurs.setdefault(g, set()).add(vid)
    return {g: v for g, v in occurs.items() if len(v) >= min_verses}


def chi2_fraction(a: int, b: int, c: int, d: int) -> tuple[Fraction, int]:
    """Exact chi-squared as a rational number, plus the association sign."""
    n = a + b + c + d
    r1, r2, c1, c2 = a + b, c + d, a + c, b + d
    if 0 in (r1, r2, c1, c2):
        return Fraction(0), 0
    det = a * d - b * c
    return Fraction(n * det * det, r1 * r2 * c1 * c2), (det > 0) - (det < 0)


def greedy_replay(
    candidates: dict[str, set[str]],
    target: set[str],
    n_docs: int,
    alpha: float = 0.9,
    max_iters: int = 3,
) -> list[str]:
    """Replay the residual-greedy selection rule on naive verse sets.

    The chi-squared expression is written out as in its definition (so exact
    score ties rank identically); candidate sets and residuals come from the
    independent substring scans above.
    """
    if not target:
        return []
    picked: list[str] = []
    covered: set[str] = set()
    residual = set(target)
    for _ in range(max_iters):
        best_name = None
        best_key = None
        for name, vs in candidates.items():
            a = len(vs & residual)
            b = len(residual) - a
            c = len(vs) - a
            d = n_docs - a - b - c
            det = a * d - b * c
            if det <= 0 or 0 in (a + b, c + d, a + c, b + d):
                continue
            score = n_docs * det * det / ((a + b) * (c + d) * (a + c) * (b + d))
            key = (-score, -a, -len(name), name)
            if best_key is None or key < best_key:
                best_key = key
                best_name = name
        if best_name is None:
            break
        picked.append(best_name)
        covered |= candidates[best_name]
        if len(covered & target) / len(target) >= alpha:
            break
        residual -= candidates[best_name]
    return picked


def oracle_forward(
    lang_verses: dict[str, list[str]],
    concept_verses: set[str],
    alpha: float = 0.9,
    max_iters: int = 3,
    max_inner: int = 8,
) -> list[str]:
    candidates = naive_verse_sets(lang_verses, max_inner)
    target = concept_verses & set(lang_verses)
    return greedy_replay(candidates, target, len(lang_verses), alpha, max_iters)


def oracle_backward(
    lang_verses: dict[str, list[str]],
    ngrams: list[str],
    pool_verses: dict[str, set[str]],
    alpha: float = 0.9,
    max_iters: int = 3,
    max_inner: int = 8,
) -> list[str]:
    sets = naive_verse_sets(lang_verses, max_inner)
    target = set()
    for g in ngrams:
        target |= sets[g]
    aligned = set(lang_verses)
    candidates = {c: vs & aligned for c, vs in pool_verses.items()}
    return greedy_replay(candidates, target, len(lang_verses), alpha, max_iters)


def toy_raw_verses() -> dict[str, dict[str, list[str]]]:
    """The 8-verse corpus as marked-token dictionaries, built independently."""
    from colexgraph.datagen import TOY_ENG, TOY_WORDS

    out = {"eng": {}}
    for i, concepts in enumerate(TOY_ENG, start=1):
        out["eng"][f"v{i}"] = [f"${c}$" for c in concepts]
    for lang, words in TOY_WORDS.items():
        out[lang] = {
            f"v{i}": [f"${words[c]}$" for c in concepts]
            for i, concepts in enumerate(TOY_ENG, start=1)
        }
    return out
