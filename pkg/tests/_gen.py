"""Seeded random words and angles shared by the test modules."""
import random

from bsva.angles import normalize
from bsva.words import Letter, Word, free_reduce

# every (n, m) with 2 <= n < |m| <= 6
SMALL_PARAMS = [(n, s * am) for am in range(3, 7) for n in range(2, am) for s in (1, -1)]


def random_word(rng: random.Random, n: int, m: int, max_len: int = 60) -> Word:
    """Random word of at most ``max_len`` letters, biased towards pinchable patterns."""
    length = rng.randint(0, max_len)
    letters = []
    for _ in range(length):
        r = rng.random()
        if r < 0.45:
            letters.append(Letter("b", rng.choice((1, -1))))
        elif r < 0.75:
            k = rng.choice((n, m)) * rng.choice((1, 1, 2, -1, -2))
            letters.append(Letter("a", k))
        else:
            k = rng.randint(-2 * abs(m), 2 * abs(m)) or 1
            letters.append(Letter("a", k))
    return free_reduce(letters)


def relator_conjugate(rng: random.Random, n: int, m: int, max_len: int = 60) -> Word:
    """``u r^{+-1} u^-1`` for the defining relator r; trivial in BS(n, m)."""
    rel = Word((Letter("b", 1), Letter("a", n), Letter("b", -1), Letter("a", -m)))
    if rng.random() < 0.5:
        rel = rel.inverse()
    u = random_word(rng, n, m, (max_len - 4) // 2)
    return u * rel * u.inverse()


def random_angle(rng: random.Random, max_den: int = 60):
    q = rng.randint(1, max_den)
    return normalize(rng.randrange(q), q)
