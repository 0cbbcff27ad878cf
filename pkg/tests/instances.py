import random
from fractions import Fraction

from lpforge.measure import MeasureSpace, SimpleFunction, lp_norm_pow, scale


def random_space(rng, max_atoms=12):
    size = rng.randint(1, max_atoms)
    weights = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(size)]
    return MeasureSpace(tuple(f"w{i}" for i in range(size)), tuple(weights))


def random_function(rng, space, den=12):
    vals = [Fraction(rng.randint(-den, den), den) if rng.random() < 0.8 else Fraction(0) for _ in space.atoms]
    return SimpleFunction(space, vals)


def shrink_below_one(x, p, rng):
    """Rescale ``x`` by a rational so that ``||x||^p < 1`` (exactly)."""
    pw = lp_norm_pow(x, p)
    if pw == 0:
        return x
    # any t with t^p * pw < 1 works; pick t = 1 / ceil(pw + 1) times a random factor
    t = Fraction(rng.randint(1, 9), 10) / (int(pw) + 1)
    return scale(t, x)


def random_instance(rng, p=None, max_atoms=12, max_n=3, max_N=6, ball=True):
    """A seeded random rational instance ``(xs, N, p)`` with ``||x_i|| < 1``."""
    p = p if p is not None else rng.choice([1, 2, 3])
    space = random_space(rng, max_atoms)
    n = rng.randint(1, max_n)
    N = rng.randint(1, max_N)
    xs = [random_function(rng, space) for _ in range(n)]
    if ball:
        xs = [shrink_below_one(x, p, rng) for x in xs]
    return xs, N, p
