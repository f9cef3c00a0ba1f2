import itertools

from logstab.lattice_fan import build_rank1, build_rank2


def small_rank2(max_rs=4, max_a=2):
    for r in range(1, max_rs):
        for s in range(1, max_rs - r + 1):
            for a in itertools.combinations_with_replacement(range(max_a + 1), r):
                yield build_rank2(r, s, a)


def small_rank1(max_n=3, max_q=3):
    for n in range(1, max_n + 1):
        for q in itertools.product(range(1, max_q + 1), repeat=n + 1):
            try:
                yield build_rank1(q)
            except ValueError:
                pass


def all_subsets(names):
    for k in range(len(names) + 1):
        yield from itertools.combinations(names, k)
