"""Property-based checks of the algebraic invariants."""

from fractions import Fraction
from itertools import product
from math import gcd, prod

from hypothesis import given, settings, strategies as st

from abinv.category import CategoryZn, gauss_delta, is_modular
from abinv.exact_linalg import IntegerMatrix, determinant, signature, smith_normal_form, solution_count_mod_n
from abinv.manifolds import SurgeryLink, blow_up, connected_sum, homology_data, lens_space, s1_x_s2, \
    surgery_homology, rp3_heegaard
from abinv.partition import bf_partition_bruteforce, bf_partition_closed, cs_abs_squared_closed
from abinv.rt import quadratic_histogram, rt_even, rt_odd, tau_abs_squared_closed
from abinv.topology import HomologyProfile, LinkingForm, classify_parity, linking_eval


def matrices(max_dim=5, lo=-9, hi=9):
    return st.integers(0, max_dim).flatmap(lambda r: st.integers(0, max_dim).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: IntegerMatrix.from_rows(rows, c) if rows else IntegerMatrix.zeros(0, c))))


def symmetric(max_dim=3, bound=5, min_dim=0):
    def build(n):
        return st.lists(st.integers(-bound, bound), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2) \
            .map(lambda xs: _sym(n, xs))
    return st.integers(min_dim, max_dim).flatmap(build)


def _sym(n, xs):
    rows = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return IntegerMatrix.from_rows(rows, n) if n else IntegerMatrix.zeros(0, 0)


def divisor_chains(max_len=3, max_p=24):
    @st.composite
    def build(draw):
        d = draw(st.integers(0, max_len))
        chain = []
        for _ in range(d):
            base = chain[-1] if chain else 1
            options = [p for p in range(max(2, base), max_p + 1) if p % base == 0]
            if not options:
                break
            chain.append(draw(st.sampled_from(options)))
        return tuple(chain)
    return build()


@given(matrices())
def test_snf_decomposition(m):
    snf = smith_normal_form(m)
    assert snf.u @ m @ snf.v == IntegerMatrix.diagonal(snf.d, m.rows, m.cols)
    assert abs(determinant(snf.u)) == 1 and abs(determinant(snf.v)) == 1
    nz = snf.d[:snf.rank]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x == 0 for x in snf.d[snf.rank:])


@given(matrices())
def test_snf_transpose_same_divisors(m):
    assert sorted(smith_normal_form(m).d) == sorted(smith_normal_form(m.T).d)


@settings(max_examples=60)
@given(st.integers(1, 3).flatmap(lambda c: st.tuples(
    st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=0, max_size=3),
    st.just(c))), st.integers(1, 12))
def test_solution_count_exhaustive(mc, n):
    rows, c = mc
    m = IntegerMatrix.from_rows(rows, c) if rows else IntegerMatrix.zeros(0, c)
    brute = sum(1 for x in product(range(n), repeat=c)
                if all(sum(a * b for a, b in zip(r, x)) % n == 0 for r in rows))
    assert solution_count_mod_n(m, n) == brute


@given(symmetric(4, 6), st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.randoms(use_true_random=False))
def test_signature_congruence_invariant(s, ops, rnd):
    n = s.rows
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for x in ops:
        if n >= 2:
            i, j = rnd.sample(range(n), 2)
            for row in p:
                row[j] += x * row[i]
    pm = IntegerMatrix.from_rows(p, n) if n else IntegerMatrix.zeros(0, 0)
    assert abs(determinant(pm)) == 1
    assert signature(pm.T @ s @ pm) == signature(s)


@given(divisor_chains(), st.integers(1, 24))
def test_parity_counts(chain, k):
    h = HomologyProfile(0, chain)
    c = classify_parity(h, k)
    assert c.alpha + c.beta + c.gamma == len(chain)
    period = prod(chain) if chain else 1
    c2 = classify_parity(h, k + period)
    assert (c2.beta, c2.gamma, c2.p_prime) == (c.beta, c.gamma, c.p_prime)


def test_gcd_identity_exhaustive():
    chains = [()]
    frontier = [()]
    for _ in range(3):
        nxt = []
        for ch in frontier:
            base = ch[-1] if ch else 1
            for p in range(max(2, base), 25):
                if p % base == 0:
                    nxt.append(ch + (p,))
        chains += nxt
        frontier = nxt
    for ch in chains:
        h = HomologyProfile(0, ch)
        for k in range(1, 25):
            c = classify_parity(h, k)
            if c.beta == 0:
                assert prod(gcd(2 * k, p) for p in ch) == 2 ** c.gamma * prod(gcd(k, p) for p in ch)


def _small_forms():
    forms = []
    for p in range(2, 12):
        for q in range(1, p):
            if gcd(p, q) == 1:
                forms.append(homology_data(lens_space(p, q)).linking)
    forms.append(homology_data(connected_sum([lens_space(2, 1), lens_space(4, 3)])).linking)
    forms.append(homology_data(connected_sum([lens_space(3, 1), lens_space(6, 1)])).linking)
    return forms


def test_linking_eval_symmetric_bilinear():
    for q in _small_forms():
        t = q.torsion
        elems = list(product(*(range(p) for p in t)))
        basis = [tuple(int(i == j) for i in range(len(t))) for j in range(len(t))]
        for x in elems:
            for y in elems:
                assert linking_eval(q, x, y) == linking_eval(q, y, x)
            for y in basis:
                for z in basis:
                    yz = tuple((a + b) % p for a, b, p in zip(y, z, t))
                    lhs = linking_eval(q, x, yz)
                    rhs = (linking_eval(q, x, y) + linking_eval(q, x, z)) % 1
                    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_small_forms()), st.integers(1, 50))
def test_bf_real_and_positive(q, k):
    from abinv.manifolds import HomologyData
    res = bf_partition_bruteforce(HomologyData(HomologyProfile(0, q.torsion), q), k)
    assert abs(res.value.imag) < 1e-9 * (1 + abs(res.value))
    assert res.value.real > 0


@given(divisor_chains(), st.integers(1, 30))
def test_cs_closed_bounded_by_bf_2k(chain, k):
    h = HomologyProfile(0, chain)
    assert cs_abs_squared_closed(h, k) <= bf_partition_closed(h, 2 * k)


@given(divisor_chains(), st.integers(0, 2), st.integers(1, 12))
def test_normalization_consistency(chain, b1, k):
    h = HomologyProfile(b1, chain)
    lhs = Fraction((2 * k) ** b1, prod(chain)) * cs_abs_squared_closed(HomologyProfile(0, chain), k)
    assert lhs == tau_abs_squared_closed(h, k)


def test_modularity_matches_parity():
    for n in range(1, 201):
        assert is_modular(CategoryZn(n)) == (n % 2 == 1)


def test_gauss_sum_norms():
    for n in range(1, 100, 2):
        assert abs(abs(gauss_delta(n)) ** 2 - n) < 1e-6 * n
    for n in range(2, 101, 4):
        assert gauss_delta(n) == 0


@settings(max_examples=30, deadline=None)
@given(symmetric(3, 5, min_dim=1), st.sampled_from([1, -1]))
def test_blow_up_preserves_homology(link, sign):
    link = SurgeryLink(link)
    assert surgery_homology(blow_up(link, sign)) == surgery_homology(link)


@settings(max_examples=30, deadline=None)
@given(symmetric(2, 4, min_dim=1), st.integers(1, 5))
def test_reduction_identity(l, k):
    link = SurgeryLink(l)
    full = quadratic_histogram(link, 4 * k, 4 * k)
    half = quadratic_histogram(link, 4 * k, 2 * k)
    assert full == [2 ** link.m * h for h in half]


@settings(max_examples=30, deadline=None)
@given(symmetric(3, 4, min_dim=2), st.integers(1, 3), st.permutations(range(3)))
def test_rt_permutation_invariant(l, k, perm):
    n = l.rows
    perm = [p for p in perm if p < n]
    permuted = IntegerMatrix.from_rows([[l[perm[i], perm[j]] for j in range(n)] for i in range(n)], n)
    a, b = SurgeryLink(l), SurgeryLink(permuted)
    assert abs(rt_even(a, k).value - rt_even(b, k).value) < 1e-9
    assert abs(rt_odd(a, 2 * k + 1).value - rt_odd(b, 2 * k + 1).value) < 1e-9


def test_connected_sum_associative_commutative():
    parts = [lens_space(2, 1), lens_space(4, 3), s1_x_s2(), lens_space(6, 5), rp3_heegaard()]
    for a in parts:
        for b in parts:
            ab = homology_data(connected_sum([a, b])).profile
            assert ab == homology_data(connected_sum([b, a])).profile
            for c in parts[:3]:
                left = homology_data(connected_sum([connected_sum([a, b]), c])).profile
                right = homology_data(connected_sum([a, connected_sum([b, c])])).profile
                assert left == right
